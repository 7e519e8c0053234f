use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;

use super::lattice::{DivisorClass, PicardLattice};
use super::pair::{Provenance, SurfacePair};
use crate::error::{Error, Result};
use crate::exactmath::int;

/// The projective plane: basis `H`, `H^2 = 1`, `K = -3H`.
pub fn p2_lattice() -> Arc<PicardLattice> {
    PicardLattice::new(vec![String::from("H")], vec![vec![int(1)]], vec![int(-3)]).expect("valid lattice")
}

/// Hirzebruch surface `F_n`: basis `E, F` with `E^2 = -n`, `E.F = 1`, `F^2 = 0`
/// and `K = -2E - (n+2)F`.
pub fn hirzebruch_lattice(n: u32) -> Arc<PicardLattice> {
    let n = i64::from(n);
    PicardLattice::new(
        vec![String::from("E"), String::from("F")],
        vec![vec![int(-n), int(1)], vec![int(1), int(0)]],
        vec![int(-2), int(-n - 2)],
    )
    .expect("valid lattice")
}

fn minimal(model: &str) -> Provenance {
    Provenance { model: String::from(model), blowup: None }
}

/// `(P^2, C)` with `C` a curve of the given degree.
pub fn p2_pair(degree: i64) -> Result<SurfacePair> {
    let l = p2_lattice();
    let h = DivisorClass::basis(&l, 0);
    SurfacePair::new(h.scale(&int(degree)), vec![h], minimal("P2"))
}

/// `(F_n, C)` with `C = aE + bF`.
pub fn hirzebruch_pair(n: u32, a: i64, b: i64) -> Result<SurfacePair> {
    let l = hirzebruch_lattice(n);
    let gens = vec![DivisorClass::basis(&l, 0), DivisorClass::basis(&l, 1)];
    SurfacePair::new(DivisorClass::from_ints(&l, &[a, b])?, gens, minimal(&alloc::format!("F{n}")))
}

/// Looks up a minimal model by tag (`P2`, `F0`, `F1`, ...), returning a pair
/// with the given boundary coefficients.
pub fn minimal_pair(model: &str, boundary: &[i64]) -> Result<SurfacePair> {
    match model {
        "P2" => match boundary {
            [d] => p2_pair(*d),
            _ => Err(Error::DimensionMismatch { expected: 1, found: boundary.len() }),
        },
        _ => {
            let n: u32 = model
                .strip_prefix('F')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidConfig(alloc::format!("unknown minimal model {model}")))?;
            match boundary {
                [a, b] => hirzebruch_pair(n, *a, *b),
                _ => Err(Error::DimensionMismatch { expected: 2, found: boundary.len() }),
            }
        }
    }
}
