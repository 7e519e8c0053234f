use alloc::vec::Vec;
use core::fmt;

use super::engine::{Engine, ThreefoldClass};
use crate::error::{Error, Result};
use crate::exactmath::{int, Interval, Linear, MPoly, PiecewiseLinear, Rational, Symbol};
use crate::surface::{seshadri, BetaFunctionClass, DivisorClass, PolyClass, SurfacePair};

/// Deformation to the normal cone of `Z` in a surface pair.
#[derive(Clone, Debug)]
pub struct DNCConfig {
    pub pair: SurfacePair,
    pub z: DivisorClass,
    pub z_is_boundary: bool,
    pub polarization: BetaFunctionClass,
    /// Cone angles under consideration.
    pub beta_range: Interval,
}

impl DNCConfig {
    pub fn new(
        pair: SurfacePair,
        z: DivisorClass,
        z_is_boundary: bool,
        polarization: BetaFunctionClass,
    ) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::InvalidConfig("Z is the zero class".into()));
        }
        z.dot(pair.boundary())?;
        polarization.base.dot(pair.boundary())?;
        if z_is_boundary && &z != pair.boundary() {
            return Err(Error::InvalidConfig(alloc::format!(
                "Z = {z} is flagged as the boundary but the boundary is {}",
                pair.boundary()
            )));
        }
        Ok(DNCConfig { pair, z, z_is_boundary, polarization, beta_range: Interval::unit_beta() })
    }

    /// Polarization `-K - (1-b)C` and `Z = C`.
    pub fn boundary(pair: SurfacePair) -> Result<Self> {
        let z = pair.boundary().clone();
        let l = pair.log_anticanonical();
        DNCConfig::new(pair, z, true, l)
    }

    /// Polarization `-K - (1-b)C` and an arbitrary `Z`.
    pub fn along(pair: SurfacePair, z: DivisorClass) -> Result<Self> {
        let is_c = &z == pair.boundary();
        let l = pair.log_anticanonical();
        DNCConfig::new(pair, z, is_c, l)
    }

    pub fn with_beta_range(mut self, range: Interval) -> Self {
        self.beta_range = range;
        self
    }

    pub fn branch(&self) -> Branch {
        if self.z_is_boundary {
            Branch::ZIsBoundary
        } else {
            Branch::ZNotBoundary
        }
    }

    pub fn engine(&self) -> Engine {
        Engine::new(&self.z)
    }

    /// `pull(L) - cE`.
    pub fn test_polarization(&self, l: &BetaFunctionClass) -> ThreefoldClass {
        ThreefoldClass::pull(&l.to_poly_class()).sub(&ThreefoldClass::exceptional(&self.z).scale(&MPoly::c()))
    }

    /// `K - p^*K_{P^1} + (1-b) D` on the threefold, where `D` is the proper
    /// transform of `C x P^1`.
    pub fn log_relative_canonical(&self) -> ThreefoldClass {
        let k = ThreefoldClass::pull_class(&self.pair.canonical()).add(&ThreefoldClass::exceptional(&self.z));
        k.add(&self.boundary_transform().scale(&one_minus_beta()))
    }

    /// Proper transform of `C x P^1`.
    pub fn boundary_transform(&self) -> ThreefoldClass {
        let pulled = ThreefoldClass::pull_class(self.pair.boundary());
        if self.z_is_boundary {
            pulled.sub(&ThreefoldClass::exceptional(&self.z))
        } else {
            pulled
        }
    }

    fn polarization_is_log_anticanonical(&self) -> bool {
        self.polarization == self.pair.log_anticanonical()
    }
}

pub(crate) fn one_minus_beta() -> MPoly {
    MPoly::one() - MPoly::beta()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    ZIsBoundary,
    ZNotBoundary,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::ZIsBoundary => "Z=C",
            Branch::ZNotBoundary => "Z!=C",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FutakiSource {
    ClosedForm,
    SymbolicEngine,
}

impl fmt::Display for FutakiSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FutakiSource::ClosedForm => "closed_form",
            FutakiSource::SymbolicEngine => "symbolic_engine",
        })
    }
}

/// A Futaki invariant as a polynomial in `b` and `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FutakiPoly {
    pub value: MPoly,
    pub branch: Branch,
    pub provenance: FutakiSource,
}

/// Triple products of `pull(L)` and `E` on the deformation to the normal cone,
/// with the canonical and boundary pairings used by the invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleProductTable {
    pub e_cubed: MPoly,
    pub l_e_squared: MPoly,
    pub l_squared_e: MPoly,
    pub l_cubed: MPoly,
    pub k_e_squared: MPoly,
    pub c_e_squared: MPoly,
}

pub fn triple_products(config: &DNCConfig) -> TripleProductTable {
    let eng = config.engine();
    let e = ThreefoldClass::exceptional(&config.z);
    let l = ThreefoldClass::pull(&config.polarization.to_poly_class());
    let k = ThreefoldClass::pull_class(&config.pair.canonical());
    let c = ThreefoldClass::pull_class(config.pair.boundary());
    TripleProductTable {
        e_cubed: eng.cube(&e),
        l_e_squared: eng.triple(&l, &e, &e),
        l_squared_e: eng.triple(&l, &l, &e),
        l_cubed: eng.cube(&l),
        k_e_squared: eng.triple(&k, &e, &e),
        c_e_squared: eng.triple(&c, &e, &e),
    }
}

/// Numerator and denominator of the invariant for an arbitrary polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralFutaki {
    /// `2 (-(K + (1-b)C).L) Lc^3 + 3 L^2 (K - p^*K + (1-b)D).Lc^2` with `Lc = pull(L) - cE`.
    pub numerator: MPoly,
    /// `L^2`, a polynomial in `b`.
    pub denominator: MPoly,
}

pub fn general_futaki(config: &DNCConfig, l: &BetaFunctionClass) -> Result<GeneralFutaki> {
    let l2 = l.square();
    if l2.is_zero() {
        return Err(Error::DegeneratePolarization);
    }
    let pair = &config.pair;
    let kc =
        PolyClass::from_class(&pair.canonical()).add(&PolyClass::from_class(pair.boundary()).scale(&one_minus_beta()));
    let slope = -kc.dot(&l.to_poly_class());
    let eng = config.engine();
    let lc = config.test_polarization(l);
    let numerator = (&slope * &eng.cube(&lc)).scale(&int(2))
        + (&l2 * &eng.dot_square(&config.log_relative_canonical(), &lc)).scale(&int(3));
    Ok(GeneralFutaki { numerator, denominator: l2 })
}

/// The log Fano form `2 Lc^3 + 3 (K - p^*K + (1-b)D).Lc^2`, evaluated by the
/// intersection engine.
pub fn engine_futaki(config: &DNCConfig) -> FutakiPoly {
    let eng = config.engine();
    let lc = config.test_polarization(&config.polarization);
    let value = eng.cube(&lc).scale(&int(2)) + eng.dot_square(&config.log_relative_canonical(), &lc).scale(&int(3));
    FutakiPoly { value, branch: config.branch(), provenance: FutakiSource::SymbolicEngine }
}

/// Closed form for the slope invariant of a log Fano polarization:
/// `(6bc - 3c^2) L.Z + (2c^3 - 3c^2 b) Z^2` when `Z = C`, and
/// `(6c - 3c^2) L.Z + (2c^3 - 3c^2) Z^2` otherwise.
pub fn slope_futaki(config: &DNCConfig) -> Result<FutakiPoly> {
    if !config.polarization_is_log_anticanonical() {
        return Err(Error::PolarizationMismatch(alloc::format!(
            "polarization {} differs from -K-(1-b)C = {}",
            config.polarization,
            config.pair.log_anticanonical()
        )));
    }
    let lz = config.polarization.dot(&config.z)?.to_mpoly();
    let z2 = MPoly::constant(config.z.square());
    Ok(FutakiPoly {
        value: closed_form(&lz, &z2, config.z_is_boundary),
        branch: config.branch(),
        provenance: FutakiSource::ClosedForm,
    })
}

fn closed_form(lz: &MPoly, z2: &MPoly, z_is_boundary: bool) -> MPoly {
    let b = MPoly::beta();
    let c = MPoly::c();
    let c2 = c.pow(2);
    let t = if z_is_boundary { b } else { MPoly::one() };
    let first = (&(&t * &c).scale(&int(6)) - &c2.scale(&int(3))) * lz;
    let second = (&c.pow(3).scale(&int(2)) - &(&c2 * &t).scale(&int(3))) * z2;
    first + second
}

/// Admissible values of `c` as a function of the cone angle: the open
/// interval between `lower` and `upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWindow {
    pub domain: Interval,
    pub lower: PiecewiseLinear,
    /// `None` when no generator bounds `c`.
    pub upper: Option<PiecewiseLinear>,
    /// The Seshadri quadratic constraint binds on part of the domain, so the
    /// upper bound is only an over-estimate there.
    pub quadratic_binds: bool,
}

impl CWindow {
    pub fn new(domain: Interval, lower: PiecewiseLinear, upper: Option<PiecewiseLinear>) -> Self {
        CWindow { domain, lower, upper, quadratic_binds: false }
    }

    /// Bounds at a given cone angle, or `None` outside the domain.
    pub fn bounds_at(&self, beta: &Rational) -> Option<(Rational, Option<Rational>)> {
        if !self.domain.contains(beta) {
            return None;
        }
        let lo = self.lower.eval(beta)?;
        let hi = match &self.upper {
            Some(u) => Some(u.eval(beta)?),
            None => None,
        };
        Some((lo, hi))
    }

    /// The open `c`-interval at `beta`, or `None` if empty or unbounded.
    pub fn at(&self, beta: &Rational) -> Option<Interval> {
        let (lo, hi) = self.bounds_at(beta)?;
        let hi = hi?;
        (lo < hi).then_some(Interval { lo, hi, lo_open: true, hi_open: true })
    }

    pub fn contains(&self, beta: &Rational, c: &Rational) -> bool {
        match self.bounds_at(beta) {
            Some((lo, hi)) => c > &lo && hi.is_none_or(|h| c < &h),
            None => false,
        }
    }

    /// Single-piece bounds, when both ends are one line over the domain.
    pub fn linear_bounds(&self) -> Option<(&Linear, Option<&Linear>)> {
        if self.lower.pieces.len() != 1 {
            return None;
        }
        match &self.upper {
            None => Some((&self.lower.pieces[0].value, None)),
            Some(u) if u.pieces.len() == 1 => Some((&self.lower.pieces[0].value, Some(&u.pieces[0].value))),
            _ => None,
        }
    }

    /// Cone angles in the domain where the window is nonempty.
    pub fn nonempty_betas(&self) -> Vec<Interval> {
        let Some(upper) = &self.upper else {
            return alloc::vec![self.domain.clone()];
        };
        let mut cuts = Vec::new();
        for a in &self.lower.pieces {
            for b in &upper.pieces {
                if let Some(x) = a.value.crossing(&b.value) {
                    if self.domain.contains(&x) {
                        cuts.push(x);
                    }
                }
            }
        }
        cuts.extend(self.lower.breakpoints());
        cuts.extend(upper.breakpoints());
        cuts.push(self.domain.lo.clone());
        cuts.push(self.domain.hi.clone());
        cuts.sort();
        cuts.dedup();
        let nonempty = |x: &Rational| matches!(self.bounds_at(x), Some((lo, Some(hi))) if lo < hi);
        let mut out: Vec<Interval> = Vec::new();
        let mut cur: Option<Interval> = None;
        let mut visit = |seg: Interval, ok: bool| {
            if ok {
                match cur.as_mut() {
                    Some(c) => {
                        c.hi = seg.hi;
                        c.hi_open = seg.hi_open;
                    }
                    None => cur = Some(seg),
                }
            } else if let Some(c) = cur.take() {
                out.push(c);
            }
        };
        for (k, x) in cuts.iter().enumerate() {
            visit(Interval::point(x.clone()), nonempty(x));
            if let Some(y) = cuts.get(k + 1) {
                let mid = (x + y) / int(2);
                visit(Interval { lo: x.clone(), hi: y.clone(), lo_open: true, hi_open: true }, nonempty(&mid));
            }
        }
        visit(Interval::point(int(0)), false);
        out
    }

    pub fn is_empty(&self) -> bool {
        self.nonempty_betas().is_empty()
    }
}

impl fmt::Display for CWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.linear_bounds() {
            Some((lo, Some(hi))) => write!(f, "({lo}, {hi})"),
            Some((lo, None)) => write!(f, "({lo}, oo)"),
            None => match &self.upper {
                Some(u) => write!(f, "(max[{}], min[{}])", self.lower, u),
                None => write!(f, "(max[{}], oo)", self.lower),
            },
        }
    }
}

/// `(0, epsilon(S, Z, L))` over the configured cone angles.
pub fn p_ample_window(config: &DNCConfig) -> Result<CWindow> {
    let s = seshadri(&config.pair, &config.z, &config.polarization, &config.beta_range)?;
    let zero = PiecewiseLinear::min_of(&[Linear::constant(int(0))], &config.beta_range);
    let mut w = CWindow::new(config.beta_range.clone(), zero, s.epsilon);
    w.quadratic_binds = !s.quadratic_binds.is_empty();
    Ok(w)
}

/// `c`-degree of a Futaki polynomial and its leading coefficient.
pub fn c_leading(p: &MPoly) -> (u32, MPoly) {
    let d = p.degree_in(Symbol::C);
    (d, p.coefficient_of(Symbol::C, d))
}
