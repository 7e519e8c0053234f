//! Turns the surface keys of a job or catalog entry into a pair.

use serde::Serialize;

use flopslope_core::surface::{blow_up, minimal_pair, BlowupOptions, BlowupPoint, DivisorClass, SurfacePair};

use crate::error::{push_token, CliError, Result};
use crate::job::{PointSpec, ZSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceFields {
    pub model: String,
    pub boundary: Vec<i64>,
    pub points: Vec<PointSpec>,
    pub z: Option<ZSpec>,
    pub mori_generators: Option<Vec<Vec<i64>>>,
    pub extra_generators: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub pair: SurfacePair,
    pub z: DivisorClass,
    pub z_is_boundary: bool,
}

/// Rank of the Picard lattice of a minimal model tag.
pub fn model_rank(model: &str) -> Result<usize> {
    if model == "P2" {
        return Ok(1);
    }
    match model.strip_prefix('F').map(str::parse::<u32>) {
        Some(Ok(_)) => Ok(2),
        _ => Err(CliError::parse("/model", format!("unknown minimal model `{model}`; expected P2 or Fn"))),
    }
}

fn check_len(v: &[i64], rank: usize, pointer: &str) -> Result<()> {
    if v.len() == rank {
        Ok(())
    } else {
        Err(CliError::parse(pointer, format!("class vector has {} coefficients, the lattice has rank {rank}", v.len())))
    }
}

pub fn build(f: &SurfaceFields) -> Result<Built> {
    let rank = model_rank(&f.model)?;
    check_len(&f.boundary, rank, "/boundary")?;
    let mut pair = minimal_pair(&f.model, &f.boundary)?;
    if let Some(gens) = &f.mori_generators {
        let mut classes = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            check_len(g, rank, &push_token("/mori_generators", i))?;
            classes.push(pair.class(g)?);
        }
        pair = SurfacePair::new(pair.boundary().clone(), classes, pair.provenance().clone())?;
    }
    let minimal = pair.clone();
    let points: Vec<BlowupPoint> = f
        .points
        .iter()
        .map(|p| BlowupPoint {
            tangent_dir_equals_z: p.tangent_dir_equals_z,
            ..BlowupPoint::new(p.on_boundary, p.on_z)
        })
        .collect();
    let blown = blow_up(&pair, &points, &BlowupOptions::default())?;
    pair = blown.pair;
    let full = pair.lattice().rank();
    if let Some(extra) = &f.extra_generators {
        let mut classes = Vec::new();
        for (i, g) in extra.iter().enumerate() {
            check_len(g, full, &push_token("/extra_generators", i))?;
            classes.push(pair.class(g)?);
        }
        pair = pair.with_extra_generators(&classes)?;
    }
    let (z, z_is_boundary) = match &f.z {
        None | Some(ZSpec::Keyword(_)) => (pair.boundary().clone(), true),
        Some(ZSpec::Class(v)) if v.len() == full => (pair.class(v)?, false),
        Some(ZSpec::Class(v)) if v.len() == rank => {
            let on_minimal = minimal.class(v)?;
            let z = match pair.blowup_record() {
                Some(rec) => rec.proper_transform_by(&on_minimal, |p| p.on_z)?,
                None => on_minimal,
            };
            (z, false)
        }
        Some(ZSpec::Class(v)) => {
            return Err(CliError::parse(
                "/z",
                format!(
                    "class vector has {} coefficients; expected {rank} (minimal model) or {full} (blow-up)",
                    v.len()
                ),
            ))
        }
    };
    Ok(Built { pair, z, z_is_boundary })
}
