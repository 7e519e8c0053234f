//! Job files: one flat JSON document per run.

use serde::{Deserialize, Serialize};

use flopslope_core::analyzer::CRule;
use flopslope_core::exactmath::{parse_rational, MPoly, Rational, Symbol};

use crate::error::{push_token, CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Slope,
    Flop,
    Maeda,
    Theorem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    #[serde(default)]
    pub on_boundary: bool,
    #[serde(default)]
    pub on_z: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tangent_dir_equals_z: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZKeyword {
    Boundary,
}

/// `"boundary"` or a class vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, expecting = "\"boundary\" or an integer class vector")]
pub enum ZSpec {
    Keyword(ZKeyword),
    Class(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub name: String,
    pub pipeline: Pipeline,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ZSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mori_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dprime_override: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
}

/// Reads a job, reporting schema violations with a JSON pointer.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let job: JobSpec = from_json(text)?;
    check_name(&job.name)?;
    Ok(job)
}

/// Deserializes any document of the input schema, mapping the failing path to
/// a JSON pointer.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let mut pointer = String::new();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment::*;
            match seg {
                Seq { index } => pointer = push_token(&pointer, index),
                Map { key } => pointer = push_token(&pointer, key),
                Enum { .. } | Unknown => {}
            }
        }
        CliError::parse(pointer, e.inner())
    })?;
    Ok(value)
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.starts_with('.')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c));
    if ok {
        Ok(())
    } else {
        Err(CliError::parse("/name", "names use ASCII letters, digits, '_', '-' and '.' and do not start with '.'"))
    }
}

/// Canonical form: keys sorted, two-space indentation, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("job specs serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// A finite arithmetic progression of cone angles `lo, lo + step, ..., <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
}

const MAX_GRID_POINTS: usize = 100_000;

impl Grid {
    pub fn parse(s: &str, pointer: &str) -> Result<Grid> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(CliError::parse(pointer, format!("grid `{s}` is not of the form lo:hi:step")));
        };
        let num = |t: &str| {
            parse_rational(t.trim()).ok_or_else(|| CliError::parse(pointer, format!("`{t}` is not a rational number")))
        };
        let g = Grid { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if g.step <= Rational::from_integer(0.into()) {
            return Err(CliError::parse(pointer, "grid step must be positive"));
        }
        if g.hi < g.lo {
            return Err(CliError::parse(pointer, "grid upper end is below its lower end"));
        }
        let count = ((&g.hi - &g.lo) / &g.step).floor().to_integer();
        if count >= MAX_GRID_POINTS.into() {
            return Err(CliError::parse(pointer, format!("grid has more than {MAX_GRID_POINTS} points")));
        }
        Ok(g)
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaMode {
    Symbolic,
    Fixed(Rational),
    Grid(Grid),
}

pub fn parse_beta(s: Option<&str>) -> Result<BetaMode> {
    match s {
        None | Some("symbolic") => Ok(BetaMode::Symbolic),
        Some(t) if t.contains(':') => Grid::parse(t, "/beta").map(BetaMode::Grid),
        Some(t) => parse_rational(t).map(BetaMode::Fixed).ok_or_else(|| {
            CliError::parse("/beta", format!("expected \"symbolic\", a rational or lo:hi:step, found `{t}`"))
        }),
    }
}

pub fn parse_c_rule(s: Option<&str>) -> Result<CRule> {
    match s {
        None | Some("epsilon") => Ok(CRule::Epsilon),
        Some(t) => {
            let p = parse_poly(t, "/c_rule")?;
            if p.variables().iter().any(|v| *v != Symbol::Beta) {
                return Err(CliError::parse("/c_rule", format!("`{t}` may only involve b")));
            }
            Ok(CRule::Poly(p))
        }
    }
}

pub fn parse_poly(s: &str, pointer: &str) -> Result<MPoly> {
    s.parse::<MPoly>().map_err(|e| CliError::parse(pointer, e))
}

pub fn parse_rational_at(s: &str, pointer: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| CliError::parse(pointer, format!("`{s}` is not a rational number")))
}
