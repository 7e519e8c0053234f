use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::dnc::{CWindow, FutakiPoly};
use crate::error::{Error, Result};
use crate::exactmath::{AlgebraicInterval, AlgebraicRoot, MPoly, Rational, Symbol};

/// How the deformation parameter `c` is tied to the cone angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CRule {
    /// `c` equals the upper end of the admissible window.
    Epsilon,
    /// `c` equals a polynomial (in `b`, possibly `g`).
    Poly(MPoly),
}

impl fmt::Display for CRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CRule::Epsilon => f.write_str("epsilon"),
            CRule::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// A rational point `(b, c)` with `F(b, c) = value < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub beta: Rational,
    pub c: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unstable(Witness),
    NotDestabilized(String),
    InvalidConfig(String),
}

impl Verdict {
    pub fn is_unstable(&self) -> bool {
        matches!(self, Verdict::Unstable(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Unstable(_) => "Unstable",
            Verdict::NotDestabilized(_) => "NotDestabilized",
            Verdict::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

/// Behaviour of the reduced invariant as the cone angle tends to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallBeta {
    /// Value of the reduced invariant at `b = 0`.
    pub limit: MPoly,
    /// Some `b0 > 0` with the reduced invariant negative on `(0, b0)`.
    pub beta0: Option<Rational>,
}

impl SmallBeta {
    pub fn unstable_for_small_beta(&self) -> bool {
        self.beta0.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub pipeline: String,
    /// Human-readable description of the configuration (sorted keys).
    pub summary: BTreeMap<String, String>,
    pub futaki: FutakiPoly,
    pub c_rule: CRule,
    /// The invariant after applying the `c` rule, a polynomial in `b`.
    pub reduced: Option<MPoly>,
    pub window: Option<CWindow>,
    pub verdict: Verdict,
    pub thresholds: Vec<AlgebraicRoot>,
    pub beta_unstable_ranges: Vec<AlgebraicInterval>,
    pub small_beta: Option<SmallBeta>,
    /// Closed form of the invariant at the chosen `c`, in `b` and `g`, when a
    /// pipeline derives one independently.
    pub closed_form: Option<MPoly>,
    /// Upper bound polynomial used in the small-angle argument, if any.
    pub bound: Option<MPoly>,
    pub certificates: Vec<String>,
}

impl StabilityReport {
    pub fn new(pipeline: &str, futaki: FutakiPoly, c_rule: CRule, verdict: Verdict) -> Self {
        StabilityReport {
            pipeline: String::from(pipeline),
            summary: BTreeMap::new(),
            futaki,
            c_rule,
            reduced: None,
            window: None,
            verdict,
            thresholds: Vec::new(),
            beta_unstable_ranges: Vec::new(),
            small_beta: None,
            closed_form: None,
            bound: None,
            certificates: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl fmt::Display) {
        self.summary.insert(String::from(key), alloc::format!("{value}"));
    }

    pub fn certify(&mut self, line: impl Into<String>) {
        self.certificates.push(line.into());
    }

    /// Re-checks an unstable verdict: the witness lies in the window and the
    /// invariant is negative there. Thresholds must be roots of the reduced
    /// polynomial.
    pub fn validate(&self) -> Result<()> {
        if let Verdict::Unstable(w) = &self.verdict {
            check_witness(&self.futaki.value, self.window.as_ref(), w)?;
        }
        if let Some(r) = &self.reduced {
            for t in &self.thresholds {
                if let Some(x) = &t.exact {
                    if !r
                        .trimmed()
                        .with_ring([Symbol::Beta])
                        .eval_at(Symbol::Beta, x)
                        .map(|v| v == Rational::from_integer(0.into()))
                        .unwrap_or(false)
                    {
                        return Err(Error::InvalidConfig(alloc::format!("threshold {x} is not a root")));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn check_witness(f: &MPoly, window: Option<&CWindow>, w: &Witness) -> Result<()> {
    let v = super::ranges::eval_bc(f, &w.beta, &w.c)?;
    if v != w.value || !v.is_negative() {
        return Err(Error::InvalidConfig(alloc::format!(
            "witness ({}, {}) does not give a negative invariant",
            w.beta,
            w.c
        )));
    }
    if let Some(win) = window {
        if !win.contains(&w.beta, &w.c) {
            return Err(Error::InvalidConfig(alloc::format!(
                "witness c = {} lies outside the window at b = {}",
                w.c,
                w.beta
            )));
        }
    }
    Ok(())
}
