use super::futaki::{p_ample_window, slope_futaki, DNCConfig};
use crate::analyzer::{assess, CRule, StabilityReport};
use crate::error::{Error, Result};
use crate::exactmath::{Interval, Rational};
use crate::surface::{amp_region, SurfacePair};

/// Cone angle for a verdict: a fixed rational or the whole ample range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Symbolic,
    Fixed(Rational),
}

/// Slope test along `Z`. A negative invariant at some admissible `c` proves
/// instability; otherwise the report only says that this `Z` does not
/// destabilize.
pub fn slope_verdict(config: &DNCConfig, beta: &BetaSpec) -> Result<StabilityReport> {
    slope_verdict_with(config, beta, CRule::Epsilon)
}

/// [`slope_verdict`] with `c` tied to the cone angle by `rule`.
pub fn slope_verdict_with(config: &DNCConfig, beta: &BetaSpec, rule: CRule) -> Result<StabilityReport> {
    let futaki = slope_futaki(config)?;
    let domain = beta_domain(&config.pair, beta)?;
    let cfg = config.clone().with_beta_range(domain);
    let window = p_ample_window(&cfg)?;
    let mut report = assess("slope", futaki, rule, window)?;
    report.note("z", &config.z);
    report.note("boundary", config.pair.boundary());
    report.note("branch", config.branch());
    report.note("polarization", &config.polarization);
    Ok(report)
}

/// Cone angles a verdict ranges over: the point itself, or the ample range.
pub(crate) fn beta_domain(pair: &SurfacePair, beta: &BetaSpec) -> Result<Interval> {
    let amp = amp_region(pair)?;
    Ok(match beta {
        BetaSpec::Fixed(b) => {
            if !amp.contains(b) {
                return Err(Error::BetaOutsideAmple(alloc::format!("{b}")));
            }
            Interval::point(b.clone())
        }
        BetaSpec::Symbolic => {
            amp.interval.clone().ok_or_else(|| Error::BetaOutsideAmple("the ample range is empty".into()))?
        }
    })
}
