use alloc::vec::Vec;

use super::ranges::{candidates, find_witness, reduce, small_beta, unstable_beta_range};
use super::report::{CRule, StabilityReport, Verdict};
use crate::dnc::{CWindow, FutakiPoly};
use crate::error::{Error, Result};
use crate::exactmath::{Rational, Symbol};

/// Applies the `c` rule over the window's domain, extracts negative cone-angle
/// ranges and thresholds, searches for a verified witness and fills a report.
pub(crate) fn assess(pipeline: &str, futaki: FutakiPoly, rule: CRule, window: CWindow) -> Result<StabilityReport> {
    let mut report = StabilityReport::new(pipeline, futaki, rule, Verdict::NotDestabilized(Default::default()));
    let domain = window.domain.clone();
    let pieces = reduce(&report.futaki.value, &report.c_rule, &window)?;
    let mut betas: Vec<Rational> = Vec::new();
    for (d, f) in &pieces {
        match unstable_beta_range(f, d) {
            Ok(r) => {
                for range in &r.ranges {
                    betas.extend(candidates(range));
                }
                report.beta_unstable_ranges.extend(r.ranges);
                report.thresholds.extend(r.thresholds);
            }
            Err(Error::IdenticallyZero) => report.certify(alloc::format!("the reduced invariant vanishes on {d}")),
            Err(e) => return Err(e),
        }
    }
    if pieces.len() == 1 {
        let reduced = pieces[0].1.clone();
        if domain.lo == Rational::from_integer(0.into()) && !domain.is_point() && !reduced.is_zero() {
            report.small_beta = Some(small_beta(&reduced, &report.beta_unstable_ranges)?);
        }
        report.reduced = Some(reduced.trimmed());
    }
    if domain.is_point() {
        betas.insert(0, domain.lo.clone());
        betas.dedup();
    }
    let witness = find_witness(&report.futaki.value, &window, &report.c_rule, &betas)?;
    report.verdict = match witness {
        Some(w) => {
            report.certify(alloc::format!("F({}, {}) = {} < 0 with c inside {}", w.beta, w.c, w.value, window));
            Verdict::Unstable(w)
        }
        None => Verdict::NotDestabilized(if domain.is_point() {
            alloc::format!("F(b, c) >= 0 for every c in the window at b = {}", domain.lo)
        } else {
            alloc::format!("no negative value of F under c = {} on {}", report.c_rule, domain)
        }),
    };
    if let Some(s) = &report.small_beta {
        match &s.beta0 {
            Some(b0) => {
                report.certify(alloc::format!("reduced invariant < 0 on (0, {b0}), certified by root isolation"))
            }
            None => report.certify(alloc::format!("limit at b -> 0+ is {}", s.limit)),
        }
    }
    report.window = Some(window);
    report.validate()?;
    Ok(report)
}

/// Evaluates the report's reduced polynomial, when it has one.
pub fn reduced_at(report: &StabilityReport, beta: &Rational) -> Option<Rational> {
    report.reduced.as_ref()?.trimmed().with_ring([Symbol::Beta]).eval_at(Symbol::Beta, beta).ok()
}

/// `(c, F(b, c))` at a cone angle inside the report's window, with `c` given
/// by the report's rule.
pub fn sample_at(report: &StabilityReport, beta: &Rational) -> Option<(Rational, Rational)> {
    let window = report.window.as_ref()?;
    if !window.domain.contains(beta) {
        return None;
    }
    let c = super::ranges::rule_value(&report.c_rule, window, beta)?;
    let f = super::ranges::eval_bc(&report.futaki.value, beta, &c).ok()?;
    Some((c, f))
}
