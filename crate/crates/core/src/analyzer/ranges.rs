use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::report::{CRule, SmallBeta, Witness};
use crate::dnc::CWindow;
use crate::error::{Error, Result};
use crate::exactmath::{
    int, negative_ranges, pow2_inv, sign_on_interval, simplest_between, AlgebraicInterval, AlgebraicRoot, Endpoint,
    Interval, MPoly, Rational, SignOnInterval, Symbol,
};

/// Where a polynomial in `b` is negative on `window`, with all its roots there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRanges {
    pub ranges: Vec<AlgebraicInterval>,
    pub thresholds: Vec<AlgebraicRoot>,
}

pub fn unstable_beta_range(f: &MPoly, window: &Interval) -> Result<BetaRanges> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if f.variables().iter().any(|s| *s != Symbol::Beta) {
        return Err(Error::NotUnivariate(alloc::format!("{f}")));
    }
    let (ranges, thresholds) = negative_ranges(f, window)?;
    Ok(BetaRanges { ranges, thresholds })
}

/// Splits `f(b, c)` into polynomials in `b` by applying the `c` rule on each
/// piece of the window's domain.
pub(crate) fn reduce(f: &MPoly, rule: &CRule, window: &CWindow) -> Result<Vec<(Interval, MPoly)>> {
    match rule {
        CRule::Poly(p) => {
            if p.variables().iter().any(|s| *s != Symbol::Beta) {
                return Err(Error::InvalidConfig(alloc::format!("c rule {p} must depend on b only")));
            }
            Ok(alloc::vec![(window.domain.clone(), f.clone().with_ring([Symbol::C]).substitute(Symbol::C, p)?)])
        }
        CRule::Epsilon => {
            let upper = window
                .upper
                .as_ref()
                .ok_or_else(|| Error::InvalidConfig("the c window is unbounded, so c = epsilon is undefined".into()))?;
            upper
                .pieces
                .iter()
                .filter_map(|piece| piece.domain.intersect(&window.domain).map(|d| (d, piece)))
                .map(|(d, piece)| {
                    Ok((d, f.clone().with_ring([Symbol::C]).substitute(Symbol::C, &piece.value.to_mpoly())?))
                })
                .collect()
        }
    }
}

pub(crate) fn rule_value(rule: &CRule, window: &CWindow, beta: &Rational) -> Option<Rational> {
    match rule {
        CRule::Poly(p) => p.trimmed().with_ring([Symbol::Beta]).eval_at(Symbol::Beta, beta).ok(),
        CRule::Epsilon => window.bounds_at(beta)?.1,
    }
}

pub(crate) fn eval_bc(f: &MPoly, beta: &Rational, c: &Rational) -> Result<Rational> {
    let mut a = BTreeMap::new();
    a.insert(Symbol::Beta, beta.clone());
    a.insert(Symbol::C, c.clone());
    f.trimmed().with_ring([Symbol::Beta, Symbol::C]).eval(&a)
}

/// Rational cone angles to try inside a range.
pub(crate) fn candidates(range: &AlgebraicInterval) -> Vec<Rational> {
    let mut out = alloc::vec![range.sample()];
    let (a, b) = (range.lo.upper(), range.hi.lower());
    if a < b {
        for (n, d) in [(1, 2), (1, 4), (3, 4), (1, 8), (7, 8)] {
            let x = &a + (&b - &a) * Rational::new(n.into(), d.into());
            if range.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// A rational `(b, c)` with `b` among `betas`, `c` in the window and `F < 0`.
/// The `c` rule is tried first; a rule value on the closure of the window is
/// nudged inside; otherwise the sign of `F(b, .)` over the window is analysed.
pub(crate) fn find_witness(f: &MPoly, window: &CWindow, rule: &CRule, betas: &[Rational]) -> Result<Option<Witness>> {
    for beta in betas {
        let Some((lo, hi)) = window.bounds_at(beta) else { continue };
        if hi.as_ref().is_some_and(|h| h <= &lo) {
            continue;
        }
        if let Some(c0) = rule_value(rule, window, beta) {
            let v = eval_bc(f, beta, &c0)?;
            if v.is_negative() {
                if window.contains(beta, &c0) {
                    return Ok(Some(Witness { beta: beta.clone(), c: c0, value: v }));
                }
                let at_hi = hi.as_ref() == Some(&c0);
                if at_hi || c0 == lo {
                    for k in 1..=64 {
                        let c = match (&hi, at_hi) {
                            (Some(h), true) => &c0 - (h - &lo) * pow2_inv(k),
                            (Some(h), false) => &c0 + (h - &lo) * pow2_inv(k),
                            (None, _) => &c0 + pow2_inv(k),
                        };
                        let v = eval_bc(f, beta, &c)?;
                        if v.is_negative() && window.contains(beta, &c) {
                            return Ok(Some(Witness { beta: beta.clone(), c, value: v }));
                        }
                    }
                }
            }
        }
        if let Some(w) = witness_in_c(f, beta, &lo, hi.as_ref())? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

// Sign analysis of c -> F(beta, c) over the open window.
fn witness_in_c(f: &MPoly, beta: &Rational, lo: &Rational, hi: Option<&Rational>) -> Result<Option<Witness>> {
    let g = f.trimmed().with_ring([Symbol::Beta, Symbol::C]).partial_eval(Symbol::Beta, beta)?;
    if g.is_zero() {
        return Ok(None);
    }
    let hi = match hi {
        Some(h) => h.clone(),
        None => lo + cauchy_bound(&g),
    };
    let iv = Interval::open(lo.clone(), hi)?;
    let c = match sign_on_interval(&g, &iv)? {
        SignOnInterval::Negative => iv.simplest_point(),
        SignOnInterval::Mixed { negative: Some(c), .. } => c,
        _ => return Ok(None),
    };
    let value = eval_bc(f, beta, &c)?;
    Ok(Some(Witness { beta: beta.clone(), c, value }))
}

// 1 + max |a_i / a_n| bounds every real root of a polynomial in c.
fn cauchy_bound(g: &MPoly) -> Rational {
    let d = g.degree_in(Symbol::C);
    let lead = g.coefficient_of(Symbol::C, d).as_constant().unwrap_or_else(|| int(1));
    let mut m = Rational::zero();
    for k in 0..d {
        if let Some(a) = g.coefficient_of(Symbol::C, k).as_constant() {
            let r = (a / &lead).abs();
            if r > m {
                m = r;
            }
        }
    }
    m + int(1)
}

/// Behaviour near `b = 0` of a polynomial in `b` on a domain starting at 0.
pub(crate) fn small_beta(reduced: &MPoly, ranges: &[AlgebraicInterval]) -> Result<SmallBeta> {
    let limit = reduced.limit_at_zero_plus(Symbol::Beta);
    let first = ranges.iter().find(|r| r.lo == Endpoint::Exact(Rational::zero()));
    let beta0 = match first {
        None => None,
        Some(r) => {
            let b0 = match &r.hi {
                Endpoint::Exact(x) => x.clone(),
                Endpoint::Root(root) => {
                    let a = root.isolating_interval.lo.clone();
                    if !a.is_positive() {
                        return Ok(SmallBeta { limit, beta0: None });
                    }
                    simplest_between(&(&a / int(2)), &a)
                }
            };
            let cert = sign_on_interval(reduced, &Interval::open(Rational::zero(), b0.clone())?)?;
            (cert == SignOnInterval::Negative).then_some(b0)
        }
    };
    Ok(SmallBeta { limit, beta0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ranges_examples() {
        let r = unstable_beta_range(&p("2*(1+b)*(b^2+2*b-2)"), &Interval::unit_beta()).unwrap();
        assert_eq!(r.ranges.len(), 1);
        assert_eq!(r.ranges[0].lo, Endpoint::Exact(int(0)));
        let r = unstable_beta_range(&p("b^2*(21-25*b)"), &Interval::unit_beta()).unwrap();
        assert_eq!(r.ranges[0].lo, Endpoint::Exact(rat(21, 25)));
        assert!(unstable_beta_range(&p("1"), &Interval::unit_beta()).unwrap().ranges.is_empty());
        assert_eq!(unstable_beta_range(&MPoly::zero(), &Interval::unit_beta()), Err(Error::IdenticallyZero));
        assert!(matches!(unstable_beta_range(&p("b*c"), &Interval::unit_beta()), Err(Error::NotUnivariate(_))));
    }

    #[test]
    fn small_beta_bound() {
        let f = p("2*(1+b)*(b^2+2*b-2)");
        let r = unstable_beta_range(&f, &Interval::unit_beta()).unwrap();
        let s = small_beta(&f, &r.ranges).unwrap();
        assert_eq!(s.limit, MPoly::int(-4));
        let b0 = s.beta0.unwrap();
        assert!(b0 > rat(36, 100) && b0 < rat(74, 100));
        let g = p("b^2*(21-25*b)");
        let r = unstable_beta_range(&g, &Interval::unit_beta()).unwrap();
        assert_eq!(small_beta(&g, &r.ranges).unwrap().beta0, None);
    }
}
