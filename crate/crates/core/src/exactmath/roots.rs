//! Certified real-root isolation and sign analysis for univariate polynomials.
//!
//! The input is split into square-free factors (Yun); roots of the square-free
//! part are isolated by Sturm counts with rational bisection and refined to a
//! configurable width. Every reported root knows its multiplicity in the
//! original polynomial, so even-multiplicity roots are never mistaken for sign
//! changes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rational::{int, pow2_inv, simplest_between, simplest_in, Rational};
use super::symbol::Symbol;
use super::upoly::{sturm_count, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(alloc::format!("{lo} > {hi}")));
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(Error::InvalidInterval(alloc::format!("degenerate interval at {lo} must be closed")));
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Interval::new(lo, hi, true, true)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    /// The cone-angle range `(0, 1]`.
    pub fn unit_beta() -> Self {
        Interval { lo: Rational::zero(), hi: Rational::one(), lo_open: true, hi_open: false }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x, lo_open: false, hi_open: false }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Simplest rational inside the interval.
    pub fn simplest_point(&self) -> Rational {
        simplest_in(&self.lo, &self.hi, self.lo_open, self.hi_open)
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = if self.lo > other.lo {
            (self.lo.clone(), self.lo_open)
        } else if self.lo < other.lo {
            (other.lo.clone(), other.lo_open)
        } else {
            (self.lo.clone(), self.lo_open || other.lo_open)
        };
        let (hi, hi_open) = if self.hi < other.hi {
            (self.hi.clone(), self.hi_open)
        } else if self.hi > other.hi {
            (other.hi.clone(), other.hi_open)
        } else {
            (self.hi.clone(), self.hi_open || other.hi_open)
        };
        Interval::new(lo, hi, lo_open, hi_open).ok()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// A real root of a univariate polynomial, certified by an isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicRoot {
    /// Square-free factor of the analysed polynomial that vanishes here.
    pub defining_polynomial: MPoly,
    /// Open interval with rational endpoints containing exactly this root of
    /// the analysed polynomial.
    pub isolating_interval: Interval,
    /// Sign of the analysed polynomial at the left and right endpoints.
    pub sign_left: i8,
    pub sign_right: i8,
    pub multiplicity: u32,
    /// Set when the root is rational and has been identified exactly.
    pub exact: Option<Rational>,
    variable: Symbol,
}

impl AlgebraicRoot {
    pub fn variable(&self) -> Symbol {
        self.variable
    }

    /// True when the analysed polynomial changes sign at this root.
    pub fn crosses(&self) -> bool {
        self.multiplicity % 2 == 1
    }

    fn factor(&self) -> UniPoly {
        self.defining_polynomial.to_univariate().expect("univariate by construction").1
    }

    /// Sturm count of the defining polynomial over the isolating interval.
    pub fn sturm_count(&self) -> usize {
        let chain = self.factor().sturm_chain();
        let iv = &self.isolating_interval;
        sturm_count(&chain, &iv.lo, &iv.hi)
    }

    /// Bisects the isolating interval until its width is at most `tol`.
    pub fn refine(&self, tol: &Rational) -> AlgebraicRoot {
        let f = self.factor();
        let mut out = self.clone();
        let (mut lo, mut hi) = (out.isolating_interval.lo.clone(), out.isolating_interval.hi.clone());
        let s_lo = f.sign_at(&lo);
        while &(&hi - &lo) > tol {
            let m = (&lo + &hi) / int(2);
            let s = f.sign_at(&m);
            if s == 0 {
                let w = (&hi - &lo) / int(4);
                out.exact = Some(m.clone());
                lo = &m - &w;
                hi = &m + &w;
                continue;
            }
            if s == s_lo {
                lo = m;
            } else {
                hi = m;
            }
        }
        out.isolating_interval = Interval { lo, hi, lo_open: true, hi_open: true };
        out
    }

    /// The exact value for a rational root, otherwise the left end of the
    /// isolating interval.
    pub fn lower_bound(&self) -> Rational {
        self.exact.clone().unwrap_or_else(|| self.isolating_interval.lo.clone())
    }

    pub fn upper_bound(&self) -> Rational {
        self.exact.clone().unwrap_or_else(|| self.isolating_interval.hi.clone())
    }

    /// Compares the root with a rational (exactly, by Sturm refinement).
    pub fn cmp_rational(&self, x: &Rational) -> core::cmp::Ordering {
        use core::cmp::Ordering::*;
        if let Some(e) = &self.exact {
            return e.cmp(x);
        }
        let iv = &self.isolating_interval;
        if x <= &iv.lo {
            return Greater;
        }
        if x >= &iv.hi {
            return Less;
        }
        let f = self.factor();
        let s = f.sign_at(x);
        if s == 0 {
            return Equal;
        }
        if s == f.sign_at(&iv.lo) {
            Less
        } else {
            Greater
        }
    }

    /// Decimal midpoint of the isolating interval, for display only.
    pub fn approx(&self, digits: usize) -> String {
        match &self.exact {
            Some(e) => super::rational::to_decimal(e, digits),
            None => {
                // shrink the interval well below the last requested digit
                let iv = &self.isolating_interval;
                let magnitude = if iv.lo > Rational::zero() {
                    iv.lo.clone()
                } else if iv.hi < Rational::zero() {
                    -iv.hi.clone()
                } else {
                    Rational::one()
                };
                let ten = num_bigint::BigInt::from(10u8);
                let tol = magnitude / Rational::from_integer(num_traits::pow(ten, digits + 3));
                let fine = self.refine(&tol).isolating_interval;
                super::rational::to_decimal(&((&fine.lo + &fine.hi) / int(2)), digits)
            }
        }
    }
}

impl fmt::Display for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(e) => write!(f, "{e}"),
            None => {
                write!(f, "root of {} in {} (~{})", self.defining_polynomial, self.isolating_interval, self.approx(10))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationOptions {
    /// Maximum width of a returned isolating interval.
    pub tolerance: Rational,
}

impl Default for IsolationOptions {
    fn default() -> Self {
        IsolationOptions { tolerance: pow2_inv(32) }
    }
}

/// All distinct real roots of `p` in `window`, sorted increasingly.
pub fn isolate_real_roots(p: &MPoly, window: &Interval) -> Result<Vec<AlgebraicRoot>> {
    isolate_real_roots_with(p, window, &IsolationOptions::default())
}

pub fn isolate_real_roots_with(p: &MPoly, window: &Interval, opts: &IsolationOptions) -> Result<Vec<AlgebraicRoot>> {
    let (var, f) = p.to_univariate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = var.or_else(|| p.ring().iter().next().copied()).unwrap_or(Symbol::Beta);
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = f.square_free_factors();
    let sqf = factors.iter().fold(UniPoly::one(), |acc, (_, g)| acc.mul(g));
    let chain = sqf.sturm_chain();

    let mut raw: Vec<(Rational, Rational, Option<Rational>)> = Vec::new();
    let mut lo = window.lo.clone();
    let mut hi = window.hi.clone();

    // Roots sitting exactly on a window endpoint.
    if sqf.sign_at(&lo).is_zero() {
        let (a, b) = isolate_point(&sqf, &chain, &lo);
        if !window.lo_open {
            raw.push((a, b.clone(), Some(lo.clone())));
        }
        lo = if window.is_point() { b } else { (&lo + &b.min(hi.clone())) / int(2) };
        // shrink until nonroot; the neighbourhood of lo has no other root
        while sqf.sign_at(&lo) == 0 {
            lo = (&lo + &window.lo) / int(2);
        }
    }
    let mut tail: Option<(Rational, Rational, Option<Rational>)> = None;
    if !window.is_point() && sqf.sign_at(&hi).is_zero() {
        let (a, b) = isolate_point(&sqf, &chain, &hi);
        if !window.hi_open {
            tail = Some((a.clone(), b, Some(hi.clone())));
        }
        hi = (&hi + &a.max(lo.clone())) / int(2);
        while sqf.sign_at(&hi) == 0 {
            hi = (&hi + &window.hi) / int(2);
        }
    }
    if lo < hi {
        bisect(&sqf, &chain, lo, hi, &mut raw);
    }
    raw.extend(tail);

    let mut out = Vec::with_capacity(raw.len());
    for (a, b, exact) in raw {
        // identify the square-free factor vanishing inside (a, b)
        let (mult, g) = factors
            .iter()
            .find(|(_, g)| match &exact {
                Some(x) => g.sign_at(x) == 0,
                None => g.sign_at(&a) != g.sign_at(&b),
            })
            .cloned()
            .expect("every root of the square-free part belongs to one factor");
        let mut root = AlgebraicRoot {
            defining_polynomial: MPoly::from_univariate(var, &g),
            isolating_interval: Interval { lo: a, hi: b, lo_open: true, hi_open: true },
            sign_left: 0,
            sign_right: 0,
            multiplicity: mult,
            exact,
            variable: var,
        };
        if g.degree() == Some(1) && root.exact.is_none() {
            let c = g.coeffs();
            root.exact = Some(-&c[0] / &c[1]);
        }
        root = root.refine(&opts.tolerance);
        if root.exact.is_none() {
            let iv = &root.isolating_interval;
            let q = simplest_between(&iv.lo, &iv.hi);
            if g.sign_at(&q) == 0 {
                root.exact = Some(q);
            }
        }
        let iv = &root.isolating_interval;
        root.sign_left = f.sign_at(&iv.lo);
        root.sign_right = f.sign_at(&iv.hi);
        out.push(root);
    }
    Ok(out)
}

// An open interval around a rational root `x` of `sqf` with nonroot
// endpoints and no other root inside.
fn isolate_point(sqf: &UniPoly, chain: &[UniPoly], x: &Rational) -> (Rational, Rational) {
    let mut w = Rational::one();
    loop {
        let a = x - &w;
        let b = x + &w;
        if sqf.sign_at(&a) != 0 && sqf.sign_at(&b) != 0 && sturm_count(chain, &a, &b) == 1 {
            return (a, b);
        }
        w /= int(2);
    }
}

fn bisect(
    sqf: &UniPoly,
    chain: &[UniPoly],
    a: Rational,
    b: Rational,
    out: &mut Vec<(Rational, Rational, Option<Rational>)>,
) {
    match sturm_count(chain, &a, &b) {
        0 => {}
        1 => out.push((a, b, None)),
        _ => {
            let m = (&a + &b) / int(2);
            if sqf.sign_at(&m) == 0 {
                let mut w = (&b - &a) / int(4);
                let (l, r) = loop {
                    let l = &m - &w;
                    let r = &m + &w;
                    if sqf.sign_at(&l) != 0 && sqf.sign_at(&r) != 0 && sturm_count(chain, &l, &r) == 1 {
                        break (l, r);
                    }
                    w /= int(2);
                };
                bisect(sqf, chain, a, l.clone(), out);
                out.push((l, r.clone(), Some(m)));
                bisect(sqf, chain, r, b, out);
            } else {
                bisect(sqf, chain, a, m.clone(), out);
                bisect(sqf, chain, m, b, out);
            }
        }
    }
}

/// Outcome of a certified sign analysis over a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignOnInterval {
    Positive,
    Negative,
    Zero,
    /// Not of one strict sign: rational witnesses for each sign found, plus the
    /// roots inside the window.
    Mixed {
        positive: Option<Rational>,
        negative: Option<Rational>,
        roots: Vec<AlgebraicRoot>,
    },
}

impl SignOnInterval {
    pub fn negative_witness(&self) -> Option<&Rational> {
        match self {
            SignOnInterval::Mixed { negative, .. } => negative.as_ref(),
            _ => None,
        }
    }
}

fn check_window(window: &Interval) -> Result<()> {
    if window.lo > window.hi || (window.is_point() && (window.lo_open || window.hi_open)) {
        return Err(Error::EmptyWindow);
    }
    Ok(())
}

/// Rational sample points, one in each gap between consecutive roots.
pub(crate) fn gap_samples(window: &Interval, roots: &[AlgebraicRoot]) -> Vec<(Interval, Rational)> {
    let mut out = Vec::new();
    if window.is_point() {
        if roots.is_empty() {
            out.push((window.clone(), window.lo.clone()));
        }
        return out;
    }
    let mut lo = window.lo.clone();
    let mut lo_open = window.lo_open;
    for r in roots {
        let left = r.lower_bound();
        if left > lo {
            let gap = Interval { lo: lo.clone(), hi: left.clone(), lo_open, hi_open: true };
            let q = simplest_between(&lo, &left);
            out.push((gap, q));
        }
        lo = r.upper_bound();
        lo_open = true;
    }
    if lo < window.hi || (lo == window.hi && !lo_open && !window.hi_open) {
        let gap = Interval { lo: lo.clone(), hi: window.hi.clone(), lo_open, hi_open: window.hi_open };
        let q = if lo == window.hi { lo.clone() } else { simplest_between(&lo, &window.hi) };
        out.push((gap, q));
    }
    out
}

/// Certified sign of a univariate polynomial over `window`.
pub fn sign_on_interval(p: &MPoly, window: &Interval) -> Result<SignOnInterval> {
    check_window(window)?;
    if p.is_zero() {
        return Ok(SignOnInterval::Zero);
    }
    let (var, f) = p.to_univariate()?;
    if window.is_point() && f.sign_at(&window.lo) == 0 {
        return Ok(SignOnInterval::Zero);
    }
    let var = var.unwrap_or(Symbol::Beta);
    let roots = isolate_real_roots(&MPoly::from_univariate(var, &f), window)?;
    let samples = gap_samples(window, &roots);
    let mut positive = None;
    let mut negative = None;
    for (_, x) in &samples {
        match f.sign_at(x) {
            1 if positive.is_none() => positive = Some(x.clone()),
            -1 if negative.is_none() => negative = Some(x.clone()),
            _ => {}
        }
    }
    if roots.is_empty() {
        return Ok(match (positive, negative) {
            (Some(_), None) => SignOnInterval::Positive,
            (None, Some(_)) => SignOnInterval::Negative,
            _ => unreachable!("a root-free window has exactly one sign"),
        });
    }
    Ok(SignOnInterval::Mixed { positive, negative, roots })
}

/// Endpoint of a range whose ends may be irrational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Exact(Rational),
    Root(AlgebraicRoot),
}

impl Endpoint {
    pub fn from_root(r: &AlgebraicRoot) -> Endpoint {
        match &r.exact {
            Some(x) => Endpoint::Exact(x.clone()),
            None => Endpoint::Root(r.clone()),
        }
    }

    /// A rational lower approximation (exact when rational).
    pub fn lower(&self) -> Rational {
        match self {
            Endpoint::Exact(x) => x.clone(),
            Endpoint::Root(r) => r.isolating_interval.lo.clone(),
        }
    }

    pub fn upper(&self) -> Rational {
        match self {
            Endpoint::Exact(x) => x.clone(),
            Endpoint::Root(r) => r.isolating_interval.hi.clone(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Exact(x) => write!(f, "{x}"),
            Endpoint::Root(r) => write!(f, "{r}"),
        }
    }
}

/// An interval with possibly algebraic endpoints, e.g. `(0, sqrt 3 - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicInterval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl AlgebraicInterval {
    /// Simplest rational strictly inside (or the point itself).
    pub fn sample(&self) -> Rational {
        let (a, b) = (self.lo.upper(), self.hi.lower());
        if a == b {
            return a;
        }
        let lo_open = self.lo_open || matches!(self.lo, Endpoint::Root(_));
        let hi_open = self.hi_open || matches!(self.hi, Endpoint::Root(_));
        simplest_in(&a, &b, lo_open, hi_open)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        use core::cmp::Ordering::*;
        let lo_ok = match &self.lo {
            Endpoint::Exact(e) => {
                if self.lo_open {
                    x > e
                } else {
                    x >= e
                }
            }
            Endpoint::Root(r) => match r.cmp_rational(x) {
                Less => true,
                Equal => !self.lo_open,
                Greater => false,
            },
        };
        let hi_ok = match &self.hi {
            Endpoint::Exact(e) => {
                if self.hi_open {
                    x < e
                } else {
                    x <= e
                }
            }
            Endpoint::Root(r) => match r.cmp_rational(x) {
                Greater => true,
                Equal => !self.hi_open,
                Less => false,
            },
        };
        lo_ok && hi_ok
    }
}

impl fmt::Display for AlgebraicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Decomposes `window` by the sign of `p` and returns the maximal pieces where
/// `p < 0` together with every root found inside the window.
pub fn negative_ranges(p: &MPoly, window: &Interval) -> Result<(Vec<AlgebraicInterval>, Vec<AlgebraicRoot>)> {
    check_window(window)?;
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let (var, f) = p.to_univariate()?;
    let var = var.unwrap_or(Symbol::Beta);
    let roots = isolate_real_roots(&MPoly::from_univariate(var, &f), window)?;
    // roots strictly inside the window bound the pieces
    let mut ranges: Vec<AlgebraicInterval> = Vec::new();
    let mut lo = Endpoint::Exact(window.lo.clone());
    let mut lo_open = window.lo_open;
    let mut push = |lo: Endpoint, lo_open: bool, hi: Endpoint, hi_open: bool| {
        let piece = AlgebraicInterval { lo, hi, lo_open, hi_open };
        if f.sign_at(&piece.sample()) < 0 {
            ranges.push(piece);
        }
    };
    for r in &roots {
        let at_lo = r.exact.as_ref() == Some(&window.lo);
        if at_lo {
            // a closed left endpoint that is a root is excluded from {p < 0}
            lo_open = true;
            continue;
        }
        let at_hi = r.exact.as_ref() == Some(&window.hi);
        push(lo.clone(), lo_open, Endpoint::from_root(r), true);
        if at_hi {
            lo = Endpoint::from_root(r);
            lo_open = true;
            break;
        }
        lo = Endpoint::from_root(r);
        lo_open = true;
    }
    let hi_is_root = roots.last().is_some_and(|r| r.exact.as_ref() == Some(&window.hi));
    if !hi_is_root {
        push(lo, lo_open, Endpoint::Exact(window.hi.clone()), window.hi_open);
    }
    Ok((ranges, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn isolates_sqrt3_minus_one() {
        let roots = isolate_real_roots(&p("b^2+2*b-2"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots.len(), 1);
        let r = &roots[0];
        assert!(r.exact.is_none());
        assert_eq!(r.sturm_count(), 1);
        assert!(r.isolating_interval.width() <= pow2_inv(32));
        // (sqrt 3 - 1)^2 = 4 - 2 sqrt 3: check bracket via squares of 1 + x
        let lo = &r.isolating_interval.lo + int(1);
        let hi = &r.isolating_interval.hi + int(1);
        assert!(&lo * &lo < int(3) && &hi * &hi > int(3));
        assert_eq!((r.sign_left, r.sign_right), (-1, 1));
    }

    #[test]
    fn rational_root_is_exact() {
        let roots = isolate_real_roots(&p("21-25*b"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(21, 25)));
        let roots = isolate_real_roots(&p("24*b^2-26*b^3"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(12, 13)));
        // non-linear factor with a rational root found by the simplest-rational probe
        let roots = isolate_real_roots(&p("(3*b-1)*(b^2+1)"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots[0].exact, Some(rat(1, 3)));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p("b^2+1"), &Interval::unit_beta()).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&MPoly::zero(), &Interval::unit_beta()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn endpoint_roots_follow_closure() {
        // b^2 (21 - 25 b): root 0 sits on the open end of (0,1]
        let roots = isolate_real_roots(&p("b^2*(21-25*b)"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots.len(), 1);
        let closed = Interval::closed(int(0), int(1)).unwrap();
        let roots = isolate_real_roots(&p("b^2*(21-25*b)"), &closed).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact, Some(int(0)));
        assert_eq!(roots[0].multiplicity, 2);
        assert!(!roots[0].crosses());
        assert_eq!((roots[0].sign_left, roots[0].sign_right), (1, 1));
        let roots = isolate_real_roots(&p("b-1"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots[0].exact, Some(int(1)));
        let roots = isolate_real_roots(&p("b-1"), &Interval::open(int(0), int(1)).unwrap()).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn midpoint_roots_and_clusters() {
        // roots at 1/2 (hit by bisection), 1/3 and 2/3
        let f = p("(2*b-1)*(3*b-1)*(3*b-2)");
        let roots = isolate_real_roots(&f, &Interval::closed(int(0), int(1)).unwrap()).unwrap();
        let xs: Vec<_> = roots.iter().map(|r| r.exact.clone().unwrap()).collect();
        assert_eq!(xs, alloc::vec![rat(1, 3), rat(1, 2), rat(2, 3)]);
        // close irrational pair
        let g = p("b^2 - b + 249999/1000000");
        let roots = isolate_real_roots(&g, &Interval::closed(int(0), int(1)).unwrap()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].isolating_interval.hi <= roots[1].isolating_interval.lo);
    }

    #[test]
    fn sign_examples() {
        let w = Interval::open(rat(12, 13), int(1)).unwrap();
        assert_eq!(sign_on_interval(&p("24*b^2-26*b^3"), &w).unwrap(), SignOnInterval::Negative);
        let w = Interval::open(int(0), int(1)).unwrap();
        assert_eq!(sign_on_interval(&p("b^2"), &w).unwrap(), SignOnInterval::Positive);
        match sign_on_interval(&p("b^2+2*b-2"), &w).unwrap() {
            SignOnInterval::Mixed { positive, negative, roots } => {
                assert_eq!(roots.len(), 1);
                assert_eq!(negative, Some(rat(1, 2)));
                assert!(positive.unwrap() > rat(73, 100));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(sign_on_interval(&MPoly::zero(), &w).unwrap(), SignOnInterval::Zero);
        let bad = Interval { lo: int(1), hi: int(1), lo_open: true, hi_open: false };
        assert_eq!(sign_on_interval(&p("b"), &bad), Err(Error::EmptyWindow));
    }

    #[test]
    fn negative_range_examples() {
        let (ranges, _) = negative_ranges(&p("2*(1+b)*(b^2+2*b-2)"), &Interval::unit_beta()).unwrap();
        assert_eq!(ranges.len(), 1);
        assert_eq!(ranges[0].lo, Endpoint::Exact(int(0)));
        assert!(matches!(ranges[0].hi, Endpoint::Root(_)));
        let (ranges, roots) = negative_ranges(&p("b^2*(21-25*b)"), &Interval::unit_beta()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(
            ranges,
            alloc::vec![AlgebraicInterval {
                lo: Endpoint::Exact(rat(21, 25)),
                hi: Endpoint::Exact(int(1)),
                lo_open: true,
                hi_open: false
            }]
        );
        let (ranges, _) = negative_ranges(&p("1"), &Interval::unit_beta()).unwrap();
        assert!(ranges.is_empty());
        // even root inside the window splits the negative set at the zero
        let (ranges, _) = negative_ranges(&p("-(2*b-1)^2"), &Interval::unit_beta()).unwrap();
        assert_eq!(ranges.len(), 2);
    }
}
