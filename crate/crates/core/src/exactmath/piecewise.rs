use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::mpoly::MPoly;
use super::rational::{int, Rational};
use super::roots::Interval;
use super::symbol::Symbol;

/// `constant + slope * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear {
    pub constant: Rational,
    pub slope: Rational,
}

impl Linear {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        Linear { constant, slope }
    }

    pub fn constant(c: Rational) -> Self {
        Linear { constant: c, slope: Rational::zero() }
    }

    pub fn eval(&self, b: &Rational) -> Rational {
        &self.constant + &self.slope * b
    }

    /// Reads a polynomial of degree at most one in beta.
    pub fn from_mpoly(p: &MPoly) -> Option<Linear> {
        if p.variables().iter().any(|s| *s != Symbol::Beta) || p.degree_in(Symbol::Beta) > 1 {
            return None;
        }
        let constant = p.coefficient_of(Symbol::Beta, 0).as_constant()?;
        let slope = p.coefficient_of(Symbol::Beta, 1).as_constant()?;
        Some(Linear { constant, slope })
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::constant(self.constant.clone()) + MPoly::beta().scale(&self.slope)
    }

    pub fn scale(&self, r: &Rational) -> Linear {
        Linear { constant: &self.constant * r, slope: &self.slope * r }
    }

    /// The beta where the two lines meet, if they are not parallel.
    pub fn crossing(&self, other: &Linear) -> Option<Rational> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            return None;
        }
        Some((&other.constant - &self.constant) / ds)
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

/// A piecewise-linear function of beta, stored as consecutive pieces that
/// tile a window. Each piece also remembers which input line attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub domain: Interval,
    pub value: Linear,
    /// Index of the input function realising this piece.
    pub source: usize,
}

impl PiecewiseLinear {
    /// Pointwise minimum of `lines` over `window`.
    pub fn min_of(lines: &[Linear], window: &Interval) -> PiecewiseLinear {
        Self::extremum(lines, window, true)
    }

    /// Pointwise maximum of `lines` over `window`.
    pub fn max_of(lines: &[Linear], window: &Interval) -> PiecewiseLinear {
        Self::extremum(lines, window, false)
    }

    fn extremum(lines: &[Linear], window: &Interval, min: bool) -> PiecewiseLinear {
        assert!(!lines.is_empty(), "extremum of no functions");
        if window.is_point() {
            let i = best(lines, &window.lo, min);
            return PiecewiseLinear {
                pieces: alloc::vec![Piece { domain: window.clone(), value: lines[i].clone(), source: i }],
            };
        }
        let mut cuts: Vec<Rational> = Vec::new();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if let Some(x) = a.crossing(b) {
                    if x > window.lo && x < window.hi {
                        cuts.push(x);
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let mut bounds = alloc::vec![window.lo.clone()];
        bounds.extend(cuts);
        bounds.push(window.hi.clone());

        let mut pieces: Vec<Piece> = Vec::new();
        for (k, w) in bounds.windows(2).enumerate() {
            let mid = (&w[0] + &w[1]) / int(2);
            let i = best(lines, &mid, min);
            let lo_open = if k == 0 { window.lo_open } else { false };
            let hi_open = if k + 2 == bounds.len() { window.hi_open } else { true };
            match pieces.last_mut() {
                Some(last) if last.value == lines[i] => {
                    last.domain.hi = w[1].clone();
                    last.domain.hi_open = hi_open;
                }
                _ => pieces.push(Piece {
                    domain: Interval { lo: w[0].clone(), hi: w[1].clone(), lo_open, hi_open },
                    value: lines[i].clone(),
                    source: i,
                }),
            }
        }
        PiecewiseLinear { pieces }
    }

    /// Pointwise maximum of `self` and `lines` over the domain of `self`.
    /// Sources: `0` for `self`, `k + 1` for `lines[k]`.
    pub fn max_with(&self, lines: &[Linear]) -> PiecewiseLinear {
        let mut pieces: Vec<Piece> = Vec::new();
        for p in &self.pieces {
            let mut all = alloc::vec![p.value.clone()];
            all.extend(lines.iter().cloned());
            for q in Self::max_of(&all, &p.domain).pieces {
                match pieces.last_mut() {
                    Some(last) if last.value == q.value && last.domain.hi == q.domain.lo => {
                        last.domain.hi = q.domain.hi;
                        last.domain.hi_open = q.domain.hi_open;
                    }
                    _ => pieces.push(q),
                }
            }
        }
        PiecewiseLinear { pieces }
    }

    pub fn domain(&self) -> Interval {
        let first = &self.pieces[0].domain;
        let last = &self.pieces[self.pieces.len() - 1].domain;
        Interval { lo: first.lo.clone(), hi: last.hi.clone(), lo_open: first.lo_open, hi_open: last.hi_open }
    }

    pub fn piece_at(&self, b: &Rational) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.domain.contains(b))
    }

    pub fn eval(&self, b: &Rational) -> Option<Rational> {
        self.piece_at(b).map(|p| p.value.eval(b))
    }

    /// Breakpoints strictly inside the domain.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces.iter().skip(1).map(|p| p.domain.lo.clone()).collect()
    }

    /// Limit as beta decreases to the left end of the domain.
    pub fn limit_at_left(&self) -> Rational {
        let p = &self.pieces[0];
        p.value.eval(&p.domain.lo)
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} on {}", p.value, p.domain)?;
        }
        Ok(())
    }
}

// Index of the extremal line at `x`; ties go to the smallest slope for a
// minimum (the line that stays extremal to the right), largest for a maximum.
fn best(lines: &[Linear], x: &Rational, min: bool) -> usize {
    let mut k = 0;
    for (i, l) in lines.iter().enumerate().skip(1) {
        let (v, w) = (l.eval(x), lines[k].eval(x));
        let better = if min {
            v < w || (v == w && l.slope < lines[k].slope)
        } else {
            v > w || (v == w && l.slope > lines[k].slope)
        };
        if better {
            k = i;
        }
    }
    k
}
