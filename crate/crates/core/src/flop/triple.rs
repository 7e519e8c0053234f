use alloc::vec::Vec;

use crate::exactmath::{int, MPoly, Rational};

/// A triple product on a threefold together with the degrees of the three
/// divisors on each of a family of disjoint flopping curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopTriple {
    pub base: MPoly,
    pub r_values: Vec<[MPoly; 3]>,
}

impl FlopTriple {
    pub fn new(base: MPoly) -> Self {
        FlopTriple { base, r_values: Vec::new() }
    }

    pub fn with_curve(mut self, degrees: [MPoly; 3]) -> Self {
        self.r_values.push(degrees);
        self
    }

    /// The same data seen from the flopped side, where every curve degree
    /// changes sign.
    pub fn flopped(&self) -> FlopTriple {
        FlopTriple {
            base: flop_triple_product(self),
            r_values: self.r_values.iter().map(|[a, b, c]| [-a.clone(), -b.clone(), -c.clone()]).collect(),
        }
    }
}

/// `H1.H2.H3 - sum_i (H1.C_i)(H2.C_i)(H3.C_i)` after flopping all the curves.
pub fn flop_triple_product(t: &FlopTriple) -> MPoly {
    t.r_values.iter().fold(t.base.clone(), |acc, [a, b, c]| acc - &(a * &(b * c)))
}

/// The same correction for one curve, computed on the common blow-up `W` of
/// both sides. The divisors are `c^*H_i - m_i E` on `W`, with
/// `c^*H_i . c^*H_j . E = 0`, `c^*H_i . E^2 = -r_i` and `E^3 = 2`; the flopped
/// side uses multiplicities `r_i + m_i` and curve degrees `-r_i`.
pub fn blowup_oracle_triple(m: &[Rational; 3], r: &[Rational; 3], base: &Rational) -> Rational {
    let on_w = expand(base, m, r);
    let m_hat: [Rational; 3] = core::array::from_fn(|i| &r[i] + &m[i]);
    let r_hat: [Rational; 3] = core::array::from_fn(|i| -&r[i]);
    // on_w = flopped + correction(m_hat, r_hat)
    let correction = expand(&Rational::from_integer(0.into()), &m_hat, &r_hat);
    on_w - correction
}

// (c^*H1 - m1 E)(c^*H2 - m2 E)(c^*H3 - m3 E) on W
fn expand(base: &Rational, m: &[Rational; 3], r: &[Rational; 3]) -> Rational {
    let e_sq = |i: usize| -&r[i];
    let e_cubed = int(2);
    base + &m[0] * &m[1] * e_sq(2) + &m[0] * &m[2] * e_sq(1) + &m[1] * &m[2] * e_sq(0) - &m[0] * &m[1] * &m[2] * e_cubed
}
