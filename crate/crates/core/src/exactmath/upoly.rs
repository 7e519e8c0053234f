use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::rational::{sign_of, Rational};

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(alloc::vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.eval(x))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect())
    }

    pub fn scale(&self, r: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let z = Rational::zero();
        UniPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) - other.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut rem = self.0.clone();
        let mut quot = alloc::vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lc;
            for (j, c) in d.0.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns `(k, f_k)` with `self = lc *
    /// prod f_k^k`, each `f_k` monic, square-free and pairwise coprime.
    pub fn square_free_factors(&self) -> Vec<(u32, UniPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.monic()));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            k += 1;
        }
        out
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn square_free_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`, each entry rescaled by a
    /// positive constant (which leaves sign patterns unchanged).
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = alloc::vec![normalize(self.clone())];
        if self.degree().unwrap_or(0) == 0 {
            return chain;
        }
        chain.push(normalize(self.derivative()));
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(normalize(r.scale(&-Rational::one())));
        }
        chain
    }
}

fn normalize(p: UniPoly) -> UniPoly {
    if p.is_zero() {
        return p;
    }
    let lc = p.leading().abs();
    p.scale(&lc.recip())
}

/// Number of sign changes in a Sturm chain at `x`, zeros skipped.
pub fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct real roots of the chain's head in `(a, b]`; exact for `a < b`
/// when the head does not vanish at `a`.
pub fn sturm_count(chain: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&k| int(k)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) / (x-1)
        let f = up(&[-2, 1, 1]);
        let (q, r) = f.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&up(&[-1, 1])), up(&[-1, 1]));
        assert_eq!(up(&[1, 0, 1]).gcd(&up(&[-1, 1])), UniPoly::one());
    }

    #[test]
    fn yun_decomposition() {
        // x^2 (21 - 25x) -> monic: x^2 (x - 21/25) up to sign
        let f = up(&[0, 0, 21, -25]);
        let parts = f.square_free_factors();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (1, UniPoly::new(alloc::vec![rat(-21, 25), int(1)])));
        assert_eq!(parts[1], (2, up(&[0, 1])));
        // (x-1)^3 (x+1)
        let g = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[-1, 1])).mul(&up(&[1, 1]));
        let parts = g.square_free_factors();
        assert_eq!(parts, alloc::vec![(1, up(&[1, 1])), (3, up(&[-1, 1]))]);
        assert_eq!(g.square_free_part(), up(&[-1, 0, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // x^2 + 2x - 2 has roots -1 +- sqrt 3
        let f = up(&[-2, 2, 1]);
        let ch = f.sturm_chain();
        assert_eq!(sturm_count(&ch, &int(0), &int(1)), 1);
        assert_eq!(sturm_count(&ch, &int(-3), &int(1)), 2);
        assert_eq!(sturm_count(&ch, &int(1), &int(5)), 0);
        let g = up(&[1, 0, 1]);
        assert_eq!(sturm_count(&g.sturm_chain(), &int(-10), &int(10)), 0);
    }
}
