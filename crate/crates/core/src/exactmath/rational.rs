use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^-k` as an exact rational.
pub fn pow2_inv(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut digits = String::from(whole_digits);
        digits.push_str(frac);
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        let d = num_traits::pow(BigInt::from(10u8), frac.len());
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Decimal rendering rounded (half away from zero) to `sig` significant digits.
pub fn to_decimal(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let ten = BigInt::from(10u8);
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    loop {
        let p = pow10(e);
        if a < p {
            e -= 1;
        } else if a >= pow10(e + 1) {
            e += 1;
        } else {
            break;
        }
    }
    // scaled = a * 10^(sig-1-e), rounded to an integer
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = q;
    if Rational::new(rem, scaled.denom().clone()) * int(2) >= Rational::one() {
        digits += 1;
    }
    // rounding may carry into a new digit
    let mut shift = shift;
    if digits.to_string().len() > sig {
        digits /= &ten;
        shift -= 1;
    }
    let ds = digits.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&ds);
        for _ in 0..(-shift) {
            out.push('0');
        }
    } else {
        let shift = shift as usize;
        if ds.len() > shift {
            let (w, f) = ds.split_at(ds.len() - shift);
            out.push_str(w);
            out.push('.');
            out.push_str(f);
        } else {
            out.push_str("0.");
            for _ in 0..(shift - ds.len()) {
                out.push('0');
            }
            out.push_str(&ds);
        }
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10u8), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Simplicity order: smaller denominator first, then smaller absolute numerator.
pub fn simpler(a: &Rational, b: &Rational) -> Ordering {
    a.denom().cmp(b.denom()).then_with(|| a.numer().abs().cmp(&b.numer().abs()))
}

/// The simplest rational strictly between `a` and `b` (`a < b`).
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !b.is_positive() {
        return -simplest_nonneg(&-b, &-a);
    }
    simplest_nonneg(a, b)
}

// 0 <= a < b
fn simplest_nonneg(a: &Rational, b: &Rational) -> Rational {
    let k = a.floor();
    let next = &k + Rational::one();
    if &next < b {
        return next;
    }
    let fa = a - &k;
    let fb = b - &k;
    // both fractional parts live in [0, 1]; descend through reciprocals
    if fa.is_zero() {
        let x = (fb.recip()).floor() + Rational::one();
        return k + x.recip();
    }
    let x = simplest_nonneg(&fb.recip(), &fa.recip());
    k + x.recip()
}

/// Simplest rational in an interval with the given endpoint closure.
pub fn simplest_in(lo: &Rational, hi: &Rational, lo_open: bool, hi_open: bool) -> Rational {
    if lo == hi {
        return lo.clone();
    }
    let mut best = simplest_between(lo, hi);
    if !lo_open && simpler(lo, &best) == Ordering::Less {
        best = lo.clone();
    }
    if !hi_open && simpler(hi, &best) == Ordering::Less {
        best = hi.clone();
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_decimal_and_integer() {
        assert_eq!(parse_rational("12/13"), Some(rat(12, 13)));
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(rat(-26, 1).to_string(), "-26");
        assert_eq!(rat(6, 4).to_string(), "3/2");
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&rat(-1, 2), 12), "-0.5");
        assert_eq!(to_decimal(&int(123456), 3), "123000");
        assert_eq!(to_decimal(&rat(999, 1000), 2), "1");
        assert_eq!(to_decimal(&rat(1, 8000), 2), "0.00013");
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(12, 13), &int(1)), rat(13, 14));
        assert_eq!(simplest_between(&int(0), &int(1)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-1, 3), &rat(1, 5)), int(0));
        assert_eq!(simplest_between(&rat(-3, 2), &rat(-1, 3)), int(-1));
        assert_eq!(simplest_between(&rat(3, 10), &rat(1, 3)), rat(4, 13));
        assert_eq!(simplest_in(&rat(12, 13), &int(1), true, false), int(1));
        assert_eq!(simplest_in(&int(0), &int(1), true, true), rat(1, 2));
    }
}
