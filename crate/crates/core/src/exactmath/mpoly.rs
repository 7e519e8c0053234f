//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded-lexicographic order (total degree first, then exponents compared
//! with `b` most significant). The canonical string form lists terms in
//! descending order, so equal polynomials always print identically.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::symbol::Symbol;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// A power product, kept sorted by symbol with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(s, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(s, _)| s);
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.iter().find(|&&(t, _)| t == s).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Removes `s` from the monomial, returning its former exponent.
    fn split_off(&self, s: Symbol) -> (Monomial, u32) {
        let mut rest = self.0.clone();
        let e = match rest.iter().position(|&(t, _)| t == s) {
            Some(i) => rest.remove(i).1,
            None => 0,
        };
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                let a = self.0.get(i);
                let b = other.0.get(j);
                match (a, b) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                        // `a` carries a variable that `b` lacks at this position
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over the rationals.
///
/// `ring` records the declared variables; it always contains every symbol that
/// occurs in a term and may contain more (e.g. after cancellation). Equality
/// compares terms only.
#[derive(Clone, Debug, Default)]
pub struct MPoly {
    ring: BTreeSet<Symbol>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut p = MPoly::zero();
        if !r.is_zero() {
            p.terms.insert(Monomial::one(), r);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(int(n))
    }

    pub fn var(s: Symbol) -> Self {
        let mut p = MPoly::zero();
        p.ring.insert(s);
        p.terms.insert(Monomial::var(s, 1), Rational::one());
        p
    }

    pub fn beta() -> Self {
        MPoly::var(Symbol::Beta)
    }

    pub fn c() -> Self {
        MPoly::var(Symbol::C)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MPoly::zero();
        for (m, r) in terms {
            p.add_term(m, r);
        }
        p
    }

    /// Declares additional ring variables without changing the value.
    pub fn with_ring<I: IntoIterator<Item = Symbol>>(mut self, vars: I) -> Self {
        self.ring.extend(vars);
        self
    }

    /// Same polynomial with the ring cut down to the variables that occur.
    pub fn trimmed(&self) -> Self {
        MPoly { ring: self.variables(), terms: self.terms.clone() }
    }

    fn add_term(&mut self, m: Monomial, r: Rational) {
        if r.is_zero() {
            return;
        }
        for &(s, _) in m.factors() {
            self.ring.insert(s);
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += r;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, r);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn ring(&self) -> &BTreeSet<Symbol> {
        &self.ring
    }

    /// Symbols that actually occur in some term.
    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|&(s, _)| s)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn scale(&self, r: &Rational) -> MPoly {
        if r.is_zero() {
            return MPoly::zero().with_ring(self.ring.iter().copied());
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one().with_ring(self.ring.iter().copied());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a full assignment of the ring variables.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<Rational> {
        if let Some(s) = self.ring.iter().find(|s| !assignment.contains_key(s)) {
            return Err(Error::MissingVariable(*s));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(s, e) in m.factors() {
                v *= num_traits::pow(assignment[&s].clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluation of a polynomial in one variable (or constant).
    pub fn eval_at(&self, s: Symbol, x: &Rational) -> Result<Rational> {
        let mut a = BTreeMap::new();
        a.insert(s, x.clone());
        self.eval(&a)
    }

    /// Composition `p(var := q)`.
    pub fn substitute(&self, var: Symbol, q: &MPoly) -> Result<MPoly> {
        if !self.ring.contains(&var) {
            return Err(Error::UnknownVariable(var));
        }
        let mut ring = self.ring.clone();
        ring.remove(&var);
        ring.extend(q.ring.iter().copied());
        let mut powers: Vec<MPoly> = alloc::vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(var);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut t = MPoly::zero();
            t.add_term(rest, c.clone());
            out = out + &t * &powers[e as usize];
        }
        out.ring.extend(ring);
        Ok(out)
    }

    /// Assigns a rational value to one variable.
    pub fn partial_eval(&self, var: Symbol, x: &Rational) -> Result<MPoly> {
        self.substitute(var, &MPoly::constant(x.clone()))
    }

    /// Right-limit at `var -> 0+`; for a polynomial this is the value at 0.
    pub fn limit_at_zero_plus(&self, var: Symbol) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(var) == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out.ring = self.ring.clone();
        out.ring.remove(&var);
        out
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: Symbol, k: u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(var);
            if e == k {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Dense univariate view. Fails when more than one variable occurs.
    pub fn to_univariate(&self) -> Result<(Option<Symbol>, UniPoly)> {
        let vars = self.variables();
        if vars.len() > 1 {
            let names: Vec<String> = vars.iter().map(Symbol::name).collect();
            return Err(Error::NotUnivariate(names.join(",")));
        }
        let var = vars.iter().next().copied();
        let deg = var.map_or(0, |s| self.degree_in(s)) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = var.map_or(0, |s| m.exponent(s)) as usize;
            coeffs[e] = c.clone();
        }
        Ok((var, UniPoly::new(coeffs)))
    }

    pub fn from_univariate(var: Symbol, p: &UniPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(var, e as u32), c.clone());
        }
        out.ring.insert(var);
        out
    }

    /// Canonical string, descending graded-lex, e.g. `-26*b^3+24*b^2`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

fn union(a: &BTreeSet<Symbol>, b: &BTreeSet<Symbol>) -> BTreeSet<Symbol> {
    a.union(b).copied().collect()
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.ring = union(&self.ring, &rhs.ring);
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out.ring = union(&self.ring, &rhs.ring);
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out.ring = union(&self.ring, &rhs.ring);
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl From<Rational> for MPoly {
    fn from(r: Rational) -> Self {
        MPoly::constant(r)
    }
}

impl From<Symbol> for MPoly {
    fn from(s: Symbol) -> Self {
        MPoly::var(s)
    }
}

// ---------------------------------------------------------------------------
// parsing

impl FromStr for MPoly {
    type Err = Error;

    /// Accepts the canonical form and general arithmetic over `+ - * / ^` and
    /// parentheses. Division is only allowed by nonzero constants.
    fn from_str(s: &str) -> Result<MPoly> {
        let mut p = Parser { src: s, pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.power()?;
                match d.as_constant() {
                    Some(r) if !r.is_zero() => acc = acc.scale(&r.recip()),
                    _ => return Err(Error::Parse { pos: at, msg: "division only by nonzero constants".to_string() }),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while matches!(self.peek(), Some(ch) if ch.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 =
                self.src[start..self.pos].parse().map_err(|_| self.err("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(ch) if ch.is_ascii_digit() || ch == '.') {
                    self.pos += 1;
                }
                let r = super::rational::parse_rational(&self.src[start..self.pos])
                    .ok_or_else(|| self.err("malformed number"))?;
                Ok(MPoly::constant(r))
            }
            Some(ch) if ch.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(ch) if ch.is_alphanumeric()) {
                    self.pos += self.peek().unwrap().len_utf8();
                }
                let name = &self.src[start..self.pos];
                let s = Symbol::parse(name)
                    .ok_or(Error::Parse { pos: start, msg: alloc::format!("unknown symbol `{name}`") })?;
                Ok(MPoly::var(s))
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}
