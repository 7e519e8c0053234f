use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{int, Linear, MPoly, Rational};

/// Intersection form on a Picard group with a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardLattice {
    labels: Vec<String>,
    gram: Vec<Vec<Rational>>,
    canonical: Vec<Rational>,
}

impl PicardLattice {
    /// Builds a lattice, checking that the Gram matrix is square, symmetric,
    /// nondegenerate and has exactly one positive eigenvalue.
    pub fn new(labels: Vec<String>, gram: Vec<Vec<Rational>>, canonical: Vec<Rational>) -> Result<Arc<Self>> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty basis".into()));
        }
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidLattice(alloc::format!("Gram matrix must be {n}x{n}")));
        }
        if canonical.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: canonical.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(alloc::format!(
                        "Gram matrix not symmetric at ({}, {})",
                        labels[i],
                        labels[j]
                    )));
                }
            }
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidLattice(alloc::format!("duplicate basis label {l}")));
            }
        }
        let (pos, neg, zero) = inertia(&gram);
        if zero > 0 {
            return Err(Error::InvalidLattice("degenerate intersection form".into()));
        }
        if pos != 1 {
            return Err(Error::InvalidLattice(alloc::format!("signature ({pos}, {neg}) is not hyperbolic")));
        }
        Ok(Arc::new(PicardLattice { labels, gram, canonical }))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn canonical_coefficients(&self) -> &[Rational] {
        &self.canonical
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc += x * &self.gram[i][j] * y;
                }
            }
        }
        acc
    }
}

// Counts of positive, negative and zero entries after congruence
// diagonalisation over the rationals.
#[allow(clippy::needless_range_loop)]
fn inertia(gram: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/column k += row/column j makes the pivot 2 a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

/// A divisor class with rational coefficients in a lattice basis.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    coeffs: Vec<Rational>,
    lattice: Arc<PicardLattice>,
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_lattice(&self.lattice, &other.lattice)
    }
}

impl Eq for DivisorClass {}

pub(crate) fn same_lattice(a: &Arc<PicardLattice>, b: &Arc<PicardLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DivisorClass {
    pub fn new(lattice: &Arc<PicardLattice>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: coeffs.len() });
        }
        Ok(DivisorClass { coeffs, lattice: lattice.clone() })
    }

    pub fn from_ints(lattice: &Arc<PicardLattice>, coeffs: &[i64]) -> Result<Self> {
        DivisorClass::new(lattice, coeffs.iter().map(|&k| int(k)).collect())
    }

    pub fn zero(lattice: &Arc<PicardLattice>) -> Self {
        DivisorClass { coeffs: alloc::vec![Rational::zero(); lattice.rank()], lattice: lattice.clone() }
    }

    /// The basis vector with the given index.
    pub fn basis(lattice: &Arc<PicardLattice>, i: usize) -> Self {
        let mut d = DivisorClass::zero(lattice);
        d.coeffs[i] = Rational::one();
        d
    }

    pub fn canonical(lattice: &Arc<PicardLattice>) -> Self {
        DivisorClass { coeffs: lattice.canonical.clone(), lattice: lattice.clone() }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn lattice(&self) -> &Arc<PicardLattice> {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check(&self, other: &DivisorClass) -> Result<()> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    pub fn dot(&self, other: &DivisorClass) -> Result<Rational> {
        self.check(other)?;
        Ok(self.lattice.pair(&self.coeffs, &other.coeffs))
    }

    pub fn square(&self) -> Rational {
        self.lattice.pair(&self.coeffs, &self.coeffs)
    }

    pub fn scale(&self, r: &Rational) -> DivisorClass {
        DivisorClass { coeffs: self.coeffs.iter().map(|c| c * r).collect(), lattice: self.lattice.clone() }
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &DivisorClass, f: impl Fn(&Rational, &Rational) -> Rational) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
            lattice: self.lattice.clone(),
        }
    }

    /// Re-expresses the coefficients in a lattice that extends this one by
    /// extra basis vectors appended at the end.
    pub(crate) fn extend_to(&self, lattice: &Arc<PicardLattice>) -> DivisorClass {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(lattice.rank(), Rational::zero());
        DivisorClass { coeffs, lattice: lattice.clone() }
    }

    /// Truncates to the first `parent.rank()` coordinates.
    pub(crate) fn restrict_to(&self, parent: &Arc<PicardLattice>) -> DivisorClass {
        DivisorClass { coeffs: self.coeffs[..parent.rank()].to_vec(), lattice: parent.clone() }
    }
}

/// Panicking operators for classes known to share a lattice.
impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.try_add(rhs).expect("classes on different lattices")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.try_sub(rhs).expect("classes on different lattices")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.lattice.labels(), self.coeffs.iter().map(|c| MPoly::constant(c.clone())))
    }
}

fn write_combination(
    f: &mut fmt::Formatter<'_>,
    labels: &[String],
    coeffs: impl Iterator<Item = MPoly>,
) -> fmt::Result {
    let mut first = true;
    for (label, c) in labels.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = match c.as_constant() {
            Some(r) if r.is_negative() => (true, MPoly::constant(-r)),
            Some(r) => (false, MPoly::constant(r)),
            None => (false, c),
        };
        if neg {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        match body.as_constant() {
            Some(r) if r.is_one() => write!(f, "{label}")?,
            Some(r) => write!(f, "{r}*{label}")?,
            None => write!(f, "({body})*{label}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A class `base + b * beta_coefficient`, linear in the cone angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaFunctionClass {
    pub base: DivisorClass,
    pub beta_coefficient: DivisorClass,
}

impl BetaFunctionClass {
    pub fn new(base: DivisorClass, beta_coefficient: DivisorClass) -> Result<Self> {
        base.check(&beta_coefficient)?;
        Ok(BetaFunctionClass { base, beta_coefficient })
    }

    pub fn constant(base: DivisorClass) -> Self {
        let z = DivisorClass::zero(base.lattice());
        BetaFunctionClass { base, beta_coefficient: z }
    }

    pub fn lattice(&self) -> &Arc<PicardLattice> {
        self.base.lattice()
    }

    pub fn at(&self, beta: &Rational) -> DivisorClass {
        &self.base + &self.beta_coefficient.scale(beta)
    }

    /// Intersection with a fixed class, as a line in beta.
    pub fn dot(&self, d: &DivisorClass) -> Result<Linear> {
        Ok(Linear::new(self.base.dot(d)?, self.beta_coefficient.dot(d)?))
    }

    pub fn to_poly_class(&self) -> PolyClass {
        PolyClass::from_class(&self.base).add(&PolyClass::from_class(&self.beta_coefficient).scale(&MPoly::beta()))
    }

    pub fn square(&self) -> MPoly {
        let p = self.to_poly_class();
        p.dot(&p)
    }

    pub fn sub(&self, other: &BetaFunctionClass) -> Result<BetaFunctionClass> {
        BetaFunctionClass::new(self.base.try_sub(&other.base)?, self.beta_coefficient.try_sub(&other.beta_coefficient)?)
    }
}

impl fmt::Display for BetaFunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly_class())
    }
}

/// A class whose coefficients are polynomials in the pipeline parameters.
#[derive(Clone, Debug)]
pub struct PolyClass {
    coeffs: Vec<MPoly>,
    lattice: Arc<PicardLattice>,
}

impl PartialEq for PolyClass {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_lattice(&self.lattice, &other.lattice)
    }
}

impl Eq for PolyClass {}

impl PolyClass {
    pub fn new(lattice: &Arc<PicardLattice>, coeffs: Vec<MPoly>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: coeffs.len() });
        }
        Ok(PolyClass { coeffs, lattice: lattice.clone() })
    }

    pub fn from_class(d: &DivisorClass) -> Self {
        PolyClass { coeffs: d.coeffs.iter().map(|c| MPoly::constant(c.clone())).collect(), lattice: d.lattice.clone() }
    }

    pub fn coefficients(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn lattice(&self) -> &Arc<PicardLattice> {
        &self.lattice
    }

    pub fn dot(&self, other: &PolyClass) -> MPoly {
        assert!(same_lattice(&self.lattice, &other.lattice), "classes on different lattices");
        let mut acc = MPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let g = &self.lattice.gram[i][j];
                if !b.is_zero() && !g.is_zero() {
                    acc = acc + (a * b).scale(g);
                }
            }
        }
        acc
    }

    pub fn dot_class(&self, d: &DivisorClass) -> MPoly {
        self.dot(&PolyClass::from_class(d))
    }

    pub fn add(&self, other: &PolyClass) -> PolyClass {
        assert!(same_lattice(&self.lattice, &other.lattice), "classes on different lattices");
        PolyClass {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            lattice: self.lattice.clone(),
        }
    }

    pub fn sub(&self, other: &PolyClass) -> PolyClass {
        self.add(&other.scale(&MPoly::int(-1)))
    }

    pub fn scale(&self, p: &MPoly) -> PolyClass {
        PolyClass { coeffs: self.coeffs.iter().map(|c| c * p).collect(), lattice: self.lattice.clone() }
    }
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.lattice.labels(), self.coeffs.iter().cloned())
    }
}
