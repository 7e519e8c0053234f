use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::lattice::{same_lattice, DivisorClass, PicardLattice};
use crate::error::{Error, Result};
use crate::exactmath::{int, Rational};

/// Incidence data of a point to be blown up.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BlowupPoint {
    pub on_boundary: bool,
    pub on_z: bool,
    /// The boundary and `Z` share their tangent direction at the point.
    pub tangent_dir_equals_z: bool,
    /// Index of an earlier point this one is infinitely near to. Always
    /// rejected by [`blow_up`].
    pub infinitely_near_to: Option<usize>,
}

impl BlowupPoint {
    pub fn new(on_boundary: bool, on_z: bool) -> Self {
        BlowupPoint { on_boundary, on_z, ..Default::default() }
    }

    pub fn validate(&self, index: usize) -> Result<()> {
        if self.infinitely_near_to.is_some() {
            return Err(Error::InfinitelyNear);
        }
        if self.tangent_dir_equals_z && !(self.on_boundary && self.on_z) {
            return Err(Error::InvalidConfig(alloc::format!(
                "point {} has a tangency flag but does not lie on both the boundary and Z",
                index + 1
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Tag of the minimal model, e.g. `P2` or `F1`.
    pub model: String,
    pub blowup: Option<BlowupRecord>,
}

/// Link from a blown-up pair back to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRecord {
    pub parent: Arc<SurfacePair>,
    pub points: Vec<BlowupPoint>,
    /// Exceptional curves, in the order of `points`.
    pub exceptional: Vec<DivisorClass>,
}

impl BlowupRecord {
    pub fn parent_lattice(&self) -> &Arc<PicardLattice> {
        self.parent.lattice()
    }

    pub fn child_lattice(&self) -> &Arc<PicardLattice> {
        self.exceptional[0].lattice()
    }

    pub fn pullback(&self, d: &DivisorClass) -> Result<DivisorClass> {
        if !same_lattice(d.lattice(), self.parent_lattice()) {
            return Err(Error::LatticeMismatch);
        }
        Ok(d.extend_to(self.child_lattice()))
    }

    /// Push-forward to the parent: forgets the exceptional coordinates.
    pub fn pushforward(&self, d: &DivisorClass) -> Result<DivisorClass> {
        if !same_lattice(d.lattice(), self.child_lattice()) {
            return Err(Error::LatticeMismatch);
        }
        Ok(d.restrict_to(self.parent_lattice()))
    }

    /// `pi^* d - sum m_i E_i`.
    pub fn proper_transform(&self, d: &DivisorClass, multiplicities: &[u32]) -> Result<DivisorClass> {
        if multiplicities.len() != self.exceptional.len() {
            return Err(Error::DimensionMismatch { expected: self.exceptional.len(), found: multiplicities.len() });
        }
        let mut out = self.pullback(d)?;
        for (e, &m) in self.exceptional.iter().zip(multiplicities) {
            if m > 0 {
                out = &out - &e.scale(&int(m.into()));
            }
        }
        Ok(out)
    }

    /// Proper transform of a curve passing simply through the points where
    /// `through` holds.
    pub fn proper_transform_by(
        &self,
        d: &DivisorClass,
        through: impl Fn(&BlowupPoint) -> bool,
    ) -> Result<DivisorClass> {
        let m: Vec<u32> = self.points.iter().map(|p| u32::from(through(p))).collect();
        self.proper_transform(d, &m)
    }
}

/// A smooth rational surface with a single boundary curve class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePair {
    lattice: Arc<PicardLattice>,
    boundary: DivisorClass,
    mori_generators: Vec<DivisorClass>,
    provenance: Provenance,
}

impl SurfacePair {
    pub fn new(boundary: DivisorClass, mori_generators: Vec<DivisorClass>, provenance: Provenance) -> Result<Self> {
        let lattice = boundary.lattice().clone();
        if boundary.is_zero() {
            return Err(Error::InvalidPair("boundary class is zero".into()));
        }
        if mori_generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &mori_generators {
            if !same_lattice(g.lattice(), &lattice) {
                return Err(Error::LatticeMismatch);
            }
            if g.is_zero() {
                return Err(Error::InvalidPair("zero Mori generator".into()));
            }
        }
        let pair = SurfacePair { lattice, boundary, mori_generators, provenance };
        for g in &pair.mori_generators {
            let genus = pair.adjunction_genus(g)?;
            if genus < 0 {
                return Err(Error::InvalidPair(alloc::format!("generator {g} has negative genus")));
            }
        }
        Ok(pair)
    }

    pub fn lattice(&self) -> &Arc<PicardLattice> {
        &self.lattice
    }

    pub fn boundary(&self) -> &DivisorClass {
        &self.boundary
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::canonical(&self.lattice)
    }

    pub fn mori_generators(&self) -> &[DivisorClass] {
        &self.mori_generators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn blowup_record(&self) -> Option<&BlowupRecord> {
        self.provenance.blowup.as_ref()
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<DivisorClass> {
        DivisorClass::from_ints(&self.lattice, coeffs)
    }

    /// Arithmetic genus `1 + (K.C + C^2)/2`.
    pub fn adjunction_genus(&self, c: &DivisorClass) -> Result<i64> {
        let twice = self.canonical().dot(c)? + c.square();
        if !twice.is_integer() || !(twice.to_integer() % 2u8).is_zero() {
            return Err(Error::GenusParity(alloc::format!("K.C + C^2 = {twice} for C = {c}")));
        }
        let g = Rational::one() + twice / int(2);
        i64::try_from(g.to_integer()).map_err(|_| Error::GenusParity(alloc::format!("genus of {c} out of range")))
    }

    /// `(K + C)^2`.
    pub fn k_plus_c_squared(&self) -> Rational {
        (&self.canonical() + &self.boundary).square()
    }

    /// `L_b = -K - (1-b) C`.
    pub fn log_anticanonical(&self) -> super::BetaFunctionClass {
        let minus_k = -&self.canonical();
        super::BetaFunctionClass { base: &minus_k - &self.boundary, beta_coefficient: self.boundary.clone() }
    }

    /// Same surface with a different boundary class.
    pub fn with_boundary(&self, boundary: DivisorClass) -> Result<SurfacePair> {
        if !same_lattice(boundary.lattice(), &self.lattice) {
            return Err(Error::LatticeMismatch);
        }
        SurfacePair::new(boundary, self.mori_generators.clone(), self.provenance.clone())
    }

    /// Adds effective curve classes to the generator list.
    pub fn with_extra_generators(&self, extra: &[DivisorClass]) -> Result<SurfacePair> {
        let mut gens = self.mori_generators.clone();
        for g in extra {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        SurfacePair::new(self.boundary.clone(), gens, self.provenance.clone())
    }
}

/// Options controlling how Mori generators transform under [`blow_up`].
#[derive(Clone, Debug, Default)]
pub struct BlowupOptions {
    /// Multiplicity of each old generator at each point (`[generator][point]`);
    /// missing entries default to zero.
    pub generator_multiplicities: Vec<Vec<u32>>,
    /// Additional effective classes on the blown-up surface.
    pub extra_generators: Vec<DivisorClass>,
}

/// Result of blowing up distinct points.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub pair: SurfacePair,
    pub exceptional: Vec<DivisorClass>,
}

impl Blowup {
    pub fn record(&self) -> Option<&BlowupRecord> {
        self.pair.blowup_record()
    }
}

/// Blows up distinct points of a pair.
///
/// The lattice gains one orthogonal (-1)-class per point, the canonical class
/// becomes `pi^*K + sum E_i`, and the boundary is replaced by its proper
/// transform through the points flagged `on_boundary`. Blowing up no points
/// returns the pair unchanged.
pub fn blow_up(pair: &SurfacePair, points: &[BlowupPoint], opts: &BlowupOptions) -> Result<Blowup> {
    for (i, p) in points.iter().enumerate() {
        p.validate(i)?;
    }
    if points.is_empty() {
        return Ok(Blowup { pair: pair.clone(), exceptional: Vec::new() });
    }
    let old = pair.lattice();
    let n = old.rank();
    let r = points.len();
    let mut labels: Vec<String> = old.labels().to_vec();
    let mut next = 1usize;
    for _ in 0..r {
        while labels.iter().any(|l| *l == alloc::format!("E{next}")) {
            next += 1;
        }
        labels.push(alloc::format!("E{next}"));
        next += 1;
    }
    let mut gram: Vec<Vec<Rational>> = Vec::with_capacity(n + r);
    for row in old.gram() {
        let mut row = row.clone();
        row.resize(n + r, Rational::zero());
        gram.push(row);
    }
    for i in 0..r {
        let mut row = alloc::vec![Rational::zero(); n + r];
        row[n + i] = int(-1);
        gram.push(row);
    }
    let mut canonical = old.canonical_coefficients().to_vec();
    canonical.resize(n + r, Rational::one());
    let lattice = PicardLattice::new(labels, gram, canonical)?;

    let exceptional: Vec<DivisorClass> = (0..r).map(|i| DivisorClass::basis(&lattice, n + i)).collect();
    let record =
        BlowupRecord { parent: Arc::new(pair.clone()), points: points.to_vec(), exceptional: exceptional.clone() };

    let boundary = record.proper_transform_by(pair.boundary(), |p| p.on_boundary)?;
    let mut gens: Vec<DivisorClass> = Vec::new();
    for (gi, g) in pair.mori_generators().iter().enumerate() {
        let mut m = opts.generator_multiplicities.get(gi).cloned().unwrap_or_default();
        m.resize(r, 0);
        push_unique(&mut gens, record.proper_transform(g, &m)?);
    }
    for e in &exceptional {
        push_unique(&mut gens, e.clone());
    }
    if pair.provenance().model == "P2" && pair.blowup_record().is_none() {
        for g in general_position_curves(&lattice, r) {
            push_unique(&mut gens, g);
        }
    }
    for g in &opts.extra_generators {
        if !same_lattice(g.lattice(), &lattice) {
            return Err(Error::LatticeMismatch);
        }
        push_unique(&mut gens, g.clone());
    }
    let provenance = Provenance { model: pair.provenance().model.clone(), blowup: Some(record) };
    let pair = SurfacePair::new(boundary, gens, provenance)?;
    Ok(Blowup { pair, exceptional })
}

fn push_unique(v: &mut Vec<DivisorClass>, d: DivisorClass) {
    if !v.contains(&d) {
        v.push(d);
    }
}

// Negative curves on the blow-up of the plane at r <= 5 points in general
// position besides the exceptional ones: lines through two points, the
// conic through five, and the pencil of lines through a single point.
fn general_position_curves(lattice: &Arc<PicardLattice>, r: usize) -> Vec<DivisorClass> {
    let h = DivisorClass::basis(lattice, 0);
    let e = |i: usize| DivisorClass::basis(lattice, 1 + i);
    let mut out = Vec::new();
    if r > 5 {
        return out;
    }
    if r == 1 {
        out.push(&h - &e(0));
    }
    for i in 0..r {
        for j in i + 1..r {
            out.push(&(&h - &e(i)) - &e(j));
        }
    }
    if r == 5 {
        let mut conic = h.scale(&int(2));
        for i in 0..5 {
            conic = &conic - &e(i);
        }
        out.push(conic);
    }
    out
}
