use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::lattice::{BetaFunctionClass, DivisorClass, PolyClass};
use super::pair::SurfacePair;
use crate::error::{Error, Result};
use crate::exactmath::{
    negative_ranges, sign_on_interval, Endpoint, Interval, Linear, MPoly, PiecewiseLinear, Rational, SignOnInterval,
    Symbol,
};

/// Outcome of a Nakai–Moishezon test over the supplied generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleCertificate {
    pub ample: bool,
    pub square: Rational,
    /// `D.G` for every generator, in generator order.
    pub pairings: Vec<Rational>,
    /// First generator with `D.G <= 0`, if any.
    pub failing_generator: Option<usize>,
}

pub fn is_ample(pair: &SurfacePair, d: &DivisorClass) -> Result<AmpleCertificate> {
    if pair.mori_generators().is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let square = d.square();
    let mut pairings = Vec::with_capacity(pair.mori_generators().len());
    for g in pair.mori_generators() {
        pairings.push(d.dot(g)?);
    }
    let failing_generator = pairings.iter().position(|x| !x.is_positive());
    Ok(AmpleCertificate {
        ample: square.is_positive() && failing_generator.is_none(),
        square,
        pairings,
        failing_generator,
    })
}

/// Range of cone angles in `(0, 1]` where `L_b = -K - (1-b) C` is ample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpRegion {
    pub interval: Option<Interval>,
    /// Asymptotically log Fano: nonempty with 0 in the closure.
    pub alf: bool,
    /// Set when `L_b^2 > 0` cut the range further than the linear inequalities.
    pub square_binds: bool,
}

impl AmpRegion {
    pub fn contains(&self, beta: &Rational) -> bool {
        self.interval.as_ref().is_some_and(|i| i.contains(beta))
    }
}

pub fn amp_region(pair: &SurfacePair) -> Result<AmpRegion> {
    let lb = pair.log_anticanonical();
    let mut region = Some(Interval::unit_beta());
    for g in pair.mori_generators() {
        let line = lb.dot(g)?;
        region = region.and_then(|r| r.intersect(&positive_set(&line, &r)?));
    }
    let mut square_binds = false;
    if let Some(r) = region.clone() {
        let sq = lb.square();
        match sign_on_interval(&sq, &r)? {
            SignOnInterval::Positive => {}
            _ => {
                square_binds = true;
                // keep the component of {L^2 > 0} reaching the right end
                let (neg, _) = negative_ranges(&-sq, &r)?;
                let right = neg.into_iter().last().filter(|p| p.hi == Endpoint::Exact(r.hi.clone()));
                region = right.map(|p| {
                    // rational inner approximation of an algebraic left end
                    let (lo, lo_open) = match &p.lo {
                        Endpoint::Exact(x) => (x.clone(), p.lo_open),
                        Endpoint::Root(root) => (root.isolating_interval.hi.clone(), false),
                    };
                    Interval { lo, hi: r.hi.clone(), lo_open, hi_open: r.hi_open }
                });
            }
        }
    }
    let alf = region.as_ref().is_some_and(|r| r.lo.is_zero());
    Ok(AmpRegion { interval: region, alf, square_binds })
}

// {b in window : line(b) > 0} as an interval.
fn positive_set(line: &Linear, window: &Interval) -> Option<Interval> {
    let Linear { constant: a, slope: s } = line;
    if s.is_zero() {
        return a.is_positive().then(|| window.clone());
    }
    let root = -a / s;
    let half = if s.is_positive() {
        if root >= window.hi {
            return None;
        }
        Interval { lo: root, hi: window.hi.clone(), lo_open: true, hi_open: window.hi_open }
    } else {
        if root <= window.lo {
            return None;
        }
        Interval { lo: window.lo.clone(), hi: root, lo_open: window.lo_open, hi_open: true }
    };
    window.intersect(&half)
}

/// Piecewise description of the Seshadri constant of `L` along a divisor `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seshadri {
    /// `min { L.G / Z.G : Z.G > 0 }`, or `None` when unbounded.
    pub epsilon: Option<PiecewiseLinear>,
    pub unbounded: bool,
    /// `(L - cZ)^2` as a polynomial in `b` and `c`.
    pub square: MPoly,
    /// Pieces (by index) on which the quadratic constraint binds before the
    /// linear ones.
    pub quadratic_binds: Vec<usize>,
}

impl Seshadri {
    pub fn value_at(&self, beta: &Rational) -> Option<Rational> {
        self.epsilon.as_ref().and_then(|e| e.eval(beta))
    }

    /// The single linear piece, when there is exactly one.
    pub fn as_linear(&self) -> Option<&Linear> {
        match &self.epsilon {
            Some(e) if e.pieces.len() == 1 => Some(&e.pieces[0].value),
            _ => None,
        }
    }
}

pub fn seshadri(pair: &SurfacePair, z: &DivisorClass, l: &BetaFunctionClass, window: &Interval) -> Result<Seshadri> {
    if z.is_zero() {
        return Err(Error::InvalidConfig("Seshadri constant along the zero class".into()));
    }
    let lines: Vec<Linear> = pair
        .mori_generators()
        .iter()
        .filter_map(|g| {
            let zg = z.dot(g).ok()?;
            zg.is_positive().then(|| l.dot(g).map(|lg| lg.scale(&zg.recip())))
        })
        .collect::<Result<_>>()?;

    let lc = l.to_poly_class();
    let zc = PolyClass::from_class(z);
    let shifted = lc.sub(&zc.scale(&MPoly::c()));
    let square = shifted.dot(&shifted);

    if lines.is_empty() {
        return Ok(Seshadri { epsilon: None, unbounded: true, square, quadratic_binds: Vec::new() });
    }
    let eps = PiecewiseLinear::min_of(&lines, window);
    let z2 = z.square();
    let lz = lc.dot_class(z);
    let mut quadratic_binds = Vec::new();
    for (k, piece) in eps.pieces.iter().enumerate() {
        let e = piece.value.to_mpoly();
        let at_eps = square.substitute(Symbol::C, &e)?;
        let mut binds = has_negative(&at_eps, &piece.domain)?;
        if !binds && z2.is_positive() {
            // convex in c: also need the vertex to lie beyond epsilon
            let slope = &lz - &e.scale(&z2);
            binds = has_negative(&slope, &piece.domain)?;
        }
        if binds {
            quadratic_binds.push(k);
        }
    }
    Ok(Seshadri { epsilon: Some(eps), unbounded: false, square, quadratic_binds })
}

fn has_negative(p: &MPoly, window: &Interval) -> Result<bool> {
    if p.is_zero() {
        return Ok(false);
    }
    Ok(match sign_on_interval(p, window)? {
        SignOnInterval::Negative => true,
        SignOnInterval::Mixed { negative, .. } => negative.is_some(),
        _ => false,
    })
}

/// Bigness certificate for `L' - cZ'` on a blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseffCertificate {
    /// `L' - cZ' = pi^*(L - cZ) + sum (c m_i - delta_i) E_i` holds identically,
    /// so the class is big for `max delta_i <= c < tau`, where `tau` is the
    /// parent Seshadri constant.
    Certified {
        tau: PiecewiseLinear,
        parent_z: DivisorClass,
        parent_l: BetaFunctionClass,
        decomposition: String,
    },
    Unknown(String),
}

impl PseffCertificate {
    pub fn tau(&self) -> Option<&PiecewiseLinear> {
        match self {
            PseffCertificate::Certified { tau, .. } => Some(tau),
            PseffCertificate::Unknown(_) => None,
        }
    }
}

pub fn pseff_threshold_certificate(
    pair: &SurfacePair,
    z: &DivisorClass,
    l: &BetaFunctionClass,
    deltas: &[MPoly],
    window: &Interval,
) -> Result<PseffCertificate> {
    let Some(rec) = pair.blowup_record() else {
        return Ok(PseffCertificate::Unknown("no recorded parent surface".into()));
    };
    if deltas.len() != rec.exceptional.len() {
        return Err(Error::DimensionMismatch { expected: rec.exceptional.len(), found: deltas.len() });
    }
    let parent_z = rec.pushforward(z)?;
    let parent_l = BetaFunctionClass::new(rec.pushforward(&l.base)?, rec.pushforward(&l.beta_coefficient)?)?;

    // multiplicities of Z' at the points
    let mut mult = Vec::new();
    for e in &rec.exceptional {
        let m = z.dot(e)?;
        if !m.is_positive() || !m.is_integer() {
            return Ok(PseffCertificate::Unknown(alloc::format!(
                "Z' meets an exceptional curve with multiplicity {m}"
            )));
        }
        mult.push(m);
    }

    // verify the decomposition coefficientwise in (b, c)
    let c = MPoly::c();
    let lhs = l.to_poly_class().sub(&PolyClass::from_class(z).scale(&c));
    let pull = |d: &DivisorClass| rec.pullback(d).map(|x| PolyClass::from_class(&x));
    let mut rhs = pull(&parent_l.base)?
        .add(&pull(&parent_l.beta_coefficient)?.scale(&MPoly::beta()))
        .sub(&pull(&parent_z)?.scale(&c));
    let mut terms = Vec::new();
    for ((e, m), d) in rec.exceptional.iter().zip(&mult).zip(deltas) {
        let coeff = &c.scale(m) - d;
        terms.push(alloc::format!("({coeff})*{}", label_of(e)));
        rhs = rhs.add(&PolyClass::from_class(e).scale(&coeff));
    }
    if lhs != rhs {
        return Ok(PseffCertificate::Unknown(
            "L' is not the pullback of a parent class minus exceptional multiples".into(),
        ));
    }
    let parent = &*rec.parent;
    let ses = seshadri(parent, &parent_z, &parent_l, window)?;
    let Some(tau) = ses.epsilon else {
        return Ok(PseffCertificate::Unknown("parent Seshadri constant is unbounded".into()));
    };
    let decomposition = alloc::format!("L'-c*Z' = pi^*(({parent_l})-c*({parent_z})) + {}", terms.join(" + "));
    Ok(PseffCertificate::Certified { tau, parent_z, parent_l, decomposition })
}

fn label_of(e: &DivisorClass) -> String {
    alloc::format!("{e}")
}
