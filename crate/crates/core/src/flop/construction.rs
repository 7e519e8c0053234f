use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::triple::{flop_triple_product, FlopTriple};
use crate::dnc::{
    one_minus_beta, slope_futaki, CWindow, DNCConfig, FutakiPoly, FutakiSource, ThreefoldClass, ThreefoldCurve,
};
use crate::error::{Error, Result};
use crate::exactmath::{int, sign_on_interval, Linear, MPoly, PiecewiseLinear, Rational, SignOnInterval};
use crate::surface::{
    pseff_threshold_certificate, seshadri, BetaFunctionClass, BlowupPoint, BlowupRecord, PseffCertificate,
};

/// The points `O_i` whose exceptional curves are flopped, the twists `delta_i`
/// of the polarization and the pairings of the boundary transform with the
/// flopping curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopSpec {
    pub deltas: Vec<MPoly>,
    pub incidence: Vec<BlowupPoint>,
    pub d_prime_dot_ci: Vec<Rational>,
    /// `d_prime_dot_ci` was supplied by the caller rather than derived.
    pub overridden: bool,
}

impl FlopSpec {
    /// No flopping curves; the flop invariant is then the slope invariant.
    pub fn empty() -> Self {
        FlopSpec { deltas: Vec::new(), incidence: Vec::new(), d_prime_dot_ci: Vec::new(), overridden: false }
    }

    pub fn r(&self) -> usize {
        self.incidence.len()
    }

    /// Reads the points from the blow-up record of the configuration's pair.
    /// Each `delta_i` is `L'.E_i`, and `D'.C_i` is the degree of the boundary
    /// transform on the curve: `C'.E_i`, minus `Z'.E_i` when `Z = C`.
    pub fn derive(config: &DNCConfig) -> Result<Self> {
        let rec = record(config)?;
        let mut deltas = Vec::new();
        let mut d = Vec::new();
        for e in &rec.exceptional {
            deltas.push(config.polarization.dot(e)?.to_mpoly());
            let mut v = config.pair.boundary().dot(e)?;
            if config.z_is_boundary {
                v -= config.z.dot(e)?;
            }
            d.push(v);
        }
        let mut incidence = rec.points.clone();
        if config.z_is_boundary {
            for p in &mut incidence {
                p.on_z = p.on_boundary;
            }
        }
        let spec = FlopSpec { deltas, incidence, d_prime_dot_ci: d, overridden: false };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_deltas(mut self, deltas: Vec<MPoly>) -> Result<Self> {
        if deltas.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), found: deltas.len() });
        }
        self.deltas = deltas;
        Ok(self)
    }

    pub fn with_d_prime(mut self, values: Vec<Rational>) -> Result<Self> {
        if values.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), found: values.len() });
        }
        self.d_prime_dot_ci = values;
        self.overridden = true;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.r();
        for len in [self.deltas.len(), self.d_prime_dot_ci.len()] {
            if len != r {
                return Err(Error::DimensionMismatch { expected: r, found: len });
            }
        }
        for (i, p) in self.incidence.iter().enumerate() {
            p.validate(i)?;
        }
        for (i, v) in self.d_prime_dot_ci.iter().enumerate() {
            if !v.is_integer() || v < &Rational::zero() {
                return Err(Error::InvalidConfig(format!("D'.C_{} = {v} must be a nonnegative integer", i + 1)));
            }
        }
        Ok(())
    }
}

fn record(config: &DNCConfig) -> Result<&BlowupRecord> {
    config.pair.blowup_record().ok_or_else(|| {
        Error::InvalidConfig("the flop construction needs a blown-up pair with a recorded parent".into())
    })
}

/// Degrees of the polarization, the boundary transform and the log relative
/// canonical class on one flopping curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePairing {
    pub polarization: MPoly,
    pub boundary: MPoly,
    /// `K_X'.C_i`; zero for a curve with normal bundle `O(-1) + O(-1)`.
    pub canonical: MPoly,
}

/// The flopping curve over `O_i`: the proper transform of `E_i x {0}`.
fn flop_curve(config: &DNCConfig, e: &crate::surface::DivisorClass) -> Result<ThreefoldCurve> {
    Ok(ThreefoldCurve::central(e.clone(), config.z.dot(e)?))
}

pub fn flop_curve_pairings(config: &DNCConfig, spec: &FlopSpec) -> Result<Vec<CurvePairing>> {
    spec.validate()?;
    if spec.r() == 0 {
        return Ok(Vec::new());
    }
    let rec = record(config)?;
    if rec.exceptional.len() != spec.r() {
        return Err(Error::DimensionMismatch { expected: rec.exceptional.len(), found: spec.r() });
    }
    let lc = config.test_polarization(&config.polarization);
    let k = ThreefoldClass::pull_class(&config.pair.canonical()).add(&ThreefoldClass::exceptional(&config.z));
    let mut out = Vec::new();
    for (i, (p, e)) in spec.incidence.iter().zip(&rec.exceptional).enumerate() {
        if !p.on_z {
            return Err(Error::PointNotOnZ(i));
        }
        if config.z.dot(e)? != Rational::one() {
            return Err(Error::InvalidConfig(format!("Z' meets E_{} with multiplicity other than one", i + 1)));
        }
        let g = flop_curve(config, e)?;
        let polarization = lc.dot_curve(&g);
        let expected = &spec.deltas[i] - &MPoly::c();
        if polarization != expected {
            return Err(Error::InvalidConfig(format!(
                "delta_{} = {} does not match L'.E_{} in the polarization",
                i + 1,
                spec.deltas[i],
                i + 1
            )));
        }
        let canonical = k.dot_curve(&g);
        if !canonical.is_zero() {
            return Err(Error::InvalidConfig(format!("K.C_{} = {canonical}, the curve is not a simple flop", i + 1)));
        }
        out.push(CurvePairing { polarization, boundary: MPoly::constant(spec.d_prime_dot_ci[i].clone()), canonical });
    }
    Ok(out)
}

/// Invariant after flopping: the slope invariant of `config` minus
/// `2 sum (L'.C_i)^3 + 3(1-b) sum (L'.C_i)^2 (D'.C_i)`.
pub fn flop_futaki(config: &DNCConfig, spec: &FlopSpec) -> Result<FutakiPoly> {
    let pairings = flop_curve_pairings(config, spec)?;
    let mut f = slope_futaki(config)?;
    let omb = one_minus_beta();
    for p in &pairings {
        let l2 = p.polarization.pow(2);
        f.value = f.value - (&l2 * &p.polarization).scale(&int(2)) - (&(&l2 * &p.boundary) * &omb).scale(&int(3));
    }
    Ok(f)
}

/// The same invariant, with every triple product in
/// `2 L^3 + 3 (K - p^*K + (1-b) D).L^2` corrected through [`flop_triple_product`].
pub fn flop_futaki_engine(config: &DNCConfig, spec: &FlopSpec) -> Result<FutakiPoly> {
    let pairings = flop_curve_pairings(config, spec)?;
    let eng = config.engine();
    let lc = config.test_polarization(&config.polarization);
    let krel = config.log_relative_canonical();
    let omb = one_minus_beta();
    let mut cube = FlopTriple::new(eng.cube(&lc));
    let mut mixed = FlopTriple::new(eng.dot_square(&krel, &lc));
    for p in &pairings {
        let l = p.polarization.clone();
        let k = &p.canonical + &(&omb * &p.boundary);
        cube = cube.with_curve([l.clone(), l.clone(), l.clone()]);
        mixed = mixed.with_curve([k, l.clone(), l]);
    }
    let value = flop_triple_product(&cube).scale(&int(2)) + flop_triple_product(&mixed).scale(&int(3));
    Ok(FutakiPoly { value, branch: config.branch(), provenance: FutakiSource::SymbolicEngine })
}

/// Admissible `c` for the flopped configuration together with the data it is
/// built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopWindow {
    pub window: CWindow,
    /// Seshadri constant of `L'` along `Z'` on the blow-up.
    pub epsilon_prime: Option<PiecewiseLinear>,
    /// Seshadri constant of `L` along `Z` on the parent.
    pub epsilon: Option<PiecewiseLinear>,
    pub deltas: Vec<Linear>,
    pub certificate: PseffCertificate,
}

/// `(max(eps(S', Z', L'), delta_i), eps(S, Z, L))` over the configured cone
/// angles, where the parent data are pushed forward from the blow-up.
pub fn flop_window(config: &DNCConfig, spec: &FlopSpec) -> Result<FlopWindow> {
    spec.validate()?;
    let rec = record(config)?;
    let dom = &config.beta_range;
    let deltas = spec
        .deltas
        .iter()
        .map(|d| Linear::from_mpoly(d).ok_or_else(|| Error::NotBetaLinear(format!("{d}"))))
        .collect::<Result<Vec<_>>>()?;
    for d in &spec.deltas {
        if sign_on_interval(d, dom)? != SignOnInterval::Positive {
            return Err(Error::InvalidConfig(format!("delta = {d} is not positive on {dom}")));
        }
    }
    let parent_z = rec.pushforward(&config.z)?;
    let l = &config.polarization;
    let parent_l = BetaFunctionClass::new(rec.pushforward(&l.base)?, rec.pushforward(&l.beta_coefficient)?)?;
    let eps_prime = seshadri(&config.pair, &config.z, l, dom)?;
    let eps = seshadri(&rec.parent, &parent_z, &parent_l, dom)?;

    let zero = Linear::constant(int(0));
    let lower = match &eps_prime.epsilon {
        Some(e) => e.max_with(&deltas),
        None if deltas.is_empty() => PiecewiseLinear::max_of(&[zero], dom),
        None => PiecewiseLinear::max_of(&deltas, dom),
    };
    let mut window = CWindow::new(dom.clone(), lower, eps.epsilon.clone());
    window.quadratic_binds = !eps.quadratic_binds.is_empty();
    let certificate = pseff_threshold_certificate(&config.pair, &config.z, l, &spec.deltas, dom)?;
    Ok(FlopWindow { window, epsilon_prime: eps_prime.epsilon, epsilon: eps.epsilon, deltas, certificate })
}
