use alloc::format;
use alloc::string::String;

use num_traits::{Signed, Zero};

use super::assess::assess;
use super::report::{CRule, StabilityReport, Verdict};
use crate::dnc::{beta_domain, slope_futaki, BetaSpec, DNCConfig};
use crate::error::{Error, Result};
use crate::exactmath::{int, Interval, MPoly, Rational, Symbol};
use crate::flop::{flop_futaki, flop_window, FlopSpec};
use crate::surface::{amp_region, is_ample, seshadri, BetaFunctionClass, DivisorClass, SurfacePair};

/// Flop-slope test for a configuration on a blown-up pair, with the flopping
/// data in `spec` and `c` tied to the cone angle by `rule`.
pub fn flop_verdict(config: &DNCConfig, spec: &FlopSpec, rule: CRule, beta: &BetaSpec) -> Result<StabilityReport> {
    let domain = beta_domain(&config.pair, beta)?;
    let cfg = config.clone().with_beta_range(domain);
    let fw = flop_window(&cfg, spec)?;
    let futaki = flop_futaki(&cfg, spec)?;
    let mut report = assess("flop", futaki, rule, fw.window)?;
    report.note("z", &config.z);
    report.note("boundary", config.pair.boundary());
    report.note("branch", config.branch());
    report.note("r", spec.r());
    if let Some(e) = &fw.epsilon_prime {
        report.note("epsilon_blowup", e);
    }
    if let Some(e) = &fw.epsilon {
        report.note("epsilon_parent", e);
    }
    if let Some(tau) = fw.certificate.tau() {
        report.certify(format!("L' - cZ' is big for max(delta_i) <= c < {tau}"));
    }
    if spec.overridden {
        report.certify("D'.C_i supplied by the caller");
    }
    Ok(report)
}

/// `-K - C` as a class.
fn anti_log_canonical(pair: &SurfacePair) -> Result<DivisorClass> {
    pair.canonical().try_add(pair.boundary()).map(|d| -&d)
}

/// `eps(S, C, -K - C)` for a pair with `-K - C` ample.
pub fn maeda_epsilon(pair: &SurfacePair) -> Result<Rational> {
    let anti = anti_log_canonical(pair)?;
    if !is_ample(pair, &anti)?.ample {
        return Err(Error::InvalidConfig(format!("-K-C = {anti} is not ample")));
    }
    let s = seshadri(pair, pair.boundary(), &BetaFunctionClass::constant(anti), &Interval::unit_beta())?;
    s.value_at(&int(1))
        .ok_or_else(|| Error::InvalidConfig("no generator bounds the Seshadri constant of -K-C along C".into()))
}

fn check_gamma(gamma: &Rational, eps: &Rational) -> Result<()> {
    if !gamma.is_positive() || gamma >= eps {
        return Err(Error::GammaOutOfRange(format!("{gamma}"), format!("(0, {eps})")));
    }
    Ok(())
}

fn rational_boundary(pair: &SurfacePair) -> Result<()> {
    match pair.adjunction_genus(pair.boundary())? {
        0 => Ok(()),
        g => Err(Error::NonRationalBoundary(g)),
    }
}

fn at_gamma(p: &MPoly, gamma: &Rational) -> Result<MPoly> {
    p.clone().with_ring([Symbol::Gamma]).partial_eval(Symbol::Gamma, gamma).map(|q| q.trimmed())
}

/// `-g^2 (2 + b C^2) - 2g^2 (L_b - gC).C + b (6g L_b.C - 3g^2 C^2)`: the slope
/// invariant along a rational boundary at `c = g`.
pub fn maeda_closed_form(pair: &SurfacePair) -> Result<MPoly> {
    let (b, g) = (MPoly::beta(), MPoly::var(Symbol::Gamma));
    let c2 = MPoly::constant(pair.boundary().square());
    let lc = pair.log_anticanonical().dot(pair.boundary())?.to_mpoly();
    let g2 = g.pow(2);
    let shifted = &lc - &(&g * &c2);
    let first = -(&g2 * &(MPoly::int(2) + &b * &c2));
    let second = (&g2 * &shifted).scale(&int(-2));
    let third = &b * &((&g * &lc).scale(&int(6)) - (&g2 * &c2).scale(&int(3)));
    Ok(first + second + third)
}

/// `-2g^2 + b (6g L_b.C - 4g^2 C^2)`.
pub fn maeda_bound(pair: &SurfacePair) -> Result<MPoly> {
    let (b, g) = (MPoly::beta(), MPoly::var(Symbol::Gamma));
    let c2 = MPoly::constant(pair.boundary().square());
    let lc = pair.log_anticanonical().dot(pair.boundary())?.to_mpoly();
    let g2 = g.pow(2);
    Ok(g2.scale(&int(-2)) + &b * &((&g * &lc).scale(&int(6)) - (&g2 * &c2).scale(&int(4))))
}

/// Destabilization of a pair with `-K - C` ample by the slope along `C` at
/// `c = gamma`.
pub fn maeda_destabilize(pair: &SurfacePair, gamma: &Rational) -> Result<StabilityReport> {
    rational_boundary(pair)?;
    let eps = maeda_epsilon(pair)?;
    check_gamma(gamma, &eps)?;
    let domain = beta_domain(pair, &BetaSpec::Symbolic)?;
    let config = DNCConfig::boundary(pair.clone())?.with_beta_range(domain);
    let futaki = slope_futaki(&config)?;
    let closed = maeda_closed_form(pair)?;
    let substituted = futaki.value.clone().with_ring([Symbol::C]).substitute(Symbol::C, &MPoly::var(Symbol::Gamma))?;
    if substituted != closed {
        return Err(Error::InvalidConfig(format!("closed form {closed} disagrees with the slope invariant")));
    }
    let window = crate::dnc::p_ample_window(&config)?;
    let mut report = assess("maeda", futaki, CRule::Poly(MPoly::constant(gamma.clone())), window)?;
    report.note("gamma", gamma);
    report.note("epsilon", &eps);
    report.note("boundary", pair.boundary());
    report.closed_form = Some(closed);
    let bound = at_gamma(&maeda_bound(pair)?, gamma)?;
    report.certify(format!(
        "F < {bound} on the ample range, so the limit at b -> 0+ is at most {}",
        -(gamma * gamma * int(2))
    ));
    report.bound = Some(bound);
    Ok(report)
}

// Data of a case (ii) presentation: the parent pair and the number of points.
fn flop_presentation(pair: &SurfacePair) -> Result<(&SurfacePair, usize)> {
    let rec = pair
        .blowup_record()
        .ok_or_else(|| Error::InvalidConfig("the pair has no recorded blow-up presentation".into()))?;
    if rec.points.is_empty() {
        return Err(Error::InvalidConfig("the presentation blows up no points".into()));
    }
    if let Some(i) = rec.points.iter().position(|p| !p.on_boundary) {
        return Err(Error::InvalidConfig(format!("point {} is not on the boundary", i + 1)));
    }
    Ok((&rec.parent, rec.points.len()))
}

/// The flopped invariant along `Z = C'` with `delta_i = b` at `c = g`:
/// `-2g^2 - 2g^2 (L_b - gC).C + b (6g L'_b.C' - 4g^2 C'^2 - 4rg^2 + 6rbg - 2rb^2)`,
/// where `L_b`, `C` live on the parent.
pub fn futaki_long_eq(pair: &SurfacePair) -> Result<MPoly> {
    let (parent, r) = flop_presentation(pair)?;
    let r = MPoly::int(r as i64);
    let (b, g) = (MPoly::beta(), MPoly::var(Symbol::Gamma));
    let g2 = g.pow(2);
    let parent_lc = parent.log_anticanonical().dot(parent.boundary())?.to_mpoly();
    let shifted = &parent_lc - &(&g * &MPoly::constant(parent.boundary().square()));
    let lc = pair.log_anticanonical().dot(pair.boundary())?.to_mpoly();
    let c2 = MPoly::constant(pair.boundary().square());
    let inner = (&g * &lc).scale(&int(6)) - (&g2 * &c2).scale(&int(4)) - (&r * &g2).scale(&int(4))
        + (&r * &(&b * &g)).scale(&int(6))
        - (&r * &b.pow(2)).scale(&int(2));
    Ok(g2.scale(&int(-2)) - (&g2 * &shifted).scale(&int(2)) + &b * &inner)
}

/// `-2g^2 + b (6g L'_b.C' - 4g^2 C'^2 - 4rg^2 + 6rbg - 2rb^2)`.
pub fn restrict_eq_bound(pair: &SurfacePair) -> Result<MPoly> {
    let (_, r) = flop_presentation(pair)?;
    let r = MPoly::int(r as i64);
    let (b, g) = (MPoly::beta(), MPoly::var(Symbol::Gamma));
    let g2 = g.pow(2);
    let lc = pair.log_anticanonical().dot(pair.boundary())?.to_mpoly();
    let c2 = MPoly::constant(pair.boundary().square());
    let inner = (&g * &lc).scale(&int(6)) - (&g2 * &c2).scale(&int(4)) - (&r * &g2).scale(&int(4))
        + (&r * &(&b * &g)).scale(&int(6))
        - (&r * &b.pow(2)).scale(&int(2));
    Ok(g2.scale(&int(-2)) + &b * &inner)
}

/// Flop-slope destabilization of a blow-up of a pair with `-K - C` ample at
/// points of `C`, along `Z = C'` with `delta_i = b` and `c = gamma`.
pub fn flop_destabilize(pair: &SurfacePair, gamma: &Rational) -> Result<StabilityReport> {
    let (parent, r) = flop_presentation(pair)?;
    rational_boundary(pair)?;
    let eps = maeda_epsilon(parent)?;
    check_gamma(gamma, &eps)?;
    let amp = beta_domain(pair, &BetaSpec::Symbolic)?;
    let below_gamma = Interval::open(Rational::zero(), gamma.clone())?;
    let domain = amp.intersect(&below_gamma).ok_or(Error::EmptyWindow)?;
    let config = DNCConfig::boundary(pair.clone())?.with_beta_range(domain);
    let spec = FlopSpec::derive(&config)?;
    let fw = flop_window(&config, &spec)?;
    if fw.window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let futaki = flop_futaki(&config, &spec)?;
    let closed = futaki_long_eq(pair)?;
    let substituted = futaki.value.clone().with_ring([Symbol::C]).substitute(Symbol::C, &MPoly::var(Symbol::Gamma))?;
    if substituted != closed {
        return Err(Error::InvalidConfig(format!("closed form {closed} disagrees with the flopped invariant")));
    }
    let mut report = assess("flop_destabilize", futaki, CRule::Poly(MPoly::constant(gamma.clone())), fw.window)?;
    report.note("gamma", gamma);
    report.note("epsilon_parent", &eps);
    report.note("r", r);
    report.note("boundary", pair.boundary());
    report.closed_form = Some(closed);
    let bound = at_gamma(&restrict_eq_bound(pair)?, gamma)?;
    report.certify(format!(
        "F < {bound} for b < {gamma}, so the limit at b -> 0+ is at most {}",
        -(gamma * gamma * int(2))
    ));
    report.bound = Some(bound);
    Ok(report)
}

/// Optional inputs of [`theorem_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoremOptions {
    /// Replaces the default `gamma`, half the relevant Seshadri constant.
    pub gamma: Option<Rational>,
    /// A curve `Z'` for a flop-slope test when `(K + C)^2 = 0`.
    pub flop_z: Option<DivisorClass>,
}

/// Routes an asymptotically log del Pezzo pair to the destabilization
/// argument that applies to it.
pub fn theorem_check(pair: &SurfacePair, opts: &TheoremOptions) -> Result<StabilityReport> {
    if !amp_region(pair)?.alf {
        return Err(Error::InvalidConfig("the pair is not asymptotically log del Pezzo".into()));
    }
    let k = pair.k_plus_c_squared();
    if k.is_zero() {
        return silent(pair, opts);
    }
    let anti = anti_log_canonical(pair)?;
    let (mut report, case) = if is_ample(pair, &anti)?.ample {
        let gamma = opts.gamma.clone().map_or_else(|| maeda_epsilon(pair).map(|e| e / int(2)), Ok)?;
        (maeda_destabilize(pair, &gamma)?, "i")
    } else {
        let (parent, _) = flop_presentation(pair)
            .map_err(|e| Error::InvalidConfig(format!("neither -K-C ample nor a blow-up presentation: {e}")))?;
        let gamma = opts.gamma.clone().map_or_else(|| maeda_epsilon(parent).map(|e| e / int(2)), Ok)?;
        (flop_destabilize(pair, &gamma)?, "ii")
    };
    report.pipeline = String::from("theorem");
    report.note("case", case);
    report.note("k_plus_c_squared", &k);
    report
        .certify("the conclusion holds for every b in the ample range where the closed form at g = gamma is negative");
    Ok(report)
}

// (K + C)^2 = 0: the theorem says nothing. A flop-slope test along a supplied
// Z' can still destabilize.
fn silent(pair: &SurfacePair, opts: &TheoremOptions) -> Result<StabilityReport> {
    let reason = "(K+C)^2 = 0, the theorem does not apply";
    let mut report = match (&opts.flop_z, pair.blowup_record()) {
        (Some(z), Some(_)) => {
            let config = DNCConfig::along(pair.clone(), z.clone())?;
            let spec = FlopSpec::derive(&config)?;
            let mut r = flop_verdict(&config, &spec, CRule::Epsilon, &BetaSpec::Symbolic)?;
            r.certify(format!("{reason}; verdict from the flop-slope test along {z} at c = eps(S, Z, L)"));
            r
        }
        _ => {
            let config = DNCConfig::boundary(pair.clone())?;
            let mut r = StabilityReport::new(
                "theorem",
                slope_futaki(&config)?,
                CRule::Epsilon,
                Verdict::NotDestabilized(reason.into()),
            );
            r.certify(reason);
            r
        }
    };
    report.pipeline = String::from("theorem");
    report.note("k_plus_c_squared", 0);
    Ok(report)
}
