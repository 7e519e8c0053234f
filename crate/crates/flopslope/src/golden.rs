//! Reference values from the literature, recomputed from the bundled catalog.
//! `verify-examples` prints one row per check.

use std::collections::BTreeMap;

use flopslope_core::analyzer::{
    flop_verdict, futaki_long_eq, maeda_destabilize, maeda_epsilon, reduced_at, theorem_check, CRule, StabilityReport,
    TheoremOptions, Verdict,
};
use flopslope_core::dnc::{engine_futaki, general_futaki, slope_futaki, slope_verdict, BetaSpec, DNCConfig};
use flopslope_core::exactmath::{
    int, rat, sign_on_interval, Endpoint, Interval, MPoly, PiecewiseLinear, Rational, SignOnInterval, Symbol,
};
use flopslope_core::flop::{blowup_oracle_triple, flop_futaki, flop_triple_product, flop_window, FlopSpec, FlopTriple};
use flopslope_core::surface::{amp_region, seshadri, SurfacePair};

use crate::catalog::Catalog;
use crate::error::{CliError, Result};
use crate::job::ZSpec;
use crate::surface::{build, Built};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String)>;
type Case = (&'static str, fn() -> Outcome);

fn p(s: &str) -> MPoly {
    s.parse::<MPoly>().expect("reference polynomial parses").trimmed()
}

fn built(name: &str, z: Option<ZSpec>) -> Result<Built> {
    let mut fields = Catalog::bundled().lookup(name)?.fields;
    if z.is_some() {
        fields.z = z;
    }
    build(&fields)
}

fn config_of(b: Built) -> Result<DNCConfig> {
    let amp = amp_interval(&b.pair)?;
    let cfg = if b.z_is_boundary { DNCConfig::boundary(b.pair)? } else { DNCConfig::along(b.pair, b.z)? };
    Ok(cfg.with_beta_range(amp))
}

fn config(name: &str) -> Result<DNCConfig> {
    config_of(built(name, None)?)
}

fn amp_interval(pair: &SurfacePair) -> Result<Interval> {
    amp_region(pair)?.interval.ok_or_else(|| CliError::config("empty ample range"))
}

fn at_c(f: &MPoly, c: &str) -> Result<MPoly> {
    Ok(f.clone().with_ring([Symbol::C]).substitute(Symbol::C, &p(c))?.trimmed())
}

fn eval_bc(f: &MPoly, b: &Rational, c: &Rational) -> Result<Rational> {
    let a = BTreeMap::from([(Symbol::Beta, b.clone()), (Symbol::C, c.clone())]);
    Ok(f.trimmed().with_ring([Symbol::Beta, Symbol::C]).eval(&a)?)
}

fn single(pw: Option<&PiecewiseLinear>) -> Option<MPoly> {
    match pw?.pieces.as_slice() {
        [one] => Some(one.value.to_mpoly().trimmed()),
        _ => None,
    }
}

fn show(m: &Option<MPoly>) -> String {
    m.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn f1_boundary_slope() -> Outcome {
    let got = at_c(&slope_futaki(&config("F1")?)?.value, "1+b")?;
    Ok((got == p("2*(1+b)*(b^2+2*b-2)"), got.to_string()))
}

fn f1_boundary_threshold() -> Outcome {
    let rep = slope_verdict(&config("F1")?, &BetaSpec::Symbolic)?;
    let [range] = rep.beta_unstable_ranges.as_slice() else {
        return Ok((false, format!("{} unstable ranges", rep.beta_unstable_ranges.len())));
    };
    let ok = match &range.hi {
        Endpoint::Root(r) => {
            let iv = &r.isolating_interval;
            let q = p("b^2+2*b-2").with_ring([Symbol::Beta]);
            let sign_change = q.eval_at(Symbol::Beta, &iv.lo)? * q.eval_at(Symbol::Beta, &iv.hi)? < int(0);
            iv.lo >= rat(7_320_498, 10_000_000) && iv.hi <= rat(7_320_518, 10_000_000) && sign_change
        }
        Endpoint::Exact(_) => false,
    };
    let detail = format!("(0, {})", range.hi);
    Ok((ok && range.lo == Endpoint::Exact(int(0)), detail))
}

fn f1_section_slope() -> Outcome {
    let cfg = config_of(built("F1", Some(ZSpec::Class(vec![1, 0])))?)?;
    let got = at_c(&slope_futaki(&cfg)?.value, "1+b")?;
    let want = p("(1+b)*(2-b^2-2*b)");
    Ok((got == want, format!("{got}, reference {want}")))
}

fn conic_points_slope() -> Outcome {
    for r in 1..=5 {
        let got = slope_futaki(&config(&format!("conic-points@{r}"))?)?.value.trimmed();
        let want = p(&format!("(6*b*c-3*c^2)*(2+b*(4-{r}))+(2*c^3-3*c^2*b)*(4-{r})"));
        if got != want {
            return Ok((false, format!("r = {r}: {got}")));
        }
    }
    Ok((true, "r = 1..5".into()))
}

fn conic_points_flop() -> Outcome {
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"))?;
        let spec = FlopSpec::derive(&cfg)?;
        let diff = (flop_futaki(&cfg, &spec)?.value - slope_futaki(&cfg)?.value).trimmed();
        if diff != p(&format!("2*{r}*(c-b)^3")) {
            return Ok((false, format!("r = {r}: correction {diff}")));
        }
        let limit = at_c(&flop_futaki(&cfg, &spec)?.value, "1/2+b")?.limit_at_zero_plus(Symbol::Beta);
        if limit != MPoly::constant(rat(-1, 2)) {
            return Ok((false, format!("r = {r}: limit {limit}")));
        }
    }
    Ok((true, "correction 2r(c-b)^3, limit -1/2".into()))
}

fn cubic_line() -> Outcome {
    let cfg = config("cubic-line-1")?;
    let spec = FlopSpec::derive(&cfg)?;
    let slope = slope_futaki(&cfg)?.value.trimmed();
    let flop = flop_futaki(&cfg, &spec)?.value.trimmed();
    let ok = slope == p("6*c*b*(2-c)") && flop == p("6*c*b*(2-c)-2*(b-c)^3-3*(1-b)*(b-c)^2");
    Ok((ok, flop.to_string()))
}

fn reduced_threshold(name: &str, want: &str, threshold: Rational) -> Outcome {
    let cfg = config(name)?;
    let spec = FlopSpec::derive(&cfg)?;
    let rep = flop_verdict(&cfg, &spec, CRule::Poly(p("3*b")), &BetaSpec::Symbolic)?;
    let exact: Vec<Option<Rational>> = rep.thresholds.iter().map(|t| t.exact.clone()).collect();
    let ok = rep.reduced.as_ref().map(MPoly::trimmed) == Some(p(want)) && exact == vec![Some(threshold)];
    Ok((
        ok,
        format!(
            "{}, threshold {:?}",
            show(&rep.reduced),
            exact.iter().flatten().map(ToString::to_string).collect::<Vec<_>>()
        ),
    ))
}

fn cubic_line_window() -> Outcome {
    let cfg = config("cubic-line-1")?;
    let fw = flop_window(&cfg, &FlopSpec::derive(&cfg)?)?;
    let shown = fw.window.to_string();
    Ok((shown == "(b, 3*b)", shown))
}

fn cubic_two_points_slope() -> Outcome {
    let f = slope_futaki(&config("cubic-line-2")?)?.value.trimmed();
    if f != p("3*b*c*(2-c)-c^2*(2*c-3)") {
        return Ok((false, f.to_string()));
    }
    for b in [rat(1, 10), rat(1, 2), rat(9, 10)] {
        let at = f.clone().with_ring([Symbol::Beta]).partial_eval(Symbol::Beta, &b)?.trimmed();
        if sign_on_interval(&at, &Interval::open(int(0), b.clone())?)? != SignOnInterval::Positive {
            return Ok((false, format!("not positive for 0 < c < {b}")));
        }
    }
    Ok((true, "positive on 0 < c < b for b = 1/10, 1/2, 9/10".into()))
}

// Deterministic sample inputs for the triple product checks.
fn triple_samples() -> Vec<([Rational; 3], [Rational; 3], Rational)> {
    (0i64..100)
        .map(|k| {
            let m = [rat((k * 7) % 11 - 5, 1 + k % 4), rat((k * 5) % 13 - 6, 1 + (k / 3) % 5), rat((k * 3) % 9 - 4, 2)];
            let r = [rat((k * 11) % 7 - 3, 1 + k % 3), rat(k % 5 - 2, 1), rat((k * 13) % 15 - 7, 1 + (k / 7) % 3)];
            (m, r, rat((k * k) % 17 - 8, 1 + k % 6))
        })
        .collect()
}

fn triple_oracle() -> Outcome {
    for (m, r, base) in triple_samples() {
        let t = FlopTriple::new(MPoly::constant(base.clone())).with_curve(r.clone().map(MPoly::constant));
        if flop_triple_product(&t) != MPoly::constant(blowup_oracle_triple(&m, &r, &base)) {
            return Ok((false, format!("m = {m:?}, r = {r:?}")));
        }
        if t.flopped().flopped() != t {
            return Ok((false, "double flop is not the identity".into()));
        }
    }
    Ok((true, "100 samples, flop twice = identity".into()))
}

fn path_equivalence() -> Outcome {
    let cat = Catalog::bundled();
    let members = cat.members();
    for m in &members {
        let cfg = config_of(build(&m.fields)?)?;
        let closed = slope_futaki(&cfg)?.value;
        let general = general_futaki(&cfg, &cfg.polarization)?;
        let positive = sign_on_interval(&general.denominator, &cfg.beta_range)? == SignOnInterval::Positive;
        if general.numerator != &closed * &general.denominator || engine_futaki(&cfg).value != closed || !positive {
            return Ok((false, m.name.clone()));
        }
    }
    Ok((members.len() >= 6, format!("{} configurations", members.len())))
}

fn small_beta_negative(rep: &StabilityReport, gamma: &Rational) -> Result<bool> {
    let Some(limit) = rep.reduced.as_ref().and_then(|r| r.limit_at_zero_plus(Symbol::Beta).as_constant()) else {
        return Ok(false);
    };
    let Some(b0) = rep.small_beta.as_ref().and_then(|s| s.beta0.clone()) else {
        return Ok(false);
    };
    let inside = reduced_at(rep, &(&b0 / int(2))).is_some_and(|v| v < int(0));
    Ok(limit <= -(gamma * gamma * int(2)) && b0 > int(0) && inside)
}

fn maeda() -> Outcome {
    let mut detail = Vec::new();
    for name in ["P2-conic", "F1"] {
        let pair = built(name, None)?.pair;
        let gamma = maeda_epsilon(&pair)? / int(2);
        let rep = maeda_destabilize(&pair, &gamma)?;
        if !small_beta_negative(&rep, &gamma)? {
            return Ok((false, name.to_string()));
        }
        detail.push(format!("{name}: gamma {gamma}"));
    }
    Ok((true, detail.join(", ")))
}

fn verified_witness(rep: &StabilityReport) -> Result<bool> {
    let (Verdict::Unstable(w), Some(window)) = (&rep.verdict, &rep.window) else {
        return Ok(false);
    };
    Ok(window.contains(&w.beta, &w.c) && eval_bc(&rep.futaki.value, &w.beta, &w.c)? == w.value && w.value < int(0))
}

fn theorem() -> Outcome {
    let cubic = theorem_check(&built("P2", None)?.pair, &TheoremOptions::default())?;
    if !matches!(cubic.verdict, Verdict::NotDestabilized(_)) {
        return Ok((false, "cubic".into()));
    }
    for name in ["cubic-line-1", "cubic-line-2"] {
        let b = built(name, None)?;
        let rep = theorem_check(&b.pair, &TheoremOptions { flop_z: Some(b.z), ..Default::default() })?;
        if !verified_witness(&rep)? {
            return Ok((false, name.to_string()));
        }
    }
    Ok((true, "cubic silent; one and two points unstable".into()))
}

fn flop_closed_form() -> Outcome {
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"))?;
        let f = flop_futaki(&cfg, &FlopSpec::derive(&cfg)?)?.value;
        let sub = f.with_ring([Symbol::C]).substitute(Symbol::C, &MPoly::var(Symbol::Gamma))?;
        if futaki_long_eq(&cfg.pair)?.trimmed() != sub.trimmed() {
            return Ok((false, format!("r = {r}")));
        }
    }
    Ok((true, "r = 1..5".into()))
}

fn seshadri_table() -> Outcome {
    let cfg = config("F1")?;
    let eps = seshadri(&cfg.pair, &cfg.z, &cfg.polarization, &cfg.beta_range)?;
    let f1 = single(eps.epsilon.as_ref());
    let mut ok = f1 == Some(p("1+b"));
    let mut detail = vec![format!("F1: {}", show(&f1))];
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"))?;
        let fw = flop_window(&cfg, &FlopSpec::derive(&cfg)?)?;
        let (e, tau) = (single(fw.epsilon_prime.as_ref()), single(fw.certificate.tau()));
        ok &= e == Some(p("b")) && tau == Some(p("1/2+b"));
        if r == 1 {
            detail.push(format!("conic: {} and tau {}", show(&e), show(&tau)));
        }
    }
    let cfg = config("cubic-line-1")?;
    let tau = single(flop_window(&cfg, &FlopSpec::derive(&cfg)?)?.certificate.tau());
    ok &= tau == Some(p("3*b"));
    detail.push(format!("cubic-line: tau {}", show(&tau)));
    Ok((ok, detail.join("; ")))
}

/// Runs every check in a fixed order.
pub fn run_all() -> Vec<Check> {
    let cases: [Case; 17] = [
        ("f1-boundary-slope", f1_boundary_slope),
        ("f1-boundary-threshold", f1_boundary_threshold),
        ("f1-section-slope", f1_section_slope),
        ("conic-points-slope", conic_points_slope),
        ("conic-points-flop", conic_points_flop),
        ("cubic-line-flop", cubic_line),
        ("cubic-line-reduced", || reduced_threshold("cubic-line-1", "24*b^2-26*b^3", rat(12, 13))),
        ("cubic-line-window", cubic_line_window),
        ("cubic-two-points-slope", cubic_two_points_slope),
        ("cubic-two-points-reduced", || reduced_threshold("cubic-line-2", "b^2*(21-25*b)", rat(21, 25))),
        ("triple-product-oracle", triple_oracle),
        ("catalog-path-equivalence", path_equivalence),
        ("maeda-small-beta", maeda),
        ("theorem-routing", theorem),
        ("flop-closed-form", flop_closed_form),
        ("seshadri-table", seshadri_table),
        ("catalog-f1-lattice", catalog_f1),
    ];
    cases
        .into_iter()
        .map(|(name, f)| match f() {
            Ok((pass, detail)) => Check { name, pass, detail },
            Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
        })
        .collect()
}

fn catalog_f1() -> Outcome {
    let pair = built("F1", None)?.pair;
    let lat = pair.lattice();
    let gram: Vec<Vec<Rational>> = vec![vec![int(-1), int(1)], vec![int(1), int(0)]];
    let ok = lat.labels() == ["E", "F"]
        && lat.gram() == gram.as_slice()
        && pair.canonical().coefficients() == [int(-2), int(-3)];
    Ok((ok, format!("K = {}", pair.canonical())))
}

/// Fixed-width pass/fail table with a summary line.
pub fn table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:<width$}  {}\n", c.name, c.detail));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed} passed, {} failed\n", checks.len() - passed));
    out
}
