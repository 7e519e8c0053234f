//! Acceptance criteria. Prints one `PASS` or `FAIL` line per criterion and
//! exits non-zero if any fails. All comparisons are exact.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use flopslope::catalog::Catalog;
use flopslope::surface::{build, Built};
use flopslope_core::analyzer::{
    flop_verdict, futaki_long_eq, maeda_destabilize, maeda_epsilon, theorem_check, CRule, StabilityReport,
    TheoremOptions, Verdict,
};
use flopslope_core::dnc::{general_futaki, slope_futaki, slope_verdict, BetaSpec, DNCConfig};
use flopslope_core::exactmath::{
    int, rat, sign_on_interval, Endpoint, Interval, MPoly, PiecewiseLinear, Rational, SignOnInterval, Symbol,
};
use flopslope_core::flop::{blowup_oracle_triple, flop_futaki, flop_triple_product, flop_window, FlopSpec, FlopTriple};
use flopslope_core::surface::{amp_region, seshadri};

type Outcome = (String, Vec<String>);

fn p(s: &str) -> MPoly {
    s.parse::<MPoly>().unwrap().trimmed()
}

fn member(name: &str) -> Built {
    build(&Catalog::bundled().lookup(name).unwrap().fields).unwrap()
}

fn config_of(b: Built) -> DNCConfig {
    let amp = amp_region(&b.pair).unwrap().interval.unwrap();
    let cfg = if b.z_is_boundary { DNCConfig::boundary(b.pair) } else { DNCConfig::along(b.pair, b.z) };
    cfg.unwrap().with_beta_range(amp)
}

fn config(name: &str) -> DNCConfig {
    config_of(member(name))
}

fn subst_c(f: &MPoly, c: &MPoly) -> MPoly {
    f.clone().with_ring([Symbol::C]).substitute(Symbol::C, c).unwrap().trimmed()
}

fn eval2(f: &MPoly, b: &Rational, c: &Rational) -> Rational {
    let a = BTreeMap::from([(Symbol::Beta, b.clone()), (Symbol::C, c.clone())]);
    f.trimmed().with_ring([Symbol::Beta, Symbol::C]).eval(&a).unwrap()
}

fn only_piece(pw: Option<&PiecewiseLinear>) -> Option<MPoly> {
    match pw?.pieces.as_slice() {
        [one] => Some(one.value.to_mpoly().trimmed()),
        _ => None,
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn criterion_01_hirzebruch_example() -> Outcome {
    let mut fails = Vec::new();
    let cfg = config("F1");
    let got = subst_c(&slope_futaki(&cfg).unwrap().value, &p("1+b"));
    let want = p("2*(1+b)*(b^2+2*b-2)");
    check(&mut fails, got == want, || format!("Z=C: {got} != {want}"));

    let rep = slope_verdict(&cfg, &BetaSpec::Symbolic).unwrap();
    match rep.beta_unstable_ranges.as_slice() {
        [range] => {
            check(&mut fails, range.lo == Endpoint::Exact(int(0)), || format!("range starts at {}", range.lo));
            match &range.hi {
                Endpoint::Root(root) => {
                    let iv = &root.isolating_interval;
                    let q = p("b^2+2*b-2").with_ring([Symbol::Beta]);
                    let sign_change =
                        q.eval_at(Symbol::Beta, &iv.lo).unwrap() * q.eval_at(Symbol::Beta, &iv.hi).unwrap() < int(0);
                    let near = iv.lo >= rat(7_320_498, 10_000_000) && iv.hi <= rat(7_320_518, 10_000_000);
                    check(&mut fails, sign_change && near, || format!("isolating interval {iv}"));
                }
                Endpoint::Exact(x) => fails.push(format!("rational threshold {x}")),
            }
        }
        other => fails.push(format!("{} unstable ranges", other.len())),
    }

    let e = DNCConfig::along(cfg.pair.clone(), cfg.pair.class(&[1, 0]).unwrap()).unwrap();
    let got = subst_c(&slope_futaki(&e).unwrap().value, &p("1+b"));
    let want = p("(1+b)*(2-b^2-2*b)");
    check(&mut fails, got == want, || format!("Z=E: {got} != {want}"));
    ("F1 with C in |E+F|: Z=C identity, threshold sqrt(3)-1, Z=E identity".to_string(), fails)
}

fn criterion_02_conic_with_points() -> Outcome {
    let mut fails = Vec::new();
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"));
        let slope = slope_futaki(&cfg).unwrap().value.trimmed();
        let want = p(&format!("(6*b*c-3*c^2)*(2+b*(4-{r}))+(2*c^3-3*c^2*b)*(4-{r})"));
        check(&mut fails, slope == want, || format!("r = {r}: slope {slope}"));
        let spec = FlopSpec::derive(&cfg).unwrap();
        let flop = flop_futaki(&cfg, &spec).unwrap().value.trimmed();
        let added = (&flop - &slope).trimmed();
        check(&mut fails, added == p(&format!("2*{r}*(c-b)^3")), || format!("r = {r}: flop adds {added}"));
        let limit = subst_c(&flop, &p("1/2+b")).limit_at_zero_plus(Symbol::Beta);
        check(&mut fails, limit == MPoly::constant(rat(-1, 2)), || format!("r = {r}: limit {limit}"));
    }
    ("conic with r = 1..5 points: slope, flop correction 2r(c-b)^3, limit -1/2".to_string(), fails)
}

fn flop_report(name: &str) -> (DNCConfig, FlopSpec, StabilityReport) {
    let cfg = config(name);
    let spec = FlopSpec::derive(&cfg).unwrap();
    let rep = flop_verdict(&cfg, &spec, CRule::Poly(p("3*b")), &BetaSpec::Symbolic).unwrap();
    (cfg, spec, rep)
}

fn single_threshold(rep: &StabilityReport) -> Option<Rational> {
    match rep.thresholds.as_slice() {
        [t] => t.exact.clone(),
        _ => None,
    }
}

fn criterion_03_cubic_blown_up_once() -> Outcome {
    let mut fails = Vec::new();
    let (cfg, spec, rep) = flop_report("cubic-line-1");
    let slope = slope_futaki(&cfg).unwrap().value.trimmed();
    check(&mut fails, slope == p("6*c*b*(2-c)"), || format!("slope {slope}"));
    let flop = flop_futaki(&cfg, &spec).unwrap().value.trimmed();
    check(&mut fails, flop == p("6*c*b*(2-c)-2*(b-c)^3-3*(1-b)*(b-c)^2"), || format!("flop {flop}"));
    let reduced = rep.reduced.clone().map(|r| r.trimmed());
    check(&mut fails, reduced == Some(p("24*b^2-26*b^3")), || format!("reduced {reduced:?}"));
    check(&mut fails, single_threshold(&rep) == Some(rat(12, 13)), || format!("thresholds {:?}", rep.thresholds));
    let fw = flop_window(&cfg, &spec).unwrap();
    let lower = only_piece(Some(&fw.window.lower));
    let upper = only_piece(fw.window.upper.as_ref());
    check(&mut fails, lower == Some(p("b")) && upper == Some(p("3*b")), || format!("window {}", fw.window));
    ("cubic and line, one point: slope, flop, 24b^2-26b^3, threshold 12/13, window (b, 3b)".to_string(), fails)
}

fn criterion_04_cubic_blown_up_twice() -> Outcome {
    let mut fails = Vec::new();
    let (cfg, _, rep) = flop_report("cubic-line-2");
    let slope = slope_futaki(&cfg).unwrap().value.trimmed();
    check(&mut fails, slope == p("3*b*c*(2-c)-c^2*(2*c-3)"), || format!("slope {slope}"));
    for b in [rat(1, 10), rat(1, 2), rat(9, 10)] {
        let at = slope.clone().with_ring([Symbol::Beta]).partial_eval(Symbol::Beta, &b).unwrap().trimmed();
        let sign = sign_on_interval(&at, &Interval::open(int(0), b.clone()).unwrap()).unwrap();
        check(&mut fails, sign == SignOnInterval::Positive, || format!("sign {sign:?} on (0, {b})"));
    }
    let reduced = rep.reduced.clone().map(|r| r.trimmed());
    check(&mut fails, reduced == Some(p("b^2*(21-25*b)")), || format!("reduced {reduced:?}"));
    check(&mut fails, single_threshold(&rep) == Some(rat(21, 25)), || format!("thresholds {:?}", rep.thresholds));
    ("cubic and line, two points: slope positive on (0, b), b^2(21-25b), threshold 21/25".to_string(), fails)
}

fn criterion_05_flop_triple_products() -> Outcome {
    let mut fails = Vec::new();
    let mut runner = TestRunner::deterministic();
    let q = (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d));
    let triple = [q.clone(), q.clone(), q.clone()];
    let sample = (triple.clone(), triple, q);
    for k in 0..100 {
        let (m, r, base) = sample.new_tree(&mut runner).unwrap().current();
        let t = FlopTriple::new(MPoly::constant(base.clone())).with_curve(r.clone().map(MPoly::constant));
        let oracle = blowup_oracle_triple(&m, &r, &base);
        check(&mut fails, flop_triple_product(&t) == MPoly::constant(oracle.clone()), || {
            format!("sample {k}: oracle {oracle}")
        });
        check(&mut fails, t.flopped().flopped() == t, || format!("sample {k}: double flop"));
    }
    (
        "flop triple product equals the blow-up oracle on 100 random inputs; flopping twice is the identity"
            .to_string(),
        fails,
    )
}

fn criterion_06_path_equivalence() -> Outcome {
    let mut fails = Vec::new();
    let members = Catalog::bundled().members();
    check(&mut fails, members.len() >= 6, || format!("only {} configurations", members.len()));
    for m in &members {
        let cfg = config_of(build(&m.fields).unwrap());
        let closed = slope_futaki(&cfg).unwrap().value;
        let general = general_futaki(&cfg, &cfg.polarization).unwrap();
        let positive = sign_on_interval(&general.denominator, &cfg.beta_range).unwrap() == SignOnInterval::Positive;
        check(&mut fails, positive, || format!("{}: L^2 not certified positive", m.name));
        check(&mut fails, general.numerator == &closed * &general.denominator, || format!("{}: paths differ", m.name));
    }
    (format!("closed form times L^2 equals the intersection engine on {} catalog configurations", members.len()), fails)
}

fn criterion_07_maeda_pipeline() -> Outcome {
    let mut fails = Vec::new();
    for name in ["P2-conic", "F1"] {
        let pair = member(name).pair;
        let gamma = maeda_epsilon(&pair).unwrap() / int(2);
        let rep = maeda_destabilize(&pair, &gamma).unwrap();
        let reduced = rep.reduced.clone().unwrap();
        let limit = reduced.limit_at_zero_plus(Symbol::Beta).as_constant().unwrap();
        check(&mut fails, limit <= -(&gamma * &gamma * int(2)), || format!("{name}: limit {limit}"));
        match rep.small_beta.as_ref().and_then(|s| s.beta0.clone()) {
            Some(b0) if b0 > int(0) => {
                let sign = sign_on_interval(&reduced, &Interval::open(int(0), b0.clone()).unwrap()).unwrap();
                check(&mut fails, sign == SignOnInterval::Negative, || format!("{name}: not negative on (0, {b0})"));
            }
            other => fails.push(format!("{name}: beta0 {other:?}")),
        }
    }
    ("(P2, conic) and (F1, E+F) at gamma = eps/2: limit <= -2 gamma^2 and F < 0 on (0, beta0)".to_string(), fails)
}

fn witness_verified(rep: &StabilityReport) -> bool {
    let (Verdict::Unstable(w), Some(window)) = (&rep.verdict, &rep.window) else {
        return false;
    };
    window.contains(&w.beta, &w.c) && eval2(&rep.futaki.value, &w.beta, &w.c) == w.value && w.value < int(0)
}

fn criterion_08_theorem_pipeline() -> Outcome {
    let mut fails = Vec::new();
    let cubic = theorem_check(&member("P2").pair, &TheoremOptions::default()).unwrap();
    check(&mut fails, matches!(cubic.verdict, Verdict::NotDestabilized(_)), || {
        format!("cubic: {}", cubic.verdict.tag())
    });
    for name in ["cubic-line-1", "cubic-line-2"] {
        let b = member(name);
        let rep = theorem_check(&b.pair, &TheoremOptions { flop_z: Some(b.z), ..Default::default() }).unwrap();
        check(&mut fails, witness_verified(&rep), || format!("{name}: {}", rep.verdict.tag()));
    }
    // the closed form only applies where (K+C)^2 != 0, i.e. to the conic family
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"));
        let f = flop_futaki(&cfg, &FlopSpec::derive(&cfg).unwrap()).unwrap().value;
        let substituted = subst_c(&f, &MPoly::var(Symbol::Gamma));
        let closed = futaki_long_eq(&cfg.pair).unwrap().trimmed();
        check(&mut fails, closed == substituted, || format!("r = {r}: {closed} != {substituted}"));
        let rep = theorem_check(&cfg.pair, &TheoremOptions::default()).unwrap();
        check(&mut fails, witness_verified(&rep), || format!("conic r = {r}: {}", rep.verdict.tag()));
    }
    (
        "cubic silent, blown-up cubics unstable with verified witnesses, closed form matches flop invariant"
            .to_string(),
        fails,
    )
}

fn criterion_09_seshadri_table() -> Outcome {
    let mut fails = Vec::new();
    let cfg = config("F1");
    let eps = seshadri(&cfg.pair, &cfg.z, &cfg.polarization, &cfg.beta_range).unwrap();
    let f1 = only_piece(eps.epsilon.as_ref());
    check(&mut fails, f1 == Some(p("1+b")), || format!("eps(F1) = {f1:?}"));
    for r in 1..=5 {
        let cfg = config(&format!("conic-points@{r}"));
        let fw = flop_window(&cfg, &FlopSpec::derive(&cfg).unwrap()).unwrap();
        let e = only_piece(fw.epsilon_prime.as_ref());
        let tau = only_piece(fw.certificate.tau());
        check(&mut fails, e == Some(p("b")), || format!("r = {r}: eps' = {e:?}"));
        check(&mut fails, tau == Some(p("1/2+b")), || format!("r = {r}: tau = {tau:?}"));
    }
    let cfg = config("cubic-line-1");
    let tau = only_piece(flop_window(&cfg, &FlopSpec::derive(&cfg).unwrap()).unwrap().certificate.tau());
    check(&mut fails, tau == Some(p("3*b")), || format!("cubic and line: tau = {tau:?}"));
    ("eps(F1) = 1+b; conic points eps' = b, tau = 1/2+b; cubic and line tau = 3b".to_string(), fails)
}

/// Builds the `flopslope` binary into this profile's target directory.
fn cli_binary() -> Result<PathBuf, String> {
    let status = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "flopslope", "--bin", "flopslope"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .map_err(|e| format!("running cargo: {e}"))?;
    if !status.success() {
        return Err(format!("cargo build exited with {status}"));
    }
    let exe = std::env::current_exe().map_err(|e| e.to_string())?;
    let profile_dir = exe.parent().and_then(Path::parent).ok_or("no target directory")?;
    Ok(profile_dir.join(format!("flopslope{}", std::env::consts::EXE_SUFFIX)))
}

const WHAT_10: &str = "verify-examples output is byte-identical across two runs";

fn criterion_10_determinism() -> Outcome {
    let mut fails = Vec::new();
    let bin = match cli_binary() {
        Ok(bin) => bin,
        Err(e) => return (WHAT_10.to_string(), vec![e]),
    };
    let run = || Command::new(&bin).arg("verify-examples").env_remove("FLOPSLOPE_CATALOG").output().unwrap();
    let (a, b) = (run(), run());
    check(&mut fails, !a.stdout.is_empty(), || "no output".into());
    check(&mut fails, a.stdout == b.stdout && a.status.code() == b.status.code(), || "outputs differ".into());
    (WHAT_10.to_string(), fails)
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_01_hirzebruch_example,
        criterion_02_conic_with_points,
        criterion_03_cubic_blown_up_once,
        criterion_04_cubic_blown_up_twice,
        criterion_05_flop_triple_products,
        criterion_06_path_equivalence,
        criterion_07_maeda_pipeline,
        criterion_08_theorem_pipeline,
        criterion_09_seshadri_table,
        criterion_10_determinism,
    ];
    let mut failed = 0;
    for (n, criterion) in criteria.iter().enumerate() {
        let (what, fails) = criterion();
        if fails.is_empty() {
            println!("PASS criterion {}: {what}", n + 1);
        } else {
            failed += 1;
            println!("FAIL criterion {}: {what}: {}", n + 1, fails.join("; "));
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
