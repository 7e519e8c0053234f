use alloc::vec;

use proptest::prelude::*;

use super::*;
use crate::analyzer::{reduced_at, Verdict};
use crate::exactmath::{int, rat, Interval, Linear, MPoly, Rational, Symbol};
use crate::surface::{blow_up, hirzebruch_pair, p2_pair, BetaFunctionClass, BlowupOptions, BlowupPoint};
use crate::Error;

fn p(s: &str) -> MPoly {
    s.parse().unwrap()
}

fn at_c(f: &MPoly, c: &MPoly) -> MPoly {
    f.clone().with_ring([Symbol::C]).substitute(Symbol::C, c).unwrap()
}

#[test]
fn f1_boundary() {
    let pair = hirzebruch_pair(1, 1, 1).unwrap();
    let cfg = DNCConfig::boundary(pair).unwrap();
    assert_eq!(cfg.polarization.to_string(), "(b+1)*E+(b+2)*F");
    let f = slope_futaki(&cfg).unwrap();
    assert_eq!(f.branch, Branch::ZIsBoundary);
    assert_eq!(at_c(&f.value, &p("1+b")), p("2*(1+b)*(b^2+2*b-2)"));
    let w = p_ample_window(&cfg).unwrap();
    assert_eq!(w.to_string(), "(0, b+1)");
}

#[test]
fn f1_exceptional_curve() {
    let pair = hirzebruch_pair(1, 1, 1).unwrap();
    let e = pair.class(&[1, 0]).unwrap();
    let cfg = DNCConfig::along(pair, e).unwrap();
    assert_eq!(cfg.branch(), Branch::ZNotBoundary);
    let f = slope_futaki(&cfg).unwrap();
    assert_eq!(f.value, p("6*c-2*c^3"));
    assert_eq!(at_c(&f.value, &p("1+b")), p("2*(1+b)*(2-2*b-b^2)"));
}

#[test]
fn f1_anticanonical_exceptional_curve() {
    // matches the known Hirzebruch formula for Z = E with C = -K
    let pair = hirzebruch_pair(1, 2, 3).unwrap();
    let e = pair.class(&[1, 0]).unwrap();
    let cfg = DNCConfig::along(pair, e).unwrap();
    let f = slope_futaki(&cfg).unwrap();
    assert_eq!(f.value, p("6*c*b-3*c^2*b-2*c^3+3*c^2"));
}

#[test]
fn engine_agrees_with_closed_form_on_examples() {
    let f1 = hirzebruch_pair(1, 1, 1).unwrap();
    let cubic = p2_pair(3).unwrap();
    let line = cubic.class(&[1]).unwrap();
    let blown = blow_up(&cubic, &[BlowupPoint::new(true, true)], &BlowupOptions::default()).unwrap();
    let zp = blown.record().unwrap().proper_transform_by(&line, |q| q.on_z).unwrap();
    for cfg in [
        DNCConfig::boundary(f1.clone()).unwrap(),
        DNCConfig::along(f1.clone(), f1.class(&[1, 0]).unwrap()).unwrap(),
        DNCConfig::along(cubic.clone(), line).unwrap(),
        DNCConfig::along(blown.pair.clone(), zp).unwrap(),
    ] {
        let closed = slope_futaki(&cfg).unwrap();
        let eng = engine_futaki(&cfg);
        assert_eq!(closed.value, eng.value, "{}", cfg.z);
        assert_eq!(eng.provenance, FutakiSource::SymbolicEngine);
        let g = general_futaki(&cfg, &cfg.polarization).unwrap();
        assert_eq!(g.numerator, &g.denominator * &closed.value);
    }
}

#[test]
fn triple_product_table() {
    let cfg = DNCConfig::boundary(hirzebruch_pair(1, 1, 1).unwrap()).unwrap();
    let t = triple_products(&cfg);
    assert_eq!(t.e_cubed, MPoly::int(-1));
    assert_eq!(t.k_e_squared, MPoly::int(3));
}

#[test]
fn leading_coefficient_in_c() {
    let cfg = DNCConfig::boundary(hirzebruch_pair(1, 1, 1).unwrap()).unwrap();
    let (d, lead) = c_leading(&slope_futaki(&cfg).unwrap().value);
    assert_eq!(d, 3);
    assert_eq!(lead, MPoly::constant(cfg.z.square() * int(2)));
}

#[test]
fn polarization_mismatch() {
    let pair = hirzebruch_pair(1, 1, 1).unwrap();
    let z = pair.boundary().clone();
    let l = BetaFunctionClass::constant(pair.class(&[1, 2]).unwrap());
    let cfg = DNCConfig::new(pair, z, true, l.clone()).unwrap();
    assert!(matches!(slope_futaki(&cfg), Err(Error::PolarizationMismatch(_))));
    assert!(general_futaki(&cfg, &l).is_ok());
}

#[test]
fn degenerate_polarization() {
    let pair = hirzebruch_pair(0, 1, 1).unwrap();
    let f = pair.class(&[0, 1]).unwrap();
    let cfg = DNCConfig::along(pair, f.clone()).unwrap();
    assert_eq!(general_futaki(&cfg, &BetaFunctionClass::constant(f)).unwrap_err(), Error::DegeneratePolarization);
}

#[test]
fn boundary_flag_must_match() {
    let pair = hirzebruch_pair(1, 1, 1).unwrap();
    let e = pair.class(&[1, 0]).unwrap();
    let l = pair.log_anticanonical();
    assert!(matches!(DNCConfig::new(pair, e, true, l), Err(Error::InvalidConfig(_))));
}

#[test]
fn slope_verdict_f1() {
    let cfg = DNCConfig::boundary(hirzebruch_pair(1, 1, 1).unwrap()).unwrap();
    let r = slope_verdict(&cfg, &BetaSpec::Symbolic).unwrap();
    assert!(r.verdict.is_unstable());
    assert_eq!(r.reduced, Some(p("2*(1+b)*(b^2+2*b-2)")));
    let s = r.small_beta.as_ref().unwrap();
    assert!(s.unstable_for_small_beta());
    assert_eq!(r.thresholds.len(), 1);
    // the root of b^2 + 2b - 2 on (0, 1] is sqrt(3) - 1
    assert!(r.thresholds[0].cmp_rational(&rat(73, 100)).is_ge());
    assert!(r.thresholds[0].cmp_rational(&rat(74, 100)).is_le());
    assert_eq!(reduced_at(&r, &int(1)), Some(int(4)));

    let fixed = slope_verdict(&cfg, &BetaSpec::Fixed(rat(1, 2))).unwrap();
    let Verdict::Unstable(w) = &fixed.verdict else { panic!("{:?}", fixed.verdict) };
    assert_eq!(w.beta, rat(1, 2));
    assert!(w.value < Rational::from_integer(0.into()));

    // F(1, c) = 2c(c - 3)^2 stays positive on the window (0, 2)
    let at_one = slope_verdict(&cfg, &BetaSpec::Fixed(int(1))).unwrap();
    assert!(matches!(at_one.verdict, Verdict::NotDestabilized(_)));
    assert_eq!(at_c(&cfg_value(&cfg), &MPoly::int(0)), MPoly::zero());
}

fn cfg_value(cfg: &DNCConfig) -> MPoly {
    slope_futaki(cfg).unwrap().value
}

fn cfg_window(cfg: &DNCConfig) -> CWindow {
    p_ample_window(cfg).unwrap()
}

#[test]
fn slope_verdict_outside_ample_range() {
    let cfg = DNCConfig::boundary(hirzebruch_pair(1, 1, 1).unwrap()).unwrap();
    assert!(matches!(slope_verdict(&cfg, &BetaSpec::Fixed(int(0))), Err(Error::BetaOutsideAmple(_))));
    assert!(matches!(slope_verdict(&cfg, &BetaSpec::Fixed(int(2))), Err(Error::BetaOutsideAmple(_))));
}

#[test]
fn cubic_is_not_destabilized_by_its_boundary() {
    let cfg = DNCConfig::boundary(p2_pair(3).unwrap()).unwrap();
    let r = slope_verdict(&cfg, &BetaSpec::Symbolic).unwrap();
    assert!(matches!(r.verdict, Verdict::NotDestabilized(_)));
    assert_eq!(cfg_window(&cfg).upper.unwrap().pieces[0].value, Linear::new(int(0), int(1)));
}

#[test]
fn window_display_and_membership() {
    let cfg = DNCConfig::boundary(hirzebruch_pair(1, 1, 1).unwrap()).unwrap();
    let w = cfg_window(&cfg);
    assert!(w.contains(&rat(1, 2), &int(1)));
    assert!(!w.contains(&rat(1, 2), &rat(3, 2)));
    assert!(!w.contains(&rat(1, 2), &int(0)));
    assert_eq!(w.nonempty_betas(), vec![Interval::unit_beta()]);
    assert!(!w.is_empty());
}

fn hirzebruch_config() -> impl Strategy<Value = DNCConfig> {
    (0u32..=3, 1i64..=3, 1i64..=6, -2i64..=3, -2i64..=4, any::<bool>()).prop_filter_map(
        "invalid pair",
        |(n, a, b, za, zb, on_c)| {
            let pair = hirzebruch_pair(n, a, b).ok()?;
            if on_c {
                return DNCConfig::boundary(pair).ok();
            }
            let z = pair.class(&[za, zb]).ok()?;
            DNCConfig::along(pair, z).ok()
        },
    )
}

proptest! {
    #[test]
    fn engine_equals_closed_form(cfg in hirzebruch_config()) {
        let closed = slope_futaki(&cfg).unwrap();
        prop_assert_eq!(&closed.value, &engine_futaki(&cfg).value);
        let (d, lead) = c_leading(&closed.value);
        if !cfg.z.square().eq(&Rational::from_integer(0.into())) {
            prop_assert_eq!(d, 3);
            prop_assert_eq!(lead, MPoly::constant(cfg.z.square() * int(2)));
        }
    }

    #[test]
    fn numerator_is_l_squared_times_invariant(cfg in hirzebruch_config()) {
        let closed = slope_futaki(&cfg).unwrap().value;
        match general_futaki(&cfg, &cfg.polarization) {
            Ok(g) => prop_assert_eq!(g.numerator, &g.denominator * &closed),
            Err(e) => prop_assert_eq!(e, Error::DegeneratePolarization),
        }
    }

    #[test]
    fn invariant_vanishes_at_c_zero(cfg in hirzebruch_config()) {
        let f = slope_futaki(&cfg).unwrap().value;
        prop_assert!(at_c(&f, &MPoly::zero()).is_zero());
    }
}
