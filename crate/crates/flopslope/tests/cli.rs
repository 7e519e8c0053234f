use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use flopslope::job::{parse_job, to_canonical_json, JobSpec, Pipeline, PointSpec, ZKeyword, ZSpec};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_flopslope"));
    c.env_remove("FLOPSLOPE_CATALOG");
    c
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn jobs_dir() -> PathBuf {
    crate_dir().join("data/jobs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn run_job(job: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg("run").arg(job).arg("--out").arg(out).args(extra).output().unwrap()
}

fn write_job(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("job.json");
    fs::write(&p, body).unwrap();
    p
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.json"))).unwrap()).unwrap()
}

#[test]
fn catalog_list_shows_bundled_entries() {
    let o = bin().args(["catalog", "list"]).output().unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 6);
    for name in ["P2", "F0", "F1", "F2", "F3", "conic-points", "cubic-line-1", "cubic-line-2"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name} missing");
    }
}

#[test]
fn catalog_show_f1() {
    let o = bin().args(["catalog", "show", "F1"]).output().unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("basis: [E, F]\n"));
    assert!(text.contains("gram: [[-1, 1], [1, 0]]\n"));
    assert!(text.contains("canonical: -2*E-3*F\n"));
    assert!(text.contains("mori_generators: [E, F]\n"));
}

#[test]
fn catalog_show_cubic_line_and_family() {
    let o = bin().args(["catalog", "show", "cubic-line-2"]).output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("basis: [H, E1, E2]\n"));
    assert!(text.contains("z: H-E1-E2\n"));
    assert!(text.contains("z_squared: -1\n"));

    let all = stdout(&bin().args(["catalog", "show", "conic-points"]).output().unwrap());
    assert_eq!(all.matches("name: conic-points@").count(), 5);
    let one = stdout(&bin().args(["catalog", "show", "conic-points@4"]).output().unwrap());
    assert!(one.contains("basis: [H, E1, E2, E3, E4]\n"));
    assert!(one.contains("boundary_squared: 0\n"));
}

#[test]
fn catalog_unknown_entry_exits_2() {
    for name in ["P5", "conic-points@9", "cubic-line-1@1"] {
        let o = bin().args(["catalog", "show", name]).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{name}");
    }
}

#[test]
fn malformed_class_vector_exits_3_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"name": "bad", "pipeline": "slope", "model": "F1", "boundary": "E+F"}"#,
        r#"{"name": "bad", "pipeline": "slope", "model": "F1", "boundary": [1, 1, 1]}"#,
    ] {
        let o = run_job(&write_job(dir.path(), body), dir.path(), &[]);
        assert_eq!(o.status.code(), Some(3));
        assert!(stderr(&o).contains("at /boundary:"), "{}", stderr(&o));
    }
    let o = run_job(
        &write_job(dir.path(), r#"{"name": "bad", "pipeline": "slope", "model": "F1", "boundary": [1, "x"]}"#),
        dir.path(),
        &[],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("at /boundary/1:"));
    assert!(!dir.path().join("bad.json").exists());
}

#[test]
fn schema_violations_report_pointers() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "extra": 1}"#, "/extra"),
        (r#"{"name": "x", "pipeline": "sideways", "catalog": "F1"}"#, "/pipeline"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "beta": "1:0:1"}"#, "/beta"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "beta": "0:1:0"}"#, "/beta"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "c_rule": "2*c"}"#, "/c_rule"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "gamma": "half"}"#, "/gamma"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "z": [1, 2, 3]}"#, "/z"),
        (r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "points": [{"on_z": 1}]}"#, "/points/0/on_z"),
        (r#"{"name": "../x", "pipeline": "slope", "catalog": "F1"}"#, "/name"),
        (r#"{"name": "x", "pipeline": "slope"}"#, "/model"),
    ];
    for (body, pointer) in cases {
        let o = run_job(&write_job(dir.path(), body), dir.path(), &[]);
        assert_eq!(o.status.code(), Some(3), "{body}");
        assert!(stderr(&o).contains(&format!("at {pointer}:")), "{body}: {}", stderr(&o));
    }
}

#[test]
fn invalid_configurations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"name": "x", "pipeline": "slope", "catalog": "missing"}"#,
        r#"{"name": "x", "pipeline": "flop", "catalog": "F1"}"#,
        r#"{"name": "x", "pipeline": "maeda", "catalog": "P2"}"#,
        r#"{"name": "x", "pipeline": "slope", "catalog": "F1", "beta": "3"}"#,
        r#"{"name": "x", "pipeline": "maeda", "catalog": "P2-conic", "gamma": "1/2"}"#,
        r#"{"name": "x", "pipeline": "flop", "catalog": "cubic-line-1", "deltas": ["b", "b"]}"#,
    ] {
        let o = run_job(&write_job(dir.path(), body), dir.path(), &[]);
        assert_eq!(o.status.code(), Some(2), "{body}: {}", stderr(&o));
    }
}

#[test]
fn f1_boundary_slope_reports_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_job(&jobs_dir().join("f1_boundary_slope.json"), dir.path(), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("verdict: Unstable"));
    let r = report(dir.path(), "f1_boundary_slope");
    let t = &r["thresholds"][0];
    assert_eq!(t["exact"], Value::Null);
    assert_eq!(t["approx"], "0.732050807569");
    assert_eq!(r["beta_unstable_ranges"][0]["lo"]["exact"], "0");
    assert_eq!(r["window"], "(0, b+1)");
}

#[test]
fn cubic_line_flop_job_reduces_to_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_job(&jobs_dir().join("cubic_line1_flop.json"), dir.path(), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(dir.path(), "cubic_line1_flop");
    assert_eq!(r["reduced"], "-26*b^3+24*b^2");
    assert_eq!(r["thresholds"][0]["exact"], "12/13");
    assert_eq!(r["verdict"]["kind"], "Unstable");
}

#[test]
fn csv_keeps_exact_values_apart_from_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_job(&jobs_dir().join("cubic_line1_flop.json"), dir.path(), &["--grid", "1/2:1:1/4"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("cubic_line1_flop.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "beta,c,F,approx_F");
    // F(b, 3b) = 24b^2 - 26b^3
    assert_eq!(rows[1], "1/2,3/2,11/4,≈2.75");
    assert_eq!(rows[2], "3/4,9/4,81/32,≈2.53125");
    assert_eq!(rows[3], "1,3,-2,≈-2");
    for row in &rows[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 4);
        assert!(cells[..3].iter().all(|c| !c.contains('≈')));
        assert!(cells[3].starts_with('≈'));
    }
}

#[test]
fn csv_rounds_to_twelve_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(dir.path(), r#"{"name": "thirds", "pipeline": "slope", "catalog": "F1", "c_rule": "1/3"}"#);
    assert!(run_job(&job, dir.path(), &["--grid", "1/3:1/3:1"]).status.success());
    let csv = fs::read_to_string(dir.path().join("thirds.csv")).unwrap();
    // (6bc - 3c^2) L.C + (2c^3 - 3bc^2) C^2 with L.C = 2 + b, C^2 = 1 at b = c = 1/3
    assert_eq!(csv.lines().nth(1), Some("1/3,1/3,20/27,≈0.740740740741"));
}

#[test]
fn gamma_flag_reaches_the_maeda_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let job = jobs_dir().join("conic_maeda.json");
    assert!(run_job(&job, dir.path(), &[]).status.success());
    assert_eq!(report(dir.path(), "conic_maeda")["summary"]["gamma"], "1/4");
    assert!(run_job(&job, dir.path(), &["--gamma", "1/8"]).status.success());
    assert_eq!(report(dir.path(), "conic_maeda")["summary"]["gamma"], "1/8");
    assert_eq!(run_job(&job, dir.path(), &["--gamma", "3/4"]).status.code(), Some(2));
}

#[test]
fn dprime_override_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let job = jobs_dir().join("cubic_line1_flop.json");
    assert!(run_job(&job, dir.path(), &["--override-dprime", "0"]).status.success());
    let r = report(dir.path(), "cubic_line1_flop");
    assert!(r["certificates"].as_array().unwrap().iter().any(|c| c == "D'.C_i supplied by the caller"));
    // without the -3(1-b)(b-c)^2 term: 24b^2 - 26b^3 + 12b^2(1-b) at c = 3b
    assert_eq!(r["reduced"], "-38*b^3+36*b^2");
    assert_eq!(run_job(&job, dir.path(), &["--override-dprime", "0,1"]).status.code(), Some(2));
    assert_eq!(run_job(&job, dir.path(), &["--override-dprime", "one"]).status.code(), Some(3));
}

#[test]
fn alternate_catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat.json");
    fs::write(
        &cat,
        r#"{"entries": [{"name": "quartic-free", "description": "plane with a line", "model": "P2", "boundary": [1]}]}"#,
    )
    .unwrap();
    let o = bin().env("FLOPSLOPE_CATALOG", &cat).args(["catalog", "list"]).output().unwrap();
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = bin().env("FLOPSLOPE_CATALOG", &cat).args(["catalog", "show", "F1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cat, r#"{"entries": [{"name": 7}]}"#).unwrap();
    let o = bin().env("FLOPSLOPE_CATALOG", &cat).args(["catalog", "list"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("/entries/0/name"));
}

fn bundled_jobs() -> Vec<PathBuf> {
    let mut jobs: Vec<PathBuf> = fs::read_dir(jobs_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    jobs.sort();
    jobs
}

// Reports of the bundled jobs are compared byte for byte with tests/golden.
// Set FLOPSLOPE_BLESS=1 to rewrite the golden files.
#[test]
fn bundled_jobs_match_golden_reports() {
    let golden = crate_dir().join("tests/golden");
    let bless = std::env::var_os("FLOPSLOPE_BLESS").is_some();
    for job in bundled_jobs() {
        let name = job.file_stem().unwrap().to_str().unwrap().to_string();
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        assert!(run_job(&job, a.path(), &[]).status.success(), "{name}");
        assert!(run_job(&job, b.path(), &[]).status.success(), "{name}");
        for ext in ["json", "csv"] {
            let file = format!("{name}.{ext}");
            let first = fs::read(a.path().join(&file)).ok();
            assert_eq!(first, fs::read(b.path().join(&file)).ok(), "{file} differs between runs");
            let Some(bytes) = first else { continue };
            if bless {
                fs::create_dir_all(&golden).unwrap();
                fs::write(golden.join(&file), &bytes).unwrap();
            } else {
                let want = fs::read(golden.join(&file)).unwrap_or_else(|_| panic!("missing golden {file}"));
                assert!(want == bytes, "{file} differs from its golden copy");
            }
        }
    }
}

#[test]
fn bundled_jobs_are_canonical() {
    for job in bundled_jobs() {
        let text = fs::read_to_string(&job).unwrap();
        let spec = parse_job(&text).unwrap();
        let canon = to_canonical_json(&spec);
        assert_eq!(parse_job(&canon).unwrap(), spec);
        assert_eq!(to_canonical_json(&parse_job(&canon).unwrap()), canon);
    }
}

#[test]
fn verify_examples_table() {
    let o = bin().arg("verify-examples").output().unwrap();
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows.len() >= 10);
    assert!(rows[..rows.len() - 1].iter().all(|r| r.starts_with("PASS  ") || r.starts_with("FAIL  ")));
    assert!(rows.iter().any(|r| r.starts_with("PASS  cubic-line-reduced")));
    assert_eq!(o.status.success(), !text.contains("FAIL  "));
}

fn class() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..4)
}

fn text() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["b", "3*b", "1/2", "epsilon", "0:1:1/4", "b^2-1/3", "symbolic"]).prop_map(String::from)
}

fn job_spec() -> impl Strategy<Value = JobSpec> {
    let pipeline = prop::sample::select(vec![Pipeline::Slope, Pipeline::Flop, Pipeline::Maeda, Pipeline::Theorem]);
    let point = (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(a, b, t)| PointSpec {
        on_boundary: a,
        on_z: b,
        tangent_dir_equals_z: t,
    });
    let z = prop_oneof![Just(ZSpec::Keyword(ZKeyword::Boundary)), class().prop_map(ZSpec::Class)];
    (
        (
            "[a-z][a-z0-9_]{0,8}",
            pipeline,
            prop::option::of("(P2|F[0-3]|conic-points@[1-5])"),
            prop::option::of(class()),
        ),
        (
            prop::option::of(prop::collection::vec(point, 0..3)),
            prop::option::of(z),
            prop::option::of(prop::collection::vec(class(), 0..3)),
            prop::option::of(prop::collection::vec(class(), 0..2)),
        ),
        (
            prop::option::of(prop::collection::vec(text(), 0..3)),
            prop::option::of(prop::collection::vec(0i64..3, 0..3)),
            prop::option::of(text()),
            prop::option::of(text()),
            prop::option::of(text()),
        ),
    )
        .prop_map(
            |((name, pipeline, catalog, boundary), (points, z, mori, extra), (deltas, dprime, c_rule, beta, gamma))| {
                JobSpec {
                    name,
                    pipeline,
                    model: catalog.as_ref().filter(|c| !c.contains('@')).cloned(),
                    catalog,
                    boundary,
                    points,
                    z,
                    mori_generators: mori,
                    extra_generators: extra,
                    deltas,
                    dprime_override: dprime,
                    c_rule,
                    beta,
                    gamma,
                }
            },
        )
}

proptest! {
    #[test]
    fn job_round_trip_is_idempotent(spec in job_spec()) {
        let once = to_canonical_json(&spec);
        let parsed = parse_job(&once).unwrap();
        prop_assert_eq!(&parsed, &spec);
        prop_assert_eq!(to_canonical_json(&parsed), once);
    }
}
