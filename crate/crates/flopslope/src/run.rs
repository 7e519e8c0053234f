//! Executes a job and renders its report bundle.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use flopslope_core::analyzer::{
    flop_verdict, maeda_destabilize, maeda_epsilon, sample_at, theorem_check, CRule, StabilityReport, TheoremOptions,
    Verdict,
};
use flopslope_core::dnc::{slope_verdict_with, BetaSpec, DNCConfig};
use flopslope_core::exactmath::{to_decimal, AlgebraicInterval, AlgebraicRoot, Endpoint, Interval, Rational};
use flopslope_core::flop::FlopSpec;

use crate::catalog::Catalog;
use crate::error::{push_token, CliError, Result};
use crate::job::{
    parse_beta, parse_c_rule, parse_poly, parse_rational_at, to_canonical_json, BetaMode, Grid, JobSpec, Pipeline,
};
use crate::surface::{build, Built, SurfaceFields};

/// Significant digits of the approximate CSV column.
pub const CSV_DIGITS: usize = 12;

/// Flags of `run` that override job keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub grid: Option<String>,
    pub gamma: Option<String>,
    pub dprime: Option<Vec<i64>>,
}

impl Overrides {
    pub fn apply(&self, job: &mut JobSpec) {
        if let Some(g) = &self.grid {
            job.beta = Some(g.clone());
        }
        if let Some(g) = &self.gamma {
            job.gamma = Some(g.clone());
        }
        if let Some(d) = &self.dprime {
            job.dprime_override = Some(d.clone());
        }
    }
}

fn pick<T: Clone>(own: &Option<T>, inherited: Option<T>) -> Option<T> {
    own.clone().or(inherited)
}

/// Surface keys of a job, filled from its catalog entry where absent.
pub fn surface_fields(job: &JobSpec, catalog: &Catalog) -> Result<(SurfaceFields, Option<Value>)> {
    let (base, entry) = match &job.catalog {
        Some(name) => {
            let m = catalog.lookup(name)?;
            let entry = serde_json::to_value(&m.entry).expect("entries serialize");
            (Some(m.fields), Some(entry))
        }
        None => (None, None),
    };
    let missing =
        |key: &str| CliError::parse(format!("/{key}"), format!("`{key}` is required without a catalog entry"));
    let model = match (&job.model, &base) {
        (Some(m), _) => m.clone(),
        (None, Some(b)) => b.model.clone(),
        (None, None) => return Err(missing("model")),
    };
    let boundary = match (&job.boundary, &base) {
        (Some(v), _) => v.clone(),
        (None, Some(b)) => b.boundary.clone(),
        (None, None) => return Err(missing("boundary")),
    };
    let fields = SurfaceFields {
        model,
        boundary,
        points: pick(&job.points, base.as_ref().map(|b| b.points.clone())).unwrap_or_default(),
        z: pick(&job.z, base.as_ref().and_then(|b| b.z.clone())),
        mori_generators: pick(&job.mori_generators, base.as_ref().and_then(|b| b.mori_generators.clone())),
        extra_generators: pick(&job.extra_generators, base.as_ref().and_then(|b| b.extra_generators.clone())),
    };
    Ok((fields, entry))
}

/// A job with its inputs parsed into core types.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub job: JobSpec,
    pub built: Built,
    pub rule: CRule,
    pub beta: BetaMode,
    pub gamma: Option<Rational>,
    /// SHA-256 of the canonical job and the catalog entry it names.
    pub input_hash: String,
}

pub fn resolve(job: &JobSpec, catalog: &Catalog) -> Result<Resolved> {
    let rule = parse_c_rule(job.c_rule.as_deref())?;
    let beta = parse_beta(job.beta.as_deref())?;
    let gamma = job.gamma.as_deref().map(|g| parse_rational_at(g, "/gamma")).transpose()?;
    if let Some(ds) = &job.deltas {
        for (i, d) in ds.iter().enumerate() {
            parse_poly(d, &push_token("/deltas", i))?;
        }
    }
    let (fields, entry) = surface_fields(job, catalog)?;
    let built = build(&fields)?;
    let mut h = Sha256::new();
    h.update(to_canonical_json(job).as_bytes());
    if let Some(e) = &entry {
        h.update(to_canonical_json(e).as_bytes());
    }
    let input_hash = format!("{:x}", h.finalize());
    Ok(Resolved { job: job.clone(), built, rule, beta, gamma, input_hash })
}

fn beta_spec(mode: &BetaMode) -> BetaSpec {
    match mode {
        BetaMode::Fixed(b) => BetaSpec::Fixed(b.clone()),
        BetaMode::Symbolic | BetaMode::Grid(_) => BetaSpec::Symbolic,
    }
}

fn config(r: &Resolved) -> Result<DNCConfig> {
    let pair = r.built.pair.clone();
    Ok(if r.built.z_is_boundary { DNCConfig::boundary(pair)? } else { DNCConfig::along(pair, r.built.z.clone())? })
}

fn flop_spec(r: &Resolved, cfg: &DNCConfig) -> Result<FlopSpec> {
    let mut spec = FlopSpec::derive(cfg)?;
    if let Some(ds) = &r.job.deltas {
        let polys =
            ds.iter().enumerate().map(|(i, d)| parse_poly(d, &push_token("/deltas", i))).collect::<Result<_>>()?;
        spec = spec.with_deltas(polys)?;
    }
    if let Some(d) = &r.job.dprime_override {
        spec = spec.with_d_prime(d.iter().map(|&v| Rational::from_integer(v.into())).collect())?;
    }
    Ok(spec)
}

fn fixed_beta_unsupported(r: &Resolved) -> Result<()> {
    match r.beta {
        BetaMode::Fixed(_) => Err(CliError::config(format!(
            "the {:?} pipeline ranges over the whole ample interval; a fixed beta is not supported",
            r.job.pipeline
        ))),
        _ => Ok(()),
    }
}

fn no_c_rule(r: &Resolved) -> Result<()> {
    match &r.job.c_rule {
        Some(c) if c != "epsilon" => Err(CliError::config(format!(
            "the {:?} pipeline fixes c = gamma; c_rule `{c}` does not apply",
            r.job.pipeline
        ))),
        _ => Ok(()),
    }
}

pub fn execute(r: &Resolved) -> Result<StabilityReport> {
    let beta = beta_spec(&r.beta);
    let report = match r.job.pipeline {
        Pipeline::Slope => slope_verdict_with(&config(r)?, &beta, r.rule.clone())?,
        Pipeline::Flop => {
            let cfg = config(r)?;
            let spec = flop_spec(r, &cfg)?;
            flop_verdict(&cfg, &spec, r.rule.clone(), &beta)?
        }
        Pipeline::Maeda => {
            fixed_beta_unsupported(r)?;
            no_c_rule(r)?;
            let pair = &r.built.pair;
            let gamma = match &r.gamma {
                Some(g) => g.clone(),
                None => maeda_epsilon(pair)? / Rational::from_integer(2.into()),
            };
            maeda_destabilize(pair, &gamma)?
        }
        Pipeline::Theorem => {
            fixed_beta_unsupported(r)?;
            no_c_rule(r)?;
            let flop_z = (!r.built.z_is_boundary).then(|| r.built.z.clone());
            theorem_check(&r.built.pair, &TheoremOptions { gamma: r.gamma.clone(), flop_z })?
        }
    };
    Ok(report)
}

fn interval_json(i: &Interval) -> Value {
    json!({
        "lo": i.lo.to_string(),
        "hi": i.hi.to_string(),
        "lo_open": i.lo_open,
        "hi_open": i.hi_open,
    })
}

fn root_json(r: &AlgebraicRoot) -> Value {
    json!({
        "exact": r.exact.as_ref().map(|e| e.to_string()),
        "defining_polynomial": r.defining_polynomial.to_string(),
        "isolating_interval": interval_json(&r.isolating_interval),
        "approx": r.approx(CSV_DIGITS),
    })
}

fn endpoint_json(e: &Endpoint) -> Value {
    match e {
        Endpoint::Exact(x) => json!({ "exact": x.to_string() }),
        Endpoint::Root(r) => root_json(r),
    }
}

fn range_json(r: &AlgebraicInterval) -> Value {
    json!({
        "lo": endpoint_json(&r.lo),
        "hi": endpoint_json(&r.hi),
        "lo_open": r.lo_open,
        "hi_open": r.hi_open,
        "display": display_range(r),
    })
}

fn display_range(r: &AlgebraicInterval) -> String {
    let show = |e: &Endpoint| match e {
        Endpoint::Exact(x) => x.to_string(),
        Endpoint::Root(root) => format!("root of {} near {}", root.defining_polynomial, root.approx(CSV_DIGITS)),
    };
    format!(
        "{}{}, {}{}",
        if r.lo_open { "(" } else { "[" },
        show(&r.lo),
        show(&r.hi),
        if r.hi_open { ")" } else { "]" }
    )
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Unstable(w) => json!({
            "kind": v.tag(),
            "witness": { "beta": w.beta.to_string(), "c": w.c.to_string(), "value": w.value.to_string() },
        }),
        Verdict::NotDestabilized(reason) | Verdict::InvalidConfig(reason) => {
            json!({ "kind": v.tag(), "reason": reason })
        }
    }
}

/// The report as a JSON value with exact `p/q` strings throughout.
pub fn report_json(r: &Resolved, report: &StabilityReport) -> Value {
    let summary: Map<String, Value> =
        report.summary.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "job": r.job.name,
        "pipeline": report.pipeline,
        "summary": summary,
        "futaki": {
            "polynomial": report.futaki.value.to_string(),
            "branch": report.futaki.branch.to_string(),
            "source": report.futaki.provenance.to_string(),
        },
        "c_rule": report.c_rule.to_string(),
        "window": report.window.as_ref().map(|w| w.to_string()),
        "reduced": report.reduced.as_ref().map(|p| p.to_string()),
        "verdict": verdict_json(&report.verdict),
        "thresholds": report.thresholds.iter().map(root_json).collect::<Vec<_>>(),
        "beta_unstable_ranges": report.beta_unstable_ranges.iter().map(range_json).collect::<Vec<_>>(),
        "small_beta": report.small_beta.as_ref().map(|s| json!({
            "limit": s.limit.to_string(),
            "beta0": s.beta0.as_ref().map(|b| b.to_string()),
        })),
        "closed_form": report.closed_form.as_ref().map(|p| p.to_string()),
        "bound": report.bound.as_ref().map(|p| p.to_string()),
        "certificates": report.certificates,
        "provenance": {
            "engine": format!("flopslope-core {}", flopslope_core::VERSION),
            "input_sha256": r.input_hash,
        },
    })
}

/// `beta,c,F,approx_F` rows for the grid points inside the report's domain.
pub fn samples_csv(report: &StabilityReport, grid: &Grid) -> String {
    let mut out = String::from("beta,c,F,approx_F\n");
    for b in grid.points() {
        if let Some((c, f)) = sample_at(report, &b) {
            out.push_str(&format!("{b},{c},{f},≈{}\n", to_decimal(&f, CSV_DIGITS)));
        }
    }
    out
}

/// Rendered output files of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub report: String,
    pub samples: Option<String>,
}

pub fn render(r: &Resolved, report: &StabilityReport) -> Bundle {
    let mut text = serde_json::to_string_pretty(&report_json(r, report)).expect("reports serialize");
    text.push('\n');
    let samples = match &r.beta {
        BetaMode::Grid(g) => Some(samples_csv(report, g)),
        _ => None,
    };
    Bundle { report: text, samples }
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    use std::io::Write;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::io(format!("creating a file in {}", dir.display()), e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    tmp.persist(path).map_err(|e| CliError::io(format!("renaming onto {}", path.display()), e.error))?;
    Ok(())
}

/// Output of [`run_file`]: the verdict tag and the files written.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub verdict: &'static str,
    pub files: Vec<PathBuf>,
}

pub fn run_file(job_path: &Path, out: &Path, overrides: &Overrides, catalog: &Catalog) -> Result<RunOutcome> {
    let text =
        std::fs::read_to_string(job_path).map_err(|e| CliError::io(format!("reading {}", job_path.display()), e))?;
    let mut job = crate::job::parse_job(&text)?;
    overrides.apply(&mut job);
    let resolved = resolve(&job, catalog)?;
    let report = execute(&resolved)?;
    let bundle = render(&resolved, &report);
    std::fs::create_dir_all(out).map_err(|e| CliError::io(format!("creating {}", out.display()), e))?;
    let mut files = vec![out.join(format!("{}.json", job.name))];
    write_atomic(&files[0], &bundle.report)?;
    if let Some(csv) = &bundle.samples {
        let p = out.join(format!("{}.csv", job.name));
        write_atomic(&p, csv)?;
        files.push(p);
    }
    Ok(RunOutcome { verdict: report.verdict.tag(), files })
}
