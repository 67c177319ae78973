//! The four subcommands as library functions returning data; `main` only
//! does argument parsing, file output and exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use osserman_core::format::{parse_spec, parse_tensor, AlgebraicSpec, MetricSpec, SpecFile, TensorFile};
use osserman_core::geometry::{
    compare_with_model, raised_index_violations, random_point, reduced_formula_mismatches,
    CurvatureField, DEFAULT_POINT_BOUND,
};
use osserman_core::jordan::{survey, Site, Status};
use osserman_core::linalg::{self, determinant};
use osserman_core::{
    christoffel_first, constant_curvature_tensor, example_metric, model_curvature,
    model_inner_product, realizing_christoffel_closed_form, realizing_metric,
    validate_curvature_symmetries, Causal, CurvatureTensor, Error, InnerProduct, JordanPartition,
    PolynomialMetric, RatMatrix, Rational,
};

use crate::config::{Family, RunConfig};
use crate::error::{CliError, Result};
use crate::report::{
    signature_row, verdict_row, witness_vector, ChristoffelRow, Expectations, PointRow, Report,
    SymmetryRow, MAX_LISTED,
};

/// A file to write: `None` means standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub contents: String,
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("spec serializes");
    s.push('\n');
    s
}

fn check_s(config: &RunConfig) -> Result<usize> {
    if config.s < 2 {
        return Err(CliError::InvalidConfig(format!("--s must be at least 2, got {}", config.s)));
    }
    Ok(config.s)
}

/// The canonical algebraic model: `g_ab = 0`, `R1 = 0`, `R2` = constant curvature.
pub fn canonical_model(s: usize) -> Result<(InnerProduct, CurvatureTensor)> {
    let r = model_curvature(&CurvatureTensor::zero(s), &constant_curvature_tensor(s))?;
    let g = model_inner_product(s, &RatMatrix::zeros(s, s))?;
    Ok((g, r))
}

/// `<stem>.r2.json` next to `path`.
pub fn r2_companion(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.r2.json"))
}

pub fn cmd_gen(config: &RunConfig) -> Result<Vec<Output>> {
    match config.resolved_family() {
        Family::Lemma21 => {
            let s = check_s(config)?;
            let (g, r) = canonical_model(s)?;
            Ok(vec![Output { path: config.out.clone(), contents: to_json(&AlgebraicSpec::new(s, &g, &r)) }])
        }
        Family::Lemma31 => {
            let s = check_s(config)?;
            let r2 = constant_curvature_tensor(s);
            let metric = realizing_metric(s, &r2)?;
            let mut out = vec![Output { path: config.out.clone(), contents: to_json(&MetricSpec::from(&metric)) }];
            if let Some(p) = &config.out {
                out.push(Output { path: Some(r2_companion(p)), contents: to_json(&TensorFile::from(&r2)) });
            }
            Ok(out)
        }
        Family::Remark32 => Ok(vec![Output {
            path: config.out.clone(),
            contents: to_json(&MetricSpec::from(&example_metric())),
        }]),
        Family::File => Err(CliError::InvalidConfig("gen needs a generated family, not `file`".into())),
    }
}

enum Instance {
    Algebraic { s: usize, g: InnerProduct, r: CurvatureTensor },
    Metric { metric: PolynomialMetric },
}

fn load_instance(config: &RunConfig) -> Result<Instance> {
    match config.resolved_family() {
        Family::Lemma21 => {
            let s = check_s(config)?;
            let (g, r) = canonical_model(s)?;
            Ok(Instance::Algebraic { s, g, r })
        }
        Family::Lemma31 => {
            let s = check_s(config)?;
            Ok(Instance::Metric { metric: realizing_metric(s, &constant_curvature_tensor(s))? })
        }
        Family::Remark32 => Ok(Instance::Metric { metric: example_metric() }),
        Family::File => {
            let path = config
                .inputs
                .first()
                .ok_or_else(|| CliError::InvalidConfig("family `file` needs --in".into()))?;
            match parse_spec(&read_file(path)?)? {
                SpecFile::Algebraic(spec) => {
                    let (g, r) = spec.build()?;
                    if g.dim() != 3 * spec.s {
                        return Err(Error::Parse(format!("dimension {} is not 3s for s = {}", g.dim(), spec.s)).into());
                    }
                    Ok(Instance::Algebraic { s: spec.s, g, r })
                }
                SpecFile::Metric(spec) => Ok(Instance::Metric { metric: spec.build()? }),
            }
        }
    }
}

fn symmetry_row(violations: &[String], total: usize) -> SymmetryRow {
    SymmetryRow {
        passed: total == 0,
        total_violations: total,
        violations: violations.iter().take(MAX_LISTED).cloned().collect(),
    }
}

/// Jordan partition `(s−1)×[3] + 3×[1]`.
pub fn expected_spacelike_partition(s: usize) -> JordanPartition {
    let mut blocks = vec![3; s - 1];
    blocks.extend([1, 1, 1]);
    JordanPartition(blocks)
}

pub fn cmd_verify(config: &RunConfig) -> Result<Report> {
    if config.samples < 2 {
        return Err(CliError::InvalidConfig("--samples must be at least 2".into()));
    }
    if config.bound < 1 {
        return Err(CliError::InvalidConfig("--bound must be at least 1".into()));
    }
    let mut report = Report { config: Some(config.clone()), ..Report::default() };
    let instance = load_instance(config)?;
    let (s, sites) = match instance {
        Instance::Algebraic { s, g, r } => {
            let v = validate_curvature_symmetries(&r);
            let listed: Vec<String> = v.iter().map(ToString::to_string).collect();
            report.symmetry = Some(symmetry_row(&listed, v.len()));
            report.signatures.push(signature_row(0, None, g.signature(), determinant(g.gram())?));
            (s, vec![Site::new(&r, &g)?])
        }
        Instance::Metric { metric } => {
            if config.points == 0 {
                return Err(CliError::InvalidConfig("--points must be at least 1".into()));
            }
            let field = CurvatureField::new(&metric);
            let chart = metric.chart();
            let mut sites = Vec::new();
            let mut listed = Vec::new();
            let mut total = 0;
            for k in 0..config.points {
                let p = random_point(chart, config.seed, k as u64, DEFAULT_POINT_BOUND);
                let here = field.at(&p)?;
                let v = validate_curvature_symmetries(&here.tensor);
                total += v.len();
                listed.extend(v.iter().map(|x| format!("point {k}: {x}")));
                let sig = linalg::sylvester_signature(&here.gram)?;
                report.signatures.push(signature_row(k, Some(p), sig, determinant(&here.gram)?));
                sites.push(here.site()?);
                report.timing.curvature_points += 1;
            }
            report.symmetry = Some(symmetry_row(&listed, total));
            (chart.s(), sites)
        }
    };
    let base_points: Vec<_> = sites.iter().map(|x| x.base_point.clone()).collect();
    for causal in config.causal.types() {
        match survey(&sites, causal, config.samples, config.seed, config.bound) {
            Ok(sv) => {
                report.timing.jacobi_evaluations += sv.evaluations.len();
                let verdict = sv.verdict();
                let nil = sv.nilpotency();
                report.verdicts.push(verdict_row(s, sites.len(), &verdict, &nil, &sv.evaluations));
                if let Some((a, b)) = &verdict.witness {
                    report.witnesses.push(crate::report::WitnessRecord {
                        causal,
                        first: witness_vector(a, &base_points),
                        second: witness_vector(b, &base_points),
                    });
                }
            }
            Err(e @ (Error::NonNilpotent { .. } | Error::SamplingExhausted { .. })) => {
                report.errors.push(format!("{causal}: {e}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if config.expect_paper {
        report.expectations = Some(expected_profile(s, &report));
    }
    Ok(report)
}

/// Spacelike constant with partition `(s−1)×[3] + 3×[1]` and order 3,
/// timelike non-constant, identities intact, signature `(2s, s)`.
fn expected_profile(s: usize, report: &Report) -> Expectations {
    let mut failures = Vec::new();
    if let Some(sym) = &report.symmetry {
        if !sym.passed {
            failures.push(format!("curvature identities fail ({} violations)", sym.total_violations));
        }
    }
    for row in &report.signatures {
        if (row.negatives, row.positives, row.zeros) != (2 * s, s, 0) {
            failures.push(format!(
                "site {}: signature ({},{}) with {} null, expected ({},{})",
                row.site, row.negatives, row.positives, row.zeros, 2 * s, s
            ));
        }
    }
    let want = expected_spacelike_partition(s).to_string();
    for v in &report.verdicts {
        match v.causal {
            Causal::Spacelike => {
                if v.status != Status::Constant || v.partition.as_deref() != Some(want.as_str()) {
                    failures.push(format!(
                        "spacelike: {} with partition {}, expected constant {want}",
                        v.status,
                        v.partition.as_deref().unwrap_or("-")
                    ));
                }
                if v.nilpotency_orders.keys().any(|&o| o != 3) {
                    failures.push(format!("spacelike nilpotency orders {:?}, expected all 3", v.nilpotency_orders));
                }
            }
            Causal::Timelike => {
                if v.status != Status::NonConstant {
                    failures.push(format!("timelike: {}, expected non-constant", v.status));
                }
            }
        }
    }
    failures.extend(report.errors.iter().cloned());
    Expectations { profile: "spacelike-jordan-osserman-order-3/not-timelike".into(), met: failures.is_empty(), failures }
}

pub fn cmd_realize(config: &RunConfig) -> Result<Report> {
    if config.points == 0 {
        return Err(CliError::InvalidConfig("--points must be at least 1".into()));
    }
    let mut report = Report { config: Some(config.clone()), ..Report::default() };
    // (metric, r2, whether the closed-form symbols apply)
    let (metric, r2, closed_form) = match config.resolved_family() {
        Family::Lemma31 => {
            let s = check_s(config)?;
            let r2 = constant_curvature_tensor(s);
            (realizing_metric(s, &r2)?, r2, true)
        }
        Family::Remark32 => (example_metric(), constant_curvature_tensor(2), false),
        Family::File => {
            let [metric_path, r2_path] = config.inputs.as_slice() else {
                return Err(CliError::InvalidConfig("realize --in needs a metric file and an R2 tensor file".into()));
            };
            let metric = match parse_spec(&read_file(metric_path)?)? {
                SpecFile::Metric(spec) => spec.build()?,
                SpecFile::Algebraic(_) => {
                    return Err(Error::Parse(format!("{} is not a metric spec", metric_path.display())).into())
                }
            };
            let r2 = parse_tensor(&read_file(r2_path)?)?;
            (metric, r2, true)
        }
        Family::Lemma21 => {
            return Err(CliError::InvalidConfig("realize works on metric families (lemma31, remark32, file)".into()))
        }
    };
    let chart = metric.chart();
    let s = chart.s();
    if r2.dim() != s {
        return Err(Error::Parse(format!("R2 has dimension {}, metric has s = {s}", r2.dim())).into());
    }
    if closed_form {
        let row = match realizing_christoffel_closed_form(s, &r2) {
            Ok(expected) => {
                let mismatches = christoffel_first(&metric).mismatches(&expected);
                ChristoffelRow { passed: mismatches.is_empty(), mismatches: mismatches.into_iter().take(MAX_LISTED).collect() }
            }
            Err(Error::InvalidInput(msg)) => {
                report.errors.push(msg);
                ChristoffelRow { passed: false, mismatches: Vec::new() }
            }
            Err(e) => return Err(e.into()),
        };
        report.christoffel = Some(row);
    }
    let field = CurvatureField::new(&metric);
    for k in 0..config.points {
        let p = random_point(chart, config.seed, k as u64, DEFAULT_POINT_BOUND);
        let data = field.point_data(&p)?;
        let here = field.at(&p)?;
        report.timing.curvature_points += 1;
        let check = compare_with_model(&here, chart, &r2);
        let raised = raised_index_violations(&data, chart).len();
        let reduced = reduced_formula_mismatches(&field, &data).len();
        let sig = linalg::sylvester_signature(&here.gram)?;
        report.signatures.push(signature_row(k, Some(p.clone()), sig, determinant(&here.gram)?));
        report.realization.push(PointRow {
            passed: check.passed() && raised == 0 && reduced == 0,
            point: p,
            pattern_mismatches: check.mismatches.into_iter().take(MAX_LISTED).collect(),
            symmetry_violations: check.symmetry_violations.len(),
            r1_violations: check.r1_violations.len(),
            raised_index_violations: raised,
            reduced_formula_mismatches: reduced,
        });
    }
    let mut failures: Vec<String> = report
        .realization
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.passed)
        .map(|(k, p)| format!("point {k} {:?} fails", p.point.iter().map(Rational::to_string).collect::<Vec<_>>()))
        .collect();
    if report.christoffel.as_ref().is_some_and(|c| !c.passed) {
        failures.push("Christoffel symbols differ from the closed form".into());
    }
    report.expectations = Some(Expectations {
        profile: "realization".into(),
        met: failures.is_empty() && report.errors.is_empty(),
        failures,
    });
    Ok(report)
}

pub fn cmd_report(config: &RunConfig, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<String> {
    let text = match config.inputs.first() {
        Some(p) => read_file(p)?,
        None => stdin().map_err(|source| CliError::Io { path: PathBuf::from("<stdin>"), source })?,
    };
    let report: Report = if text.trim().is_empty() { Report::default() } else { serde_json::from_str(&text)? };
    Ok(report.render(config.format))
}
