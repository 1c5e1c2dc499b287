use std::fmt::Write as _;
use std::path::Path;

use qangmom::angmom::{build_angular, run_suite, DeformationSpec, Flavor, IdentityReport, Status};
use qangmom::expect::{
    commutator_expectation_scan, expectation, gauge_check, ExpectationResult, GaugeReport, Quadrature, ScanPair,
    ScanReport,
};
use qangmom::opcalc::parse_expr;
use qangmom::qalg::{Assignment, Symbol};
use qangmom::spectral::{solve_perturbation_with_nodes, PerturbationSolution, SeparableState};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};
use crate::CliError;

/// Gauge deviations above this fail `expect`.
const GAUGE_TOL: f64 = 1e-12;
/// Accepted range for the fitted commutator scaling exponent.
const EXPONENT_RANGE: (f64, f64) = (1.8, 2.2);

pub struct Outcome {
    pub stdout: String,
    pub failure: Option<String>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let command = cfg.command.expect("command is always set from the subcommand");
    let format = cfg.format(command);
    let (files, stdout, failure) = match command {
        Command::VerifyAlgebra => verify_algebra(cfg, format)?,
        Command::Perturb => perturb(cfg, format)?,
        Command::Expect => expect(cfg, format)?,
        Command::Parse => parse(cfg, format)?,
    };
    if let Some(dir) = &cfg.out {
        write_files(dir, &files)?;
    }
    Ok(Outcome { stdout, failure })
}

type Rendered = (Vec<(String, String)>, String, Option<String>);

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text<T: Serialize>(header: &[&str], rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Usage(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn pick(format: Format, json: &str, md: &str, csv: &str) -> String {
    match format {
        Format::Json => json.to_string(),
        Format::Md => md.to_string(),
        Format::Csv => csv.to_string(),
    }
}

fn flavor(cfg: &RunConfig) -> Result<Flavor, CliError> {
    Flavor::from_name(cfg.flavor())
        .ok_or_else(|| CliError::Usage(format!("unknown flavor `{}`", cfg.flavor())))
}

fn spec(cfg: &RunConfig) -> Result<DeformationSpec, CliError> {
    DeformationSpec::parse(flavor(cfg)?, cfg.s(), cfg.w()).map_err(|e| CliError::Usage(e.to_string()))
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::ExactMatch => "exact_match",
        Status::Mismatch => "mismatch",
        Status::Skipped => "skipped",
    }
}

#[derive(Serialize)]
struct SuiteSummaryRow<'a> {
    identity_id: &'a str,
    status: &'static str,
    checks: usize,
    report_only_mismatches: String,
}

fn verify_algebra(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let spec = spec(cfg)?;
    let reports = run_suite(&spec);
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| r.status == Status::Mismatch)
        .map(|r| r.identity_id.as_str())
        .collect();

    let md = markdown_suite(&spec, &reports);
    let rows = reports.iter().map(|r| SuiteSummaryRow {
        identity_id: r.identity_id.as_str(),
        status: status_str(r.status),
        checks: r.checks.len(),
        report_only_mismatches: r.reported_mismatches().map(|c| c.name.as_str()).collect::<Vec<_>>().join("; "),
    });
    let csv = csv_text(&["identity_id", "status", "checks", "report_only_mismatches"], rows)?;
    let js = json(&reports);
    let stdout = pick(format, &js, &md, &csv);
    let failure = (!failed.is_empty()).then(|| format!("must-pass checks failed in {}", failed.join(", ")));
    let files = vec![
        ("identities.json".into(), js),
        ("identities.md".into(), md),
        ("identities.csv".into(), csv),
    ];
    Ok((files, stdout, failure))
}

fn markdown_suite(spec: &DeformationSpec, reports: &[IdentityReport]) -> String {
    let mut md = String::new();
    let s = spec.s().each_ref().map(|e| e.to_string()).join(", ");
    let w = spec.w().each_ref().map(|e| e.to_string()).join(", ");
    let _ = writeln!(md, "# Identity suite\n\nflavor: {}, s = ({s}), w = ({w})\n", spec.flavor.name());
    let _ = writeln!(md, "| identity | status | checks | report-only mismatches |");
    let _ = writeln!(md, "|---|---|---|---|");
    for r in reports {
        let mism: Vec<&str> = r.reported_mismatches().map(|c| c.name.as_str()).collect();
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} |",
            r.identity_id,
            status_str(r.status),
            r.checks.len(),
            if mism.is_empty() { "-".to_string() } else { mism.join("; ") }
        );
    }
    md.push('\n');
    for r in reports {
        let _ = writeln!(md, "## {}\n\n{}\n", r.identity_id, r.description);
        if let Some(note) = &r.note {
            let _ = writeln!(md, "note: {note}\n");
        }
        for c in &r.checks {
            let kind = if c.must_pass { "must-pass" } else { "report-only" };
            let _ = writeln!(md, "- {} ({kind}): {}", c.name, status_str(c.status));
        }
        md.push('\n');
    }
    md
}

#[derive(Serialize)]
struct CRow {
    lambda_prime: i32,
    #[serde(rename = "C")]
    c: f64,
}

#[derive(Serialize)]
struct PerturbJson<'a> {
    lambda: i32,
    m: i32,
    k: f64,
    kappa: f64,
    residual_norm: f64,
    tail_norm: f64,
    basis: BasisMeta,
    c: Vec<CRow>,
    note: &'a str,
}

#[derive(Serialize)]
struct BasisMeta {
    family: &'static str,
    m: i32,
    min_degree: i32,
    max_degree: i32,
    nodes: usize,
}

fn perturb(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let sol: PerturbationSolution =
        solve_perturbation_with_nodes(cfg.lambda(), cfg.m(), cfg.k(), cfg.lmax(), cfg.nodes())
            .map_err(|e| CliError::Usage(e.to_string()))?;
    let rows: Vec<CRow> = sol.c.iter().map(|(l, c)| CRow { lambda_prime: *l, c: *c }).collect();
    let csv = csv_text(&["lambda_prime", "C"], rows.iter().map(|r| (r.lambda_prime, r.c)))?;
    let mut md = String::new();
    let _ = writeln!(
        md,
        "# Perturbation solution\n\nlambda = {}, m = {}, k = {}, lmax = {}, nodes = {}\n\nkappa = {}\n\nresidual_norm = {:.3e}\n",
        sol.lambda, sol.m, sol.k, sol.max_degree, sol.nodes, sol.kappa, sol.residual_norm
    );
    let _ = writeln!(md, "| lambda' | C |\n|---|---|");
    for r in &rows {
        let _ = writeln!(md, "| {} | {} |", r.lambda_prime, r.c);
    }
    let js = json(&PerturbJson {
        lambda: sol.lambda,
        m: sol.m,
        k: sol.k,
        kappa: sol.kappa,
        residual_norm: sol.residual_norm,
        tail_norm: sol.tail_norm,
        basis: BasisMeta {
            family: "associated_legendre_condon_shortley",
            m: sol.m,
            min_degree: sol.m.abs(),
            max_degree: sol.max_degree,
            nodes: sol.nodes,
        },
        c: rows,
        note: "integer lambda only; half-integer degrees are not supported",
    });
    let stdout = pick(format, &js, &md, &csv);
    let files = vec![("perturbation.csv".into(), csv), ("perturbation.json".into(), js)];
    Ok((files, stdout, None))
}

#[derive(Serialize)]
struct ExpectRow {
    operator_id: String,
    state_id: String,
    epsilon: f64,
    value: f64,
    error_estimate: f64,
}

#[derive(Serialize)]
struct ExpectJson {
    measure: String,
    phase_discontinuity: f64,
    gauge: GaugeReport,
    gauge_pass: bool,
    rows: Vec<ExpectRow>,
    scan: Option<ScanReport>,
}

fn state_id(s: &SeparableState) -> String {
    let f: Vec<String> = s.coeffs.iter().map(|c| c.to_string()).collect();
    format!("k={},m={},f=[{}],sigma={}", s.k, s.m, f.join(","), s.envelope.unwrap_or(0.0))
}

fn row(r: &ExpectationResult) -> ExpectRow {
    ExpectRow {
        operator_id: r.operator_id.clone(),
        state_id: state_id(&r.state),
        epsilon: r.epsilon,
        value: r.value,
        error_estimate: r.error_estimate,
    }
}

fn expect(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let usage = |e: qangmom::expect::ExpectError| CliError::Usage(e.to_string());
    let spec = spec(cfg)?.with_flavor(Flavor::Complex);
    let state = match &cfg.coeffs {
        Some(c) => SeparableState::new(cfg.k(), cfg.m(), cfg.eps(), c.clone()),
        None => SeparableState::legendre(cfg.lambda(), cfg.m(), cfg.k(), cfg.eps())
            .map_err(|e| CliError::Usage(e.to_string()))?,
    }
    .with_envelope(cfg.sigma());
    let assignment = Assignment::new()
        .with(Symbol::HBAR, cfg.hbar())
        .with(Symbol::EPS, cfg.eps())
        .with(Symbol::EPS1, cfg.eps1())
        .with(Symbol::EPS2, cfg.eps2())
        .with(Symbol::EPS3, cfg.eps3())
        .with(Symbol::DELTA, 0.0);
    let quad = Quadrature::default();

    let gauge = gauge_check(&spec, &state, &assignment, &quad).map_err(usage)?;
    let gauge_pass = gauge.max_deviation <= GAUGE_TOL;
    let l = build_angular(&spec);
    let mut results = Vec::new();
    for (a, la) in l.iter().enumerate() {
        results.push(expectation(&format!("ell{}", a + 1), la, &state, &assignment, &quad).map_err(usage)?);
    }
    let first = &results[0];
    let scan = match &cfg.scan {
        Some(eps) => {
            let pair = ScanPair::parse(cfg.pair())
                .ok_or_else(|| CliError::Usage(format!("unknown pair `{}`", cfg.pair())))?;
            Some(commutator_expectation_scan(pair, &state, eps, cfg.hbar(), &quad).map_err(usage)?)
        }
        None => None,
    };

    let mut failures = Vec::new();
    if !gauge_pass {
        failures.push(format!("z-vs-r deviation {:.3e}", gauge.max_deviation));
    }
    if let Some(e) = scan.as_ref().and_then(|s| s.exponent) {
        if !(EXPONENT_RANGE.0..=EXPONENT_RANGE.1).contains(&e) {
            failures.push(format!("scan exponent {e:.4} outside [{}, {}]", EXPONENT_RANGE.0, EXPONENT_RANGE.1));
        }
    }

    let mut md = String::new();
    let _ = writeln!(md, "# Expectation checks\n\nstate: {}\n\nmeasure: {}\n", state_id(&state), first.measure);
    let _ = writeln!(md, "phase discontinuity across phi = 0: {:.6e}\n", first.phase_discontinuity);
    let _ = writeln!(
        md,
        "z-vs-r gauge check: {} (max deviation {:.3e})\n",
        if gauge_pass { "pass" } else { "FAIL" },
        gauge.max_deviation
    );
    let _ = writeln!(md, "| operator | value | error estimate |\n|---|---|---|");
    for r in &results {
        let _ = writeln!(md, "| {} | {} | {:.3e} |", r.operator_id, r.value, r.error_estimate);
    }
    if let Some(s) = &scan {
        let _ = writeln!(md, "\n## scan {}\n\n| epsilon | value |\n|---|---|", s.pair.as_str());
        for r in &s.rows {
            let _ = writeln!(md, "| {} | {} |", r.epsilon, r.value);
        }
        match s.exponent {
            Some(e) => {
                let _ = writeln!(md, "\nfitted exponent: {e:.4}");
            }
            None => {
                let _ = writeln!(md, "\nfitted exponent: none (all values zero)");
            }
        }
    }

    let csv = match &scan {
        Some(s) => csv_text(&["epsilon", "value", "error_estimate"], s.rows.iter().map(|r| (r.epsilon, r.value, r.error_estimate)))?,
        None => csv_text(
            &["operator_id", "epsilon", "value", "error_estimate"],
            results.iter().map(|r| (r.operator_id.clone(), r.epsilon, r.value, r.error_estimate)),
        )?,
    };
    let js = json(&ExpectJson {
        measure: first.measure.clone(),
        phase_discontinuity: first.phase_discontinuity,
        gauge,
        gauge_pass,
        rows: results.iter().map(row).collect(),
        scan,
    });
    let stdout = pick(format, &js, &md, &csv);
    let files = vec![
        ("expectation.json".into(), js),
        ("expectation.md".into(), md),
        ("expectation.csv".into(), csv),
    ];
    Ok((files, stdout, (!failures.is_empty()).then(|| failures.join("; "))))
}

#[derive(Serialize)]
struct ParseJson {
    input: String,
    canonical: String,
    terms: usize,
    order: u32,
}

fn parse(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let input = cfg
        .expr
        .clone()
        .ok_or_else(|| CliError::Usage("parse needs an expression".into()))?;
    let e = parse_expr(&input).map_err(|e| CliError::Usage(e.to_string()))?;
    let canonical = e.to_string();
    let js = json(&ParseJson { input, canonical: canonical.clone(), terms: e.len(), order: e.order() });
    let text = format!("{canonical}\n");
    let csv = csv_text(&["canonical", "terms", "order"], [(canonical, e.len(), e.order())])?;
    let stdout = pick(format, &js, &text, &csv);
    Ok((vec![("parse.json".into(), js)], stdout, None))
}
