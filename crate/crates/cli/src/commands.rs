use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use omegalap::{
    criterion::reach_set, truncated_exponential_row, CertificateDocument, GraphSpec,
    OperatorDescriptor, Scalar, ValidationReport, VertexId,
};
use serde::Serialize;

use crate::config::{self, OperatorConfig};
use crate::error::{CliError, CliResult, Exit};

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

/// Pretty JSON with a trailing newline; identical inputs give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

fn save<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    if let Some(path) = path {
        std::fs::write(path, to_json(value)).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

fn describe(op: &OperatorDescriptor) -> String {
    format!(
        "{} + ({})·Δ on {} ({} weights)",
        op.alpha,
        op.beta,
        op.graph.family.name(),
        op.weights.name()
    )
}

pub fn certify(
    cfg: &OperatorConfig,
    m_range: &[u64],
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    let doc = CertificateDocument::certify(cfg.descriptor.clone(), cfg.field, m_range)?;
    let mut t = String::new();
    let _ = writeln!(t, "{}", describe(&doc.operator));
    let _ = writeln!(t, "{:>5} {:>5} {:>5}  value", "m", "l", "k");
    for r in &doc.rows {
        let _ = writeln!(t, "{:>5} {:>5} {:>5}  {}", r.m, r.l, r.k, r.value);
    }
    let _ = writeln!(
        t,
        "{} rows, dense re-check on a {}×{} section: ok",
        doc.rows.len(),
        doc.oracle_section,
        doc.oracle_section
    );
    write_out(out, &t)?;
    save(path, &doc)?;
    Ok(Exit::Success)
}

/// Unreadable files are a configuration error; anything wrong with the
/// contents is a verification failure.
pub fn verify(file: &str, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Exit> {
    let text = config::read_file(file)?;
    let doc: CertificateDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Verification(format!("{file}: not a certificate: {e}")))?;
    let report = doc
        .verify()
        .map_err(|e| CliError::Verification(format!("{file}: {e}")))?;
    if report.passed() {
        write_out(
            out,
            &format!(
                "{file}: {} rows verified for {}\n",
                doc.rows.len(),
                describe(&doc.operator)
            ),
        )?;
        return Ok(Exit::Success);
    }
    for m in &report.mismatches {
        let _ = writeln!(err, "mismatch: {m}");
    }
    write_out(
        out,
        &format!("{file}: {} mismatches\n", report.mismatches.len()),
    )?;
    Ok(Exit::VerificationFailed)
}

#[derive(Serialize)]
struct ScanRow {
    k_max: usize,
    reach: Vec<u64>,
}

#[derive(Serialize)]
struct ScanReport<'a> {
    operator: &'a OperatorDescriptor,
    diagonal: bool,
    n: u64,
    rows: Vec<ScanRow>,
}

pub fn scan(
    cfg: &OperatorConfig,
    n: u64,
    k_max: &[usize],
    diagonal: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    if n == 0 {
        return Err(CliError::config("--n must be at least 1"));
    }
    let pair = cfg.build()?;
    let op = if diagonal {
        pair.diagonal_operator()
    } else {
        pair.operator()
    };
    let inside: BTreeSet<VertexId> = (1..=n).map(VertexId::new).collect();
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{}{}, rows 1..{n}",
        describe(&cfg.descriptor),
        if diagonal { ", diagonal part" } else { "" }
    );
    let _ = writeln!(
        t,
        "{:>6} {:>8} {:>10}  within 1..{n}",
        "k_max", "|reach|", "max index"
    );
    let mut rows = Vec::new();
    for &k in k_max {
        let reach = reach_set(&op, n, k)?;
        let max = reach.last().map_or(0, |v| v.index());
        let within = reach.is_subset(&inside);
        let _ = writeln!(
            t,
            "{k:>6} {:>8} {max:>10}  {}",
            reach.len(),
            if within { "yes" } else { "no" }
        );
        rows.push(ScanRow {
            k_max: k,
            reach: reach.into_iter().map(VertexId::index).collect(),
        });
    }
    write_out(out, &t)?;
    save(
        path,
        &ScanReport {
            operator: &cfg.descriptor,
            diagonal,
            n,
            rows,
        },
    )?;
    Ok(Exit::Success)
}

#[derive(Serialize)]
struct HoppingReport<'a> {
    operator: &'a OperatorDescriptor,
    n: usize,
    #[serde(rename = "N")]
    big_n: u64,
    #[serde(flatten)]
    report: ValidationReport,
}

fn list_violations(t: &mut String, report: &ValidationReport) {
    for v in &report.violations {
        let _ = writeln!(t, "  {v}");
    }
}

pub fn check_hopping(
    cfg: &OperatorConfig,
    n: usize,
    big_n: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    let report = cfg.build()?.operator().verify_hopping(n, big_n)?;
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{}: rows 1..{big_n} against U_{n}: {} violations",
        describe(&cfg.descriptor),
        report.len()
    );
    list_violations(&mut t, &report);
    write_out(out, &t)?;
    let code = if report.is_empty() {
        Exit::Success
    } else {
        Exit::VerificationFailed
    };
    save(
        path,
        &HoppingReport {
            operator: &cfg.descriptor,
            n,
            big_n,
            report,
        },
    )?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
pub fn exp(
    cfg: &OperatorConfig,
    big_n: usize,
    t: &Scalar,
    terms: usize,
    budget: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<Exit> {
    if big_n == 0 {
        return Err(CliError::config("--N must be at least 1"));
    }
    if !t.is_real() {
        return Err(CliError::config(format!("--t must be rational, got {t}")));
    }
    if terms < big_n {
        let _ = writeln!(
            err,
            "warning: terms = {terms} < N = {big_n}; the series may not reach the whole section"
        );
    }
    let op = cfg.build()?.operator();
    let report = truncated_exponential_row(&op, big_n, t.re(), terms, budget)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: first row of Σ_(k≤{terms}) t^k/k! A^k, t = {t}, {big_n}×{big_n} section",
        describe(&cfg.descriptor)
    );
    for (j, x) in report.row1.iter().enumerate() {
        let _ = writeln!(s, "{:>6}  {x}", j + 1);
    }
    let _ = writeln!(s, "nonzero: {} of {big_n}", report.nonzero_count);
    write_out(out, &s)?;
    save(path, &report)?;
    Ok(Exit::Success)
}

#[derive(Serialize)]
struct SectionReport {
    graph: GraphSpec,
    #[serde(rename = "N")]
    big_n: u64,
    #[serde(flatten)]
    report: ValidationReport,
}

pub fn validate(
    graph: &str,
    big_n: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    if big_n == 0 {
        return Err(CliError::config("--N must be at least 1"));
    }
    let (spec, _) = config::load_graph(graph)?;
    let report = spec.build_unchecked()?.validate_section(big_n);
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{}: section 1..{big_n}: {} violations",
        spec.family.name(),
        report.len()
    );
    list_violations(&mut t, &report);
    write_out(out, &t)?;
    let code = if report.is_empty() {
        Exit::Success
    } else {
        Exit::VerificationFailed
    };
    save(
        path,
        &SectionReport {
            graph: spec,
            big_n,
            report,
        },
    )?;
    Ok(code)
}
