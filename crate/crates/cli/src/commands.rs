use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;

use num_bigint::BigInt;
use serde_json::json;
use thiserror::Error;

use pancake::cycles::{verify_classification, CensusError, CensusReport};
use pancake::formula::{
    self, crosscheck, crosscheck_values, fit_newton, sweep_con63, sweep_cor62, CrosscheckReport, FitError,
    FormulaError, IdentityReport, Status, Value, Variant,
};
use pancake::graph::GraphError;
use pancake::perm::PermError;
use pancake::search::{self, required_memory, sort_memory, SearchError};
use pancake::tables::{self, CountTable};
use pancake::{AnyPerm, GraphKind, Kind, LayerProfile, Perm, SearchConfig, SignedPerm};

use crate::args::{Cli, Command, Common, Format, FormulaCommand, NRange, Source};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNMATCHED: u8 = 3;
pub const EXIT_UNPROVED_MISMATCH: u8 = 4;
pub const EXIT_PROVED_MISMATCH: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Fit(#[from] FitError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Search(SearchError::Checkpoint(pancake::search::CheckpointError::Io { .. })) => EXIT_IO,
            _ => EXIT_USAGE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let common = &cli.common;
    let mut out = String::new();
    let code = match &cli.command {
        Command::Table { graph, n, max_k, checkpoint } => {
            cmd_table(common, *graph, *n, *max_k, checkpoint.clone(), &mut out)?
        }
        Command::Distance { graph, perm } => cmd_distance(common, *graph, &perm.join(" "), &mut out)?,
        Command::Sort { graph, perm } => cmd_sort(common, *graph, &perm.join(" "), &mut out)?,
        Command::Cycles { graph, n, length } => cmd_cycles(common, GraphKind::new(*graph, *n)?, *length, &mut out)?,
        Command::Formulas(f) => match f {
            FormulaCommand::List => cmd_list(common, &mut out),
            FormulaCommand::Eval { which, n } => cmd_eval(common, which, *n, &mut out)?,
            FormulaCommand::Check { which, k, n, source, variant } => {
                cmd_check(common, which, *k, *n, *source, *variant, &mut out)?
            }
            FormulaCommand::Fit { graph, k, n, source } => cmd_fit(common, *graph, *k, *n, *source, &mut out)?,
        },
    };
    emit(common, &out)?;
    Ok(code)
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

fn config(common: &Common, checkpoint: Option<PathBuf>) -> SearchConfig {
    let mut cfg = SearchConfig { memory_limit: common.mem_limit, checkpoint, ..SearchConfig::default() };
    if let Some(w) = common.workers {
        cfg.workers = w.max(1);
    }
    cfg
}

fn json_line(out: &mut String, value: serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(&value).expect("json serializes"));
    out.push('\n');
}

/// Runs complete searches for every `n`, refusing up front if any of them
/// would exceed the memory limit.
fn profiles(
    common: &Common,
    kind: Kind,
    range: NRange,
    checkpoint: Option<PathBuf>,
) -> Result<Vec<LayerProfile>, CliError> {
    let graphs = range.iter().map(|n| GraphKind::new(kind, n)).collect::<Result<Vec<_>, _>>()?;
    for &g in &graphs {
        match required_memory(g) {
            None => return Err(SearchError::Capacity(g).into()),
            Some(required) if required > common.mem_limit => {
                return Err(SearchError::MemoryLimit { graph: g, required, limit: common.mem_limit }.into())
            }
            Some(_) => {}
        }
    }
    let cfg = config(common, checkpoint);
    graphs.into_iter().map(|g| Ok(search::layer_profile(g, &cfg)?)).collect()
}

fn cmd_table(
    common: &Common,
    kind: Kind,
    range: NRange,
    max_k: Option<usize>,
    checkpoint: Option<PathBuf>,
    out: &mut String,
) -> Result<u8, CliError> {
    if checkpoint.is_some() && range.len() > 1 {
        return Err(usage("--checkpoint needs a single --n"));
    }
    let profiles = profiles(common, kind, range, checkpoint)?;
    let width = match max_k {
        Some(k) => k + 1,
        None => profiles.iter().map(|p| p.counts.len()).max().unwrap_or(1),
    };
    let padded = |p: &LayerProfile| -> Vec<u64> { (0..width).map(|k| p.count(k)).collect() };
    match common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header: Vec<String> = (0..width).map(|k| k.to_string()).collect();
            writeln!(out, "n,{}", header.join(",")).unwrap();
            for p in &profiles {
                let cells: Vec<String> = padded(p).iter().map(u64::to_string).collect();
                writeln!(out, "{},{}", p.graph.n, cells.join(",")).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<_> = profiles
                .iter()
                .map(|p| {
                    json!({
                        "n": p.graph.n,
                        "counts": padded(p),
                        "diameter": p.diameter(),
                        "total": p.total_visited,
                    })
                })
                .collect();
            json_line(out, json!({ "format_version": 1, "kind": kind, "rows": rows }));
        }
    }
    Ok(EXIT_OK)
}

fn parse_stack(kind: Kind, text: &str) -> Result<(GraphKind, AnyPerm), CliError> {
    let perm = match kind {
        Kind::Plain => AnyPerm::Plain(text.parse::<Perm>()?),
        Kind::Burnt => AnyPerm::Burnt(text.parse::<SignedPerm>()?),
    };
    let g = GraphKind::new(kind, perm.len())?;
    Ok((g, perm))
}

fn check_sort_memory(common: &Common, g: GraphKind, arrays_needed: Option<u64>) -> Result<(), CliError> {
    match arrays_needed {
        None => Err(SearchError::Capacity(g).into()),
        Some(required) if required > common.mem_limit => {
            Err(SearchError::MemoryLimit { graph: g, required, limit: common.mem_limit }.into())
        }
        Some(_) => Ok(()),
    }
}

fn cmd_distance(common: &Common, kind: Kind, text: &str, out: &mut String) -> Result<u8, CliError> {
    let (g, perm) = parse_stack(kind, text)?;
    check_sort_memory(common, g, required_memory(g))?;
    let d = search::distance(g, &perm, &config(common, None))?;
    match common.format {
        Some(Format::Json) => json_line(
            out,
            json!({ "format_version": 1, "graph": g.to_string(), "stack": perm.to_string(), "distance": d }),
        ),
        _ => writeln!(out, "{d}").unwrap(),
    }
    Ok(EXIT_OK)
}

fn cmd_sort(common: &Common, kind: Kind, text: &str, out: &mut String) -> Result<u8, CliError> {
    let (g, perm) = parse_stack(kind, text)?;
    check_sort_memory(common, g, sort_memory(g))?;
    let flips = search::sort_sequence(g, &perm, &config(common, None))?;
    let mut stacks = vec![perm.clone()];
    for &i in &flips {
        let next = g.apply_flip(stacks.last().unwrap(), i)?;
        stacks.push(next);
    }
    match common.format {
        Some(Format::Json) => json_line(
            out,
            json!({
                "format_version": 1,
                "graph": g.to_string(),
                "stack": perm.to_string(),
                "distance": flips.len(),
                "flips": flips,
                "stacks": stacks.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        ),
        Some(Format::Csv) => {
            writeln!(out, "step,flip,stack").unwrap();
            for (step, stack) in stacks.iter().enumerate() {
                let flip = if step == 0 { String::new() } else { flips[step - 1].to_string() };
                writeln!(out, "{step},{flip},\"{stack}\"").unwrap();
            }
        }
        None => {
            writeln!(out, "distance {}", flips.len()).unwrap();
            let names: Vec<String> = flips.iter().map(|i| format!("r{i}")).collect();
            writeln!(out, "flips {}", if names.is_empty() { "-".to_string() } else { names.join(" ") }).unwrap();
            for (step, stack) in stacks.iter().enumerate() {
                match step {
                    0 => writeln!(out, "{stack}").unwrap(),
                    _ => writeln!(out, "r{} -> {stack}", flips[step - 1]).unwrap(),
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_cycles(common: &Common, g: GraphKind, length: usize, out: &mut String) -> Result<u8, CliError> {
    let report: CensusReport = verify_classification(g, length)?;
    match common.format.unwrap_or(Format::Json) {
        Format::Json => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
        Format::Csv => {
            writeln!(out, "family,k,i,j,canonical,cycles").unwrap();
            let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
            for fam in &report.per_family {
                for inst in &fam.instances {
                    let p = inst.params;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        fam.family,
                        opt(p.k),
                        opt(p.i),
                        opt(p.j),
                        inst.canonical,
                        inst.cycles
                    )
                    .unwrap();
                }
            }
            for u in &report.unmatched {
                writeln!(out, "unmatched,,,,{},{}", u.canonical, u.cycles).unwrap();
            }
        }
    }
    eprintln!(
        "{}: {} cycles of length {} through the identity, {} unmatched",
        report.graph,
        report.total,
        length,
        report.unmatched_cycles()
    );
    Ok(if report.is_confirmed() { EXIT_OK } else { EXIT_UNMATCHED })
}

fn cmd_list(common: &Common, out: &mut String) -> u8 {
    let all = formula::formulas();
    match common.format {
        Some(Format::Json) => {
            let rows: Vec<_> = all
                .iter()
                .map(|f| {
                    json!({
                        "name": f.name,
                        "kind": f.kind,
                        "k": f.k,
                        "status": f.status,
                        "min_n": f.min_n,
                        "exceptions": f.exceptions,
                        "polynomial": f.poly.to_string(),
                    })
                })
                .collect();
            json_line(out, json!({ "format_version": 1, "formulas": rows }));
        }
        _ => {
            writeln!(out, "name,kind,k,status,min_n,exceptions,polynomial").unwrap();
            for f in all {
                let exc: Vec<String> = f.exceptions.iter().map(|(n, v)| format!("{n}:{v}")).collect();
                writeln!(
                    out,
                    "{},{},{},{},{},{},\"{}\"",
                    f.name,
                    f.kind,
                    f.k,
                    f.status,
                    f.min_n,
                    exc.join(" "),
                    f.poly
                )
                .unwrap();
            }
        }
    }
    EXIT_OK
}

fn cmd_eval(common: &Common, which: &str, range: NRange, out: &mut String) -> Result<u8, CliError> {
    let evals = range.iter().map(|n| formula::eval_formula(which, n)).collect::<Result<Vec<_>, _>>()?;
    match common.format {
        Some(Format::Json) => json_line(out, json!({ "format_version": 1, "evaluations": evals })),
        _ => {
            writeln!(out, "name,n,status,value").unwrap();
            for e in &evals {
                let value = match &e.value {
                    Value::OutOfValidity => "out-of-validity".to_string(),
                    v => v.value().expect("has a value").to_string(),
                };
                writeln!(out, "{},{},{},{}", e.name, e.n, e.status, value).unwrap();
            }
        }
    }
    Ok(EXIT_OK)
}

fn mismatch_code(status: Status) -> u8 {
    match status {
        Status::Proved => EXIT_PROVED_MISMATCH,
        Status::Conjectured | Status::PublishedElsewhere => EXIT_UNPROVED_MISMATCH,
    }
}

fn count_table(common: &Common, kind: Kind, range: Option<NRange>, source: Source) -> Result<CountTable, CliError> {
    match source {
        Source::Table => Ok(CountTable::published(kind)),
        Source::Bfs => {
            let range = range.ok_or_else(|| usage("--source bfs needs --n"))?;
            let profiles = profiles(common, kind, range, None)?;
            let max_k = profiles.iter().map(|p| p.counts.len()).max().unwrap_or(1);
            Ok(CountTable::from_profiles(kind, profiles.iter().map(|p| (p.graph, &p.counts[..])), max_k))
        }
    }
}

fn cmd_check(
    common: &Common,
    which: &str,
    k: Option<usize>,
    range: Option<NRange>,
    source: Option<Source>,
    variant: Variant,
    out: &mut String,
) -> Result<u8, CliError> {
    let key = which.to_ascii_lowercase();
    if key == "cor62" || key == "con63" {
        let (kind, status) =
            if key == "cor62" { (Kind::Plain, Status::Proved) } else { (Kind::Burnt, Status::Conjectured) };
        let table = count_table(common, kind, range, source.unwrap_or(Source::Table))?;
        let mut report =
            if key == "cor62" { sweep_cor62(&table, k, None)? } else { sweep_con63(&table, variant, k, None)? };
        if let Some(r) = range {
            report.cells.retain(|c| r.contains(c.n));
            let holds = report.cells.iter().filter(|c| c.check.holds()).count();
            let fails = report.cells.iter().filter(|c| c.check.fails()).count();
            report.insufficient = report.cells.len() - holds - fails;
            report.holds = holds;
            report.fails = fails;
        }
        write_identity(common, &report, out);
        eprintln!(
            "{}: {} hold, {} fail, {} lack data",
            report.identity, report.holds, report.fails, report.insufficient
        );
        return Ok(if report.fails > 0 { mismatch_code(status) } else { EXIT_OK });
    }

    let spec = formula::lookup(which)?;
    if k.is_some_and(|k| k != spec.k) {
        return Err(usage(format!("{} counts k = {}, not k = {}", spec.name, spec.k, k.unwrap())));
    }
    let report = match source.unwrap_or(Source::Bfs) {
        Source::Bfs => {
            let range = range.ok_or_else(|| usage("formulas check needs --n"))?;
            crosscheck(spec.name, &profiles(common, spec.kind, range, None)?)?
        }
        Source::Table => {
            let range = range.unwrap_or(NRange { start: 1, end: tables::max_n(spec.kind) });
            let observed = range.iter().filter_map(|n| tables::published(spec.kind, spec.k, n).map(|v| (n, v)));
            crosscheck_values(spec, observed)?
        }
    };
    write_crosscheck(common, &report, out);
    eprintln!(
        "{} ({}): {} of {} compared values, {}",
        report.formula,
        report.status,
        report.compared() - report.mismatches,
        report.compared(),
        report.summary
    );
    Ok(if report.mismatches > 0 { mismatch_code(spec.status) } else { EXIT_OK })
}

fn write_identity(common: &Common, report: &IdentityReport, out: &mut String) {
    match common.format {
        Some(Format::Json) => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
        _ => {
            writeln!(out, "k,n,verdict,lhs,rhs").unwrap();
            for c in &report.cells {
                let line = match &c.check {
                    formula::IdentityCheck::Holds { lhs, rhs } => format!("holds,{lhs},{rhs}"),
                    formula::IdentityCheck::Fails { lhs, rhs } => format!("fails,{lhs},{rhs}"),
                    formula::IdentityCheck::InsufficientData { .. } => "insufficient-data,,".to_string(),
                };
                writeln!(out, "{},{},{line}", c.k, c.n).unwrap();
            }
        }
    }
}

fn write_crosscheck(common: &Common, report: &CrosscheckReport, out: &mut String) {
    match common.format {
        Some(Format::Json) => {
            out.push_str(&report.to_json());
            out.push('\n');
        }
        _ => {
            writeln!(out, "n,formula,observed,verdict").unwrap();
            for r in &report.rows {
                let value = r.formula.as_ref().map_or(String::new(), BigInt::to_string);
                let verdict = match r.verdict {
                    formula::Verdict::Equal => "equal",
                    formula::Verdict::Mismatch => "mismatch",
                    formula::Verdict::OutOfValidity => "out-of-validity",
                };
                writeln!(out, "{},{},{},{}", r.n, value, r.observed, verdict).unwrap();
            }
        }
    }
}

fn cmd_fit(
    common: &Common,
    kind: Kind,
    k: usize,
    range: NRange,
    source: Source,
    out: &mut String,
) -> Result<u8, CliError> {
    let table = count_table(common, kind, Some(range), source)?;
    let points = range
        .iter()
        .map(|n| {
            table
                .get(k, n)
                .map(|v| (n as i64, BigInt::from(v)))
                .ok_or_else(|| usage(format!("no value for k = {k}, n = {n}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fit = fit_newton(&points)?;

    // Compare with the registered formula on twice the fitting window.
    let registered = formula::for_kind(kind, k);
    let check_end = range.start + 2 * range.len() - 1;
    let mut disagreements = Vec::new();
    if let Some(spec) = registered {
        for n in range.start..=check_end {
            if let Some(expected) = spec.eval(n)?.value() {
                let fitted = fit.eval(n as i64);
                if &fitted != expected {
                    disagreements
                        .push(json!({ "n": n, "fitted": fitted.to_string(), "formula": expected.to_string() }));
                }
            }
        }
    }
    match common.format {
        Some(Format::Json) => json_line(
            out,
            json!({
                "format_version": 1,
                "kind": kind,
                "k": k,
                "points": range.to_string(),
                "newton": fit,
                "degree": fit.degree(),
                "formula": registered.map(|s| s.name),
                "compared_range": format!("{}..{}", range.start, check_end),
                "disagreements": disagreements,
            }),
        ),
        _ => {
            writeln!(out, "m,coefficient").unwrap();
            for (m, c) in fit.coeffs.iter().enumerate() {
                writeln!(out, "{m},{c}").unwrap();
            }
        }
    }
    eprintln!("p(n) = sum_m c_m * C(n - {}, m), degree {}", fit.anchor, fit.degree());
    match registered {
        Some(spec) if disagreements.is_empty() => {
            eprintln!("agrees with {} on n = {}..{}", spec.name, range.start, check_end);
            Ok(EXIT_OK)
        }
        Some(spec) => {
            eprintln!("disagrees with {} at {} points", spec.name, disagreements.len());
            Ok(mismatch_code(spec.status))
        }
        None => Ok(EXIT_OK),
    }
}
