use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::time::{Duration, Instant};

use calpha_core::green::{c_alpha_by_nystrom, nystrom_convergence_table, GreenKernel};
use calpha_core::lsq::{c_alpha_by_lsq, default_lsq_grid};
use calpha_core::num::richardson_tableau;
use calpha_core::ode::{c_alpha_by_ode, OdeScan};
use calpha_core::toeplitz::{c_alpha_by_extrapolation, default_n_grid, scaled_min_eig};
use calpha_core::verify::{run_suite, Suite, VerifyConfig};
use calpha_core::wirtinger::BoundReport;
use calpha_core::{ConstantEstimate, LogScalar, Method};
use serde_json::{json, Value};

use crate::format::{csv_value, json_value, rounded_log};
use crate::{
    Command, ComputeArgs, Discretization, ExportArgs, Format, KernelArgs, MethodArg, Output, SuiteArg, TableArgs,
    VerifyArgs, EXIT_CONSISTENCY, EXIT_IO, EXIT_METHOD, EXIT_OK, EXIT_USAGE,
};

const TOEPLITZ_MAX_ALPHA: u32 = 4;
const TABLE_MAX_ALPHA: u32 = 8;
const NYSTROM_NODES: std::ops::RangeInclusive<usize> = 8..=1024;
const KERNEL_MAX_GRID: usize = 1024;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "I/O: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(command: &Command) -> CliResult<u8> {
    match command {
        Command::Compute(a) => compute(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify(a),
        Command::Kernel(a) => kernel(a),
        Command::Export(a) => export(a),
    }
}

fn write_out(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit(output: &Output, body: &str) -> CliResult<()> {
    write_out(output.out.as_deref(), body)
}

fn check_disc(d: &Discretization) -> CliResult<()> {
    if !NYSTROM_NODES.contains(&d.nystrom_nodes) {
        return Err(usage(format!("--nystrom-nodes must lie in {NYSTROM_NODES:?}")));
    }
    if d.scan_points < 2 {
        return Err(usage("--scan-points must be at least 2"));
    }
    if let Some(g) = &d.n_grid {
        if g.len() < 3 || g.windows(2).any(|w| w[0] >= w[1]) || g[0] < 2 || g[g.len() - 1] > 512 {
            return Err(usage("--n-grid needs at least three strictly ascending sizes in 2..=512"));
        }
    }
    Ok(())
}

/// One method run: its tag, outcome and wall time.
struct Run {
    method: Method,
    result: calpha_core::Result<ConstantEstimate>,
    elapsed: Duration,
}

fn run_method(method: Method, alpha: u32, d: &Discretization) -> Run {
    let start = Instant::now();
    let result = match method {
        Method::ToeplitzExtrapolation => {
            c_alpha_by_extrapolation(alpha, &d.n_grid.clone().unwrap_or_else(|| default_n_grid(alpha)))
        }
        Method::Nystrom => c_alpha_by_nystrom(alpha, d.nystrom_nodes, 1e-13),
        Method::OdeDeterminant => {
            let scan = OdeScan { points: d.scan_points, ..OdeScan::default_for(alpha) };
            c_alpha_by_ode(alpha, scan)
        }
        Method::LsqConditioning => c_alpha_by_lsq(alpha, &d.n_grid.clone().unwrap_or_else(|| default_lsq_grid(alpha))),
    };
    Run { method, result, elapsed: start.elapsed() }
}

fn selected_methods(alpha: u32, m: MethodArg) -> CliResult<Vec<Method>> {
    Ok(match m {
        MethodArg::Toeplitz if alpha > TOEPLITZ_MAX_ALPHA => {
            return Err(usage(format!("the toeplitz method supports alpha <= {TOEPLITZ_MAX_ALPHA}")))
        }
        MethodArg::Toeplitz => vec![Method::ToeplitzExtrapolation],
        MethodArg::Nystrom => vec![Method::Nystrom],
        MethodArg::Ode => vec![Method::OdeDeterminant],
        MethodArg::Lsq => vec![Method::LsqConditioning],
        MethodArg::All => {
            let mut v = vec![Method::Nystrom];
            if alpha <= TABLE_MAX_ALPHA {
                v.push(Method::OdeDeterminant);
            }
            if alpha <= TOEPLITZ_MAX_ALPHA {
                v.push(Method::ToeplitzExtrapolation);
                v.push(Method::LsqConditioning);
            }
            v
        }
    })
}

fn bounds_json(b: &BoundReport) -> Value {
    json!({
        "lower": json_value(b.lower),
        "upper": json_value(b.upper),
        "asymptotic": json_value(b.asymptotic),
        "conjecture": json_value(b.conjecture),
    })
}

fn estimate_json(e: &ConstantEstimate) -> Value {
    json!({
        "method": e.method.as_str(),
        "value": json_value(e.value),
        "error_estimate": e.error_estimate,
        "params": e.params,
    })
}

/// About twelve significant digits, without exponent for ordinary magnitudes.
fn full(v: LogScalar) -> String {
    match v.to_f64() {
        Ok(x) if x != 0.0 && x.abs() < 1e15 => {
            let digits = (11 - x.abs().log10().floor() as i32).max(0) as usize;
            format!("{x:.digits$}")
        }
        Ok(x) => format!("{x:.11e}"),
        Err(_) => rounded_log(v),
    }
}

fn max_discrepancy(estimates: &[&ConstantEstimate]) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for (i, a) in estimates.iter().enumerate() {
        for b in &estimates[i + 1..] {
            let d = a.rel_diff(b).max(b.rel_diff(a));
            worst = Some(worst.map_or(d, |w: f64| w.max(d)));
        }
    }
    worst
}

fn compute(args: &ComputeArgs) -> CliResult<u8> {
    if args.alpha == 0 {
        return Err(usage("--alpha must be at least 1"));
    }
    check_disc(&args.disc)?;
    if !(args.consistency_tol > 0.0) {
        return Err(usage("--consistency-tol must be positive"));
    }
    let methods = selected_methods(args.alpha, args.method)?;
    let runs: Vec<Run> = methods.iter().map(|&m| run_method(m, args.alpha, &args.disc)).collect();
    let ok: Vec<&ConstantEstimate> = runs.iter().filter_map(|r| r.result.as_ref().ok()).collect();
    let discrepancy = max_discrepancy(&ok);
    let bounds = BoundReport::new(args.alpha, None);

    for r in &runs {
        if let Err(e) = &r.result {
            eprintln!("{}: {e}", r.method);
        }
    }

    let body = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "alpha = {}", args.alpha).unwrap();
            writeln!(s, "{:<24} {:>14} {:>22} {:>10} {:>9}", "method", "c_alpha", "digits", "error_est", "time").unwrap();
            for r in &runs {
                match &r.result {
                    Ok(e) => writeln!(
                        s,
                        "{:<24} {:>14} {:>22} {:>10.1e} {:>8.3}s",
                        r.method.as_str(),
                        rounded_log(e.value),
                        full(e.value),
                        e.error_estimate,
                        r.elapsed.as_secs_f64()
                    ),
                    Err(err) => writeln!(s, "{:<24} FAILED: {err}", r.method.as_str()),
                }
                .unwrap();
            }
            writeln!(
                s,
                "bounds: lower {}  upper {}  asymptotic {}  conjecture {}",
                rounded_log(bounds.lower),
                rounded_log(bounds.upper),
                rounded_log(bounds.asymptotic),
                rounded_log(bounds.conjecture)
            )
            .unwrap();
            if let Some(d) = discrepancy {
                writeln!(s, "max relative discrepancy: {d:.3e} (tolerance {:e})", args.consistency_tol).unwrap();
            }
            s
        }
        Format::Json => {
            let failures: Vec<Value> = runs
                .iter()
                .filter_map(|r| r.result.as_ref().err().map(|e| json!({ "method": r.method.as_str(), "error": e.to_string() })))
                .collect();
            let doc = json!({
                "alpha": args.alpha,
                "estimates": ok.iter().map(|e| estimate_json(e)).collect::<Vec<_>>(),
                "bounds": bounds_json(&bounds),
                "max_discrepancy": discrepancy,
                "failures": failures,
                "seed": args.seed,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("alpha,method,value,error_estimate\n");
            for e in &ok {
                writeln!(s, "{},{},{},{:e}", e.alpha, e.method, csv_value(e.value), e.error_estimate).unwrap();
            }
            s
        }
    };
    emit(&args.output, &body)?;

    if runs.iter().any(|r| r.result.is_err()) {
        Ok(EXIT_METHOD)
    } else if discrepancy.is_some_and(|d| d > args.consistency_tol) {
        Ok(EXIT_CONSISTENCY)
    } else {
        Ok(EXIT_OK)
    }
}

fn table(args: &TableArgs) -> CliResult<u8> {
    check_disc(&args.disc)?;
    if args.alpha == 0 || args.alpha > args.alpha_max {
        return Err(usage(format!("empty alpha range {}..={}", args.alpha, args.alpha_max)));
    }
    if args.alpha_max > TABLE_MAX_ALPHA {
        return Err(usage(format!("the table supports alpha <= {TABLE_MAX_ALPHA}")));
    }
    let rows: Vec<(BoundReport, Run)> = (args.alpha..=args.alpha_max)
        .map(|a| {
            let run = run_method(Method::Nystrom, a, &args.disc);
            (BoundReport::new(a, run.result.as_ref().ok().cloned()), run)
        })
        .collect();
    let ratio = |b: &BoundReport| b.c_ref.as_ref().map(|c| (c.value / b.asymptotic).to_f64_lossy());

    let body = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "{:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8}",
                "alpha", "c_alpha", "lower", "upper", "asymptotic", "conjecture", "c/asym"
            )
            .unwrap();
            for (b, run) in &rows {
                let c = match &run.result {
                    Ok(e) => rounded_log(e.value),
                    Err(_) => "FAILED".to_string(),
                };
                let r = ratio(b).map_or("-".to_string(), |r| format!("{r:.4}"));
                writeln!(
                    s,
                    "{:>5} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8}",
                    b.alpha,
                    c,
                    rounded_log(b.lower),
                    rounded_log(b.upper),
                    rounded_log(b.asymptotic),
                    rounded_log(b.conjecture),
                    r
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|(b, run)| {
                    json!({
                        "alpha": b.alpha,
                        "estimates": run.result.as_ref().ok().map(estimate_json).into_iter().collect::<Vec<_>>(),
                        "bounds": bounds_json(b),
                        "ratio": ratio(b),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("alpha,method,c_alpha,lower,upper,asymptotic,conjecture,ratio\n");
            for (b, run) in &rows {
                let c = run.result.as_ref().map_or(String::new(), |e| csv_value(e.value));
                let r = ratio(b).map_or(String::new(), |r| format!("{r:e}"));
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    b.alpha,
                    Method::Nystrom,
                    c,
                    csv_value(b.lower),
                    csv_value(b.upper),
                    csv_value(b.asymptotic),
                    csv_value(b.conjecture),
                    r
                )
                .unwrap();
            }
            s
        }
    };
    for (b, run) in &rows {
        if let Err(e) = &run.result {
            eprintln!("alpha {}: {}: {e}", b.alpha, run.method);
        }
    }
    emit(&args.output, &body)?;
    Ok(if rows.iter().any(|(_, r)| r.result.is_err()) { EXIT_METHOD } else { EXIT_OK })
}

fn verify(args: &VerifyArgs) -> CliResult<u8> {
    if args.alpha_max == 0 || args.trials == 0 {
        return Err(usage("--alpha-max and --trials must be at least 1"));
    }
    let suite = match args.suite {
        SuiteArg::Bounds => Suite::Bounds,
        SuiteArg::Circulant => Suite::Circulant,
        SuiteArg::Gram => Suite::Gram,
        SuiteArg::Lsq => Suite::Lsq,
        SuiteArg::Green => Suite::Green,
        SuiteArg::Wirtinger => Suite::Wirtinger,
        SuiteArg::All => Suite::All,
    };
    let cfg = VerifyConfig { alpha_max: args.alpha_max, trials: args.trials, seed: args.seed };
    let report = run_suite(suite, &cfg);
    let body = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "[{tag}] {}/{}: {}", c.suite, c.name, c.observed).unwrap();
            }
            let failed = report.failures().count();
            writeln!(s, "{} checks, {} failed", report.checks.len(), failed).unwrap();
            s
        }
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("suite,check,passed,observed\n");
            for c in &report.checks {
                writeln!(s, "{},{},{},\"{}\"", c.suite, c.name, c.passed, c.observed.replace('"', "\"\"")).unwrap();
            }
            s
        }
    };
    emit(&args.output, &body)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_CONSISTENCY })
}

/// `x\y` header of coordinates, then one row per `x`.
pub fn kernel_csv(kernel: &GreenKernel, grid: usize) -> String {
    let nodes: Vec<f64> = (1..=grid).map(|i| i as f64 / (grid + 1) as f64).collect();
    let mut s = String::from("x\\y");
    for y in &nodes {
        write!(s, ",{y}").unwrap();
    }
    s.push('\n');
    for &x in &nodes {
        write!(s, "{x}").unwrap();
        for &y in &nodes {
            write!(s, ",{:e}", kernel.eval(x, y)).unwrap();
        }
        s.push('\n');
    }
    s
}

fn kernel(args: &KernelArgs) -> CliResult<u8> {
    if args.grid == 0 || args.grid > KERNEL_MAX_GRID {
        return Err(usage(format!("--grid must lie in 1..={KERNEL_MAX_GRID}")));
    }
    let k = GreenKernel::new(args.alpha).map_err(|e| usage(e.to_string()))?;
    write_out(args.out.as_deref(), &kernel_csv(&k, args.grid))?;
    Ok(EXIT_OK)
}

struct ExportRow {
    method: Method,
    size: usize,
    raw: f64,
    extrapolated: Option<f64>,
}

fn export(args: &ExportArgs) -> CliResult<u8> {
    if args.alpha == 0 {
        return Err(usage("--alpha must be at least 1"));
    }
    if args.m_list.is_empty()
        || args.m_list.windows(2).any(|w| w[0] >= w[1])
        || args.m_list[0] == 0
        || args.m_list[args.m_list.len() - 1] > 1024
    {
        return Err(usage("--m-list needs strictly ascending node counts in 1..=1024"));
    }
    let grid = args.n_grid.clone().unwrap_or_else(|| default_n_grid(args.alpha));
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < 2 || grid[grid.len() - 1] > 512 {
        return Err(usage("--n-grid needs strictly ascending sizes in 2..=512"));
    }

    let mut rows = Vec::new();
    let mut failed = false;
    match nystrom_convergence_table(args.alpha, &args.m_list) {
        Ok(t) => rows.extend(t.into_iter().map(|r| ExportRow {
            method: Method::Nystrom,
            size: r.m,
            raw: r.raw,
            extrapolated: r.extrapolated,
        })),
        Err(e) => {
            eprintln!("{}: {e}", Method::Nystrom);
            failed = true;
        }
    }
    if args.alpha <= TOEPLITZ_MAX_ALPHA {
        // running Richardson tableau over the prefix of the grid
        let mut h = Vec::new();
        let mut v = Vec::new();
        for &n in &grid {
            match scaled_min_eig(args.alpha, n) {
                Ok(Some(raw)) => {
                    h.push(1.0 / n as f64);
                    v.push(raw);
                    let extrapolated = if v.len() >= 3 { richardson_tableau(&h, &v).ok().map(|t| t.best()) } else { None };
                    rows.push(ExportRow { method: Method::ToeplitzExtrapolation, size: n, raw, extrapolated });
                }
                Ok(None) => {}
                Err(e) => {
                    eprintln!("{} (n = {n}): {e}", Method::ToeplitzExtrapolation);
                    failed = true;
                }
            }
        }
    }

    let body = match args.output.format {
        Format::Csv => {
            let mut s = String::from("alpha,method,size,raw,extrapolated\n");
            for r in &rows {
                let ex = r.extrapolated.map_or(String::new(), |x| format!("{x:e}"));
                writeln!(s, "{},{},{},{:e},{}", args.alpha, r.method, r.size, r.raw, ex).unwrap();
            }
            s
        }
        Format::Json => {
            let doc = json!({
                "alpha": args.alpha,
                "rows": rows.iter().map(|r| json!({
                    "method": r.method.as_str(),
                    "size": r.size,
                    "raw": r.raw,
                    "extrapolated": r.extrapolated,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "alpha = {}", args.alpha).unwrap();
            writeln!(s, "{:<24} {:>6} {:>22} {:>22}", "method", "size", "raw", "extrapolated").unwrap();
            for r in &rows {
                let ex = r.extrapolated.map_or("-".to_string(), |x| full(LogScalar::from_f64(x)));
                writeln!(s, "{:<24} {:>6} {:>22} {:>22}", r.method.as_str(), r.size, full(LogScalar::from_f64(r.raw)), ex)
                    .unwrap();
            }
            s
        }
    };
    emit(&args.output, &body)?;
    Ok(if failed { EXIT_METHOD } else { EXIT_OK })
}
