mod output;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hsl_core::domain::parse_domain;
use hsl_core::principal::{build_slit_map, compute_principal_pair, e_log_area, slit_data, SlitKind};
use hsl_core::span::{poincare_distance, s_function_grid};
use hsl_core::variation::{subharmonicity_scan, DomainFamily, TGrid, DEFAULT_HT};
use hsl_core::verify::{run_criterion, summarize, Suite};
use hsl_core::{Error, C64};
use serde_json::json;

use output::{csv_text, fmt9, json_text, write_file, Emit};

#[derive(Parser)]
#[command(name = "hsl", version, about = "Harmonic spans, slit maps and variation checks for planar domains")]
struct Cli {
    /// Boundary nodes per curve (even, at least 16).
    #[arg(long, global = true, default_value_t = 256)]
    nodes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GridArgs {
    /// Grid points per side (odd).
    #[arg(long, default_value_t = 9)]
    grid: usize,
    /// Grid center as `re,im`.
    #[arg(long, default_value = "0,0", value_parser = parse_complex)]
    center: C64,
    /// Half-width of the square grid.
    #[arg(long, default_value_t = 0.3)]
    radius: f64,
}

#[derive(Subcommand)]
enum Command {
    /// α, β, span, E_log and slit data of a marked domain, as JSON on stdout.
    Span {
        domain: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        emit: Emit,
    },
    /// Subharmonicity scan of a domain family over a parameter grid.
    Scan {
        family: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Finite-difference step in t.
        #[arg(long, default_value_t = DEFAULT_HT)]
        ht: f64,
        #[arg(long, default_value = "scan-out")]
        out: PathBuf,
        #[arg(long, default_value = "csv,json")]
        emit: Emit,
    },
    /// Run an acceptance suite: disk, identities, variation or all.
    Verify { suite: String },
    /// The span as a function of the second marked point, on a grid.
    Sfunction {
        domain: PathBuf,
        /// First marked point; defaults to the domain's `a`.
        #[arg(long, value_parser = parse_complex)]
        xi: Option<C64>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "sfunction-out")]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        emit: Emit,
    },
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got '{s}'")),
    }
}

/// Failure with its exit code: 1 failed verification, 2 bad input, 3
/// numerical failure.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 3 }, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { code: 2, message: format!("{e:#}") }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("reading {}: {e}", path.display()) })
}

/// `println!` that exits quietly when the reader closed the pipe.
fn emit_line(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing stdout: {e}");
        std::process::exit(2);
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HSL_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure { code: 2, message: format!("HSL_THREADS='{v}' is not a count") })?;
    if n > 0 {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn cmd_span(domain: &Path, nodes: usize, out: Option<&Path>, emit: Emit) -> Result<(), Failure> {
    let d = parse_domain(&read(domain)?)?;
    let pair = compute_principal_pair(&d, nodes)?;
    let mut report = json!({
        "alpha": pair.alpha,
        "beta": pair.beta,
        "span": pair.span(),
        "e_log": e_log_area(&pair),
        "connectivity": d.connectivity(),
        "nodes": nodes,
        "fingerprint": hsl_core::span::fingerprint(&d),
    });
    if d.connectivity() == 1 {
        let dist = poincare_distance(&d, nodes)?;
        report["poincare_distance"] = json!(dist);
        report["identity_residual"] = json!((pair.span() - 4.0 * dist.cosh().ln()).abs());
    }
    match slit_data(&pair) {
        Ok(s) => report["slits"] = serde_json::to_value(s).expect("slit data serializes"),
        Err(e) => report["slits_error"] = json!(e.to_string()),
    }
    let text = json_text(report);
    emit_line(&text);
    if let Some(dir) = out {
        if emit.json {
            write_file(dir, "span.json", &(text + "\n"))?;
        }
        if emit.svg {
            write_file(dir, "slits.svg", &slit_svg(&pair))?;
        }
    }
    Ok(())
}

fn slit_svg(pair: &hsl_core::principal::PrincipalPair) -> String {
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
    let mut lines = Vec::new();
    for kind in [SlitKind::Circular, SlitKind::Radial] {
        let trace = build_slit_map(pair, kind).boundary_trace();
        for (j, logs) in trace.log_w.iter().enumerate() {
            let mut pts: Vec<C64> = logs.iter().map(|l| l.exp()).collect();
            pts.push(pts[0]);
            lines.push((pts, colors[j % colors.len()]));
        }
    }
    svg::curves("boundary images under P and Q", &lines)
}

fn cmd_scan(family: &Path, nodes: usize, grid: &GridArgs, ht: f64, out: &Path, emit: Emit) -> Result<(), Failure> {
    let fam = DomainFamily::parse(&read(family)?)?;
    let g = TGrid::new(grid.center, grid.radius, grid.grid)?;
    fam.validate(&g.points())?;
    let report = subharmonicity_scan(&fam, &g, ht, nodes);
    let header = ["t_re", "t_im", "span", "alpha", "beta", "lap_span", "lap_beta", "min_k2", "status"];
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let mut v: Vec<String> =
                [r.t[0], r.t[1], r.span, r.alpha, r.beta, r.lap_span, r.lap_beta, r.min_k2].map(fmt9).to_vec();
            v.push(r.status.clone());
            v
        })
        .collect();
    let verdict = json!({
        "pseudoconvex": report.pseudoconvex,
        "span_subharmonic": report.span_subharmonic,
        "beta_superharmonic": report.beta_superharmonic,
        "min_k2": report.min_k2,
        "min_lap_span": report.min_lap_span,
        "max_lap_beta": report.max_lap_beta,
        "tol": report.tol,
        "failures": report.failures,
        "grid": { "center": g.center, "radius": g.radius, "n": g.n },
        "ht": ht,
        "nodes": nodes,
    });
    let text = json_text(verdict);
    if emit.csv {
        write_file(out, "scan.csv", &csv_text(&header, &rows)?)?;
    }
    if emit.json {
        write_file(out, "verdict.json", &(text.clone() + "\n"))?;
    }
    if emit.svg {
        let spans: Vec<f64> = report.rows.iter().map(|r| r.span).collect();
        write_file(out, "span_heatmap.svg", &svg::heat_map("s(t)", g.n, &spans))?;
        let pair = compute_principal_pair(&fam.domain_at(g.center())?, nodes)?;
        write_file(out, "slits.svg", &slit_svg(&pair))?;
    }
    emit_line(&text);
    Ok(())
}

fn cmd_verify(suite: &str, nodes: usize) -> Result<bool, Failure> {
    let suite: Suite = suite.parse()?;
    let mut all = true;
    for &k in suite.criteria() {
        let checks = run_criterion(k, nodes);
        emit_line(&summarize(k, &checks));
        for c in &checks {
            emit_line(&format!("    {c}"));
        }
        all &= !checks.is_empty() && checks.iter().all(|c| c.pass);
    }
    Ok(all)
}

fn cmd_sfunction(
    domain: &Path,
    nodes: usize,
    xi: Option<C64>,
    grid: &GridArgs,
    out: &Path,
    emit: Emit,
) -> Result<(), Failure> {
    let d = parse_domain(&read(domain)?)?;
    let xi = xi.unwrap_or(d.a());
    let g = TGrid::new(grid.center, grid.radius, grid.grid)?;
    let result = s_function_grid(&d, xi, &g.points(), nodes);
    let rows: Vec<Vec<String>> = result
        .points
        .iter()
        .map(|p| vec![fmt9(p.eta[0]), fmt9(p.eta[1]), p.span.map_or(String::new(), fmt9), p.status.clone()])
        .collect();
    if emit.csv {
        write_file(out, "sfunction.csv", &csv_text(&["eta_re", "eta_im", "span", "status"], &rows)?)?;
    }
    if emit.json {
        write_file(out, "sfunction.json", &(json_text(serde_json::to_value(&result).expect("serializes")) + "\n"))?;
    }
    if emit.svg {
        let spans: Vec<f64> = result.points.iter().map(|p| p.span.unwrap_or(f64::NAN)).collect();
        write_file(out, "sfunction.svg", &svg::heat_map("s(xi, eta)", g.n, &spans))?;
    }
    let ok = result.points.iter().filter(|p| p.span.is_some()).count();
    emit_line(&format!("{ok} of {} points computed", result.points.len()));
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    if cli.nodes < 16 || cli.nodes % 2 != 0 {
        return Err(Failure { code: 2, message: format!("--nodes {} must be even and at least 16", cli.nodes) });
    }
    let n = cli.nodes;
    match &cli.command {
        Command::Span { domain, out, emit } => cmd_span(domain, n, out.as_deref(), *emit).map(|_| true),
        Command::Scan { family, grid, ht, out, emit } => cmd_scan(family, n, grid, *ht, out, *emit).map(|_| true),
        Command::Verify { suite } => cmd_verify(suite, n),
        Command::Sfunction { domain, xi, grid, out, emit } => {
            cmd_sfunction(domain, n, *xi, grid, out, *emit).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
