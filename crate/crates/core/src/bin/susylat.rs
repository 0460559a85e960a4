use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use susylat::eigen::LanczosConfig;
use susylat::groundstates::{
    exact_ground_states, kernel_dims_numeric, predicted_count, quarter_filling_check, GroundStateReport,
    PredictedCount,
};
use susylat::hilbert::{enumerate_sectors_capped, witten_by_enumeration, DimsDump, GradedSpace};
use susylat::lattice::{Family, LatticeGraph};
use susylat::rank::choose_primes;
use susylat::specfile::{load_specs, parse_shorthand, parse_specs, LatticeSpec, DEFAULT_SUITE};
use susylat::spectrum::{sector_spectra, susy_pairing, PAIRING_REL_TOL, SPECTRUM_ZERO_TOL};
use susylat::susy::build_supercharge;
use susylat::theorems::{cross_check, Budget, CrossCheckReport, Delta, Depth, Verdict};
use susylat::tilings::{enumerate_tilings_with, filling_window};
use susylat::transfer::{witten_table, witten_transfer_torus};
use susylat::Error;

const SCHEMA_VERSION: u32 = 1;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "susylat", version, about = "Ground states and Witten indices of supersymmetric lattice fermions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest lattice handled by enumeration.
    #[arg(long, default_value_t = 40, global = true)]
    max_sites: usize,
    /// Largest total Hilbert-space dimension handled by enumeration.
    #[arg(long, default_value_t = 5_000_000, global = true)]
    max_dim: usize,
    /// Node budget for tiling searches.
    #[arg(long, default_value_t = susylat::tilings::DEFAULT_MAX_NODES, global = true)]
    max_tiling_nodes: u64,
    /// Seed for prime selection and iterative solvers.
    #[arg(long, default_value_t = 2009, global = true)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    /// JSON with a schema version.
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WittenMethod {
    Enum,
    Transfer,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GsMethod {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DepthArg {
    Index,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Witten index of one or more lattices.
    Witten {
        /// Lattice shorthand (e.g. rect:5x5, octagon:2x2:torus) or a .toml spec file.
        lattice: String,
        #[arg(long, value_enum, default_value_t = WittenMethod::Auto)]
        method: WittenMethod,
    },
    /// Witten index table of rectangular M x N tori.
    Table1 {
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
    },
    /// Ground-state counts per fermion sector, with the known prediction.
    Groundstates {
        lattice: String,
        #[arg(long, value_enum, default_value_t = GsMethod::Exact)]
        method: GsMethod,
    },
    /// Cross-check enumeration, transfer matrix, tilings and exact ranks on tori.
    Verify {
        /// Tori to check (shorthand or .toml files); the built-in suite if none.
        lattices: Vec<String>,
        /// Suite file in the lattice-spec format.
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DepthArg::Full)]
        depth: DepthArg,
    },
    /// Lowest eigenvalues per sector and the supersymmetric pairing check.
    Spectrum {
        lattice: String,
        /// Eigenvalues per sector.
        #[arg(short, default_value_t = 6)]
        k: usize,
    },
    /// Rhombus tilings of a square-lattice torus.
    Tilings { lattice: String },
    /// Sector dimensions of the hard-core Hilbert space.
    Dims { lattice: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Inconsistent(_) | Error::Internal(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        let message = match &e {
            Error::Capacity { .. } => format!("{e} (raise the matching --max-* flag or use a smaller lattice)"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Rendered report plus whether every check in it passed.
struct Output {
    text: String,
    ok: bool,
}

struct Ctx {
    format: Format,
    max_sites: usize,
    max_dim: usize,
    max_tiling_nodes: u64,
    seed: u64,
}

impl Ctx {
    fn budget(&self) -> Budget {
        Budget {
            max_sites: self.max_sites,
            max_dim: self.max_dim,
            max_tiling_nodes: self.max_tiling_nodes,
            seed: self.seed,
            ..Budget::default()
        }
    }

    fn enumerate(&self, g: &LatticeGraph) -> CliResult<GradedSpace> {
        if g.n_sites() > self.max_sites {
            return Err(Error::capacity("lattice sites", g.n_sites() as u64, self.max_sites as u64).into());
        }
        Ok(enumerate_sectors_capped(g, self.max_dim)?)
    }

    fn structured(&self, command: &str, results: Value) -> String {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "seed": self.seed,
            "results": results,
        });
        serde_json::to_string_pretty(&doc).expect("json serialization") + "\n"
    }
}

fn read_lattices(arg: &str) -> CliResult<Vec<LatticeSpec>> {
    let path = Path::new(arg);
    if arg.ends_with(".toml") || path.is_file() {
        let specs = load_specs(path)?;
        if specs.is_empty() {
            return Err(Error::Spec(format!("{arg} contains no [[lattice]] entries")).into());
        }
        Ok(specs)
    } else {
        Ok(vec![parse_shorthand(arg)?])
    }
}

fn csv_line(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| if c.contains(',') || c.contains('"') { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
        .collect::<Vec<_>>()
        .join(",")
        + "\n"
}

/// Right-aligned table with a header row.
fn human_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn cmd_witten(ctx: &Ctx, arg: &str, method: WittenMethod) -> CliResult<Output> {
    let mut rows = Vec::new();
    for spec in read_lattices(arg)? {
        let g = spec.build()?;
        let use_transfer = match method {
            WittenMethod::Transfer => true,
            WittenMethod::Enum => false,
            WittenMethod::Auto => spec.torus().is_some(),
        };
        let (w, used) = if use_transfer {
            let torus = spec.torus().ok_or_else(|| {
                Error::InvalidArgument(format!("the transfer method needs a square-lattice torus, got {spec}"))
            })?;
            let h = torus.hermite();
            if h.a > 40 {
                return Err(Error::capacity("transfer row width", h.a as u64, 40).into());
            }
            (witten_transfer_torus(&torus), "transfer")
        } else {
            (witten_by_enumeration(&ctx.enumerate(&g)?), "enumeration")
        };
        rows.push((spec.to_string(), g.n_sites(), used, w));
    }
    let text = match ctx.format {
        Format::Human => human_table(
            &["lattice", "sites", "method", "witten"],
            &rows
                .iter()
                .map(|r| vec![r.0.clone(), r.1.to_string(), r.2.to_string(), r.3.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = csv_line(&["lattice".into(), "sites".into(), "method".into(), "witten".into()]);
            for r in &rows {
                s += &csv_line(&[r.0.clone(), r.1.to_string(), r.2.to_string(), r.3.to_string()]);
            }
            s
        }
        Format::Structured => ctx.structured(
            "witten",
            Value::Array(
                rows.iter()
                    .map(|r| json!({"lattice": r.0, "sites": r.1, "method": r.2, "witten": r.3}))
                    .collect(),
            ),
        ),
    };
    Ok(Output { text, ok: true })
}

fn cmd_table1(ctx: &Ctx, m_max: usize, n_max: usize) -> CliResult<Output> {
    if m_max == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("table sizes must be at least 1".into()).into());
    }
    if m_max > 24 {
        return Err(Error::capacity("transfer row width", m_max as u64, 24).into());
    }
    let table = witten_table(m_max, n_max);
    let mut header = vec!["M\\N".to_string()];
    header.extend((1..=n_max).map(|n| n.to_string()));
    let rows: Vec<Vec<String>> = table
        .iter()
        .enumerate()
        .map(|(i, row)| std::iter::once((i + 1).to_string()).chain(row.iter().map(|w| w.to_string())).collect())
        .collect();
    let text = match ctx.format {
        Format::Human => human_table(&header.iter().map(String::as_str).collect::<Vec<_>>(), &rows),
        Format::Csv => {
            let mut s = csv_line(&header);
            for r in &rows {
                s += &csv_line(r);
            }
            s
        }
        Format::Structured => ctx.structured("table1", json!({"m_max": m_max, "n_max": n_max, "table": table})),
    };
    Ok(Output { text, ok: true })
}

fn prediction_status(pred: Option<PredictedCount>, total: usize) -> (String, String) {
    match pred {
        None => ("-".into(), "-".into()),
        Some(p) => {
            let shown = match p {
                PredictedCount::Exact(v) => v.to_string(),
                PredictedCount::ZeroOrOne => "0 or 1".into(),
            };
            (shown, if p.matches(total) { "MATCH".into() } else { "MISMATCH".into() })
        }
    }
}

fn cmd_groundstates(ctx: &Ctx, arg: &str, method: GsMethod) -> CliResult<Output> {
    let mut results: Vec<(LatticeSpec, LatticeGraph, GroundStateReport)> = Vec::new();
    for spec in read_lattices(arg)? {
        let g = spec.build()?;
        let space = ctx.enumerate(&g)?;
        let report = match method {
            GsMethod::Exact => exact_ground_states(&g, &space, choose_primes(ctx.seed))?,
            GsMethod::Numeric => {
                let qb = build_supercharge(&g, &space)?;
                kernel_dims_numeric(&qb, 1e-8, ctx.seed)?
            }
        };
        results.push((spec, g, report));
    }
    let mut ok = true;
    let mut text = String::new();
    let mut json_rows = Vec::new();
    if ctx.format == Format::Csv {
        text += &csv_line(
            &["lattice", "sites", "method", "n_b", "n_f", "total", "witten", "ground_sectors", "predicted", "status"]
                .map(String::from),
        );
    }
    for (spec, g, r) in &results {
        let (predicted, status) = prediction_status(predicted_count(g), r.total);
        ok &= status != "MISMATCH";
        let quarter = matches!(g.family(), Family::OctagonSquare { .. }).then(|| quarter_filling_check(r, g));
        let sectors = r.ground_sectors().iter().map(|f| f.to_string()).collect::<Vec<_>>();
        match ctx.format {
            Format::Human => {
                let _ = writeln!(text, "lattice  {spec}");
                let _ = writeln!(text, "sites    {}", g.n_sites());
                match r.primes {
                    Some([p, q]) => {
                        let _ = writeln!(text, "method   {} (primes {p}, {q})", r.method);
                    }
                    None => {
                        let _ = writeln!(text, "method   {}", r.method);
                    }
                }
                let mut rows = Vec::new();
                for s in &r.per_sector {
                    rows.push(vec![s.f.to_string(), s.dim.to_string(), s.h.to_string()]);
                }
                text += &human_table(&["f", "dim", "h"], &rows);
                let _ = writeln!(
                    text,
                    "n_b {}  n_f {}  total {}  witten {}",
                    r.n_b, r.n_f, r.total, r.witten
                );
                if let Some(q) = quarter {
                    let _ = writeln!(text, "quarter filling  {}", if q { "yes" } else { "no" });
                }
                let _ = writeln!(text, "predicted  {predicted}  {status}");
                for w in &r.warnings {
                    let _ = writeln!(text, "warning: {w}");
                }
                text.push('\n');
            }
            Format::Csv => {
                text += &csv_line(&[
                    spec.to_string(),
                    g.n_sites().to_string(),
                    r.method.to_string(),
                    r.n_b.to_string(),
                    r.n_f.to_string(),
                    r.total.to_string(),
                    r.witten.to_string(),
                    sectors.join(";"),
                    predicted.clone(),
                    status.clone(),
                ]);
            }
            Format::Structured => json_rows.push(json!({
                "lattice": spec.to_string(),
                "sites": g.n_sites(),
                "report": r,
                "quarter_filling": quarter,
                "predicted": predicted,
                "status": status,
            })),
        }
    }
    if ctx.format == Format::Human {
        text.pop();
    }
    if ctx.format == Format::Structured {
        text = ctx.structured("groundstates", Value::Array(json_rows));
    }
    Ok(Output { text, ok })
}

fn delta_text(d: &Delta) -> String {
    match d {
        Delta::Signed(v) => v.to_string(),
        Delta::Magnitude(v) => format!("±{v}"),
    }
}

fn cmd_verify(ctx: &Ctx, lattices: &[String], suite: Option<&Path>, depth: DepthArg) -> CliResult<Output> {
    let specs: Vec<LatticeSpec> = if !lattices.is_empty() {
        let mut all = Vec::new();
        for a in lattices {
            all.extend(read_lattices(a)?);
        }
        all
    } else if let Some(path) = suite {
        load_specs(path)?
    } else {
        parse_specs(DEFAULT_SUITE)?
    };
    let tori = specs
        .iter()
        .map(|s| s.torus().ok_or_else(|| Error::Spec(format!("verify needs square-lattice tori, got {s}")).into()))
        .collect::<CliResult<Vec<_>>>()?;
    let depth = match depth {
        DepthArg::Index => Depth::IndexOnly,
        DepthArg::Full => Depth::Full,
    };
    let budget = ctx.budget();
    // one spec at a time keeps memory bounded; each check is parallel inside
    let reports: Vec<CrossCheckReport> = tori
        .iter()
        .map(|t| cross_check(*t, depth, &budget))
        .collect::<Result<_, _>>()?;
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict() == v).count();
    let (pass, fail, skipped) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Skipped));
    let label = |r: &CrossCheckReport| format!("({},{})x({},{})", r.torus.u().x, r.torus.u().y, r.torus.v().x, r.torus.v().y);
    let row = |r: &CrossCheckReport| {
        vec![
            label(r),
            r.n_sites.to_string(),
            r.d.to_string(),
            r.d_star.to_string(),
            opt(r.w_enum),
            opt(r.w_transfer),
            opt(r.w_jonsson),
            opt(r.tilings.map(|t| t.t_b)),
            opt(r.tilings.map(|t| t.t_f)),
            opt(r.total_ed),
            opt(r.total_thm2),
            delta_text(&r.delta),
            opt(r.observed_delta),
            opt(r.delta_magnitude_holds.map(|h| if h { "yes" } else { "no" })),
            r.verdict().to_string(),
        ]
    };
    let header = [
        "torus", "sites", "d", "d*", "w_enum", "w_transfer", "w_jonsson", "t_b", "t_f", "total_ed", "total_thm2",
        "delta", "observed", "|delta|_holds", "verdict",
    ];
    let text = match ctx.format {
        Format::Human => {
            let mut s = human_table(&header, &reports.iter().map(row).collect::<Vec<_>>());
            for r in &reports {
                for c in r.comparisons.iter().filter(|c| c.verdict != Verdict::Pass) {
                    let _ = writeln!(s, "{} {}: {} ({})", label(r), c.name, c.verdict, c.detail);
                }
                if r.delta_magnitude_holds == Some(false) {
                    let _ = writeln!(
                        s,
                        "{} note: total - (t_b + t_f) = {} but |theta_d theta_d*| = {} (torus outside the proven family)",
                        label(r),
                        opt(r.observed_delta),
                        r.delta.magnitude()
                    );
                }
            }
            let _ = writeln!(s, "{pass} PASS, {fail} FAIL, {skipped} SKIPPED");
            s
        }
        Format::Csv => {
            let mut s = csv_line(&header.map(String::from));
            for r in &reports {
                s += &csv_line(&row(r));
            }
            s
        }
        Format::Structured => ctx.structured(
            "verify",
            json!({"reports": reports, "pass": pass, "fail": fail, "skipped": skipped}),
        ),
    };
    Ok(Output { text, ok: fail == 0 })
}

fn cmd_spectrum(ctx: &Ctx, arg: &str, k: usize) -> CliResult<Output> {
    let mut text = String::new();
    let mut json_rows = Vec::new();
    let mut ok = true;
    if ctx.format == Format::Csv {
        text += &csv_line(&["lattice", "f", "dim", "level", "eigenvalue"].map(String::from));
    }
    for spec in read_lattices(arg)? {
        let g = spec.build()?;
        let space = ctx.enumerate(&g)?;
        let qb = build_supercharge(&g, &space)?;
        let cfg = LanczosConfig {
            seed: ctx.seed,
            ..LanczosConfig::default()
        };
        // full spectra when every block fits the dense solver, so pairing can be checked
        let full = space.dims().iter().all(|&d| d <= susylat::eigen::DENSE_MAX_DIM);
        let spectra = sector_spectra(&qb, if full { None } else { Some(k) }, &cfg)?;
        let pairing = full.then(|| susy_pairing(&spectra, SPECTRUM_ZERO_TOL, PAIRING_REL_TOL));
        let min = spectra
            .iter()
            .flat_map(|s| s.eigenvalues.iter().copied())
            .min_by(|a, b| a.total_cmp(b));
        let nonneg = min.map_or(true, |m| m >= -1e-12);
        ok &= nonneg && pairing.as_ref().map_or(true, |p| p.passed());
        let gap = spectra
            .iter()
            .filter_map(|s| s.gap(SPECTRUM_ZERO_TOL))
            .min_by(|a, b| a.total_cmp(b));
        match ctx.format {
            Format::Human => {
                let _ = writeln!(text, "lattice  {spec}");
                let _ = writeln!(text, "sites    {}", g.n_sites());
                let rows: Vec<Vec<String>> = spectra
                    .iter()
                    .map(|s| {
                        vec![
                            s.f.to_string(),
                            s.dim.to_string(),
                            s.zero_modes(SPECTRUM_ZERO_TOL).to_string(),
                            opt(s.gap(SPECTRUM_ZERO_TOL).map(|x| format!("{x:.10}"))),
                            s.eigenvalues.iter().take(k).map(|e| format!("{:.10}", e.max(0.0))).collect::<Vec<_>>().join(" "),
                        ]
                    })
                    .collect();
                text += &human_table(&["f", "dim", "zero", "gap", "lowest"], &rows);
                let _ = writeln!(text, "minimum eigenvalue  {}", opt(min.map(|m| format!("{m:.3e}"))));
                let _ = writeln!(text, "gap  {}", opt(gap.map(|x| format!("{x:.10}"))));
                match &pairing {
                    Some(p) => {
                        let _ = writeln!(
                            text,
                            "susy pairing  {} doublets, {} unpaired  {}",
                            p.doublets.len(),
                            p.unpaired.len(),
                            if p.passed() { "PASS" } else { "FAIL" }
                        );
                    }
                    None => {
                        let _ = writeln!(text, "susy pairing  SKIPPED (sector above dense limit)");
                    }
                }
                text.push('\n');
            }
            Format::Csv => {
                for s in &spectra {
                    for (i, e) in s.eigenvalues.iter().take(k).enumerate() {
                        text += &csv_line(&[spec.to_string(), s.f.to_string(), s.dim.to_string(), i.to_string(), format!("{e:.12e}")]);
                    }
                }
            }
            Format::Structured => {
                let trimmed: Vec<Value> = spectra
                    .iter()
                    .map(|s| {
                        json!({
                            "f": s.f,
                            "dim": s.dim,
                            "zero_modes": s.zero_modes(SPECTRUM_ZERO_TOL),
                            "gap": s.gap(SPECTRUM_ZERO_TOL),
                            "eigenvalues": s.eigenvalues.iter().take(k).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                json_rows.push(json!({
                    "lattice": spec.to_string(),
                    "sites": g.n_sites(),
                    "sectors": trimmed,
                    "min_eigenvalue": min,
                    "gap": gap,
                    "pairing": pairing.as_ref().map(|p| json!({
                        "doublets": p.doublets.len(),
                        "unpaired": p.unpaired,
                        "passed": p.passed(),
                    })),
                }));
            }
        }
    }
    if ctx.format == Format::Human {
        text.pop();
    }
    if ctx.format == Format::Structured {
        text = ctx.structured("spectrum", Value::Array(json_rows));
    }
    Ok(Output { text, ok })
}

fn cmd_tilings(ctx: &Ctx, arg: &str) -> CliResult<Output> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut ok = true;
    for spec in read_lattices(arg)? {
        let torus = spec
            .torus()
            .ok_or_else(|| Error::InvalidArgument(format!("tilings need a square-lattice torus, got {spec}")))?;
        let e = enumerate_tilings_with(torus, ctx.max_tiling_nodes, false)?;
        let window = filling_window(&torus, &e);
        ok &= window.passed();
        let by_count = e.by_tile_count.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(" ");
        rows.push(vec![
            spec.to_string(),
            torus.n_sites().to_string(),
            e.count.t_b.to_string(),
            e.count.t_f.to_string(),
            e.count.total().to_string(),
            e.count.signed().to_string(),
            by_count,
            if window.passed() { "PASS".into() } else { "FAIL".into() },
        ]);
        json_rows.push(json!({
            "lattice": spec.to_string(),
            "cells": torus.n_sites(),
            "t_b": e.count.t_b,
            "t_f": e.count.t_f,
            "by_tile_count": e.by_tile_count,
            "filling_window": window,
        }));
    }
    let header = ["lattice", "cells", "t_b", "t_f", "total", "t_b-t_f", "by_tiles", "window"];
    let text = match ctx.format {
        Format::Human => human_table(&header, &rows),
        Format::Csv => {
            let mut s = csv_line(&header.map(String::from));
            for r in &rows {
                s += &csv_line(r);
            }
            s
        }
        Format::Structured => ctx.structured("tilings", Value::Array(json_rows)),
    };
    Ok(Output { text, ok })
}

fn cmd_dims(ctx: &Ctx, arg: &str) -> CliResult<Output> {
    let mut dumps = Vec::new();
    for spec in read_lattices(arg)? {
        let g = spec.build()?;
        dumps.push((spec.to_string(), DimsDump::from(&ctx.enumerate(&g)?)));
    }
    let text = match ctx.format {
        Format::Human => {
            let rows: Vec<Vec<String>> = dumps
                .iter()
                .map(|(l, d)| {
                    vec![
                        l.clone(),
                        d.n_sites.to_string(),
                        d.total.to_string(),
                        d.witten.to_string(),
                        d.dims.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect();
            human_table(&["lattice", "sites", "total", "witten", "dims"], &rows)
        }
        Format::Csv => {
            let mut s = csv_line(&["lattice", "f", "dim"].map(String::from));
            for (l, d) in &dumps {
                for (f, x) in d.dims.iter().enumerate() {
                    s += &csv_line(&[l.clone(), f.to_string(), x.to_string()]);
                }
            }
            s
        }
        Format::Structured => ctx.structured(
            "dims",
            Value::Array(dumps.iter().map(|(l, d)| json!({"lattice": l, "dims": d})).collect()),
        ),
    };
    Ok(Output { text, ok: true })
}

fn run(cli: Cli) -> CliResult<Output> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Error::InvalidArgument("--workers must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Internal(e.to_string()))?;
    }
    if cli.max_sites == 0 || cli.max_dim == 0 || cli.max_tiling_nodes == 0 {
        return Err(Error::InvalidArgument("resource caps must be positive".into()).into());
    }
    let ctx = Ctx {
        format: cli.format,
        max_sites: cli.max_sites,
        max_dim: cli.max_dim,
        max_tiling_nodes: cli.max_tiling_nodes,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Witten { lattice, method } => cmd_witten(&ctx, lattice, *method),
        Command::Table1 { m_max, n_max } => cmd_table1(&ctx, *m_max, *n_max),
        Command::Groundstates { lattice, method } => cmd_groundstates(&ctx, lattice, *method),
        Command::Verify { lattices, suite, depth } => cmd_verify(&ctx, lattices, suite.as_deref(), *depth),
        Command::Spectrum { lattice, k } => cmd_spectrum(&ctx, lattice, *k),
        Command::Tilings { lattice } => cmd_tilings(&ctx, lattice),
        Command::Dims { lattice } => cmd_dims(&ctx, lattice),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &output {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
