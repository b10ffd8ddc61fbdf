//! The `nullcurve` command line.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on usage
//! or domain errors. Diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::airy::airy_eval;
use crate::catalog::{
    check_torsion_identity, default_catalog, CatalogEntry, EntryKind, TorsionIdentityReport, VerificationReport,
    TORSION_FD_STEP,
};
use crate::error::{Error, Result};
use crate::frenet::torsion_schwarzian;
use crate::generator::{make_generator, Generator, GeneratorKind};
use crate::io::{fmt_f64, samples_to_csv, to_csv, to_json, write_atomic};
use crate::minkowski::Vec3;
use crate::synthesis::{linspace, synthesize, CurveSpec, Orientation, Sample, DEFAULT_TOL};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "NULLCURVE_TOL";

/// Quadrature tolerance of the synthesized positions in the torsion
/// identity check; tighter than the default so the third differences see
/// only rounding noise.
pub const TORSION_CHECK_TOL: f64 = 1e-13;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nullcurve", version, about = "Null curves in 3-dimensional Minkowski space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a curve from a generator onto a grid.
    Synthesize(SynthesizeArgs),
    /// Check catalog curves against their closed forms and torsion laws.
    Verify(VerifyArgs),
    /// List catalog entries, or sample one entry's closed form.
    Catalog(CatalogArgs),
    /// Evaluate the torsion S(f) of a generator.
    Torsion(TorsionArgs),
    /// Tabulate Ai, Bi and their derivatives.
    AiryTable(AiryArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenName {
    Identity,
    Cot,
    Exp,
    Log,
    Tanlog,
    Power,
    InverseSquare,
    Airy,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Generator family.
    #[arg(long = "gen", value_enum)]
    gen: GenName,
    /// Rate c of the cot and exp generators.
    #[arg(long)]
    c: Option<f64>,
    /// Exponent b of the tanlog and power generators.
    #[arg(long)]
    b: Option<f64>,
    /// λ of the airy generator.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

impl GenArgs {
    fn kind(&self) -> Result<GeneratorKind> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| Error::Usage(format!("--gen {} requires --{flag}", self.gen_name())))
        };
        Ok(match self.gen {
            GenName::Identity => GeneratorKind::Identity,
            GenName::Cot => GeneratorKind::Cot { c: need(self.c, "c")? },
            GenName::Exp => GeneratorKind::Exp { c: need(self.c, "c")? },
            GenName::Log => GeneratorKind::Log,
            GenName::Tanlog => GeneratorKind::TanLog { b: need(self.b, "b")? },
            GenName::Power => GeneratorKind::Power { b: need(self.b, "b")? },
            GenName::InverseSquare => GeneratorKind::InverseSquare,
            GenName::Airy => GeneratorKind::AiryRatio {
                lambda: need(self.lambda, "lambda")?,
            },
        })
    }

    fn gen_name(&self) -> String {
        self.gen
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }

    fn generator(&self) -> Result<Generator> {
        make_generator(self.kind()?)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    gen: GenArgs,
    /// Orientation ε, 1 or -1.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    eps: String,
    /// Anchor parameter s0; defaults to the first grid point.
    #[arg(long, allow_hyphen_values = true)]
    s0: Option<f64>,
    /// Anchor position x,y,z.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    alpha0: String,
    /// lo:hi:n (n points, endpoints included) or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Absolute tolerance; default 1e-10 or $NULLCURVE_TOL.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Catalog entry to verify.
    #[arg(long, conflicts_with = "all")]
    entry: Option<String>,
    /// Verify every entry with default parameters.
    #[arg(long)]
    all: bool,
    /// Helix rate c.
    #[arg(long, conflicts_with = "all")]
    c: Option<f64>,
    /// Slant constant a.
    #[arg(long, conflicts_with = "all", allow_hyphen_values = true)]
    a: Option<f64>,
    /// Airy λ.
    #[arg(long, conflicts_with = "all", allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Grid override, as for synthesize.
    #[arg(long, conflicts_with = "all", allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Report file (written atomically); the summary table still prints.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: a text table, or JSON.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    /// Entry whose closed form to sample; lists all entries when absent.
    #[arg(long)]
    entry: Option<String>,
    /// Helix rate c.
    #[arg(long)]
    c: Option<f64>,
    /// Slant constant a.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Airy λ.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Sample grid; defaults to the entry's own grid.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TorsionArgs {
    #[command(flatten)]
    gen: GenArgs,
    /// Parameter value(s), comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Debug, Args)]
struct AiryArgs {
    /// lo:hi:n of the argument x.
    #[arg(long, default_value = "-5:5:11", allow_hyphen_values = true)]
    grid: String,
    #[command(flatten)]
    output: OutputArgs,
}

/// Parses `lo:hi:n` or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |why: String| Error::Usage(format!("--grid {text:?}: {why}"));
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad("expected lo:hi:n".into()));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("{t:?} is not a number")))
        };
        let (lo, hi) = (num(lo)?, num(hi)?);
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| bad(format!("{n:?} is not a point count")))?;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(bad("need finite lo < hi".into()));
        }
        if n < 2 {
            return Err(bad("need n >= 2".into()));
        }
        Ok(linspace(lo, hi, n))
    } else {
        let vals = parse_list(text).map_err(|_| bad("expected numbers separated by commas".into()))?;
        if vals.is_empty() || vals.iter().any(|v| !v.is_finite()) {
            return Err(bad("expected at least one finite value".into()));
        }
        if vals.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(bad("values must be strictly increasing".into()));
        }
        Ok(vals)
    }
}

fn parse_list(text: &str) -> std::result::Result<Vec<f64>, std::num::ParseFloatError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse())
        .collect()
}

fn parse_vec3(text: &str) -> Result<Vec3> {
    match parse_list(text).as_deref() {
        Ok(&[x, y, z]) => {
            Vec3::try_new(x, y, z).map_err(|_| Error::Usage(format!("--alpha0 {text:?}: components must be finite")))
        }
        _ => Err(Error::Usage(format!("--alpha0 {text:?}: expected x,y,z"))),
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{TOL_ENV}={v:?} is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn entry_from_args(name: &str, c: Option<f64>, a: Option<f64>, lambda: Option<f64>) -> Result<CatalogEntry> {
    let mut kind = EntryKind::from_name(name).map_err(|e| Error::Usage(format!("--entry: {e}")))?;
    let param = match kind {
        EntryKind::HelixPos { .. } | EntryKind::HelixNeg { .. } => c,
        EntryKind::SlantB { .. } | EntryKind::SlantC { .. } => a,
        EntryKind::Airy { .. } => lambda,
        _ => None,
    };
    if let Some(v) = param {
        kind = kind.with_param(v);
    }
    CatalogEntry::new(kind)
}

fn synthesize_cmd(args: &SynthesizeArgs, stdout: &mut dyn Write) -> Result<i32> {
    let gen = args.gen.generator()?;
    let epsilon: Orientation = args.eps.parse().map_err(|e| Error::Usage(format!("--eps: {e}")))?;
    let grid = parse_grid(&args.grid)?;
    let alpha0 = parse_vec3(&args.alpha0)?;
    let s0 = args.s0.unwrap_or(grid[0]);
    let tol = resolve_tol(args.tol)?;
    let curve = synthesize(&CurveSpec::new(gen, epsilon, s0, alpha0)?, &grid, tol)?;
    let text = match args.output.format {
        Format::Csv => to_csv(&curve),
        Format::Json => to_json(&curve)? + "\n",
    };
    emit(&args.output.out, &text, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct EntryResult {
    report: VerificationReport,
    torsion_identity: TorsionIdentityReport,
    passed: bool,
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    schema: u32,
    passed: bool,
    entries: Vec<EntryResult>,
}

fn verify_one(entry: &CatalogEntry, grid: Option<&[f64]>, tol: f64) -> Result<EntryResult> {
    let default_grid;
    let grid = match grid {
        Some(g) => g,
        None => {
            default_grid = entry.default_grid();
            &default_grid
        }
    };
    let report = crate::catalog::verify_entry(entry, grid, tol)?;
    let torsion_identity = check_torsion_identity(entry, TORSION_FD_STEP, TORSION_CHECK_TOL)?;
    let passed = report.passed() && torsion_identity.passed();
    Ok(EntryResult {
        report,
        torsion_identity,
        passed,
    })
}

fn summary_table(results: &[EntryResult]) -> String {
    let mut s = format!(
        "{:<22} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}  {}\n",
        "entry", "nullity", "pseudo", "tau-law", "synth", "axis", "tau-id", "status"
    );
    for r in results {
        let rep = &r.report;
        let axis = rep
            .axis_residual
            .zip(rep.axis_gram_max)
            .map(|(a, g)| format!("{:.2e}", a.max(g)))
            .unwrap_or_else(|| "-".into());
        let status = if r.passed {
            "ok".to_string()
        } else {
            let mut f = rep.failures();
            if !r.torsion_identity.passed() {
                f.push("torsion-identity");
            }
            format!("FAIL ({})", f.join(", "))
        };
        s.push_str(&format!(
            "{:<22} {:>9.2e} {:>9.2e} {:>9.2e} {:>9.2e} {:>9} {:>9.2e}  {}\n",
            rep.entry,
            rep.nullity_max,
            rep.pseudo_arc_max,
            rep.torsion_law_max,
            rep.synthesis_vs_closed_max,
            axis,
            r.torsion_identity.max_abs_error,
            status
        ));
    }
    s
}

fn verify_cmd(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let tol = resolve_tol(args.tol)?;
    let results: Vec<EntryResult> = if args.all {
        let entries = default_catalog();
        let outcomes: Vec<Result<EntryResult>> = std::thread::scope(|scope| {
            let handles: Vec<_> = entries
                .iter()
                .map(|e| scope.spawn(move || verify_one(e, None, tol)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification thread panicked"))
                .collect()
        });
        outcomes.into_iter().collect::<Result<_>>()?
    } else {
        let name = args
            .entry
            .as_deref()
            .ok_or_else(|| Error::Usage("verify needs --entry NAME or --all".into()))?;
        let entry = entry_from_args(name, args.c, args.a, args.lambda)?;
        let grid = args.grid.as_deref().map(parse_grid).transpose()?;
        vec![verify_one(&entry, grid.as_deref(), tol)?]
    };
    let passed = results.iter().all(|r| r.passed);
    let table = summary_table(&results);
    let output = VerifyOutput {
        schema: crate::io::SCHEMA_VERSION,
        passed,
        entries: results,
    };
    match (args.format, &args.out) {
        (Some(Format::Json), out) => {
            let json = serde_json::to_string_pretty(&output)? + "\n";
            emit(out, &json, stdout)?;
            if out.is_some() {
                emit(&None, &table, stdout)?;
            }
        }
        (Some(Format::Csv), _) => return Err(Error::Usage("verify reports are text or --format json".into())),
        (None, Some(path)) => {
            write_atomic(path, (serde_json::to_string_pretty(&output)? + "\n").as_bytes())?;
            emit(&None, &table, stdout)?;
        }
        (None, None) => emit(&None, &table, stdout)?,
    }
    if passed {
        Ok(EXIT_OK)
    } else {
        for r in output.entries.iter().filter(|r| !r.passed) {
            let _ = writeln!(stderr, "verification failed: {}", r.report.entry);
        }
        Ok(EXIT_FAILED)
    }
}

#[derive(Debug, Serialize)]
struct CatalogListing {
    name: &'static str,
    label: String,
    generator: String,
    epsilon: Orientation,
    s0: f64,
    alpha0: Vec3,
    grid: (f64, f64, usize),
}

fn catalog_cmd(args: &CatalogArgs, stdout: &mut dyn Write) -> Result<i32> {
    let Some(name) = args.entry.as_deref() else {
        let listing: Vec<CatalogListing> = default_catalog()
            .into_iter()
            .map(|e| {
                let g = e.default_grid();
                CatalogListing {
                    name: e.kind.name(),
                    label: e.label.clone(),
                    generator: e.gen.kind().to_string(),
                    epsilon: e.epsilon,
                    s0: e.s0,
                    alpha0: e.alpha0,
                    grid: (g[0], g[g.len() - 1], g.len()),
                }
            })
            .collect();
        let text = match args.output.format {
            Format::Json => serde_json::to_string_pretty(&listing)? + "\n",
            Format::Csv => {
                let mut t = String::from("name,generator,epsilon,s0,x0,y0,z0\n");
                for l in &listing {
                    let nums = [l.s0, l.alpha0.x, l.alpha0.y, l.alpha0.z].map(fmt_f64).join(",");
                    t.push_str(&format!("{},{},{},{nums}\n", l.name, l.generator, l.epsilon));
                }
                t
            }
        };
        emit(&args.output.out, &text, stdout)?;
        return Ok(EXIT_OK);
    };
    let entry = entry_from_args(name, args.c, args.a, args.lambda)?;
    let grid = match args.grid.as_deref() {
        Some(g) => parse_grid(g)?,
        None => entry.default_grid(),
    };
    let samples: Vec<Sample> = grid
        .iter()
        .map(|&s| entry.closed_form(s).map(|pos| Sample { s, pos, err: 0.0 }))
        .collect::<Result<_>>()?;
    let text = match args.output.format {
        Format::Csv => samples_to_csv(&samples),
        Format::Json => {
            let record = crate::io::CurveRecord {
                schema: crate::io::SCHEMA_VERSION,
                generator: entry.gen.kind().to_string(),
                epsilon: entry.epsilon,
                s0: entry.s0,
                alpha0: entry.alpha0,
                samples,
            };
            serde_json::to_string_pretty(&record)? + "\n"
        }
    };
    emit(&args.output.out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn torsion_cmd(args: &TorsionArgs, stdout: &mut dyn Write) -> Result<i32> {
    let gen = args.gen.generator()?;
    let points = parse_list(&args.at).map_err(|_| Error::Usage(format!("--at {:?}: expected numbers", args.at)))?;
    if points.is_empty() {
        return Err(Error::Usage("--at needs at least one value".into()));
    }
    let mut text = String::new();
    for s in points {
        let tau = torsion_schwarzian(&gen, s)?;
        text.push_str(&fmt_f64(tau));
        text.push('\n');
    }
    emit(&None, &text, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct AiryRow {
    x: f64,
    ai: f64,
    bi: f64,
    aip: f64,
    bip: f64,
}

fn airy_cmd(args: &AiryArgs, stdout: &mut dyn Write) -> Result<i32> {
    let rows: Vec<AiryRow> = parse_grid(&args.grid)?
        .into_iter()
        .map(|x| {
            airy_eval(x).map(|e| AiryRow {
                x,
                ai: e.ai,
                bi: e.bi,
                aip: e.aip,
                bip: e.bip,
            })
        })
        .collect::<Result<_>>()?;
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut t = String::from("x,ai,bi,aip,bip\n");
            for r in &rows {
                t.push_str(&[r.x, r.ai, r.bi, r.aip, r.bip].map(fmt_f64).join(","));
                t.push('\n');
            }
            t
        }
    };
    emit(&args.output.out, &text, stdout)?;
    Ok(EXIT_OK)
}

/// Runs the command line given by `args` (program name first) and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let outcome = match &cli.command {
        Command::Synthesize(a) => synthesize_cmd(a, stdout),
        Command::Verify(a) => verify_cmd(a, stdout, stderr),
        Command::Catalog(a) => catalog_cmd(a, stdout),
        Command::Torsion(a) => torsion_cmd(a, stdout),
        Command::AiryTable(a) => airy_cmd(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "nullcurve: {e}");
            match e {
                Error::QuadratureFailure { .. } => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}
