use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperrho::verify::{exit_code, feasible_z, Corpus};
use hyperrho::{
    build_family, canonical_key, case_for, generate, matching_number, move_edges, preset, principal_eigenpair,
    report_table, switch_edges, ClassMode, FamilyError, FamilyParams, GenSpec, Hypergraph, MoveSpec, Preset, Shape,
    SolverConfig, SwitchSpec, TableFormat, VerifyError, VerifyReport,
};

/// Spectral radius, matchings and extremal families of k-uniform unicyclic
/// hypergraphs.
#[derive(Parser)]
#[command(name = "hyperrho", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of the extremal family from a preset or explicit parameters.
    Family(FamilyArgs),
    /// Spectral radius and principal eigenvector.
    Rho {
        /// Hypergraph JSON; `-` or omitted reads stdin.
        file: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum matching with a witness.
    Matching {
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All isomorphism classes of unicyclic hypergraphs or supertrees.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "unicyclic")]
        shape: Shape,
        #[arg(long)]
        max_cycle_len: Option<usize>,
        #[arg(long, default_value_t = hyperrho::enumerate::DEFAULT_CAP)]
        cap: usize,
        /// Directory for one JSON file per class, named by canonical key.
        /// Without it, classes are written to stdout one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge moving and edge switching.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Exhaustive check of the extremal-family predictions.
    Verify(VerifyArgs),
    /// Render a saved verify report.
    Report {
        file: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, requires = "z", conflicts_with_all = ["f", "r", "s", "t", "w"])]
    preset: Option<Preset>,
    #[arg(long, requires = "preset")]
    z: Option<usize>,
    #[arg(long, default_value_t = 0)]
    f: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    w: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    shift: Option<f64>,
}

impl SolverArgs {
    fn config(self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            tol: self.tol.unwrap_or(d.tol),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            shift: self.shift.unwrap_or(d.shift),
        }
    }
}

#[derive(Subcommand)]
enum TransformOp {
    /// Move edges `I,J,...` off vertices `V1,V2,...` onto `U`.
    Move {
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        from: Vec<usize>,
        #[arg(long)]
        to: usize,
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exchange `U1` in edge `e` with `V1` in edge `f`.
    Switch {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        u1: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        v1: Vec<usize>,
        file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Atleast,
    Exact,
    Both,
}

impl ModeArg {
    fn modes(self) -> &'static [ClassMode] {
        match self {
            ModeArg::Atleast => &[ClassMode::AtLeast],
            ModeArg::Exact => &[ClassMode::Exact],
            ModeArg::Both => &[ClassMode::AtLeast, ClassMode::Exact],
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "3", value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Comma-separated values, or `all` for every value covered by a case.
    #[arg(long, default_value = "all")]
    z: String,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    #[arg(long, default_value_t = hyperrho::enumerate::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value = "text")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

fn read_input(file: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    match file {
        None => io::stdin().read_to_string(&mut text).context("reading stdin")?,
        Some(p) if p.as_os_str() == "-" => io::stdin().read_to_string(&mut text).context("reading stdin")?,
        Some(p) => return fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    };
    Ok(text)
}

fn read_graph(file: Option<&Path>) -> Result<Hypergraph> {
    Ok(Hypergraph::from_json(&read_input(file)?)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn parse_z(spec: &str, k: usize, m: usize) -> Result<Vec<usize>> {
    if spec == "all" {
        return Ok(feasible_z(k, m));
    }
    spec.split(',').map(|s| s.trim().parse::<usize>().with_context(|| format!("invalid z value `{s}`"))).collect()
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    let cfg = args.solver.config();
    let mut reports: Vec<VerifyReport> = Vec::new();
    for &k in &args.k {
        for &m in &args.m {
            let zs = parse_z(&args.z, k, m)?;
            let mut corpus: Option<Corpus> = None;
            for &z in &zs {
                for &mode in args.mode.modes() {
                    if case_for(k, m, z).is_err() {
                        reports.push(VerifyReport::infeasible(k, m, z, mode));
                        continue;
                    }
                    if corpus.is_none() {
                        corpus = Some(Corpus::build(k, m, &cfg, args.cap)?);
                    }
                    match corpus.as_ref().expect("built above").verify(z, mode, cfg.tol) {
                        Ok(r) => reports.push(r),
                        Err(e) if e.is_infeasible() => reports.push(VerifyReport::infeasible(k, m, z, mode)),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    write_output(args.out.as_deref(), &report_table(&reports, args.format))?;
    Ok(exit_code(&reports))
}

fn run_family(args: &FamilyArgs) -> Result<()> {
    let params = match (args.preset, args.z) {
        (Some(name), Some(z)) => preset(name, args.k, args.m, z)?,
        (None, None) => FamilyParams { k: args.k, m: args.m, f: args.f, r: args.r, s: args.s, t: args.t, w: args.w },
        _ => bail!("--preset and --z must be given together"),
    };
    let family = build_family(params)?;
    write_output(args.out.as_deref(), &family.to_json())
}

fn run_enumerate(spec: &GenSpec, out: Option<&Path>) -> Result<()> {
    let classes = generate(spec)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for h in &classes {
                let path = dir.join(format!("{}.json", canonical_key(h).to_hex()));
                fs::write(&path, h.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!("wrote {} classes to {}", classes.len(), dir.display());
            Ok(())
        }
        None => {
            let lines: String = classes.iter().map(|h| h.to_json() + "\n").collect();
            io::stdout().write_all(lines.as_bytes()).context("writing stdout")
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Family(args) => run_family(&args)?,
        Command::Rho { file, solver, out } => {
            let h = read_graph(file.as_deref())?;
            let pair = principal_eigenpair(&h, &solver.config())?;
            write_output(out.as_deref(), &pair.to_json())?;
        }
        Command::Matching { file, out } => {
            let h = read_graph(file.as_deref())?;
            write_output(out.as_deref(), &serde_json::to_string(&matching_number(&h))?)?;
        }
        Command::Enumerate { k, m, shape, max_cycle_len, cap, out } => {
            run_enumerate(&GenSpec { k, m, shape, max_cycle_len, cap }, out.as_deref())?
        }
        Command::Transform { op } => match op {
            TransformOp::Move { edges, from, to, file, out } => {
                let h = read_graph(file.as_deref())?;
                let g = move_edges(&h, &MoveSpec { edges, from, to })?;
                write_output(out.as_deref(), &g.to_json())?;
            }
            TransformOp::Switch { e, f, u1, v1, file, out } => {
                let h = read_graph(file.as_deref())?;
                let g = switch_edges(&h, &SwitchSpec { e, f, u1, v1 })?;
                write_output(out.as_deref(), &g.to_json())?;
            }
        },
        Command::Verify(args) => return run_verify(&args),
        Command::Report { file, format, out } => {
            let reports: Vec<VerifyReport> =
                serde_json::from_str(&read_input(file.as_deref())?).context("parsing verify report")?;
            write_output(out.as_deref(), &report_table(&reports, format))?;
            return Ok(exit_code(&reports));
        }
    }
    Ok(0)
}

/// Requests that no parameter choice can satisfy exit with 4.
fn is_infeasible(err: &anyhow::Error) -> bool {
    err.downcast_ref::<FamilyError>().is_some() || err.downcast_ref::<VerifyError>().is_some_and(|e| e.is_infeasible())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // keep 2 free for verification mismatches
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_infeasible(&err) { 4 } else { 1 })
        }
    }
}
