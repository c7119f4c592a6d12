//! Command-line front end: argument parsing, report rendering and exit codes.
//!
//! `run` never prints. It returns the report destined for stdout and any
//! diagnostics for stderr, so tests can drive it in-process.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mak_core::fibre::SphereCount;
use mak_core::report::{
    residual_entries, sphere_entries, BettiReport, DecomposeReport, NormalizeReport, VerifyReport, VerifyRow, ZkReport,
};
use mak_core::{
    betti_vector, fibre_closed_form_with, fibre_recursive, poincare_series, reduced_cohomology, reduced_homology,
    theorem_counts, zk_cohomology_with, BigUint, Error, FibreInput, Normalizer, OracleOptions, SimplicialComplex,
    WedgeNormalForm, ZkCohomology, DEFAULT_SUBSET_BOUND,
};
use serde::Serialize;

/// Ledger listing is refused past this many loop spaces.
pub const LEDGER_LIMIT: usize = mak_core::fibre::LEDGER_ENUMERATION_CAP;

pub const SUBSET_BOUND_ENV: &str = "MAK_SUBSET_BOUND";

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InputError = 1,
    Mismatch = 2,
    ResourceLimit = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

/// Decompositions of wedge-into-product fibres and moment-angle cohomology.
#[derive(Debug, Parser)]
#[command(name = "mak", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Largest vertex count accepted by the cohomology oracle
    #[arg(long, global = true, env = SUBSET_BOUND_ENV)]
    pub subset_bound: Option<usize>,

    /// Worker threads for the per-subset fan-out
    #[arg(long, global = true)]
    pub parallelism: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Sphere multiplicities of the fibre of the wedge into the product
    Decompose {
        #[arg(long)]
        n: usize,
        /// Comma-separated loop spaces, one per wedge summand (default: all S^1)
        #[arg(long, value_delimiter = ',')]
        loops: Option<Vec<String>>,
        /// List every subset summand
        #[arg(long)]
        ledger: bool,
    },
    /// Reduced homology and cohomology of a simplicial complex
    Betti {
        #[arg(long)]
        facets: PathBuf,
    },
    /// Integral cohomology of the moment-angle complex
    Zk {
        #[arg(long)]
        facets: PathBuf,
        /// Include the per-subset ledger
        #[arg(long)]
        verbose: bool,
    },
    /// Cross-check closed form, recursion, counting formula and oracle
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Parse and normalize a space expression
    Normalize {
        #[arg(long)]
        expr: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Decompose {
        n: usize,
        loops: Option<Vec<String>>,
        ledger: bool,
    },
    Betti {
        facet_path: PathBuf,
    },
    Zk {
        facet_path: PathBuf,
        verbose: bool,
    },
    Verify {
        n: usize,
    },
    Normalize {
        expr: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub output_format: OutputFormat,
    pub subset_bound: usize,
    /// `None` uses the global rayon pool.
    pub parallelism: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            output_format: OutputFormat::Table,
            subset_bound: DEFAULT_SUBSET_BOUND,
            parallelism: None,
        }
    }

    pub fn json(mut self) -> Self {
        self.output_format = OutputFormat::Json;
        self
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CliCommand::Decompose { n, loops, ledger } => Command::Decompose { n, loops, ledger },
            CliCommand::Betti { facets } => Command::Betti { facet_path: facets },
            CliCommand::Zk { facets, verbose } => Command::Zk {
                facet_path: facets,
                verbose,
            },
            CliCommand::Verify { n } => Command::Verify { n },
            CliCommand::Normalize { expr } => Command::Normalize { expr },
        };
        RunConfig {
            command,
            output_format: cli.format,
            subset_bound: cli.subset_bound.unwrap_or(DEFAULT_SUBSET_BOUND),
            parallelism: cli.parallelism,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: ExitStatus::Success,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(err: &Error) -> Self {
        let status = match err {
            Error::ResourceLimit { .. } | Error::StepBudgetExceeded(_) => ExitStatus::ResourceLimit,
            _ => ExitStatus::InputError,
        };
        Outcome {
            status,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs. Usage errors exit with 1,
/// `--help` and `--version` with 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.into()),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: ExitStatus::InputError,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let work = || match &config.command {
        Command::Decompose { n, loops, ledger } => decompose(config, *n, loops.as_deref(), *ledger),
        Command::Betti { facet_path } => betti(config, facet_path),
        Command::Zk { facet_path, verbose } => zk(config, facet_path, *verbose),
        Command::Verify { n } => verify(config, *n),
        Command::Normalize { expr } => normalize(config, expr),
    };
    let result = match config.parallelism {
        None => work(),
        Some(0) => Err(Error::InvalidInput("--parallelism must be at least 1".into())),
        Some(p) => match rayon::ThreadPoolBuilder::new().num_threads(p).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::InvalidInput(format!("cannot start {p} worker threads: {e}"))),
        },
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_complex(path: &PathBuf) -> Result<SimplicialComplex, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    SimplicialComplex::parse_facets(&text)
}

fn oracle_options(config: &RunConfig) -> OracleOptions {
    OracleOptions {
        subset_bound: config.subset_bound,
        parallel: true,
    }
}

fn decompose(config: &RunConfig, n: usize, loops: Option<&[String]>, ledger: bool) -> Result<Outcome, Error> {
    let input = match loops {
        None => FibreInput::circles(n)?,
        Some(ls) => {
            if ls.len() != n {
                return Err(Error::InvalidInput(format!(
                    "--loops lists {} spaces but --n is {n}",
                    ls.len()
                )));
            }
            let refs: Vec<&str> = ls.iter().map(|s| s.trim()).collect();
            FibreInput::parse(&refs)?
        }
    };
    if ledger && n > LEDGER_LIMIT {
        return Err(Error::ResourceLimit {
            what: "ledger size (number of loop spaces)",
            actual: n,
            bound: LEDGER_LIMIT,
        });
    }
    let result = fibre_closed_form_with(&input, if ledger { LEDGER_LIMIT } else { 0 })?;
    let report = DecomposeReport::new(&input, &result, ledger);
    Ok(Outcome::ok(match config.output_format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let mut out = String::new();
            for s in &report.spheres {
                writeln!(out, "S^{} x{}", s.dim, s.multiplicity).unwrap();
            }
            for r in &report.residual {
                writeln!(out, "{} x{}", r.monomial, r.multiplicity).unwrap();
            }
            if let Some(entries) = &report.ledger {
                out.push('\n');
                for e in entries {
                    let subset: Vec<String> = e.subset.iter().map(ToString::to_string).collect();
                    writeln!(
                        out,
                        "{{{}}} x{} {} [{}]",
                        subset.join(","),
                        e.multiplicity,
                        e.summand,
                        e.origin
                    )
                    .unwrap();
                }
            }
            out
        }
    }))
}

fn betti(config: &RunConfig, path: &PathBuf) -> Result<Outcome, Error> {
    let k = read_complex(path)?;
    let h = reduced_homology(&k);
    let c = reduced_cohomology(&k);
    Ok(Outcome::ok(match config.output_format {
        OutputFormat::Json => to_json(&BettiReport::new(k.m(), &h, &c)?),
        OutputFormat::Table => {
            let mut out = format!("{:>6}  {:<16}  {}\n", "degree", "homology", "cohomology");
            for ((d, hg), (_, cg)) in h.iter().zip(c.iter()) {
                writeln!(out, "{d:>6}  {:<16}  {cg}", hg.to_string()).unwrap();
            }
            out
        }
    }))
}

fn zk(config: &RunConfig, path: &PathBuf, verbose: bool) -> Result<Outcome, Error> {
    let k = read_complex(path)?;
    let z = zk_cohomology_with(&k, &oracle_options(config))?;
    let report = ZkReport::new(&z, verbose)?;
    Ok(Outcome::ok(match config.output_format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let betti: Vec<String> = report.betti.iter().map(ToString::to_string).collect();
            let mut out = format!(
                "m: {}\nbetti: {}\npoincare: {}\n",
                z.m,
                betti.join(" "),
                poincare_series(&z)
            );
            if report.torsion.is_empty() {
                out.push_str("torsion: none\n");
            } else {
                let t: Vec<String> = report
                    .torsion
                    .iter()
                    .map(|(l, t)| format!("Z/{t} in degree {l}"))
                    .collect();
                writeln!(out, "torsion: {}", t.join(", ")).unwrap();
            }
            if verbose {
                out.push('\n');
                for s in &z.summands {
                    writeln!(
                        out,
                        "sigma {} : H~^{}(K_sigma) = {} -> degree {}",
                        s.sigma, s.reduced_degree, s.group, s.total_degree
                    )
                    .unwrap();
                }
            }
            out
        }
    }))
}

fn verify(config: &RunConfig, n: usize) -> Result<Outcome, Error> {
    let input = FibreInput::circles(n)?;
    let closed = fibre_closed_form_with(&input, 0)?.normal_form;
    let recursive = fibre_recursive(&input)?.normal_form;
    let theorem = theorem_counts(n)?;
    let oracle = zk_cohomology_with(&SimplicialComplex::disjoint_points(n)?, &oracle_options(config))?;
    let report = compare(n, &closed, &recursive, &theorem, &oracle);
    Ok(render_verify(config.output_format, &report))
}

/// Row-by-row comparison of the four routes. Sphere dimension `d` is matched
/// against oracle degree `d`.
pub fn compare(
    n: usize,
    closed: &WedgeNormalForm,
    recursive: &WedgeNormalForm,
    theorem: &BTreeMap<usize, SphereCount>,
    oracle: &ZkCohomology,
) -> VerifyReport {
    let oracle_betti = betti_vector(oracle);

    let theorem_at = |d: u32| {
        theorem
            .values()
            .find(|c| c.dimension == d)
            .map_or_else(BigUint::default, |c| c.multiplicity.clone())
    };
    let oracle_at = |d: u32| BigUint::from(oracle_betti.get(d as usize).copied().unwrap_or(0));

    let mut dims: BTreeSet<u32> = BTreeSet::new();
    dims.extend(closed.spheres().keys());
    dims.extend(recursive.spheres().keys());
    dims.extend(theorem.values().map(|c| c.dimension));
    dims.extend((1..oracle_betti.len() as u32).filter(|&d| oracle_betti[d as usize] != 0));

    let mut mismatches = Vec::new();
    let rows: Vec<VerifyRow> = dims
        .into_iter()
        .map(|d| {
            let values = [
                closed.multiplicity(d),
                recursive.multiplicity(d),
                theorem_at(d),
                oracle_at(d),
            ];
            if values.iter().any(|v| *v != values[0]) {
                mismatches.push(format!(
                    "S^{d}: closed-form {} recursive {} theorem {} oracle {}",
                    values[0], values[1], values[2], values[3]
                ));
            }
            let [closed_form, recursive, theorem, oracle] = values.map(|v| v.to_string());
            VerifyRow {
                dim: d,
                closed_form,
                recursive,
                theorem,
                oracle,
            }
        })
        .collect();
    for form in [closed, recursive] {
        if !form.residual().is_empty() {
            mismatches.push(format!("non-sphere summands left: {form}"));
        }
    }
    if oracle_betti[0] != 1 {
        mismatches.push(format!("oracle degree 0 rank is {}", oracle_betti[0]));
    }
    for (l, t) in oracle.torsion() {
        mismatches.push(format!("oracle torsion Z/{t} in degree {l}"));
    }

    VerifyReport {
        n,
        agree: mismatches.is_empty(),
        rows,
        oracle_torsion_free: oracle.is_torsion_free(),
        mismatches,
    }
}

/// Exit 0 when the report agrees, 2 otherwise.
pub fn render_verify(format: OutputFormat, report: &VerifyReport) -> Outcome {
    let n = report.n;
    let stdout = match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Table => {
            let mut out = format!(
                "{:<5} {:>12} {:>12} {:>12} {:>12}\n",
                "dim", "closed-form", "recursive", "theorem", "oracle"
            );
            for r in &report.rows {
                writeln!(
                    out,
                    "{:<5} {:>12} {:>12} {:>12} {:>12}",
                    format!("S^{}", r.dim),
                    r.closed_form,
                    r.recursive,
                    r.theorem,
                    r.oracle
                )
                .unwrap();
            }
            if report.agree {
                out.push_str("agree\n");
            } else {
                out.push_str("MISMATCH\n");
                for m in &report.mismatches {
                    writeln!(out, "  {m}").unwrap();
                }
            }
            out
        }
    };
    if report.agree {
        Outcome::ok(stdout)
    } else {
        Outcome {
            status: ExitStatus::Mismatch,
            stdout,
            stderr: format!("verification failed for n = {n}\n"),
        }
    }
}

fn normalize(config: &RunConfig, text: &str) -> Result<Outcome, Error> {
    let e = mak_core::parse(text)?;
    let traced = Normalizer::default().run(&e)?;
    let report = NormalizeReport {
        input: e.to_string(),
        normal_form: traced.normal_form.to_string(),
        spheres: sphere_entries(&traced.normal_form),
        residual: residual_entries(&traced.normal_form),
        steps: traced.steps,
    };
    Ok(Outcome::ok(match config.output_format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => format!("{}\n", report.normal_form),
    }))
}
