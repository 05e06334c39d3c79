//! The `localprop` command line.
//!
//! Exit status: 0 when the command succeeds or the property holds
//! (including runs that stop on budget, which report a `status` field),
//! 1 when the property fails or a search is infeasible, 2 on usage, parse
//! or input errors. Every payload carries `schema_version` and `version`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coloring::LocalSpec;
use crate::constructions::{
    behrend_construction, collinear_point_set, eg_color_count, estimate_property_probability, random_coloring,
    verify_isosceles_free, verify_no_3ap, RandomColoringConfig,
};
use crate::energy::{bound_report, dyadic_profile, energy_decomposition};
use crate::error::{Error, Result};
use crate::forbidden::{counting_lemma_find, max_mono_degree, ThmParams};
use crate::io;
use crate::number_sets::{
    additive_energy, difference_set, g_search, repeated_difference_bound_check, sum_set, verify_diff_local_property,
    verify_distance_local_property, GSearchOutcome,
};
use crate::solver::{min_colors, SolveBudget};

#[derive(Debug, Parser)]
#[command(name = "localprop", version, about = "Local-property colorings, difference sets and distance sets")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Payload format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: usize,
}

impl SpecArgs {
    fn spec(self) -> Result<LocalSpec> {
        LocalSpec::new(self.k, self.ell)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the local property of a coloring file.
    VerifyColoring {
        input: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        /// Write the failing subset here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check the local difference property of an integer set file.
    VerifyDiffset {
        input: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check the local distance property of a point set file.
    VerifyDistances {
        input: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build colorings, 3-AP-free sets and collinear point sets.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Least number of colors of K_n with the local property.
    SolveF {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        spec: SpecArgs,
        /// Search node budget shared by all color counts.
        #[arg(long, default_value_t = 50_000_000)]
        nodes: u64,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Per-color-count log as CSV.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Least difference-set size of n-subsets of {1..range_cap} with the property.
    SolveG {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        range_cap: i64,
        /// Cap on the number of candidate sets.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Color energy of a coloring, or additive energy of an integer set.
    Energy {
        input: PathBuf,
        /// Treat the input as an integer set.
        #[arg(long)]
        integer_set: bool,
    },
    /// Dyadic profile and per-scale bounds for parameters k > m >= 2.
    Profile {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Search a set system for d subsets with a large common intersection.
    LemmaCheck { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Uniform random coloring.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fraction of random colorings with the local property.
    Estimate {
        #[arg(long)]
        n: usize,
        /// Defaults to the random-construction color count for (n, k, ell).
        #[arg(long)]
        colors: Option<u32>,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// 3-AP-free set of the given size.
    Behrend {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Points (a, 0) for an integer set file.
    Collinear {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Outcome of a command: a payload, an optional CSV rendering and the
/// exit status.
pub struct Outcome {
    pub payload: serde_json::Value,
    pub csv: Option<String>,
    pub status: i32,
}

impl Outcome {
    fn new(command: &str, body: &impl Serialize, status: i32) -> Result<Self> {
        Ok(Outcome {
            payload: io::envelope(command, body)?,
            csv: None,
            status,
        })
    }
}

pub fn main() -> i32 {
    run_args(std::env::args_os())
}

/// Parses `args` (program name first), runs the command and prints the
/// payload. Returns the exit status.
pub fn run_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let text = match (cli.format, &out.csv) {
                (Format::Csv, Some(csv)) => csv.clone(),
                _ => match io::to_json_string(&out.payload) {
                    Ok(s) => s,
                    Err(e) => return fail(&e),
                },
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 2;
            }
            out.status
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

/// Runs a parsed command on a thread pool of the requested size.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match cli.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| run(&cli.command)),
        None => run(&cli.command),
    }
}

/// Runs one command. Numeric parameters are checked before any file is
/// touched.
pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::VerifyColoring { input, spec, witness } => {
            let spec = spec.spec()?;
            let g = io::load_coloring(input)?;
            let verdict = g.verify_local_property(spec)?;
            write_witness(witness.as_deref(), &verdict)?;
            let status = i32::from(!verdict.holds);
            let body = json!({
                "n": g.n(),
                "spec": spec,
                "num_colors": g.num_colors(),
                "holds": verdict.holds,
                "witness": verdict.witness,
            });
            Outcome::new("verify-coloring", &body, status)
        }
        Command::VerifyDiffset { input, spec, witness } => {
            let spec = spec.spec()?;
            let a = io::load_integer_set(input)?;
            let verdict = verify_diff_local_property(&a, spec)?;
            write_witness(witness.as_deref(), &verdict)?;
            let status = i32::from(!verdict.holds);
            let body = json!({
                "size": a.len(),
                "spec": spec,
                "difference_set_size": difference_set(&a)?.len(),
                "holds": verdict.holds,
                "witness": verdict.witness,
            });
            Outcome::new("verify-diffset", &body, status)
        }
        Command::VerifyDistances { input, spec, witness } => {
            let spec = spec.spec()?;
            let p = io::load_point_set(input)?;
            let verdict = verify_distance_local_property(&p, spec)?;
            write_witness(witness.as_deref(), &verdict)?;
            let status = i32::from(!verdict.holds);
            let points = verdict
                .witness
                .as_ref()
                .map(|w| w.subset.iter().map(|&i| p.points()[i]).collect::<Vec<_>>());
            let body = json!({
                "size": p.len(),
                "spec": spec,
                "holds": verdict.holds,
                "witness": verdict.witness,
                "witness_points": points,
            });
            Outcome::new("verify-distances", &body, status)
        }
        Command::Construct { what } => construct(what),
        Command::SolveF {
            n,
            spec,
            nodes,
            certificate,
            log,
        } => {
            let spec = spec.spec()?;
            if spec.k > *n {
                return Err(Error::KExceedsSize { k: spec.k, size: *n });
            }
            let res = min_colors(*n, spec, SolveBudget::nodes(*nodes))?;
            if let Some(path) = certificate {
                io::save_coloring(path, &res.certificate)?;
            }
            if let Some(path) = log {
                std::fs::write(path, res.log_csv())?;
            }
            let mut out = Outcome::new("solve-f", &res, 0)?;
            out.csv = Some(res.log_csv());
            Ok(out)
        }
        Command::SolveG {
            n,
            spec,
            range_cap,
            budget,
            certificate,
        } => {
            let spec = spec.spec()?;
            let res = g_search(*n, spec, *range_cap, *budget)?;
            let status = match &res {
                GSearchOutcome::Found(found) => {
                    if let Some(path) = certificate {
                        io::write_json(path, &found.certificate)?;
                    }
                    0
                }
                GSearchOutcome::Infeasible { .. } => 1,
                GSearchOutcome::BudgetExceeded { .. } => 0,
            };
            Outcome::new("solve-g", &res, status)
        }
        Command::Energy { input, integer_set } => {
            if *integer_set {
                let a = io::load_integer_set(input)?;
                let body = json!({
                    "size": a.len(),
                    "additive_energy": additive_energy(&a)?.to_string(),
                    "sum_set_size": sum_set(&a).len(),
                    "difference_set_size": if a.len() >= 2 { Some(difference_set(&a)?.len()) } else { None },
                    "repeated_differences": if a.len() >= 2 { Some(repeated_difference_bound_check(&a)?) } else { None },
                });
                Outcome::new("energy", &body, 0)
            } else {
                let g = io::load_coloring(input)?;
                let hist = g.color_histogram();
                let decomposition = energy_decomposition(&g)?;
                let mono = max_mono_degree(&g);
                let body = json!({
                    "n": g.n(),
                    "num_colors": g.num_colors(),
                    "multiplicities": hist.multiplicities,
                    "color_energy": g.color_energy()?.to_string(),
                    "cauchy_schwarz_floor": g.cauchy_schwarz_floor().to_string(),
                    "decomposition": decomposition,
                    "max_mono_degree": mono,
                });
                let mut out = Outcome::new("energy", &body, 0)?;
                let mut csv = String::from("color,multiplicity\n");
                for (c, m) in hist.multiplicities.iter().enumerate() {
                    csv.push_str(&format!("{c},{m}\n"));
                }
                out.csv = Some(csv);
                Ok(out)
            }
        }
        Command::Profile { input, k, m } => {
            let p = ThmParams::new(*k, *m)?;
            let g = io::load_coloring(input)?;
            let profile = dyadic_profile(&g, p);
            let report = bound_report(&g, p);
            let body = json!({
                "profile": profile,
                "report": report,
            });
            let mut out = Outcome::new("profile", &body, 0)?;
            out.csv = Some(report.to_csv());
            Ok(out)
        }
        Command::LemmaCheck { input } => {
            let inst = io::load_set_system(input)?;
            let hit = counting_lemma_find(&inst)?;
            let status = i32::from(hit.is_none());
            let body = json!({
                "n": inst.n,
                "d": inst.d,
                "num_sets": inst.sets.len(),
                "min_size": inst.min_size(),
                "threshold": inst.threshold().to_string(),
                "hypothesis_holds": inst.hypothesis_holds(),
                "hit": hit,
            });
            Outcome::new("lemma-check", &body, status)
        }
    }
}

fn construct(what: &Construct) -> Result<Outcome> {
    match what {
        Construct::Random { n, colors, seed, out } => {
            let g = random_coloring(RandomColoringConfig {
                n: *n,
                colors: *colors,
                seed: *seed,
            })?;
            io::save_coloring(out, &g)?;
            let body = json!({
                "kind": "random",
                "n": n,
                "colors": colors,
                "seed": seed,
                "colors_used": g.num_colors(),
                "color_energy": g.color_energy()?.to_string(),
            });
            Outcome::new("construct", &body, 0)
        }
        Construct::Estimate {
            n,
            colors,
            spec,
            trials,
            seed,
        } => {
            let spec = spec.spec()?;
            let colors = match colors {
                Some(c) => *c,
                None => {
                    let c = eg_color_count(*n as u64, spec)?;
                    u32::try_from(c).map_err(|_| Error::Overflow("color count"))?
                }
            };
            let est = estimate_property_probability(*n, colors, spec, *trials, *seed)?;
            let body = json!({
                "kind": "estimate",
                "n": n,
                "colors": colors,
                "spec": spec,
                "seed": seed,
                "satisfied": est.satisfied,
                "trials": est.trials,
            });
            Outcome::new("construct", &body, 0)
        }
        Construct::Behrend { size, out } => {
            let b = behrend_construction(*size)?;
            io::write_json(out, &b.set)?;
            let body = json!({
                "kind": "behrend",
                "size": b.set.len(),
                "params": b.params,
                "max_element": b.set.elements().last(),
                "three_ap": verify_no_3ap(&b.set),
            });
            Outcome::new("construct", &body, 0)
        }
        Construct::Collinear { input, out } => {
            let a = io::load_integer_set(input)?;
            let p = collinear_point_set(&a);
            io::write_json(out, &p)?;
            let witness = verify_isosceles_free(&p);
            let status = i32::from(witness.is_some());
            let body = json!({
                "kind": "collinear",
                "size": p.len(),
                "isosceles_free": witness.is_none(),
                "witness": witness,
            });
            Outcome::new("construct", &body, status)
        }
    }
}

fn write_witness<T: Serialize>(path: Option<&Path>, verdict: &crate::PropertyVerdict<T>) -> Result<()> {
    match (path, &verdict.witness) {
        (Some(path), Some(w)) => io::write_json(path, w),
        _ => Ok(()),
    }
}

/// Parses and runs without printing; used by tests.
pub fn run_quiet<I, T>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    execute(&cli)
}

