//! The `partlab` command line.
//!
//! Exit status: 0 success, 1 verification failure or empty result, 2 usage or
//! input error, 3 search budget exhausted.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::coloring::{for_each_subset, SetColoring};
use crate::hltree::{
    search_hl, tr_emb, tr_emb_count, tstar, verify_hl, HlCertificate, LevelColoring, SearchBudget, SearchOutcome,
};
use crate::ordinals::Ordinal;
use crate::seqtree::Node;
use crate::similarity::{census_brute, h_of_n, OrderFamily, SplitReading};
use crate::walks::{
    eps, realization_check, sample_tuples, stg_check, step_up, sweep, walk, write_sweep_csv, OrdinalFamily,
    SeededColoring, StgInput, WitnessColorings,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "partlab", version, about = "Finite experiments with trees, similarity types and walks on ordinals")]
struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strong-similarity classes of n-sets of nodes with distinct split levels.
    Simtypes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "meets")]
        reading: String,
    },
    /// The census count h(n).
    Hval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reading: Option<String>,
    },
    /// Search for a Halpern-Lauchli certificate.
    HlSearch {
        #[command(flatten)]
        coloring: ColoringArgs,
        /// Number of common split levels.
        #[arg(long)]
        m: usize,
    },
    /// Check a Halpern-Lauchli certificate.
    HlVerify {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        cert: PathBuf,
    },
    /// The tree T*_k.
    Tstar {
        #[arg(long)]
        k: u32,
    },
    /// Embeddings of T*_k with top level n.
    Tremb {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        /// Largest number of embeddings listed.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// The walk from beta down to alpha.
    Walk {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        alpha: String,
    },
    /// Evaluate d on seeded decreasing tuples and write CSV.
    SweepD {
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Witness colorings (JSON); seeded from --seed and --sigma when absent.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        sigma: u32,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Table of a stepped-up seeded coloring.
    Stepup {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        lambda: usize,
        /// Arity of the base coloring.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sigma: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Least n at which a seeded family realizes all colors on [W]^n.
    Realize {
        /// Color counts sigma_1, sigma_2, ... (comma separated).
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<u32>,
        /// The set W (comma separated ordinals).
        #[arg(long, value_delimiter = ',')]
        w: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Check the column realization property for a seeded coloring.
    StgCheck {
        /// JSON with "alphas" and "gamma" (gamma[j] lists gamma_{i,j} for i < j).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct ColoringArgs {
    /// Level coloring (JSON); seeded from the flags below when absent.
    #[arg(long)]
    coloring: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arity.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    sigma: u32,
    #[arg(long, default_value_t = 4)]
    depth: usize,
}

#[derive(Args, Debug)]
struct UniverseArgs {
    #[arg(long, default_value_t = 3)]
    universe_exp: u32,
    #[arg(long, default_value_t = 3)]
    universe_coef: u64,
}

impl UniverseArgs {
    fn build(&self) -> Result<Vec<Ordinal>, Failure> {
        if self.universe_exp > 6 || self.universe_coef > 6 {
            return Err(Failure::usage("universe bounds are capped at exponent 6 and coefficient 6"));
        }
        Ok(Ordinal::universe(self.universe_exp, self.universe_coef))
    }
}

/// What a command produced: the text for `--out`/stdout and the exit status.
struct Output {
    body: String,
    status: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, status: EXIT_OK }
    }

    fn json<T: Serialize>(value: &T, status: i32) -> Self {
        let mut body = serde_json::to_string(value).expect("plain data");
        body.push('\n');
        Output { body, status }
    }
}

#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn usage(m: impl Display) -> Self {
        Failure { status: EXIT_USAGE, message: m.to_string() }
    }
}

fn usage<E: Display>(e: E) -> Failure {
    Failure::usage(e)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_ordinal(s: &str, what: &str) -> Result<Ordinal, Failure> {
    s.parse().map_err(|e| Failure::usage(format!("{what} {s:?}: {e}")))
}

fn level_coloring(args: &ColoringArgs) -> Result<LevelColoring, Failure> {
    match &args.coloring {
        Some(path) => {
            LevelColoring::from_json(&read_file(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
        None => LevelColoring::from_seed(args.seed, args.n, args.sigma, args.depth).map_err(usage),
    }
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Simtypes { n, depth, reading } => {
            let reading: SplitReading = reading.parse().map_err(usage)?;
            let census = census_brute(n, depth, &OrderFamily::lexicographic(), reading).map_err(usage)?;
            Ok(Output::json(&census, EXIT_OK))
        }
        Command::Hval { n, reading } => {
            let r = match &reading {
                Some(s) => s.parse().map_err(usage)?,
                None => SplitReading::default(),
            };
            let h = h_of_n(n, r).map_err(usage)?;
            Ok(match reading {
                Some(_) => Output::json(&json!({"n": n, "reading": r, "h": h}), EXIT_OK),
                None => Output::json(&json!({"n": n, "h": h}), EXIT_OK),
            })
        }
        Command::HlSearch { coloring, m } => {
            let d = level_coloring(&coloring)?;
            let budget = SearchBudget::from_env().map_err(usage)?;
            match search_hl(&d, m, budget).map_err(usage)? {
                SearchOutcome::Found(cert) => Ok(Output::json(&cert, EXIT_OK)),
                SearchOutcome::Exhausted => Ok(Output::json(&json!({"result": "none"}), EXIT_FAIL)),
                SearchOutcome::CapExceeded => Ok(Output::json(&json!({"result": "cap_exceeded"}), EXIT_CAP)),
            }
        }
        Command::HlVerify { coloring, cert } => {
            let d = level_coloring(&coloring)?;
            let c = HlCertificate::from_json(&read_file(&cert)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", cert.display())))?;
            let v = verify_hl(&d, &c).map_err(usage)?;
            Ok(match v.witness() {
                None => Output::json(&json!({"ok": true}), EXIT_OK),
                Some(f) => Output::json(&json!({"ok": false, "failure": f}), EXIT_FAIL),
            })
        }
        Command::Tstar { k } => {
            let t = tstar(k).map_err(usage)?;
            let sp = t.split_levels_unchecked();
            Ok(Output::json(&json!({"k": k, "split_levels": sp, "tree": t}), EXIT_OK))
        }
        Command::Tremb { k, n, limit } => {
            let count = tr_emb_count(k, n).map_err(usage)?;
            let embs = tr_emb(k, n, limit).map_err(usage)?;
            let truncated = count.map_or(true, |c| c > embs.len() as u128);
            let status = if embs.is_empty() { EXIT_FAIL } else { EXIT_OK };
            Ok(Output::json(
                &json!({"k": k, "n": n, "count": count.map(|c| c.to_string()), "truncated": truncated, "embeddings": embs}),
                status,
            ))
        }
        Command::Walk { beta, alpha } => {
            let b = parse_ordinal(&beta, "beta")?;
            let a = parse_ordinal(&alpha, "alpha")?;
            let t = walk(&b, &a).map_err(usage)?;
            let e: Vec<Ordinal> = (0..=t.k()).map(|m| eps(&t, m).expect("m ≤ k")).collect();
            Ok(Output::json(
                &json!({"beta": t.beta, "alpha": t.alpha, "k": t.k(), "gamma_plus": t.gamma_plus,
                        "gamma_minus": t.gamma_minus, "eps": e}),
                EXIT_OK,
            ))
        }
        Command::SweepD { arity, count, seed, witnesses, sigma, universe } => {
            if arity < 3 {
                return Err(Failure::usage("sweep-d needs arity at least 3"));
            }
            let wit = match witnesses {
                Some(p) => WitnessColorings::from_json(&read_file(&p)?)
                    .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
                None if sigma == 0 => return Err(Failure::usage("--sigma must be positive")),
                None => WitnessColorings::seeded(seed, sigma),
            };
            let tuples = sample_tuples(&universe.build()?, arity, count, seed).map_err(usage)?;
            let rows = sweep(&tuples, &wit).map_err(usage)?;
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, arity, &rows).map_err(usage)?;
            Ok(Output::ok(String::from_utf8(buf).expect("csv is utf-8")))
        }
        Command::Stepup { mu, lambda, n, sigma, seed } => {
            if mu > 20 || lambda > 1usize << mu {
                return Err(Failure::usage(format!("need mu ≤ 20 and lambda ≤ 2^mu, got mu = {mu}, lambda = {lambda}")));
            }
            if n == 0 || sigma == 0 {
                return Err(Failure::usage("n and sigma must be positive"));
            }
            let labels: Vec<Node> = (0..lambda as u64).map(|i| Node::from_index(i, mu)).collect();
            let up = step_up(SeededColoring { seed, arity: n, colors: sigma }, labels).map_err(usage)?;
            let mut table = Vec::new();
            for_each_subset(lambda, n + 1, |idx| {
                let set: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
                let color = up.color(&set);
                table.push(json!({"set": set, "color": color}));
                true
            });
            Ok(Output::json(
                &json!({"mu": mu, "lambda": lambda, "n": n, "sigma": sigma, "seed": seed, "table": table}),
                EXIT_OK,
            ))
        }
        Command::Realize { sigma, w, seed, universe } => {
            let w: Vec<Ordinal> = w.iter().map(|s| parse_ordinal(s.trim(), "W member")).collect::<Result<_, _>>()?;
            let fam = OrdinalFamily::seeded(universe.build()?, seed, &sigma).map_err(usage)?;
            let r = realization_check(&fam, &w).map_err(usage)?;
            let status = if r.witnessed.is_some() { EXIT_OK } else { EXIT_FAIL };
            Ok(Output::json(&r, status))
        }
        Command::StgCheck { input, n, theta, seed } => {
            let text = read_file(&input)?;
            let inp: StgInput =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            if n == 0 || theta == 0 {
                return Err(Failure::usage("n and theta must be positive"));
            }
            let d = SeededColoring { seed, arity: n, colors: theta };
            let r = stg_check(&d, &inp, theta).map_err(usage)?;
            let status = if r.holds { EXIT_OK } else { EXIT_FAIL };
            Ok(Output::json(&r, status))
        }
    }
}

/// Run the command line `argv` (program name first) and return the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if cli.workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let out = cli.out;
    match pool.install(|| dispatch(cli.cmd)) {
        Ok(o) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &o.body).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(o.body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => o.status,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.status
        }
    }
}
