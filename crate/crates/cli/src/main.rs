//! `izlab` command-line front end.
//!
//! Exit codes: 0 success or pass, 1 check failure or failing suite,
//! 2 incomplete (budget exhausted), 64 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use izlab::search::{count_classes, enumerate, SearchConfig};
use izlab::suite::{run_suite, search_birkhoff_not_bisemilattice, SUITE_NAMES};
use izlab::{classify, parse_identity, FiniteAlgebra, Variety};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "izlab",
    version,
    about = "Finite models of implication zroupoids"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Worker threads. Output does not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Omit elapsed-time fields so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the algebras of one size in a variety as JSON lines.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "i")]
        variety: Variety,
        #[arg(long)]
        no_iso_reduce: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity on the algebra(s) in a file.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        identity: String,
    },
    /// Print the classification report of the algebra(s) in a file.
    Classify {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_size: usize,
    },
    /// Run a named model search.
    Search {
        #[arg(long)]
        name: String,
        #[arg(long)]
        max_size: usize,
    },
    /// Count isomorphism classes per size and variety.
    Census {
        /// Inclusive size range, `A..B`.
        #[arg(long)]
        sizes: String,
        /// Comma-separated varieties.
        #[arg(long, default_value = "i")]
        variety: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let stdout = io::stdout();
    let result = pool.install(|| run(cli, &mut stdout.lock()));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let budget = match cli.global.budget {
        None => None,
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(usage(format!(
                "--budget must be a non-negative number, got {s}"
            )))
        }
    };
    let timing = !cli.global.no_timing;
    match cli.command {
        Command::Enumerate {
            size,
            variety,
            no_iso_reduce,
            out: path,
        } => {
            let cfg = SearchConfig::new(size, variety)
                .iso_reduce(!no_iso_reduce)
                .budget(budget);
            let e = enumerate(&cfg).map_err(|e| usage(e.to_string()))?;
            match path {
                Some(p) => {
                    let file = fs::File::create(&p)?;
                    let mut w = io::BufWriter::new(file);
                    e.write_jsonl(&mut w, timing)?;
                    w.flush()?;
                }
                None => e.write_jsonl(&mut *out, timing)?,
            }
            Ok(if e.complete { EXIT_OK } else { EXIT_INCOMPLETE })
        }
        Command::Check { algebra, identity } => {
            let algebras = read_algebras(&algebra)?;
            let id = parse_identity(&identity).map_err(|e| usage(format!("--identity: {e}")))?;
            let mut all = true;
            for alg in &algebras {
                match alg.satisfies(&id).into_witness() {
                    None => writeln!(out, "true")?,
                    Some(w) => {
                        all = false;
                        let w = serde_json::to_string(&w).expect("witness serialises");
                        writeln!(out, "false {w}")?;
                    }
                }
            }
            Ok(if all { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Classify { algebra } => {
            for alg in read_algebras(&algebra)? {
                writeln!(out, "{}", classify(&alg).to_json())?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, max_size } => {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                return Err(usage(format!(
                    "unknown suite `{suite}`; expected one of {}",
                    SUITE_NAMES.join(", ")
                )));
            }
            let r = run_suite(&suite, max_size, budget).map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{}", r.to_json())?;
            for flag in r.red_flags() {
                eprintln!(
                    "RED FLAG: `{}` holds on all involutive members but not on all members",
                    flag.name
                );
            }
            Ok(r.verdict.exit_code() as u8)
        }
        Command::Search { name, max_size } => {
            if name != "br-not-bisemilattice" {
                return Err(usage(format!(
                    "unknown search `{name}`; expected br-not-bisemilattice"
                )));
            }
            let (hits, complete) = search_birkhoff_not_bisemilattice(max_size, budget)
                .map_err(|e| usage(e.to_string()))?;
            for alg in &hits {
                writeln!(out, "{}", alg.to_json())?;
            }
            Ok(if complete { EXIT_OK } else { EXIT_INCOMPLETE })
        }
        Command::Census { sizes, variety } => {
            let (lo, hi) = parse_range(&sizes)?;
            let varieties = variety
                .split(',')
                .map(|v| v.trim().parse::<Variety>().map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            let mut code = EXIT_OK;
            for n in lo..=hi {
                for &v in &varieties {
                    let c = count_classes(n, v, budget).map_err(|e| usage(e.to_string()))?;
                    let count = if c.complete {
                        c.count.to_string()
                    } else {
                        code = EXIT_INCOMPLETE;
                        format!("≥{} (incomplete)", c.count)
                    };
                    if timing {
                        writeln!(out, "{n}, {v}, {count}, {:.3}s", c.elapsed.as_secs_f64())?;
                    } else {
                        writeln!(out, "{n}, {v}, {count}")?;
                    }
                }
            }
            Ok(code)
        }
    }
}

fn read_algebras(path: &Path) -> Result<Vec<FiniteAlgebra>, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| usage(format!("--algebra {}: {e}", path.display())))?;
    let algebras = FiniteAlgebra::parse_stream(&src)
        .map_err(|e| usage(format!("--algebra {}: {e}", path.display())))?;
    if algebras.is_empty() {
        return Err(usage(format!(
            "--algebra {}: no algebra found",
            path.display()
        )));
    }
    Ok(algebras)
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("--sizes expects A..B, got `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
