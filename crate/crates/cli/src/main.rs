use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ckq_core::coeffring::JSignature;
use ckq_core::export::{self, Format};
use ckq_core::freealg::DEFAULT_STEP_CAP;
use ckq_core::qdual::{self, DualPairing, Sign};
use ckq_core::qgroup::{self, Report, Verdict};
use ckq_core::rmatrix::{r_and_c, r_plus_minus, verify_ybe};
use ckq_core::suites::{self, Suite, SuiteConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ckq", version, about = "Quantum orthogonal Cayley-Klein groups: construction and exact verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Matrix size N.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=5))]
    n: u8,
    /// Contraction signature, N-1 comma-separated slots from {1, iota}.
    #[arg(long, global = true)]
    j: Option<String>,
    #[arg(long, global = true, alias = "emit", value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rewriting step cap for reductions.
    #[arg(long = "step-cap", global = true, default_value_t = DEFAULT_STEP_CAP)]
    step_cap: usize,
    /// Monomial degree bound for pairing checks and tables.
    #[arg(long, global = true, default_value_t = 2)]
    degree: usize,
    /// Worker threads (0 for one per core).
    #[arg(long, global = true, env = "CKQ_JOBS")]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Latex,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Latex => Format::Latex,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Export the RTT and orthogonality relations.
    Relations,
    /// Run verification suites.
    Verify {
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suite: SuiteList,
    },
    /// Check the classical group layer on random Cayley elements.
    Classical {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Export R(j), R(+), R(-) and C(j).
    Rmatrix,
    /// Pairing tables, the formal L pattern and the duality checks.
    Dual,
}

#[derive(Clone, Debug)]
struct SuiteList(Vec<Suite>);

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    Suite::parse_list(s).map(SuiteList).map_err(|e| e.to_string())
}

struct Output {
    text: String,
    verdict: Verdict,
}

fn exit_for(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn signature(g: &Global) -> Result<JSignature, String> {
    let dim = g.n as usize;
    let j = match &g.j {
        None => JSignature::all_one(dim),
        Some(s) => s.parse::<JSignature>().map_err(|e| e.to_string())?,
    };
    if j.dim() != dim {
        return Err(format!("signature has {} slots, N = {dim} needs {}", j.n(), dim - 1));
    }
    Ok(j)
}

fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> ckq_core::Result<Vec<(String, Report)>> {
    suites
        .par_iter()
        .map(|s| suites::run(*s, cfg).map(|r| (s.name().to_string(), r)))
        .collect()
}

fn execute(cmd: &Command, g: &Global, j: &JSignature) -> ckq_core::Result<Output> {
    let fmt: Format = g.format.into();
    let cfg = SuiteConfig {
        signature: j.clone(),
        step_cap: g.step_cap,
        degree: g.degree,
        seed: g.seed,
        samples: 100,
    };
    match cmd {
        Command::Relations => {
            let (t, rel) = qgroup::relations_for(j)?;
            let ok = !rel.is_empty() && qgroup::verify_counit_on_relations(&t, &rel).verdict == Verdict::Pass;
            Ok(Output { text: export::relations(&t, &rel, j, fmt), verdict: Verdict::from_bool(ok) })
        }
        Command::Verify { suite } => {
            let items = run_suites(&suite.0, &cfg)?;
            let verdict = export::overall(&items);
            Ok(Output { text: export::reports("verify", j, &items, fmt), verdict })
        }
        Command::Classical { samples } => {
            let rep = suites::classical_suite(j, *samples, g.seed)?;
            let items = vec![("classical".to_string(), rep)];
            let verdict = export::overall(&items);
            Ok(Output { text: export::reports("classical", j, &items, fmt), verdict })
        }
        Command::Rmatrix => {
            let (r, c) = r_and_c(j)?;
            let (rp, rm) = r_plus_minus(&r)?;
            let text = export::rmatrix(j, &[("R", &r), ("R_plus", &rp), ("R_minus", &rm)], &c, fmt);
            Ok(Output { text, verdict: Verdict::from_bool(verify_ybe(&r)) })
        }
        Command::Dual => {
            let pairing = DualPairing::new(j)?;
            let tables: Vec<_> = Sign::BOTH
                .into_iter()
                .flat_map(|s| (0..=g.degree).map(move |d| (s, d)))
                .map(|(s, d)| pairing.table(s, d))
                .collect();
            let (t, _) = qgroup::relations_for(j)?;
            let pattern = qdual::formal_l_pattern(&t);
            let items = run_suites(&[Suite::Ll, Suite::Ladd, Suite::Pairing, Suite::Sdual], &cfg)?;
            let verdict = export::overall(&items);
            Ok(Output { text: export::dual(j, &tables, &pattern, &items, fmt), verdict })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let j = match signature(g) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(g.jobs.unwrap_or(0)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    let out = match execute(&cli.command, g, &j) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let written = match &g.out {
        Some(path) => fs::write(path, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written.or_else(|e| if e.kind() == std::io::ErrorKind::BrokenPipe { Ok(()) } else { Err(e) }) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    ExitCode::from(exit_for(out.verdict))
}
