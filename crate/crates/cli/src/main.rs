//! `stairbasin` command line.
//!
//! Exit codes: 0 for success or a true relation, 1 for a false relation or a
//! failed check, 2 for usage and parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stairbasin::basinlab::{self, ExperimentReport};
use stairbasin::groebner::{torus_limit, Ideal, StaircaseKind, Weight};
use stairbasin::orders::{
    build_poset, check_certificate, find_certificate, incidence_filter, Order,
};
use stairbasin::staircase::{enumerate, Direction};
use stairbasin::{Error, StandardSet};

const DEFAULT_TRIALS: usize = 100;
const DEFAULT_NMAX: u32 = 6;
const CERTIFICATE_BOUND: u32 = 10;

#[derive(Parser)]
#[command(
    name = "stairbasin",
    version,
    about = "Staircases, their orders and lex Gröbner basins"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the staircases with `n` boxes.
    Enumerate {
        n: u32,
        /// One JSON record per staircase.
        #[arg(long, conflicts_with = "ascii")]
        json: bool,
        /// Box diagrams.
        #[arg(long)]
        ascii: bool,
    },
    /// Hasse diagram of an order on the staircases with `n` boxes.
    Poset {
        n: u32,
        #[arg(long, value_enum)]
        order: OrderArg,
        /// Graphviz output instead of an edge list.
        #[arg(long)]
        dot: bool,
    },
    /// Decide `a <= b`; prints true or false.
    Check {
        #[arg(value_enum)]
        order: CheckArg,
        /// Staircase as `{"columns":[...]}` or `4,3,1`.
        a: String,
        b: String,
    },
    /// C4 sum of staircases.
    C4 {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        direction: u8,
        #[arg(required = true, num_args = 1..)]
        parts: Vec<String>,
    },
    /// Cell dimensions of a staircase.
    Dims { staircase: String },
    /// Gröbner computations on a generator file (`-` reads stdin).
    Groebner(GroebnerArgs),
    /// Run a seeded experiment suite.
    Verify(VerifyArgs),
    /// Search for an incidence certificate for `(a, b)`.
    Certify {
        a: String,
        b: String,
        /// Check the certificate in this JSON file instead of searching.
        #[arg(long)]
        check: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").args(["staircase", "basis", "limit"]))]
struct GroebnerArgs {
    file: PathBuf,
    /// Print the staircase of the lex initial ideal.
    #[arg(long)]
    staircase: bool,
    /// Print the reduced lex basis (the default).
    #[arg(long)]
    basis: bool,
    /// Print the torus limit for the weight `v1,v2`.
    #[arg(long, value_name = "V1,V2", allow_hyphen_values = true)]
    limit: Option<Weight>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, env = "STAIRBASIN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u32,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Et,
    Punc,
    Dominance,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::Et => Order::Etale,
            OrderArg::Punc => Order::Punctual,
            OrderArg::Dominance => Order::Dominance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Et,
    Punc,
    Dominance,
    /// Necessary condition for weak incidence.
    Filter,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Prop1,
    Prop2,
    Divisibility,
    Calibration,
    Punc,
    PuncGeneric,
    EtClosure,
    SingleColumn,
    Duality,
    Refinement,
    Splitting,
    Certificates,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::NegativeHeight(_)
            | Error::ZeroIdeal
            | Error::MalformedCertificate(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let outcome = run(cli.command, &mut out);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Enumerate { n, json, ascii } => {
            let all = enumerate(n);
            if json {
                let records: Vec<String> = all.iter().map(StandardSet::to_json).collect();
                out.push_str(&format!("[\n  {}\n]\n", records.join(",\n  ")));
            } else if ascii {
                for s in &all {
                    out.push_str(&format!("{s}\n{}\n", s.ascii_art()));
                }
            } else {
                for s in &all {
                    out.push_str(&format!("{s}\n"));
                }
            }
            Ok(true)
        }
        Command::Poset { n, order, dot } => {
            if n == 0 {
                return Err(Failure::Usage("poset needs n >= 1".into()));
            }
            let poset = build_poset(n, order.into());
            out.push_str(&if dot {
                poset.to_dot()
            } else {
                poset.edge_list()
            });
            Ok(true)
        }
        Command::Check { order, a, b } => {
            let (a, b) = (staircase_arg(&a)?, staircase_arg(&b)?);
            let holds = match order {
                CheckArg::Et => Order::Etale.leq(&a, &b),
                CheckArg::Punc => Order::Punctual.leq(&a, &b),
                CheckArg::Dominance => Order::Dominance.leq(&a, &b),
                CheckArg::Filter => incidence_filter(&a, &b),
            };
            out.push_str(&format!("{holds}\n"));
            Ok(holds)
        }
        Command::C4 { direction, parts } => {
            let direction = Direction::try_from(direction)?;
            let parts = parts
                .iter()
                .map(|p| staircase_arg(p))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let sum = StandardSet::c4_sum_all(&parts, direction);
            out.push_str(&format!("{}\n", sum.to_json()));
            Ok(true)
        }
        Command::Dims { staircase } => {
            let s = staircase_arg(&staircase)?;
            let dims = s.cell_dimensions();
            out.push_str(&format!(
                "{}\n",
                serde_json::to_string(&dims).expect("dimensions serialize")
            ));
            Ok(true)
        }
        Command::Groebner(args) => groebner(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Certify { a, b, check } => {
            let (a, b) = (staircase_arg(&a)?, staircase_arg(&b)?);
            if let Some(path) = check {
                let text = read_input(&path)?;
                let cert = serde_json::from_str(&text).map_err(|e| Error::Parse {
                    line: e.line(),
                    message: e.to_string(),
                })?;
                let ok = check_certificate(&cert, &a, &b)?;
                out.push_str(&format!("{ok}\n"));
                return Ok(ok);
            }
            if a.cardinality() > CERTIFICATE_BOUND {
                return Err(Failure::Usage(format!(
                    "certificate search is limited to n <= {CERTIFICATE_BOUND}"
                )));
            }
            match find_certificate(&a, &b, CERTIFICATE_BOUND) {
                Some(cert) => {
                    let text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
                    out.push_str(&format!("{text}\n"));
                    Ok(true)
                }
                None => {
                    out.push_str("no certificate\n");
                    Ok(false)
                }
            }
        }
    }
}

fn groebner(args: GroebnerArgs, out: &mut String) -> Outcome {
    let text = read_input(&args.file)?;
    let ideal = Ideal::parse(&text)?;
    if let Some(v) = args.limit {
        let limit = torus_limit(&ideal, v)?;
        out.push_str(&limit.to_text());
        return Ok(true);
    }
    let gb = ideal.groebner();
    if args.staircase {
        return match gb.staircase_kind() {
            StaircaseKind::Finite(s) => {
                out.push_str(&format!("{}\n", s.to_json()));
                Ok(true)
            }
            StaircaseKind::Infinite => {
                out.push_str("infinite\n");
                Err(Error::NotZeroDimensional.into())
            }
        };
    }
    out.push_str(&Ideal::new(gb.elements().to_vec())?.to_text());
    Ok(true)
}

fn verify(args: VerifyArgs, out: &mut String) -> Outcome {
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    if args.nmax == 0 {
        return Err(Failure::Usage("--nmax must be at least 1".into()));
    }
    let VerifyArgs {
        trials, seed, nmax, ..
    } = args;
    let report: ExperimentReport = match args.suite {
        Suite::Prop1 => basinlab::run_prop1(trials, nmax, seed)?,
        Suite::Prop2 => basinlab::run_prop2(trials, nmax, seed)?,
        Suite::Divisibility => basinlab::run_divisibility(trials, nmax, seed)?,
        Suite::Calibration => basinlab::run_torus_calibration(trials, nmax, seed)?,
        Suite::Punc => basinlab::run_punc_consistency(trials, nmax, seed)?,
        Suite::PuncGeneric => basinlab::run_punc_generic_weights(trials, nmax, seed)?,
        Suite::EtClosure => basinlab::run_et_closure_covers(nmax, seed)?,
        Suite::SingleColumn => basinlab::run_single_column_density(nmax, trials, seed)?,
        Suite::Duality => basinlab::run_duality(nmax)?,
        Suite::Refinement => basinlab::run_refinement(nmax)?,
        Suite::Splitting => basinlab::run_splitting(nmax)?,
        Suite::Certificates => basinlab::run_certificates(nmax)?,
    };
    if args.json {
        out.push_str(&report.to_json());
        out.push('\n');
    } else {
        out.push_str(&report.to_table());
    }
    Ok(report.passed())
}

fn read_input(path: &PathBuf) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

/// `{"columns":[4,3,1]}`, or the bare label `4,3,1` (empty for `∅`).
fn staircase_arg(s: &str) -> std::result::Result<StandardSet, Failure> {
    let t = s.trim();
    if t.starts_with('{') {
        return Ok(StandardSet::from_json(t)?);
    }
    if t.is_empty() {
        return Ok(StandardSet::empty());
    }
    let heights = t
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|h| h.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot read staircase `{s}`")))?;
    Ok(StandardSet::try_from_signed(&heights)?)
}
