use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use macpieri_core::macdonald::{p_branching, schur_specialize};
use macpieri_core::matinv::{self, PairParams, BoxRange, InverseReport};
use macpieri_core::pieri::{pieri_expand, pieri_expand_reduced};
use macpieri_core::recurrence::recurrence_expand;
use macpieri_core::render::{self, PieriDoc, RecurrenceDoc};
use macpieri_core::verify::{self, Status, Suite, VerifyOptions};
use macpieri_core::{DominantWeight, Partition, SymPoly};

/// Exact Pieri and recurrence formulas for type-A Macdonald polynomials.
#[derive(Parser)]
#[command(name = "macpieri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// P_mu on the monomial basis.
    Poly {
        /// Comma-separated parts, e.g. 2,1.
        #[arg(long)]
        partition: String,
        /// Number of variables.
        #[arg(long)]
        vars: usize,
        /// Specialize q = t (the Schur polynomial).
        #[arg(long)]
        q_equals_t: bool,
        #[command(flatten)]
        out: Output,
    },
    /// P_{r w1} P_lambda expanded in the P basis.
    Pieri {
        #[arg(long)]
        n: usize,
        /// Weight coordinates, e.g. 1,0.
        #[arg(long)]
        weight: String,
        #[arg(long)]
        r: u32,
        /// Use the reduced form for a slot with lambda_k = 0.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// P_lambda as a sum of products P_{r' w1} P_target.
    Recur {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Checks that the pair (f, g) is mutually inverse on a box.
    Matinv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Box corners, e.g. 0,0..2,2.
        #[arg(long = "box")]
        range: String,
        /// Symbolic u (the default).
        #[arg(long, conflicts_with = "trials")]
        symbolic: bool,
        /// Number of random exact-rational specializations of u.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "trials")]
        rng_seed: u64,
    },
    /// Runs the verification sweeps.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest partition size in the weight sweeps.
        #[arg(long, default_value_t = 5)]
        max_size: u32,
        /// Largest theta and lambda_i in the closed-form sweeps.
        #[arg(long, default_value_t = 4)]
        max_theta: u32,
        /// Upper corner of the inverse-pair boxes.
        #[arg(long, default_value_t = 2)]
        box_hi: i64,
        /// Random trials per two-dimensional inverse-pair cell.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {}", e.0);
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}

fn init_threads() -> Result<(), Usage> {
    let Ok(v) = std::env::var("MACPIERI_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| Usage(format!("MACPIERI_THREADS={v:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn weight(n: usize, s: &str) -> Result<DominantWeight, Usage> {
    let w = DominantWeight::parse(s)?;
    if w.n() != n {
        return Err(Usage(format!("weight {s:?} has {} coordinates, expected {n}", w.n())));
    }
    Ok(w)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Poly { partition, vars, q_equals_t, out } => {
            let mu = Partition::parse(&partition)?;
            let p = if q_equals_t { schur_specialize(&mu, vars)? } else { (*p_branching(&mu, vars)?).clone() };
            print_poly(&p, out.format)?;
        }
        Command::Pieri { n, weight: w, r, k, out } => {
            let lam = weight(n, &w)?;
            let terms = match k {
                Some(k) => pieri_expand_reduced(&lam, r, k)?,
                None => pieri_expand(&lam, r)?,
            };
            match out.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&PieriDoc { n, weight: lam, r, terms })?),
                Format::Latex => println!("{}", render::latex_pieri(&terms)),
                Format::Text => {
                    for t in &terms {
                        println!("theta={:?} target=({}) coeff={}", t.theta, t.target, t.coeff);
                    }
                }
            }
        }
        Command::Recur { n, weight: w, k, out } => {
            let lam = weight(n, &w)?;
            let terms = recurrence_expand(&lam, k)?;
            match out.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&RecurrenceDoc { n, weight: lam, k, terms })?),
                Format::Latex => println!("{}", render::latex_recurrence(&terms)),
                Format::Text => {
                    for t in &terms {
                        println!(
                            "theta={:?} row={} target=({}) coeff={}",
                            t.theta, t.row_factor, t.target, t.coeff
                        );
                    }
                }
            }
        }
        Command::Matinv { n, k, r, range, symbolic: _, trials, rng_seed } => {
            let bx = BoxRange::parse(&range)?;
            if bx.dim() != n {
                return Err(Usage(format!("box {range:?} has dimension {}, expected {n}", bx.dim())));
            }
            let report: InverseReport = match trials {
                Some(t) => matinv::verify_inverse_trials(&bx, n, k, r, t, rng_seed)?,
                None => matinv::verify_inverse(&bx, &PairParams::symbolic(n, k, r)?)?,
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            return Ok(report.passed());
        }
        Command::Verify { suite, max_size, max_theta, box_hi, trials, rng_seed, format } => {
            let suites: Vec<Suite> =
                if suite == "all" { Suite::ALL.to_vec() } else { suite.split(',').map(str::parse).collect::<Result<_, _>>()? };
            let opts = VerifyOptions { max_size, max_theta, box_hi, trials, seed: rng_seed };
            let report = verify::run(&suites, &opts);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    for c in &report.cells {
                        let tag = match c.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Skip => "SKIP",
                        };
                        let detail = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
                        println!("{tag} {} [{}] {}{detail}", c.suite, c.check, c.params);
                    }
                    let t = &report.totals;
                    println!("{}: {} passed, {} failed, {} skipped", report.suite, t.pass, t.fail, t.skip);
                }
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn print_poly(p: &SymPoly, format: Format) -> Result<(), Usage> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(p)?),
        Format::Latex => println!("{}", render::latex_sympoly(p)),
        Format::Text => {
            for (k, c) in p.terms().rev() {
                println!("{k:?} {c}");
            }
        }
    }
    Ok(())
}
