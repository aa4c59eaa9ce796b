//! Batch-oriented command-line front end.
//!
//! Every command writes one JSON envelope to standard output:
//!
//! ```json
//! { "schema_version": "1", "command": "...", "inputs": {...}, "result": {...} }
//! ```
//!
//! Exact fractions appear as `{num, den, value}` so scripts never have to
//! re-derive the binary64 rendering. `bounds --format csv` is the one
//! non-JSON output (a plain CSV table for plotting). Diagnostics go to the
//! error stream. Identical argument vectors, seeds included, produce
//! byte-identical output.
//!
//! Exit codes: 0 success, 1 not found / suite failed, 2 input error,
//! 3 budget or convergence error.

use crate::bounds::{self, DpBase};
use crate::election::{Committee, Election, Fraction, RationalThreshold};
use crate::error::{Error, Result};
use crate::lottery::{self, ActivationChoice, SolverOptions};
use crate::profiles;
use crate::search::{self, SearchResult, Strategy, StrategyOptions};
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "winset",
    version,
    about = "Condorcet winning sets: committee checks, lotteries, bounds, search, verification",
    disable_help_subcommand = true
)]
struct Cli {
    /// Cap on worker threads. Execution is sequential (one worker), which
    /// always satisfies the cap; the flag is accepted for interface
    /// stability.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an election profile and write it to a file.
    Gen(GenArgs),
    /// Check whether a committee is alpha-undominated in a profile.
    Check(CheckArgs),
    /// Compute the Condorcet dimension of a profile.
    Dim(DimArgs),
    /// Solve the confined-adversary game for a candidate lottery.
    Lottery(LotteryArgs),
    /// Emit the alpha-vs-k bounds table.
    Bounds(BoundsArgs),
    /// Search for an alpha-undominated committee.
    Search(SearchArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Candidate count (cyclic, impartial, factorial).
    #[arg(long)]
    m: Option<u32>,
    /// First cycle length (cycle-product).
    #[arg(long)]
    s: Option<u32>,
    /// Second cycle length (cycle-product).
    #[arg(long)]
    t: Option<u32>,
    /// Voter count (impartial).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Cyclic,
    CycleProduct,
    MinimalDim3,
    Impartial,
    Factorial,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    profile: PathBuf,
    /// Comma-separated candidate ids, e.g. "1,4".
    #[arg(long)]
    committee: String,
    /// Exact fraction P/Q.
    #[arg(long)]
    alpha: String,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long)]
    profile: PathBuf,
    /// Committee-enumeration node budget.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Args, Debug)]
struct LotteryArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value = "1/1")]
    alpha: String,
    /// Activation: identity, kth-root, or relu:<shift>.
    #[arg(long, default_value = "identity")]
    g: String,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 20_000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long = "k-max")]
    k_max: u32,
    /// Base column for the recursive dp bound.
    #[arg(long, value_enum, default_value_t = BaseArg::Thm1)]
    base: BaseArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BaseArg {
    Thm1,
    Thm4,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Csv,
    Json,
    /// Plot-ready series: k, thm4, the 2/(k+1) floor, and 16/k.
    Figure,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    alpha: String,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Recursion fraction (recursive strategy).
    #[arg(long)]
    gamma: Option<f64>,
    /// Voter-cut fraction (recursive strategy); defaults to gamma^2.
    #[arg(long)]
    beta: Option<f64>,
    /// Sampling budget (lottery strategy).
    #[arg(long, default_value_t = 200)]
    samples: u32,
    /// Enumeration node budget (brute strategy).
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Activation for the lottery strategy.
    #[arg(long, default_value = "kth-root")]
    g: String,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum StrategyArg {
    Brute,
    Greedy,
    Lottery,
    Recursive,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Committee size (thm6, cor1).
    #[arg(long)]
    k: Option<u32>,
    /// Cycle length (thm6).
    #[arg(long)]
    t: Option<u32>,
    /// Candidate count (cor1).
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum SuiteArg {
    Thm6,
    Cor1,
    #[value(name = "claim-high")]
    ClaimHigh,
}

/// What `dispatch` hands back to the binary: exit code plus the exact bytes
/// for each stream.
#[derive(Debug)]
pub struct DispatchOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Envelope<I: Serialize, R: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    inputs: I,
    result: R,
}

fn envelope<I: Serialize, R: Serialize>(command: &'static str, inputs: I, result: R) -> String {
    let env = Envelope {
        schema_version: "1",
        command,
        inputs,
        result,
    };
    let mut out = serde_json::to_string_pretty(&env).expect("serializable envelope");
    out.push('\n');
    out
}

/// Parses an argument vector (without the program name) and runs the
/// requested command. All output is returned, not printed, so the dispatch
/// is directly testable.
pub fn dispatch<S: AsRef<str>>(args: &[S]) -> DispatchOutcome {
    let argv =
        std::iter::once("winset".to_string()).chain(args.iter().map(|s| s.as_ref().to_string()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    DispatchOutcome {
                        exit_code: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => DispatchOutcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match run(cli.command) {
        Ok((exit_code, stdout)) => DispatchOutcome {
            exit_code,
            stdout,
            stderr: String::new(),
        },
        Err(err) => DispatchOutcome {
            exit_code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn run(command: Command) -> Result<(i32, String)> {
    match command {
        Command::Gen(args) => run_gen(args),
        Command::Check(args) => run_check(args),
        Command::Dim(args) => run_dim(args),
        Command::Lottery(args) => run_lottery(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Search(args) => run_search(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn read_profile(path: &PathBuf) -> Result<Election> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    profiles::parse_election(&text)
}

fn parse_committee(spec: &str) -> Result<Committee> {
    let ids: Vec<u32> = spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad candidate id {tok:?}")))
        })
        .collect::<Result<_>>()?;
    Committee::new(ids)
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for {family}")))
}

fn run_gen(args: GenArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        family: Family,
        #[serde(skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        s: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        t: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        seed: u64,
        out: String,
    }
    #[derive(Serialize)]
    struct Output {
        num_candidates: u32,
        num_voters: u32,
        path: String,
    }
    let election = match args.family {
        Family::Cyclic => {
            let m = require(args.m, "m", "cyclic")?;
            if m == 0 {
                return Err(Error::InvalidParameter("--m must be >= 1".into()));
            }
            profiles::gen_cyclic(m)
        }
        Family::CycleProduct => {
            let s = require(args.s, "s", "cycle-product")?;
            let t = require(args.t, "t", "cycle-product")?;
            profiles::gen_cycle_product(s, t)?
        }
        Family::MinimalDim3 => profiles::gen_minimal_dim3(),
        Family::Impartial => {
            let n = require(args.n, "n", "impartial")?;
            let m = require(args.m, "m", "impartial")?;
            if n == 0 || m == 0 {
                return Err(Error::InvalidParameter("--n and --m must be >= 1".into()));
            }
            profiles::gen_impartial_culture(n, m, args.seed)
        }
        Family::Factorial => {
            let m = require(args.m, "m", "factorial")?;
            profiles::gen_full_factorial(m)?
        }
    };
    let text = profiles::serialize_election(&election);
    std::fs::write(&args.out, text).map_err(|e| {
        Error::InvalidParameter(format!("cannot write {}: {e}", args.out.display()))
    })?;
    let out = envelope(
        "gen",
        Inputs {
            family: args.family,
            m: args.m,
            s: args.s,
            t: args.t,
            n: args.n,
            seed: args.seed,
            out: args.out.display().to_string(),
        },
        Output {
            num_candidates: election.num_candidates(),
            num_voters: election.num_voters(),
            path: args.out.display().to_string(),
        },
    );
    Ok((0, out))
}

#[derive(Serialize)]
struct CertificateOut {
    candidate: u32,
    count: u32,
    fraction: Fraction,
}

fn run_check(args: CheckArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        profile: String,
        committee: Committee,
        alpha: Fraction,
    }
    #[derive(Serialize)]
    struct Output {
        undominated: bool,
        certificate: CertificateOut,
        stability_constant: Fraction,
    }
    let election = read_profile(&args.profile)?;
    let committee = parse_committee(&args.committee)?;
    let alpha: RationalThreshold = args.alpha.parse()?;
    let undominated = election.is_alpha_undominated(&committee, &alpha)?;
    let (candidate, count) = election.max_domination(&committee)?;
    let out = envelope(
        "check",
        Inputs {
            profile: args.profile.display().to_string(),
            committee: committee.clone(),
            alpha: Fraction::new(alpha.numerator(), alpha.denominator()),
        },
        Output {
            undominated,
            certificate: CertificateOut {
                candidate,
                count,
                fraction: Fraction::new(count as u64, election.num_voters() as u64),
            },
            stability_constant: election.stability_constant(&committee)?,
        },
    );
    Ok((0, out))
}

fn run_dim(args: DimArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        profile: String,
        budget: u64,
    }
    #[derive(Serialize)]
    struct Output {
        dimension: u32,
        witness: Committee,
    }
    let election = read_profile(&args.profile)?;
    let (dimension, witness) = election.condorcet_dimension(args.budget)?;
    let out = envelope(
        "dim",
        Inputs {
            profile: args.profile.display().to_string(),
            budget: args.budget,
        },
        Output { dimension, witness },
    );
    Ok((0, out))
}

fn run_lottery(args: LotteryArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        profile: String,
        k: u32,
        alpha: Fraction,
        g: String,
        tol: f64,
        iters: usize,
        seed: u64,
    }
    #[derive(Serialize)]
    struct Output {
        weights: Vec<f64>,
        achieved_value: f64,
        target_value: f64,
        iterations: usize,
        max_expected_domination: f64,
    }
    let election = read_profile(&args.profile)?;
    if args.k == 0 {
        return Err(Error::InvalidParameter("--k must be >= 1".into()));
    }
    let alpha: RationalThreshold = args.alpha.parse()?;
    let choice: ActivationChoice = args.g.parse()?;
    let g = choice.spec(args.k)?;
    let opts = SolverOptions {
        max_iterations: args.iters,
        tolerance: args.tol,
        seed: args.seed,
        ..SolverOptions::default()
    };
    let solution = lottery::solve_undominated_lottery(&election, args.k, &alpha, &g, &opts)?;
    let max_expected = (1..=election.num_candidates())
        .map(|a| lottery::expected_domination(&election, &solution.lottery, args.k, a))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let out = envelope(
        "lottery",
        Inputs {
            profile: args.profile.display().to_string(),
            k: args.k,
            alpha: Fraction::new(alpha.numerator(), alpha.denominator()),
            g: g.to_string(),
            tol: args.tol,
            iters: args.iters,
            seed: args.seed,
        },
        Output {
            weights: solution.lottery.weights().to_vec(),
            achieved_value: solution.achieved_value,
            target_value: solution.target_value,
            iterations: solution.iterations,
            max_expected_domination: max_expected,
        },
    );
    Ok((0, out))
}

fn run_bounds(args: BoundsArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        k_max: u32,
        base: BaseArg,
        format: FormatArg,
    }
    #[derive(Serialize)]
    struct Output {
        rows: Vec<bounds::BoundRow>,
        #[serde(skip_serializing_if = "Option::is_none")]
        crossover: Option<u32>,
    }
    if args.k_max == 0 {
        return Err(Error::InvalidParameter("--k-max must be >= 1".into()));
    }
    let base = match args.base {
        BaseArg::Thm1 => DpBase::Thm1,
        BaseArg::Thm4 => DpBase::Thm4,
    };
    let rows = bounds::theorem7_table(args.k_max, base);
    match args.format {
        FormatArg::Csv => Ok((0, bounds::bound_rows_csv(&rows))),
        FormatArg::Figure => {
            let mut out = String::from("k,thm4,lower,jiang\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{:.6},{:.6},{:.6}\n",
                    r.k,
                    r.thm4,
                    r.lower,
                    16.0 / r.k as f64
                ));
            }
            Ok((0, out))
        }
        FormatArg::Json => {
            let crossover = bounds::theorem7_crossover(&rows, base);
            let out = envelope(
                "bounds",
                Inputs {
                    k_max: args.k_max,
                    base: args.base,
                    format: args.format,
                },
                Output { rows, crossover },
            );
            Ok((0, out))
        }
    }
}

fn run_search(args: SearchArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        profile: String,
        k: u32,
        alpha: Fraction,
        strategy: StrategyArg,
        seed: u64,
        gamma: f64,
        beta: f64,
        samples: u32,
        budget: u64,
        g: String,
    }
    let election = read_profile(&args.profile)?;
    if args.k == 0 {
        return Err(Error::InvalidParameter("--k must be >= 1".into()));
    }
    let alpha: RationalThreshold = args.alpha.parse()?;
    let mut opts = StrategyOptions {
        seed: args.seed,
        node_budget: args.budget,
        max_samples: args.samples,
        activation: args.g.parse()?,
        ..StrategyOptions::default()
    };
    if let Some(gamma) = args.gamma {
        opts.recursive.gamma = gamma;
        opts.recursive.beta = gamma * gamma;
    }
    if let Some(beta) = args.beta {
        opts.recursive.beta = beta;
    }
    let strategy = match args.strategy {
        StrategyArg::Brute => Strategy::Brute,
        StrategyArg::Greedy => Strategy::Greedy,
        StrategyArg::Lottery => Strategy::Lottery,
        StrategyArg::Recursive => Strategy::Recursive,
    };
    let result: SearchResult = search::run_strategy(&election, args.k, &alpha, strategy, &opts)?;
    let found = result.committee.is_some();
    let out = envelope(
        "search",
        Inputs {
            profile: args.profile.display().to_string(),
            k: args.k,
            alpha: Fraction::new(alpha.numerator(), alpha.denominator()),
            strategy: args.strategy,
            seed: args.seed,
            gamma: opts.recursive.gamma,
            beta: opts.recursive.beta,
            samples: args.samples,
            budget: args.budget,
            g: args.g.clone(),
        },
        &result,
    );
    Ok((if found { 0 } else { 1 }, out))
}

fn run_verify(args: VerifyArgs) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Inputs {
        suite: SuiteArg,
        #[serde(skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        t: Option<u32>,
        #[serde(skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        budget: u64,
    }
    let report = match args.suite {
        SuiteArg::Thm6 => {
            let k = require(args.k, "k", "thm6")?;
            let t = require(args.t, "t", "thm6")?;
            verify::verify_theorem6(k, t, args.budget)?
        }
        SuiteArg::Cor1 => {
            let m = require(args.m, "m", "cor1")?;
            let k = require(args.k, "k", "cor1")?;
            verify::verify_cor1_tightness(m, k)?
        }
        SuiteArg::ClaimHigh => {
            // The built-in reference configuration: the 6-candidate cyclic
            // profile with the diametric-pair distribution at α = 1/2 under
            // the identity activation, checked in exact rationals.
            let e = profiles::gen_cyclic(6);
            let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
            let dist = crate::election::CommitteeDistribution::new(vec![
                (Committee::new([1, 4])?, r(9, 20)),
                (Committee::new([2, 5])?, r(7, 20)),
                (Committee::new([3, 6])?, r(1, 5)),
            ])?;
            verify::verify_claim_high_exact(&e, &dist, &RationalThreshold::half())?
        }
    };
    let passed = report.passed;
    let out = envelope(
        "verify",
        Inputs {
            suite: args.suite,
            k: args.k,
            t: args.t,
            m: args.m,
            budget: args.budget,
        },
        report,
    );
    Ok((if passed { 0 } else { 1 }, out))
}
