//! Command-line front end. [`run`] holds all behaviour so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 a verification found a disagreement, 2 invalid
//! input, 3 instance too large for exhaustive search.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use shelflist::bench::{bench_scaling, BenchConfig};
use shelflist::io::{parse_betweenness, parse_instance, serialize_instance};
use shelflist::random::{gen_random, DirectionMix, RandomSpec, TopCycleSize};
use shelflist::reductions::{
    reduce, solve_betweenness_exhaustive, standard_gadgets, table_checksum, verify_gadget_tables,
    verify_reduction_equivalence, ReductionError, ReductionTarget, VerificationLimits,
    DEFAULT_BETWEENNESS_LIMIT,
};
use shelflist::solvers::{solve_with, ExactOptions, DEFAULT_EXACT_LIMIT};
use shelflist::{evaluate_list, Method, Money, Rule, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "shelflist",
    version,
    about = "Arrange products on a shelf for list-scanning buyers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find the best list (or decide whether the target is reachable).
    Solve {
        file: PathBuf,
        /// auto, rc, pa-sc-t1, sepa-sat, sepa-sc-t3 or exact
        #[arg(long, default_value = "auto")]
        method: String,
        /// Overrides the target in the file.
        #[arg(long)]
        target: Option<Money>,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Branch and bound in exhaustive search.
        #[arg(long)]
        prune: bool,
        /// Stop exhaustive search at the first list reaching the target.
        #[arg(long)]
        early_exit: bool,
    },
    /// Total profit of one list.
    Evaluate {
        file: PathBuf,
        /// Product names, comma-separated.
        #[arg(long)]
        list: String,
    },
    /// Reduce a betweenness instance to a product-arrangement instance.
    Reduce {
        file: PathBuf,
        /// pa-sat, pa-sc or sepa-sc
        #[arg(long)]
        target: ReductionTarget,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Solve a betweenness instance by trying every order.
    CheckBetweenness {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BETWEENNESS_LIMIT)]
        limit: usize,
    },
    /// Re-derive the gadget tournaments and replay the behaviour tables.
    VerifyGadgets,
    /// Solve a betweenness instance and its reduction and compare.
    VerifyReduction {
        file: PathBuf,
        #[arg(long)]
        target: ReductionTarget,
        #[arg(long, default_value_t = DEFAULT_BETWEENNESS_LIMIT)]
        limit: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Write a seeded random instance.
    GenRandom {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Time the solvers over a grid of random instances.
    Bench {
        /// Product counts, comma-separated.
        #[arg(long, value_delimiter = ',', default_values_t = [8, 16, 32, 64, 128])]
        n: Vec<usize>,
        /// Buyer counts, comma-separated.
        #[arg(long, value_delimiter = ',', default_values_t = [10, 100, 1000])]
        m: Vec<usize>,
        /// Methods to time, comma-separated (default: all).
        #[arg(long, value_delimiter = ',')]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 7)]
        exact_limit: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// rc, sat or sc
    #[arg(long)]
    rule: Rule,
    /// L, R or mixed:<probability of L>
    #[arg(long, default_value = "L")]
    directions: String,
    /// 1, 3 or any
    #[arg(long, default_value = "any")]
    tc: String,
    #[arg(long, default_value_t = 0)]
    profit_min: i64,
    #[arg(long, default_value_t = 100)]
    profit_max: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure carrying its exit code; the message goes to stderr.
struct Failure(i32, String);

fn invalid(e: impl ToString) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::InstanceTooLarge { .. } => Failure(EXIT_TOO_LARGE, e.to_string()),
        SolveError::NotApplicable { .. } => invalid(e),
    }
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::TooLarge { .. }
        | ReductionError::Solve(SolveError::InstanceTooLarge { .. }) => {
            Failure(EXIT_TOO_LARGE, e.to_string())
        }
        ReductionError::Gadget(_) => Failure(EXIT_MISMATCH, e.to_string()),
        _ => invalid(e),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_directions(s: &str) -> Result<DirectionMix, Failure> {
    match s {
        "L" => Ok(DirectionMix::AllLeft),
        "R" => Ok(DirectionMix::AllRight),
        _ => s
            .strip_prefix("mixed:")
            .and_then(|p| p.parse().ok())
            .map(DirectionMix::Mixed)
            .ok_or_else(|| invalid(format!("invalid --directions `{s}`"))),
    }
}

fn parse_tc(s: &str) -> Result<TopCycleSize, Failure> {
    match s {
        "1" => Ok(TopCycleSize::One),
        "3" => Ok(TopCycleSize::Three),
        "any" => Ok(TopCycleSize::Any),
        _ => Err(invalid(format!("invalid --tc `{s}`"))),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut say = |line: String| writeln!(out, "{line}").map_err(invalid);
    match cmd {
        Command::Solve {
            file,
            method,
            target,
            exact_limit,
            workers,
            prune,
            early_exit,
        } => {
            let mut inst = parse_instance(&read(&file)?).map_err(invalid)?;
            if target.is_some() {
                inst = inst.with_target(target);
            }
            let method = match method.as_str() {
                "auto" => None,
                m => Some(m.parse::<Method>().map_err(invalid)?),
            };
            let opts = ExactOptions {
                limit: exact_limit,
                early_exit,
                prune,
                workers: workers.max(1),
            };
            let s = solve_with(&inst, method, &opts).map_err(solve_failure)?;
            say(format!("decision={}", s.decision.map_or("n/a", yes_no)))?;
            say(format!("best_value={}", s.best_value))?;
            say(format!("method={}", s.method))?;
            if let Some(w) = &s.witness {
                say(format!("list={}", inst.catalog().format_list(w)))?;
            }
        }
        Command::Evaluate { file, list } => {
            let inst = parse_instance(&read(&file)?).map_err(invalid)?;
            let list = inst.catalog().parse_list(&list).map_err(invalid)?;
            let value = evaluate_list(&inst, &list);
            say(format!(
                "decision={}",
                inst.target().map_or("n/a", |r| yes_no(value >= r))
            ))?;
            say(format!("value={value}"))?;
            let cat = inst.catalog();
            for (b, p) in inst.buyers().iter().zip(inst.choices(&list)) {
                say(format!("choice {}={}", b.name(), cat.name(p)))?;
            }
        }
        Command::Reduce {
            file,
            target,
            output,
        } => {
            let b = parse_betweenness(&read(&file)?).map_err(invalid)?;
            let inst = reduce(&b, target).map_err(reduction_failure)?;
            write_file(&output, &serialize_instance(&inst).map_err(invalid)?)?;
            say(format!("products={}", inst.n()))?;
            say(format!("buyers={}", inst.m()))?;
            say(format!(
                "target={}",
                inst.target().expect("reductions set a target")
            ))?;
        }
        Command::CheckBetweenness { file, limit } => {
            let b = parse_betweenness(&read(&file)?).map_err(invalid)?;
            let s = solve_betweenness_exhaustive(&b, limit).map_err(reduction_failure)?;
            say(format!("satisfiable={}", yes_no(s.is_satisfiable())))?;
            if let Some(order) = &s.order {
                let names: Vec<&str> = order.iter().map(|&e| b.element_name(e)).collect();
                say(format!("order={}", names.join(",")))?;
            }
        }
        Command::VerifyGadgets => {
            let lib = standard_gadgets().map_err(|e| Failure(EXIT_MISMATCH, e.to_string()))?;
            say(format!("table_checksum={:#018x}", table_checksum()))?;
            for t in lib.templates() {
                let edges: Vec<String> = t
                    .symbols
                    .iter()
                    .flat_map(|&a| t.symbols.iter().map(move |&b| (a, b)))
                    .filter(|&(a, b)| t.beats(a, b))
                    .map(|(a, b)| format!("{a}>{b}"))
                    .collect();
                say(format!(
                    "role={} consistent={} multiplicity={} tournament={}",
                    t.role,
                    t.consistent,
                    t.multiplicity,
                    edges.join(",")
                ))?;
            }
            let report = verify_gadget_tables(lib);
            say(format!("orderings_checked={}", report.orderings_checked))?;
            for m in &report.mismatches {
                say(format!("mismatch {m}"))?;
            }
            say(format!("mismatches={}", report.mismatches.len()))?;
            if !report.mismatches.is_empty() {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::VerifyReduction {
            file,
            target,
            limit,
            workers,
        } => {
            let b = parse_betweenness(&read(&file)?).map_err(invalid)?;
            let limits = VerificationLimits {
                betweenness_limit: limit,
                exact: ExactOptions {
                    limit: target.product_count(limit),
                    workers: workers.max(1),
                    ..VerificationLimits::default().exact
                },
            };
            let report =
                verify_reduction_equivalence(&b, target, &limits).map_err(reduction_failure)?;
            for line in &report.transcript {
                say(line.clone())?;
            }
            if !report.equivalent {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::GenRandom { spec, output } => {
            let spec = RandomSpec {
                n: spec.n,
                m: spec.m,
                rule: spec.rule,
                directions: parse_directions(&spec.directions)?,
                tc_size: parse_tc(&spec.tc)?,
                profit_min: spec.profit_min,
                profit_max: spec.profit_max,
                seed: spec.seed,
            };
            let inst = gen_random(&spec).map_err(invalid)?;
            write_file(&output, &serialize_instance(&inst).map_err(invalid)?)?;
            say(format!("products={} buyers={}", inst.n(), inst.m()))?;
        }
        Command::Bench {
            n,
            m,
            methods,
            reps,
            exact_limit,
            seed,
        } => {
            let cfg = BenchConfig {
                ns: n,
                ms: m,
                methods: if methods.is_empty() {
                    Method::ALL.to_vec()
                } else {
                    methods
                },
                repetitions: reps,
                exact_limit,
                seed,
                ..BenchConfig::default()
            };
            let mut failed = None;
            bench_scaling(&cfg, |row| {
                if failed.is_none() {
                    failed = say(row.to_string()).err();
                }
            });
            if let Some(f) = failed {
                return Err(f);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}
