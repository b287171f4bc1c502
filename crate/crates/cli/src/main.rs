use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use permsort_core::experiment::{run_bench, to_csv};
use permsort_core::oracle::default_limit;
use permsort_core::{
    all_pairs_optimize, decompose, mcd_exact, merged_decompose_with, optimize_costs, CostInput, CostMatrix,
    Decomposition, Error, Method, Optimized, Permutation, Route, Transposition,
};

#[derive(Parser)]
#[command(name = "permsort", version, about = "Low-cost transposition decompositions of permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replace every transposition cost by the cost of its cheapest decomposition.
    Optimize {
        /// Cost file (`n <N>` followed by `a b value` lines, or a `path` file).
        costs: PathBuf,
        /// Where to write the optimized costs; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OptimizeMethod::Both)]
        method: OptimizeMethod,
    },
    /// Decompose a permutation into transpositions.
    Decompose {
        costs: PathBuf,
        /// File holding the permutation in one-line or cycle notation.
        #[arg(required_unless_present = "perm")]
        perm_file: Option<PathBuf>,
        /// The permutation given inline instead of as a file.
        #[arg(short, long, conflicts_with = "perm_file")]
        perm: Option<String>,
        #[arg(long, value_enum, default_value_t = DecomposeMethod::Mld)]
        method: DecomposeMethod,
        /// Replace each optimized transposition by raw transpositions.
        #[arg(long)]
        expand: bool,
        /// Expansion route used by --expand.
        #[arg(long, value_enum, default_value_t = ExpandRoute::Substitution)]
        route: ExpandRoute,
        /// Explicit joins for --method merge, e.g. "1,2;3,7".
        #[arg(long)]
        join: Option<String>,
        /// Use the raw costs as if they were already optimized.
        #[arg(long, conflicts_with = "expand")]
        trust_raw: bool,
    },
    /// Mean minimum MLD cost of random cycles, raw versus optimized costs.
    Bench {
        #[arg(long, default_value_t = 3)]
        kmin: usize,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// CSV destination; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact minimum cost by exhaustive search, checked against the heuristics.
    Oracle {
        costs: PathBuf,
        #[arg(required_unless_present = "perm")]
        perm_file: Option<PathBuf>,
        #[arg(short, long, conflicts_with = "perm_file")]
        perm: Option<String>,
        /// Largest n searched (default 7, or PERMSORT_LIMIT).
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OptimizeMethod {
    Alg1,
    BellmanFord,
    Both,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum DecomposeMethod {
    Mld,
    Std,
    Merge,
    MetricExact,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpandRoute {
    Substitution,
    PathSearch,
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 1,
            Failure::Core(Error::Contract(_)) => 2,
            Failure::Core(Error::Infeasible { .. }) => 3,
            Failure::Core(Error::SizeLimit { .. }) => 4,
            Failure::Core(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_costs(path: &Path) -> Result<CostInput, Failure> {
    CostMatrix::parse(&read(path)?).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    }
    .into())
}

fn read_perm(file: Option<&Path>, inline: Option<&str>, n: usize) -> Result<Permutation, Failure> {
    let text = match (file, inline) {
        (_, Some(t)) => t.to_string(),
        (Some(f), None) => read(f)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let body = body.join(" ");
    let body = body.trim();
    if body.is_empty() || body == "()" {
        return Ok(Permutation::identity(n));
    }
    Ok(Permutation::parse(body, Some(n))?)
}

fn parse_joins(text: &str) -> Result<Vec<Transposition>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let bad = || Error::InvalidArgument(format!("bad join {pair:?}, expected \"a,b\""));
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            Ok(Transposition::new(a, b)?)
        })
        .collect()
}

fn fmt_cost(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "inf".into()
    }
}

fn cmd_optimize(costs: &Path, output: Option<&Path>, method: OptimizeMethod) -> Outcome {
    let raw = read_costs(costs)?.into_matrix();
    let optimized = match method {
        OptimizeMethod::Alg1 => optimize_costs(&raw).optimized,
        OptimizeMethod::BellmanFord => all_pairs_optimize(&raw),
        OptimizeMethod::Both => Optimized::new(&raw, 1e-9)?.costs().clone(),
    };
    let changed: Vec<_> = raw
        .pairs()
        .filter(|&(a, b, v)| optimized.get(a, b) != v)
        .map(|(a, b, v)| (a, b, v, optimized.get(a, b)))
        .collect();
    let report = |out: &mut String| {
        out.push_str(&format!("# {} entries changed\n", changed.len()));
        for (a, b, old, new) in &changed {
            out.push_str(&format!("# ({a} {b}) {} -> {}\n", fmt_cost(*old), fmt_cost(*new)));
        }
    };
    let mut text = String::new();
    report(&mut text);
    match output {
        Some(path) => {
            write(path, &optimized.to_text())?;
            print!("{text}");
        }
        None => {
            text.push_str(&optimized.to_text());
            print!("{text}");
        }
    }
    Ok(())
}

fn print_decomposition(d: &Decomposition) {
    println!("transpositions (applied right-to-left):");
    println!("{d}");
    println!("length: {}", d.len());
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    costs: &Path,
    perm_file: Option<&Path>,
    perm: Option<&str>,
    method: DecomposeMethod,
    expand: bool,
    route: ExpandRoute,
    join: Option<&str>,
    trust_raw: bool,
) -> Outcome {
    let input = read_costs(costs)?;
    let path = match &input {
        CostInput::Path(p) => Some(p.clone()),
        CostInput::Matrix(_) => None,
    };
    let raw = input.into_matrix();
    let target = read_perm(perm_file, perm, raw.n())?;
    if join.is_some() && method != DecomposeMethod::Merge {
        return Err(Error::InvalidArgument("--join only applies to --method merge".into()).into());
    }

    let optimized = if trust_raw || method == DecomposeMethod::MetricExact {
        None
    } else {
        Some(Optimized::new(&raw, 1e-9)?)
    };
    let star = match &optimized {
        Some(o) => o.costs().clone(),
        None => raw.clone().trust_as_optimized(),
    };
    let report = match (method, join) {
        (DecomposeMethod::Merge, Some(j)) => merged_decompose_with(&target, &star, &parse_joins(j)?)?,
        (DecomposeMethod::Merge, None) => decompose(&target, &star, Method::MergedMld)?,
        (DecomposeMethod::Mld, _) => decompose(&target, &star, Method::PerCycleMld)?,
        (DecomposeMethod::Std, _) => decompose(&target, &star, Method::PerCycleStd)?,
        (DecomposeMethod::MetricExact, _) => {
            let path = path.ok_or_else(|| {
                Error::Contract("--method metric-exact needs a `path` cost file".into())
            })?;
            decompose(&target, &raw, Method::MetricExact(path))?
        }
    };

    let mut decomposition = report.decomposition.clone();
    if expand {
        if let Some(o) = &optimized {
            let route = match route {
                ExpandRoute::Substitution => Route::Substitution,
                ExpandRoute::PathSearch => Route::PathSearch,
            };
            decomposition = o.expand_all(&decomposition, route)?;
            if decomposition.cost(&raw) != report.cost {
                return Err(Error::Contract(format!(
                    "expansion costs {} but the decomposition costs {}",
                    decomposition.cost(&raw),
                    report.cost
                ))
                .into());
            }
        }
    }
    if !decomposition.validate(&target) {
        return Err(Error::Contract(format!("{decomposition} does not multiply to the target")).into());
    }

    println!("permutation: {}", target.cycle_notation());
    println!("method: {}{}", report.method.name(), if expand { " (expanded)" } else { "" });
    print_decomposition(&decomposition);
    println!("cost: {}", fmt_cost(report.cost));
    println!("lower bound: {}", fmt_cost(report.lower_bound));
    match report.alpha {
        Some(a) => println!("ratio to lower bound: {a:.4}"),
        None => println!("ratio to lower bound: n/a"),
    }
    Ok(())
}

fn cmd_bench(kmin: usize, kmax: usize, trials: usize, seed: u64, output: Option<&Path>) -> Outcome {
    let csv = to_csv(&run_bench(kmin, kmax, trials, seed)?);
    match output {
        Some(path) => write(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn cmd_oracle(costs: &Path, perm_file: Option<&Path>, perm: Option<&str>, limit: Option<usize>) -> Outcome {
    let raw = read_costs(costs)?.into_matrix();
    let target = read_perm(perm_file, perm, raw.n())?;
    let limit = limit.unwrap_or_else(default_limit);
    let exact = mcd_exact(&target, &raw, limit)?;
    let star = Optimized::new(&raw, 1e-9)?.costs().clone();
    println!("permutation: {}", target.cycle_notation());
    let Some(witness) = exact.witness else {
        return Err(first_unreachable(&target, &raw).into());
    };
    if !witness.validate(&target) {
        return Err(Error::Contract("oracle witness does not multiply to the target".into()).into());
    }
    let l = decompose(&target, &star, Method::PerCycleMld)?.cost;
    let s = decompose(&target, &star, Method::PerCycleStd)?.cost;
    let m = exact.min_cost;
    println!("exact minimum (applied right-to-left):");
    println!("{witness}");
    let chain = m <= l && l <= s && s <= 4.0 * m;
    println!(
        "M={} L={} S={} chain {}",
        fmt_cost(m),
        fmt_cost(l),
        fmt_cost(s),
        if chain { "OK" } else { "VIOLATED" }
    );
    if !chain {
        return Err(Error::Contract("M <= L <= S <= 4M does not hold".into()).into());
    }
    Ok(())
}

fn first_unreachable(target: &Permutation, raw: &CostMatrix) -> Error {
    let star = all_pairs_optimize(raw);
    target
        .nontrivial_cycles()
        .iter()
        .flat_map(|c| c.edges().collect::<Vec<_>>())
        .find(|&(a, b)| !star.get(a, b).is_finite())
        .map(|(a, b)| Error::Infeasible { a: a.min(b), b: a.max(b) })
        .unwrap_or_else(|| Error::Contract("search found no path to a reachable target".into()))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Optimize { costs, output, method } => cmd_optimize(&costs, output.as_deref(), method),
        Command::Decompose {
            costs,
            perm_file,
            perm,
            method,
            expand,
            route,
            join,
            trust_raw,
        } => cmd_decompose(
            &costs,
            perm_file.as_deref(),
            perm.as_deref(),
            method,
            expand,
            route,
            join.as_deref(),
            trust_raw,
        ),
        Command::Bench {
            kmin,
            kmax,
            trials,
            seed,
            output,
        } => cmd_bench(kmin, kmax, trials, seed, output.as_deref()),
        Command::Oracle {
            costs,
            perm_file,
            perm,
            limit,
        } => cmd_oracle(&costs, perm_file.as_deref(), perm.as_deref(), limit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
