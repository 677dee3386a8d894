//! The `hodge` command line: argument parsing, dispatch and output.

pub mod json;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_core::characters::{character_table, verify_hook_dimension, verify_orthogonality};
use hodge_core::hurwitz::{
    brute_force_connected_single, brute_force_double, connected_single, double_hurwitz, verify_hurwitz_grid,
    verify_phi_composition, BruteForceBounds,
};
use hodge_core::local_p2::{free_energy_local_p2, gw_invariants, verify_local_p2, z_local_p2};
use hodge_core::one_partition::{
    r_bullet, r_connected, verify_bg, verify_convolution, verify_cutjoin, verify_elsv, verify_genus0, verify_lambda_g,
    verify_tau0, w_series,
};
use hodge_core::qschur::verify_w_layer;
use hodge_core::two_partition::{
    check_tau_minus_one, r2_bullet, r2_connected, verify_convolution2, verify_genus0_two, verify_reduction,
    verify_slot_symmetry, w_two_series,
};
use hodge_core::{Error, Partition, Report};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub lambda_order: i32,
    pub max_size: usize,
    pub brute_force_bounds: BruteForceBounds,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            lambda_order: 8,
            max_size: 5,
            brute_force_bounds: BruteForceBounds::default(),
            output_format: OutputFormat::Json,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hodge", version, about = "Exact character-side computations for one- and two-partition Hodge integrals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Last λ-exponent to compute.
    #[arg(long, global = true, default_value_t = 8, allow_negative_numbers = true)]
    order: i32,
    /// Largest total partition size for the verification suites.
    #[arg(long, global = true, default_value_t = 5)]
    max_size: usize,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn config(&self) -> Result<Config, Failure> {
        if self.order < 1 {
            return Err(Failure::Usage(format!("--order must be at least 1, got {}", self.order)));
        }
        if self.max_size < 1 {
            return Err(Failure::Usage("--max-size must be at least 1".into()));
        }
        Ok(Config {
            lambda_order: self.order,
            max_size: self.max_size,
            brute_force_bounds: BruteForceBounds::default(),
            output_format: self.format,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of S_n.
    Chars {
        #[arg(long)]
        n: usize,
    },
    /// λ-expansion of W_μ(q), or of W_{μν}(q) when --nu is given.
    Wq {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Option<Partition>,
    },
    /// Connected R_μ(λ;τ), or R•_μ with --bullet.
    Rseries {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        bullet: bool,
    },
    /// Connected R_{μ⁺,μ⁻}(λ;τ), or R•_{μ⁺,μ⁻} with --bullet.
    R2series {
        #[arg(long)]
        mu_plus: Partition,
        #[arg(long)]
        mu_minus: Partition,
        #[arg(long)]
        bullet: bool,
    },
    /// Double Hurwitz number H•_{χ,ν,μ} (with --nu and --chi) or connected single H_{g,μ} (with --genus).
    Hurwitz {
        #[arg(long)]
        mu: Partition,
        #[arg(long, requires = "chi", conflicts_with = "genus")]
        nu: Option<Partition>,
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        #[arg(long, required_unless_present = "nu")]
        genus: Option<usize>,
        /// Also count factorizations exhaustively.
        #[arg(long)]
        brute_force: bool,
    },
    /// Partition function and free energy of local P², degree by degree.
    Localp2 {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Orthogonality,
    HookDimension,
    WLayer,
    PhiComposition,
    HurwitzGrid,
    Genus0,
    Tau0,
    Bernoulli,
    LambdaG,
    Elsv,
    Cutjoin,
    Convolution,
    TwoReduction,
    TwoSymmetry,
    TwoConvolution,
    TwoTauMinusOne,
    TwoGenus0,
    LocalP2,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Symmetric group degree for the character suites (defaults to --max-size).
    #[arg(long)]
    n: Option<usize>,
    /// Base point of the two-partition convolution, as p/q.
    #[arg(long, default_value = "-1", allow_negative_numbers = true)]
    tau0: BigRational,
    /// Largest genus for the Bernoulli, ELSV and Hurwitz suites.
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

struct Output {
    json: Value,
    text: String,
    passed: bool,
}

impl Output {
    fn value(json: Value, text: String) -> Self {
        Output { json, text, passed: true }
    }

    fn reports(reports: Vec<Report>) -> Self {
        let passed = reports.iter().all(Report::passed);
        let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
        let json = match reports.as_slice() {
            [one] => json::report(one),
            many => Value::Array(many.iter().map(json::report).collect()),
        };
        Output { json, text, passed }
    }
}

/// Parse `argv` (program name first), run, and write the result to `out`.
/// Returns 0 on success, 1 when a verification fails, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = cli.config().and_then(|config| {
        configure_threads()?;
        dispatch(cli.command, &config).map(|o| (o, config))
    });
    match result {
        Ok((o, config)) => {
            let written = match config.output_format {
                OutputFormat::Json => writeln!(out, "{}", o.json),
                OutputFormat::Text => writeln!(out, "{}", o.text),
            };
            if written.is_err() {
                return 2;
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Honour `HODGE_THREADS` by sizing the global rayon pool once.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("HODGE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("HODGE_THREADS must be a positive integer, got {raw:?}")))?;
    // a pool built earlier in this process stays in force
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn series_output(head: Value, s: &hodge_core::algebra::LambdaSeries) -> Output {
    let mut json = head;
    json["series"] = json::series(s);
    Output::value(json, s.to_string())
}

fn dispatch(command: Command, config: &Config) -> Result<Output, Failure> {
    let order = config.lambda_order;
    Ok(match command {
        Command::Chars { n } => {
            let t = character_table(n);
            let parts: Vec<Value> = t.partitions.iter().map(json::partition).collect();
            let mut text = String::new();
            for (nu, row) in t.partitions.iter().zip(&t.values) {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                text.push_str(&format!("{nu}\t{}\n", cells.join("\t")));
            }
            Output::value(json!({ "n": n, "partitions": parts, "values": t.values }), text.trim_end().to_string())
        }
        Command::Wq { mu, nu } => {
            let s = match &nu {
                Some(nu) => w_two_series(&mu, nu, order)?,
                None => w_series(&mu, order)?,
            };
            series_output(json!({ "mu": json::partition(&mu), "nu": nu.as_ref().map(json::partition) }), &s)
        }
        Command::Rseries { mu, bullet } => {
            let s = if bullet { r_bullet(&mu, order)? } else { r_connected(&mu, order)? };
            series_output(json!({ "mu": json::partition(&mu), "connected": !bullet }), &s)
        }
        Command::R2series { mu_plus, mu_minus, bullet } => {
            let s = if bullet { r2_bullet(&mu_plus, &mu_minus, order)? } else { r2_connected(&mu_plus, &mu_minus, order)? };
            let head = json!({
                "mu_plus": json::partition(&mu_plus),
                "mu_minus": json::partition(&mu_minus),
                "connected": !bullet,
            });
            series_output(head, &s)
        }
        Command::Hurwitz { mu, nu, chi, genus, brute_force } => hurwitz(mu, nu, chi, genus, brute_force, config.brute_force_bounds)?,
        Command::Localp2 { max_degree } => localp2(max_degree, order)?,
        Command::Verify(args) => Output::reports(verify(&args, config)?),
    })
}

fn hurwitz(
    mu: Partition,
    nu: Option<Partition>,
    chi: Option<i64>,
    genus: Option<usize>,
    brute_force: bool,
    bounds: BruteForceBounds,
) -> Result<Output, Failure> {
    let (burnside, brute) = match (nu, chi, genus) {
        (Some(nu), Some(chi), _) => {
            let b = double_hurwitz(chi, &nu, &mu)?;
            (b, brute_force.then(|| brute_force_double(chi, &nu, &mu, bounds)).transpose()?)
        }
        (None, _, Some(g)) => {
            let b = connected_single(g, &mu)?;
            (b, brute_force.then(|| brute_force_connected_single(g, &mu, bounds)).transpose()?)
        }
        _ => return Err(Failure::Usage("give --nu with --chi, or --genus".into())),
    };
    Ok(match brute {
        Some(brute) => {
            let matched = brute == burnside;
            let text = format!("burnside = {burnside}, brute = {brute}, match = {matched}");
            let json = json!({ "burnside": json::rational(&burnside), "brute": json::rational(&brute), "match": matched });
            Output { json, text, passed: matched }
        }
        None => Output::value(json!({ "burnside": json::rational(&burnside) }), format!("burnside = {burnside}")),
    })
}

fn localp2(max_degree: usize, order: i32) -> Result<Output, Failure> {
    let z = z_local_p2(max_degree, order)?;
    let f = free_energy_local_p2(max_degree, order)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in 1..=max_degree {
        let mut invariants = Vec::new();
        for g in 0.. {
            if 2 * g as i32 - 2 > order {
                break;
            }
            let n = gw_invariants(&f, g, d)?;
            text.push_str(&format!("N_{{{g},{d}}} = {n}\n"));
            invariants.push(json!({ "g": g, "N": json::rational(&n) }));
        }
        rows.push(json!({
            "d": d,
            "partition_function": json::series(&z.per_degree[d]),
            "series": json::series(&f.per_degree[d]),
            "invariants": invariants,
        }));
    }
    Ok(Output::value(
        json!({ "max_degree": max_degree, "order": order, "degrees": rows }),
        text.trim_end().to_string(),
    ))
}

fn verify(args: &VerifyArgs, config: &Config) -> Result<Vec<Report>, Failure> {
    let order = config.lambda_order;
    let size = config.max_size;
    let n = args.n.unwrap_or(size);
    let suite = |s: Suite| -> Result<Report, Failure> {
        Ok(match s {
            Suite::Orthogonality => verify_orthogonality(n),
            Suite::HookDimension => verify_hook_dimension(n),
            Suite::WLayer => verify_w_layer(size, 6, 40),
            Suite::PhiComposition => {
                let mut r = Report::new("phi composition");
                for d in 1..=size {
                    r.merge(verify_phi_composition(d, order)?);
                }
                r
            }
            Suite::HurwitzGrid => verify_hurwitz_grid(size, args.genus.unwrap_or(1), config.brute_force_bounds)?,
            Suite::Genus0 => verify_genus0(size, order)?,
            Suite::Tau0 => verify_tau0(size, order)?,
            Suite::Bernoulli => verify_bg(args.genus.unwrap_or(5))?,
            Suite::LambdaG => verify_lambda_g(size, order)?,
            Suite::Elsv => verify_elsv(size, args.genus.unwrap_or(2))?,
            Suite::Cutjoin => verify_cutjoin(size, order)?,
            Suite::Convolution => verify_convolution(size, order)?,
            Suite::TwoReduction => verify_reduction(size, order)?,
            Suite::TwoSymmetry => verify_slot_symmetry(size, order)?,
            Suite::TwoConvolution => verify_convolution2(size, order, &args.tau0)?,
            Suite::TwoTauMinusOne => check_tau_minus_one(size, order)?,
            Suite::TwoGenus0 => verify_genus0_two(size, order)?,
            Suite::LocalP2 => verify_local_p2(args.max_degree, order)?,
            Suite::All => unreachable!(),
        })
    };
    if args.suite != Suite::All {
        return Ok(vec![suite(args.suite)?]);
    }
    Suite::value_variants().iter().filter(|&&s| s != Suite::All).map(|&s| suite(s)).collect()
}
