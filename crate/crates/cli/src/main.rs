use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use unitri::constructions::{
    proportion_good, three_gen_triple, two_gen_pair_component, verify, WitnessJson, WITNESS_VERSION,
};
use unitri::free_words::families::named;
use unitri::group_explorer::{search_pairs, series_report, SearchMode, SearchParams, DEFAULT_SEED};
use unitri::symbolic_oracle::{entry_poly_capped, monomial_coefficient, DEFAULT_TERM_CAP};
use unitri::{Integers, MatrixJson, Monomial, PrimeField, RingSpec, UnipotentMatrix, Word};

/// Exact computations in unitriangular matrix groups.
///
/// Every command prints JSON on stdout. Exit codes: 0 success, 1 verification
/// failed or target not found, 2 invalid input, 3 resource cap exceeded.
/// UNITRI_THREADS caps the worker count (0 or unset: one per core).
#[derive(Parser)]
#[command(name = "unitri", version)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a generator witness.
    #[command(subcommand)]
    Construct(Construct),
    /// Re-check a witness file.
    Verify {
        #[arg(long)]
        witness: PathBuf,
    },
    /// Expand entry (i, j) of a word at generic generators A, B.
    Expand {
        /// Family name (c5, c10, c21', d6, …) or s-expression in a, b.
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        /// Entry as `i,j`; defaults to `1,n`.
        #[arg(long)]
        entry: Option<String>,
        /// Largest number of terms in any entry.
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        cap: usize,
    },
    /// Coefficient of a monomial in entry (1, n), n = degree + 1.
    Coeff {
        #[arg(long)]
        word: String,
        /// Flag string such as `aabab` (α = a, β = b).
        #[arg(long)]
        monomial: String,
    },
    /// Search generator pairs of U_n(F_p) for large derived length.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Derived length to look for.
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Allow exhaustive mode above 2^26 pairs.
        #[arg(long)]
        force: bool,
        /// Witness file whose first two matrices are examined first.
        #[arg(long)]
        seed_pair: Option<PathBuf>,
    },
    /// Order, derived series and lower central series of a generated subgroup.
    Series {
        /// JSON array of matrices.
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// Proportion of n ≤ N admitting a 2-generated subgroup of maximal derived length.
    Proportion {
        #[arg(long = "N")]
        big_n: u64,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Three generators with w(A,B,C) = X_(1,n), n = 2^(d-1) + 1.
    ThreeGen {
        #[command(flatten)]
        common: ConstructArgs,
        /// Base exponents `r,s,t`.
        #[arg(long, default_value = "1,0,0")]
        rst: String,
    },
    /// Two generators with w(A,B) = X_(1,n)^(±1).
    TwoGen {
        #[command(flatten)]
        common: ConstructArgs,
        /// Triple component for d ≥ 5.
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    d: u32,
    /// `fp:P` or `int`.
    #[arg(long, default_value = "fp:2")]
    ring: String,
    /// Also write the witness here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

struct Outcome {
    json: String,
    ok: bool,
}

fn emit<T: Serialize>(value: &T, ok: bool, pretty: bool) -> anyhow::Result<Outcome> {
    let json = if pretty { serde_json::to_string_pretty(value)? } else { serde_json::to_string(value)? };
    Ok(Outcome { json, ok })
}

fn parse_word(s: &str) -> anyhow::Result<Word> {
    if let Some(w) = named(s.trim()) {
        return Ok(w);
    }
    Word::parse(s).with_context(|| format!("`{s}` is neither a family name nor a word"))
}

fn parse_list<const K: usize, T: std::str::FromStr>(s: &str, what: &str) -> anyhow::Result<[T; K]> {
    let parts: Vec<T> = s
        .split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("bad {what} `{s}`")))
        .collect::<anyhow::Result<_>>()?;
    parts.try_into().map_err(|_| anyhow!("{what} needs {K} comma-separated values, got `{s}`"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn construct(cmd: Construct, pretty: bool) -> anyhow::Result<Outcome> {
    let (common, json) = match cmd {
        Construct::ThreeGen { common, rst } => {
            let [r, s, t] = parse_list::<3, i64>(&rst, "base exponents")?;
            let json = match common.ring.parse::<RingSpec>()? {
                RingSpec::Fp { p } => three_gen_triple(common.d, PrimeField::new(p)?, (r, s, t))?.to_json()?,
                RingSpec::Int => three_gen_triple(common.d, Integers, (r, s, t))?.to_json()?,
            };
            (common, json)
        }
        Construct::TwoGen { common, component } => {
            let json = match common.ring.parse::<RingSpec>()? {
                RingSpec::Fp { p } => two_gen_pair_component(common.d, component, PrimeField::new(p)?)?.to_json()?,
                RingSpec::Int => two_gen_pair_component(common.d, component, Integers)?.to_json()?,
            };
            (common, json)
        }
    };
    let out = emit(&json, true, pretty)?;
    if let Some(path) = common.out {
        fs::write(&path, format!("{}\n", out.json)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct ExpandOut {
    word: String,
    n: usize,
    entry: [usize; 2],
    num_terms: usize,
    terms: Vec<TermOut>,
    version: &'static str,
}

#[derive(Serialize)]
struct TermOut {
    monomial: String,
    coefficient: String,
}

#[derive(Serialize)]
struct CoeffOut {
    word: String,
    n: usize,
    monomial: String,
    coefficient: String,
    version: &'static str,
}

#[derive(Serialize)]
struct VerifyOut {
    verified: bool,
    checks: Vec<(String, bool)>,
    version: &'static str,
}

#[derive(Serialize)]
struct ProportionOut {
    num: u64,
    den: u64,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Construct(c) => construct(c, pretty),
        Command::Verify { witness } => {
            let w: WitnessJson = read_json(&witness)?;
            let report = verify(&w)?;
            let ok = report.verified;
            emit(&VerifyOut { verified: ok, checks: report.checks, version: WITNESS_VERSION }, ok, pretty)
        }
        Command::Expand { word, n, entry, cap } => {
            let w = parse_word(&word)?;
            let [i, j] = match entry {
                Some(e) => parse_list::<2, usize>(&e, "entry")?,
                None => [1, n],
            };
            let p = entry_poly_capped(&w, n, i, j, cap)?;
            let terms: Vec<TermOut> =
                p.terms().map(|(m, c)| TermOut { monomial: m.to_string(), coefficient: c.to_string() }).collect();
            emit(
                &ExpandOut { word: w.to_string(), n, entry: [i, j], num_terms: terms.len(), terms, version: WITNESS_VERSION },
                true,
                pretty,
            )
        }
        Command::Coeff { word, monomial } => {
            let w = parse_word(&word)?;
            let m: Monomial = monomial.parse()?;
            let n = m.degree() as usize + 1;
            let c = monomial_coefficient(&w, n, &m)?;
            emit(
                &CoeffOut { word: w.to_string(), n, monomial: m.to_string(), coefficient: c.to_string(), version: WITNESS_VERSION },
                true,
                pretty,
            )
        }
        Command::Search { n, p, mode, samples, target, seed, force, seed_pair } => {
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Random => SearchMode::Random,
            };
            let mut params = SearchParams::new(n, p, mode, target);
            params.samples = samples;
            params.seed = seed;
            params.force = force;
            if let Some(path) = seed_pair {
                let w: WitnessJson = read_json(&path)?;
                let f = PrimeField::new(p)?;
                let mats = w
                    .matrices
                    .iter()
                    .take(2)
                    .map(|m| UnipotentMatrix::from_json(m, f))
                    .collect::<unitri::Result<Vec<_>>>()?;
                if mats.len() != 2 {
                    bail!("seed pair file holds fewer than two matrices");
                }
                params.seeded.push((mats[0].clone(), mats[1].clone()));
            }
            let report = search_pairs(&params)?;
            let found = report.witness.is_some();
            emit(&report, found, pretty)
        }
        Command::Series { gens, p } => {
            let list: Vec<MatrixJson> = read_json(&gens)?;
            let f = PrimeField::new(p)?;
            let mats = list.iter().map(|m| UnipotentMatrix::from_json(m, f)).collect::<unitri::Result<Vec<_>>>()?;
            emit(&series_report(&mats)?, true, pretty)
        }
        Command::Proportion { big_n } => {
            if big_n == 0 {
                bail!("N must be positive");
            }
            let r = proportion_good(big_n);
            emit(&ProportionOut { num: *r.numer(), den: *r.denom() }, true, pretty)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<unitri::Error>() {
        Some(unitri::Error::CapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("UNITRI_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(k) => {
                if k > 0 {
                    rayon::ThreadPoolBuilder::new().num_threads(k).build_global().ok();
                }
            }
            Err(_) => {
                eprintln!("error: UNITRI_THREADS must be a non-negative integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(out) => {
            // a closed pipe is the reader's choice, not a failure
            let _ = writeln!(std::io::stdout(), "{}", out.json);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
