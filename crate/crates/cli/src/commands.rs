use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use agrarian::complex::ComplexError;
use agrarian::fibring::{find_characters, kaz_violations, virtually_fpn_fibred, CoefficientRing, KazViolation};
use agrarian::kernels::{fpn_violation, theorem_b_betti, theorem_b_betti_unchecked, Character, CharacterJson, FpnViolation, KernelError};
use agrarian::raag::{
    abelian_quotient, cover_betti_cached, dfg_betti_raag, CoverReportJson, FiniteQuotient, QuotientJson, Raag,
    RaagError, RankStore,
};
use agrarian::{FieldSpec, SimplicialComplex};
use num_rational::BigRational;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{write_atomically, DiskRankStore};
use crate::harness;

#[derive(Debug, Parser)]
#[command(name = "agrarian", version, about = "Exact Betti numbers and fibring for RAAGs and Artin kernels")]
pub struct Cli {
    /// Directory memoising cover boundary ranks.
    #[arg(long, global = true, env = "AGRARIAN_CACHE")]
    pub cache: Option<PathBuf>,
    /// Seed for the randomised suites of `report`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Agrarian Betti numbers of A_L, `b̃_{k-1}(L)`.
    Betti {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        field: FieldSpec,
        /// Inclusive range `a..b`, or a single degree.
        #[arg(long, default_value = "0..3")]
        degrees: DegreeRange,
    },
    /// Betti numbers of an Artin kernel from the link formula.
    KernelBetti {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        character: CharacterArg,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, default_value = "0..3")]
        degrees: DegreeRange,
        /// Skip the surjectivity and finiteness hypotheses and report the raw sum.
        #[arg(long)]
        unchecked: bool,
    },
    /// Whether an Artin kernel is of type FP_n over a field.
    FpnCheck {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        character: CharacterArg,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long)]
        n: usize,
    },
    /// Whether A_L virtually fibres with kernel of type FP_n(R).
    Fibring {
        #[command(flatten)]
        complex: ComplexArg,
        /// `Q`, `F<p>`, `Z` or `Z/<m>`.
        #[arg(long)]
        ring: CoefficientRing,
        #[arg(long)]
        n: usize,
    },
    /// `b_k / N` along a chain of finite covers.
    Gradient {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        field: FieldSpec,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// All characters with bounded values whose kernel is FP_n.
    Characters {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
    },
    /// Checks the lower bound `b_m^D(A_L) <= b_m(cover) / N` along a chain.
    KazCheck {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        field: FieldSpec,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Runs the acceptance suite and prints a pass/fail table.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// JSON file `{"vertices": [...], "edges"|"faces": [...]}`.
    #[arg(long = "complex")]
    pub path: PathBuf,
}

#[derive(Debug, Args)]
pub struct CharacterArg {
    /// JSON `{"phi": {...}}`, inline or as a file path.
    #[arg(long = "character")]
    pub source: String,
}

#[derive(Debug, Args)]
pub struct ChainArg {
    /// `abelian:n1,n2,...` (every generator mod n_i) or a JSON file holding a list of quotients.
    #[arg(long = "chain")]
    pub spec: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: usize,
    pub end: usize,
}

impl DegreeRange {
    pub fn degrees(&self) -> Vec<usize> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected a degree or an inclusive range a..b, got {s:?}");
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let start = a.trim().parse().map_err(|_| bad())?;
        let end = b.trim().parse().map_err(|_| bad())?;
        if start > end {
            return Err(bad());
        }
        Ok(DegreeRange { start, end })
    }
}

/// A failed job: exit status 1 for unmet preconditions, 2 for bad input.
#[derive(Debug)]
pub enum Failure {
    Precondition { message: String, detail: Value },
    Malformed(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Precondition { .. } => 1,
            Failure::Malformed(_) => 2,
        }
    }

    /// Machine-readable diagnostic.
    pub fn to_json(&self) -> Value {
        match self {
            Failure::Precondition { message, detail } => {
                json!({"error": "precondition", "message": message, "detail": detail})
            }
            Failure::Malformed(message) => json!({"error": "malformed", "message": message}),
        }
    }

    fn precondition(message: impl fmt::Display) -> Self {
        Failure::Precondition { message: message.to_string(), detail: Value::Null }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotFlag(_) => Failure::precondition(e),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

impl From<RaagError> for Failure {
    fn from(e: RaagError) -> Self {
        match e {
            RaagError::Complex(c) => c.into(),
            RaagError::ChainNotMonotone | RaagError::MissingGenerator(_) => Failure::precondition(e),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Complex(c) => c.into(),
            KernelError::NotFpn { ref violation, .. } => Failure::Precondition {
                message: e.to_string(),
                detail: json!({ "violation": violation }),
            },
            KernelError::MissingValue(_) | KernelError::UnknownVertex(_) | KernelError::ZeroCharacter => {
                Failure::Malformed(e.to_string())
            }
            other => Failure::precondition(other),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(arg: &ComplexArg) -> Result<SimplicialComplex, Failure> {
    Ok(SimplicialComplex::from_json_str(&read(&arg.path)?)?)
}

fn load_raag(arg: &ComplexArg) -> Result<Raag, Failure> {
    Ok(Raag::new(load_complex(arg)?)?)
}

fn load_character(arg: &CharacterArg, complex: &SimplicialComplex) -> Result<Character, Failure> {
    let text = if arg.source.trim_start().starts_with('{') {
        arg.source.clone()
    } else {
        read(Path::new(&arg.source))?
    };
    let json: CharacterJson =
        serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("bad character: {e}")))?;
    Ok(json.build(complex)?)
}

fn load_chain(arg: &ChainArg, raag: &Raag) -> Result<Vec<FiniteQuotient>, Failure> {
    let specs: Vec<QuotientJson> = match arg.spec.strip_prefix("abelian:") {
        Some(list) => list
            .split(',')
            .map(|n| {
                let n: u64 = n.trim().parse().map_err(|_| Failure::Malformed(format!("bad modulus {n:?}")))?;
                let moduli = raag.complex().labels().iter().map(|l| (l.clone(), n)).collect();
                Ok(QuotientJson::Abelian { moduli })
            })
            .collect::<Result<_, Failure>>()?,
        None => serde_json::from_str(&read(Path::new(&arg.spec))?)
            .map_err(|e| Failure::Malformed(format!("bad quotient chain: {e}")))?,
    };
    let chain = specs.iter().map(|q| q.build(raag)).collect::<Result<Vec<_>, _>>()?;
    if chain.windows(2).any(|w| w[0].order() > w[1].order()) {
        return Err(RaagError::ChainNotMonotone.into());
    }
    Ok(chain)
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct BettiReport {
    field: FieldSpec,
    degrees: Vec<usize>,
    dfg_betti: Vec<usize>,
}

#[derive(Serialize)]
struct KernelBettiReport {
    field: FieldSpec,
    character: CharacterJson,
    checked: bool,
    degrees: Vec<usize>,
    betti: Vec<u64>,
}

#[derive(Serialize)]
struct FpnReport {
    field: FieldSpec,
    n: usize,
    fpn: bool,
    violation: Option<FpnViolation>,
}

#[derive(Serialize)]
struct GradientReport {
    field: FieldSpec,
    degree: usize,
    covers: Vec<CoverReportJson>,
}

#[derive(Serialize)]
struct CharactersReport {
    field: FieldSpec,
    n: usize,
    bound: u32,
    count: usize,
    characters: Vec<CharacterJson>,
}

#[derive(Serialize)]
struct KazReport {
    field: FieldSpec,
    max_degree: usize,
    orders: Vec<usize>,
    holds: bool,
    violations: Vec<KazViolation>,
}

/// Runs one job and renders its report. `Ok((text, success))`; `success`
/// is false only for a `report` run with failing criteria.
pub fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    let store = match &cli.cache {
        Some(dir) => Some(
            DiskRankStore::open(dir)
                .map_err(|e| Failure::Malformed(format!("cannot open cache {}: {e}", dir.display())))?,
        ),
        None => None,
    };
    let store = store.as_ref().map(|s| s as &dyn RankStore);
    let text = match &cli.command {
        Command::Betti { complex, field, degrees } => {
            let raag = load_raag(complex)?;
            let degrees = degrees.degrees();
            let dfg_betti = degrees.iter().map(|&k| dfg_betti_raag(&raag, *field, k)).collect();
            to_json(&BettiReport { field: *field, degrees, dfg_betti })
        }
        Command::KernelBetti { complex, character, field, degrees, unchecked } => {
            let l = load_complex(complex)?;
            l.check_flag()?;
            let phi = load_character(character, &l)?;
            let degrees = degrees.degrees();
            let betti = degrees
                .iter()
                .map(|&m| {
                    if *unchecked {
                        Ok(theorem_b_betti_unchecked(&l, &phi, m, *field))
                    } else {
                        theorem_b_betti(&l, &phi, m, *field)
                    }
                })
                .collect::<Result<_, _>>()?;
            to_json(&KernelBettiReport { field: *field, character: phi.to_json(), checked: !unchecked, degrees, betti })
        }
        Command::FpnCheck { complex, character, field, n } => {
            let l = load_complex(complex)?;
            l.check_flag()?;
            let phi = load_character(character, &l)?;
            let violation = fpn_violation(&l, &phi, *n, *field);
            to_json(&FpnReport { field: *field, n: *n, fpn: violation.is_none(), violation })
        }
        Command::Fibring { complex, ring, n } => {
            let l = load_complex(complex)?;
            to_json(&virtually_fpn_fibred(&l, *n, *ring)?.to_json())
        }
        Command::Gradient { complex, field, chain, degree, format } => {
            let raag = load_raag(complex)?;
            let chain = load_chain(chain, &raag)?;
            let reports = chain
                .iter()
                .map(|q| cover_betti_cached(&raag, q, *field, store))
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Csv => {
                    let mut out = format!("N,b_{degree},b_{degree}/N\n");
                    for r in &reports {
                        let b = r.betti_in(*degree);
                        let ratio = BigRational::new(b.into(), r.order.into());
                        out.push_str(&format!("{},{},{}\n", r.order, b, ratio));
                    }
                    out
                }
                _ => to_json(&GradientReport {
                    field: *field,
                    degree: *degree,
                    covers: reports.iter().map(|r| r.to_json()).collect(),
                }),
            }
        }
        Command::Characters { complex, n, field, bound } => {
            let l = load_complex(complex)?;
            l.check_flag()?;
            let found = find_characters(&l, *n, *field, *bound);
            to_json(&CharactersReport {
                field: *field,
                n: *n,
                bound: *bound,
                count: found.len(),
                characters: found.iter().map(Character::to_json).collect(),
            })
        }
        Command::KazCheck { complex, field, chain, max_degree } => {
            let raag = load_raag(complex)?;
            let chain = load_chain(chain, &raag)?;
            let violations = kaz_violations(&raag, &chain, *field, *max_degree)?;
            to_json(&KazReport {
                field: *field,
                max_degree: *max_degree,
                orders: chain.iter().map(FiniteQuotient::order).collect(),
                holds: violations.is_empty(),
                violations,
            })
        }
        Command::Report { format } => {
            let results = harness::run_all(cli.seed.unwrap_or(harness::DEFAULT_SEED));
            let ok = results.iter().all(|r| r.passed);
            let text = match format {
                Format::Json => to_json(&results),
                _ => harness::render_table(&results),
            };
            return Ok((text, ok));
        }
    };
    Ok((text, true))
}

/// Outcome of one invocation, as the binary would produce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the job in-process.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let code = if ok { 0 } else { 1 };
            match &cli.output {
                Some(path) => match write_atomically(path, text.as_bytes()) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => {
                        let f = Failure::Malformed(format!("cannot write {}: {e}", path.display()));
                        Outcome { code: 2, stdout: String::new(), stderr: to_json(&f.to_json()) }
                    }
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(f) => Outcome { code: f.exit_code(), stdout: String::new(), stderr: to_json(&f.to_json()) },
    }
}

/// Convenience for building abelian chains in tests and the harness.
pub fn uniform_abelian(raag: &Raag, n: u64) -> FiniteQuotient {
    let moduli = raag.complex().labels().iter().map(|l| (l.clone(), n)).collect();
    abelian_quotient(raag, &moduli).expect("positive moduli on every generator")
}
