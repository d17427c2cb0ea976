//! `saga`: analyze forms, run experiments, emit fixtures.

mod text;

use text::ToText;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use saga::analysis::{analyze, parse_input, AnalysisInput, InputKind};
use saga::corpus::{find, load_corpus, load_corpus_file};
use saga::gnlab::experiment::{degenerate_pairs_experiment, theorem_c_experiment, DEFAULT_COEFF_BOX};
use saga::gnlab::gamma::{check_ggn, check_ker_coker, corrupt, default_t_values, sample_gamma};
use saga::rng::derive_seed;
use saga::{Error, FieldSpec};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "saga", version, about = "Exact computations in Artinian Gorenstein algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// rational or fp:<p>
    #[arg(long, global = true, default_value = "rational")]
    field: FieldSpec,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random trials per probe or experiment.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function, duality, cone and hessian tests, Lefschetz probes.
    Analyze(InputArgs),
    /// Randomized experiment drivers.
    Experiment {
        #[arg(value_enum)]
        family: Family,
        /// Half-width of the coefficient box for random generators.
        #[arg(long, default_value_t = DEFAULT_COEFF_BOX)]
        coeff_box: i64,
        /// Modulus for the degenerate pair search.
        #[arg(long, default_value_t = 101)]
        prime: u64,
    },
    /// Built-in fixtures.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
    },
    /// Samples of Γ_k with the identity checks and corrupted controls.
    Gamma {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "theorem_c")]
    TheoremC,
    #[value(name = "degenerate_pairs")]
    DegeneratePairs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FixtureName {
    Perazzo,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// A form, or generators separated by ';'.
    expr: Option<String>,
    /// Read the input from a file (one generator per line, '#' comments).
    #[arg(long, conflicts_with_all = ["expr", "corpus"])]
    input: Option<PathBuf>,
    /// Use a named corpus entry.
    #[arg(long, conflicts_with = "expr")]
    corpus: Option<String>,
    /// Corpus file replacing the built-in one.
    #[arg(long)]
    corpus_file: Option<PathBuf>,
    /// Treat the input as generators of a regular sequence.
    #[arg(long)]
    generators: bool,
    /// Number of variables (default: largest index seen plus one).
    #[arg(long)]
    vars: Option<usize>,
}

/// Anything that keeps a report from being produced; exits with status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn resolve_input(args: &InputArgs, field: FieldSpec) -> Result<AnalysisInput, Failure> {
    if let Some(name) = &args.corpus {
        let entries = match &args.corpus_file {
            Some(p) => load_corpus_file(p)?,
            None => load_corpus()?,
        };
        let e = find(&entries, name).ok_or_else(|| Failure(format!("no corpus entry named {name}")))?;
        return Ok(e.parse()?);
    }
    let text = match (&args.expr, &args.input) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(Failure("no input: pass a form, --input or --corpus".into())),
    };
    let kind = args.generators.then_some(InputKind::Generators);
    Ok(parse_input(&text, kind, args.vars, field)?)
}

#[derive(Serialize)]
pub struct GammaRecord {
    pub index: usize,
    pub seed: u64,
    pub sample: Option<saga::gnlab::gamma::GammaSample>,
    pub empty_fiber: bool,
    pub ker_coker: bool,
    pub ggn: bool,
    pub control_rejected: bool,
}

#[derive(Serialize)]
pub struct GammaReport {
    pub schema: u32,
    pub input: String,
    pub k: usize,
    pub samples: Vec<GammaRecord>,
    pub pass: bool,
    pub seed: u64,
}

fn gamma(input: &AnalysisInput, k: usize, samples: usize, seed: u64) -> Result<GammaReport, Failure> {
    let a = input.algebra()?;
    let ts = default_t_values(&a);
    let mut records = Vec::with_capacity(samples);
    for index in 0..samples {
        let s_seed = derive_seed(seed, index as u64);
        let mut rec = GammaRecord {
            index,
            seed: s_seed,
            sample: None,
            empty_fiber: false,
            ker_coker: true,
            ggn: true,
            control_rejected: true,
        };
        match sample_gamma(&a, k, s_seed) {
            Ok(s) => {
                rec.ker_coker = check_ker_coker(&a, &s)?;
                rec.ggn = check_ggn(&a, &s, &ts)?;
                let bad = corrupt(&a, &s, s_seed)?;
                rec.control_rejected = !check_ker_coker(&a, &bad)? && !check_ggn(&a, &bad, &ts)?;
                rec.sample = Some(s);
            }
            Err(Error::SlpEvidence { .. }) => rec.empty_fiber = true,
            Err(e) => return Err(e.into()),
        }
        records.push(rec);
    }
    let pass = records.iter().all(|r| r.ker_coker && r.ggn && r.control_rejected);
    Ok(GammaReport {
        schema: 1,
        input: input.text(),
        k,
        samples: records,
        pass,
        seed,
    })
}

fn render<T: Serialize + ToText>(r: &T, f: Format) -> String {
    match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => r.to_text(),
    }
}

/// The rendered report and whether its assertions held.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Analyze(args) => {
            let input = resolve_input(args, cli.field)?;
            let r = analyze(&input, cli.trials.max(1), cli.seed)?;
            Ok((render(&r, f), r.structural_ok()))
        }
        Command::Experiment { family, coeff_box, prime } => match family {
            Family::TheoremC => {
                let r = theorem_c_experiment(cli.trials.max(1), cli.seed, *coeff_box)?;
                Ok((render(&r, f), r.pass))
            }
            Family::DegeneratePairs => {
                let r = degenerate_pairs_experiment(cli.trials.max(1), cli.seed, *prime)?;
                Ok((render(&r, f), r.pass))
            }
        },
        Command::Fixture { name: FixtureName::Perazzo } => {
            let r = saga::gnlab::perazzo::perazzo_fixture(cli.seed)?;
            Ok((render(&r, f), r.passes))
        }
        Command::Gamma { input, k, samples } => {
            let input = resolve_input(input, cli.field)?;
            let r = gamma(&input, *k, *samples, cli.seed)?;
            Ok((render(&r, f), r.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("saga: {e}");
        return ExitCode::from(2);
    }
    let (out, ok) = match run(&cli) {
        Ok(v) => v,
        Err(Failure(msg)) => {
            eprintln!("saga: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &out).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(out.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("saga: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
