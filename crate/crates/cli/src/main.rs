use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use modsplit::algebra::{Field, Scalar};
use modsplit::boolfn::{self, parse_anf, render_vector};
use modsplit::decompose::{complete_decomposition, DecompositionReport};
use modsplit::endo::{compute_end, find_splitting_element, Certificate, SearchConfig, StrategyRegistry};
use modsplit::format;
use modsplit::module::{coordinate_tuple, orbit_basis, CyclicModule};
use modsplit::perm::{permutation_module, regular_module};
use modsplit::wfa::minimize;

/// Largest group the `--regular` flag will enumerate.
const REGULAR_CAP: usize = 5040;

#[derive(Parser)]
#[command(name = "modsplit", version, about = "Cyclic modules, endomorphism algebras and direct-sum decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a weighted automaton given as JSON.
    Minimize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Expected field of the input (`0` or `p:<prime>`).
        #[arg(long)]
        field: Option<String>,
    },
    /// Decompose the module generated by a boolean function under variable permutations.
    DecomposeBool {
        /// Algebraic normal form, e.g. `x1*x2+x1+x3` or `x1x2+x1+x3`.
        #[arg(long)]
        expr: String,
        /// Number of variables.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decompose a permutation module over the rationals.
    #[command(group(ArgGroup::new("source").required(true).args(["generator", "regular"])))]
    DecomposePerm {
        /// Presentation JSON: {"degree": d, "generators": {"s1": [...], ...}}.
        #[arg(long)]
        presentation: PathBuf,
        /// Generator vector, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        generator: Option<String>,
        /// Use the regular module of the generated group instead.
        #[arg(long)]
        regular: bool,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decompose the module generated by a vector under an arbitrary action file.
    DecomposeModule {
        #[arg(long)]
        module: PathBuf,
        /// Generator vector; overrides the one in the file.
        #[arg(long, allow_hyphen_values = true)]
        generator: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Certify a module as decomposable, indecomposable or undecided.
    Cert {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List the registered splitting strategies in default order.
    Strategies,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write module.dot and summand-<k>.dot into this directory.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Print only the root verdict and the signature.
    #[arg(long)]
    cert_only: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["expr", "presentation", "module"])))]
struct SourceArgs {
    /// Boolean function in algebraic normal form (needs --n).
    #[arg(long, requires = "n")]
    expr: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Permutation presentation JSON (needs --generator or --regular).
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Module action JSON.
    #[arg(long)]
    module: Option<PathBuf>,
    /// Generator vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    generator: Option<String>,
    /// With --presentation: use the regular module of the group.
    #[arg(long)]
    regular: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// `0` for the rationals, `p:<prime>` for GF(p); checked against the front-end.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 1 << 22)]
    exhaustive_cap: u64,
    #[arg(long, default_value_t = 5)]
    box_height: u32,
    #[arg(long, default_value_t = 64)]
    random_trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated strategy pipeline (see `modsplit strategies`).
    #[arg(long, value_delimiter = ',')]
    strategies: Option<Vec<String>>,
    /// Print a summary and the search trail to stderr.
    #[arg(short, long)]
    verbose: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut c = SearchConfig {
            exhaustive_cap: self.exhaustive_cap,
            box_height: self.box_height,
            random_trials: self.random_trials,
            seed: self.seed,
            ..SearchConfig::default()
        };
        if let Some(s) = &self.strategies {
            c.strategies = s.clone();
        }
        c
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<modsplit::Error> for Failure {
    fn from(e: modsplit::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(format!("stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

/// Accepts `--field` only if it names the field the front-end works over.
fn check_field(requested: Option<&str>, actual: Field) -> CliResult<()> {
    if let Some(text) = requested {
        let f: Field = text.parse().map_err(Failure::from)?;
        if f != actual {
            return Err(Failure::Input(format!("--field {f} does not match the input, which is over {actual}")));
        }
    }
    Ok(())
}

type BoxedNamer = Box<dyn Fn(&[Scalar]) -> String>;

/// A module plus the namer used for graph nodes.
struct Source {
    module: CyclicModule,
    namer: BoxedNamer,
}

fn bool_source(expr: &str, n: usize) -> CliResult<Source> {
    let f = parse_anf(expr, n)?;
    Ok(Source {
        module: boolfn::boolean_module(&f)?,
        namer: Box::new(|v: &[Scalar]| render_vector(v)),
    })
}

fn perm_source(presentation: &Path, generator: Option<&str>, regular: bool) -> CliResult<Source> {
    let p = format::parse_presentation(&read(presentation)?)?;
    let module = match (generator, regular) {
        (_, true) => regular_module(&p, REGULAR_CAP)?.1,
        (Some(g), false) => {
            let g = format::parse_vector(Field::Rational, g)?;
            permutation_module(&p, &g)?
        }
        (None, false) => return Err(Failure::Input("one of --generator or --regular is required".into())),
    };
    Ok(Source {
        module,
        namer: Box::new(|v: &[Scalar]| coordinate_tuple(v)),
    })
}

fn module_source(path: &Path, generator: Option<&str>) -> CliResult<Source> {
    let (action, g) = format::parse_module(&read(path)?)?;
    let g = match generator {
        Some(text) => format::parse_vector(action.field(), text)?,
        None => g.ok_or_else(|| Failure::Input("the module file has no generator; pass --generator".into()))?,
    };
    Ok(Source {
        module: orbit_basis(&Arc::new(action), &g)?,
        namer: Box::new(|v: &[Scalar]| coordinate_tuple(v)),
    })
}

fn root_certificate(m: &CyclicModule, config: &SearchConfig) -> CliResult<Option<Certificate>> {
    if m.dim() == 0 {
        return Ok(None);
    }
    Ok(Some(find_splitting_element(&compute_end(m), config)?))
}

#[derive(Serialize)]
struct CertSummary<'a> {
    verdict: Option<modsplit::endo::Verdict>,
    mode: Option<&'static str>,
    signature: &'a [usize],
    status: modsplit::decompose::Completeness,
    undecided: usize,
    seed: u64,
}

fn write_dot(dir: &Path, report: &DecompositionReport) -> CliResult<()> {
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("module.dot"), report.root.graph.to_dot("M")).map_err(io)?;
    for (k, s) in report.summands.iter().enumerate() {
        let name = format!("M{}", k + 1);
        fs::write(dir.join(format!("summand-{}.dot", k + 1)), s.graph.to_dot(&name)).map_err(io)?;
    }
    Ok(())
}

fn run_decompose(src: Source, out: &OutputArgs, search: &SearchArgs) -> CliResult<()> {
    check_field(search.field.as_deref(), src.module.field())?;
    let config = search.config();
    let report = complete_decomposition(&src.module, &config, &*src.namer)?;
    if search.verbose {
        eprintln!("module dimension {}: {}", report.root.dim, report.summary());
    }
    if let Some(dir) = &out.dot {
        write_dot(dir, &report)?;
    }
    let text = if out.cert_only {
        let cert = root_certificate(&src.module, &config)?;
        to_json(&CertSummary {
            verdict: cert.as_ref().map(|c| c.verdict),
            mode: cert.as_ref().map(|c| c.mode()),
            signature: &report.signature,
            status: report.status,
            undecided: report.undecided,
            seed: config.seed,
        })
    } else {
        to_json(&report)
    };
    write_out(out.output.as_deref(), &text)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Minimize { input, output, field } => {
            let a = format::parse_automaton(&read(&input)?)?;
            check_field(field.as_deref(), a.field())?;
            let min = minimize(&a);
            let summary = format!("original dimension: {}\nminimized dimension: {}\n", a.dim(), min.dim());
            write_out(output.as_deref(), &format::automaton_to_json(&min))?;
            if output.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            Ok(())
        }
        Command::DecomposeBool { expr, n, out, search } => run_decompose(bool_source(&expr, n)?, &out, &search),
        Command::DecomposePerm {
            presentation,
            generator,
            regular,
            out,
            search,
        } => run_decompose(perm_source(&presentation, generator.as_deref(), regular)?, &out, &search),
        Command::DecomposeModule {
            module,
            generator,
            out,
            search,
        } => run_decompose(module_source(&module, generator.as_deref())?, &out, &search),
        Command::Cert { source, output, search } => {
            let src = if let Some(expr) = &source.expr {
                bool_source(expr, source.n.unwrap_or_default())?
            } else if let Some(p) = &source.presentation {
                perm_source(p, source.generator.as_deref(), source.regular)?
            } else {
                let path = source.module.as_deref().expect("clap enforces a module source");
                module_source(path, source.generator.as_deref())?
            };
            check_field(search.field.as_deref(), src.module.field())?;
            let config = search.config();
            let cert = find_splitting_element(&compute_end(&src.module), &config)?;
            cert.verify(src.module.restricted_action())?;
            if search.verbose {
                eprintln!("verdict {:?} by {}", cert.verdict, cert.mode());
                for t in &cert.trail {
                    eprintln!("  {}: {:?} ({})", t.strategy, t.outcome, t.detail);
                }
            }
            write_out(output.as_deref(), &to_json(&cert))
        }
        Command::Strategies => {
            let text: String = StrategyRegistry::builtin().names().iter().map(|n| format!("{n}\n")).collect();
            write_out(None, &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
