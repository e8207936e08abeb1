//! Command-line front end: construct UMEBs, verify sets, render tables,
//! enumerate available constructions, and search complements.
//!
//! Exit codes: 0 = success (and, for `verify`, overall pass), 1 =
//! verification failed, 2 = invalid input or flags.

mod document;
mod report;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use umeb_core::construct::{allowed_m_values, construct_prop1, construct_prop2, StateSet};
use umeb_core::linalg::BipartiteDims;
use umeb_core::verify::{complement_of, numerical_search, verify_umeb, SearchConfig, VerifyConfig};

use document::{DocumentError, StateSetDocument};
use table::{render_table, RenderedTable, TableMode};

#[derive(Parser)]
#[command(
    name = "umeb",
    version,
    about = "Construct and verify unextendible maximally entangled bases in C^d (x) C^d'"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a UMEB from one of the closed-form constructions
    Construct(ConstructArgs),
    /// Check orthonormality, maximal entanglement, and unextendibility
    Verify(VerifyArgs),
    /// Render a state-set document as a table
    Table(TableArgs),
    /// List the constructions available for given dimensions
    Enumerate(EnumerateArgs),
    /// Search a document's orthogonal complement for a maximally entangled vector
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Prop1,
    Prop2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct ConstructArgs {
    /// First subsystem dimension
    #[arg(long)]
    d: usize,
    /// Second subsystem dimension
    #[arg(long = "dprime")]
    d_prime: usize,
    #[arg(long, value_enum)]
    method: Method,
    /// Column-shift parameter (prop2 only)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the Unicode omega in symbolic tables
    #[arg(long)]
    unicode: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify the states of this document instead of generating them
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long = "dprime")]
    d_prime: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    m: Option<usize>,
    /// Random restarts for the numerical complement search
    #[arg(long)]
    restarts: Option<u32>,
    /// Ascent steps per restart
    #[arg(long)]
    steps: Option<u32>,
    /// Search seed (overrides the UMEB_SEED environment variable)
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Print entries as roots of unity instead of numerically
    #[arg(long)]
    symbolic: bool,
    /// Use the Unicode omega in symbolic tables
    #[arg(long)]
    unicode: bool,
    /// Write to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    d: usize,
    #[arg(long = "dprime")]
    d_prime: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long)]
    restarts: Option<u32>,
    #[arg(long)]
    steps: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] umeb_core::Error),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("cannot {action} {path}: {source}")]
    Io {
        action: &'static str,
        path: String,
        source: std::io::Error,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Search(args) => cmd_search(args),
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, CliError> {
    let set = generate(args.d, args.d_prime, args.method, args.m)?;
    match args.format {
        Format::Json => emit(&args.out, &StateSetDocument::from_set(&set).to_json())?,
        Format::Table => {
            let rendered = render_table(
                &set,
                TableMode::Symbolic {
                    unicode: args.unicode,
                },
            );
            print_warnings(&rendered);
            emit(&args.out, &rendered.text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let set = match &args.input {
        Some(path) => {
            if args.d.is_some() || args.d_prime.is_some() || args.method.is_some() {
                return Err(CliError::Usage(
                    "--in conflicts with --d/--dprime/--method".into(),
                ));
            }
            load_set(path)?
        }
        None => {
            let (Some(d), Some(d_prime), Some(method)) = (args.d, args.d_prime, args.method)
            else {
                return Err(CliError::Usage(
                    "provide either --in PATH or all of --d, --dprime, --method".into(),
                ));
            };
            generate(d, d_prime, method, args.m)?
        }
    };

    let config = VerifyConfig {
        search: search_config(args.restarts, args.steps, args.seed)?,
        ..Default::default()
    };
    let result = verify_umeb(&set, &config)?;

    let provenance = set.provenance().to_string();
    if args.json {
        let value = report::json_report(set.dims(), &provenance, &result);
        println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
    } else {
        print!("{}", report::human_report(set.dims(), &provenance, &result));
    }
    Ok(if result.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    let set = load_set(&args.input)?;
    let mode = if args.symbolic {
        TableMode::Symbolic {
            unicode: args.unicode,
        }
    } else {
        TableMode::Numeric
    };
    let rendered = render_table(&set, mode);
    print_warnings(&rendered);
    emit(&args.out, &rendered.text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, CliError> {
    let dims = BipartiteDims::new(args.d, args.d_prime)?;
    // allowed_m_values rejects d >= d', which covers the whole command.
    let m_values = allowed_m_values(dims)?;

    let mut sizes = std::collections::BTreeSet::new();
    println!(
        "available constructions for d={}, d'={}:",
        dims.d(),
        dims.d_prime()
    );
    if dims.r() > 0 {
        let count = dims.q() * dims.d() * dims.d();
        sizes.insert(count);
        println!(
            "  prop1: {count} members (q={}, r={})",
            dims.q(),
            dims.r()
        );
    } else {
        println!("  prop1: unavailable (r = 0)");
    }
    for m in m_values {
        let count = dims.d() * m;
        sizes.insert(count);
        println!("  prop2 m={m}: {count} members");
    }
    println!("distinct UMEB sizes: {}", sizes.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, CliError> {
    let set = load_set(&args.input)?;
    let complement = complement_of(&set)?;
    let config = search_config(args.restarts, args.steps, args.seed)?;
    let cert = numerical_search(&complement, &config)?;

    if args.json {
        let value = report::json_search(complement.dim(), &cert);
        println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
    } else {
        print!("{}", report::human_search(complement.dim(), &cert));
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(
    d: usize,
    d_prime: usize,
    method: Method,
    m: Option<usize>,
) -> Result<StateSet, CliError> {
    let dims = BipartiteDims::new(d, d_prime)?;
    match method {
        Method::Prop1 => {
            if m.is_some() {
                return Err(CliError::Usage("--m applies to --method prop2 only".into()));
            }
            Ok(construct_prop1(dims)?)
        }
        Method::Prop2 => {
            let m = m.ok_or_else(|| {
                CliError::Usage("--m is required with --method prop2".into())
            })?;
            Ok(construct_prop2(dims, m)?)
        }
    }
}

fn load_set(path: &PathBuf) -> Result<StateSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        action: "read",
        path: path.display().to_string(),
        source,
    })?;
    Ok(StateSetDocument::from_json(&text)?.to_set()?)
}

/// Flag beats the UMEB_SEED environment variable, which beats the default.
fn search_config(
    restarts: Option<u32>,
    steps: Option<u32>,
    seed: Option<u64>,
) -> Result<SearchConfig, CliError> {
    let default = SearchConfig::default();
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("UMEB_SEED") {
            Ok(text) => text.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "UMEB_SEED must be an unsigned integer, got {text:?}"
                ))
            })?,
            Err(std::env::VarError::NotPresent) => default.seed,
            Err(err) => {
                return Err(CliError::Usage(format!("cannot read UMEB_SEED: {err}")));
            }
        },
    };
    Ok(SearchConfig {
        restarts: restarts.unwrap_or(default.restarts),
        steps: steps.unwrap_or(default.steps),
        seed,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            action: "write",
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_warnings(rendered: &RenderedTable) {
    for warning in &rendered.warnings {
        eprintln!("warning: {warning}");
    }
}
