//! Command-line front end for `lndkit-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage, input, parse or core errors.

pub mod commands;
pub mod expr;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lndkit_core::lnd::DEFAULT_NILPOTENCY_CAP;
use serde_json::json;

use expr::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{context}: {error}")]
    Parse { context: String, error: ParseError },
    #[error(transparent)]
    Core(#[from] lndkit_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Parse { .. } => "parse",
            CliError::Core(_) => "core",
        }
    }

    fn to_json(&self, command: &str) -> String {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse { context, error } = self {
            err["context"] = json!(context);
            err["line"] = json!(error.line);
            err["column"] = json!(error.column);
        }
        serde_json::to_string_pretty(&json!({ "command": command, "error": err })).expect("serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lndkit", version, about = "Exact checks for locally nilpotent derivations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Iteration cap for nilpotency certificates.
    #[arg(long, global = true, default_value_t = DEFAULT_NILPOTENCY_CAP)]
    pub cap: u32,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// JSON input document.
    pub path: Option<PathBuf>,
    /// Catalog entry instead of a file, e.g. `ym:3:2`.
    #[arg(long, conflicts_with = "path")]
    pub entry: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// Number of points to sample when the input lists none.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// Only sample points where this expression is nonzero.
    #[arg(long)]
    pub nonzero: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpectVerdict {
    Flexible,
    NotDetermined,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Well-definedness, nilpotency, equivariance and catalog identities.
    CheckLnd {
        #[command(flatten)]
        source: Source,
        #[arg(long = "derivation")]
        derivations: Vec<String>,
    },
    /// The exponential flow exp(t*delta)(f).
    Flow {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        derivation: String,
        /// Expression, or `@name` for a named generator.
        #[arg(long)]
        f: String,
        #[arg(long)]
        t: Option<String>,
    },
    /// Kernel of one derivation up to a degree.
    Kernel {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        derivation: String,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Intersection of kernels up to a degree.
    Ml {
        #[command(flatten)]
        source: Source,
        #[arg(long = "derivation")]
        derivations: Vec<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Subalgebra generated by the kernels, up to a degree.
    Derksen {
        #[command(flatten)]
        source: Source,
        #[arg(long = "derivation")]
        derivations: Vec<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Orbit-tangent span against the tangent space at points.
    Flex {
        #[command(flatten)]
        source: Source,
        #[arg(long = "derivation")]
        derivations: Vec<String>,
        /// Pushforward through exp(t*name), written `name:t`. Repeatable.
        #[arg(long)]
        enrich: Vec<String>,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long, value_enum)]
        expect: Option<ExpectVerdict>,
    },
    /// Whether a derivation is tangent to the divisor {g = 0}.
    Tangency {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        g: String,
    },
    /// Degeneracy locus of two derivations on a surface in 3-space.
    Transversality {
        #[command(flatten)]
        source: Source,
        /// Exactly two names; defaults to the first two derivations.
        #[arg(long = "derivation")]
        derivations: Vec<String>,
        /// Functions claimed to vanish on the locus, comma separated.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
    },
    /// Whether the generator family separates sampled pairs of points.
    Separate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        pairs: usize,
    },
    /// Rank of the generator differentials on the tangent space.
    Jacobian {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Flow program on the plane moving points `--src` to `--dst`.
    MovePlane {
        /// Points as `u,v;u,v;...`.
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
    /// The appendix computation for V_n.
    VerifyAppendix {
        #[arg(long)]
        n: u32,
        /// Comma-separated times; defaults to 1..n.
        #[arg(long)]
        ts: Option<String>,
    },
    /// The derivation checks on the surface xy = z^m - 1.
    VerifyQhp {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        j: u32,
    },
    /// Catalog of named examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

fn echo(args: &[String]) -> String {
    let mut parts = vec!["lndkit".to_string()];
    for a in args.iter().skip(1) {
        let plain = |c: char| c.is_ascii_alphanumeric() || "-_.:/,@=+^".contains(c);
        if a.is_empty() || !a.chars().all(plain) {
            parts.push(format!("'{}'", a.replace('\'', "'\\''")));
        } else {
            parts.push(a.clone());
        }
    }
    parts.join(" ")
}

/// Runs one command, writing the report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let command = echo(&args);
    match commands::execute(&cli, command.clone()) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Text => writeln!(err, "error[{}]: {e}", e.kind()),
                Format::Json => writeln!(out, "{}", e.to_json(&command)),
            };
            2
        }
    }
}
