use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{run, Command};
use crate::config::{budget_scale, parse_assumption, Format, SessionConfig, BUDGET_SCALE_VAR};

#[derive(Debug, Parser)]
#[command(name = "smtk", version, about = "Computations in special monoids")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Rule budget for Knuth–Bendix completion.
    #[arg(long, global = true)]
    kb_max_rules: Option<usize>,
    /// Iteration budget for Knuth–Bendix completion.
    #[arg(long, global = true)]
    kb_max_iters: Option<usize>,
    /// Rewrite steps allowed in the fallback equality search.
    #[arg(long, global = true)]
    search_radius: Option<usize>,
    /// Longest intermediate word in the fallback equality search.
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Radius for `ball`, `forest` and `pingpong`.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Facts about the group of units, e.g. "fp=inf cd=2".
    #[arg(long, global = true)]
    assume_units: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Minimal invertible pieces and their inverses.
    Delta { pres: PathBuf },
    /// Presentation of the group of units.
    Units { pres: PathBuf },
    /// Normal form of a word.
    Reduce { pres: PathBuf, word: String },
    /// Otto–Zhang form of a word.
    Ozf { pres: PathBuf, word: String },
    /// Right, left and two-sided invertibility of a word.
    Invert { pres: PathBuf, word: String },
    /// Generators X and Y of N.
    Ngens { pres: PathBuf },
    /// Free-product normal form of (u, v) in N.
    Nnf { pres: PathBuf, u: String, v: String },
    /// Ping-pong checks on a ball of N.
    Pingpong { pres: PathBuf },
    /// Ball of the two-sided Cayley graph around a word.
    Ball {
        pres: PathBuf,
        center: Option<String>,
        #[arg(long = "center", conflicts_with = "center")]
        center_flag: Option<String>,
        /// Also write the ball as Graphviz source to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Quotient of a ball by N-orbits.
    Forest {
        pres: PathBuf,
        center: Option<String>,
        #[arg(long = "center", conflicts_with = "center")]
        center_flag: Option<String>,
    },
    /// Basis of the collapsed edges.
    Cbasis { pres: PathBuf },
    /// Resolution ingredients and finiteness conclusions.
    Summary { pres: PathBuf },
    /// Finiteness classification of a one-relator presentation.
    Classify { pres: PathBuf },
    /// Compressibility of a pair u = v over the alphabet of a file.
    Compress { pres: PathBuf, u: String, v: String },
}

/// Exit code and captured output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn split(cmd: Cmd) -> (PathBuf, Command) {
    match cmd {
        Cmd::Delta { pres } => (pres, Command::Delta),
        Cmd::Units { pres } => (pres, Command::Units),
        Cmd::Reduce { pres, word } => (pres, Command::Reduce { word }),
        Cmd::Ozf { pres, word } => (pres, Command::Ozf { word }),
        Cmd::Invert { pres, word } => (pres, Command::Invert { word }),
        Cmd::Ngens { pres } => (pres, Command::Ngens),
        Cmd::Nnf { pres, u, v } => (pres, Command::Nnf { u, v }),
        Cmd::Pingpong { pres } => (pres, Command::Pingpong),
        Cmd::Ball {
            pres,
            center,
            center_flag,
            dot,
        } => {
            let center = center.or(center_flag).unwrap_or_default();
            (pres, Command::Ball { center, dot })
        }
        Cmd::Forest {
            pres,
            center,
            center_flag,
        } => {
            let center = center.or(center_flag).unwrap_or_default();
            (pres, Command::Forest { center })
        }
        Cmd::Cbasis { pres } => (pres, Command::Cbasis),
        Cmd::Summary { pres } => (pres, Command::Summary),
        Cmd::Classify { pres } => (pres, Command::Classify),
        Cmd::Compress { pres, u, v } => (pres, Command::Compress { u, v }),
    }
}

fn failure(code: i32, stderr: String) -> Invocation {
    Invocation {
        code,
        stdout: String::new(),
        stderr,
    }
}

/// Parses arguments (program name first) and runs the command. Budgets are
/// scaled by the `SMTK_BUDGET_SCALE` environment variable.
pub fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation {
                    code,
                    stdout: text.trim_end().to_string(),
                    stderr: String::new(),
                }
            } else {
                failure(code, text.trim_end().to_string())
            };
        }
    };
    let scale = match budget_scale(std::env::var(BUDGET_SCALE_VAR).ok().as_deref()) {
        Ok(s) => s,
        Err(e) => return failure(1, format!("error: {e}")),
    };
    let (pres, command) = split(cli.command);
    let c = cli.common;
    let mut cfg = SessionConfig::new(pres);
    cfg.format = match c.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Dot => Format::Dot,
    };
    cfg.kb_max_rules = c.kb_max_rules.unwrap_or(cfg.kb_max_rules);
    cfg.kb_max_iters = c.kb_max_iters.unwrap_or(cfg.kb_max_iters);
    cfg.search_radius = c.search_radius.unwrap_or(cfg.search_radius);
    cfg.max_word_len = c.max_word_len.or(cfg.max_word_len);
    cfg.radius = c.radius.unwrap_or(cfg.radius);
    if let Some(text) = &c.assume_units {
        match parse_assumption(text) {
            Ok(a) => cfg.assume_units = Some(a),
            Err(e) => return failure(1, format!("error: {e}")),
        }
    }
    match run(&command, &cfg, scale) {
        Ok(out) => Invocation {
            code: out.status.code(),
            stdout: out.text,
            stderr: String::new(),
        },
        Err(e) => failure(e.status().code(), format!("error: {e}")),
    }
}
