use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

/// Cluster algebras of triangulated marked surfaces and their q = 1 skein
/// shadow.
#[derive(Debug, Parser)]
#[command(name = "clusterskein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Surface document (JSON).
    #[arg(conflicts_with = "builtin")]
    pub path: Option<PathBuf>,
    /// Built-in surface: disk:N, punctured-torus or punctured-digon.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the triangles form a triangulation and the tags are compatible.
    Validate(#[command(flatten)] Source),
    /// Print the exchange matrix as JSON rows.
    Matrix(#[command(flatten)] Source),
    /// Mutate the initial seed along a sequence of edges.
    Mutate {
        #[command(flatten)]
        source: Source,
        /// Comma-separated edges, as one-based indices or names.
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<String>,
    },
    /// Explore the exchange graph breadth-first.
    Explore {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: usize,
        /// Write the graph in DOT format to this file (`-` for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check every mutation sequence up to a length for Laurentness.
    LaurentCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        maxlen: usize,
        /// Skip sequences that mutate the same edge twice in a row.
        #[arg(long)]
        no_repeats: bool,
    },
    /// Check the exchange relation of one flip under the tag map.
    RhoCheck {
        #[command(flatten)]
        source: Source,
        /// Edge to flip, as a one-based index or a name.
        #[arg(long)]
        flip: String,
    },
    /// Enumerate the skein generating set.
    Generators {
        #[command(flatten)]
        source: Source,
        /// Print a JSON summary of counts instead of descriptors.
        #[arg(long)]
        counts: bool,
        /// Include vertex-decorated arcs.
        #[arg(long)]
        decorated: bool,
        /// Keep only sequences where paired handles are adjacent.
        #[arg(long)]
        bullock: bool,
        /// Refuse to emit more descriptors than this.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
        /// List the generators of the localized algebra for this triangulation instead.
        #[arg(long, conflicts_with_all = ["counts", "bullock", "decorated"])]
        square: bool,
    },
}

/// Result of a command that ran to completion.
pub enum Status {
    Ok,
    CheckFailed,
}

pub struct Out {
    buf: Vec<u8>,
    color: bool,
}

impl Out {
    fn new() -> Self {
        Out {
            buf: Vec::new(),
            color: std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.extend_from_slice(s.as_ref().as_bytes());
        self.buf.push(b'\n');
    }

    /// `PASS`/`FAIL` marker, colored unless `NO_COLOR` is set or stdout is
    /// not a terminal.
    pub fn verdict(&self, ok: bool) -> String {
        let (word, code) = if ok { ("PASS", 32) } else { ("FAIL", 31) };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::new();
    let result = commands::run(cli.command, &mut out);
    let _ = std::io::stdout().write_all(&out.buf);
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
