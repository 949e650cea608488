//! Command-line front end for commspec: argument parsing, validation and the
//! pipelines behind each subcommand. `main.rs` only wires I/O and exit codes.

pub mod args;
pub mod commands;
pub mod config;
pub mod parse;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::Serialize;

pub use args::Cli;
pub use config::{resolve, RunConfig};
pub use parse::{parse_complex, parse_symbol, ParseError};

/// A failure with its machine-readable tag and process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    #[serde(skip)]
    pub exit: u8,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>, exit: u8) -> Self {
        CliError { kind: kind.into(), message: message.into(), position: None, exit }
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        Self::new("internal", e.to_string(), 1)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new("io", format!("{}: {e}", path.display()), 2)
    }

    /// One-line JSON for standard error.
    pub fn diagnostic(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<commspec_core::Error> for CliError {
    fn from(e: commspec_core::Error) -> Self {
        use commspec_core::Error as E;
        // bad input is a usage problem; numerical breakdown is a run failure
        let exit = match e {
            E::Domain { .. } | E::Format { .. } | E::Window(_) | E::Dimension(_) | E::Io(_) => 2,
            E::Overflow { .. } | E::Degenerate(_) | E::IllConditioned { .. } | E::Linalg(_) => 1,
        };
        CliError::new(e.kind(), e.to_string(), exit)
    }
}

/// Progress note on standard error, as a JSON line.
pub fn progress(message: &str) {
    eprintln!("{}", serde_json::json!({ "progress": message }));
}

/// Parses, validates and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::new("usage", e.render().to_string().trim(), 2);
            let _ = writeln!(stderr, "{}", err.diagnostic());
            return 2;
        }
    };
    let outcome = resolve(&cli).and_then(|config| {
        commspec_core::configure_threads(config.threads)?;
        let artifact = commands::run(&config)?;
        match &cli.output {
            Some(path) => std::fs::write(path, &artifact.text).map_err(|e| CliError::io(path, e))?,
            None => stdout.write_all(artifact.text.as_bytes()).map_err(CliError::internal)?,
        }
        Ok(artifact.failed)
    });
    match outcome {
        Ok(false) => 0,
        Ok(true) => {
            let err = CliError::new("verification", "one or more checks failed", 1);
            let _ = writeln!(stderr, "{}", err.diagnostic());
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.diagnostic());
            e.exit
        }
    }
}
