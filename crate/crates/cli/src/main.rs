//! `omlab`: command-line front end for the orthomodular lattice workbench.

mod commands;
mod config;

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "omlab", version, about = "Finite orthomodular lattices, contexts and daseinisation")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every orthomodular lattice axiom.
    Validate,
    /// List the Boolean contexts and their inclusions.
    Contexts,
    /// Daseinise an element into a subobject.
    Daseinise { element: String },
    /// Apply the upper adjoint ε to a subobject file, or tabulate it over all subobjects.
    Epsilon {
        /// JSON list of {"context": id, "atoms": [names]} entries.
        #[arg(long)]
        subobject: Option<std::path::PathBuf>,
    },
    /// Evaluate the eight equivalent conditions.
    CheckTheorem {
        /// The element fixed in the hypothesis (default: first element strictly between 0 and 1).
        #[arg(long)]
        z: Option<String>,
    },
    /// Build lemma witnesses for one (z, y) pair or for all of them.
    Lemma { z: Option<String>, y: Option<String> },
    /// Compare e ∧ (b ∨ s) with (e ∧ b) ∨ (e ∧ s) before and after daseinisation.
    Breakfast { e: String, b: String, s: String },
    /// Run every proposition check.
    Battery,
    /// Write the lattice description and context graph.
    Export,
}

/// An error with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 1, message: msg.into() }
    }

    pub fn input(e: impl Display) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

/// What a command produced: files to write (name, contents) and an exit status.
pub struct Output {
    pub files: Vec<(String, String)>,
    pub code: u8,
}

impl Output {
    pub fn one(name: impl Into<String>, body: String) -> Self {
        Output { files: vec![(name.into(), body)], code: 0 }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let c = &cli.config;
    match &cli.command {
        Command::Validate => commands::validate(c),
        Command::Contexts => commands::contexts(c),
        Command::Daseinise { element } => commands::daseinise(c, element),
        Command::Epsilon { subobject } => commands::epsilon(c, subobject.as_deref()),
        Command::CheckTheorem { z } => commands::check_theorem(c, z.as_deref()),
        Command::Lemma { z, y } => commands::lemma(c, z.as_deref(), y.as_deref()),
        Command::Breakfast { e, b, s } => commands::breakfast(c, e, b, s),
        Command::Battery => commands::battery(c),
        Command::Export => commands::export(c),
    }
}

fn emit(config: &RunConfig, out: &Output) -> Result<(), Failure> {
    match &config.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            for (name, body) in &out.files {
                let path = dir.join(name);
                fs::write(&path, body).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (_, body) in &out.files {
                stdout.write_all(body.as_bytes()).map_err(Failure::input)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let config = cli.config.clone();
    match run(cli).and_then(|out| emit(&config, &out).map(|_| out.code)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
