use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use omlab_core::context::{enumerate_contexts, ContextGraph, ContextOptions};
use omlab_core::lattice::spec::LatticeSpec;
use omlab_core::lattice::{direct_product, make_boolean, make_mo, AxiomReport, OmlLattice, DEFAULT_MAX_ELEMENTS};
use omlab_core::presheaf::DEFAULT_ORACLE_BOUND;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Data,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Builtin lattice: `boolean K` (2^K elements) or `mo K`. Repeat for a direct product.
    #[arg(long, num_args = 2, value_names = ["NAME", "PARAM"], global = true, conflicts_with = "spec")]
    pub builtin: Vec<String>,

    /// Lattice description file (text or JSON).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS as u64, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub max_elements: u64,

    /// Largest number of candidate families for exhaustive subobject enumeration.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub oracle_bound: u64,

    /// Count the two-element subalgebra {0, 1} as a context.
    #[arg(long, global = true)]
    pub include_trivial_context: bool,

    /// Compare co-negation against the componentwise complement.
    #[arg(long, global = true)]
    pub audit_conegation: bool,

    /// Write outputs into this directory instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// A lattice description that has been read but not yet validated.
pub enum Source {
    Built(OmlLattice),
    Spec(LatticeSpec),
}

impl RunConfig {
    pub fn max_elements(&self) -> usize {
        self.max_elements.min(usize::MAX as u64) as usize
    }

    pub fn source(&self) -> Result<Source, Failure> {
        match (&self.spec, self.builtin.is_empty()) {
            (Some(_), false) => Err(Failure::usage("give either --builtin or --spec, not both")),
            (None, true) => Err(Failure::usage("no lattice given; use --builtin NAME PARAM or --spec FILE")),
            (Some(path), true) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                let spec = LatticeSpec::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                Ok(Source::Spec(spec))
            }
            (None, false) => {
                let cap = self.max_elements();
                let mut acc: Option<OmlLattice> = None;
                for pair in self.builtin.chunks(2) {
                    let k: usize = pair[1]
                        .parse()
                        .map_err(|_| Failure::usage(format!("builtin parameter `{}` is not a number", pair[1])))?;
                    let l = match pair[0].as_str() {
                        "boolean" => make_boolean(k, cap),
                        "mo" => make_mo(k, cap),
                        other => return Err(Failure::usage(format!("unknown builtin `{other}` (expected `boolean` or `mo`)"))),
                    }
                    .map_err(Failure::input)?;
                    acc = Some(match acc {
                        None => l,
                        Some(prev) => direct_product(&prev, &l, cap).map_err(Failure::input)?,
                    });
                }
                Ok(Source::Built(acc.expect("at least one builtin")))
            }
        }
    }

    /// Axiom report for the configured lattice, without requiring it to pass.
    pub fn audit(&self) -> Result<(String, AxiomReport), Failure> {
        match self.source()? {
            Source::Built(l) => Ok((l.name().to_owned(), l.audit())),
            Source::Spec(s) => {
                let report = s.audit(self.max_elements()).map_err(Failure::input)?;
                Ok((s.name.clone(), report))
            }
        }
    }

    pub fn lattice(&self) -> Result<OmlLattice, Failure> {
        match self.source()? {
            Source::Built(l) => Ok(l),
            Source::Spec(s) => s.build(self.max_elements()).map_err(Failure::input),
        }
    }

    pub fn graph(&self) -> Result<ContextGraph, Failure> {
        let l = self.lattice()?;
        let opts = ContextOptions { include_trivial: self.include_trivial_context, ..ContextOptions::default() };
        enumerate_contexts(Arc::new(l), &opts).map_err(Failure::input)
    }
}
