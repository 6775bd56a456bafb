//! Boolean networks and their one-step dynamics.
//!
//! A [`BooleanNetwork`] is an ordered gene list with one DNF update function
//! per gene. Synchronous steps update every gene at once; asynchronous steps
//! flip exactly one gene whose value would change, so a configuration never
//! succeeds itself.

use std::fmt;
use std::str::FromStr;

use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::state::{Configuration, GeneId, MAX_GENES};

/// Update discipline for the transition semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateMode {
    Synchronous,
    Asynchronous,
}

impl UpdateMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            UpdateMode::Synchronous => "sync",
            UpdateMode::Asynchronous => "async",
        }
    }
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UpdateMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sync" | "synchronous" => Ok(UpdateMode::Synchronous),
            "async" | "asynchronous" => Ok(UpdateMode::Asynchronous),
            other => Err(format!("unknown update mode `{other}` (expected sync or async)")),
        }
    }
}

/// An ordered gene list plus one update function per gene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNetwork {
    names: Vec<String>,
    functions: Vec<Dnf>,
}

impl BooleanNetwork {
    /// Build a network; gene order is the order of `names`.
    ///
    /// Fails when the gene count is 0 or above [`MAX_GENES`], when the
    /// function count differs from the gene count, or when a literal
    /// references an index outside the gene list. Duplicate names are
    /// permitted here and reported by [`BooleanNetwork::validate`].
    pub fn new(names: Vec<String>, functions: Vec<Dnf>) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_GENES {
            return Err(Error::TooLarge {
                genes: names.len(),
                limit: MAX_GENES,
                context: "bit-packed configurations",
            });
        }
        assert_eq!(
            names.len(),
            functions.len(),
            "each gene needs exactly one update function"
        );
        for f in &functions {
            if let Some(g) = f.max_gene() {
                if g.0 >= names.len() {
                    return Err(Error::UnknownGene { name: format!("#{}", g.0) });
                }
            }
        }
        Ok(BooleanNetwork { names, functions })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gene: GeneId) -> &str {
        &self.names[gene.0]
    }

    pub fn function(&self, gene: GeneId) -> &Dnf {
        &self.functions[gene.0]
    }

    pub fn functions(&self) -> &[Dnf] {
        &self.functions
    }

    /// First gene with the given name.
    pub fn gene_index(&self, name: &str) -> Option<GeneId> {
        self.names.iter().position(|n| n == name).map(GeneId)
    }

    /// Apply every update function at once.
    ///
    /// # Panics
    /// Panics when `x`'s width differs from the gene count.
    pub fn sync_step(&self, x: &Configuration) -> Configuration {
        self.check_width(x);
        let mut bits = 0u64;
        for (i, f) in self.functions.iter().enumerate() {
            if f.eval(x) {
                bits |= 1 << i;
            }
        }
        Configuration::from_bits(bits, self.n())
    }

    /// Mask of genes whose next value differs from their current one.
    pub(crate) fn change_mask(&self, x: &Configuration) -> u64 {
        self.check_width(x);
        self.sync_step(x).bits() ^ x.bits()
    }

    /// Genes whose value would change, in ascending index order.
    ///
    /// Empty exactly when `x` is a fixed point.
    pub fn changing_genes(&self, x: &Configuration) -> Vec<GeneId> {
        let mask = self.change_mask(x);
        (0..self.n()).filter(|i| mask >> i & 1 == 1).map(GeneId).collect()
    }

    /// All one-gene updates of `x`, in ascending gene order.
    ///
    /// Never contains `x` itself; empty exactly when `x` is a fixed point.
    pub fn async_successors(&self, x: &Configuration) -> Vec<Configuration> {
        let mask = self.change_mask(x);
        (0..self.n())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| x.flipped(GeneId(i)))
            .collect()
    }

    pub fn is_fixed_point(&self, x: &Configuration) -> bool {
        self.change_mask(x) == 0
    }

    /// Successors of `x` under the given mode (0 or 1 in synchronous mode).
    pub fn successors(&self, x: &Configuration, mode: UpdateMode) -> Vec<Configuration> {
        match mode {
            UpdateMode::Synchronous => {
                let y = self.sync_step(x);
                if y == *x { Vec::new() } else { vec![y] }
            }
            UpdateMode::Asynchronous => self.async_successors(x),
        }
    }

    /// Structural health report: duplicate names and unsatisfiable terms.
    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            if self.names[..i].contains(name) {
                findings.push(Finding {
                    severity: Severity::Error,
                    message: format!("duplicate gene name `{name}`"),
                });
            }
        }
        for (i, f) in self.functions.iter().enumerate() {
            for term in f.terms() {
                if term.is_unsatisfiable() {
                    findings.push(Finding {
                        severity: Severity::Warning,
                        message: format!(
                            "function of `{}` contains an unsatisfiable term ({})",
                            self.names[i],
                            render_conflict(term, &self.names),
                        ),
                    });
                }
            }
        }
        ValidationReport { findings }
    }

    /// Render in the `targets, factors` file format accepted by the parser.
    pub fn format(&self) -> String {
        let mut out = String::from("targets, factors\n");
        for (i, f) in self.functions.iter().enumerate() {
            out.push_str(&self.names[i]);
            out.push_str(", ");
            out.push_str(&f.render(&self.names));
            out.push('\n');
        }
        out
    }

    fn check_width(&self, x: &Configuration) {
        assert_eq!(
            x.width(),
            self.n(),
            "configuration width {} does not match gene count {}",
            x.width(),
            self.n()
        );
    }
}

fn render_conflict(term: &crate::dnf::Term, names: &[String]) -> String {
    term.literals()
        .iter()
        .map(|l| {
            let n = &names[l.gene.0];
            if l.positive { n.clone() } else { format!("!{n}") }
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

/// Outcome of [`BooleanNetwork::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}
