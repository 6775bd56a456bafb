//! Disjunctive normal form: literals, terms (conjunctions), and term lists.
//!
//! Every local update function is a [`Dnf`]. The empty term is the constant
//! true, the empty term list the constant false. Negation goes through
//! De Morgan plus distribution and is capped to fail loudly on blowup.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::state::{Configuration, GeneId, MAX_GENES};

/// Default ceiling on the number of terms produced by negation/conversion.
pub const DEFAULT_TERM_CAP: usize = 4096;

/// A gene tested either positively or negatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub gene: GeneId,
    pub positive: bool,
}

impl Literal {
    pub fn positive(gene: GeneId) -> Self {
        Literal { gene, positive: true }
    }

    pub fn negative(gene: GeneId) -> Self {
        Literal { gene, positive: false }
    }

    pub fn negated(&self) -> Self {
        Literal { gene: self.gene, positive: !self.positive }
    }
}

/// A conjunction of literals; empty means the constant true.
///
/// Literals are kept sorted by gene index with duplicates removed. A gene
/// appearing with both polarities is allowed (the term is then unsatisfiable;
/// validation flags it).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    literals: Vec<Literal>,
    pos: u64,
    neg: u64,
}

impl Term {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        literals.sort();
        literals.dedup();
        let (mut pos, mut neg) = (0u64, 0u64);
        for lit in &literals {
            assert!(lit.gene.0 < MAX_GENES, "gene {} out of range", lit.gene.0);
            if lit.positive {
                pos |= 1 << lit.gene.0;
            } else {
                neg |= 1 << lit.gene.0;
            }
        }
        Term { literals, pos, neg }
    }

    /// The empty conjunction (constant true).
    pub fn truth() -> Self {
        Term::new(Vec::new())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True when some gene appears with both polarities.
    pub fn is_unsatisfiable(&self) -> bool {
        self.pos & self.neg != 0
    }

    /// Largest gene index referenced, if any.
    pub fn max_gene(&self) -> Option<GeneId> {
        self.literals.iter().map(|l| l.gene).max()
    }

    /// Conjoin one more literal; `None` when the result is unsatisfiable.
    pub fn and_literal(&self, lit: Literal) -> Option<Term> {
        let mask = 1u64 << lit.gene.0;
        let clash = if lit.positive { self.neg } else { self.pos };
        if clash & mask != 0 {
            return None;
        }
        let mut lits = self.literals.clone();
        lits.push(lit);
        Some(Term::new(lits))
    }

    /// Evaluate the conjunction at `x`.
    ///
    /// # Panics
    /// Panics when a literal references a gene at or beyond `x`'s width.
    pub fn eval(&self, x: &Configuration) -> bool {
        if let Some(g) = self.max_gene() {
            assert!(g.0 < x.width(), "literal gene {} out of range for width {}", g.0, x.width());
        }
        x.bits() & self.pos == self.pos && x.bits() & self.neg == 0
    }

    pub(crate) fn masks(&self) -> (u64, u64) {
        (self.pos, self.neg)
    }
}

/// A disjunction of [`Term`]s; empty means the constant false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dnf {
    terms: Vec<Term>,
}

impl Dnf {
    /// Exact duplicate terms are dropped (first occurrence wins); term order
    /// is otherwise preserved.
    pub fn new(terms: Vec<Term>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let terms = terms.into_iter().filter(|t| seen.insert(t.masks())).collect();
        Dnf { terms }
    }

    /// Constant false.
    pub fn falsity() -> Self {
        Dnf { terms: Vec::new() }
    }

    /// Constant true.
    pub fn truth() -> Self {
        Dnf { terms: vec![Term::truth()] }
    }

    /// The identity function of a single gene: `f = x_g`.
    pub fn identity(gene: GeneId) -> Self {
        Dnf { terms: vec![Term::new(vec![Literal::positive(gene)])] }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn max_gene(&self) -> Option<GeneId> {
        self.terms.iter().filter_map(Term::max_gene).max()
    }

    /// Union of all genes referenced, as a bit mask.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().map(|t| t.pos | t.neg).fold(0, |a, b| a | b)
    }

    /// Evaluate the disjunction at `x`.
    ///
    /// # Panics
    /// Panics when a literal references a gene at or beyond `x`'s width.
    pub fn eval(&self, x: &Configuration) -> bool {
        self.terms.iter().any(|t| t.eval(x))
    }

    /// Pointwise complement with the default term cap.
    pub fn negate(&self) -> Result<Dnf> {
        self.negate_with_cap(DEFAULT_TERM_CAP)
    }

    /// Pointwise complement via De Morgan + distribution.
    ///
    /// Unsatisfiable and duplicate terms are dropped; no further
    /// minimization is attempted.
    pub fn negate_with_cap(&self, cap: usize) -> Result<Dnf> {
        let mut acc = vec![Term::truth()];
        for term in &self.terms {
            let mut next: Vec<Term> = Vec::new();
            let mut seen: HashSet<(u64, u64)> = HashSet::new();
            for base in &acc {
                for lit in base_extensions(term) {
                    if let Some(t) = base.and_literal(lit) {
                        if t.is_unsatisfiable() {
                            continue;
                        }
                        if seen.insert(t.masks()) {
                            next.push(t);
                        }
                    }
                }
            }
            if next.len() > cap {
                return Err(Error::TermOverflow { cap });
            }
            acc = next;
        }
        Ok(Dnf { terms: acc })
    }

    /// Render with the given gene names, e.g. `"a & !b | c"`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|t| render_term(t, names))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

fn render_term(term: &Term, names: &[String]) -> String {
    if term.is_empty() {
        return "1".to_string();
    }
    term.literals()
        .iter()
        .map(|l| {
            let name = &names[l.gene.0];
            if l.positive { name.clone() } else { format!("!{name}") }
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

fn base_extensions(term: &Term) -> impl Iterator<Item = Literal> + '_ {
    term.literals().iter().map(|l| l.negated())
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_gene().map_or(0, |g| g.0))
            .map(|i| format!("g{i}"))
            .collect();
        f.write_str(&self.render(&names))
    }
}
