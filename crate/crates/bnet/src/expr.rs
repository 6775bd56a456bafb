//! Boolean expression trees and their conversion to DNF.

use std::collections::HashMap;

use crate::dnf::{Dnf, Literal, Term, DEFAULT_TERM_CAP};
use crate::error::{Error, Result};
use crate::state::{Configuration, GeneId};

/// Parsed Boolean expression, prior to DNF conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Var(String),
    Const(bool),
    Not(Box<ExprAst>),
    And(Vec<ExprAst>),
    Or(Vec<ExprAst>),
}

impl ExprAst {
    /// Evaluate directly against a configuration (reference semantics for
    /// checking the DNF conversion).
    pub fn eval(&self, genes: &HashMap<String, GeneId>, x: &Configuration) -> Result<bool> {
        Ok(match self {
            ExprAst::Var(name) => {
                let g = genes
                    .get(name)
                    .ok_or_else(|| Error::UnknownGene { name: name.clone() })?;
                x.get(*g)
            }
            ExprAst::Const(b) => *b,
            ExprAst::Not(e) => !e.eval(genes, x)?,
            ExprAst::And(es) => {
                for e in es {
                    if !e.eval(genes, x)? {
                        return Ok(false);
                    }
                }
                true
            }
            ExprAst::Or(es) => {
                for e in es {
                    if e.eval(genes, x)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Variable names in first-appearance (left-to-right) order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            ExprAst::Var(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            ExprAst::Const(_) => {}
            ExprAst::Not(e) => e.collect_variables(out),
            ExprAst::And(es) | ExprAst::Or(es) => {
                for e in es {
                    e.collect_variables(out);
                }
            }
        }
    }

    /// Convert to DNF with the default term cap.
    pub fn to_dnf(&self, genes: &HashMap<String, GeneId>) -> Result<Dnf> {
        self.to_dnf_with_cap(genes, DEFAULT_TERM_CAP)
    }

    /// Convert to DNF: negations pushed to literals, conjunction distributed
    /// over disjunction, unsatisfiable and duplicate terms dropped.
    pub fn to_dnf_with_cap(&self, genes: &HashMap<String, GeneId>, cap: usize) -> Result<Dnf> {
        Ok(self.to_dnf_counting(genes, cap)?.0)
    }

    /// Like [`to_dnf_with_cap`](Self::to_dnf_with_cap), but also counts the
    /// contradictory conjunctions (a gene AND-ed with its own negation) that
    /// vanished during distribution — silent drops a linter may want to
    /// surface.
    pub fn to_dnf_counting(
        &self,
        genes: &HashMap<String, GeneId>,
        cap: usize,
    ) -> Result<(Dnf, usize)> {
        let mut dropped = 0;
        let terms = dnf_terms(self, genes, false, cap, &mut dropped)?;
        Ok((Dnf::new(terms), dropped))
    }
}

/// Terms of the DNF of `e` (or of `!e` when `negated`).
fn dnf_terms(
    e: &ExprAst,
    genes: &HashMap<String, GeneId>,
    negated: bool,
    cap: usize,
    dropped: &mut usize,
) -> Result<Vec<Term>> {
    match e {
        ExprAst::Var(name) => {
            let g = *genes
                .get(name)
                .ok_or_else(|| Error::UnknownGene { name: name.clone() })?;
            let lit = if negated { Literal::negative(g) } else { Literal::positive(g) };
            Ok(vec![Term::new(vec![lit])])
        }
        ExprAst::Const(b) => {
            if *b != negated {
                Ok(vec![Term::truth()]) // constant true
            } else {
                Ok(Vec::new()) // constant false
            }
        }
        ExprAst::Not(inner) => dnf_terms(inner, genes, !negated, cap, dropped),
        // De Morgan: a negated AND is an OR of negated children and vice
        // versa, so `negated` picks which connective distributes.
        ExprAst::And(es) | ExprAst::Or(es) => {
            let is_and = matches!(e, ExprAst::And(_));
            if is_and != negated {
                product(es, genes, negated, cap, dropped)
            } else {
                union(es, genes, negated, cap, dropped)
            }
        }
    }
}

fn union(
    es: &[ExprAst],
    genes: &HashMap<String, GeneId>,
    negated: bool,
    cap: usize,
    dropped: &mut usize,
) -> Result<Vec<Term>> {
    let mut out: Vec<Term> = Vec::new();
    for e in es {
        for t in dnf_terms(e, genes, negated, cap, dropped)? {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        if out.len() > cap {
            return Err(Error::TermOverflow { cap });
        }
    }
    Ok(out)
}

fn product(
    es: &[ExprAst],
    genes: &HashMap<String, GeneId>,
    negated: bool,
    cap: usize,
    dropped: &mut usize,
) -> Result<Vec<Term>> {
    let mut acc = vec![Term::truth()];
    for e in es {
        let factor = dnf_terms(e, genes, negated, cap, dropped)?;
        let mut next: Vec<Term> = Vec::new();
        for base in &acc {
            for t in &factor {
                match conjoin(base, t) {
                    Some(combined) => {
                        if !next.contains(&combined) {
                            next.push(combined);
                        }
                    }
                    None => *dropped += 1,
                }
            }
            if next.len() > cap {
                return Err(Error::TermOverflow { cap });
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Conjoin two satisfiable terms; `None` when the result is contradictory.
fn conjoin(a: &Term, b: &Term) -> Option<Term> {
    let mut t = a.clone();
    for lit in b.literals() {
        t = t.and_literal(*lit)?;
    }
    Some(t)
}
