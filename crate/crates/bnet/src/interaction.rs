//! Signed interaction graph derived from the update functions.
//!
//! An arc `(i, +, j)` means some pair of configurations differing only in
//! gene `i` has `f_j` rising with `x_i`; `(i, -, j)` means falling. Both can
//! coexist (non-monotone dependence). Derivation probes the truth table of
//! each function restricted to its syntactic support; functions with supports
//! too large to probe fall back to a literal scan and mark the result
//! approximate.

use std::fmt;

use crate::network::BooleanNetwork;
use crate::state::{Configuration, GeneId};

/// Regulation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One signed regulation arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedArc {
    pub source: GeneId,
    pub sign: Sign,
    pub target: GeneId,
}

/// The derived interaction graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    /// Arcs sorted by (source, target, sign).
    pub arcs: Vec<SignedArc>,
    /// False when any function was too wide to probe exhaustively and the
    /// syntactic fallback was used for it.
    pub exact: bool,
}

/// Supports up to this many genes per function are probed exhaustively.
pub const PROBE_LIMIT: usize = 24;

/// Derive the signed interaction graph of `net`.
pub fn derive_interaction_graph(net: &BooleanNetwork) -> InteractionGraph {
    let mut arcs = Vec::new();
    let mut exact = true;
    for j in 0..net.n() {
        let target = GeneId(j);
        let f = net.function(target);
        let support: Vec<usize> = (0..net.n())
            .filter(|i| f.support_mask() >> i & 1 == 1)
            .collect();
        if support.len() <= PROBE_LIMIT {
            probe_function(net, target, &support, &mut arcs);
        } else {
            exact = false;
            syntactic_arcs(net, target, &mut arcs);
        }
    }
    arcs.sort_by_key(|a| (a.source, a.target, a.sign));
    arcs.dedup();
    InteractionGraph { arcs, exact }
}

/// Exhaustive probe: for every source gene in the support, compare f at the
/// two assignments differing only in that gene, over all combinations of the
/// remaining support genes (non-support genes pinned to 0).
fn probe_function(net: &BooleanNetwork, target: GeneId, support: &[usize], arcs: &mut Vec<SignedArc>) {
    let f = net.function(target);
    for (si, &i) in support.iter().enumerate() {
        let others: Vec<usize> = support
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != si)
            .map(|(_, &g)| g)
            .collect();
        let (mut rising, mut falling) = (false, false);
        for combo in 0u64..(1 << others.len()) {
            let mut bits = 0u64;
            for (k, &g) in others.iter().enumerate() {
                if combo >> k & 1 == 1 {
                    bits |= 1 << g;
                }
            }
            let x0 = Configuration::from_bits(bits, net.n());
            let x1 = Configuration::from_bits(bits | 1 << i, net.n());
            let (v0, v1) = (f.eval(&x0), f.eval(&x1));
            rising |= !v0 && v1;
            falling |= v0 && !v1;
            if rising && falling {
                break;
            }
        }
        if rising {
            arcs.push(SignedArc { source: GeneId(i), sign: Sign::Positive, target });
        }
        if falling {
            arcs.push(SignedArc { source: GeneId(i), sign: Sign::Negative, target });
        }
    }
}

/// Fallback: read arcs off literal polarities without checking that the
/// dependence is real.
fn syntactic_arcs(net: &BooleanNetwork, target: GeneId, arcs: &mut Vec<SignedArc>) {
    for term in net.function(target).terms() {
        for lit in term.literals() {
            arcs.push(SignedArc {
                source: lit.gene,
                sign: if lit.positive { Sign::Positive } else { Sign::Negative },
                target,
            });
        }
    }
}
