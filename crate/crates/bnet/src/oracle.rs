//! Explicit ground truth: the full transition graph over all `2^n`
//! configurations, with terminal-SCC attractor classification.
//!
//! States index a dense array via their packed bits (gene 0 at bit 0).
//! Construction can partition the state space across rayon workers; the
//! resulting graph is identical regardless of worker count.

use rayon::prelude::*;

use crate::attractor::{canonical_rotation, Attractor};
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, UpdateMode};
use crate::scc::{self, SccResult};
use crate::state::Configuration;

/// Guardrail for synchronous graphs (one edge per state).
pub const SYNC_GENE_LIMIT: usize = 24;
/// Guardrail for asynchronous graphs (up to `n` edges per state).
pub const ASYNC_GENE_LIMIT: usize = 20;

/// Build graphs in parallel once the state space reaches this size.
const PARALLEL_THRESHOLD: usize = 1 << 16;
const CHUNK: usize = 1 << 14;

/// The explicit transition graph of a network under one update mode.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    mode: UpdateMode,
    n: usize,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

/// Tabulate every state's successors.
///
/// Fails with a capacity error beyond [`SYNC_GENE_LIMIT`] /
/// [`ASYNC_GENE_LIMIT`] genes.
pub fn build_transition_graph(net: &BooleanNetwork, mode: UpdateMode) -> Result<TransitionGraph> {
    let limit = match mode {
        UpdateMode::Synchronous => SYNC_GENE_LIMIT,
        UpdateMode::Asynchronous => ASYNC_GENE_LIMIT,
    };
    if net.n() > limit {
        return Err(Error::TooLarge {
            genes: net.n(),
            limit,
            context: "the explicit transition graph",
        });
    }
    let n = net.n();
    let n_states = 1usize << n;

    let chunks: Vec<(usize, usize)> = (0..n_states)
        .step_by(CHUNK)
        .map(|start| (start, (start + CHUNK).min(n_states)))
        .collect();
    let build_chunk = |&(start, end): &(usize, usize)| -> Vec<u32> {
        let mut edges = Vec::new();
        for bits in start..end {
            push_successors(net, mode, bits as u64, &mut edges);
        }
        edges
    };
    let per_chunk: Vec<Vec<u32>> = if n_states >= PARALLEL_THRESHOLD {
        chunks.par_iter().map(build_chunk).collect()
    } else {
        chunks.iter().map(build_chunk).collect()
    };

    // Successor lists carry a trailing sentinel per state so the flat edge
    // list can be split back into per-state slices in one pass.
    let mut offsets = Vec::with_capacity(n_states + 1);
    let mut targets = Vec::new();
    offsets.push(0u32);
    for chunk in per_chunk {
        for t in chunk {
            if t == SENTINEL {
                offsets.push(targets.len() as u32);
            } else {
                targets.push(t);
            }
        }
    }
    debug_assert_eq!(offsets.len(), n_states + 1);
    Ok(TransitionGraph { mode, n, offsets, targets })
}

const SENTINEL: u32 = u32::MAX;

fn push_successors(net: &BooleanNetwork, mode: UpdateMode, bits: u64, edges: &mut Vec<u32>) {
    let x = Configuration::from_bits(bits, net.n());
    let mask = net.change_mask(&x);
    match mode {
        UpdateMode::Synchronous => {
            if mask != 0 {
                edges.push((bits ^ mask) as u32);
            }
        }
        UpdateMode::Asynchronous => {
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros();
                edges.push((bits ^ (1 << i)) as u32);
                m &= m - 1;
            }
        }
    }
    edges.push(SENTINEL);
}

impl TransitionGraph {
    pub fn mode(&self) -> UpdateMode {
        self.mode
    }

    pub fn gene_count(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> usize {
        1 << self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Successor indices of a state index.
    pub fn successors(&self, state: u32) -> &[u32] {
        let lo = self.offsets[state as usize] as usize;
        let hi = self.offsets[state as usize + 1] as usize;
        &self.targets[lo..hi]
    }

    pub fn out_degree(&self, state: u32) -> usize {
        self.successors(state).len()
    }

    /// The configuration behind a dense state index.
    pub fn configuration(&self, state: u32) -> Configuration {
        Configuration::from_bits(state as u64, self.n)
    }

    fn scc(&self) -> SccResult {
        scc::tarjan(
            self.state_count(),
            |v, out| out.extend_from_slice(self.successors(v)),
            |_| false,
        )
    }

    /// All SCCs with no edge leaving them, as sorted configuration sets
    /// (fixed points appear as singletons). Output is sorted by smallest
    /// member.
    pub fn terminal_sccs(&self) -> Vec<Vec<Configuration>> {
        let scc = self.scc();
        let terminal = self.terminal_flags(&scc);
        let mut out: Vec<Vec<Configuration>> = scc
            .members
            .iter()
            .enumerate()
            .filter(|&(c, _)| terminal[c])
            .map(|(_, members)| {
                let mut states: Vec<Configuration> =
                    members.iter().map(|&s| self.configuration(s)).collect();
                states.sort();
                states
            })
            .collect();
        out.sort();
        out
    }

    fn terminal_flags(&self, scc: &SccResult) -> Vec<bool> {
        let mut terminal = vec![true; scc.members.len()];
        for state in 0..self.state_count() as u32 {
            let c = scc.comp[state as usize];
            for &succ in self.successors(state) {
                if scc.comp[succ as usize] != c {
                    terminal[c as usize] = false;
                }
            }
        }
        terminal
    }

    /// Classify every terminal SCC: singleton → fixed point; a cycle in
    /// which every member has exactly one successor → stable cycle;
    /// anything else → complex. Sorted canonically.
    pub fn classify_attractors(&self) -> Vec<Attractor> {
        let scc = self.scc();
        let terminal = self.terminal_flags(&scc);
        let mut out = Vec::new();
        for (c, members) in scc.members.iter().enumerate() {
            if !terminal[c] {
                continue;
            }
            out.push(self.classify_terminal(members));
        }
        out.sort();
        out
    }

    fn classify_terminal(&self, members: &[u32]) -> Attractor {
        if members.len() == 1 {
            debug_assert_eq!(self.out_degree(members[0]), 0);
            return Attractor::fixed_point(self.configuration(members[0]));
        }
        if members.iter().all(|&s| self.out_degree(s) == 1) {
            // Deterministic inside, so the component is one simple cycle:
            // walk it in successor order.
            let start = *members
                .iter()
                .min_by_key(|&&s| self.configuration(s))
                .expect("non-empty component");
            let mut cycle = vec![self.configuration(start)];
            let mut at = self.successors(start)[0];
            while at != start {
                cycle.push(self.configuration(at));
                at = self.successors(at)[0];
            }
            return Attractor::stable_cycle(cycle);
        }
        Attractor::complex(members.iter().map(|&s| self.configuration(s)).collect())
    }

    /// One representative unstable cycle per non-terminal SCC of size ≥ 2:
    /// the shortest cycle through the component's smallest state. Purely
    /// diagnostic. Sorted canonically.
    pub fn unstable_cycle_diagnostics(&self) -> Vec<Vec<Configuration>> {
        let scc = self.scc();
        let terminal = self.terminal_flags(&scc);
        let mut out = Vec::new();
        for (c, members) in scc.members.iter().enumerate() {
            if terminal[c] || members.len() < 2 {
                continue;
            }
            let v0 = *members
                .iter()
                .min_by_key(|&&s| self.configuration(s))
                .expect("non-empty component");
            if let Some(cycle) = scc::shortest_cycle_through(
                v0,
                |s| scc.comp[s as usize] == c as u32,
                &mut |v, outv| outv.extend_from_slice(self.successors(v)),
            ) {
                out.push(canonical_rotation(
                    cycle.into_iter().map(|s| self.configuration(s)).collect(),
                ));
            }
        }
        out.sort();
        out
    }

    /// Upper bound on the longest repeat-free walk: the heaviest
    /// condensation path, counting states, minus one.
    pub fn max_transient(&self) -> usize {
        let scc = self.scc();
        let mut best = vec![0usize; scc.members.len()];
        // Components come out in reverse topological order, so every
        // successor component is finished first.
        for (c, members) in scc.members.iter().enumerate() {
            let mut downstream = 0usize;
            for &s in members {
                for &succ in self.successors(s) {
                    let d = scc.comp[succ as usize] as usize;
                    if d != c {
                        downstream = downstream.max(best[d]);
                    }
                }
            }
            best[c] = members.len() + downstream;
        }
        best.iter().copied().max().unwrap_or(1).saturating_sub(1)
    }

    /// Longest attractor period (complex attractors count all their states).
    pub fn max_period(&self) -> usize {
        self.classify_attractors()
            .iter()
            .map(Attractor::period)
            .max()
            .expect("a finite transition graph always has a terminal SCC")
    }
}

/// Check the stability condition directly from the network: every cycle
/// state's full successor set must be exactly the next cycle state.
///
/// `cycle` must list at least two distinct states in successor order (the
/// last wraps to the first); anything else is a domain error.
pub fn is_stable_cycle(
    net: &BooleanNetwork,
    cycle: &[Configuration],
    mode: UpdateMode,
) -> Result<bool> {
    if cycle.len() < 2 {
        return Err(Error::NotACycle { reason: "fewer than two states".into() });
    }
    for (i, a) in cycle.iter().enumerate() {
        if cycle[i + 1..].contains(a) {
            return Err(Error::NotACycle { reason: format!("state {a} repeats") });
        }
    }
    for (i, a) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % cycle.len()];
        let succ = net.successors(a, mode);
        if !succ.contains(&next) {
            return Err(Error::NotACycle {
                reason: format!("{a} does not step to {next} under {mode}"),
            });
        }
        if succ.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
