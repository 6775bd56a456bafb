//! Attractors and their canonical representation.

use std::fmt;

use crate::state::Configuration;

/// What kind of long-run behavior an attractor is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttractorKind {
    /// A single self-reproducing configuration.
    FixedPoint,
    /// A cycle in which every state's unique successor is the next state.
    StableCycle,
    /// A terminal SCC with internal branching (asynchronous mode only);
    /// reported by the explicit oracle, never by the bounded engine.
    Complex,
}

impl AttractorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttractorKind::FixedPoint => "fixed_point",
            AttractorKind::StableCycle => "stable_cycle",
            AttractorKind::Complex => "complex",
        }
    }
}

impl fmt::Display for AttractorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An attractor in canonical form.
///
/// Stable cycles keep successor order but are rotated so the smallest state
/// comes first; complex attractors sort their states. The state list is
/// therefore independent of how the attractor was discovered and doubles as
/// its identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attractor {
    kind: AttractorKind,
    states: Vec<Configuration>,
}

impl Attractor {
    pub fn fixed_point(state: Configuration) -> Self {
        Attractor { kind: AttractorKind::FixedPoint, states: vec![state] }
    }

    /// A stable cycle given in successor order; any rotation yields the same
    /// canonical value.
    pub fn stable_cycle(states: Vec<Configuration>) -> Self {
        assert!(states.len() >= 2, "a cycle needs at least two states");
        Attractor { kind: AttractorKind::StableCycle, states: canonical_rotation(states) }
    }

    /// A complex attractor (unordered state set).
    pub fn complex(mut states: Vec<Configuration>) -> Self {
        states.sort();
        Attractor { kind: AttractorKind::Complex, states }
    }

    pub fn kind(&self) -> AttractorKind {
        self.kind
    }

    /// Canonical state list; for cycles this is successor order starting at
    /// the smallest state.
    pub fn states(&self) -> &[Configuration] {
        &self.states
    }

    /// Number of states (1 for a fixed point).
    pub fn period(&self) -> usize {
        self.states.len()
    }

    pub fn contains(&self, x: &Configuration) -> bool {
        self.states.contains(x)
    }
}

impl fmt::Display for Attractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.kind)?;
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Rotate a cycle so its smallest state comes first, preserving cyclic order.
pub fn canonical_rotation(states: Vec<Configuration>) -> Vec<Configuration> {
    let Some(min_at) = states
        .iter()
        .enumerate()
        .min_by_key(|&(_, s)| s)
        .map(|(i, _)| i)
    else {
        return states;
    };
    let mut rotated = Vec::with_capacity(states.len());
    rotated.extend_from_slice(&states[min_at..]);
    rotated.extend_from_slice(&states[..min_at]);
    rotated
}

/// Everything a bounded-engine run discovers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AttractorSet {
    /// Fixed points and stable cycles, canonically sorted.
    pub attractors: Vec<Attractor>,
    /// Cycles that failed the stability check (asynchronous diagnostics);
    /// canonical rotations, not attractors.
    pub unstable_cycles_seen: Vec<Vec<Configuration>>,
}

impl AttractorSet {
    pub fn len(&self) -> usize {
        self.attractors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attractors.is_empty()
    }

    /// Sort attractors by (kind, states) and unstable cycles by states.
    pub fn sort(&mut self) {
        self.attractors.sort();
        self.unstable_cycles_seen.sort();
    }
}
