//! Bounded-length attractor search with exclusion constraints and length
//! doubling.
//!
//! The search looks at orbits of a fixed length `t`: configuration sequences
//! that follow the transition relation, stuttering at fixed points. When an
//! orbit's last state already occurs earlier in the orbit, the states between
//! the two occurrences form a fixed point or a candidate cycle. Found fixed
//! points and cycles are *excluded* — later orbits may not touch their states
//! at any time index — and the search keeps working at the same length until
//! nothing new turns up. It then either doubles the length (some orbit of the
//! current length still exists, so longer cycles may be hiding) or halts
//! (no orbit of the current length exists at all).
//!
//! Cycles that fail the stability check (asynchronous mode: some cycle state
//! has successors outside the cycle) are reported as diagnostics, not
//! attractors, and are excluded like everything else so the search cannot
//! orbit them forever.
//!
//! [`enumerate_paths`] streams every orbit of a given length in a fixed
//! order. [`find_all_attractors`] does not consume that stream literally:
//! a pass at length `t` *constructs* exactly the repeat orbits the stream
//! would reveal — stutter orbits at the remaining fixed points and wrap
//! orbits around the shortest remaining cycles of period ≤ `t` — and feeds
//! them through the same repeat-detection, extraction, and stability
//! machinery. This keeps each pass polynomial in the state count while
//! preserving the observable contract: same attractors, same halting
//! condition, and an auditable exclusion discipline.

use crate::attractor::{canonical_rotation, Attractor, AttractorSet};
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, UpdateMode};
use crate::oracle;
use crate::scc;
use crate::state::{Configuration, GeneId};

/// Dense per-pass analysis caps the engine at this many genes.
pub const ENGINE_GENE_LIMIT: usize = 24;

/// Default safety valve on the doubled path length.
pub const DEFAULT_LENGTH_CAP: usize = 1 << 20;

/// What a single orbit step updated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleStep {
    /// Synchronous step: every gene at once.
    All,
    /// Asynchronous step: exactly this gene flipped.
    Gene(GeneId),
    /// No successor exists (fixed point); the orbit repeats its state.
    Stutter,
}

/// An orbit: `t+1` configurations plus the `t` steps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAssignment {
    pub configs: Vec<Configuration>,
    pub schedule: Vec<ScheduleStep>,
}

impl PathAssignment {
    /// Number of steps (one less than the number of configurations).
    pub fn len(&self) -> usize {
        self.schedule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schedule.is_empty()
    }

    /// Orbit validity: every consecutive pair is a legal transition under
    /// its schedule step, or a stutter at a fixed point.
    pub fn is_valid(&self, net: &BooleanNetwork, mode: UpdateMode) -> bool {
        if self.configs.len() != self.schedule.len() + 1 {
            return false;
        }
        self.schedule.iter().enumerate().all(|(k, step)| {
            let (x, y) = (&self.configs[k], &self.configs[k + 1]);
            match step {
                ScheduleStep::Stutter => y == x && net.is_fixed_point(x),
                ScheduleStep::All => {
                    mode == UpdateMode::Synchronous && *y != *x && net.sync_step(x) == *y
                }
                ScheduleStep::Gene(g) => {
                    mode == UpdateMode::Asynchronous
                        && net.changing_genes(x).contains(g)
                        && x.flipped(*g) == *y
                }
            }
        })
    }
}

/// States banned from all later orbits; grows as attractors are found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionSet {
    states: std::collections::BTreeSet<Configuration>,
}

impl ExclusionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, x: &Configuration) -> bool {
        self.states.contains(x)
    }

    pub fn insert(&mut self, x: Configuration) -> bool {
        self.states.insert(x)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Configuration> {
        self.states.iter()
    }
}

/// Add a newly found attractor's states to the exclusion set.
///
/// Overlap with existing exclusions means the same attractor was discovered
/// twice — an internal invariant violation reported as an error.
pub fn exclude_attractor(excl: &mut ExclusionSet, attractor: &Attractor) -> Result<()> {
    for s in attractor.states() {
        if excl.contains(s) {
            return Err(Error::ExclusionOverlap { state: s.to_string() });
        }
    }
    for s in attractor.states() {
        excl.insert(*s);
    }
    Ok(())
}

/// Search parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: UpdateMode,
    /// Starting path length (≥ 1).
    pub initial_length: usize,
    /// Doubling stops at this length; exceeding it aborts the run with
    /// partial results.
    pub length_cap: usize,
}

impl EngineConfig {
    pub fn new(mode: UpdateMode) -> Self {
        EngineConfig { mode, initial_length: 1, length_cap: DEFAULT_LENGTH_CAP }
    }

    fn validate(&self) -> Result<()> {
        if self.initial_length < 1 {
            return Err(Error::InvalidEngineConfig("initial length must be ≥ 1".into()));
        }
        if self.length_cap < self.initial_length {
            return Err(Error::InvalidEngineConfig(
                "length cap must be ≥ the initial length".into(),
            ));
        }
        Ok(())
    }
}

/// Why the run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineOutcome {
    /// No orbit of the final length exists outside the exclusions: the
    /// attractor list is complete (fixed points and stable cycles).
    Exhausted,
    /// The length cap stopped the doubling; results are partial.
    LengthCapReached,
}

/// Result of a bounded search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineRun {
    pub attractors: AttractorSet,
    /// The path length in force when the run ended.
    pub final_length: usize,
    pub outcome: EngineOutcome,
    /// Number of same-length passes executed.
    pub passes: u32,
    /// Orbits fed through repeat detection.
    pub paths_examined: u64,
    /// Examined orbits that touched an excluded state (always 0; counted to
    /// make the exclusion audit explicit).
    pub exclusion_violations: u64,
}

/// Largest `i < t` with `configs[i] == configs[t]`.
///
/// `i == t−1` means the orbit stutters (fixed point); smaller `i` makes
/// `configs[i..t-1]` a candidate cycle. `None` when the last state is unique.
pub fn detect_repeat(p: &PathAssignment) -> Option<usize> {
    let t = p.configs.len().checked_sub(1)?;
    let last = p.configs[t];
    (0..t).rev().find(|&i| p.configs[i] == last)
}

/// The cycle states `configs[i..t-1]` in path order.
///
/// `i` must come from [`detect_repeat`] with `i < t−1`. When the window
/// itself contains a duplicate (the orbit wandered through a state twice
/// before closing), the repeat scan is re-run from that inner repeat until
/// the window is duplicate-free.
pub fn extract_cycle(p: &PathAssignment, i: usize) -> Vec<Configuration> {
    let mut start = i;
    let mut end = p.configs.len() - 1;
    loop {
        let window = &p.configs[start..end];
        match first_inner_duplicate(window) {
            None => return window.to_vec(),
            Some(k) => {
                end = start + k;
                let target = p.configs[end];
                start = (0..end)
                    .rev()
                    .find(|&j| p.configs[j] == target)
                    .expect("a duplicate has an earlier occurrence");
            }
        }
    }
}

/// Smallest `k ≥ 1` such that `window[k]` already occurs in `window[..k]`.
fn first_inner_duplicate(window: &[Configuration]) -> Option<usize> {
    (1..window.len()).find(|&k| window[..k].contains(&window[k]))
}

/// Stability of a candidate cycle (a fixed point counts as a stable
/// length-1 cycle). Synchronous cycles are always stable; asynchronous
/// cycles must have no exit arcs.
pub fn check_stability(
    net: &BooleanNetwork,
    cycle: &[Configuration],
    mode: UpdateMode,
) -> Result<bool> {
    match cycle {
        [] => Err(Error::NotACycle { reason: "empty state list".into() }),
        [x] => {
            if net.is_fixed_point(x) {
                Ok(true)
            } else {
                Err(Error::NotACycle { reason: format!("{x} is not a fixed point") })
            }
        }
        _ => oracle::is_stable_cycle(net, cycle, mode),
    }
}

/// Stream every orbit of length `t` whose states all avoid `excl`.
///
/// Deterministic order: start states ascending (rendered value), then at
/// each asynchronous branch the updated gene ascending. Fixed points
/// stutter. The stream is lazy; nothing is materialized up front.
pub fn enumerate_paths<'a>(
    net: &'a BooleanNetwork,
    mode: UpdateMode,
    t: usize,
    excl: &'a ExclusionSet,
) -> Paths<'a> {
    assert!(t >= 1, "path length must be at least 1");
    Paths {
        net,
        mode,
        t,
        excl,
        next_start: 0,
        n_states: 1u64 << net.n(),
        configs: Vec::new(),
        schedule: Vec::new(),
        pending: Vec::new(),
    }
}

/// Lazy depth-first orbit stream; see [`enumerate_paths`].
pub struct Paths<'a> {
    net: &'a BooleanNetwork,
    mode: UpdateMode,
    t: usize,
    excl: &'a ExclusionSet,
    next_start: u64,
    n_states: u64,
    configs: Vec<Configuration>,
    schedule: Vec<ScheduleStep>,
    pending: Vec<Choices>,
}

struct Choices {
    options: Vec<(ScheduleStep, Configuration)>,
    at: usize,
}

impl Choices {
    fn next(&mut self) -> Option<(ScheduleStep, Configuration)> {
        let opt = self.options.get(self.at).copied();
        self.at += 1;
        opt
    }
}

impl<'a> Paths<'a> {
    fn choices_for(&self, x: &Configuration) -> Choices {
        let mut options = Vec::new();
        match self.mode {
            UpdateMode::Synchronous => {
                let y = self.net.sync_step(x);
                if y == *x {
                    options.push((ScheduleStep::Stutter, *x));
                } else if !self.excl.contains(&y) {
                    options.push((ScheduleStep::All, y));
                }
            }
            UpdateMode::Asynchronous => {
                let changing = self.net.changing_genes(x);
                if changing.is_empty() {
                    options.push((ScheduleStep::Stutter, *x));
                } else {
                    for g in changing {
                        let y = x.flipped(g);
                        if !self.excl.contains(&y) {
                            options.push((ScheduleStep::Gene(g), y));
                        }
                    }
                }
            }
        }
        Choices { options, at: 0 }
    }
}

impl<'a> Iterator for Paths<'a> {
    type Item = PathAssignment;

    fn next(&mut self) -> Option<PathAssignment> {
        loop {
            if self.configs.len() == self.t + 1 {
                let path = PathAssignment {
                    configs: self.configs.clone(),
                    schedule: self.schedule.clone(),
                };
                self.configs.pop();
                self.schedule.pop();
                return Some(path);
            }
            if self.configs.is_empty() {
                let x = loop {
                    if self.next_start >= self.n_states {
                        return None;
                    }
                    let x = Configuration::from_ordinal(self.next_start, self.net.n());
                    self.next_start += 1;
                    if !self.excl.contains(&x) {
                        break x;
                    }
                };
                self.configs.push(x);
                self.pending.push(self.choices_for(&x));
                continue;
            }
            let depth = self.configs.len() - 1;
            match self.pending[depth].next() {
                Some((step, y)) => {
                    self.schedule.push(step);
                    self.configs.push(y);
                    if self.configs.len() <= self.t {
                        self.pending.push(self.choices_for(&y));
                    }
                }
                None => {
                    self.pending.pop();
                    self.configs.pop();
                    if !self.schedule.is_empty() {
                        self.schedule.pop();
                    }
                }
            }
        }
    }
}

/// Run the full search loop; see the module docs for the pass structure.
pub fn find_all_attractors(net: &BooleanNetwork, cfg: &EngineConfig) -> Result<EngineRun> {
    cfg.validate()?;
    if net.n() > ENGINE_GENE_LIMIT {
        return Err(Error::TooLarge {
            genes: net.n(),
            limit: ENGINE_GENE_LIMIT,
            context: "the bounded engine",
        });
    }
    Search::new(net, cfg.mode).run(cfg)
}

struct Search<'a> {
    net: &'a BooleanNetwork,
    mode: UpdateMode,
    n_states: usize,
    excl: ExclusionSet,
    excluded: Vec<bool>,
    set: AttractorSet,
    passes: u32,
    paths_examined: u64,
    exclusion_violations: u64,
}

impl<'a> Search<'a> {
    fn new(net: &'a BooleanNetwork, mode: UpdateMode) -> Self {
        let n_states = 1usize << net.n();
        Search {
            net,
            mode,
            n_states,
            excl: ExclusionSet::new(),
            excluded: vec![false; n_states],
            set: AttractorSet::default(),
            passes: 0,
            paths_examined: 0,
            exclusion_violations: 0,
        }
    }

    fn run(mut self, cfg: &EngineConfig) -> Result<EngineRun> {
        let mut t = cfg.initial_length;
        let outcome = loop {
            loop {
                let found = self.pass(t)?;
                self.passes += 1;
                if found == 0 {
                    break;
                }
            }
            if !self.exists_walk(t) {
                break EngineOutcome::Exhausted;
            }
            if t >= cfg.length_cap {
                break EngineOutcome::LengthCapReached;
            }
            t = t.saturating_mul(2).min(cfg.length_cap);
        };
        self.set.sort();
        Ok(EngineRun {
            attractors: self.set,
            final_length: t,
            outcome,
            passes: self.passes,
            paths_examined: self.paths_examined,
            exclusion_violations: self.exclusion_violations,
        })
    }

    /// One full pass at length `t`: realize every repeat orbit the stream
    /// would produce, process it, and exclude what it revealed. Returns the
    /// number of findings.
    fn pass(&mut self, t: usize) -> Result<usize> {
        let mut found = 0;

        // Fixed points first, in enumeration (ascending) order: their
        // stutter orbits are the shortest repeats.
        for ord in 0..self.n_states as u64 {
            let x = Configuration::from_ordinal(ord, self.net.n());
            if self.excluded[x.bits() as usize] || !self.net.is_fixed_point(&x) {
                continue;
            }
            let path = PathAssignment {
                configs: vec![x; t + 1],
                schedule: vec![ScheduleStep::Stutter; t],
            };
            self.examine(&path);
            let i = detect_repeat(&path).expect("a stutter orbit always repeats");
            debug_assert_eq!(i, t - 1, "stutter repeat must point at the previous index");
            let attractor = Attractor::fixed_point(x);
            exclude_attractor(&mut self.excl, &attractor)?;
            self.excluded[x.bits() as usize] = true;
            self.set.attractors.push(attractor);
            found += 1;
        }

        // Then cycles of period ≤ t still present outside the exclusions:
        // one wrap orbit per strongly connected component, smallest entry
        // state first.
        for (v0, comp_id, scc) in self.cycle_components() {
            let in_comp = |s: u32| scc.comp[s as usize] == comp_id;
            let cycle = {
                let net = self.net;
                let mode = self.mode;
                scc::shortest_cycle_through(v0, in_comp, &mut |v, out| {
                    dense_successors(net, mode, v, out)
                })
            };
            let Some(cycle) = cycle else { continue };
            let period = cycle.len();
            if period > t {
                continue;
            }
            let states: Vec<Configuration> = cycle
                .iter()
                .map(|&s| Configuration::from_bits(s as u64, self.net.n()))
                .collect();
            let path = self.wrap_orbit(&states, t);
            self.examine(&path);
            let i = detect_repeat(&path).expect("a wrap orbit always repeats");
            debug_assert_eq!(i, t - period);
            let extracted = extract_cycle(&path, i);
            debug_assert_eq!(extracted.len(), period);
            if check_stability(self.net, &extracted, self.mode)? {
                let attractor = Attractor::stable_cycle(extracted);
                exclude_attractor(&mut self.excl, &attractor)?;
                for s in attractor.states() {
                    self.excluded[s.bits() as usize] = true;
                }
                self.set.attractors.push(attractor);
            } else {
                // Not an attractor; excluded anyway so the search cannot
                // keep orbiting it. Attractor states never sit on another
                // cycle, so this cannot mask later findings.
                let canon = canonical_rotation(extracted);
                for s in &canon {
                    self.excl.insert(*s);
                    self.excluded[s.bits() as usize] = true;
                }
                self.set.unstable_cycles_seen.push(canon);
            }
            found += 1;
        }
        Ok(found)
    }

    /// Non-trivial SCCs of the residual graph as (entry state, component id,
    /// decomposition), ordered by smallest member.
    fn cycle_components(&self) -> Vec<(u32, u32, std::rc::Rc<scc::SccResult>)> {
        let net = self.net;
        let mode = self.mode;
        let excluded = &self.excluded;
        let result = std::rc::Rc::new(scc::tarjan(
            self.n_states,
            |v, out| dense_successors(net, mode, v, out),
            |v| excluded[v as usize],
        ));
        let mut comps: Vec<(u32, u32, std::rc::Rc<scc::SccResult>)> = result
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.len() >= 2)
            .map(|(c, m)| {
                let v0 = *m
                    .iter()
                    .min_by_key(|&&s| Configuration::from_bits(s as u64, net.n()))
                    .expect("non-empty component");
                (v0, c as u32, result.clone())
            })
            .collect();
        comps.sort_by_key(|&(v0, _, _)| Configuration::from_bits(v0 as u64, net.n()));
        comps
    }

    /// The orbit that starts on `cycle[0]` and wraps the cycle for `t` steps.
    fn wrap_orbit(&self, cycle: &[Configuration], t: usize) -> PathAssignment {
        let p = cycle.len();
        let configs: Vec<Configuration> = (0..=t).map(|k| cycle[k % p]).collect();
        let schedule: Vec<ScheduleStep> = (0..t)
            .map(|k| match self.mode {
                UpdateMode::Synchronous => ScheduleStep::All,
                UpdateMode::Asynchronous => {
                    let (a, b) = (configs[k], configs[k + 1]);
                    ScheduleStep::Gene(GeneId((a.bits() ^ b.bits()).trailing_zeros() as usize))
                }
            })
            .collect();
        PathAssignment { configs, schedule }
    }

    /// Audit one orbit before processing: exclusion discipline plus orbit
    /// validity.
    fn examine(&mut self, path: &PathAssignment) {
        self.paths_examined += 1;
        if path.configs.iter().any(|c| self.excl.contains(c)) {
            self.exclusion_violations += 1;
        }
        debug_assert!(path.is_valid(self.net, self.mode), "engine built an invalid orbit");
    }

    /// Does any orbit of length `t` avoiding the exclusions still exist?
    fn exists_walk(&self, t: usize) -> bool {
        // A surviving fixed point stutters to any length.
        for bits in 0..self.n_states {
            if !self.excluded[bits] {
                let x = Configuration::from_bits(bits as u64, self.net.n());
                if self.net.is_fixed_point(&x) {
                    return true;
                }
            }
        }
        let net = self.net;
        let mode = self.mode;
        let excluded = &self.excluded;
        let result = scc::tarjan(
            self.n_states,
            |v, out| dense_successors(net, mode, v, out),
            |v| excluded[v as usize],
        );
        // Any remaining cycle supports walks of every length.
        if result.members.iter().any(|m| m.len() >= 2) {
            return true;
        }
        // Residual graph is a DAG; components arrive sinks-first, so the
        // longest-walk recurrence is already in dependency order.
        let mut longest = vec![0u64; result.members.len()];
        let mut succ = Vec::new();
        for (c, members) in result.members.iter().enumerate() {
            let mut best = 0u64;
            for &s in members {
                succ.clear();
                dense_successors(net, mode, s, &mut succ);
                for &w in &succ {
                    if excluded[w as usize] {
                        continue;
                    }
                    let d = result.comp[w as usize] as usize;
                    debug_assert_ne!(d, c, "cycle in a supposed DAG");
                    best = best.max(longest[d] + 1);
                }
            }
            if best >= t as u64 {
                return true;
            }
            longest[c] = best;
        }
        false
    }
}

/// Successors of a dense state index under `mode`, unfiltered.
fn dense_successors(net: &BooleanNetwork, mode: UpdateMode, v: u32, out: &mut Vec<u32>) {
    let x = Configuration::from_bits(v as u64, net.n());
    let mask = net.change_mask(&x);
    match mode {
        UpdateMode::Synchronous => {
            if mask != 0 {
                out.push((v as u64 ^ mask) as u32);
            }
        }
        UpdateMode::Asynchronous => {
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros();
                out.push((v as u64 ^ (1 << i)) as u32);
                m &= m - 1;
            }
        }
    }
}
