//! A deliberately literal bounded search used to cross-check the production
//! engine on tiny networks.
//!
//! It consumes the orbit stream directly: scan for the first orbit whose
//! last state repeats, process that single finding, then restart the stream
//! (the exclusions changed). The production engine realizes the same
//! contract constructively; on the same network both must report the same
//! attractors.

use bnet::{
    canonical_rotation, check_stability, detect_repeat, enumerate_paths, exclude_attractor,
    extract_cycle, Attractor, AttractorSet, BooleanNetwork, EngineOutcome, ExclusionSet,
    PathAssignment, UpdateMode,
};

pub struct ReferenceRun {
    pub attractors: AttractorSet,
    pub final_length: usize,
    pub outcome: EngineOutcome,
}

pub fn reference_find_all(
    net: &BooleanNetwork,
    mode: UpdateMode,
    length_cap: usize,
) -> ReferenceRun {
    let mut excl = ExclusionSet::new();
    let mut set = AttractorSet::default();
    let mut t = 1usize;
    let outcome = loop {
        loop {
            let finding: Option<(PathAssignment, usize)> = enumerate_paths(net, mode, t, &excl)
                .find_map(|p| detect_repeat(&p).map(|i| (p, i)));
            let Some((path, i)) = finding else { break };
            let states = if i == path.len() - 1 {
                vec![path.configs[path.len()]]
            } else {
                extract_cycle(&path, i)
            };
            let stable = check_stability(net, &states, mode).expect("extracted cycles are cycles");
            if states.len() == 1 {
                let a = Attractor::fixed_point(states[0]);
                exclude_attractor(&mut excl, &a).expect("no attractor is found twice");
                set.attractors.push(a);
            } else if stable {
                let a = Attractor::stable_cycle(states);
                exclude_attractor(&mut excl, &a).expect("no attractor is found twice");
                set.attractors.push(a);
            } else {
                let canon = canonical_rotation(states);
                for s in &canon {
                    excl.insert(*s);
                }
                set.unstable_cycles_seen.push(canon);
            }
        }
        if enumerate_paths(net, mode, t, &excl).next().is_none() {
            break EngineOutcome::Exhausted;
        }
        if t >= length_cap {
            break EngineOutcome::LengthCapReached;
        }
        t *= 2;
    };
    set.sort();
    ReferenceRun { attractors: set, final_length: t, outcome }
}
