//! Iterative Tarjan SCC decomposition over an implicit graph.
//!
//! The graph is given as a successor closure over dense `u32` state indices,
//! plus a skip predicate for states removed from consideration. Components
//! come out in reverse topological order: a component is emitted only after
//! every component it can reach.

pub(crate) const UNVISITED: u32 = u32::MAX;

/// Result of a decomposition over `n_states` dense indices.
pub(crate) struct SccResult {
    /// Component id per state (`UNVISITED` for skipped states).
    pub comp: Vec<u32>,
    /// States of each component; component ids index this list, and the list
    /// order is the Tarjan emission (reverse topological) order.
    pub members: Vec<Vec<u32>>,
}

struct Frame {
    v: u32,
    succ_at: usize,
}

/// Run Tarjan over all non-skipped states.
pub(crate) fn tarjan<S, K>(n_states: usize, mut successors: S, skip: K) -> SccResult
where
    S: FnMut(u32, &mut Vec<u32>),
    K: Fn(u32) -> bool,
{
    let mut index = vec![UNVISITED; n_states];
    let mut lowlink = vec![0u32; n_states];
    let mut on_stack = vec![false; n_states];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<Frame> = Vec::new();
    let mut succ_buf: Vec<Vec<u32>> = Vec::new();
    let mut counter: u32 = 0;
    let mut result = SccResult { comp: vec![UNVISITED; n_states], members: Vec::new() };

    for root in 0..n_states as u32 {
        if index[root as usize] != UNVISITED || skip(root) {
            continue;
        }
        push_state(root, &mut counter, &mut index, &mut lowlink, &mut on_stack, &mut stack);
        frames.push(Frame { v: root, succ_at: 0 });
        succ_buf.push(fetch(&mut successors, root, &skip));

        while !frames.is_empty() {
            let fi = frames.len() - 1;
            let v = frames[fi].v;
            if frames[fi].succ_at < succ_buf[fi].len() {
                let w = succ_buf[fi][frames[fi].succ_at];
                frames[fi].succ_at += 1;
                if index[w as usize] == UNVISITED {
                    push_state(w, &mut counter, &mut index, &mut lowlink, &mut on_stack, &mut stack);
                    frames.push(Frame { v: w, succ_at: 0 });
                    succ_buf.push(fetch(&mut successors, w, &skip));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                frames.pop();
                succ_buf.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.v as usize;
                    lowlink[p] = lowlink[p].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    let id = result.members.len() as u32;
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        result.comp[w as usize] = id;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    result.members.push(comp);
                }
            }
        }
    }
    result
}

/// Shortest cycle through `v0`, as `[v0, ..., u]` with an edge `u -> v0`.
///
/// BFS over `successors` restricted to `in_comp`; `None` when no cycle
/// through `v0` exists. Deterministic: ties break by BFS insertion order.
pub(crate) fn shortest_cycle_through<F, S>(
    v0: u32,
    in_comp: F,
    successors: &mut S,
) -> Option<Vec<u32>>
where
    F: Fn(u32) -> bool,
    S: FnMut(u32, &mut Vec<u32>),
{
    use std::collections::{HashMap, VecDeque};

    let mut parent: HashMap<u32, u32> = HashMap::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(v0);
    let mut succ = Vec::new();
    while let Some(u) = queue.pop_front() {
        succ.clear();
        successors(u, &mut succ);
        succ.retain(|&w| in_comp(w));
        if succ.contains(&v0) {
            let mut cycle = vec![u];
            let mut at = u;
            while at != v0 {
                at = parent[&at];
                cycle.push(at);
            }
            cycle.reverse();
            return Some(cycle);
        }
        for &w in &succ {
            if w != v0 && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}

fn push_state(
    v: u32,
    counter: &mut u32,
    index: &mut [u32],
    lowlink: &mut [u32],
    on_stack: &mut [bool],
    stack: &mut Vec<u32>,
) {
    index[v as usize] = *counter;
    lowlink[v as usize] = *counter;
    *counter += 1;
    on_stack[v as usize] = true;
    stack.push(v);
}

fn fetch<S, K>(successors: &mut S, v: u32, skip: &K) -> Vec<u32>
where
    S: FnMut(u32, &mut Vec<u32>),
    K: Fn(u32) -> bool,
{
    let mut out = Vec::new();
    successors(v, &mut out);
    out.retain(|&w| !skip(w));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, edges: &[(u32, u32)]) -> SccResult {
        tarjan(
            n,
            |v, out| {
                out.extend(edges.iter().filter(|&&(a, _)| a == v).map(|&(_, b)| b))
            },
            |_| false,
        )
    }

    #[test]
    fn two_cycles_and_a_bridge() {
        // 0 <-> 1 -> 2 <-> 3
        let r = run(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]);
        assert_eq!(r.members.len(), 2);
        let mut sizes: Vec<usize> = r.members.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2]);
        assert_eq!(r.comp[0], r.comp[1]);
        assert_eq!(r.comp[2], r.comp[3]);
        assert_ne!(r.comp[0], r.comp[2]);
        // {2,3} is reachable from {0,1}, so it must be emitted first.
        assert!(r.comp[2] < r.comp[0]);
    }

    #[test]
    fn skip_removes_states_entirely() {
        let r = tarjan(
            3,
            |v, out| {
                if v == 0 {
                    out.push(1);
                }
                if v == 1 {
                    out.push(0);
                }
            },
            |v| v == 1,
        );
        assert_eq!(r.comp[1], UNVISITED);
        // Without state 1 the remaining graph is two singletons.
        assert_eq!(r.members.len(), 2);
    }

    #[test]
    fn emission_order_is_reverse_topological() {
        // Chain of singletons 0 -> 1 -> 2: sink 2 first.
        let r = run(3, &[(0, 1), (1, 2)]);
        assert_eq!(r.members, vec![vec![2], vec![1], vec![0]]);
    }
}
