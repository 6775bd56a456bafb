//! Graphviz export of transition graphs.

use std::fmt::Write;

use crate::attractor::{Attractor, AttractorKind};
use crate::oracle::TransitionGraph;

/// Render the transition graph as DOT. States are binary-string nodes;
/// attractor states are filled, one color per attractor kind.
pub fn transition_graph_dot(tg: &TransitionGraph, attractors: &[Attractor], name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph transition_graph {{");
    let _ = writeln!(out, "  label=\"{} ({} mode)\";", escape(name), tg.mode());
    let _ = writeln!(out, "  labelloc=top;");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for state in 0..tg.state_count() as u32 {
        let label = tg.configuration(state).to_string();
        match attractor_kind_of(attractors, &tg.configuration(state)) {
            Some(kind) => {
                let _ = writeln!(
                    out,
                    "  \"{label}\" [style=filled, fillcolor=\"{}\"];",
                    fill_color(kind)
                );
            }
            None => {
                let _ = writeln!(out, "  \"{label}\";");
            }
        }
    }
    for state in 0..tg.state_count() as u32 {
        let from = tg.configuration(state).to_string();
        for &succ in tg.successors(state) {
            let _ = writeln!(out, "  \"{from}\" -> \"{}\";", tg.configuration(succ));
        }
    }
    out.push_str("}\n");
    out
}

fn attractor_kind_of(
    attractors: &[Attractor],
    state: &crate::state::Configuration,
) -> Option<AttractorKind> {
    attractors
        .iter()
        .find(|a| a.contains(state))
        .map(Attractor::kind)
}

fn fill_color(kind: AttractorKind) -> &'static str {
    match kind {
        AttractorKind::FixedPoint => "palegreen",
        AttractorKind::StableCycle => "lightgoldenrod1",
        AttractorKind::Complex => "lightpink",
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
