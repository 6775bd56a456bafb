//! Serializable run reports.
//!
//! The JSON form is the machine interface: deserializing the emitted JSON
//! reproduces the [`RunReport`] exactly. The text form is derived from the
//! same data, so the two views can never disagree about what was found.

use bnet::{Attractor, Configuration};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Network name (the input file stem).
    pub network: String,
    /// Gene count.
    pub genes: usize,
    pub mode: String,
    pub engine: String,
    pub attractors: Vec<AttractorReport>,
    /// Cycles that closed but failed the stability check (diagnostics).
    pub unstable_cycles: Vec<Vec<String>>,
    /// Wall-clock seconds for the run itself.
    pub seconds: f64,
    /// Final path length of the bounded engine; absent for the explicit one.
    pub final_length: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorReport {
    pub kind: String,
    pub period: usize,
    pub states: Vec<String>,
}

impl From<&Attractor> for AttractorReport {
    fn from(a: &Attractor) -> Self {
        AttractorReport {
            kind: a.kind().as_str().to_string(),
            period: a.period(),
            states: a.states().iter().map(Configuration::to_string).collect(),
        }
    }
}

pub fn cycle_strings(cycle: &[Configuration]) -> Vec<String> {
    cycle.iter().map(Configuration::to_string).collect()
}

impl RunReport {
    /// Human-readable rendering of the same data as the JSON form.
    pub fn render_text(&self, show_unstable: bool) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "network {} ({} genes), mode {}, engine {}",
            self.network, self.genes, self.mode, self.engine
        );
        for a in &self.attractors {
            let _ = writeln!(out, "  {}[{}]  period {}", a.kind, a.states.join(" "), a.period);
        }
        if self.attractors.is_empty() {
            let _ = writeln!(out, "  (no fixed points or stable cycles)");
        }
        if show_unstable && !self.unstable_cycles.is_empty() {
            let _ = writeln!(out, "unstable cycles seen:");
            for c in &self.unstable_cycles {
                let _ = writeln!(out, "  [{}]", c.join(" "));
            }
        }
        let plural = if self.attractors.len() == 1 { "" } else { "s" };
        let _ = write!(
            out,
            "{} attractor{plural} in {:.3} s",
            self.attractors.len(),
            self.seconds
        );
        if !show_unstable && !self.unstable_cycles.is_empty() {
            let _ = write!(out, " (+{} unstable cycles seen)", self.unstable_cycles.len());
        }
        if let Some(len) = self.final_length {
            let _ = write!(out, ", final length {len}");
        }
        out.push('\n');
        out
    }
}
