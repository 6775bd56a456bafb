//! Boolean gene-regulatory networks: parsing, update semantics, and
//! attractor discovery.
//!
//! A network assigns every gene a local update function in disjunctive
//! normal form. Under the **synchronous** mode all genes update at once;
//! under the **asynchronous** mode one changing gene flips per step. The
//! long-run behaviours — fixed points and stable cycles — can be found two
//! ways:
//!
//! * [`engine::find_all_attractors`] searches bounded-length orbits with
//!   exclusion constraints and length doubling, never materializing the
//!   transition graph.
//! * [`oracle::build_transition_graph`] builds the full graph explicitly
//!   and classifies its terminal strongly connected components; it also
//!   labels complex attractors and serves as ground truth in tests.
//!
//! ```
//! use bnet::{find_all_attractors, parse_network, EngineConfig, UpdateMode};
//!
//! let net = parse_network("targets, factors\nv1, v2\nv2, v1 & !v2")?;
//! let run = find_all_attractors(&net, &EngineConfig::new(UpdateMode::Synchronous))?;
//! let rendered: Vec<String> =
//!     run.attractors.attractors.iter().map(|a| a.to_string()).collect();
//! assert_eq!(rendered, ["fixed_point[00]", "stable_cycle[01 10]"]);
//! # Ok::<(), bnet::Error>(())
//! ```

pub mod attractor;
pub mod dnf;
pub mod dot;
pub mod engine;
mod error;
pub mod expr;
pub mod interaction;
pub mod network;
pub mod oracle;
pub mod parse;
pub mod random;
mod scc;
pub mod state;

pub use attractor::{canonical_rotation, Attractor, AttractorKind, AttractorSet};
pub use dnf::{Dnf, Literal, Term, DEFAULT_TERM_CAP};
pub use engine::{
    check_stability, detect_repeat, enumerate_paths, exclude_attractor, extract_cycle,
    find_all_attractors, EngineConfig, EngineOutcome, EngineRun, ExclusionSet, PathAssignment,
    ScheduleStep, DEFAULT_LENGTH_CAP, ENGINE_GENE_LIMIT,
};
pub use error::{Error, Result};
pub use expr::ExprAst;
pub use interaction::{derive_interaction_graph, InteractionGraph, Sign, SignedArc};
pub use network::{BooleanNetwork, Finding, Severity, UpdateMode, ValidationReport};
pub use oracle::{build_transition_graph, is_stable_cycle, TransitionGraph};
pub use parse::{parse_network, NetworkFile, ParseError};
pub use random::random_network;
pub use state::{Configuration, GeneId, MAX_GENES};
