//! Seeded random network generation for tests and benchmarks.
//!
//! Everything here is deterministic in the seed, so a corpus can be named by
//! `(seed, genes, max_terms, max_literals)` alone and regenerated anywhere.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dnf::{Dnf, Literal, Term};
use crate::network::BooleanNetwork;
use crate::state::GeneId;

/// A random network with genes `g0..g{genes-1}`.
///
/// Each local function gets `1..=max_terms` terms; each term conjoins
/// `1..=max_literals` distinct genes with independently random polarity,
/// so no term is unsatisfiable.
pub fn random_network(
    seed: u64,
    genes: usize,
    max_terms: usize,
    max_literals: usize,
) -> BooleanNetwork {
    assert!((1..=64).contains(&genes), "gene count out of range");
    assert!(max_terms >= 1 && max_literals >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..genes).map(|i| format!("g{i}")).collect();
    let functions: Vec<Dnf> = (0..genes)
        .map(|_| random_dnf(&mut rng, genes, max_terms, max_literals))
        .collect();
    BooleanNetwork::new(names, functions).expect("generated networks are structurally valid")
}

/// A random local function over `genes` genes; see [`random_network`].
pub fn random_dnf(
    rng: &mut impl Rng,
    genes: usize,
    max_terms: usize,
    max_literals: usize,
) -> Dnf {
    let n_terms = rng.gen_range(1..=max_terms);
    Dnf::new((0..n_terms).map(|_| random_term(rng, genes, max_literals)).collect())
}

fn random_term(rng: &mut impl Rng, genes: usize, max_literals: usize) -> Term {
    let k = rng.gen_range(1..=max_literals.min(genes));
    // Partial Fisher–Yates: the first k slots become a uniform k-subset.
    let mut pool: Vec<usize> = (0..genes).collect();
    let literals = (0..k)
        .map(|j| {
            let pick = rng.gen_range(j..pool.len());
            pool.swap(j, pick);
            Literal { gene: GeneId(pool[j]), positive: rng.gen_bool(0.5) }
        })
        .collect();
    Term::new(literals)
}
