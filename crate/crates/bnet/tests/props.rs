//! Property tests for the algebraic laws the rest of the system leans on.

use std::collections::HashMap;

use proptest::prelude::*;

use bnet::{
    build_transition_graph, enumerate_paths, find_all_attractors, parse_network, random_network,
    Configuration, Dnf, EngineConfig, ExclusionSet, ExprAst, GeneId, Literal, Term, UpdateMode,
};

const VARS: [&str; 5] = ["a", "b", "c", "d", "e"];

fn var_table() -> HashMap<String, GeneId> {
    VARS.iter().enumerate().map(|(i, v)| (v.to_string(), GeneId(i))).collect()
}

fn arb_expr() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![
        prop::sample::select(&VARS[..]).prop_map(|v| ExprAst::Var(v.to_string())),
        any::<bool>().prop_map(ExprAst::Const),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| ExprAst::Not(Box::new(e))),
            prop::collection::vec(inner.clone(), 1..4).prop_map(ExprAst::And),
            prop::collection::vec(inner, 1..4).prop_map(ExprAst::Or),
        ]
    })
}

fn arb_dnf(genes: usize) -> impl Strategy<Value = Dnf> {
    prop::collection::vec(prop::collection::vec((0..genes, any::<bool>()), 1..=3), 0..=4)
        .prop_map(|terms| {
            Dnf::new(
                terms
                    .into_iter()
                    .map(|lits| {
                        Term::new(
                            lits.into_iter()
                                .map(|(g, pos)| {
                                    let g = GeneId(g);
                                    if pos { Literal::positive(g) } else { Literal::negative(g) }
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
}

proptest! {
    /// Negation is a pointwise complement on every configuration.
    #[test]
    fn dnf_negation_complements(genes in 1..=6usize, f_src in arb_dnf(6)) {
        let f = f_src;
        prop_assume!(f.max_gene().is_none_or(|g| g.0 < genes));
        let neg = f.negate().unwrap();
        for x in Configuration::all(genes) {
            prop_assert_eq!(neg.eval(&x), !f.eval(&x));
        }
    }

    /// Double negation preserves the function (not necessarily the syntax).
    #[test]
    fn dnf_double_negation_is_identity(genes in 1..=5usize, f_src in arb_dnf(5)) {
        let f = f_src;
        prop_assume!(f.max_gene().is_none_or(|g| g.0 < genes));
        let back = f.negate().unwrap().negate().unwrap();
        for x in Configuration::all(genes) {
            prop_assert_eq!(back.eval(&x), f.eval(&x));
        }
    }

    /// DNF conversion preserves the semantics of the expression tree.
    #[test]
    fn to_dnf_preserves_semantics(e in arb_expr()) {
        let table = var_table();
        let f = e.to_dnf(&table).unwrap();
        for x in Configuration::all(VARS.len()) {
            prop_assert_eq!(f.eval(&x), e.eval(&table, &x).unwrap());
        }
    }

    /// Asynchronous successors differ in exactly one gene, and that gene is
    /// one whose local function disagrees with the current value.
    #[test]
    fn async_successors_flip_one_changing_gene(seed in any::<u64>(), genes in 2..=6usize) {
        let net = random_network(seed, genes, 4, 3);
        for x in Configuration::all(genes) {
            let changing = net.changing_genes(&x);
            let succs = net.async_successors(&x);
            prop_assert_eq!(succs.len(), changing.len());
            for (g, y) in changing.iter().zip(&succs) {
                prop_assert_eq!((x.bits() ^ y.bits()).count_ones(), 1);
                prop_assert_eq!(&x.flipped(*g), y);
            }
            prop_assert_eq!(changing.is_empty(), net.is_fixed_point(&x));
        }
    }

    /// Text rendering of a network parses back to the same network.
    #[test]
    fn format_parse_round_trip(seed in any::<u64>(), genes in 1..=8usize) {
        let net = random_network(seed, genes, 4, 3);
        prop_assert_eq!(parse_network(&net.format()).unwrap(), net);
    }

    /// Every streamed orbit is a valid trajectory and avoids the exclusion
    /// set at every index.
    #[test]
    fn streamed_orbits_are_valid_and_respect_exclusions(
        seed in any::<u64>(),
        genes in 2..=4usize,
        t in 1..=3usize,
        sync in any::<bool>(),
        excl_mask in any::<u16>(),
    ) {
        let net = random_network(seed, genes, 3, 2);
        let mode = if sync { UpdateMode::Synchronous } else { UpdateMode::Asynchronous };
        let mut excl = ExclusionSet::new();
        for bits in 0..(1u64 << genes) {
            if excl_mask & (1 << bits) != 0 {
                excl.insert(Configuration::from_bits(bits, genes));
            }
        }
        for path in enumerate_paths(&net, mode, t, &excl) {
            prop_assert!(path.is_valid(&net, mode));
            prop_assert!(path.configs.iter().all(|c| !excl.contains(c)));
        }
    }

    /// Synchronous dynamics are deterministic, so any cycle that closes is
    /// stable: a synchronous run never reports unstable-cycle diagnostics.
    #[test]
    fn synchronous_runs_see_no_unstable_cycles(seed in any::<u64>(), genes in 2..=6usize) {
        let net = random_network(seed, genes, 4, 3);
        let run = find_all_attractors(&net, &EngineConfig::new(UpdateMode::Synchronous)).unwrap();
        prop_assert!(run.attractors.unstable_cycles_seen.is_empty());
        prop_assert_eq!(run.exclusion_violations, 0);
    }

    /// Every synchronous terminal component of size ≥ 2 passes the stability
    /// check when walked in successor order.
    #[test]
    fn synchronous_terminal_components_are_stable_cycles(seed in any::<u64>(), genes in 2..=6usize) {
        let net = random_network(seed, genes, 4, 3);
        let tg = build_transition_graph(&net, UpdateMode::Synchronous).unwrap();
        for a in tg.classify_attractors() {
            if a.period() >= 2 {
                let mut walk = vec![a.states()[0]];
                while walk.len() < a.period() {
                    walk.push(net.sync_step(walk.last().unwrap()));
                }
                prop_assert_eq!(
                    bnet::is_stable_cycle(&net, &walk, UpdateMode::Synchronous),
                    Ok(true)
                );
            }
        }
    }
}
