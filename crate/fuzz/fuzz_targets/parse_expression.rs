//! Feed arbitrary bytes to the expression tokenizer and parser. Whenever a
//! parse succeeds and the expression is small enough to check exhaustively,
//! its disjunctive normal form must agree with the tree on every input.

#![no_main]

use std::collections::HashMap;

use bnet::state::{Configuration, GeneId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(tokens) = bnet::parse::tokenize(text, 1) else { return };
    let Ok(expr) = bnet::parse::parse_expression(&tokens, 1) else { return };

    let vars = expr.variables();
    if vars.len() > 8 {
        return;
    }
    let width = vars.len().max(1);
    let genes: HashMap<String, GeneId> =
        vars.into_iter().enumerate().map(|(i, v)| (v, GeneId(i))).collect();

    if let Ok(dnf) = expr.to_dnf_with_cap(&genes, 512) {
        for x in Configuration::all(width) {
            let direct = expr.eval(&genes, &x).expect("all variables are mapped");
            assert_eq!(dnf.eval(&x), direct, "DNF disagrees with the tree on {x}");
        }
    }
});
