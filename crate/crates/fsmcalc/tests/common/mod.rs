//! Helpers shared by the integration suites: a string-level merge oracle
//! independent of the network construction, and seeded random networks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc as Shared;

use fsmcalc::{Network, StateId, SymbolTable};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Character-level classes for the oracle side of merge tests.
pub type OracleClasses = BTreeMap<char, BTreeSet<char>>;

/// Left-to-right template scan: a filler character is consumed exactly when
/// the current template character is a class symbol matching it, everything
/// else is copied; accepted only when both strings are exhausted.
pub fn merge_oracle(template: &str, filler: &str, classes: &OracleClasses) -> Option<String> {
    let filler: Vec<char> = filler.chars().collect();
    let mut out = String::new();
    let mut next = 0usize;
    for t in template.chars() {
        match classes.get(&t) {
            Some(members) if next < filler.len() && members.contains(&filler[next]) => {
                out.push(filler[next]);
                next += 1;
            }
            _ => out.push(t),
        }
    }
    (next == filler.len()).then_some(out)
}

/// The oracle's output set over all bounded string pairs of two languages.
pub fn merge_oracle_set(
    templates: &BTreeSet<String>,
    fillers: &BTreeSet<String>,
    classes: &OracleClasses,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in templates {
        for f in fillers {
            if let Some(m) = merge_oracle(t, f, classes) {
                out.insert(m);
            }
        }
    }
    out
}

/// A reproducible random network over a symbol pool. Roughly one to two
/// arcs per state; about a third of the states are final.
pub fn random_network(
    rng: &mut ChaCha8Rng,
    table: &Shared<SymbolTable>,
    max_states: usize,
    pool: &[&str],
    transducer: bool,
) -> Network {
    let num_states = rng.gen_range(1..=max_states);
    let num_arcs = rng.gen_range(0..=2 * num_states);
    let mut arcs = Vec::new();
    let pick = |rng: &mut ChaCha8Rng| -> String {
        // index 0 plays the role of epsilon now and then
        if rng.gen_ratio(1, 5) {
            String::new()
        } else {
            pool[rng.gen_range(0..pool.len())].to_string()
        }
    };
    let mut stored: Vec<(String, String, StateId, StateId)> = Vec::new();
    for _ in 0..num_arcs {
        let src = rng.gen_range(0..num_states) as StateId;
        let dst = rng.gen_range(0..num_states) as StateId;
        let upper = pick(rng);
        let lower = if transducer { pick(rng) } else { upper.clone() };
        stored.push((upper, lower, src, dst));
    }
    for (upper, lower, src, dst) in &stored {
        arcs.push((*src, upper.as_str(), lower.as_str(), *dst));
    }
    let mut finals = Vec::new();
    for s in 0..num_states as StateId {
        if rng.gen_ratio(1, 3) {
            finals.push(s);
        }
    }
    if finals.is_empty() {
        finals.push(rng.gen_range(0..num_states) as StateId);
    }
    Network::from_parts(table, num_states, 0, &arcs, &finals).expect("states in range")
}

/// Random single string over a pool.
pub fn random_string(rng: &mut ChaCha8Rng, pool: &[char], max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| pool[rng.gen_range(0..pool.len())])
        .collect()
}

/// Identity automaton for one string of single-character symbols.
pub fn word_net(table: &Shared<SymbolTable>, word: &str) -> Network {
    let syms: Vec<_> = word.chars().map(|c| table.intern(&c.to_string())).collect();
    Network::string_automaton(table, &syms)
}
