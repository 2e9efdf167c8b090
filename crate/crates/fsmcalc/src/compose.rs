//! Product constructions: composition, intersection, difference and
//! crossproduct.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::network::{Builder, Label, Network, StateId};
use crate::symbol::SymbolId;

/// Filter state for epsilon coordination during composition. Keeps the
/// construction from spinning out duplicated interleavings of one-sided
/// epsilon moves; the relation itself is unaffected by the choice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum EpsFilter {
    Free,
    UpperOnly,
    LowerOnly,
}

impl Network {
    /// Relation composition: `self`'s lower side matched against `other`'s
    /// upper side, with epsilon coordination.
    pub fn compose(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        let a = self.remove_epsilon();
        let bn = other.remove_epsilon();

        // index b's arcs by upper symbol, plus its upper-epsilon moves
        let mut by_upper: Vec<BTreeMap<SymbolId, Vec<(SymbolId, StateId)>>> =
            vec![BTreeMap::new(); bn.num_states()];
        let mut b_eps: Vec<Vec<(SymbolId, StateId)>> = vec![Vec::new(); bn.num_states()];
        for s in 0..bn.num_states() as StateId {
            for arc in bn.arcs(s) {
                if arc.label.upper.is_epsilon() {
                    b_eps[s as usize].push((arc.label.lower, arc.dest));
                } else {
                    by_upper[s as usize]
                        .entry(arc.label.upper)
                        .or_default()
                        .push((arc.label.lower, arc.dest));
                }
            }
        }

        let mut b = Builder::new(self.table());
        let mut index: HashMap<(StateId, StateId, EpsFilter), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let start_key = (a.start(), bn.start(), EpsFilter::Free);
        let start = b.add_state();
        index.insert(start_key, start);
        queue.push_back(start_key);
        b.set_final(start, a.is_final(a.start()) && bn.is_final(bn.start()));

        let touch = |b: &mut Builder,
                     index: &mut HashMap<(StateId, StateId, EpsFilter), StateId>,
                     queue: &mut VecDeque<(StateId, StateId, EpsFilter)>,
                     key: (StateId, StateId, EpsFilter)|
         -> StateId {
            if let Some(&s) = index.get(&key) {
                return s;
            }
            let s = b.add_state();
            b.set_final(s, a.is_final(key.0) && bn.is_final(key.1));
            index.insert(key, s);
            queue.push_back(key);
            s
        };

        while let Some(key) = queue.pop_front() {
            let (qa, qb, filter) = key;
            let src = index[&key];
            for arc in a.arcs(qa) {
                if arc.label.lower.is_epsilon() {
                    // upper-side-only move
                    if filter != EpsFilter::LowerOnly {
                        let dest = touch(
                            &mut b,
                            &mut index,
                            &mut queue,
                            (arc.dest, qb, EpsFilter::UpperOnly),
                        );
                        b.add_arc(src, Label::new(arc.label.upper, SymbolId::EPSILON), dest);
                    }
                    // combined move against a b arc that consumes nothing
                    if filter == EpsFilter::Free {
                        for &(lower, qb2) in &b_eps[qb as usize] {
                            let dest = touch(
                                &mut b,
                                &mut index,
                                &mut queue,
                                (arc.dest, qb2, EpsFilter::Free),
                            );
                            b.add_arc(src, Label::new(arc.label.upper, lower), dest);
                        }
                    }
                } else if let Some(matches) = by_upper[qb as usize].get(&arc.label.lower) {
                    for &(lower, qb2) in matches {
                        let dest = touch(
                            &mut b,
                            &mut index,
                            &mut queue,
                            (arc.dest, qb2, EpsFilter::Free),
                        );
                        b.add_arc(src, Label::new(arc.label.upper, lower), dest);
                    }
                }
            }
            if filter != EpsFilter::UpperOnly {
                for &(lower, qb2) in &b_eps[qb as usize] {
                    let dest = touch(
                        &mut b,
                        &mut index,
                        &mut queue,
                        (qa, qb2, EpsFilter::LowerOnly),
                    );
                    b.add_arc(src, Label::new(SymbolId::EPSILON, lower), dest);
                }
            }
        }
        b.set_start(start);
        Ok(b.build())
    }

    /// Set intersection of two automata.
    pub fn intersect(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        if !self.is_automaton() || !other.is_automaton() {
            return Err(Error::NotAnAutomaton { op: "intersection" });
        }
        let a = self.remove_epsilon();
        let bn = other.remove_epsilon();
        let mut by_sym: Vec<BTreeMap<SymbolId, Vec<StateId>>> =
            vec![BTreeMap::new(); bn.num_states()];
        for s in 0..bn.num_states() as StateId {
            for arc in bn.arcs(s) {
                by_sym[s as usize]
                    .entry(arc.label.upper)
                    .or_default()
                    .push(arc.dest);
            }
        }

        let mut b = Builder::new(self.table());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = b.add_state();
        index.insert((a.start(), bn.start()), start);
        b.set_final(start, a.is_final(a.start()) && bn.is_final(bn.start()));
        queue.push_back((a.start(), bn.start()));
        while let Some((qa, qb)) = queue.pop_front() {
            let src = index[&(qa, qb)];
            for arc in a.arcs(qa) {
                let Some(dests) = by_sym[qb as usize].get(&arc.label.upper) else {
                    continue;
                };
                for &qb2 in dests {
                    let key = (arc.dest, qb2);
                    let dest = *index.entry(key).or_insert_with(|| {
                        let s = b.add_state();
                        b.set_final(s, a.is_final(arc.dest) && bn.is_final(qb2));
                        queue.push_back(key);
                        s
                    });
                    b.add_arc(src, arc.label, dest);
                }
            }
        }
        b.set_start(start);
        Ok(b.build())
    }

    /// Set difference of two automata.
    pub fn subtract(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        if !self.is_automaton() || !other.is_automaton() {
            return Err(Error::NotAnAutomaton { op: "difference" });
        }
        let a = self.remove_epsilon();
        let bn = other.remove_epsilon().determinize();

        // delta for the determinized b; None plays the role of a sink
        let mut delta: Vec<BTreeMap<SymbolId, StateId>> = vec![BTreeMap::new(); bn.num_states()];
        for s in 0..bn.num_states() as StateId {
            for arc in bn.arcs(s) {
                delta[s as usize].insert(arc.label.upper, arc.dest);
            }
        }

        let mut b = Builder::new(self.table());
        let mut index: HashMap<(StateId, Option<StateId>), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let start_key = (a.start(), Some(bn.start()));
        let start = b.add_state();
        index.insert(start_key, start);
        b.set_final(start, a.is_final(a.start()) && !bn.is_final(bn.start()));
        queue.push_back(start_key);
        while let Some((qa, qb)) = queue.pop_front() {
            let src = index[&(qa, qb)];
            for arc in a.arcs(qa) {
                let qb2 = qb.and_then(|s| delta[s as usize].get(&arc.label.upper).copied());
                let key = (arc.dest, qb2);
                let dest = *index.entry(key).or_insert_with(|| {
                    let s = b.add_state();
                    let excluded = qb2.map(|q| bn.is_final(q)).unwrap_or(false);
                    b.set_final(s, a.is_final(arc.dest) && !excluded);
                    queue.push_back(key);
                    s
                });
                b.add_arc(src, arc.label, dest);
            }
        }
        b.set_start(start);
        Ok(b.build())
    }

    /// Relation pairing every string of `self` with every string of `other`;
    /// a length mismatch is padded with trailing epsilons.
    pub fn crossproduct(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        if !self.is_automaton() || !other.is_automaton() {
            return Err(Error::NotAnAutomaton { op: "crossproduct" });
        }
        let a = self.remove_epsilon();
        let bn = other.remove_epsilon();

        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Mode {
            Both,
            UpperTail,
            LowerTail,
        }

        let mut b = Builder::new(self.table());
        let mut index: HashMap<(StateId, StateId, Mode), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let start_key = (a.start(), bn.start(), Mode::Both);
        let start = b.add_state();
        index.insert(start_key, start);
        b.set_final(start, a.is_final(a.start()) && bn.is_final(bn.start()));
        queue.push_back(start_key);

        while let Some(key) = queue.pop_front() {
            let (qa, qb, mode) = key;
            let src = index[&key];
            let push = |b: &mut Builder,
                        index: &mut HashMap<(StateId, StateId, Mode), StateId>,
                        queue: &mut VecDeque<(StateId, StateId, Mode)>,
                        label: Label,
                        key: (StateId, StateId, Mode)| {
                let dest = *index.entry(key).or_insert_with(|| {
                    let s = b.add_state();
                    b.set_final(s, a.is_final(key.0) && bn.is_final(key.1));
                    queue.push_back(key);
                    s
                });
                b.add_arc(src, label, dest);
            };
            match mode {
                Mode::Both => {
                    for arc_a in a.arcs(qa) {
                        for arc_b in bn.arcs(qb) {
                            push(
                                &mut b,
                                &mut index,
                                &mut queue,
                                Label::new(arc_a.label.upper, arc_b.label.upper),
                                (arc_a.dest, arc_b.dest, Mode::Both),
                            );
                        }
                    }
                    if bn.is_final(qb) {
                        for arc_a in a.arcs(qa) {
                            push(
                                &mut b,
                                &mut index,
                                &mut queue,
                                Label::new(arc_a.label.upper, SymbolId::EPSILON),
                                (arc_a.dest, qb, Mode::UpperTail),
                            );
                        }
                    }
                    if a.is_final(qa) {
                        for arc_b in bn.arcs(qb) {
                            push(
                                &mut b,
                                &mut index,
                                &mut queue,
                                Label::new(SymbolId::EPSILON, arc_b.label.upper),
                                (qa, arc_b.dest, Mode::LowerTail),
                            );
                        }
                    }
                }
                Mode::UpperTail => {
                    for arc_a in a.arcs(qa) {
                        push(
                            &mut b,
                            &mut index,
                            &mut queue,
                            Label::new(arc_a.label.upper, SymbolId::EPSILON),
                            (arc_a.dest, qb, Mode::UpperTail),
                        );
                    }
                }
                Mode::LowerTail => {
                    for arc_b in bn.arcs(qb) {
                        push(
                            &mut b,
                            &mut index,
                            &mut queue,
                            Label::new(SymbolId::EPSILON, arc_b.label.upper),
                            (qa, arc_b.dest, Mode::LowerTail),
                        );
                    }
                }
            }
        }
        b.set_start(start);
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{EnumSide, Side};
    use crate::symbol::SymbolTable;
    use std::collections::BTreeSet;

    fn chars(t: &std::sync::Arc<SymbolTable>, s: &str) -> Vec<SymbolId> {
        s.chars().map(|c| t.intern(&c.to_string())).collect()
    }

    fn word_net(t: &std::sync::Arc<SymbolTable>, words: &[&str]) -> Network {
        let mut net = Network::empty(t);
        for w in words {
            net = net
                .union(&Network::string_automaton(t, &chars(t, w)))
                .unwrap();
        }
        net
    }

    fn lower_words(net: &Network, n: usize) -> BTreeSet<String> {
        net.enumerate_words(n, EnumSide::Lower)
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn intersect_reversal_closed_set() {
        let t = SymbolTable::new();
        let lex = word_net(&t, &["dog", "god", "madam"]);
        let both = lex.intersect(&lex.reverse()).unwrap();
        // every reversal is present, so nothing is lost
        assert_eq!(lower_words(&both, 10), set(&["dog", "god", "madam"]));
    }

    #[test]
    fn intersect_disjoint_is_empty() {
        let t = SymbolTable::new();
        let a = word_net(&t, &["a"]);
        let b = word_net(&t, &["b"]);
        assert!(lower_words(&a.intersect(&b).unwrap(), 5).is_empty());
    }

    #[test]
    fn intersect_dog_with_its_reverse_is_empty() {
        let t = SymbolTable::new();
        let dog = word_net(&t, &["dog"]);
        let inter = dog.intersect(&dog.reverse()).unwrap();
        assert!(lower_words(&inter, 10).is_empty());
    }

    #[test]
    fn intersect_rejects_transducers() {
        let t = SymbolTable::new();
        let relation = Network::atom(&t, t.intern("a"), t.intern("b"));
        let auto = word_net(&t, &["a"]);
        assert!(matches!(
            relation.intersect(&auto),
            Err(Error::NotAnAutomaton { .. })
        ));
    }

    #[test]
    fn subtract_examples() {
        let t = SymbolTable::new();
        let ab = word_net(&t, &["a", "b"]);
        let b = word_net(&t, &["b"]);
        assert_eq!(lower_words(&ab.subtract(&b).unwrap(), 5), set(&["a"]));
        assert!(lower_words(&ab.subtract(&ab).unwrap(), 5).is_empty());
    }

    #[test]
    fn subtract_marker_from_alphabet() {
        // any-symbol over sigma {d, o, g, XX} minus {XX}
        let t = SymbolTable::new();
        let any = word_net(&t, &["d", "o", "g", "XX"]);
        let marker = word_net(&t, &["XX"]);
        assert_eq!(
            lower_words(&any.subtract(&marker).unwrap(), 5),
            set(&["d", "o", "g"])
        );
    }

    #[test]
    fn crossproduct_marker_to_sequence() {
        let t = SymbolTable::new();
        let xx = word_net(&t, &["XX"]);
        let seq = Network::string_automaton(&t, &[t.intern("&"), t.intern("[")]);
        let rel = xx.crossproduct(&seq).unwrap();
        assert_eq!(rel.enumerate_words(5, EnumSide::Upper), set(&["XX"]));
        assert_eq!(rel.enumerate_words(5, EnumSide::Lower), set(&["&["]));
    }

    #[test]
    fn crossproduct_of_empty_strings() {
        let t = SymbolTable::new();
        let eps = Network::epsilon_net(&t);
        let rel = eps.crossproduct(&eps).unwrap();
        assert_eq!(rel.enumerate_words(5, EnumSide::Pairs), set(&[""]));
        assert!(rel.is_automaton());
    }

    #[test]
    fn crossproduct_pads_at_the_end() {
        let t = SymbolTable::new();
        let ab = Network::string_automaton(&t, &chars(&t, "ab"));
        let xyz = Network::string_automaton(&t, &chars(&t, "xyz"));
        let rel = ab.crossproduct(&xyz).unwrap();
        assert_eq!(
            rel.enumerate_words(6, EnumSide::Pairs),
            set(&["a:x b:y @0@:z"])
        );
    }

    #[test]
    fn compose_identity_is_intersection() {
        let t = SymbolTable::new();
        let l = word_net(&t, &["ab", "cd"]);
        let m = word_net(&t, &["ab", "ef"]);
        let composed = l.compose(&m).unwrap();
        let intersected = l.intersect(&m).unwrap();
        assert!(composed.equivalent(&intersected));
    }

    #[test]
    fn compose_chains_pairs() {
        let t = SymbolTable::new();
        let ab = Network::atom(&t, t.intern("a"), t.intern("b"));
        let bc = Network::atom(&t, t.intern("b"), t.intern("c"));
        let ac = ab.compose(&bc).unwrap();
        assert_eq!(ac.enumerate_words(5, EnumSide::Pairs), set(&["a:c"]));
    }

    #[test]
    fn compose_coordinates_one_sided_epsilons() {
        let t = SymbolTable::new();
        // upper "a" maps to nothing; nothing maps to "b"
        let upper = Network::atom(&t, t.intern("a"), SymbolId::EPSILON);
        let lower = Network::atom(&t, SymbolId::EPSILON, t.intern("b"));
        let rel = upper.compose(&lower).unwrap();
        let pairs = rel.bounded_relation(6);
        assert!(pairs.contains(&("a".to_string(), "b".to_string())));
        assert_eq!(pairs.len(), 1);
    }

    #[test]
    fn projections_of_crossproduct() {
        let t = SymbolTable::new();
        let a = word_net(&t, &["x", "yy"]);
        let b = word_net(&t, &["zzz"]);
        let rel = a.crossproduct(&b).unwrap();
        assert!(rel.project(Side::Upper).equivalent(&a));
        assert!(rel.project(Side::Lower).equivalent(&b));
    }
}
