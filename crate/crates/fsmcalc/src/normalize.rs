//! Canonicalization: epsilon removal, subset construction and minimization
//! over atomic pair labels, pruning, and a canonical state numbering.
//!
//! The transducer is treated as an automaton whose alphabet is the set of
//! upper:lower pairs, which is sufficient for equivalence testing and for
//! byte-stable serialization.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::network::{Builder, Label, Network, StateId};

impl Network {
    /// Equivalent network that is epsilon-free, deterministic and minimal
    /// over pair labels, and trim; idempotent. The empty language yields the
    /// canonical empty network.
    pub fn normalize(&self) -> Network {
        let eps_free = self.remove_epsilon();
        let trimmed = match eps_free.trim() {
            Some(net) => net,
            None => return Network::empty(self.table()),
        };
        let dfa = trimmed.determinize();
        let min = dfa.minimize();
        min.renumber_canonical()
    }

    /// True iff the two networks describe the same pair-label language,
    /// decided by comparing normalized forms. Labels are compared by print
    /// name, so the operands may come from different symbol tables.
    pub fn equivalent(&self, other: &Network) -> bool {
        let a = self.normalize();
        let b = other.normalize();
        if a.num_states() != b.num_states() || a.start() != b.start() {
            return false;
        }
        for s in 0..a.num_states() as StateId {
            if a.is_final(s) != b.is_final(s) {
                return false;
            }
            let arcs_a = a.arcs(s);
            let arcs_b = b.arcs(s);
            if arcs_a.len() != arcs_b.len() {
                return false;
            }
            for (x, y) in arcs_a.iter().zip(arcs_b.iter()) {
                if x.dest != y.dest
                    || a.table().name(x.label.upper) != b.table().name(y.label.upper)
                    || a.table().name(x.label.lower) != b.table().name(y.label.lower)
                {
                    return false;
                }
            }
        }
        true
    }

    /// True for the canonical empty network (after normalize).
    pub fn is_empty_language(&self) -> bool {
        self.num_states() == 1 && self.num_arcs() == 0 && !self.is_final(self.start())
    }

    /// Removes epsilon:epsilon arcs by closure; keeps one-sided epsilons.
    pub(crate) fn remove_epsilon(&self) -> Network {
        let n = self.num_states();
        let mut b = Builder::new(self.table());
        b.add_states(n);
        b.set_start(self.start());
        for s in 0..n as StateId {
            let closure = self.eps_closure(s);
            let mut is_final = false;
            let mut arcs: BTreeSet<(Label, StateId)> = BTreeSet::new();
            for &c in &closure {
                if self.is_final(c) {
                    is_final = true;
                }
                for arc in self.arcs(c) {
                    if !arc.label.is_epsilon() {
                        arcs.insert((arc.label, arc.dest));
                    }
                }
            }
            b.set_final(s, is_final);
            for (label, dest) in arcs {
                b.add_arc(s, label, dest);
            }
        }
        b.build()
    }

    fn eps_closure(&self, state: StateId) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![state];
        let mut out = Vec::new();
        seen[state as usize] = true;
        while let Some(s) = stack.pop() {
            out.push(s);
            for arc in self.arcs(s) {
                if arc.label.is_epsilon() && !seen[arc.dest as usize] {
                    seen[arc.dest as usize] = true;
                    stack.push(arc.dest);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Drops states unreachable from the start or unable to reach a final
    /// state. Returns None when the language is empty.
    pub(crate) fn trim(&self) -> Option<Network> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut queue = VecDeque::from([self.start()]);
        fwd[self.start() as usize] = true;
        while let Some(s) = queue.pop_front() {
            for arc in self.arcs(s) {
                if !fwd[arc.dest as usize] {
                    fwd[arc.dest as usize] = true;
                    queue.push_back(arc.dest);
                }
            }
        }
        let mut rev_adj: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for s in 0..n as StateId {
            for arc in self.arcs(s) {
                rev_adj[arc.dest as usize].push(s);
            }
        }
        let mut bwd = vec![false; n];
        let mut queue: VecDeque<StateId> = self.final_states().collect();
        for &f in &queue {
            bwd[f as usize] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &p in &rev_adj[s as usize] {
                if !bwd[p as usize] {
                    bwd[p as usize] = true;
                    queue.push_back(p);
                }
            }
        }
        let keep: Vec<bool> = (0..n).map(|i| fwd[i] && bwd[i]).collect();
        if !keep[self.start() as usize] {
            return None;
        }
        let mut remap = vec![StateId::MAX; n];
        let mut b = Builder::new(self.table());
        for (old, &k) in keep.iter().enumerate() {
            if k {
                remap[old] = b.add_state();
                b.set_final(remap[old], self.is_final(old as StateId));
            }
        }
        b.set_start(remap[self.start() as usize]);
        for old in 0..n {
            if !keep[old] {
                continue;
            }
            for arc in self.arcs(old as StateId) {
                if keep[arc.dest as usize] {
                    b.add_arc(remap[old], arc.label, remap[arc.dest as usize]);
                }
            }
        }
        Some(b.build())
    }

    /// Subset construction over pair labels. Input must be epsilon-free.
    pub(crate) fn determinize(&self) -> Network {
        let mut b = Builder::new(self.table());
        let mut index: HashMap<Box<[StateId]>, StateId> = HashMap::new();
        let mut queue: VecDeque<Box<[StateId]>> = VecDeque::new();

        let start_set: Box<[StateId]> = vec![self.start()].into();
        let start = b.add_state();
        b.set_final(start, self.is_final(self.start()));
        index.insert(start_set.clone(), start);
        queue.push_back(start_set);

        while let Some(subset) = queue.pop_front() {
            let src = index[&subset];
            let mut by_label: BTreeMap<Label, BTreeSet<StateId>> = BTreeMap::new();
            for &s in subset.iter() {
                for arc in self.arcs(s) {
                    by_label.entry(arc.label).or_default().insert(arc.dest);
                }
            }
            for (label, dests) in by_label {
                let key: Box<[StateId]> = dests.iter().copied().collect();
                let dest = match index.get(&key) {
                    Some(&d) => d,
                    None => {
                        let d = b.add_state();
                        b.set_final(d, key.iter().any(|&s| self.is_final(s)));
                        index.insert(key.clone(), d);
                        queue.push_back(key);
                        d
                    }
                };
                b.add_arc(src, label, dest);
            }
        }
        b.build()
    }

    /// Partition refinement on a trim DFA over pair labels.
    pub(crate) fn minimize(&self) -> Network {
        let n = self.num_states();
        let mut class: Vec<u32> = (0..n)
            .map(|s| u32::from(self.is_final(s as StateId)))
            .collect();
        // 1 when every state agrees on finality, else 2
        let mut num_classes = class
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len() as u32;
        loop {
            let mut sig_index: BTreeMap<(u32, Vec<(Label, u32)>), u32> = BTreeMap::new();
            let mut next_class = vec![0u32; n];
            for s in 0..n {
                let mut arcs: Vec<(Label, u32)> = self
                    .arcs(s as StateId)
                    .iter()
                    .map(|a| (a.label, class[a.dest as usize]))
                    .collect();
                arcs.sort_unstable();
                let sig = (class[s], arcs);
                let fresh = sig_index.len() as u32;
                let id = *sig_index.entry(sig).or_insert(fresh);
                next_class[s] = id;
            }
            let new_count = sig_index.len() as u32;
            class = next_class;
            if new_count == num_classes {
                break;
            }
            num_classes = new_count;
        }

        let mut b = Builder::new(self.table());
        b.add_states(num_classes as usize);
        let mut done = vec![false; num_classes as usize];
        for s in 0..n {
            let c = class[s];
            if done[c as usize] {
                continue;
            }
            done[c as usize] = true;
            b.set_final(c, self.is_final(s as StateId));
            for arc in self.arcs(s as StateId) {
                b.add_arc(c, arc.label, class[arc.dest as usize]);
            }
        }
        b.set_start(class[self.start() as usize]);
        b.build()
    }

    /// Renumbers states by breadth-first discovery from the start, exploring
    /// arcs in label order; state 0 is the start and arcs are stored sorted.
    /// On a minimal DFA this is a canonical form: two equivalent networks
    /// come out structurally identical.
    pub(crate) fn renumber_canonical(&self) -> Network {
        let n = self.num_states();
        let mut remap: Vec<Option<StateId>> = vec![None; n];
        let mut order: Vec<StateId> = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.start()]);
        remap[self.start() as usize] = Some(0);
        order.push(self.start());
        while let Some(s) = queue.pop_front() {
            let mut arcs: Vec<_> = self.arcs(s).to_vec();
            arcs.sort_unstable_by_key(|a| (a.label, a.dest));
            for arc in arcs {
                if remap[arc.dest as usize].is_none() {
                    remap[arc.dest as usize] = Some(order.len() as StateId);
                    order.push(arc.dest);
                    queue.push_back(arc.dest);
                }
            }
        }
        let mut b = Builder::new(self.table());
        b.add_states(order.len());
        b.set_start(0);
        for (new_id, &old) in order.iter().enumerate() {
            b.set_final(new_id as StateId, self.is_final(old));
            let mut arcs: Vec<_> = self.arcs(old).to_vec();
            arcs.sort_unstable_by_key(|a| (a.label, a.dest));
            for arc in arcs {
                b.add_arc(
                    new_id as StateId,
                    arc.label,
                    remap[arc.dest as usize].expect("reachable"),
                );
            }
        }
        b.build()
    }
}
