//! Unweighted finite-state networks over symbol-pair labels.
//!
//! A network is immutable after construction; every operation is a pure
//! function returning a new network. Automata are the special case where
//! every label is an identity pair.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc as Shared;

use crate::error::{Error, Result};
use crate::symbol::{SymbolId, SymbolTable};

pub type StateId = u32;

/// An upper:lower symbol pair. Identity pairs print as a single symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label {
    pub upper: SymbolId,
    pub lower: SymbolId,
}

impl Label {
    pub fn new(upper: SymbolId, lower: SymbolId) -> Label {
        Label { upper, lower }
    }

    pub fn identity(sym: SymbolId) -> Label {
        Label {
            upper: sym,
            lower: sym,
        }
    }

    pub fn is_identity(self) -> bool {
        self.upper == self.lower
    }

    /// True only for the epsilon:epsilon label.
    pub fn is_epsilon(self) -> bool {
        self.upper.is_epsilon() && self.lower.is_epsilon()
    }

    pub fn side(self, side: Side) -> SymbolId {
        match side {
            Side::Upper => self.upper,
            Side::Lower => self.lower,
        }
    }
}

/// A labeled transition to a destination state.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arc {
    pub label: Label,
    pub dest: StateId,
}

/// Which side of a transducer an operation looks at.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Upper => write!(f, "upper"),
            Side::Lower => write!(f, "lower"),
        }
    }
}

/// Enumeration view: one side's strings, or whole pair-strings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumSide {
    Upper,
    Lower,
    Pairs,
}

/// Which side(s) substitute_symbol rewrites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubstSide {
    Upper,
    Lower,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureKind {
    Star,
    Plus,
}

/// An unweighted finite-state machine whose arcs carry upper:lower pairs.
#[derive(Clone)]
pub struct Network {
    table: Shared<SymbolTable>,
    start: StateId,
    arcs: Vec<Vec<Arc>>,
    finals: Vec<bool>,
    sigma: BTreeSet<SymbolId>,
}

/// Mutable construction helper; `build` freezes it and recomputes sigma.
pub(crate) struct Builder {
    table: Shared<SymbolTable>,
    start: StateId,
    arcs: Vec<Vec<Arc>>,
    finals: Vec<bool>,
}

impl Builder {
    pub(crate) fn new(table: &Shared<SymbolTable>) -> Builder {
        Builder {
            table: Shared::clone(table),
            start: 0,
            arcs: Vec::new(),
            finals: Vec::new(),
        }
    }

    pub(crate) fn add_state(&mut self) -> StateId {
        let id = self.arcs.len() as StateId;
        self.arcs.push(Vec::new());
        self.finals.push(false);
        id
    }

    pub(crate) fn add_states(&mut self, n: usize) {
        for _ in 0..n {
            self.add_state();
        }
    }

    pub(crate) fn add_arc(&mut self, src: StateId, label: Label, dest: StateId) {
        debug_assert!((src as usize) < self.arcs.len());
        debug_assert!((dest as usize) < self.arcs.len());
        self.arcs[src as usize].push(Arc { label, dest });
    }

    pub(crate) fn set_final(&mut self, state: StateId, is_final: bool) {
        self.finals[state as usize] = is_final;
    }

    pub(crate) fn set_start(&mut self, state: StateId) {
        self.start = state;
    }

    /// Copies every state and arc of `net`, returning the id offset.
    pub(crate) fn import(&mut self, net: &Network) -> StateId {
        let offset = self.arcs.len() as StateId;
        for state in 0..net.num_states() {
            let id = self.add_state();
            self.set_final(id, net.is_final(state as StateId));
        }
        for state in 0..net.num_states() {
            for arc in net.arcs(state as StateId) {
                self.add_arc(offset + state as StateId, arc.label, offset + arc.dest);
            }
        }
        offset
    }

    pub(crate) fn build(self) -> Network {
        let mut sigma = BTreeSet::new();
        for arcs in &self.arcs {
            for arc in arcs {
                if !arc.label.upper.is_epsilon() {
                    sigma.insert(arc.label.upper);
                }
                if !arc.label.lower.is_epsilon() {
                    sigma.insert(arc.label.lower);
                }
            }
        }
        let mut net = Network {
            table: self.table,
            start: self.start,
            arcs: self.arcs,
            finals: self.finals,
            sigma,
        };
        if net.arcs.is_empty() {
            // at minimum the canonical empty network: one non-final start
            net.arcs.push(Vec::new());
            net.finals.push(false);
        }
        debug_assert!((net.start as usize) < net.arcs.len());
        net
    }
}

impl Network {
    pub fn table(&self) -> &Shared<SymbolTable> {
        &self.table
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self, state: StateId) -> &[Arc] {
        &self.arcs[state as usize]
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state as usize]
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(i, _)| i as StateId)
    }

    /// Set of non-epsilon symbols occurring on arcs.
    pub fn sigma(&self) -> &BTreeSet<SymbolId> {
        &self.sigma
    }

    /// True when every label is an identity pair (epsilon:epsilon included).
    pub fn is_automaton(&self) -> bool {
        self.arcs
            .iter()
            .flatten()
            .all(|arc| arc.label.is_identity())
    }

    /// True when some arc carries `sym` on the given side.
    pub fn has_symbol_on_side(&self, sym: SymbolId, side: Side) -> bool {
        self.arcs
            .iter()
            .flatten()
            .any(|arc| arc.label.side(side) == sym)
    }

    pub(crate) fn check_same_table(&self, other: &Network) -> Result<()> {
        if Shared::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// The canonical empty network: one non-final state, no arcs.
    pub fn empty(table: &Shared<SymbolTable>) -> Network {
        let mut b = Builder::new(table);
        b.add_state();
        b.build()
    }

    /// Accepts exactly the empty string.
    pub fn epsilon_net(table: &Shared<SymbolTable>) -> Network {
        Network::atom(table, SymbolId::EPSILON, SymbolId::EPSILON)
    }

    /// Two-state network accepting exactly the single pair; atom(eps, eps)
    /// accepts exactly the empty string.
    pub fn atom(table: &Shared<SymbolTable>, upper: SymbolId, lower: SymbolId) -> Network {
        let mut b = Builder::new(table);
        let s0 = b.add_state();
        if upper.is_epsilon() && lower.is_epsilon() {
            b.set_final(s0, true);
            return b.build();
        }
        let s1 = b.add_state();
        b.add_arc(s0, Label::new(upper, lower), s1);
        b.set_final(s1, true);
        b.build()
    }

    /// Builds a network from explicit parts: arcs are
    /// `(src, upper, lower, dst)` tuples over print names, with `@0@` (or
    /// an empty string) for epsilon.
    pub fn from_parts(
        table: &Shared<SymbolTable>,
        num_states: usize,
        start: StateId,
        arcs: &[(StateId, &str, &str, StateId)],
        finals: &[StateId],
    ) -> Result<Network> {
        let check = |s: StateId| -> Result<StateId> {
            if (s as usize) < num_states.max(1) {
                Ok(s)
            } else {
                Err(Error::InvalidSymbol(format!("state {s} out of range")))
            }
        };
        let sym = |name: &str| {
            if name.is_empty() || name == crate::symbol::EPSILON_NAME {
                SymbolId::EPSILON
            } else {
                table.intern(name)
            }
        };
        let mut b = Builder::new(table);
        b.add_states(num_states.max(1));
        b.set_start(check(start)?);
        for &(src, upper, lower, dst) in arcs {
            b.add_arc(check(src)?, Label::new(sym(upper), sym(lower)), check(dst)?);
        }
        for &f in finals {
            b.set_final(check(f)?, true);
        }
        Ok(b.build())
    }

    /// Identity automaton accepting one string of symbols.
    pub fn string_automaton(table: &Shared<SymbolTable>, syms: &[SymbolId]) -> Network {
        let mut b = Builder::new(table);
        let mut cur = b.add_state();
        for &sym in syms {
            if sym.is_epsilon() {
                continue;
            }
            let next = b.add_state();
            b.add_arc(cur, Label::identity(sym), next);
            cur = next;
        }
        b.set_final(cur, true);
        b.build()
    }

    /// Pairwise concatenation of the two languages/relations.
    pub fn concat(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        let mut b = Builder::new(&self.table);
        let a_off = b.import(self);
        let b_off = b.import(other);
        b.set_start(a_off + self.start);
        let eps = Label::identity(SymbolId::EPSILON);
        for f in self.final_states() {
            b.add_arc(a_off + f, eps, b_off + other.start);
            b.set_final(a_off + f, false);
        }
        for s in 0..self.num_states() as StateId {
            b.set_final(a_off + s, false);
        }
        Ok(b.build())
    }

    /// Set union of the two languages/relations.
    pub fn union(&self, other: &Network) -> Result<Network> {
        self.check_same_table(other)?;
        let mut b = Builder::new(&self.table);
        let start = b.add_state();
        let a_off = b.import(self);
        let b_off = b.import(other);
        b.set_start(start);
        let eps = Label::identity(SymbolId::EPSILON);
        b.add_arc(start, eps, a_off + self.start);
        b.add_arc(start, eps, b_off + other.start);
        Ok(b.build())
    }

    /// Kleene star or plus.
    pub fn closure(&self, kind: ClosureKind) -> Network {
        let mut b = Builder::new(&self.table);
        let start = b.add_state();
        let off = b.import(self);
        b.set_start(start);
        b.set_final(start, kind == ClosureKind::Star);
        let eps = Label::identity(SymbolId::EPSILON);
        b.add_arc(start, eps, off + self.start);
        for f in self.final_states() {
            b.add_arc(off + f, eps, off + self.start);
        }
        b.build()
    }

    /// n-fold self-concatenation; repeat(a, 0) accepts exactly the empty string.
    pub fn repeat(&self, n: u32) -> Network {
        let mut result = Network::epsilon_net(&self.table);
        for _ in 0..n {
            result = result.concat(self).expect("same table");
        }
        result
    }

    /// Symbol-wise reversal: pairs reversed positionally, each label unchanged.
    pub fn reverse(&self) -> Network {
        let mut b = Builder::new(&self.table);
        let start = b.add_state();
        b.add_states(self.num_states());
        b.set_start(start);
        let eps = Label::identity(SymbolId::EPSILON);
        for f in self.final_states() {
            b.add_arc(start, eps, 1 + f);
        }
        for s in 0..self.num_states() as StateId {
            for arc in self.arcs(s) {
                b.add_arc(1 + arc.dest, arc.label, 1 + s);
            }
        }
        b.set_final(1 + self.start, true);
        b.build()
    }

    /// Automaton of the chosen side's strings.
    pub fn project(&self, side: Side) -> Network {
        let mut b = Builder::new(&self.table);
        b.add_states(self.num_states());
        b.set_start(self.start);
        for s in 0..self.num_states() as StateId {
            b.set_final(s, self.is_final(s));
            for arc in self.arcs(s) {
                b.add_arc(s, Label::identity(arc.label.side(side)), arc.dest);
            }
        }
        b.build()
    }

    /// Replaces every occurrence of `from` on the selected side(s) by the
    /// symbol sequence `to` (epsilon-paired beyond the first symbol); an
    /// empty `to` deletes the symbol.
    pub fn substitute_symbol(
        &self,
        from: SymbolId,
        to: &[SymbolId],
        side: SubstSide,
    ) -> Result<Network> {
        if from.is_epsilon() {
            return Err(Error::InvalidSymbol(
                "cannot substitute the epsilon symbol".into(),
            ));
        }
        let on_upper = matches!(side, SubstSide::Upper | SubstSide::Both);
        let on_lower = matches!(side, SubstSide::Lower | SubstSide::Both);
        let mut b = Builder::new(&self.table);
        b.add_states(self.num_states());
        b.set_start(self.start);
        for s in 0..self.num_states() as StateId {
            b.set_final(s, self.is_final(s));
            for arc in self.arcs(s) {
                let upper: Vec<SymbolId> = if on_upper && arc.label.upper == from {
                    to.to_vec()
                } else {
                    vec![arc.label.upper]
                };
                let lower: Vec<SymbolId> = if on_lower && arc.label.lower == from {
                    to.to_vec()
                } else {
                    vec![arc.label.lower]
                };
                let len = upper.len().max(lower.len()).max(1);
                let mut cur = s;
                for i in 0..len {
                    let u = upper.get(i).copied().unwrap_or(SymbolId::EPSILON);
                    let l = lower.get(i).copied().unwrap_or(SymbolId::EPSILON);
                    let next = if i + 1 == len {
                        arc.dest
                    } else {
                        b.add_state()
                    };
                    b.add_arc(cur, Label::new(u, l), next);
                    cur = next;
                }
            }
        }
        Ok(b.build())
    }

    /// All accepted strings (or pair-strings) of symbol-length at most
    /// `max_len`, duplicate-free. Cyclic networks are handled by the bound.
    pub fn enumerate_words(&self, max_len: usize, side: EnumSide) -> BTreeSet<String> {
        let mut seen: BTreeSet<(StateId, Vec<SymbolId>)> = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack: Vec<(StateId, Vec<SymbolId>)> = vec![(self.start, Vec::new())];
        seen.insert((self.start, Vec::new()));
        while let Some((state, word)) = stack.pop() {
            if self.is_final(state) {
                out.insert(self.render(&word, side));
            }
            for arc in self.arcs(state) {
                let mut next = word.clone();
                match side {
                    EnumSide::Upper | EnumSide::Lower => {
                        let s = arc.label.side(if side == EnumSide::Upper {
                            Side::Upper
                        } else {
                            Side::Lower
                        });
                        if !s.is_epsilon() {
                            next.push(s);
                        }
                    }
                    EnumSide::Pairs => {
                        if !arc.label.is_epsilon() {
                            next.push(arc.label.upper);
                            next.push(arc.label.lower);
                        }
                    }
                }
                let len = match side {
                    EnumSide::Pairs => next.len() / 2,
                    _ => next.len(),
                };
                if len > max_len {
                    continue;
                }
                let key = (arc.dest, next.clone());
                if seen.insert(key) {
                    stack.push((arc.dest, next));
                }
            }
        }
        out
    }

    fn render(&self, word: &[SymbolId], side: EnumSide) -> String {
        match side {
            EnumSide::Upper | EnumSide::Lower => word
                .iter()
                .map(|&s| self.table.name(s))
                .collect::<Vec<_>>()
                .concat(),
            EnumSide::Pairs => word
                .chunks(2)
                .map(|pair| {
                    if pair[0] == pair[1] {
                        self.table.name(pair[0])
                    } else {
                        format!("{}:{}", self.table.name(pair[0]), self.table.name(pair[1]))
                    }
                })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Bounded set of (upper string, lower string) pairs along accepting
    /// paths of at most `max_arcs` arcs. Test and demo helper for comparing
    /// relations independently of epsilon placement.
    pub fn bounded_relation(&self, max_arcs: usize) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack: Vec<(StateId, usize, Vec<SymbolId>, Vec<SymbolId>)> =
            vec![(self.start, 0, Vec::new(), Vec::new())];
        while let Some((state, depth, upper, lower)) = stack.pop() {
            if !seen.insert((state, upper.clone(), lower.clone())) {
                continue;
            }
            if self.is_final(state) {
                let u: String = upper.iter().map(|&s| self.table.name(s)).collect();
                let l: String = lower.iter().map(|&s| self.table.name(s)).collect();
                out.insert((u, l));
            }
            if depth == max_arcs {
                continue;
            }
            for arc in self.arcs(state) {
                let mut u = upper.clone();
                let mut l = lower.clone();
                if !arc.label.upper.is_epsilon() {
                    u.push(arc.label.upper);
                }
                if !arc.label.lower.is_epsilon() {
                    l.push(arc.label.lower);
                }
                stack.push((arc.dest, depth + 1, u, l));
            }
        }
        out
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Network(start={})", self.start)?;
        for s in 0..self.num_states() as StateId {
            for arc in self.arcs(s) {
                writeln!(
                    f,
                    "  {} -> {} {}:{}",
                    s,
                    arc.dest,
                    self.table.name(arc.label.upper),
                    self.table.name(arc.label.lower)
                )?;
            }
            if self.is_final(s) {
                writeln!(f, "  {} final", s)?;
            }
        }
        Ok(())
    }
}
