//! Runtime lookup: apply a transducer upward (analysis) or downward
//! (generation) to an input string.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use crate::network::{Network, Side};
use crate::symbol::SymbolId;

/// Default cap on the number of outputs a single apply call returns.
pub const DEFAULT_APPLY_LIMIT: usize = 1000;

/// Apply direction. Up reads the lower side (analysis), down reads the
/// upper side (generation).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn input_side(self) -> Side {
        match self {
            Direction::Up => Side::Lower,
            Direction::Down => Side::Upper,
        }
    }
}

/// One segmentation of an input string into known symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tokenization {
    pub tokens: Vec<SymbolId>,
}

/// All segmentations of `input` into symbols of the network's alphabet,
/// longest-match-first. Empty result means some character is unknown on
/// every segmentation.
pub fn tokenize_input(net: &Network, input: &str) -> Vec<Tokenization> {
    let table = net.table();
    let mut names: Vec<(String, SymbolId)> =
        net.sigma().iter().map(|&s| (table.name(s), s)).collect();
    // longest first so greedy multicharacter readings come out first
    names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));

    let mut out = Vec::new();
    let mut tokens = Vec::new();
    fn rec(
        input: &str,
        at: usize,
        names: &[(String, SymbolId)],
        tokens: &mut Vec<SymbolId>,
        out: &mut Vec<Tokenization>,
    ) {
        if at == input.len() {
            out.push(Tokenization {
                tokens: tokens.clone(),
            });
            return;
        }
        for (name, sym) in names {
            if input[at..].starts_with(name.as_str()) {
                tokens.push(*sym);
                rec(input, at + name.len(), names, tokens, out);
                tokens.pop();
            }
        }
    }
    rec(input, 0, &names, &mut tokens, &mut out);
    out
}

/// Result of an apply call; `truncated` reports that the output cap cut
/// off an infinite or oversized result set.
#[derive(Clone, Debug)]
pub struct ApplyResult {
    pub outputs: BTreeSet<String>,
    pub truncated: bool,
}

impl Network {
    /// Applies the network to an input string with the default output cap.
    pub fn apply(&self, direction: Direction, input: &str) -> ApplyResult {
        self.apply_with_limit(direction, input, DEFAULT_APPLY_LIMIT)
    }

    /// Applies the network to an input string: tokenizes the input against
    /// the alphabet, follows every accepting path whose input-side symbols
    /// spell the tokens (input-side epsilons traversed freely), and returns
    /// the opposite side's strings, shortest first up to `limit`.
    pub fn apply_with_limit(&self, direction: Direction, input: &str, limit: usize) -> ApplyResult {
        let in_side = direction.input_side();
        let out_side = in_side.opposite();
        let mut outputs = BTreeSet::new();
        let mut truncated = false;
        let budget = 200_000 + 200 * limit;

        'toks: for tokenization in tokenize_input(self, input) {
            let tokens = &tokenization.tokens;
            // shortest-output-first search so a truncated result still
            // contains every output below the cut length
            let mut heap: BinaryHeap<Reverse<(usize, String, u32, usize)>> = BinaryHeap::new();
            let mut seen: HashSet<(u32, usize, String)> = HashSet::new();
            heap.push(Reverse((0, String::new(), self.start(), 0)));
            let mut steps = 0usize;
            while let Some(Reverse((_, out, state, pos))) = heap.pop() {
                if !seen.insert((state, pos, out.clone())) {
                    continue;
                }
                steps += 1;
                if steps > budget {
                    truncated = true;
                    continue 'toks;
                }
                if pos == tokens.len() && self.is_final(state) && !outputs.contains(&out) {
                    if outputs.len() >= limit {
                        truncated = true;
                        continue 'toks;
                    }
                    outputs.insert(out.clone());
                }
                for arc in self.arcs(state) {
                    let consumed = arc.label.side(in_side);
                    let next_pos = if consumed.is_epsilon() {
                        pos
                    } else if pos < tokens.len() && tokens[pos] == consumed {
                        pos + 1
                    } else {
                        continue;
                    };
                    let emitted = arc.label.side(out_side);
                    let mut next_out = out.clone();
                    if !emitted.is_epsilon() {
                        next_out.push_str(&self.table().name(emitted));
                    }
                    heap.push(Reverse((next_out.len(), next_out, arc.dest, next_pos)));
                }
            }
        }
        ApplyResult { outputs, truncated }
    }
}
