//! The pattern-filling merge of a template automaton with a filler
//! automaton.
//!
//! The construction follows two paths, one per operand, and builds the
//! product path. A template arc whose symbol is a class symbol matching a
//! filler arc is instantiated as the filler symbol, advancing both sides;
//! a template arc with no match at the current filler state is copied
//! without consuming anything, and that covers ordinary template symbols,
//! which never match. A result state is final only when both constituent
//! states are final, so the filler must be completely consumed.

use std::collections::{HashMap, VecDeque};

use crate::classes::ClassRegistry;
use crate::error::{Error, Result};
use crate::network::{Builder, Label, Network, StateId};

/// Merges `filler` into the class slots of `template`. Both operands must
/// be automata and the filler may not mention class symbols.
pub fn merge(template: &Network, filler: &Network, classes: &ClassRegistry) -> Result<Network> {
    template.check_same_table(filler)?;
    if !template.is_automaton() || !filler.is_automaton() {
        return Err(Error::NotAnAutomaton { op: "merge" });
    }
    for sym in filler.sigma() {
        if classes.is_class(*sym) {
            return Err(Error::Class(format!(
                "filler contains the class symbol `{}`",
                filler.table().name(*sym)
            )));
        }
    }
    let t = template.normalize();
    let f = filler.normalize();

    let mut b = Builder::new(template.table());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = b.add_state();
    index.insert((t.start(), f.start()), start);
    b.set_final(start, t.is_final(t.start()) && f.is_final(f.start()));
    queue.push_back((t.start(), f.start()));

    while let Some((qt, qf)) = queue.pop_front() {
        let src = index[&(qt, qf)];
        for t_arc in t.arcs(qt) {
            let sym = t_arc.label.upper;
            let touch = |b: &mut Builder,
                         index: &mut HashMap<(StateId, StateId), StateId>,
                         queue: &mut VecDeque<(StateId, StateId)>,
                         key: (StateId, StateId)|
             -> StateId {
                *index.entry(key).or_insert_with(|| {
                    let s = b.add_state();
                    b.set_final(s, t.is_final(key.0) && f.is_final(key.1));
                    queue.push_back(key);
                    s
                })
            };
            let matches: Vec<(StateId, Label)> = match classes.members(sym) {
                Some(members) => f
                    .arcs(qf)
                    .iter()
                    .filter(|f_arc| members.contains(&f_arc.label.upper))
                    .map(|f_arc| (f_arc.dest, f_arc.label))
                    .collect(),
                None => Vec::new(),
            };
            if matches.is_empty() {
                // copied without consuming a filler symbol
                let dest = touch(&mut b, &mut index, &mut queue, (t_arc.dest, qf));
                b.add_arc(src, t_arc.label, dest);
            } else {
                for (f_dest, f_label) in matches {
                    let dest = touch(&mut b, &mut index, &mut queue, (t_arc.dest, f_dest));
                    b.add_arc(src, f_label, dest);
                }
            }
        }
    }
    b.set_start(start);
    Ok(b.build().normalize())
}
