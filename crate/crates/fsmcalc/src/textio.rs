//! Text network format.
//!
//! Line 1 is `fsmcalc 1`; then one line per arc `src<TAB>dst<TAB>upper<TAB>lower`
//! in ascending source order with state 0 as the start; then one line per
//! final state `final<TAB>id`. Epsilon prints as `@0@`; all other symbols
//! print verbatim. Reading back a written normalized network is the
//! identity, byte for byte.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;
use std::sync::Arc as Shared;

use crate::error::{Error, Result};
use crate::network::{Builder, Label, Network, StateId};
use crate::symbol::{SymbolTable, EPSILON_NAME};

const MAGIC: &str = "fsmcalc 1";

/// Serializes a network. States are renumbered by breadth-first discovery
/// from the start in stored arc order, so writing a just-loaded file
/// reproduces it exactly; unreachable states are dropped.
pub fn write_text(net: &Network) -> String {
    let table = net.table();
    let mut remap: Vec<Option<StateId>> = vec![None; net.num_states()];
    let mut order: Vec<StateId> = vec![net.start()];
    remap[net.start() as usize] = Some(0);
    let mut queue = VecDeque::from([net.start()]);
    while let Some(s) = queue.pop_front() {
        for arc in net.arcs(s) {
            if remap[arc.dest as usize].is_none() {
                remap[arc.dest as usize] = Some(order.len() as StateId);
                order.push(arc.dest);
                queue.push_back(arc.dest);
            }
        }
    }
    let mut out = String::from(MAGIC);
    out.push('\n');
    for (new_src, &old) in order.iter().enumerate() {
        for arc in net.arcs(old) {
            let dst = remap[arc.dest as usize].expect("reachable");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                new_src,
                dst,
                table.name(arc.label.upper),
                table.name(arc.label.lower),
            ));
        }
    }
    for (new_id, &old) in order.iter().enumerate() {
        if net.is_final(old) {
            out.push_str(&format!("final\t{new_id}\n"));
        }
    }
    out
}

/// Parses the text format, interning symbols into `table`.
pub fn read_text(text: &str, table: &Shared<SymbolTable>) -> Result<Network> {
    let mut lines = text.lines();
    match lines.next() {
        Some(line) if line == MAGIC => {}
        other => {
            return Err(Error::Format(format!(
                "expected `{MAGIC}` header, found {other:?}"
            )))
        }
    }
    let mut arcs: Vec<(StateId, StateId, String, String)> = Vec::new();
    let mut finals: Vec<StateId> = Vec::new();
    let mut max_state: StateId = 0;
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |msg: &str| Error::Format(format!("line {}: {}", idx + 2, msg));
        match fields.as_slice() {
            [word, id] if *word == "final" => {
                let id: StateId = id.parse().map_err(|_| bad("bad final state id"))?;
                max_state = max_state.max(id);
                finals.push(id);
            }
            [src, dst, upper, lower] => {
                let src: StateId = src.parse().map_err(|_| bad("bad source state"))?;
                let dst: StateId = dst.parse().map_err(|_| bad("bad destination state"))?;
                for name in [upper, lower] {
                    if name.is_empty() || name.chars().any(char::is_whitespace) {
                        return Err(bad("bad symbol name"));
                    }
                }
                max_state = max_state.max(src).max(dst);
                arcs.push((src, dst, upper.to_string(), lower.to_string()));
            }
            _ => return Err(bad("expected an arc or a final line")),
        }
    }
    let mut b = Builder::new(table);
    b.add_states(max_state as usize + 1);
    b.set_start(0);
    let sym = |name: &str| {
        if name == EPSILON_NAME {
            crate::symbol::SymbolId::EPSILON
        } else {
            table.intern(name)
        }
    };
    for (src, dst, upper, lower) in &arcs {
        b.add_arc(*src, Label::new(sym(upper), sym(lower)), *dst);
    }
    for f in finals {
        b.set_final(f, true);
    }
    Ok(b.build())
}

pub fn save(net: &Network, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_text(net))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>, table: &Shared<SymbolTable>) -> Result<Network> {
    let text = fs::read_to_string(path)?;
    read_text(&text, table)
}
