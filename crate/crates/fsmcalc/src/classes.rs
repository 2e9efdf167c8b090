//! Class symbols for the merge operator: symbols such as `C` or `V` that
//! stand for a predefined finite set of ordinary symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc as Shared;

use crate::error::{Error, Result};
use crate::symbol::{SymbolId, SymbolTable};

/// Maps class symbols to their instantiation sets. Classes may overlap, but
/// no class symbol may itself be a member of any class.
#[derive(Default, Clone, Debug)]
pub struct ClassRegistry {
    classes: BTreeMap<SymbolId, BTreeSet<SymbolId>>,
}

impl ClassRegistry {
    pub fn new() -> ClassRegistry {
        ClassRegistry::default()
    }

    /// Returns a new registry with the binding added or replaced.
    pub fn define(&self, name: SymbolId, members: BTreeSet<SymbolId>) -> Result<ClassRegistry> {
        if name.is_epsilon() {
            return Err(Error::Class("a class symbol may not be epsilon".into()));
        }
        if members.is_empty() {
            return Err(Error::Class("a class needs at least one member".into()));
        }
        if members.contains(&SymbolId::EPSILON) {
            return Err(Error::Class("epsilon may not be a class member".into()));
        }
        if members.contains(&name) {
            return Err(Error::Class(
                "a class symbol may not be a member of its own class".into(),
            ));
        }
        for member in &members {
            if *member != name && self.classes.contains_key(member) {
                return Err(Error::Class(
                    "a class symbol may not be a member of another class".into(),
                ));
            }
        }
        for existing in self.classes.values() {
            if existing.contains(&name) {
                return Err(Error::Class(
                    "the new class symbol is already a member of another class".into(),
                ));
            }
        }
        let mut next = self.clone();
        next.classes.insert(name, members);
        Ok(next)
    }

    pub fn is_class(&self, sym: SymbolId) -> bool {
        self.classes.contains_key(&sym)
    }

    pub fn members(&self, sym: SymbolId) -> Option<&BTreeSet<SymbolId>> {
        self.classes.get(&sym)
    }

    pub fn class_symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.classes.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Parses a class definition file: lines `class <NAME> = <sym> <sym> ...`,
/// `#` comments, blank lines ignored.
pub fn parse_class_file(
    text: &str,
    table: &Shared<SymbolTable>,
    registry: &ClassRegistry,
) -> Result<ClassRegistry> {
    let mut out = registry.clone();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Class(format!("line {}: {}", idx + 1, msg));
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < 4 || words[0] != "class" || words[2] != "=" {
            return Err(bad("expected `class <NAME> = <sym> <sym> ...`"));
        }
        let name = table.intern(words[1]);
        let members: BTreeSet<SymbolId> = words[3..].iter().map(|w| table.intern(w)).collect();
        out = out
            .define(name, members)
            .map_err(|e| Error::Class(format!("line {}: {}", idx + 1, e)))?;
    }
    Ok(out)
}
