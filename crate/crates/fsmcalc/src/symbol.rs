//! Symbol interning.
//!
//! Print names are interned to dense ids. Multicharacter names such as
//! `+Noun`, `=Root` or `.m>.` are ordinary symbols; only the epsilon id is
//! reserved. Interning is append-only behind a lock so a table can be shared
//! by concurrent compilations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Reserved print name of the epsilon symbol in serialized form.
pub const EPSILON_NAME: &str = "@0@";
/// Opening delimiter recognized by compile-replace.
pub const DELIM_OPEN: &str = "^[";
/// Closing delimiter recognized by compile-replace.
pub const DELIM_CLOSE: &str = "^]";

/// Opaque interned symbol identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(u32);

impl SymbolId {
    pub const EPSILON: SymbolId = SymbolId(0);

    pub fn is_epsilon(self) -> bool {
        self == Self::EPSILON
    }
}

impl fmt::Debug for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sym#{}", self.0)
    }
}

#[derive(Default)]
struct Inner {
    names: Vec<Box<str>>,
    index: HashMap<Box<str>, SymbolId>,
}

/// Interns print names to symbol ids; owns the epsilon sentinel.
pub struct SymbolTable {
    inner: RwLock<Inner>,
}

impl SymbolTable {
    /// Creates a table with the epsilon symbol pre-interned as id 0.
    pub fn new() -> Arc<SymbolTable> {
        let table = SymbolTable {
            inner: RwLock::new(Inner::default()),
        };
        {
            let mut inner = table.inner.write().unwrap();
            inner.names.push(EPSILON_NAME.into());
            inner.index.insert(EPSILON_NAME.into(), SymbolId::EPSILON);
        }
        Arc::new(table)
    }

    /// Interns a print name, returning the existing id if already known.
    /// `@0@` always maps to the epsilon symbol.
    ///
    /// Print names must be non-empty and free of whitespace; callers at I/O
    /// boundaries validate before interning.
    pub fn intern(&self, name: &str) -> SymbolId {
        assert!(
            !name.is_empty() && !name.chars().any(char::is_whitespace),
            "invalid print name {name:?}"
        );
        if let Some(&id) = self.inner.read().unwrap().index.get(name) {
            return id;
        }
        let mut inner = self.inner.write().unwrap();
        if let Some(&id) = inner.index.get(name) {
            return id;
        }
        let id = SymbolId(inner.names.len() as u32);
        inner.names.push(name.into());
        inner.index.insert(name.into(), id);
        id
    }

    /// Looks a name up without interning it.
    pub fn resolve(&self, name: &str) -> Option<SymbolId> {
        self.inner.read().unwrap().index.get(name).copied()
    }

    /// Print name of a symbol. Epsilon prints as `@0@`.
    pub fn name(&self, id: SymbolId) -> String {
        self.inner.read().unwrap().names[id.0 as usize].to_string()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the epsilon symbol is always present
    }

    pub fn delim_open(&self) -> SymbolId {
        self.intern(DELIM_OPEN)
    }

    pub fn delim_close(&self) -> SymbolId {
        self.intern(DELIM_CLOSE)
    }
}

impl fmt::Debug for SymbolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.read().unwrap();
        f.debug_struct("SymbolTable")
            .field("len", &inner.names.len())
            .finish()
    }
}
