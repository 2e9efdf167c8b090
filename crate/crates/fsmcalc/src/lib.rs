//! fsmcalc: a finite-state calculus toolkit.
//!
//! Networks are unweighted finite-state machines whose arcs carry
//! upper:lower symbol-pair labels; automata are the identity-pair special
//! case. On top of the standard regular operations the crate provides:
//!
//! - a token-based regular-expression compiler ([`regex`]) with
//!   crossproduct, composition and the template-filling merge operators,
//! - [`compile_replace`](compile_replace::compile_replace), which finds
//!   `^[ ... ^]`-delimited regex substrings on one side of a network,
//!   recompiles them with the same compiler, and splices the results back
//!   in,
//! - the pattern-filling [`merge`](merge::merge) of a template automaton
//!   with a filler automaton,
//! - runtime lookup ([`apply`]), a lexc-lite lexicon compiler
//!   ([`lexicon`]), a text serialization format ([`textio`]), a script
//!   interpreter ([`script`]) and demonstration pipelines ([`demos`]).

pub mod apply;
pub mod classes;
pub mod compile_replace;
pub mod compose;
pub mod demos;
pub mod error;
pub mod lexicon;
pub mod merge;
pub mod network;
pub mod normalize;
pub mod regex;
pub mod script;
pub mod symbol;
pub mod textio;

pub use apply::{tokenize_input, ApplyResult, Direction, Tokenization};
pub use classes::{parse_class_file, ClassRegistry};
pub use compile_replace::compile_replace;
pub use error::{Error, Result};
pub use lexicon::{read_wordlist, LexiconEntry, LexiconSection, LexiconSource};
pub use merge::merge;
pub use network::{Arc, ClosureKind, EnumSide, Label, Network, Side, StateId, SubstSide};
pub use regex::{compile, compile_text, parse, tokenize, Definitions, RegexAst, Token, TokenKind};
pub use script::{run_script, Session};
pub use symbol::{SymbolId, SymbolTable, DELIM_CLOSE, DELIM_OPEN, EPSILON_NAME};
