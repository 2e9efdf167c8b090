//! lexc-lite: continuation-class lexicons compiled to networks by
//! concatenation and union.
//!
//! File format: `LEXICON <Name>` headers; entry lines
//! `<upper> : <lower> <Continuation> ;` where the token string before the
//! continuation may omit the `:` to mean upper = lower; `!` starts a
//! comment; `"..."` quotes a token verbatim; `0` is epsilon. Entries are
//! token strings, not regexes; regex power enters only through
//! compile-replace regions on the lower side.

use std::sync::Arc as Shared;

use crate::error::{Error, Result};
use crate::network::{Builder, Label, Network, StateId};
use crate::symbol::{SymbolId, SymbolTable};

#[derive(Clone, Debug)]
pub struct LexiconEntry {
    pub upper: Vec<SymbolId>,
    pub lower: Vec<SymbolId>,
    /// None is the end marker `#`.
    pub continuation: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct LexiconSection {
    pub name: String,
    pub entries: Vec<LexiconEntry>,
}

/// A parsed lexicon source; the designated root section is named `Root`.
#[derive(Clone, Debug, Default)]
pub struct LexiconSource {
    pub sections: Vec<LexiconSection>,
}

#[derive(Debug, PartialEq)]
enum Word {
    Plain(String, usize),
    Quoted(String, usize),
}

impl Word {
    fn line(&self) -> usize {
        match self {
            Word::Plain(_, l) | Word::Quoted(_, l) => *l,
        }
    }
}

/// Splits lexicon text into words, honoring quotes and `!` comments.
fn split_words(text: &str) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut chars = raw.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c == '!' {
                break; // comment to end of line
            }
            if c == '"' {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        None => {
                            return Err(Error::Lexicon {
                                line: line_no,
                                msg: "unterminated quote".into(),
                            })
                        }
                        Some('"') => break,
                        Some(ch) if ch.is_whitespace() => {
                            return Err(Error::Lexicon {
                                line: line_no,
                                msg: "whitespace inside a quoted token".into(),
                            })
                        }
                        Some(ch) => name.push(ch),
                    }
                }
                if name.is_empty() {
                    return Err(Error::Lexicon {
                        line: line_no,
                        msg: "empty quoted token".into(),
                    });
                }
                out.push(Word::Quoted(name, line_no));
            } else {
                let mut word = String::from(c);
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || ch == '!' || ch == '"' {
                        break;
                    }
                    word.push(ch);
                    chars.next();
                }
                out.push(Word::Plain(word, line_no));
            }
        }
    }
    Ok(out)
}

impl LexiconSource {
    /// Parses lexc-lite source text.
    pub fn parse(text: &str, table: &Shared<SymbolTable>) -> Result<LexiconSource> {
        let words = split_words(text)?;
        let mut sections: Vec<LexiconSection> = Vec::new();
        let mut i = 0;
        while i < words.len() {
            match &words[i] {
                Word::Plain(w, line) if w == "LEXICON" => {
                    let name = match words.get(i + 1) {
                        Some(Word::Plain(n, _)) => n.clone(),
                        _ => {
                            return Err(Error::Lexicon {
                                line: *line,
                                msg: "LEXICON needs a section name".into(),
                            })
                        }
                    };
                    if sections.iter().any(|s| s.name == name) {
                        return Err(Error::Lexicon {
                            line: *line,
                            msg: format!("duplicate section `{name}`"),
                        });
                    }
                    sections.push(LexiconSection {
                        name,
                        entries: Vec::new(),
                    });
                    i += 2;
                }
                first => {
                    let line = first.line();
                    let section = sections.last_mut().ok_or_else(|| Error::Lexicon {
                        line,
                        msg: "entry before any LEXICON header".into(),
                    })?;
                    // collect words up to the standalone `;`
                    let mut entry_words = Vec::new();
                    loop {
                        match words.get(i) {
                            None => {
                                return Err(Error::Lexicon {
                                    line,
                                    msg: "entry is missing its `;`".into(),
                                })
                            }
                            Some(Word::Plain(w, _)) if w == ";" => {
                                i += 1;
                                break;
                            }
                            Some(w) => {
                                entry_words.push(w);
                                i += 1;
                            }
                        }
                    }
                    section
                        .entries
                        .push(parse_entry(&entry_words, line, table)?);
                }
            }
        }
        let source = LexiconSource { sections };
        source.validate()?;
        Ok(source)
    }

    fn validate(&self) -> Result<()> {
        if !self.sections.iter().any(|s| s.name == "Root") {
            return Err(Error::Lexicon {
                line: 1,
                msg: "no `Root` section".into(),
            });
        }
        for section in &self.sections {
            for entry in &section.entries {
                if let Some(cont) = &entry.continuation {
                    if !self.sections.iter().any(|s| &s.name == cont) {
                        return Err(Error::Lexicon {
                            line: entry.line,
                            msg: format!("unknown continuation `{cont}`"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Compiles the lexicon: the union over all root-to-`#` entry chains of
    /// the concatenated entry relations, normalized. Each entry pairs its
    /// upper and lower token strings positionally, end-padding the shorter
    /// side with epsilons.
    pub fn compile(&self, table: &Shared<SymbolTable>) -> Result<Network> {
        let mut b = Builder::new(table);
        let end = b.add_state();
        b.set_final(end, true);
        let states: Vec<(String, StateId)> = self
            .sections
            .iter()
            .map(|s| (s.name.clone(), b.add_state()))
            .collect();
        let state_of = |name: &str| -> StateId {
            states
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, s)| *s)
                .expect("validated continuation")
        };
        for section in &self.sections {
            let src = state_of(&section.name);
            for entry in &section.entries {
                let target = match &entry.continuation {
                    Some(name) => state_of(name),
                    None => end,
                };
                let len = entry.upper.len().max(entry.lower.len());
                let mut cur = src;
                if len == 0 {
                    b.add_arc(src, Label::identity(SymbolId::EPSILON), target);
                    continue;
                }
                for k in 0..len {
                    let u = entry.upper.get(k).copied().unwrap_or(SymbolId::EPSILON);
                    let l = entry.lower.get(k).copied().unwrap_or(SymbolId::EPSILON);
                    let next = if k + 1 == len { target } else { b.add_state() };
                    b.add_arc(cur, Label::new(u, l), next);
                    cur = next;
                }
            }
        }
        b.set_start(state_of("Root"));
        Ok(b.build().normalize())
    }
}

fn parse_entry(words: &[&Word], line: usize, table: &Shared<SymbolTable>) -> Result<LexiconEntry> {
    if words.is_empty() {
        return Err(Error::Lexicon {
            line,
            msg: "empty entry".into(),
        });
    }
    let continuation = match words.last().unwrap() {
        Word::Plain(w, _) if w == "#" => None,
        Word::Plain(w, _) => Some(w.clone()),
        Word::Quoted(_, _) => {
            return Err(Error::Lexicon {
                line,
                msg: "the continuation may not be quoted".into(),
            })
        }
    };
    let body = &words[..words.len() - 1];
    let split = body
        .iter()
        .position(|w| matches!(w, Word::Plain(t, _) if t == ":"));
    let (upper_words, lower_words): (&[&Word], &[&Word]) = match split {
        Some(at) => (&body[..at], &body[at + 1..]),
        None => (body, body),
    };
    let to_syms = |ws: &[&Word]| -> Vec<SymbolId> {
        ws.iter()
            .filter_map(|w| match w {
                Word::Plain(t, _) if t == "0" => None,
                Word::Plain(t, _) | Word::Quoted(t, _) => Some(table.intern(t)),
            })
            .collect()
    };
    Ok(LexiconEntry {
        upper: to_syms(upper_words),
        lower: to_syms(lower_words),
        continuation,
        line,
    })
}

/// Builds the union of `{word}` lines: one identity path per word, with
/// `#` comment lines and blank lines ignored. Returns the word list along
/// with the normalized network.
pub fn read_wordlist(text: &str, table: &Shared<SymbolTable>) -> Result<(Vec<String>, Network)> {
    let mut words = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('!') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(Error::Lexicon {
                line: idx + 1,
                msg: "a wordlist entry may not contain whitespace".into(),
            });
        }
        words.push(line.to_string());
    }
    let net = word_union(&words, table);
    Ok((words, net))
}

/// One flat union of identity paths, built without pairwise copying.
pub fn word_union(words: &[String], table: &Shared<SymbolTable>) -> Network {
    let mut b = Builder::new(table);
    let start = b.add_state();
    b.set_start(start);
    for word in words {
        let mut cur = start;
        for c in word.chars() {
            let sym = table.intern(&c.to_string());
            let next = b.add_state();
            b.add_arc(cur, Label::identity(sym), next);
            cur = next;
        }
        b.set_final(cur, true);
    }
    b.build().normalize()
}
