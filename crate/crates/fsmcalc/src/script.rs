//! Script interpreter: a small command language over a session holding a
//! symbol table, definitions and classes.
//!
//! Commands end with `;`, comments run from `#` to end of line, and every
//! network bound in the session is kept in normal form, so saved files and
//! printed outputs are deterministic across runs.

use std::io::{BufRead, Write};
use std::sync::Arc as Shared;

use crate::classes::{parse_class_file, ClassRegistry};
use crate::compile_replace::compile_replace;
use crate::error::{Error, Result};
use crate::lexicon::{read_wordlist, LexiconSource};
use crate::network::{EnumSide, Network, Side, SubstSide};
use crate::regex::{compile_text, Definitions};
use crate::symbol::SymbolTable;
use crate::textio;

/// Interpreter state: definitions, classes, the shared symbol table and
/// the last bound network.
pub struct Session {
    pub table: Shared<SymbolTable>,
    pub defs: Definitions,
    pub classes: ClassRegistry,
    pub last: Option<Network>,
}

impl Session {
    pub fn new() -> Session {
        Session {
            table: SymbolTable::new(),
            defs: Definitions::new(),
            classes: ClassRegistry::new(),
            last: None,
        }
    }

    pub fn bind(&mut self, name: &str, net: Network) {
        self.last = Some(net.clone());
        self.defs.bind(name, net);
    }

    pub fn get(&self, name: &str) -> Result<&Network> {
        self.defs
            .get(name)
            .ok_or_else(|| Error::Usage(format!("no network named `{name}`")))
    }

    pub fn load_classes(&mut self, text: &str) -> Result<()> {
        self.classes = parse_class_file(text, &self.table, &self.classes)?;
        Ok(())
    }
}

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

/// One `;`-terminated command with the line it starts on.
struct Command {
    line: usize,
    text: String,
}

fn split_commands(source: &str) -> Vec<Command> {
    let mut commands = Vec::new();
    let mut current = String::new();
    let mut line = 1usize;
    let mut start_line = 1usize;
    let mut in_quote = false;
    let mut in_comment = false;
    for c in source.chars() {
        if c == '\n' {
            line += 1;
            in_comment = false;
            current.push(' ');
            continue;
        }
        if in_comment {
            continue;
        }
        match c {
            '"' => {
                in_quote = !in_quote;
                current.push(c);
            }
            '#' if !in_quote => in_comment = true,
            ';' if !in_quote => {
                commands.push(Command {
                    line: start_line,
                    text: current.trim().to_string(),
                });
                current.clear();
                start_line = line;
            }
            _ => {
                if current.trim().is_empty() && !c.is_whitespace() {
                    start_line = line;
                }
                current.push(c);
            }
        }
    }
    if !current.trim().is_empty() {
        commands.push(Command {
            line: start_line,
            text: current.trim().to_string(),
        });
    }
    commands.retain(|c| !c.text.is_empty());
    commands
}

/// Splits a command into words, keeping quoted words intact. Returns the
/// words with a quoted flag.
fn split_words(text: &str) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if c == '"' {
            let mut word = String::new();
            loop {
                match chars.next() {
                    None => {
                        return Err(Error::Usage("unterminated quote".into()));
                    }
                    Some('"') => break,
                    Some(ch) => word.push(ch),
                }
            }
            out.push((word, true));
        } else {
            let mut word = String::from(c);
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '"' {
                    break;
                }
                word.push(ch);
                chars.next();
            }
            out.push((word, false));
        }
    }
    Ok(out)
}

/// Executes the commands of a script in order, reading apply input from
/// `stdin` and writing command output to `out`. Stops at the first error.
pub fn run_script<R: BufRead, W: Write>(
    source: &str,
    session: &mut Session,
    stdin: &mut R,
    out: &mut W,
) -> Result<()> {
    for command in split_commands(source) {
        run_command(&command, session, stdin, out).map_err(|e| match e {
            err @ Error::Script { .. } => err,
            err => Error::Script {
                line: command.line,
                msg: err.to_string(),
            },
        })?;
    }
    Ok(())
}

fn run_command<R: BufRead, W: Write>(
    command: &Command,
    session: &mut Session,
    stdin: &mut R,
    out: &mut W,
) -> Result<()> {
    let text = &command.text;
    let keyword = text.split_whitespace().next().unwrap_or("");
    let after = text[text.find(keyword).unwrap() + keyword.len()..].trim();
    let misuse = |msg: &str| Error::Usage(msg.to_string());

    match keyword {
        "define" => {
            let name = after
                .split_whitespace()
                .next()
                .ok_or_else(|| misuse("usage: define <name> <regex>"))?
                .to_string();
            let regex = after[after.find(&name).unwrap() + name.len()..].trim();
            if regex.is_empty() {
                return Err(misuse("usage: define <name> <regex>"));
            }
            let net = compile_text(regex, &session.defs, &session.classes, &session.table)?;
            session.bind(&name, net);
        }
        "class" => {
            let words = split_words(after)?;
            if words.len() < 3 || words[1].0 != "=" || words[1].1 {
                return Err(misuse("usage: class <NAME> = <sym> <sym> ..."));
            }
            let name = session.table.intern(&words[0].0);
            let members = words[2..]
                .iter()
                .map(|(w, _)| session.table.intern(w))
                .collect();
            session.classes = session.classes.define(name, members)?;
        }
        "read" => {
            let words = split_words(after)?;
            match words.as_slice() {
                [(kind, false), (file, _), (name, false)] if kind == "lexicon" => {
                    let text = std::fs::read_to_string(file)?;
                    let net =
                        LexiconSource::parse(&text, &session.table)?.compile(&session.table)?;
                    session.bind(name, net);
                }
                [(kind, false), (file, _), (name, false)] if kind == "wordlist" => {
                    let text = std::fs::read_to_string(file)?;
                    let (_, net) = read_wordlist(&text, &session.table)?;
                    session.bind(name, net);
                }
                _ => return Err(misuse("usage: read lexicon|wordlist <file> <name>")),
            }
        }
        "compile-replace" => {
            let words = split_words(after)?;
            let (side, name) = match words.as_slice() {
                [(side, false), (name, false)] => (parse_side(side)?, name.clone()),
                _ => return Err(misuse("usage: compile-replace lower|upper <name>")),
            };
            let net = session.get(&name)?;
            let replaced = compile_replace(net, side, &session.defs, &session.classes)?;
            session.bind(&name, replaced);
        }
        "substitute" => {
            let mut words = split_words(after)?;
            if words.len() < 3 || words[2] != ("->".to_string(), false) {
                return Err(misuse(
                    "usage: substitute <name> <sym> -> <sym>... [upper|lower|both]",
                ));
            }
            let side = match words.last() {
                Some((w, false)) if ["upper", "lower", "both"].contains(&w.as_str()) => {
                    let side = match w.as_str() {
                        "upper" => SubstSide::Upper,
                        "lower" => SubstSide::Lower,
                        _ => SubstSide::Both,
                    };
                    words.pop();
                    side
                }
                _ => SubstSide::Both,
            };
            let name = words[0].0.clone();
            let from = session.table.intern(&words[1].0);
            let to: Vec<_> = words[3..]
                .iter()
                .map(|(w, _)| session.table.intern(w))
                .collect();
            let net = session.get(&name)?.substitute_symbol(from, &to, side)?;
            session.bind(&name, net.normalize());
        }
        "apply" => {
            let words = split_words(after)?;
            let (direction, name) = match words.as_slice() {
                [(dir, false), (name, false)] if dir == "up" => {
                    (crate::apply::Direction::Up, name.clone())
                }
                [(dir, false), (name, false)] if dir == "down" => {
                    (crate::apply::Direction::Down, name.clone())
                }
                _ => return Err(misuse("usage: apply up|down <name>")),
            };
            let net = session.get(&name)?.clone();
            let mut line = String::new();
            loop {
                line.clear();
                if stdin.read_line(&mut line)? == 0 {
                    break;
                }
                let input = line.trim_end_matches(['\n', '\r']);
                write_apply_block(out, &net, direction, input)?;
            }
        }
        "words" => {
            let words = split_words(after)?;
            let (name, max_len) = match words.as_slice() {
                [(name, false), (n, false)] => (
                    name.clone(),
                    n.parse::<usize>()
                        .map_err(|_| misuse("usage: words <name> <maxlen>"))?,
                ),
                _ => return Err(misuse("usage: words <name> <maxlen>")),
            };
            let net = session.get(&name)?;
            for word in net.enumerate_words(max_len, EnumSide::Lower) {
                writeln!(out, "{word}")?;
            }
        }
        "save" => {
            let words = split_words(after)?;
            let (name, file) = match words.as_slice() {
                [(name, false), (file, _)] => (name.clone(), file.clone()),
                _ => return Err(misuse("usage: save <name> <file>")),
            };
            textio::save(session.get(&name)?, file)?;
        }
        "load" => {
            let words = split_words(after)?;
            let (name, file) = match words.as_slice() {
                [(name, false), (file, _)] => (name.clone(), file.clone()),
                _ => return Err(misuse("usage: load <name> <file>")),
            };
            let net = textio::load(file, &session.table)?.normalize();
            session.bind(&name, net);
        }
        "equivalent" => {
            let words = split_words(after)?;
            let (a, b) = match words.as_slice() {
                [(a, false), (b, false)] => (a.clone(), b.clone()),
                _ => return Err(misuse("usage: equivalent <a> <b>")),
            };
            let result = session.get(&a)?.equivalent(session.get(&b)?);
            writeln!(
                out,
                "{}",
                if result {
                    "equivalent"
                } else {
                    "not equivalent"
                }
            )?;
        }
        other => {
            return Err(misuse(&format!("unknown command `{other}`")));
        }
    }
    Ok(())
}

fn parse_side(word: &str) -> Result<Side> {
    match word {
        "upper" => Ok(Side::Upper),
        "lower" => Ok(Side::Lower),
        other => Err(Error::Usage(format!(
            "expected upper or lower, got `{other}`"
        ))),
    }
}

/// Writes one apply block: the input line, then each analysis tab-indented,
/// `+?` when there is none, and a trailing `(truncated)` marker when the
/// output cap cut the set off.
pub fn write_apply_block<W: Write>(
    out: &mut W,
    net: &Network,
    direction: crate::apply::Direction,
    input: &str,
) -> Result<()> {
    let result = net.apply(direction, input);
    writeln!(out, "{input}")?;
    if result.outputs.is_empty() {
        writeln!(out, "\t+?")?;
    } else {
        for output in &result.outputs {
            writeln!(out, "\t{output}")?;
        }
    }
    if result.truncated {
        writeln!(out, "\t(truncated)")?;
    }
    Ok(())
}
