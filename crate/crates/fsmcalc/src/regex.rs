//! Tokenizer, parser and compiler for the token-based regular-expression
//! calculus, including the merge and crossproduct operators and definition
//! references.
//!
//! The grammar is whitespace-insensitive between tokens; compile-replace
//! depends on that, because it re-tokenizes symbol text extracted from
//! network arcs where every token is joined by a single space.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc as Shared;

use crate::classes::ClassRegistry;
use crate::error::{Error, Result};
use crate::merge::merge;
use crate::network::{Builder, ClosureKind, Label, Network};
use crate::symbol::{SymbolId, SymbolTable};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TokenKind {
    Symbol { quoted: bool },
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Star,
    Plus,
    Caret,
    Integer(u32),
    Amp,
    Bar,
    Minus,
    DotR,
    Any,
    Zero,
    Cross,
    Compose,
    MergeLeft,
    MergeRight,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: usize,
}

impl Token {
    fn new(kind: TokenKind, text: impl Into<String>, pos: usize) -> Token {
        Token {
            kind,
            text: text.into(),
            pos,
        }
    }

    /// Canonical source text of the token (quoted symbols keep their quotes).
    pub fn source_text(&self) -> String {
        match &self.kind {
            TokenKind::Symbol { quoted: true } => format!("\"{}\"", self.text),
            _ => self.text.clone(),
        }
    }
}

/// Joins tokens back into parseable text with single spaces.
pub fn token_text(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(Token::source_text)
        .collect::<Vec<_>>()
        .join(" ")
}

fn is_special(c: char) -> bool {
    matches!(
        c,
        '[' | ']' | '{' | '}' | '*' | '^' | '&' | '|' | '?' | ':' | ';' | '"'
    )
}

fn is_run_char(c: char) -> bool {
    // `.` ends a run so that `L.r` tokenizes as L followed by the reverse
    // operator; `+` and `-` end runs so `a+` is a postfix plus
    !c.is_whitespace() && !is_special(c) && c != '+' && c != '-' && c != '.'
}

/// Splits regex text into tokens.
///
/// A maximal run of ordinary characters is one symbol (`ktb`, `+Noun`,
/// `=Root`); `{abc}` yields one symbol per character with whitespace
/// ignored; `"^["` is a literal symbol with the quotes stripped; a digit
/// run right after a `^` operator is an integer; a bare `0` is epsilon.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '"' => {
                let mut j = i + 1;
                let mut name = String::new();
                loop {
                    match chars.get(j) {
                        None => {
                            return Err(Error::Syntax {
                                pos,
                                msg: "unterminated quote".into(),
                            })
                        }
                        Some(&(_, '"')) => break,
                        Some(&(p, ch)) => {
                            if ch.is_whitespace() {
                                return Err(Error::Syntax {
                                    pos: p,
                                    msg: "whitespace inside a quoted symbol".into(),
                                });
                            }
                            name.push(ch);
                            j += 1;
                        }
                    }
                }
                if name.is_empty() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "empty quoted symbol".into(),
                    });
                }
                tokens.push(Token::new(TokenKind::Symbol { quoted: true }, name, pos));
                i = j + 1;
            }
            '{' => {
                tokens.push(Token::new(TokenKind::LBrace, "{", pos));
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None => {
                            return Err(Error::Syntax {
                                pos,
                                msg: "unterminated brace".into(),
                            })
                        }
                        Some(&(_, ch)) if ch.is_whitespace() => j += 1,
                        Some(&(p, '{')) => {
                            return Err(Error::Syntax {
                                pos: p,
                                msg: "nested brace".into(),
                            })
                        }
                        Some(&(p, '}')) => {
                            tokens.push(Token::new(TokenKind::RBrace, "}", p));
                            j += 1;
                            break;
                        }
                        Some(&(p, ch)) => {
                            tokens.push(Token::new(
                                TokenKind::Symbol { quoted: false },
                                ch.to_string(),
                                p,
                            ));
                            j += 1;
                        }
                    }
                }
                i = j;
            }
            '}' => {
                return Err(Error::Syntax {
                    pos,
                    msg: "unexpected `}`".into(),
                })
            }
            '[' => {
                tokens.push(Token::new(TokenKind::LParen, "[", pos));
                i += 1;
            }
            ']' => {
                tokens.push(Token::new(TokenKind::RParen, "]", pos));
                i += 1;
            }
            '*' => {
                tokens.push(Token::new(TokenKind::Star, "*", pos));
                i += 1;
            }
            '^' => {
                tokens.push(Token::new(TokenKind::Caret, "^", pos));
                i += 1;
            }
            '&' => {
                tokens.push(Token::new(TokenKind::Amp, "&", pos));
                i += 1;
            }
            '|' => {
                tokens.push(Token::new(TokenKind::Bar, "|", pos));
                i += 1;
            }
            '?' => {
                tokens.push(Token::new(TokenKind::Any, "?", pos));
                i += 1;
            }
            ':' => {
                tokens.push(Token::new(TokenKind::Colon, ":", pos));
                i += 1;
            }
            ';' => {
                return Err(Error::Syntax {
                    pos,
                    msg: "unexpected `;`".into(),
                })
            }
            '-' => {
                tokens.push(Token::new(TokenKind::Minus, "-", pos));
                i += 1;
            }
            '+' => {
                // `+` glued to a following run begins a multicharacter
                // symbol such as +Noun; standalone it is the plus operator
                if chars.get(i + 1).is_some_and(|&(_, n)| is_run_char(n)) {
                    let mut name = String::from("+");
                    let mut j = i + 1;
                    while let Some(&(_, ch)) = chars.get(j) {
                        if is_run_char(ch) {
                            name.push(ch);
                            j += 1;
                        } else {
                            break;
                        }
                    }
                    tokens.push(Token::new(TokenKind::Symbol { quoted: false }, name, pos));
                    i = j;
                } else {
                    tokens.push(Token::new(TokenKind::Plus, "+", pos));
                    i += 1;
                }
            }
            '.' => {
                let rest: String = chars[i..].iter().map(|&(_, ch)| ch).take(4).collect();
                if rest.starts_with(".<m.") {
                    tokens.push(Token::new(TokenKind::MergeLeft, ".<m.", pos));
                    i += 4;
                } else if rest.starts_with(".m>.") {
                    tokens.push(Token::new(TokenKind::MergeRight, ".m>.", pos));
                    i += 4;
                } else if rest.starts_with(".x.") {
                    tokens.push(Token::new(TokenKind::Cross, ".x.", pos));
                    i += 3;
                } else if rest.starts_with(".o.") {
                    tokens.push(Token::new(TokenKind::Compose, ".o.", pos));
                    i += 3;
                } else if rest.starts_with(".r")
                    && chars.get(i + 2).is_none_or(|&(_, n)| !is_run_char(n))
                {
                    tokens.push(Token::new(TokenKind::DotR, ".r", pos));
                    i += 2;
                } else {
                    let (name, next) = scan_run(&chars, i);
                    tokens.push(Token::new(TokenKind::Symbol { quoted: false }, name, pos));
                    i = next;
                }
            }
            _ => {
                let (name, next) = scan_run(&chars, i);
                let after_caret = matches!(
                    tokens.last(),
                    Some(Token {
                        kind: TokenKind::Caret,
                        ..
                    })
                );
                let kind = if name.chars().all(|ch| ch.is_ascii_digit()) {
                    if after_caret {
                        let n = name.parse::<u32>().map_err(|_| Error::Syntax {
                            pos,
                            msg: format!("integer out of range: {name}"),
                        })?;
                        TokenKind::Integer(n)
                    } else if name == "0" {
                        TokenKind::Zero
                    } else {
                        TokenKind::Symbol { quoted: false }
                    }
                } else {
                    TokenKind::Symbol { quoted: false }
                };
                tokens.push(Token::new(kind, name, pos));
                i = next;
            }
        }
    }
    Ok(tokens)
}

fn scan_run(chars: &[(usize, char)], start: usize) -> (String, usize) {
    let mut name = String::new();
    let mut i = start;
    name.push(chars[i].1);
    i += 1;
    while let Some(&(_, ch)) = chars.get(i) {
        if is_run_char(ch) {
            name.push(ch);
            i += 1;
        } else {
            break;
        }
    }
    (name, i)
}

/// One side of an `a:b` pair leaf.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PairSide {
    Epsilon,
    Bare(String),
    Quoted(String),
}

/// Parse tree of the regex grammar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RegexAst {
    Epsilon,
    Any,
    /// Unquoted name: a definition reference when bound, else a symbol.
    Name(String),
    /// Quoted or brace-literal symbol; never resolved as a definition.
    Literal(String),
    Pair(PairSide, PairSide),
    Concat(Vec<RegexAst>),
    Union(Box<RegexAst>, Box<RegexAst>),
    Intersect(Box<RegexAst>, Box<RegexAst>),
    Subtract(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Repeat(Box<RegexAst>, u32),
    Reverse(Box<RegexAst>),
    /// `A .<m. B`: template on the left.
    MergeLeft(Box<RegexAst>, Box<RegexAst>),
    /// `A .m>. B`: filler on the left, template on the right.
    MergeRight(Box<RegexAst>, Box<RegexAst>),
    Cross(Box<RegexAst>, Box<RegexAst>),
    Compose(Box<RegexAst>, Box<RegexAst>),
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.at)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.at);
        self.at += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let pos = self.peek().map(|t| t.pos).unwrap_or_else(|| {
            self.tokens
                .last()
                .map(|t| t.pos + t.text.len())
                .unwrap_or(0)
        });
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    // precedence, loosest first: .o. < .x. < merge < | < & - < concat < postfix
    fn parse_compose(&mut self) -> Result<RegexAst> {
        let mut lhs = self.parse_cross()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Compose)) {
            self.bump();
            let rhs = self.parse_cross()?;
            lhs = RegexAst::Compose(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_cross(&mut self) -> Result<RegexAst> {
        let mut lhs = self.parse_merge()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Cross)) {
            self.bump();
            let rhs = self.parse_merge()?;
            lhs = RegexAst::Cross(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_merge(&mut self) -> Result<RegexAst> {
        let mut lhs = self.parse_union()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::MergeLeft) => {
                    self.bump();
                    let rhs = self.parse_union()?;
                    lhs = RegexAst::MergeLeft(Box::new(lhs), Box::new(rhs));
                }
                Some(TokenKind::MergeRight) => {
                    self.bump();
                    let rhs = self.parse_union()?;
                    lhs = RegexAst::MergeRight(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_union(&mut self) -> Result<RegexAst> {
        let mut lhs = self.parse_inter()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Bar)) {
            self.bump();
            let rhs = self.parse_inter()?;
            lhs = RegexAst::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_inter(&mut self) -> Result<RegexAst> {
        let mut lhs = self.parse_concat()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Amp) => {
                    self.bump();
                    let rhs = self.parse_concat()?;
                    lhs = RegexAst::Intersect(Box::new(lhs), Box::new(rhs));
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    let rhs = self.parse_concat()?;
                    lhs = RegexAst::Subtract(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek().map(|t| &t.kind),
            Some(
                TokenKind::Symbol { .. }
                    | TokenKind::Zero
                    | TokenKind::Any
                    | TokenKind::LParen
                    | TokenKind::LBrace
            )
        )
    }

    fn parse_concat(&mut self) -> Result<RegexAst> {
        let mut items = vec![self.parse_postfix()?];
        while self.starts_primary() {
            items.push(self.parse_postfix()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            RegexAst::Concat(items)
        })
    }

    fn parse_postfix(&mut self) -> Result<RegexAst> {
        let mut node = self.parse_primary()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => {
                    self.bump();
                    node = RegexAst::Star(Box::new(node));
                }
                Some(TokenKind::Plus) => {
                    self.bump();
                    node = RegexAst::Plus(Box::new(node));
                }
                Some(TokenKind::DotR) => {
                    self.bump();
                    node = RegexAst::Reverse(Box::new(node));
                }
                Some(TokenKind::Caret) => {
                    self.bump();
                    match self.bump() {
                        Some(Token {
                            kind: TokenKind::Integer(n),
                            ..
                        }) => node = RegexAst::Repeat(Box::new(node), *n),
                        _ => {
                            self.at = self.at.saturating_sub(1);
                            return Err(self.err("`^` must be followed by an integer"));
                        }
                    }
                }
                _ => return Ok(node),
            }
        }
    }

    fn pair_side(token: &Token) -> Option<PairSide> {
        match &token.kind {
            TokenKind::Zero => Some(PairSide::Epsilon),
            TokenKind::Symbol { quoted: true } => Some(PairSide::Quoted(token.text.clone())),
            TokenKind::Symbol { quoted: false } => Some(PairSide::Bare(token.text.clone())),
            _ => None,
        }
    }

    fn parse_primary(&mut self) -> Result<RegexAst> {
        let token = match self.peek() {
            Some(t) => t,
            None => return Err(self.err("expected an expression")),
        };
        match &token.kind {
            TokenKind::LParen => {
                self.bump();
                let inner = self.parse_compose()?;
                match self.bump() {
                    Some(Token {
                        kind: TokenKind::RParen,
                        ..
                    }) => Ok(inner),
                    _ => {
                        self.at = self.at.saturating_sub(1);
                        Err(self.err("expected `]`"))
                    }
                }
            }
            TokenKind::LBrace => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    match self.bump() {
                        Some(Token {
                            kind: TokenKind::RBrace,
                            ..
                        }) => break,
                        Some(Token {
                            kind: TokenKind::Symbol { .. },
                            text,
                            ..
                        }) => items.push(RegexAst::Literal(text.clone())),
                        _ => {
                            self.at = self.at.saturating_sub(1);
                            return Err(self.err("expected `}`"));
                        }
                    }
                }
                Ok(RegexAst::Concat(items))
            }
            TokenKind::Symbol { .. } | TokenKind::Zero => {
                let lhs = Self::pair_side(token).expect("symbol or zero");
                self.bump();
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Colon)) {
                    self.bump();
                    let rhs_token = self
                        .bump()
                        .ok_or_else(|| self.err("expected a symbol after `:`"))?;
                    let rhs = Self::pair_side(rhs_token).ok_or_else(|| Error::Syntax {
                        pos: rhs_token.pos,
                        msg: "expected a symbol or 0 after `:`".into(),
                    })?;
                    return Ok(RegexAst::Pair(lhs, rhs));
                }
                Ok(match lhs {
                    PairSide::Epsilon => RegexAst::Epsilon,
                    PairSide::Bare(name) => RegexAst::Name(name),
                    PairSide::Quoted(name) => RegexAst::Literal(name),
                })
            }
            TokenKind::Any => {
                self.bump();
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Colon)) {
                    return Err(self.err("`?` cannot appear in a pair"));
                }
                Ok(RegexAst::Any)
            }
            _ => Err(self.err(format!("unexpected token `{}`", token.text))),
        }
    }
}

/// Parses a token stream. An empty stream denotes the empty string.
pub fn parse(tokens: &[Token]) -> Result<RegexAst> {
    if tokens.is_empty() {
        return Ok(RegexAst::Epsilon);
    }
    let mut parser = Parser { tokens, at: 0 };
    let ast = parser.parse_compose()?;
    if parser.at != tokens.len() {
        return Err(parser.err("unexpected token"));
    }
    Ok(ast)
}

/// Insertion-ordered name to network bindings; rebinding replaces.
#[derive(Default, Clone)]
pub struct Definitions {
    items: Vec<(String, Network)>,
}

impl Definitions {
    pub fn new() -> Definitions {
        Definitions::default()
    }

    pub fn get(&self, name: &str) -> Option<&Network> {
        self.items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, net)| net)
    }

    pub fn bind(&mut self, name: &str, net: Network) {
        if let Some(slot) = self.items.iter_mut().find(|(n, _)| n == name) {
            slot.1 = net;
        } else {
            self.items.push((name.to_string(), net));
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|(n, _)| n.as_str())
    }
}

impl fmt::Debug for Definitions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.items.iter().map(|(n, _)| n))
            .finish()
    }
}

/// Compiles an AST onto network operations. The result is normalized.
///
/// `?` expands over the sigma of the whole expression (symbols mentioned
/// anywhere in the AST plus the sigma of every referenced definition);
/// there is no open-alphabet unknown symbol.
pub fn compile(
    ast: &RegexAst,
    defs: &Definitions,
    classes: &ClassRegistry,
    table: &Shared<SymbolTable>,
) -> Result<Network> {
    let mut sigma = BTreeSet::new();
    collect_sigma(ast, defs, table, &mut sigma);
    let net = compile_node(ast, defs, classes, table, &sigma)?;
    Ok(net.normalize())
}

/// Tokenize, parse and compile in one step.
pub fn compile_text(
    text: &str,
    defs: &Definitions,
    classes: &ClassRegistry,
    table: &Shared<SymbolTable>,
) -> Result<Network> {
    let tokens = tokenize(text)?;
    let ast = parse(&tokens)?;
    compile(&ast, defs, classes, table)
}

fn collect_sigma(
    ast: &RegexAst,
    defs: &Definitions,
    table: &Shared<SymbolTable>,
    sigma: &mut BTreeSet<SymbolId>,
) {
    match ast {
        RegexAst::Epsilon | RegexAst::Any => {}
        RegexAst::Name(name) => {
            if let Some(net) = defs.get(name) {
                sigma.extend(net.sigma().iter().copied());
            } else {
                sigma.insert(table.intern(name));
            }
        }
        RegexAst::Literal(name) => {
            sigma.insert(table.intern(name));
        }
        RegexAst::Pair(a, b) => {
            for side in [a, b] {
                match side {
                    PairSide::Epsilon => {}
                    PairSide::Bare(name) | PairSide::Quoted(name) => {
                        sigma.insert(table.intern(name));
                    }
                }
            }
        }
        RegexAst::Concat(items) => {
            for item in items {
                collect_sigma(item, defs, table, sigma);
            }
        }
        RegexAst::Union(a, b)
        | RegexAst::Intersect(a, b)
        | RegexAst::Subtract(a, b)
        | RegexAst::MergeLeft(a, b)
        | RegexAst::MergeRight(a, b)
        | RegexAst::Cross(a, b)
        | RegexAst::Compose(a, b) => {
            collect_sigma(a, defs, table, sigma);
            collect_sigma(b, defs, table, sigma);
        }
        RegexAst::Star(x) | RegexAst::Plus(x) | RegexAst::Repeat(x, _) | RegexAst::Reverse(x) => {
            collect_sigma(x, defs, table, sigma);
        }
    }
}

fn pair_symbol(side: &PairSide, table: &Shared<SymbolTable>) -> SymbolId {
    match side {
        PairSide::Epsilon => SymbolId::EPSILON,
        PairSide::Bare(name) | PairSide::Quoted(name) => table.intern(name),
    }
}

fn compile_node(
    ast: &RegexAst,
    defs: &Definitions,
    classes: &ClassRegistry,
    table: &Shared<SymbolTable>,
    sigma: &BTreeSet<SymbolId>,
) -> Result<Network> {
    match ast {
        RegexAst::Epsilon => Ok(Network::epsilon_net(table)),
        RegexAst::Any => {
            // closed alphabet: one arc per symbol of the whole expression
            let mut b = Builder::new(table);
            let s0 = b.add_state();
            let s1 = b.add_state();
            for &sym in sigma {
                b.add_arc(s0, Label::identity(sym), s1);
            }
            b.set_final(s1, true);
            Ok(b.build())
        }
        RegexAst::Name(name) => match defs.get(name) {
            Some(net) => {
                let out = net.clone();
                if !Shared::ptr_eq(out.table(), table) {
                    return Err(Error::TableMismatch);
                }
                Ok(out)
            }
            None => {
                let sym = table.intern(name);
                Ok(Network::atom(table, sym, sym))
            }
        },
        RegexAst::Literal(name) => {
            let sym = table.intern(name);
            Ok(Network::atom(table, sym, sym))
        }
        RegexAst::Pair(u, l) => Ok(Network::atom(
            table,
            pair_symbol(u, table),
            pair_symbol(l, table),
        )),
        RegexAst::Concat(items) => {
            let mut net = Network::epsilon_net(table);
            for item in items {
                net = net.concat(&compile_node(item, defs, classes, table, sigma)?)?;
            }
            Ok(net)
        }
        RegexAst::Union(a, b) => compile_node(a, defs, classes, table, sigma)?
            .union(&compile_node(b, defs, classes, table, sigma)?),
        RegexAst::Intersect(a, b) => compile_node(a, defs, classes, table, sigma)?
            .intersect(&compile_node(b, defs, classes, table, sigma)?),
        RegexAst::Subtract(a, b) => compile_node(a, defs, classes, table, sigma)?
            .subtract(&compile_node(b, defs, classes, table, sigma)?),
        RegexAst::Star(x) => {
            Ok(compile_node(x, defs, classes, table, sigma)?.closure(ClosureKind::Star))
        }
        RegexAst::Plus(x) => {
            Ok(compile_node(x, defs, classes, table, sigma)?.closure(ClosureKind::Plus))
        }
        RegexAst::Repeat(x, n) => Ok(compile_node(x, defs, classes, table, sigma)?.repeat(*n)),
        RegexAst::Reverse(x) => Ok(compile_node(x, defs, classes, table, sigma)?.reverse()),
        RegexAst::MergeLeft(t, f) => {
            let template = compile_node(t, defs, classes, table, sigma)?;
            let filler = compile_node(f, defs, classes, table, sigma)?;
            merge(&template, &filler, classes)
        }
        RegexAst::MergeRight(f, t) => {
            let template = compile_node(t, defs, classes, table, sigma)?;
            let filler = compile_node(f, defs, classes, table, sigma)?;
            merge(&template, &filler, classes)
        }
        RegexAst::Cross(a, b) => compile_node(a, defs, classes, table, sigma)?
            .crossproduct(&compile_node(b, defs, classes, table, sigma)?),
        RegexAst::Compose(a, b) => compile_node(a, defs, classes, table, sigma)?
            .compose(&compile_node(b, defs, classes, table, sigma)?),
    }
}

impl fmt::Display for RegexAst {
    /// Prints fully bracketed token text that re-parses to the same shape.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(s: &PairSide) -> String {
            match s {
                PairSide::Epsilon => "0".into(),
                PairSide::Bare(n) => n.clone(),
                PairSide::Quoted(n) => format!("\"{n}\""),
            }
        }
        match self {
            RegexAst::Epsilon => write!(f, "0"),
            RegexAst::Any => write!(f, "?"),
            RegexAst::Name(n) => write!(f, "{n}"),
            RegexAst::Literal(n) => write!(f, "\"{n}\""),
            RegexAst::Pair(u, l) => write!(f, "{} : {}", side(u), side(l)),
            RegexAst::Concat(items) => {
                if items.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = items.iter().map(|i| format!("[ {i} ]")).collect();
                write!(f, "{}", parts.join(" "))
            }
            RegexAst::Union(a, b) => write!(f, "[ {a} ] | [ {b} ]"),
            RegexAst::Intersect(a, b) => write!(f, "[ {a} ] & [ {b} ]"),
            RegexAst::Subtract(a, b) => write!(f, "[ {a} ] - [ {b} ]"),
            RegexAst::Star(x) => write!(f, "[ {x} ] *"),
            RegexAst::Plus(x) => write!(f, "[ {x} ] +"),
            RegexAst::Repeat(x, n) => write!(f, "[ {x} ] ^ {n}"),
            RegexAst::Reverse(x) => write!(f, "[ {x} ] .r"),
            RegexAst::MergeLeft(a, b) => write!(f, "[ {a} ] .<m. [ {b} ]"),
            RegexAst::MergeRight(a, b) => write!(f, "[ {a} ] .m>. [ {b} ]"),
            RegexAst::Cross(a, b) => write!(f, "[ {a} ] .x. [ {b} ]"),
            RegexAst::Compose(a, b) => write!(f, "[ {a} ] .o. [ {b} ]"),
        }
    }
}
