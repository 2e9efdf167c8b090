//! The bundled demonstration pipelines: full-stem reduplication for Malay
//! plurals, root/template/vocalism interdigitation for Arabic stems, and
//! palindrome extraction from a wordlist.

use std::collections::BTreeSet;
use std::sync::Arc as Shared;

use crate::apply::Direction;
use crate::classes::ClassRegistry;
use crate::compile_replace::compile_replace;
use crate::error::{Error, Result};
use crate::lexicon::{word_union, LexiconEntry, LexiconSection, LexiconSource};
use crate::network::{EnumSide, Network, Side};
use crate::regex::{compile_text, Definitions};
use crate::symbol::{SymbolId, SymbolTable, DELIM_CLOSE, DELIM_OPEN};

/// Parses a list file: one item per line, `!` and `#` comment lines and
/// blank lines ignored.
pub fn parse_list(text: &str) -> Result<Vec<String>> {
    let mut items = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('!') || line.starts_with('#') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(Error::Lexicon {
                line: idx + 1,
                msg: "an entry may not contain whitespace".into(),
            });
        }
        items.push(line.to_string());
    }
    Ok(items)
}

fn char_syms(table: &Shared<SymbolTable>, word: &str) -> Vec<SymbolId> {
    word.chars().map(|c| table.intern(&c.to_string())).collect()
}

/// Builds the Malay noun network from a root list: for each root `w` a
/// singular path (upper `w +Noun`, lower `w`) and a plural path whose lower
/// side spells the regex `^[ { w } ^ 2 ^]`, then compile-replace on the
/// lower side turns the plural paths into full-stem reduplications.
pub fn build_malay(table: &Shared<SymbolTable>, roots_text: &str) -> Result<Network> {
    let roots = parse_list(roots_text)?;
    let noun = table.intern("+Noun");
    let plural = table.intern("+Plural");
    let open = table.intern(DELIM_OPEN);
    let close = table.intern(DELIM_CLOSE);
    let lbrace = table.intern("{");
    let rbrace = table.intern("}");
    let caret = table.intern("^");
    let two = table.intern("2");

    let mut entries = Vec::new();
    for root in &roots {
        let chars = char_syms(table, root);
        let mut upper = chars.clone();
        upper.push(noun);
        entries.push(LexiconEntry {
            upper,
            lower: chars.clone(),
            continuation: None,
            line: 0,
        });
        let mut upper = chars.clone();
        upper.push(noun);
        upper.push(plural);
        let mut lower = vec![open, lbrace];
        lower.extend(&chars);
        lower.extend([rbrace, caret, two, close]);
        entries.push(LexiconEntry {
            upper,
            lower,
            continuation: None,
            line: 0,
        });
    }
    let source = LexiconSource {
        sections: vec![LexiconSection {
            name: "Root".into(),
            entries,
        }],
    };
    let lexicon = source.compile(table)?;
    compile_replace(
        &lexicon,
        Side::Lower,
        &Definitions::new(),
        &ClassRegistry::new(),
    )
}

/// Builds the Arabic stem network: per (root, template, vocalism) triple a
/// path with upper `root =Root template =Template vocalism =Voc` and lower
/// `^[ root .m>. template .<m. vocalism ^]`, then compile-replace on the
/// lower side evaluates the merges. Returns the network and a warning per
/// triple whose merge came out empty.
pub fn build_arabic(
    table: &Shared<SymbolTable>,
    roots_text: &str,
    templates_text: &str,
    vocalisms_text: &str,
    classes: &ClassRegistry,
) -> Result<(Network, Vec<String>)> {
    let roots = parse_list(roots_text)?;
    let templates = parse_list(templates_text)?;
    let vocalisms = parse_list(vocalisms_text)?;
    let root_tag = table.intern("=Root");
    let template_tag = table.intern("=Template");
    let voc_tag = table.intern("=Voc");
    let merge_right = table.intern(".m>.");
    let merge_left = table.intern(".<m.");
    let open = table.intern(DELIM_OPEN);
    let close = table.intern(DELIM_CLOSE);

    let entry = |upper: Vec<SymbolId>, lower: Vec<SymbolId>, cont: Option<&str>| LexiconEntry {
        upper,
        lower,
        continuation: cont.map(str::to_string),
        line: 0,
    };
    let mut root_entries = Vec::new();
    for root in &roots {
        let chars = char_syms(table, root);
        let mut upper = chars.clone();
        upper.push(root_tag);
        let mut lower = vec![open];
        lower.extend(&chars);
        lower.push(merge_right);
        root_entries.push(entry(upper, lower, Some("Template")));
    }
    let mut template_entries = Vec::new();
    for template in &templates {
        let chars = char_syms(table, template);
        let mut upper = chars.clone();
        upper.push(template_tag);
        let mut lower = chars.clone();
        lower.push(merge_left);
        template_entries.push(entry(upper, lower, Some("Voc")));
    }
    let mut voc_entries = Vec::new();
    for vocalism in &vocalisms {
        let chars = char_syms(table, vocalism);
        let mut upper = chars.clone();
        upper.push(voc_tag);
        let mut lower = chars.clone();
        lower.push(close);
        voc_entries.push(entry(upper, lower, None));
    }
    let source = LexiconSource {
        sections: vec![
            LexiconSection {
                name: "Root".into(),
                entries: root_entries,
            },
            LexiconSection {
                name: "Template".into(),
                entries: template_entries,
            },
            LexiconSection {
                name: "Voc".into(),
                entries: voc_entries,
            },
        ],
    };
    let lexicon = source.compile(table)?;
    let net = compile_replace(&lexicon, Side::Lower, &Definitions::new(), classes)?;

    let mut warnings = Vec::new();
    for root in &roots {
        for template in &templates {
            for vocalism in &vocalisms {
                let lexical = format!("{root}=Root{template}=Template{vocalism}=Voc");
                if net.apply(Direction::Down, &lexical).outputs.is_empty() {
                    warnings.push(format!("{root} + {template} + {vocalism} produced no stem"));
                }
            }
        }
    }
    Ok((net, warnings))
}

/// The marker symbol the palindrome pipeline inserts to mark the middle
/// and end of each doubled word.
const MARKER: &str = "XX";

/// Builds the palindrome filter network over a wordlist. The lower side of
/// the result holds exactly the palindromes of the input.
pub fn palindrome_network(table: &Shared<SymbolTable>, words: &[String]) -> Result<Network> {
    for word in words {
        if word.contains(MARKER) {
            return Err(Error::Usage(format!(
                "wordlist items may not contain the reserved marker {MARKER}"
            )));
        }
    }
    let classes = ClassRegistry::new();
    let mut defs = Definitions::new();
    defs.bind("L", word_union(words, table));

    // keep only words whose reversal is also a word
    let net = compile_text("[L & L.r]", &defs, &classes, table)?;
    defs.bind("L", net);
    // double each word with a marker after each copy: w XX w XX
    let net = compile_text(r#""^[" "[" L XX "]" "^" 2 "^]""#, &defs, &classes, table)?;
    defs.bind("L", net);
    let net = compile_replace(defs.get("L").unwrap(), Side::Lower, &defs, &classes)?;
    defs.bind("L", net);
    // rewrite the first marker to `& [` and the second to `] .r`, giving
    // lower-side strings like `d o g & [ d o g ] .r`
    let net = compile_text(
        r#"L .o. [? - XX]* [XX .x. "&" "["] [? - XX]* [XX .x. "]" ".r"]"#,
        &defs,
        &classes,
        table,
    )?;
    defs.bind("L", net);
    let net = compile_text(r#"[0 .x. "^["] L [0 .x. "^]"]"#, &defs, &classes, table)?;
    defs.bind("L", net);
    // recompiling intersects every word with its own reversal; only the
    // palindromes survive
    compile_replace(defs.get("L").unwrap(), Side::Lower, &defs, &classes)
}

/// Extracts the palindromes of a wordlist.
pub fn extract_palindromes(
    table: &Shared<SymbolTable>,
    words: &[String],
) -> Result<BTreeSet<String>> {
    if words.is_empty() {
        return Ok(BTreeSet::new());
    }
    let net = palindrome_network(table, words)?;
    let max_len = words.iter().map(|w| w.chars().count()).max().unwrap_or(0);
    Ok(net.enumerate_words(max_len, EnumSide::Lower))
}
