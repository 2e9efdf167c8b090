//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use common::{merge_oracle, random_network, OracleClasses};
use fsmcalc::apply::Direction;
use fsmcalc::classes::ClassRegistry;
use fsmcalc::compile_replace::compile_replace;
use fsmcalc::demos;
use fsmcalc::merge::merge;
use fsmcalc::regex::{compile_text, Definitions};
use fsmcalc::script::{run_script, Session};
use fsmcalc::symbol::SymbolTable;
use fsmcalc::{textio, EnumSide, Side};

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

fn read(file: &str) -> String {
    std::fs::read_to_string(data(file)).unwrap()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn arabic_classes(table: &std::sync::Arc<SymbolTable>) -> ClassRegistry {
    fsmcalc::parse_class_file(&read("arabic_classes.txt"), table, &ClassRegistry::new()).unwrap()
}

fn assert_within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, over the {limit:?} budget"
    );
}

/// Criterion 1: the a* example. Compile the network with upper `a *` and
/// lower `^[ a * ^]`, run compile-replace on the lower side; upward
/// application of "", "a" and "aaaa" each return exactly `a*`, and the
/// downward language of `a*` is {"", a, aa, aaa} at bound 3.
#[test]
fn criterion_1_regex_substring_compiles_in_place() {
    let started = Instant::now();
    let table = SymbolTable::new();
    let net = compile_text(
        r#"[a "*"] .x. ["^[" a "*" "^]"]"#,
        &Definitions::new(),
        &ClassRegistry::new(),
        &table,
    )
    .unwrap();
    let net = compile_replace(
        &net,
        Side::Lower,
        &Definitions::new(),
        &ClassRegistry::new(),
    )
    .unwrap();
    for input in ["", "a", "aaaa"] {
        let up = net.apply(Direction::Up, input);
        assert_eq!(up.outputs, set(&["a*"]), "up({input:?})");
        assert!(!up.truncated);
    }
    let down = net.apply(Direction::Down, "a*");
    let bounded: BTreeSet<String> = down.outputs.into_iter().filter(|w| w.len() <= 3).collect();
    assert_eq!(bounded, set(&["", "a", "aa", "aaa"]));
    assert_within(started.elapsed(), Duration::from_secs(1), "criterion 1");
    println!("criterion 1 PASS: a* substring compiled and spliced in place");
}

/// Criterion 2: Malay reduplication over the 20-root lexicon;
/// down(w+Noun+Plural) = ww for every root and up(ww) contains
/// w+Noun+Plural.
#[test]
fn criterion_2_malay_reduplication() {
    let started = Instant::now();
    let table = SymbolTable::new();
    let roots_text = read("malay_roots.lex");
    let roots = demos::parse_list(&roots_text).unwrap();
    assert_eq!(roots.len(), 20, "the demo lexicon carries 20 roots");
    assert!(roots.contains(&"bagi".to_string()));
    assert!(roots.contains(&"pelabuhan".to_string()));
    let net = demos::build_malay(&table, &roots_text).unwrap();
    for root in &roots {
        let lexical = format!("{root}+Noun+Plural");
        let doubled = format!("{root}{root}");
        let down = net.apply(Direction::Down, &lexical);
        assert_eq!(
            down.outputs,
            [doubled.clone()].into_iter().collect(),
            "{lexical}"
        );
        let up = net.apply(Direction::Up, &doubled);
        assert!(up.outputs.contains(&lexical), "{doubled}: {:?}", up.outputs);
    }
    assert_within(started.elapsed(), Duration::from_secs(1), "criterion 2");
    println!("criterion 2 PASS: 20 Malay plurals reduplicate and analyze back");
}

/// Criterion 3: the four Arabic stems are generated from their tripartite
/// lexical strings and analyzed back; the full 2x3x2 build completes and
/// every generated stem satisfies the merge subset property against its
/// template.
#[test]
fn criterion_3_arabic_interdigitation() {
    let started = Instant::now();
    let table = SymbolTable::new();
    let classes = arabic_classes(&table);
    let (net, warnings) = demos::build_arabic(
        &table,
        &read("arabic_roots.txt"),
        &read("arabic_templates.txt"),
        &read("arabic_vocalisms.txt"),
        &classes,
    )
    .unwrap();
    assert!(warnings.is_empty(), "{warnings:?}");

    for (lexical, stem) in [
        ("ktb=RootCVCVC=Templatea+=Voc", "katab"),
        ("ktb=RootCVCVC=Templateu*i=Voc", "kutib"),
        ("drs=RootCVVCVC=Templateu*i=Voc", "duuris"),
        ("ktb=RootCtVCVC=Templatea+=Voc", "ktatab"),
    ] {
        let down = net.apply(Direction::Down, lexical);
        assert!(down.outputs.contains(stem), "{lexical}: {:?}", down.outputs);
        // the expected stem is exactly the fully instantiated output; any
        // siblings keep an unfilled class slot
        let class_free: BTreeSet<String> = down
            .outputs
            .iter()
            .filter(|w| !w.contains('C') && !w.contains('V'))
            .cloned()
            .collect();
        assert_eq!(class_free, [stem.to_string()].into_iter().collect());
        let up = net.apply(Direction::Up, stem);
        assert!(up.outputs.contains(lexical), "{stem}: {:?}", up.outputs);
    }

    // subset property for every pair of the full build: same length as the
    // template, and positionwise the template symbol or one of its class
    let c_sym = table.intern("C");
    let v_sym = table.intern("V");
    let member = |class: fsmcalc::SymbolId, ch: char| {
        classes
            .members(class)
            .is_some_and(|m| m.contains(&table.intern(&ch.to_string())))
    };
    let mut stems_seen = 0usize;
    for (upper, stem) in net.bounded_relation(40) {
        let template_start = upper.find("=Root").unwrap() + "=Root".len();
        let template_end = upper.find("=Template").unwrap();
        let template = &upper[template_start..template_end];
        assert_eq!(
            template.chars().count(),
            stem.chars().count(),
            "{upper} -> {stem}"
        );
        for (t, s) in template.chars().zip(stem.chars()) {
            let ok = t == s || (t == 'C' && member(c_sym, s)) || (t == 'V' && member(v_sym, s));
            assert!(ok, "{upper} -> {stem}: slot {t} filled with {s}");
        }
        stems_seen += 1;
    }
    assert!(
        stems_seen >= 12,
        "full cross-product build generated {stems_seen} stems"
    );
    assert_within(started.elapsed(), Duration::from_secs(1), "criterion 3");
    println!("criterion 3 PASS: katab kutib duuris ktatab generated and analyzed, {stems_seen} stems pass the subset property");
}

/// Criterion 4: palindrome extraction. Exact on the 5-word demo list, and
/// on a 25,000-word lowercase wordlist the output equals the
/// string-reversal oracle within 10 seconds.
#[test]
fn criterion_4_palindrome_extraction() {
    let table = SymbolTable::new();
    let small: Vec<String> = ["dog", "god", "madam", "level", "cat"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let found = demos::extract_palindromes(&table, &small).unwrap();
    assert_eq!(found, set(&["madam", "level"]));

    // a deterministic 25k-word list with planted palindromes and reversal
    // pairs among random words
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let letters: Vec<char> = ('a'..='z').collect();
    let mut words: BTreeSet<String> = BTreeSet::new();
    for classic in [
        "madam", "level", "racecar", "noon", "deed", "kayak", "dog", "god",
    ] {
        words.insert(classic.to_string());
    }
    while words.len() < 150 {
        // palindrome: mirror a short seed around an optional middle
        let half: String = (0..rng.gen_range(1..=3))
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        let middle: String = if rng.gen_bool(0.5) {
            letters[rng.gen_range(0..letters.len())].to_string()
        } else {
            String::new()
        };
        let word: String = half
            .chars()
            .chain(middle.chars())
            .chain(half.chars().rev())
            .collect();
        words.insert(word);
    }
    while words.len() < 450 {
        // reversal pair
        let word: String = (0..rng.gen_range(3..=6))
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        let reversed: String = word.chars().rev().collect();
        words.insert(word);
        words.insert(reversed);
    }
    while words.len() < 25_000 {
        let word: String = (0..rng.gen_range(2..=8))
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        words.insert(word);
    }
    let words: Vec<String> = words.into_iter().collect();
    let expected: BTreeSet<String> = words
        .iter()
        .filter(|w| w.chars().rev().collect::<String>() == **w)
        .cloned()
        .collect();
    assert!(expected.len() > 50, "the planted list has real palindromes");

    let table = SymbolTable::new();
    let started = Instant::now();
    let found = demos::extract_palindromes(&table, &words).unwrap();
    let elapsed = started.elapsed();
    assert_eq!(found, expected);
    assert_within(elapsed, Duration::from_secs(10), "criterion 4");
    println!(
        "criterion 4 PASS: {} palindromes of 25000 words in {elapsed:?}",
        found.len()
    );
}

/// Criterion 5: 500 random merge cases against the string-level oracle.
#[test]
fn criterion_5_merge_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let ordinary = ['a', 'b', 'c', 'd', 'e'];
    for case in 0..500 {
        let table = SymbolTable::new();
        // small random classes over the ordinary symbols
        let mut oracle_classes = OracleClasses::new();
        let mut registry = ClassRegistry::new();
        for class in ['C', 'V'] {
            let size = rng.gen_range(1..=3);
            let mut members = BTreeSet::new();
            while members.len() < size {
                members.insert(ordinary[rng.gen_range(0..ordinary.len())]);
            }
            oracle_classes.insert(class, members.clone());
            registry = registry
                .define(
                    table.intern(&class.to_string()),
                    members
                        .iter()
                        .map(|c| table.intern(&c.to_string()))
                        .collect(),
                )
                .unwrap();
        }
        // template <= 6 symbols over {C, V, ordinary}; filler <= 6 ordinary
        let template_str: String = (0..rng.gen_range(0..=6))
            .map(|_| match rng.gen_range(0..4) {
                0 => 'C',
                1 => 'V',
                _ => ordinary[rng.gen_range(0..ordinary.len())],
            })
            .collect();
        let filler_str: String = (0..rng.gen_range(0..=6))
            .map(|_| ordinary[rng.gen_range(0..ordinary.len())])
            .collect();
        let template = common::word_net(&table, &template_str);
        let filler = common::word_net(&table, &filler_str);
        let merged = merge(&template, &filler, &registry).unwrap();
        let got = merged.enumerate_words(6, EnumSide::Lower);
        let expected: BTreeSet<String> = merge_oracle(&template_str, &filler_str, &oracle_classes)
            .into_iter()
            .collect();
        assert_eq!(
            got, expected,
            "case {case}: template {template_str:?}, filler {filler_str:?}, classes {oracle_classes:?}"
        );
    }
    println!("criterion 5 PASS: 500 random merges equal the string-level oracle");
}

/// Criterion 6: compile-replace is the identity on 200 random
/// delimiter-free networks, on both sides.
#[test]
fn criterion_6_compile_replace_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..200 {
        let table = SymbolTable::new();
        let net = random_network(&mut rng, &table, 8, &["a", "b", "c"], true);
        for side in [Side::Lower, Side::Upper] {
            let out =
                compile_replace(&net, side, &Definitions::new(), &ClassRegistry::new()).unwrap();
            assert!(out.equivalent(&net), "case {case} on the {side} side");
        }
    }
    println!("criterion 6 PASS: 200 delimiter-free networks came back equivalent on both sides");
}

/// Criterion 7: bidirectionality on the Malay and Arabic networks, for
/// every lower string of at most 20 symbols, exhaustively.
#[test]
fn criterion_7_bidirectionality() {
    let table = SymbolTable::new();
    let malay = demos::build_malay(&table, &read("malay_roots.lex")).unwrap();
    let classes = arabic_classes(&table);
    let (arabic, _) = demos::build_arabic(
        &table,
        &read("arabic_roots.txt"),
        &read("arabic_templates.txt"),
        &read("arabic_vocalisms.txt"),
        &classes,
    )
    .unwrap();
    let mut checked = 0usize;
    for net in [&malay, &arabic] {
        for lower in net.enumerate_words(20, EnumSide::Lower) {
            let up = net.apply(Direction::Up, &lower);
            assert!(!up.truncated);
            assert!(!up.outputs.is_empty(), "no analysis for {lower}");
            for upper in &up.outputs {
                let down = net.apply(Direction::Down, upper);
                assert!(
                    down.outputs.contains(&lower),
                    "up({lower}) = {upper} but down misses it"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 7 PASS: {checked} analysis/generation round trips");
}

/// Criterion 8: save then load is byte-identical on the demo networks
/// after normalization.
#[test]
fn criterion_8_serialization_round_trip() {
    let table = SymbolTable::new();
    let astar = compile_text(
        r#"[a "*"] .x. ["^[" a "*" "^]"]"#,
        &Definitions::new(),
        &ClassRegistry::new(),
        &table,
    )
    .and_then(|net| {
        compile_replace(
            &net,
            Side::Lower,
            &Definitions::new(),
            &ClassRegistry::new(),
        )
    })
    .unwrap();
    let malay = demos::build_malay(&table, &read("malay_roots.lex")).unwrap();
    let classes = arabic_classes(&table);
    let (arabic, _) = demos::build_arabic(
        &table,
        &read("arabic_roots.txt"),
        &read("arabic_templates.txt"),
        &read("arabic_vocalisms.txt"),
        &classes,
    )
    .unwrap();
    let (words, _) = fsmcalc::read_wordlist(&read("words_small.txt"), &table).unwrap();
    let palindromes = demos::palindrome_network(&table, &words).unwrap();

    // a script session performing the same round trip through the CLI path
    let dir = std::env::temp_dir();
    for (name, net) in [
        ("astar", &astar),
        ("malay", &malay),
        ("arabic", &arabic),
        ("palindromes", &palindromes),
    ] {
        let normalized = net.normalize();
        let first = textio::write_text(&normalized);
        let path = dir.join(format!("fsmcalc_acceptance_{name}.net"));
        textio::save(&normalized, &path).unwrap();
        let fresh = SymbolTable::new();
        let loaded = textio::load(&path, &fresh).unwrap();
        let second = textio::write_text(&loaded);
        assert_eq!(first, second, "{name} drifted through save/load");
        assert_eq!(first, std::fs::read_to_string(&path).unwrap());
        std::fs::remove_file(path).ok();
    }

    // and the session-level equivalent command agrees
    let mut session = Session::new();
    let path = dir.join("fsmcalc_acceptance_session.net");
    let script = format!(
        "define A [{{dog}}|{{god}}] .x. {{cat}}; save A {p}; load B {p}; equivalent A B;",
        p = path.display()
    );
    let mut out = Vec::new();
    run_script(
        &script,
        &mut session,
        &mut std::io::Cursor::new(String::new()),
        &mut out,
    )
    .unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "equivalent\n");
    std::fs::remove_file(path).ok();
    println!("criterion 8 PASS: demo networks round trip byte for byte");
}
