//! End-to-end runs: scripts over the bundled data files, the demo
//! builders, serialization, and the command-line binary.

mod common;

use std::collections::BTreeSet;
use std::io::Cursor;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use fsmcalc::apply::Direction;
use fsmcalc::classes::ClassRegistry;
use fsmcalc::demos;
use fsmcalc::script::{run_script, Session};
use fsmcalc::symbol::SymbolTable;
use fsmcalc::textio;
use fsmcalc::EnumSide;

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

fn run(script: &str, input: &str) -> String {
    let mut session = Session::new();
    let mut stdin = Cursor::new(input.to_string());
    let mut out = Vec::new();
    run_script(script, &mut session, &mut stdin, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn palindrome_pipeline_as_a_script() {
    let script = format!(
        r#"
read wordlist {words} L;
define L [L & L.r];
define L "^[" "[" L XX "]" "^" 2 "^]";
compile-replace lower L;
define L L .o. [? - XX]* [XX .x. "&" "["] [? - XX]* [XX .x. "]" ".r"];
define L [0 .x. "^["] L [0 .x. "^]"];
compile-replace lower L;
words L 10;
"#,
        words = data("words_small.txt").display()
    );
    assert_eq!(run(&script, ""), "level\nmadam\n");
}

#[test]
fn malay_script_applies_both_directions() {
    // the reduplication idiom straight from a script: lower side carries
    // the braces, repeat marker and delimiters as literal symbols
    let script = r#"
define M [[{bagi} +Noun +Plural] .x. ["^[" "{" {bagi} "}" "^" 2 "^]"]]
        | [[{bagi} +Noun] .x. {bagi}];
compile-replace lower M;
apply up M;
"#;
    assert_eq!(
        run(script, "bagibagi\nbagi\n"),
        "bagibagi\n\tbagi+Noun+Plural\nbagi\n\tbagi+Noun\n"
    );
}

#[test]
fn save_and_load_between_script_runs() {
    let dir = std::env::temp_dir();
    let path = dir.join("fsmcalc_test_roundtrip.net");
    let script_a = format!(
        "define A [{{dog}}|{{god}}] .x. {{cat}}; save A {};",
        path.display()
    );
    run(&script_a, "");
    let script_b = format!(
        "load B {p}; define C [{{dog}}|{{god}}] .x. {{cat}}; equivalent B C;",
        p = path.display()
    );
    assert_eq!(run(&script_b, ""), "equivalent\n");
    std::fs::remove_file(path).ok();
}

#[test]
fn malay_demo_from_data_files() {
    let table = SymbolTable::new();
    let roots_text = std::fs::read_to_string(data("malay_roots.lex")).unwrap();
    let roots = demos::parse_list(&roots_text).unwrap();
    assert_eq!(roots.len(), 20);
    let net = demos::build_malay(&table, &roots_text).unwrap();
    for root in &roots {
        let doubled = format!("{root}{root}");
        let up = net.apply(Direction::Up, &doubled);
        assert!(
            up.outputs.contains(&format!("{root}+Noun+Plural")),
            "{root}: {:?}",
            up.outputs
        );
    }
}

#[test]
fn arabic_demo_from_data_files() {
    let table = SymbolTable::new();
    let classes = fsmcalc::parse_class_file(
        &std::fs::read_to_string(data("arabic_classes.txt")).unwrap(),
        &table,
        &ClassRegistry::new(),
    )
    .unwrap();
    let (net, warnings) = demos::build_arabic(
        &table,
        &std::fs::read_to_string(data("arabic_roots.txt")).unwrap(),
        &std::fs::read_to_string(data("arabic_templates.txt")).unwrap(),
        &std::fs::read_to_string(data("arabic_vocalisms.txt")).unwrap(),
        &classes,
    )
    .unwrap();
    assert!(warnings.is_empty(), "{warnings:?}");
    let stems = net.apply(Direction::Down, "ktb=RootCVCVC=Templatea+=Voc");
    assert_eq!(stems.outputs, ["katab".to_string()].into_iter().collect());
}

#[test]
fn palindromes_match_a_string_oracle_on_a_mixed_list() {
    let table = SymbolTable::new();
    let words: Vec<String> = [
        "dog", "god", "madam", "level", "cat", "a", "noon", "kayak", "stop", "pots", "refer",
        "deed", "was", "saw", "part", "trap",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let expected: BTreeSet<String> = words
        .iter()
        .filter(|w| w.chars().rev().collect::<String>() == **w)
        .cloned()
        .collect();
    let found = demos::extract_palindromes(&table, &words).unwrap();
    assert_eq!(found, expected);
}

#[test]
fn demo_builds_are_reproducible_byte_for_byte() {
    let roots = read_to_string(data("malay_roots.lex"));
    let first = {
        let table = SymbolTable::new();
        textio::write_text(&demos::build_malay(&table, &roots).unwrap())
    };
    let second = {
        let table = SymbolTable::new();
        textio::write_text(&demos::build_malay(&table, &roots).unwrap())
    };
    assert_eq!(first, second);
}

fn read_to_string(path: PathBuf) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn serialized_demo_network_is_stable() {
    let table = SymbolTable::new();
    let net = demos::build_malay(&table, "bagi\n").unwrap();
    let text = textio::write_text(&net);
    let table2 = SymbolTable::new();
    let back = textio::read_text(&text, &table2).unwrap();
    assert_eq!(textio::write_text(&back), text);
    assert_eq!(
        back.enumerate_words(10, EnumSide::Lower),
        net.enumerate_words(10, EnumSide::Lower)
    );
}

// command-line binary

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fsmcalc"));
    cmd.current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../.."));
    cmd
}

#[test]
fn cli_demo_palindromes() {
    let out = binary()
        .args(["demo", "palindromes"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "level\nmadam\n");
}

#[test]
fn cli_demo_malay_mentions_reduplications() {
    let out = binary()
        .args(["demo", "malay"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("bagi+Noun+Plural\tbagibagi"));
    assert!(stdout.contains("pelabuhan+Noun+Plural\tpelabuhanpelabuhan"));
}

#[test]
fn cli_demo_arabic_lists_stems() {
    let out = binary()
        .args(["demo", "arabic"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("ktb CVCVC a+\tkatab"));
    assert!(stdout.contains("ktb CtVCVC a+\tktatab"));
}

#[test]
fn cli_script_and_apply_round_trip() {
    use std::io::Write;

    let dir = std::env::temp_dir();
    let net_path = dir.join("fsmcalc_test_cli.net");
    let script = format!(
        "define M [{{bagi}} +Noun +Plural] .x. {{bagibagi}}; save M {};",
        net_path.display()
    );
    let script_path = dir.join("fsmcalc_test_cli.script");
    std::fs::write(&script_path, script).unwrap();
    let out = binary()
        .args(["script", script_path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mut child = binary()
        .args(["apply", "-u", net_path.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"bagibagi\nnope\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "bagibagi\n\tbagi+Noun+Plural\nnope\n\t+?\n"
    );
    std::fs::remove_file(net_path).ok();
    std::fs::remove_file(script_path).ok();
}

#[test]
fn cli_script_with_classes_file() {
    use std::io::Write;

    let script_path = std::env::temp_dir().join("fsmcalc_test_classes.script");
    std::fs::write(
        &script_path,
        "define T {kVtVb} .<m. a+;\nwords T 8;\n\
         define U [\"^[\" \"{\" {ab} \"}\" \"^\" 2 \"^]\"] .x. [x y];\n\
         compile-replace upper U;\nwords U 8;",
    )
    .unwrap();
    let mut child = binary()
        .args([
            "script",
            script_path.to_str().unwrap(),
            "--classes",
            data("arabic_classes.txt").to_str().unwrap(),
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.as_mut().unwrap().write_all(b"").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // katab needs the V class from the file; the upper-side pass leaves the
    // lower side `xy` intact
    assert_eq!(String::from_utf8_lossy(&out.stdout), "katab\nxy\n");
    std::fs::remove_file(script_path).ok();
}

#[test]
fn truncated_apply_output_is_marked() {
    let script = "define Loop [0 .x. a]*; apply down Loop;";
    let output = run(script, "\n");
    assert!(output.starts_with("\n\t\n\ta\n\taa\n"), "{output:?}");
    assert!(output.ends_with("\t(truncated)\n"), "{output:?}");
}

#[test]
fn cli_script_errors_set_the_exit_code() {
    let script_path = std::env::temp_dir().join("fsmcalc_test_bad.script");
    std::fs::write(&script_path, "words Missing 5;").unwrap();
    let out = binary()
        .args(["script", script_path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    std::fs::remove_file(script_path).ok();
}
