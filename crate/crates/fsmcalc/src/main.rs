use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fsmcalc::apply::Direction;
use fsmcalc::classes::ClassRegistry;
use fsmcalc::demos;
use fsmcalc::script::{run_script, write_apply_block, Session};
use fsmcalc::symbol::SymbolTable;
use fsmcalc::textio;

#[derive(Parser)]
#[command(name = "fsmcalc", version, about = "Finite-state calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script from a file, or from standard input when no file is given
    Script {
        file: Option<PathBuf>,
        /// Class definition file loaded before the script runs
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Apply a saved network to newline-separated inputs on standard input
    Apply {
        /// Apply upward (analysis: input matches the lower side)
        #[arg(short = 'u')]
        up: bool,
        /// Apply downward (generation: input matches the upper side)
        #[arg(short = 'd')]
        down: bool,
        netfile: PathBuf,
    },
    /// Build one of the bundled demonstration pipelines
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Noun reduplication: w+Noun+Plural maps to ww
    Malay {
        #[arg(long, default_value = "data/malay_roots.lex")]
        roots: PathBuf,
        /// Save the resulting network to a file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stem interdigitation from roots, templates and vocalisms
    Arabic {
        #[arg(long, default_value = "data/arabic_roots.txt")]
        roots: PathBuf,
        #[arg(long, default_value = "data/arabic_templates.txt")]
        templates: PathBuf,
        #[arg(long, default_value = "data/arabic_vocalisms.txt")]
        vocalisms: PathBuf,
        #[arg(long, default_value = "data/arabic_classes.txt")]
        classes: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the palindromes of a wordlist
    Palindromes {
        #[arg(long, default_value = "data/words_small.txt")]
        words: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(fsmcalc::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fsmcalc: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> fsmcalc::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Cmd::Script { file, classes } => {
            let mut session = Session::new();
            if let Some(path) = classes {
                session.load_classes(&std::fs::read_to_string(path)?)?;
            }
            let source = match file {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut buf = String::new();
                    io::Read::read_to_string(&mut io::stdin().lock(), &mut buf)?;
                    buf
                }
            };
            let stdin = io::stdin();
            let mut input = stdin.lock();
            run_script(&source, &mut session, &mut input, &mut out)?;
        }
        Cmd::Apply { up, down, netfile } => {
            let direction = match (up, down) {
                (true, false) => Direction::Up,
                (false, true) => Direction::Down,
                _ => {
                    return Err(fsmcalc::Error::Usage(
                        "apply needs exactly one of -u or -d".into(),
                    ))
                }
            };
            let table = SymbolTable::new();
            let net = textio::load(netfile, &table)?;
            let stdin = io::stdin();
            for line in stdin.lock().lines() {
                let line = line?;
                write_apply_block(&mut out, &net, direction, &line)?;
            }
        }
        Cmd::Demo { which } => run_demo(which, &mut out)?,
    }
    Ok(())
}

fn run_demo(which: DemoCmd, out: &mut impl Write) -> fsmcalc::Result<()> {
    match which {
        DemoCmd::Malay { roots, out: save } => {
            let table = SymbolTable::new();
            let roots_text = std::fs::read_to_string(roots)?;
            let net = demos::build_malay(&table, &roots_text)?;
            for root in demos::parse_list(&roots_text)? {
                let lexical = format!("{root}+Noun+Plural");
                let surfaces = net.apply(Direction::Down, &lexical).outputs;
                let joined: Vec<String> = surfaces.into_iter().collect();
                writeln!(out, "{lexical}\t{}", joined.join(" "))?;
            }
            if let Some(path) = save {
                textio::save(&net, path)?;
            }
        }
        DemoCmd::Arabic {
            roots,
            templates,
            vocalisms,
            classes,
            out: save,
        } => {
            let table = SymbolTable::new();
            let roots_text = std::fs::read_to_string(roots)?;
            let templates_text = std::fs::read_to_string(templates)?;
            let vocalisms_text = std::fs::read_to_string(vocalisms)?;
            let class_registry = fsmcalc::parse_class_file(
                &std::fs::read_to_string(classes)?,
                &table,
                &ClassRegistry::new(),
            )?;
            let (net, warnings) = demos::build_arabic(
                &table,
                &roots_text,
                &templates_text,
                &vocalisms_text,
                &class_registry,
            )?;
            for warning in &warnings {
                eprintln!("fsmcalc: warning: {warning}");
            }
            for root in demos::parse_list(&roots_text)? {
                for template in demos::parse_list(&templates_text)? {
                    for vocalism in demos::parse_list(&vocalisms_text)? {
                        let lexical = format!("{root}=Root{template}=Template{vocalism}=Voc");
                        let stems = net.apply(Direction::Down, &lexical).outputs;
                        let joined: Vec<String> = stems.into_iter().collect();
                        writeln!(out, "{root} {template} {vocalism}\t{}", joined.join(" "))?;
                    }
                }
            }
            if let Some(path) = save {
                textio::save(&net, path)?;
            }
        }
        DemoCmd::Palindromes { words, out: save } => {
            let table = SymbolTable::new();
            let (list, _) = fsmcalc::read_wordlist(&std::fs::read_to_string(words)?, &table)?;
            let net = demos::palindrome_network(&table, &list)?;
            if let Some(path) = save {
                textio::save(&net, path)?;
            }
            let max_len = list.iter().map(|w| w.chars().count()).max().unwrap_or(0);
            for palindrome in net.enumerate_words(max_len, fsmcalc::EnumSide::Lower) {
                writeln!(out, "{palindrome}")?;
            }
        }
    }
    Ok(())
}
