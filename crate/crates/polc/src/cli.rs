//! The `polc` command-line front end.
//!
//! Exit codes: 0 success, 2 input or resource error, 3 `--expect` mismatch,
//! 4 internal invariant failure (an equivalence the decision procedures
//! cross-assert failed, which is a bug, never a user error).
//!
//! Output is human-readable by default; `--machine` appends a stable block
//! whose bytes depend only on the arguments and seed.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{syntactic_with_cap, SyntacticData, DEFAULT_MONOID_CAP};
use crate::automata::{compile, parse_regex, Alphabet, Dfa, Word};
use crate::baseclass::{saturate_lattice, AtOracle, BaseClassOracle, LatticeOracle, StOracle};
use crate::decide::{decide_copol, decide_pol, decide_upol, Verdict};
use crate::forest::{build_forest, validate_forest};
use crate::laws::{run_laws, Suite};
use crate::pairs::{compute_pairs, compute_saturated, check_relation_laws, SaturatedMethod};
use crate::witness::synthesize;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "polc",
    about = "Polynomial-closure membership, pair relations, witnesses, and factorization forests \
             for regular languages",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(group(ArgGroup::new("language").required(true).args(["regex", "dfa"])))]
struct LanguageArgs {
    /// Regular expression for the language (grammar: union `|`, concatenation,
    /// star `*`, parentheses, `()` for the empty word)
    #[arg(long)]
    regex: Option<String>,

    /// Path to a DFA in the line-based text format
    #[arg(long)]
    dfa: Option<PathBuf>,

    /// Alphabet for `--regex` (default: the letters occurring in the pattern,
    /// sorted)
    #[arg(long)]
    alphabet: Option<String>,

    /// Cap on the syntactic monoid size
    #[arg(long, default_value_t = DEFAULT_MONOID_CAP)]
    monoid_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Pol,
    Copol,
    Upol,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Expect {
    Yes,
    No,
}

#[derive(Subcommand)]
enum Command {
    /// Print the syntactic ordered monoid of a language
    Monoid {
        #[command(flatten)]
        lang: LanguageArgs,
        /// Append the stable machine-readable block
        #[arg(long)]
        machine: bool,
    },
    /// Compute the pair relations of a language under a base class
    Pairs {
        #[command(flatten)]
        lang: LanguageArgs,
        /// Base class: st, at, or lattice:<path>
        #[arg(long)]
        class: String,
        #[arg(long)]
        machine: bool,
    },
    /// Decide membership in Pol(C), co-Pol(C), or UPol(C)
    Decide {
        #[command(flatten)]
        lang: LanguageArgs,
        #[arg(long)]
        class: String,
        #[arg(long, value_enum)]
        level: Level,
        /// Exit with code 3 when the verdict differs (for CI)
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long)]
        machine: bool,
    },
    /// Synthesize and verify an explicit Pol(C) expression
    Witness {
        #[command(flatten)]
        lang: LanguageArgs,
        #[arg(long)]
        class: String,
        /// Stop the construction at this level instead of 3|M|-1
        #[arg(long)]
        max_h: Option<usize>,
        #[arg(long)]
        machine: bool,
    },
    /// Build a factorization forest for a word under the syntactic morphism
    Forest {
        #[command(flatten)]
        lang: LanguageArgs,
        /// The word to factorize
        #[arg(long)]
        word: String,
        /// Forests depend only on the morphism, not on any base class
        #[arg(long)]
        class_independent: bool,
        /// Print the tree with per-node images
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Run a law suite
    Laws {
        /// One of: preorder, period, charprop, pairs, saturated, equations,
        /// forest, witness, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        machine: bool,
    },
}

/// Runs the CLI on the given arguments (without the binary name) and returns
/// the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let mut argv = vec!["polc".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; anything else is an
            // input error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) | Error::OracleContract(_) => 4,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Monoid { lang, machine } => cmd_monoid(&lang, machine),
        Command::Pairs {
            lang,
            class,
            machine,
        } => cmd_pairs(&lang, &class, machine),
        Command::Decide {
            lang,
            class,
            level,
            expect,
            machine,
        } => cmd_decide(&lang, &class, level, expect, machine),
        Command::Witness {
            lang,
            class,
            max_h,
            machine,
        } => cmd_witness(&lang, &class, max_h, machine),
        Command::Forest {
            lang,
            word,
            class_independent: _,
            dump,
            machine,
        } => cmd_forest(&lang, &word, dump, machine),
        Command::Laws {
            suite,
            seed,
            samples,
            machine,
        } => cmd_laws(&suite, seed, samples, machine),
    }
}

/// Loads the language as a canonical minimal DFA.
fn load_language(lang: &LanguageArgs) -> Result<Dfa> {
    match (&lang.regex, &lang.dfa) {
        (Some(pattern), None) => {
            let alphabet = match &lang.alphabet {
                Some(text) => Alphabet::parse(text)?,
                None => {
                    let mut letters: Vec<char> = pattern
                        .chars()
                        .filter(|c| !"()|*".contains(*c) && !c.is_whitespace())
                        .collect();
                    letters.sort_unstable();
                    letters.dedup();
                    Alphabet::new(letters).map_err(|_| {
                        Error::InvalidInput(
                            "the pattern contains no letters; pass --alphabet".into(),
                        )
                    })?
                }
            };
            Ok(compile(&parse_regex(pattern, &alphabet)?))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(Dfa::from_text(&text)?.minimize())
        }
        _ => unreachable!("clap enforces exactly one language input"),
    }
}

fn load_syntactic(lang: &LanguageArgs) -> Result<SyntacticData> {
    let l = load_language(lang)?;
    syntactic_with_cap(&l, lang.monoid_cap)
}

/// Builds the base-class oracle named by `spec` over `alphabet`.
fn load_class(spec: &str, alphabet: &Alphabet) -> Result<Box<dyn BaseClassOracle>> {
    if spec == "st" {
        return Ok(Box::new(StOracle::new(alphabet.clone())));
    }
    if spec == "at" {
        return Ok(Box::new(AtOracle::new(alphabet.clone())));
    }
    if let Some(path) = spec.strip_prefix("lattice:") {
        let generators = load_generators(Path::new(path), alphabet)?;
        let lattice = saturate_lattice(&generators)?;
        if lattice.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "lattice at {path} is over {}, language is over {alphabet}",
                lattice.alphabet()
            )));
        }
        return Ok(Box::new(LatticeOracle::new(spec.to_string(), lattice)));
    }
    Err(Error::InvalidInput(format!(
        "unknown class '{spec}' (expected st, at, or lattice:<path>)"
    )))
}

/// Lattice generators: a directory of `*.dfa` / `*.regex` files, or a
/// manifest file with `regex:<pattern>` and `dfa:<relative path>` lines
/// (blank lines and `#` comments ignored). Regexes are read over the
/// language's alphabet.
fn load_generators(path: &Path, alphabet: &Alphabet) -> Result<Vec<Dfa>> {
    let mut generators = Vec::new();
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(path)?
            .collect::<std::io::Result<Vec<_>>>()?
            .into_iter()
            .map(|e| e.path())
            .collect();
        entries.sort();
        for entry in entries {
            match entry.extension().and_then(|e| e.to_str()) {
                Some("dfa") => {
                    let text = std::fs::read_to_string(&entry)?;
                    generators.push(Dfa::from_text(&text)?.minimize());
                }
                Some("regex") => {
                    let pattern = std::fs::read_to_string(&entry)?;
                    generators.push(compile(&parse_regex(pattern.trim(), alphabet)?));
                }
                _ => {}
            }
        }
    } else {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(pattern) = line.strip_prefix("regex:") {
                generators.push(compile(&parse_regex(pattern.trim(), alphabet)?));
            } else if let Some(rel) = line.strip_prefix("dfa:") {
                let text = std::fs::read_to_string(base.join(rel.trim()))?;
                generators.push(Dfa::from_text(&text)?.minimize());
            } else {
                return Err(Error::InvalidInput(format!(
                    "bad lattice manifest line '{line}' (want 'regex:<pattern>' or 'dfa:<path>')"
                )));
            }
        }
    }
    if generators.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no lattice generators found at {}",
            path.display()
        )));
    }
    Ok(generators)
}

fn cmd_monoid(lang: &LanguageArgs, machine: bool) -> Result<i32> {
    let sd = load_syntactic(lang)?;
    let m = sd.morphism();
    let mon = m.monoid();
    let n = m.size();
    println!(
        "language: minimal DFA with {} states over {}",
        sd.source().n_states(),
        m.alphabet()
    );
    println!(
        "syntactic monoid: {n} elements, idempotent power {}",
        mon.idempotent_power()
    );
    println!("elements:");
    for s in 0..n {
        println!("  {s}: {}", m.representative_text(s));
    }
    let join = |set: &[usize]| -> String {
        set.iter()
            .map(|&s| m.representative_text(s))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let accepting: Vec<usize> = m.accepting().iter().copied().collect();
    println!("accepting: {}", join(&accepting));
    println!("idempotents: {}", join(&mon.idempotents()));
    println!("order (s ≤ t, s ≠ t):");
    for (s, t) in m.order_pairs() {
        if s != t {
            println!(
                "  {} ≤ {}",
                m.representative_text(s),
                m.representative_text(t)
            );
        }
    }
    println!("table (row · column):");
    let header: Vec<String> = (0..n).map(|t| m.representative_text(t)).collect();
    println!("  {:>6} | {}", "", header.join(" "));
    for s in 0..n {
        let row: Vec<String> = (0..n)
            .map(|t| m.representative_text(mon.mul(s, t)))
            .collect();
        println!("  {:>6} | {}", m.representative_text(s), row.join(" "));
    }
    if machine {
        println!("--- machine ---");
        println!("monoid.size {n}");
        println!("monoid.idempotent_power {}", mon.idempotent_power());
        for s in 0..n {
            println!("element {s} {}", m.representative_text(s));
        }
        let ids = |set: &[usize]| {
            set.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("accepting {}", ids(&accepting));
        println!("idempotents {}", ids(&mon.idempotents()));
        for (s, t) in m.order_pairs() {
            println!("order {s} {t}");
        }
        for s in 0..n {
            let row: Vec<String> = (0..n).map(|t| mon.mul(s, t).to_string()).collect();
            println!("table {s} {}", row.join(" "));
        }
    }
    Ok(0)
}

fn cmd_pairs(lang: &LanguageArgs, class: &str, machine: bool) -> Result<i32> {
    let sd = load_syntactic(lang)?;
    let m = sd.morphism();
    let oracle = load_class(class, m.alphabet())?;
    let plain = compute_pairs(m, oracle.as_ref())?;
    let saturated = compute_saturated(m, oracle.as_ref(), SaturatedMethod::ByClosure, Some(&plain))?;
    let n = m.size();

    println!(
        "{} pairs under {} on a monoid of {n} elements ({} saturated)",
        plain.count(),
        oracle.name(),
        saturated.count()
    );
    println!("matrix (rows: s, columns: t, ■ pair / · no pair):");
    for s in 0..n {
        let row: String = (0..n)
            .map(|t| if plain.contains(s, t) { '■' } else { '·' })
            .collect();
        println!("  {:>6} {row}", m.representative_text(s));
    }
    let report = check_relation_laws(&plain, m, Some(&saturated));
    let sat_report = check_relation_laws(&saturated, m, None);
    println!(
        "laws: reflexive {}, multiplicative {}, plain ⊆ saturated {}, saturated transitive {}",
        verdict_word(report.reflexive),
        verdict_word(report.multiplicative),
        verdict_word(report.plain_subset_of_saturated.unwrap_or(false)),
        verdict_word(sat_report.transitive.unwrap_or(false)),
    );
    if machine {
        println!("--- machine ---");
        for (s, t) in plain.related_pairs() {
            println!(
                "{} -> {}",
                m.representative_text(s),
                m.representative_text(t)
            );
        }
        for (s, t) in saturated.related_pairs() {
            println!(
                "saturated {} -> {}",
                m.representative_text(s),
                m.representative_text(t)
            );
        }
    }
    if !(report.all_hold() && sat_report.all_hold()) {
        return Err(Error::Internal(
            "a pair-relation law failed on computed relations".into(),
        ));
    }
    Ok(0)
}

fn print_verdict(level_name: &str, class_name: &str, verdict: &Verdict) {
    println!("{level_name}({class_name}): {}", verdict.answer_text());
    println!("equation: {}", verdict.equation_used);
    if let Some(v) = &verdict.violation {
        println!(
            "violation: (s, t) = ({}, {}); sides {} vs {} (elements {} and {})",
            v.s_rep, v.t_rep, v.lhs_rep, v.rhs_rep, v.lhs, v.rhs
        );
    }
}

fn cmd_decide(
    lang: &LanguageArgs,
    class: &str,
    level: Level,
    expect: Option<Expect>,
    machine: bool,
) -> Result<i32> {
    let sd = load_syntactic(lang)?;
    let m = sd.morphism();
    let oracle = load_class(class, m.alphabet())?;
    let plain = compute_pairs(m, oracle.as_ref())?;
    let (level_name, verdict) = match level {
        Level::Pol => ("pol", decide_pol(&sd, &plain)?),
        Level::Copol => ("copol", decide_copol(&sd, &plain)?),
        Level::Upol => {
            let saturated =
                compute_saturated(m, oracle.as_ref(), SaturatedMethod::ByClosure, Some(&plain))?;
            ("upol", decide_upol(&sd, &plain, &saturated)?)
        }
    };
    print_verdict(level_name, oracle.name(), &verdict);
    if machine {
        println!("--- machine ---");
        println!("verdict {}", verdict.answer_text());
        println!("equation {}", verdict.equation_used);
        if let Some(v) = &verdict.violation {
            println!("violation {} {} {} {}", v.s_rep, v.t_rep, v.lhs_rep, v.rhs_rep);
        }
    }
    if let Some(expect) = expect {
        let expected = expect == Expect::Yes;
        if expected != verdict.answer {
            eprintln!(
                "expected {}, got {}",
                if expected { "yes" } else { "no" },
                verdict.answer_text()
            );
            return Ok(3);
        }
    }
    Ok(0)
}

fn cmd_witness(lang: &LanguageArgs, class: &str, max_h: Option<usize>, machine: bool) -> Result<i32> {
    let sd = load_syntactic(lang)?;
    let m = sd.morphism();
    let oracle = load_class(class, m.alphabet())?;
    let pairs = compute_pairs(m, oracle.as_ref())?;
    let synthesis = synthesize(&sd, oracle.as_ref(), &pairs, max_h)?;
    println!(
        "verified: {}",
        if synthesis.verified() { "yes" } else { "no" }
    );
    println!("level: {}", synthesis.level());
    println!(
        "stats: {} levels built, largest automaton {} states",
        synthesis.stats().levels_built,
        synthesis.stats().largest_automaton
    );
    println!("expression:");
    println!("  {}", synthesis.expr());
    println!("legend:");
    for (name, dfa) in synthesis.expr().bases() {
        println!("  {name}:");
        for line in dfa.to_text().lines() {
            println!("    {line}");
        }
    }
    if machine {
        println!("--- machine ---");
        println!("verified {}", if synthesis.verified() { "yes" } else { "no" });
        println!("level {}", synthesis.level());
        println!("marked_degree {}", synthesis.expr().marked_degree());
        println!("expr {}", synthesis.expr());
    }
    Ok(0)
}

fn cmd_forest(lang: &LanguageArgs, word_text: &str, dump: bool, machine: bool) -> Result<i32> {
    let sd = load_syntactic(lang)?;
    let m = sd.morphism();
    let word = Word::parse(word_text, m.alphabet())?;
    let forest = build_forest(m, &word);
    let report = validate_forest(&forest, m, &word);
    let bound = 3 * m.size() - 1;
    println!(
        "forest for '{word}' over a monoid of {} elements",
        m.size()
    );
    println!("height: {} (bound 3|M|-1 = {bound})", report.height);
    println!("valid: {}", verdict_word(report.valid()));
    for failure in &report.failures {
        println!("  failure: {failure}");
    }
    if dump {
        print!("{}", forest.dump(m));
    }
    if machine {
        println!("--- machine ---");
        println!("height {}", report.height);
        println!("bound {bound}");
        println!("valid {}", verdict_word(report.valid()));
    }
    if !report.valid() || report.height > bound {
        return Err(Error::Internal(
            "forest construction broke its own contract".into(),
        ));
    }
    Ok(0)
}

fn cmd_laws(suite: &str, seed: u64, samples: usize, machine: bool) -> Result<i32> {
    let suite = Suite::parse(suite)?;
    let report = run_laws(suite, seed, samples)?;
    println!(
        "suite {} (seed {}, samples {}): {} cases",
        report.suite,
        report.seed,
        report.samples,
        report.cases.len()
    );
    for case in &report.cases {
        let mark = if case.passed { "ok " } else { "FAIL" };
        println!("  [{mark}] {} — {}", case.name, case.detail);
    }
    let failures = report.failures();
    println!(
        "{} failures out of {} cases",
        failures.len(),
        report.cases.len()
    );
    if machine {
        println!("--- machine ---");
        for case in &report.cases {
            println!(
                "case {} {}",
                if case.passed { "pass" } else { "fail" },
                case.name
            );
        }
        println!("failures {}", failures.len());
    }
    if failures.is_empty() {
        Ok(0)
    } else {
        // A failed law is a violated statement the procedures rely on.
        Ok(4)
    }
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(args.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn decide_examples_from_the_interface() {
        assert_eq!(
            run_args(&[
                "decide",
                "--class",
                "st",
                "--level",
                "pol",
                "--regex",
                "(a|b)*a(a|b)*"
            ]),
            0
        );
        // UPol(ST) contains only ∅ and A*, so expecting yes mismatches.
        assert_eq!(
            run_args(&[
                "decide",
                "--class",
                "st",
                "--level",
                "upol",
                "--regex",
                "(a|b)*a(a|b)*",
                "--expect",
                "yes"
            ]),
            3
        );
        assert_eq!(
            run_args(&[
                "decide",
                "--class",
                "st",
                "--level",
                "upol",
                "--regex",
                "(a|b)*a(a|b)*",
                "--expect",
                "no"
            ]),
            0
        );
    }

    #[test]
    fn bad_inputs_exit_with_two() {
        assert_eq!(
            run_args(&["decide", "--class", "st", "--level", "pol", "--regex", ""]),
            2
        );
        assert_eq!(
            run_args(&[
                "decide",
                "--class",
                "nope",
                "--level",
                "pol",
                "--regex",
                "a*"
            ]),
            2
        );
        assert_eq!(
            run_args(&["monoid", "--dfa", "/nonexistent/path.dfa"]),
            2
        );
        // Missing language input entirely.
        assert_eq!(run_args(&["monoid"]), 2);
    }

    #[test]
    fn laws_run_clean() {
        assert_eq!(
            run_args(&["laws", "--suite", "period", "--seed", "7", "--samples", "20"]),
            0
        );
    }

    #[test]
    fn monoid_pairs_witness_forest_smoke() {
        assert_eq!(run_args(&["monoid", "--regex", "(ab)*", "--machine"]), 0);
        assert_eq!(
            run_args(&["pairs", "--class", "at", "--regex", "(ab)*", "--machine"]),
            0
        );
        assert_eq!(
            run_args(&[
                "witness",
                "--class",
                "at",
                "--regex",
                "(a|b)*a(a|b)*",
                "--machine"
            ]),
            0
        );
        assert_eq!(
            run_args(&[
                "forest",
                "--class-independent",
                "--regex",
                "(ab)*",
                "--word",
                "abab",
                "--dump"
            ]),
            0
        );
        // Witness of a language outside Pol(C) is an input error.
        assert_eq!(
            run_args(&["witness", "--class", "st", "--regex", "(ab)*"]),
            2
        );
    }
}
