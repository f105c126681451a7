//! Line-based text format for DFAs.
//!
//! ```text
//! alphabet: ab
//! states: 3
//! initial: 0
//! finals: 0
//! 0 a 1
//! 0 b 2
//! 1 a 2
//! 1 b 0
//! 2 a 2
//! 2 b 2
//! ```
//!
//! One transition per line, `state letter state`; every (state, letter) pair
//! must appear exactly once.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Alphabet, Dfa};
use crate::{Error, Result};

impl Dfa {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet).unwrap();
        writeln!(out, "states: {}", self.n_states()).unwrap();
        writeln!(out, "initial: {}", self.initial()).unwrap();
        let finals: Vec<String> = self
            .final_states()
            .iter()
            .map(|q| q.to_string())
            .collect();
        if finals.is_empty() {
            writeln!(out, "finals:").unwrap();
        } else {
            writeln!(out, "finals: {}", finals.join(" ")).unwrap();
        }
        for q in 0..self.n_states() {
            for a in 0..self.alphabet.len() {
                writeln!(out, "{} {} {}", q, self.alphabet.letter(a), self.step(q, a)).unwrap();
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Dfa> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .peekable();

        let alphabet_line = expect_field(lines.next(), "alphabet")?;
        let alphabet = Alphabet::parse(alphabet_line.trim())?;

        let states_line = expect_field(lines.next(), "states")?;
        let n_states: usize = states_line
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad state count '{states_line}'")))?;

        let initial_line = expect_field(lines.next(), "initial")?;
        let initial: usize = initial_line
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad initial state '{initial_line}'")))?;

        let finals_line = expect_field(lines.next(), "finals")?;
        let mut finals = BTreeSet::new();
        for tok in finals_line.split_whitespace() {
            let f: usize = tok
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad final state '{tok}'")))?;
            finals.insert(f);
        }

        let mut delta = vec![vec![usize::MAX; alphabet.len()]; n_states];
        for line in lines {
            let mut toks = line.split_whitespace();
            let (from, letter, to) = match (toks.next(), toks.next(), toks.next(), toks.next()) {
                (Some(f), Some(l), Some(t), None) => (f, l, t),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bad transition line '{line}' (want 'state letter state')"
                    )))
                }
            };
            let from: usize = from
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad state '{from}'")))?;
            let to: usize = to
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad state '{to}'")))?;
            let mut chars = letter.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "letter '{letter}' must be a single character"
                    )))
                }
            };
            let a = alphabet
                .index_of(c)
                .ok_or_else(|| Error::InvalidInput(format!("letter '{c}' not in the alphabet")))?;
            if from >= n_states || to >= n_states {
                return Err(Error::InvalidInput(format!(
                    "transition '{line}' references a state out of range 0..{n_states}"
                )));
            }
            if delta[from][a] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "duplicate transition for state {from} on letter '{c}'"
                )));
            }
            delta[from][a] = to;
        }
        for (q, row) in delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                if t == usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "missing transition for state {q} on letter '{}'",
                        alphabet.letter(a)
                    )));
                }
            }
        }
        Dfa::from_parts(alphabet, n_states, initial, &finals, delta)
    }
}

fn expect_field<'a>(line: Option<&'a str>, name: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::InvalidInput(format!("missing '{name}:' line")))?;
    let prefix = format!("{name}:");
    line.strip_prefix(&prefix)
        .ok_or_else(|| Error::InvalidInput(format!("expected '{name}:', found '{line}'")))
}
