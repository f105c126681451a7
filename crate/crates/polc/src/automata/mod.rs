//! Finite-automata engine: alphabets, words, NFAs, and canonical minimal DFAs.
//!
//! Every language-producing operation returns the unique minimal complete DFA
//! of its result, with states numbered breadth-first from the initial state
//! over the ordered alphabet. Equal languages therefore produce structurally
//! identical values, so `==` on [`Dfa`] decides language equality for values
//! built by this module (and is cross-checked by [`Dfa::equivalent`], which
//! works on arbitrary complete DFAs).

mod format;
mod regex;

pub use regex::parse_regex;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::{Error, Result};

/// An ordered, non-empty set of distinct letters.
///
/// The ordering is fixed at construction and drives all canonical numbering
/// and shortlex tie-breaking downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Alphabet> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::InvalidInput("alphabet must be non-empty".into()));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::InvalidInput(format!(
                    "duplicate letter '{c}' in alphabet"
                )));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Alphabet from the characters of a string, in order.
    pub fn parse(text: &str) -> Result<Alphabet> {
        Alphabet::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, idx: usize) -> char {
        self.letters[idx]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&x| x == c)
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word over some alphabet; possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<char>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: vec![] }
    }

    /// Parses `text`, rejecting letters outside `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        for (offset, c) in text.char_indices() {
            if alphabet.index_of(c).is_none() {
                return Err(Error::Syntax {
                    offset,
                    message: format!("letter '{c}' is not in the alphabet {alphabet}"),
                });
            }
        }
        Ok(Word {
            letters: text.chars().collect(),
        })
    }

    pub fn from_letters(letters: Vec<char>) -> Word {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    /// Shortlex order: by length first, then letter-wise by alphabet position.
    pub fn shortlex_cmp(&self, other: &Word, alphabet: &Alphabet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let key = |w: &Word| -> Vec<usize> {
                w.letters
                    .iter()
                    .map(|&c| alphabet.index_of(c).unwrap_or(usize::MAX))
                    .collect()
            };
            key(self).cmp(&key(other))
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A nondeterministic finite automaton with epsilon moves.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    n_states: usize,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    /// `step[q][a]` lists the targets of `q` on letter index `a`.
    step: Vec<Vec<Vec<usize>>>,
    /// `eps[q]` lists the epsilon targets of `q`.
    eps: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, n_states: usize) -> Nfa {
        let k = alphabet.len();
        Nfa {
            alphabet,
            n_states,
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
            step: vec![vec![Vec::new(); k]; n_states],
            eps: vec![Vec::new(); n_states],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn add_state(&mut self) -> usize {
        self.n_states += 1;
        self.step.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.push(Vec::new());
        self.n_states - 1
    }

    pub fn mark_initial(&mut self, q: usize) {
        assert!(q < self.n_states);
        self.initials.insert(q);
    }

    pub fn mark_final(&mut self, q: usize) {
        assert!(q < self.n_states);
        self.finals.insert(q);
    }

    pub fn add_transition(&mut self, from: usize, letter: Option<char>, to: usize) {
        assert!(from < self.n_states && to < self.n_states);
        match letter {
            Some(c) => {
                let a = self
                    .alphabet
                    .index_of(c)
                    .expect("transition letter not in alphabet");
                self.step[from][a].push(to);
            }
            None => self.eps[from].push(to),
        }
    }

    fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    /// Direct simulation; used as the independent membership route in tests.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut cur = self.eps_closure(&self.initials);
        for &c in w.letters() {
            let a = match self.alphabet.index_of(c) {
                Some(a) => a,
                None => return false,
            };
            let mut next = BTreeSet::new();
            for &q in &cur {
                next.extend(self.step[q][a].iter().copied());
            }
            cur = self.eps_closure(&next);
        }
        cur.iter().any(|q| self.finals.contains(q))
    }
}

/// A complete deterministic finite automaton.
///
/// States are `0..n`, the transition function is total, and values produced
/// by this module are minimal with canonical breadth-first numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    finals: Vec<bool>,
    /// `delta[q][a]` is the successor of `q` on letter index `a`.
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Builds a DFA from explicit parts, validating completeness and ranges.
    /// The result is not canonicalized; call [`Dfa::minimize`] for that.
    pub fn from_parts(
        alphabet: Alphabet,
        n_states: usize,
        initial: usize,
        finals: &BTreeSet<usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Dfa> {
        if n_states == 0 {
            return Err(Error::InvalidInput("a DFA needs at least one state".into()));
        }
        if initial >= n_states {
            return Err(Error::InvalidInput(format!(
                "initial state {initial} out of range 0..{n_states}"
            )));
        }
        if delta.len() != n_states {
            return Err(Error::InvalidInput("transition table incomplete".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidInput(format!(
                    "state {q} is missing transitions"
                )));
            }
            for &t in row {
                if t >= n_states {
                    return Err(Error::InvalidInput(format!(
                        "target state {t} out of range 0..{n_states}"
                    )));
                }
            }
        }
        let mut fin = vec![false; n_states];
        for &f in finals {
            if f >= n_states {
                return Err(Error::InvalidInput(format!(
                    "final state {f} out of range 0..{n_states}"
                )));
            }
            fin[f] = true;
        }
        Ok(Dfa {
            alphabet,
            initial,
            finals: fin,
            delta,
        })
    }

    /// The minimal DFA of the empty language: one non-final sink.
    pub fn empty_lang(alphabet: &Alphabet) -> Dfa {
        Dfa {
            alphabet: alphabet.clone(),
            initial: 0,
            finals: vec![false],
            delta: vec![vec![0; alphabet.len()]],
        }
    }

    /// The minimal DFA of the universal language: one final state.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa {
            alphabet: alphabet.clone(),
            initial: 0,
            finals: vec![true],
            delta: vec![vec![0; alphabet.len()]],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.n_states()).filter(|&q| self.finals[q]).collect()
    }

    #[inline]
    pub fn step(&self, q: usize, letter_idx: usize) -> usize {
        self.delta[q][letter_idx]
    }

    /// Runs `w` from state `q`.
    pub fn run_from(&self, q: usize, w: &Word) -> usize {
        let mut cur = q;
        for &c in w.letters() {
            let a = self
                .alphabet
                .index_of(c)
                .expect("word letter not in the DFA alphabet");
            cur = self.delta[cur][a];
        }
        cur
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.finals[self.run_from(self.initial, w)]
    }

    /// Re-wraps as an NFA (no epsilon moves).
    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.n_states());
        nfa.mark_initial(self.initial);
        for q in 0..self.n_states() {
            if self.finals[q] {
                nfa.mark_final(q);
            }
            for a in 0..self.alphabet.len() {
                nfa.add_transition(q, Some(self.alphabet.letter(a)), self.delta[q][a]);
            }
        }
        nfa
    }

    /// The unique minimal complete DFA of the same language, in canonical
    /// form: state 0 initial, states numbered breadth-first over the ordered
    /// alphabet.
    pub fn minimize(&self) -> Dfa {
        let trimmed = self.trim_reachable();
        let quotient = trimmed.moore_quotient();
        quotient.bfs_renumber()
    }

    fn trim_reachable(&self) -> Dfa {
        let n = self.n_states();
        let mut map = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        map[self.initial] = 0;
        order.push(self.initial);
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.delta[q][a];
                if map[t] == usize::MAX {
                    map[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = order
            .iter()
            .map(|&q| (0..self.alphabet.len()).map(|a| map[self.delta[q][a]]).collect())
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
            delta,
        }
    }

    /// Moore partition refinement; assumes all states reachable.
    fn moore_quotient(&self) -> Dfa {
        let n = self.n_states();
        let k = self.alphabet.len();
        let mut class: Vec<usize> = self.finals.iter().map(|&f| f as usize).collect();
        let mut n_classes = 2;
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(class[self.delta[q][a]]);
                }
                let id = sig_ids.len();
                next[q] = *sig_ids.entry(sig).or_insert(id);
            }
            let count = sig_ids.len();
            if count == n_classes {
                break;
            }
            class = next;
            n_classes = count;
        }
        let mut delta = vec![vec![0usize; k]; n_classes];
        let mut finals = vec![false; n_classes];
        for q in 0..n {
            finals[class[q]] = self.finals[q];
            for a in 0..k {
                delta[class[q]][a] = class[self.delta[q][a]];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: class[self.initial],
            finals,
            delta,
        }
    }

    fn bfs_renumber(&self) -> Dfa {
        self.trim_reachable()
    }

    fn check_same_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Product automaton over reachable pairs; `accept` combines finality.
    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Dfa {
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let start = (self.initial, other.initial);
        ids.insert(start, 0);
        order.push(start);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            finals.push(accept(self.finals[p], other.finals[q]));
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                let next_id = ids.len();
                let id = *ids.entry(t).or_insert_with(|| {
                    order.push(t);
                    next_id
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals,
            delta,
        }
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.check_same_alphabet(other)?;
        Ok(self.product(other, |a, b| a || b).minimize())
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.check_same_alphabet(other)?;
        Ok(self.product(other, |a, b| a && b).minimize())
    }

    pub fn complement(&self) -> Dfa {
        let mut c = self.clone();
        for f in &mut c.finals {
            *f = !*f;
        }
        c.minimize()
    }

    /// `{w | uw ∈ L}`.
    pub fn left_quotient(&self, u: &Word) -> Dfa {
        let mut c = self.clone();
        c.initial = self.run_from(self.initial, u);
        c.minimize()
    }

    /// `{w | wu ∈ L}`.
    pub fn right_quotient(&self, u: &Word) -> Dfa {
        let mut c = self.clone();
        for q in 0..self.n_states() {
            c.finals[q] = self.finals[self.run_from(q, u)];
        }
        c.minimize()
    }

    pub fn is_empty_lang(&self) -> bool {
        self.some_word().is_none()
    }

    pub fn is_universal(&self) -> bool {
        self.complement().is_empty_lang()
    }

    /// Language inclusion `other ⊆ self`, by product reachability.
    pub fn includes(&self, other: &Dfa) -> Result<bool> {
        self.check_same_alphabet(other)?;
        let diff = self.product(other, |a, b| b && !a);
        Ok(diff.is_empty_lang())
    }

    /// Language equality, decided on arbitrary complete DFAs.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.includes(other)? && other.includes(self)?)
    }

    /// Shortlex-least accepted word, if any.
    pub fn some_word(&self) -> Option<Word> {
        let n = self.n_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        let mut hit = if self.finals[self.initial] {
            Some(self.initial)
        } else {
            None
        };
        while hit.is_none() {
            let q = queue.pop_front()?;
            for a in 0..self.alphabet.len() {
                let t = self.delta[q][a];
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    if self.finals[t] {
                        hit = Some(t);
                        break;
                    }
                    queue.push_back(t);
                }
            }
        }
        let mut letters = Vec::new();
        let mut cur = hit?;
        while let Some((p, a)) = parent[cur] {
            letters.push(self.alphabet.letter(a));
            cur = p;
        }
        letters.reverse();
        Some(Word::from_letters(letters))
    }

    /// A word accepted by `self` but not by `other`, if any.
    pub fn word_in_difference(&self, other: &Dfa) -> Result<Option<Word>> {
        self.check_same_alphabet(other)?;
        Ok(self.product(other, |a, b| a && !b).some_word())
    }

    /// Scattered-superword closure: `{v | some u ∈ L is a scattered subword
    /// of v}`, built by adding a self-loop on every letter at every state.
    pub fn upward_closure(&self) -> Dfa {
        let mut nfa = self.to_nfa();
        for q in 0..self.n_states() {
            for a in 0..self.alphabet.len() {
                nfa.add_transition(q, Some(self.alphabet.letter(a)), q);
            }
        }
        compile(&nfa)
    }

    /// Plain concatenation `L1 · L2`.
    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        self.check_same_alphabet(other)?;
        Ok(compile(&self.glue(other, None)))
    }

    /// Marked concatenation `L1 · a · L2`.
    pub fn marked_concat(&self, letter: char, other: &Dfa) -> Result<Dfa> {
        self.check_same_alphabet(other)?;
        if self.alphabet.index_of(letter).is_none() {
            return Err(Error::InvalidInput(format!(
                "marker letter '{letter}' is not in the alphabet {}",
                self.alphabet
            )));
        }
        Ok(compile(&self.glue(other, Some(letter))))
    }

    fn glue(&self, other: &Dfa, marker: Option<char>) -> Nfa {
        let off = self.n_states();
        let mut nfa = Nfa::new(self.alphabet.clone(), off + other.n_states());
        nfa.mark_initial(self.initial);
        for q in 0..self.n_states() {
            for a in 0..self.alphabet.len() {
                nfa.add_transition(q, Some(self.alphabet.letter(a)), self.delta[q][a]);
            }
            if self.finals[q] {
                nfa.add_transition(q, marker, off + other.initial);
            }
        }
        for q in 0..other.n_states() {
            for a in 0..self.alphabet.len() {
                nfa.add_transition(off + q, Some(self.alphabet.letter(a)), off + other.delta[q][a]);
            }
            if other.finals[q] {
                nfa.mark_final(off + q);
            }
        }
        nfa
    }
}

/// Subset construction followed by minimization: the unique minimal complete
/// DFA of the NFA's language, canonically numbered.
pub fn compile(nfa: &Nfa) -> Dfa {
    let k = nfa.alphabet.len();
    let start = nfa.eps_closure(&nfa.initials);
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut order: Vec<BTreeSet<usize>> = Vec::new();
    ids.insert(start.clone(), 0);
    order.push(start);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut finals: Vec<bool> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let set = order[i].clone();
        finals.push(set.iter().any(|q| nfa.finals.contains(q)));
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let mut next = BTreeSet::new();
            for &q in &set {
                next.extend(nfa.step[q][a].iter().copied());
            }
            let next = nfa.eps_closure(&next);
            let next_id = ids.len();
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                order.push(next);
                next_id
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    Dfa {
        alphabet: nfa.alphabet.clone(),
        initial: 0,
        finals,
        delta,
    }
    .minimize()
}

/// All words over `alphabet` of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in alphabet.letters() {
                let mut letters = w.letters().to_vec();
                letters.push(c);
                next.push(Word::from_letters(letters));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
