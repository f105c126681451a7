//! Pluggable base classes: membership and separation oracles.
//!
//! A base class is a quotienting lattice of regular languages, presented as
//! an oracle answering membership ("is L in the class?") and separation
//! ("find K in the class with L1 ⊆ K and K ∩ L2 = ∅"). Three classes ship:
//!
//! - [`StOracle`]: the degenerate lattice `{∅, A*}`.
//! - [`AtOracle`]: alphabet-testable languages, where membership of a word
//!   depends only on the set of letters occurring in it.
//! - [`LatticeOracle`]: an explicit finite lattice, obtained by saturating
//!   user-supplied generators under quotients, intersection, and union.
//!
//! Finite lattices additionally expose the canonical preorder `≤_C` on words
//! (`u ≤_C v` iff every lattice language containing `u` contains `v`) and its
//! period, both realized through the profile monoid: the image of words in
//! the product of the syntactic monoids of all lattice elements.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{generate_monoid, Morphism, DEFAULT_MONOID_CAP};
use crate::automata::{Alphabet, Dfa, Word};
use crate::bits::BitMatrix;
use crate::pairs::{PairRelation, RelationKind};
use crate::witness::PolExpr;
use crate::{Error, Result};

/// Default cap on the number of languages in a saturated lattice.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A base class `C`: membership, separation with witness, and (for finite
/// lattices) access to the underlying lattice.
///
/// Contract: a returned separator `K` satisfies `L1 ⊆ K`, `K ∩ L2 = ∅`, and
/// `member(K)`; this is asserted on every call in test builds. Oracles are
/// immutable and safe to query concurrently.
pub trait BaseClassOracle: Send + Sync {
    fn name(&self) -> &str;

    fn alphabet(&self) -> &Alphabet;

    /// Does the language of `l` belong to the class?
    fn member(&self, l: &Dfa) -> Result<bool>;

    /// A class language including `l1` and disjoint from `l2`, or `None`
    /// when the pair is not separable.
    fn separate(&self, l1: &Dfa, l2: &Dfa) -> Result<Option<Dfa>>;

    /// The underlying finite lattice, when the class is one.
    fn finite_lattice(&self) -> Option<&FiniteLattice> {
        None
    }

    /// An exact pair relation computed from class structure, bypassing the
    /// `|M|²` separation queries. `None` means "use the generic route"; an
    /// override must agree with it bit for bit.
    fn pair_relation_shortcut(&self, _m: &Morphism) -> Option<PairRelation> {
        None
    }
}

fn check_alphabets(oracle: &dyn BaseClassOracle, l: &Dfa) -> Result<()> {
    if oracle.alphabet() != l.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "oracle {} is over {}, language is over {}",
            oracle.name(),
            oracle.alphabet(),
            l.alphabet()
        )));
    }
    Ok(())
}

/// Separator contract, asserted on every call in test builds.
fn debug_check_separator(oracle: &dyn BaseClassOracle, l1: &Dfa, l2: &Dfa, k: &Dfa) {
    if cfg!(debug_assertions) {
        assert!(
            k.includes(l1).unwrap(),
            "{}: separator does not include the left language",
            oracle.name()
        );
        assert!(
            k.intersection(l2).unwrap().is_empty_lang(),
            "{}: separator meets the right language",
            oracle.name()
        );
        assert!(
            oracle.member(k).unwrap(),
            "{}: separator is not a class member",
            oracle.name()
        );
    }
}

/// The class `{∅, A*}`.
#[derive(Debug, Clone)]
pub struct StOracle {
    alphabet: Alphabet,
}

impl StOracle {
    pub fn new(alphabet: Alphabet) -> StOracle {
        StOracle { alphabet }
    }
}

impl BaseClassOracle for StOracle {
    fn name(&self) -> &str {
        "ST"
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn member(&self, l: &Dfa) -> Result<bool> {
        check_alphabets(self, l)?;
        Ok(l.is_empty_lang() || l.is_universal())
    }

    fn separate(&self, l1: &Dfa, l2: &Dfa) -> Result<Option<Dfa>> {
        check_alphabets(self, l1)?;
        check_alphabets(self, l2)?;
        let k = if l2.is_empty_lang() {
            Some(Dfa::universal(&self.alphabet))
        } else if l1.is_empty_lang() {
            Some(Dfa::empty_lang(&self.alphabet))
        } else {
            None
        };
        if let Some(k) = &k {
            debug_check_separator(self, l1, l2, k);
        }
        Ok(k)
    }

    /// Surjectivity makes every preimage non-empty, and `{∅, A*}` separates
    /// only when one side is empty, so every pair is a pair.
    fn pair_relation_shortcut(&self, m: &Morphism) -> Option<PairRelation> {
        Some(PairRelation::full(RelationKind::Plain, m.size()))
    }
}

/// A set of letters of some alphabet, as a bitmask over letter indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LetterSet(u64);

impl LetterSet {
    pub fn empty() -> LetterSet {
        LetterSet(0)
    }

    pub fn with(mut self, letter_idx: usize) -> LetterSet {
        self.0 |= 1 << letter_idx;
        self
    }

    pub fn contains(&self, letter_idx: usize) -> bool {
        self.0 >> letter_idx & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let letters: String = (0..alphabet.len())
            .filter(|&a| self.contains(a))
            .map(|a| alphabet.letter(a))
            .collect();
        format!("{{{letters}}}")
    }
}

/// The exact set `{alph(w) | w ∈ L}` of letter sets realized by words of
/// `L`, by reachability in the product of `L` with a seen-letters tracker.
pub fn alphabet_profiles(l: &Dfa) -> BTreeSet<LetterSet> {
    let k = l.alphabet().len();
    assert!(k <= 64, "alphabet too large for letter-set masks");
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = BTreeSet::new();
    let start = (l.initial(), 0u64);
    seen.insert(start);
    queue.push_back(start);
    while let Some((q, mask)) = queue.pop_front() {
        if l.is_final(q) {
            out.insert(LetterSet(mask));
        }
        for a in 0..k {
            let next = (l.step(q, a), mask | 1 << a);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// Minimal DFA of `{w | alph(w) = B}`.
pub fn letter_class_dfa(alphabet: &Alphabet, class: LetterSet) -> Dfa {
    let k = alphabet.len();
    assert!(k <= 20, "alphabet too large for letter-class automata");
    let n = 1usize << k;
    let delta: Vec<Vec<usize>> = (0..n)
        .map(|mask| (0..k).map(|a| mask | 1 << a).collect())
        .collect();
    let finals = BTreeSet::from([class.mask() as usize]);
    Dfa::from_parts(alphabet.clone(), n, 0, &finals, delta)
        .expect("letter-class automaton is well-formed")
        .minimize()
}

/// Alphabet-testable languages: membership of a word depends only on its
/// set of letters.
#[derive(Debug, Clone)]
pub struct AtOracle {
    alphabet: Alphabet,
}

impl AtOracle {
    pub fn new(alphabet: Alphabet) -> AtOracle {
        AtOracle { alphabet }
    }

    /// The least alphabet-testable language including `l`: the union of the
    /// full letter classes realized by `l`.
    pub fn closure(&self, l: &Dfa) -> Result<Dfa> {
        check_alphabets(self, l)?;
        let mut acc = Dfa::empty_lang(&self.alphabet);
        for class in alphabet_profiles(l) {
            acc = acc.union(&letter_class_dfa(&self.alphabet, class))?;
        }
        Ok(acc)
    }
}

impl BaseClassOracle for AtOracle {
    fn name(&self) -> &str {
        "AT"
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn member(&self, l: &Dfa) -> Result<bool> {
        self.closure(l)?.equivalent(l)
    }

    fn separate(&self, l1: &Dfa, l2: &Dfa) -> Result<Option<Dfa>> {
        check_alphabets(self, l2)?;
        let k = self.closure(l1)?;
        if k.intersection(l2)?.is_empty_lang() {
            debug_check_separator(self, l1, l2, &k);
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    /// `(s, t)` is a pair iff some word mapping to `s` and some word mapping
    /// to `t` realize the same letter set; per-element letter-set profiles
    /// come from one reachability pass over (element, letter-set) pairs.
    fn pair_relation_shortcut(&self, m: &Morphism) -> Option<PairRelation> {
        let k = self.alphabet.len();
        if k > 6 || m.alphabet() != &self.alphabet {
            return None;
        }
        let n = m.size();
        // profiles[s] has bit `mask` set iff some word with letter set
        // `mask` maps to s.
        let mut profiles = vec![0u64; n];
        let mut seen = vec![0u64; n];
        let mut queue = VecDeque::new();
        seen[m.monoid().neutral()] |= 1;
        queue.push_back((m.monoid().neutral(), 0u32));
        while let Some((s, mask)) = queue.pop_front() {
            profiles[s] |= 1 << mask;
            for a in 0..k {
                let next = (m.monoid().mul(s, m.letter_image(a)), mask | 1 << a);
                if seen[next.0] >> next.1 & 1 == 0 {
                    seen[next.0] |= 1 << next.1;
                    queue.push_back(next);
                }
            }
        }
        let mut bits = BitMatrix::new(n);
        for s in 0..n {
            for t in 0..n {
                bits.set(s, t, profiles[s] & profiles[t] != 0);
            }
        }
        Some(PairRelation::from_bits(RelationKind::Plain, bits))
    }
}

/// A finite quotienting lattice: canonical minimal DFAs, pairwise
/// inequivalent, containing `∅` and `A*`, closed under union, intersection,
/// and both quotients.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    alphabet: Alphabet,
    elements: Vec<Dfa>,
}

impl FiniteLattice {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn elements(&self) -> &[Dfa] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the element language-equivalent to `l`, if any.
    pub fn position_of(&self, l: &Dfa) -> Option<usize> {
        let canonical = l.minimize();
        self.elements.iter().position(|e| *e == canonical)
    }

    /// The least lattice language including `l`: the intersection of all
    /// elements that include it (an intersection over no elements is `A*`,
    /// and `A*` is always an element).
    pub fn minimal_superset(&self, l: &Dfa) -> Result<Dfa> {
        let mut acc = Dfa::universal(&self.alphabet);
        for e in &self.elements {
            if e.includes(l)? {
                acc = acc.intersection(e)?;
            }
        }
        Ok(acc)
    }

    /// Exhaustive closure check: `∅` and `A*` present, closure under union,
    /// intersection, and single-letter quotients (which implies closure
    /// under all word quotients).
    pub fn validate(&self) -> Result<()> {
        let contains = |d: &Dfa| self.elements.contains(d);
        if !contains(&Dfa::empty_lang(&self.alphabet)) || !contains(&Dfa::universal(&self.alphabet))
        {
            return Err(Error::InvalidInput("lattice must contain ∅ and A*".into()));
        }
        for (i, e) in self.elements.iter().enumerate() {
            for c in self.alphabet.letters() {
                let u = Word::from_letters(vec![*c]);
                if !contains(&e.left_quotient(&u)) || !contains(&e.right_quotient(&u)) {
                    return Err(Error::InvalidInput(format!(
                        "lattice is not closed under quotients at element {i}"
                    )));
                }
            }
            for f in &self.elements {
                if !contains(&e.union(f)?) || !contains(&e.intersection(f)?) {
                    return Err(Error::InvalidInput(format!(
                        "lattice is not closed under boolean operations at element {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The least quotienting lattice containing the generators, `∅`, and `A*`,
/// up to language equivalence: close under single-letter quotients to a
/// fixed point, then under intersection, then under union.
pub fn saturate_lattice(generators: &[Dfa]) -> Result<FiniteLattice> {
    saturate_lattice_with_cap(generators, DEFAULT_LATTICE_CAP)
}

pub fn saturate_lattice_with_cap(generators: &[Dfa], cap: usize) -> Result<FiniteLattice> {
    let alphabet = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("lattice needs at least one generator".into()))?
        .alphabet()
        .clone();
    let mut elements: Vec<Dfa> = Vec::new();
    let mut seen: HashSet<Dfa> = HashSet::new();
    let push = |d: Dfa, elements: &mut Vec<Dfa>, seen: &mut HashSet<Dfa>| -> Result<()> {
        if seen.insert(d.clone()) {
            if elements.len() >= cap {
                return Err(Error::Resource {
                    what: "lattice closure size".into(),
                    cap,
                });
            }
            elements.push(d);
        }
        Ok(())
    };

    push(Dfa::empty_lang(&alphabet), &mut elements, &mut seen)?;
    push(Dfa::universal(&alphabet), &mut elements, &mut seen)?;
    for g in generators {
        if g.alphabet() != &alphabet {
            return Err(Error::AlphabetMismatch(
                "lattice generators must share one alphabet".into(),
            ));
        }
        push(g.minimize(), &mut elements, &mut seen)?;
    }

    // Single-letter quotients to a fixed point.
    let mut i = 0;
    while i < elements.len() {
        for c in alphabet.letters() {
            let u = Word::from_letters(vec![*c]);
            let left = elements[i].left_quotient(&u);
            let right = elements[i].right_quotient(&u);
            push(left, &mut elements, &mut seen)?;
            push(right, &mut elements, &mut seen)?;
        }
        i += 1;
    }
    // Intersections, then unions; processing (i, j < i) as the list grows
    // covers every unordered pair.
    let mut i = 0;
    while i < elements.len() {
        for j in 0..i {
            let meet = elements[i].intersection(&elements[j])?;
            push(meet, &mut elements, &mut seen)?;
        }
        i += 1;
    }
    let mut i = 0;
    while i < elements.len() {
        for j in 0..i {
            let join = elements[i].union(&elements[j])?;
            push(join, &mut elements, &mut seen)?;
        }
        i += 1;
    }

    elements.sort_by(|a, b| {
        a.n_states()
            .cmp(&b.n_states())
            .then_with(|| a.to_text().cmp(&b.to_text()))
    });
    Ok(FiniteLattice { alphabet, elements })
}

/// Oracle backed by an explicit finite lattice.
#[derive(Debug, Clone)]
pub struct LatticeOracle {
    name: String,
    lattice: FiniteLattice,
}

impl LatticeOracle {
    pub fn new(name: impl Into<String>, lattice: FiniteLattice) -> LatticeOracle {
        LatticeOracle {
            name: name.into(),
            lattice,
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }
}

impl BaseClassOracle for LatticeOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &Alphabet {
        self.lattice.alphabet()
    }

    fn member(&self, l: &Dfa) -> Result<bool> {
        check_alphabets(self, l)?;
        Ok(self.lattice.position_of(l).is_some())
    }

    fn separate(&self, l1: &Dfa, l2: &Dfa) -> Result<Option<Dfa>> {
        check_alphabets(self, l1)?;
        check_alphabets(self, l2)?;
        let k = self.lattice.minimal_superset(l1)?;
        if k.intersection(l2)?.is_empty_lang() {
            debug_check_separator(self, l1, l2, &k);
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    fn finite_lattice(&self) -> Option<&FiniteLattice> {
        Some(&self.lattice)
    }
}

/// The canonical preorder `≤_C` of a finite lattice, realized on the profile
/// monoid: the image of words in the product of the syntactic monoids of all
/// lattice elements. Two words compare exactly as their profile elements do.
pub struct CanonicalPreorder {
    lattice: FiniteLattice,
    profile: Morphism,
    /// Per profile element, which lattice languages contain its words
    /// (well-defined: membership factors through each component).
    memberships: Vec<Vec<u64>>,
    leq: BitMatrix,
    period: usize,
}

impl CanonicalPreorder {
    pub fn new(lattice: &FiniteLattice) -> Result<CanonicalPreorder> {
        let alphabet = lattice.alphabet().clone();
        let k = alphabet.len();
        let components: Vec<crate::algebra::SyntacticData> = lattice
            .elements()
            .iter()
            .map(crate::algebra::syntactic)
            .collect::<Result<_>>()?;
        let neutral: Vec<u32> = components
            .iter()
            .map(|sd| sd.morphism().monoid().neutral() as u32)
            .collect();
        let generated = generate_monoid(
            &alphabet,
            neutral,
            |tuple, a| {
                tuple
                    .iter()
                    .zip(&components)
                    .map(|(&x, sd)| {
                        let m = sd.morphism();
                        m.monoid().mul(x as usize, m.letter_image(a)) as u32
                    })
                    .collect::<Vec<u32>>()
            },
            DEFAULT_MONOID_CAP,
            "profile monoid size",
        )?;
        let _ = k;
        let n = generated.monoid.size();
        let words = lattice.len().div_ceil(64);
        let mut memberships = vec![vec![0u64; words]; n];
        for (s, tuple) in generated.elements.iter().enumerate() {
            for (i, (&x, sd)) in tuple.iter().zip(&components).enumerate() {
                if sd.morphism().accepting().contains(&(x as usize)) {
                    memberships[s][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut leq = BitMatrix::new(n);
        for s in 0..n {
            for t in 0..n {
                let below = memberships[s]
                    .iter()
                    .zip(&memberships[t])
                    .all(|(x, y)| x & !y == 0);
                leq.set(s, t, below);
            }
        }
        let period = generated.monoid.idempotent_power();
        let profile = Morphism::from_generated(alphabet, generated, BTreeSet::new());
        Ok(CanonicalPreorder {
            lattice: lattice.clone(),
            profile,
            memberships,
            leq,
            period,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    /// The morphism into the profile monoid.
    pub fn profile_morphism(&self) -> &Morphism {
        &self.profile
    }

    /// `u ≤_C v`: every lattice language containing `u` contains `v`,
    /// decided on membership profiles.
    pub fn leq_words(&self, u: &Word, v: &Word) -> bool {
        self.leq_elements(self.profile.evaluate(u), self.profile.evaluate(v))
    }

    pub fn leq_elements(&self, s: usize, t: usize) -> bool {
        self.leq.get(s, t)
    }

    /// Which lattice elements contain the words mapping to profile element
    /// `s`.
    pub fn membership_profile(&self, s: usize) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&i| self.memberships[s][i / 64] >> (i % 64) & 1 == 1)
            .collect()
    }

    /// The period `p ≥ 1` with `w^{pm} ≤_C w^{pm'}` for all `w, m, m'`: the
    /// idempotent power of the profile monoid.
    pub fn period(&self) -> usize {
        self.period
    }
}

impl fmt::Debug for CanonicalPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CanonicalPreorder")
            .field("lattice_size", &self.lattice.len())
            .field("profile_size", &self.profile.size())
            .field("period", &self.period)
            .finish()
    }
}

/// Exact upward-closedness of a regular language for `≤_C`, decided through
/// profiles: for profile elements `s ≤ t`, a language meeting the preimage
/// of `s` must include the whole preimage of `t`. A language is equivalent
/// to a lattice element iff it is upward closed.
pub fn is_upward_closed(pre: &CanonicalPreorder, l: &Dfa) -> Result<bool> {
    let profile = pre.profile_morphism();
    let n = profile.size();
    let preimages: Vec<Dfa> = (0..n).map(|s| profile.preimage_dfa(s)).collect();
    for s in 0..n {
        for t in 0..n {
            if !pre.leq_elements(s, t) {
                continue;
            }
            let meets_s = !l.intersection(&preimages[s])?.is_empty_lang();
            if meets_s && !l.includes(&preimages[t])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One sampled violation of the characteristic property.
#[derive(Debug, Clone)]
pub struct CharPropViolation {
    pub x: Word,
    pub u: Word,
    pub v: Word,
    pub y: Word,
    pub ell: usize,
    pub premise: Word,
    pub conclusion: Word,
}

/// Report of a sampled characteristic-property check.
#[derive(Debug, Clone)]
pub struct CharPropReport {
    pub samples: usize,
    pub premises_hit: usize,
    pub h: usize,
    pub period: usize,
    pub violations: Vec<CharPropViolation>,
}

impl CharPropReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sampled check of the characteristic property of polynomial closure over a
/// finite lattice `D`: for `u ≤_D v` and `ℓ ≥ h`,
///
/// ```text
/// x·u^{pℓ+1}·y ∈ L  ⇒  x·u^{pℓ}·v·u^{pℓ}·y ∈ L
/// ```
///
/// where `p` is the lattice period and `h = 2n+1` for `n` the maximal number
/// of marked concatenations along any product of `expr` (the verified
/// expression for `L`). Any violation is a bug in the expression synthesis
/// or the lattice machinery and is reported with the full tuple.
pub fn check_char_property(
    l: &Dfa,
    lattice: &FiniteLattice,
    expr: &PolExpr,
    samples: usize,
    seed: u64,
) -> Result<CharPropReport> {
    let pre = CanonicalPreorder::new(lattice)?;
    let alphabet = lattice.alphabet().clone();
    let p = pre.period();
    let h = 2 * expr.marked_degree() + 1;

    // All (u, v) with |u|, |v| ≤ 3 and u ≤_D v, by enumeration.
    let short = crate::automata::words_up_to(&alphabet, 3);
    let mut comparable: Vec<(Word, Word)> = Vec::new();
    for u in &short {
        for v in &short {
            if pre.leq_words(u, v) {
                comparable.push((u.clone(), v.clone()));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_word = |rng: &mut ChaCha8Rng, max_len: usize| {
        let len = rng.gen_range(0..=max_len);
        Word::from_letters(
            (0..len)
                .map(|_| alphabet.letter(rng.gen_range(0..alphabet.len())))
                .collect(),
        )
    };

    let mut premises_hit = 0;
    let mut violations = Vec::new();
    for _ in 0..samples {
        let (u, v) = comparable[rng.gen_range(0..comparable.len())].clone();
        let x = random_word(&mut rng, 4);
        let y = random_word(&mut rng, 4);
        let ell = h + rng.gen_range(0..=2);
        let premise = x.concat(&u.repeat(p * ell + 1)).concat(&y);
        if !l.accepts(&premise) {
            continue;
        }
        premises_hit += 1;
        let conclusion = x
            .concat(&u.repeat(p * ell))
            .concat(&v)
            .concat(&u.repeat(p * ell))
            .concat(&y);
        if !l.accepts(&conclusion) {
            violations.push(CharPropViolation {
                x: x.clone(),
                u: u.clone(),
                v: v.clone(),
                y: y.clone(),
                ell,
                premise,
                conclusion,
            });
        }
    }
    Ok(CharPropReport {
        samples,
        premises_hit,
        h,
        period: p,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, parse_regex};

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn dfa(pattern: &str) -> Dfa {
        compile(&parse_regex(pattern, &ab()).unwrap())
    }

    fn word(text: &str) -> Word {
        Word::parse(text, &ab()).unwrap()
    }

    #[test]
    fn st_membership_and_separation() {
        let st = StOracle::new(ab());
        assert!(!st.member(&dfa("b*")).unwrap());
        assert!(st.member(&Dfa::empty_lang(&ab())).unwrap());
        assert!(st.member(&Dfa::universal(&ab())).unwrap());

        let w = st
            .separate(&Dfa::empty_lang(&ab()), &dfa("b*"))
            .unwrap()
            .unwrap();
        assert!(w.is_empty_lang());
        let w = st
            .separate(&dfa("b*"), &Dfa::empty_lang(&ab()))
            .unwrap()
            .unwrap();
        assert!(w.is_universal());
        assert!(st.separate(&dfa("b*"), &dfa("a*")).unwrap().is_none());
    }

    #[test]
    fn alphabet_profiles_examples() {
        let profiles = alphabet_profiles(&dfa("b*"));
        let expected: BTreeSet<LetterSet> =
            BTreeSet::from([LetterSet::empty(), LetterSet::empty().with(1)]);
        assert_eq!(profiles, expected);

        let profiles = alphabet_profiles(&dfa("(ab)*"));
        let expected: BTreeSet<LetterSet> = BTreeSet::from([
            LetterSet::empty(),
            LetterSet::empty().with(0).with(1),
        ]);
        assert_eq!(profiles, expected);

        assert!(alphabet_profiles(&Dfa::empty_lang(&ab())).is_empty());
    }

    #[test]
    fn at_membership() {
        let at = AtOracle::new(ab());
        assert!(at.member(&dfa("b*")).unwrap());
        assert!(!at.member(&dfa("(ab)*")).unwrap());
        assert!(at.member(&dfa("(a|b)*a(a|b)*")).unwrap());
        assert!(at.member(&Dfa::empty_lang(&ab())).unwrap());
    }

    #[test]
    fn at_separation_finds_the_minimal_superset() {
        let at = AtOracle::new(ab());
        let w = at.separate(&dfa("b*"), &dfa("a(a|b)*")).unwrap().unwrap();
        assert!(w.equivalent(&dfa("b*")).unwrap());

        // alph(ab) = alph(ba), so no AT superset of {ab} avoids {ba}; the
        // computed minimal superset must intersect the right language.
        assert!(at.separate(&dfa("ab"), &dfa("ba")).unwrap().is_none());
        let superset = at.closure(&dfa("ab")).unwrap();
        let meet = superset.intersection(&dfa("ba")).unwrap();
        assert_eq!(meet.some_word(), Some(word("ba")));
    }

    #[test]
    fn saturation_of_b_star() {
        let lat = saturate_lattice(&[dfa("b*")]).unwrap();
        assert_eq!(lat.len(), 3);
        assert!(lat.position_of(&Dfa::empty_lang(&ab())).is_some());
        assert!(lat.position_of(&Dfa::universal(&ab())).is_some());
        assert!(lat.position_of(&dfa("b*")).is_some());
        lat.validate().unwrap();
    }

    #[test]
    fn saturation_of_the_universal_language() {
        let lat = saturate_lattice(&[Dfa::universal(&ab())]).unwrap();
        assert_eq!(lat.len(), 2);
        lat.validate().unwrap();
    }

    #[test]
    fn saturation_of_contains_a() {
        let lat = saturate_lattice(&[dfa("(a|b)*a(a|b)*")]).unwrap();
        assert_eq!(lat.len(), 3);
        lat.validate().unwrap();
    }

    #[test]
    fn saturation_of_ab_star_is_closed() {
        let lat = saturate_lattice(&[dfa("(ab)*")]).unwrap();
        assert!(lat.len() >= 6);
        lat.validate().unwrap();
    }

    #[test]
    fn saturation_cap_is_enforced() {
        match saturate_lattice_with_cap(&[dfa("(ab)*")], 4) {
            Err(Error::Resource { cap, .. }) => assert_eq!(cap, 4),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn lattice_oracle_contract() {
        let lat = saturate_lattice(&[dfa("b*")]).unwrap();
        let oracle = LatticeOracle::new("D", lat);
        assert!(oracle.member(&dfa("b*")).unwrap());
        assert!(!oracle.member(&dfa("a*")).unwrap());
        // b* separates b* from the a-starting words.
        let w = oracle
            .separate(&dfa("b*"), &dfa("a(a|b)*"))
            .unwrap()
            .unwrap();
        assert!(w.equivalent(&dfa("b*")).unwrap());
        // No element of {∅, b*, A*} separates a* from b-starting words.
        assert!(oracle
            .separate(&dfa("a*"), &dfa("b(a|b)*"))
            .unwrap()
            .is_none());
    }

    #[test]
    fn canonical_preorder_on_the_b_star_lattice() {
        let lat = saturate_lattice(&[dfa("b*")]).unwrap();
        let pre = CanonicalPreorder::new(&lat).unwrap();
        assert!(pre.leq_words(&word("a"), &word("b")));
        assert!(!pre.leq_words(&word("b"), &word("a")));
        assert!(pre.leq_words(&word("ab"), &word("ab")));
        assert_eq!(pre.period(), 1);
    }

    #[test]
    fn canonical_preorder_matches_direct_membership() {
        // u ≤_C v iff every lattice language containing u contains v,
        // checked directly against the element DFAs on sampled words.
        for pattern in ["b*", "(a|b)*a(a|b)*"] {
            let lat = saturate_lattice(&[dfa(pattern)]).unwrap();
            let pre = CanonicalPreorder::new(&lat).unwrap();
            let words = crate::automata::words_up_to(&ab(), 4);
            for u in words.iter().step_by(3) {
                for v in words.iter().step_by(5) {
                    let direct = lat
                        .elements()
                        .iter()
                        .all(|e| !e.accepts(u) || e.accepts(v));
                    assert_eq!(pre.leq_words(u, v), direct, "{pattern}: {u} vs {v}");
                }
            }
        }
    }

    #[test]
    fn preorder_is_compatible_with_concatenation() {
        let lat = saturate_lattice(&[dfa("(ab)*")]).unwrap();
        let pre = CanonicalPreorder::new(&lat).unwrap();
        let n = pre.profile_morphism().size();
        let m = pre.profile_morphism().monoid();
        for s1 in 0..n {
            for t1 in 0..n {
                if !pre.leq_elements(s1, t1) {
                    continue;
                }
                for s2 in 0..n {
                    for t2 in 0..n {
                        if pre.leq_elements(s2, t2) {
                            assert!(pre.leq_elements(m.mul(s1, s2), m.mul(t1, t2)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn period_of_the_ab_star_lattice_is_two() {
        let lat = saturate_lattice(&[dfa("(ab)*")]).unwrap();
        let pre = CanonicalPreorder::new(&lat).unwrap();
        assert_eq!(pre.period(), 2);
    }

    #[test]
    fn period_fact_holds_on_sampled_words() {
        for pattern in ["b*", "(ab)*"] {
            let lat = saturate_lattice(&[dfa(pattern)]).unwrap();
            let pre = CanonicalPreorder::new(&lat).unwrap();
            let p = pre.period();
            for w in crate::automata::words_up_to(&ab(), 3) {
                for m in 1..=3usize {
                    for m2 in 1..=3usize {
                        assert!(
                            pre.leq_words(&w.repeat(p * m), &w.repeat(p * m2)),
                            "{pattern}: {w}^{} vs {w}^{}",
                            p * m,
                            p * m2
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn upper_sets_of_the_preorder_are_exactly_the_lattice_languages() {
        let lat = saturate_lattice(&[dfa("b*")]).unwrap();
        let pre = CanonicalPreorder::new(&lat).unwrap();
        for pattern in ["b*", "a*", "(ab)*", "(a|b)*", "(a|b)*a(a|b)*"] {
            let l = dfa(pattern);
            let in_lattice = lat.position_of(&l).is_some();
            let upward_closed = is_upward_closed(&pre, &l).unwrap();
            assert_eq!(in_lattice, upward_closed, "{pattern}");
        }
    }
}
