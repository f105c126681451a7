//! Finite ordered monoids and the syntactic morphism of a regular language.
//!
//! The syntactic monoid is computed as the transition monoid of the minimal
//! DFA: each word's image is the state transformation it induces, and two
//! words are equivalent exactly when they induce the same transformation.
//! The syntactic order is decided through the state-inclusion preorder of the
//! minimal DFA (`p ⊑ q` iff every word accepted from `p` is accepted from
//! `q`): `s ≤ t` holds iff `f_s(q) ⊑ f_t(q)` for every state `q`, which
//! coincides with the definitional context check quantified over monoid
//! elements because every context's effect factors through its image.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{Alphabet, Dfa, Word};
use crate::bits::BitMatrix;
use crate::{Error, Result};

/// Default cap on the number of syntactic-monoid elements; transition
/// monoids can be exponential in the DFA size and the tool must fail loudly
/// rather than hang.
pub const DEFAULT_MONOID_CAP: usize = 5000;

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    n: usize,
    table: Vec<u32>,
    neutral: usize,
    idempotent_power: usize,
}

impl FiniteMonoid {
    /// Validates associativity and the neutral element, then computes the
    /// idempotent power. `table[s * n + t]` is the product `s · t`.
    pub fn new(n: usize, table: Vec<usize>, neutral: usize) -> Result<FiniteMonoid> {
        if n == 0 || neutral >= n || table.len() != n * n {
            return Err(Error::InvalidInput(
                "monoid table must be n×n with a neutral element in range".into(),
            ));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidInput("monoid table entry out of range".into()));
        }
        let table: Vec<u32> = table.iter().map(|&x| x as u32).collect();
        let at = |s: usize, t: usize| table[s * n + t] as usize;
        for s in 0..n {
            if at(neutral, s) != s || at(s, neutral) != s {
                return Err(Error::InvalidInput(format!(
                    "element {neutral} is not a two-sided neutral element"
                )));
            }
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if at(at(s, t), u) != at(s, at(t, u)) {
                        return Err(Error::InvalidInput(format!(
                            "multiplication is not associative at ({s}, {t}, {u})"
                        )));
                    }
                }
            }
        }
        let mut m = FiniteMonoid {
            n,
            table,
            neutral,
            idempotent_power: 1,
        };
        m.idempotent_power = m.compute_idempotent_power()?;
        Ok(m)
    }

    /// For tables obtained by closing transformations under composition,
    /// where associativity holds by construction.
    pub(crate) fn from_closure(n: usize, table: Vec<u32>, neutral: usize) -> Result<FiniteMonoid> {
        let mut m = FiniteMonoid {
            n,
            table,
            neutral,
            idempotent_power: 1,
        };
        m.idempotent_power = m.compute_idempotent_power()?;
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn neutral(&self) -> usize {
        self.neutral
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.n + t] as usize
    }

    /// `s^k` for `k ≥ 0` (`s^0` is the neutral element).
    pub fn pow(&self, s: usize, k: usize) -> usize {
        let mut acc = self.neutral;
        let mut base = s;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The least `k ≥ 1` such that `s^k` is idempotent for every `s`.
    pub fn idempotent_power(&self) -> usize {
        self.idempotent_power
    }

    /// The idempotent `s^ω` generated by `s`.
    pub fn omega_of(&self, s: usize) -> usize {
        self.pow(s, self.idempotent_power)
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&s| self.is_idempotent(s)).collect()
    }

    /// Least `k ≥ 1` with `(s^k)² = s^k` for every `s`: the least common
    /// multiple of the cycle lengths of all elements, rounded up to clear
    /// every element's tail.
    fn compute_idempotent_power(&self) -> Result<usize> {
        let mut period_lcm: u128 = 1;
        let mut max_tail: usize = 1;
        for s in 0..self.n {
            // Walk s, s², s³, … until the first repeat.
            let mut seen: HashMap<usize, usize> = HashMap::new();
            let mut x = s;
            let mut exp = 1usize;
            let (tail, period) = loop {
                if let Some(&first) = seen.get(&x) {
                    break (first, exp - first);
                }
                seen.insert(x, exp);
                x = self.mul(x, s);
                exp += 1;
            };
            max_tail = max_tail.max(tail);
            period_lcm = lcm_u128(period_lcm, period as u128);
            if period_lcm > u64::MAX as u128 {
                return Err(Error::InvalidInput(
                    "idempotent power overflows; monoid is out of the supported range".into(),
                ));
            }
        }
        let p = period_lcm as usize;
        let k = p * max_tail.div_ceil(p);
        for s in 0..self.n {
            let e = self.pow(s, k);
            debug_assert_eq!(self.mul(e, e), e, "idempotent power broken for {s}");
        }
        Ok(k)
    }
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        return a;
    }
    a / gcd_u128(a, b) * b
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite monoid with a compatible partial order.
#[derive(Debug, Clone)]
pub struct OrderedMonoid {
    monoid: FiniteMonoid,
    leq: BitMatrix,
}

impl OrderedMonoid {
    /// Validates that `leq_pairs` (plus reflexivity) is a partial order
    /// compatible with the multiplication, checking compatibility
    /// exhaustively over related pairs.
    pub fn new(monoid: FiniteMonoid, leq_pairs: &[(usize, usize)]) -> Result<OrderedMonoid> {
        let n = monoid.size();
        let mut leq = BitMatrix::identity(n);
        for &(s, t) in leq_pairs {
            if s >= n || t >= n {
                return Err(Error::InvalidInput("order pair out of range".into()));
            }
            leq.set(s, t, true);
        }
        if !leq.is_transitive() {
            return Err(Error::InvalidInput("order is not transitive".into()));
        }
        if !leq.is_antisymmetric() {
            return Err(Error::InvalidInput("order is not antisymmetric".into()));
        }
        let related = leq.related_pairs();
        for &(s1, t1) in &related {
            for &(s2, t2) in &related {
                if !leq.get(monoid.mul(s1, s2), monoid.mul(t1, t2)) {
                    return Err(Error::InvalidInput(format!(
                        "order is not compatible with multiplication: \
                         {s1} ≤ {t1} and {s2} ≤ {t2} but not {s1}·{s2} ≤ {t1}·{t2}"
                    )));
                }
            }
        }
        Ok(OrderedMonoid { monoid, leq })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq.get(s, t)
    }
}

/// `true` iff `set` is upward closed: `s ∈ set` and `s ≤ t` imply `t ∈ set`.
pub fn is_upper_set(n: usize, set: &BTreeSet<usize>, leq: impl Fn(usize, usize) -> bool) -> bool {
    set.iter()
        .all(|&s| (0..n).all(|t| !leq(s, t) || set.contains(&t)))
}

/// Syntactic order via the minimal DFA: `s ≤ t` iff the transformation of
/// `s` stays state-inclusion-below that of `t` on every state. Queries cost
/// one pass over the DFA states instead of a quadratic context scan.
#[derive(Debug, Clone)]
struct SyntacticOrder {
    transformations: Vec<Vec<usize>>,
    state_leq: BitMatrix,
}

/// A surjective monoid morphism from words into a finite monoid, with a
/// shortlex-minimal representative word per element, an accepting set, and
/// an optional compatible partial order on the codomain.
#[derive(Debug, Clone)]
pub struct Morphism {
    alphabet: Alphabet,
    codomain: FiniteMonoid,
    order: Option<SyntacticOrder>,
    letter_image: Vec<usize>,
    representatives: Vec<Word>,
    accepting: BTreeSet<usize>,
}

impl Morphism {
    /// Builds a morphism from letter images, checking surjectivity (every
    /// element must be reachable as the image of some word).
    pub fn new(
        alphabet: Alphabet,
        codomain: FiniteMonoid,
        letter_image: Vec<usize>,
        accepting: BTreeSet<usize>,
    ) -> Result<Morphism> {
        if letter_image.len() != alphabet.len() {
            return Err(Error::InvalidInput(
                "need exactly one image per alphabet letter".into(),
            ));
        }
        if letter_image.iter().any(|&s| s >= codomain.size()) {
            return Err(Error::InvalidInput("letter image out of range".into()));
        }
        if accepting.iter().any(|&s| s >= codomain.size()) {
            return Err(Error::InvalidInput("accepting element out of range".into()));
        }
        let representatives = shortlex_representatives(&alphabet, &codomain, &letter_image)
            .ok_or_else(|| {
                Error::InvalidInput("morphism is not surjective: unreachable element".into())
            })?;
        Ok(Morphism {
            alphabet,
            codomain,
            order: None,
            letter_image,
            representatives,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.codomain
    }

    pub fn size(&self) -> usize {
        self.codomain.size()
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn letter_image(&self, letter_idx: usize) -> usize {
        self.letter_image[letter_idx]
    }

    /// Shortlex-minimal word mapping to `s`.
    pub fn representative(&self, s: usize) -> &Word {
        &self.representatives[s]
    }

    /// Representative as display text (`ε` for the empty word). All reports
    /// and violation orderings use this form.
    pub fn representative_text(&self, s: usize) -> String {
        self.representatives[s].to_string()
    }

    /// Image of a word: fold of letter images, `ε ↦` neutral.
    pub fn evaluate(&self, w: &Word) -> usize {
        let mut acc = self.codomain.neutral();
        for &c in w.letters() {
            let a = self
                .alphabet
                .index_of(c)
                .expect("word letter not in the morphism alphabet");
            acc = self.codomain.mul(acc, self.letter_image[a]);
        }
        acc
    }

    pub fn has_order(&self) -> bool {
        self.order.is_some()
    }

    /// The compatible partial order on the codomain. Panics when the
    /// morphism carries no order (only syntactic morphisms do).
    pub fn leq(&self, s: usize, t: usize) -> bool {
        let order = self.order.as_ref().expect("morphism carries no order");
        order.transformations[s]
            .iter()
            .zip(&order.transformations[t])
            .all(|(&p, &q)| order.state_leq.get(p, q))
    }

    /// All order pairs `(s, t)` with `s ≤ t`, in element order.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if self.leq(s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// The minimal DFA of `α⁻¹(s)`: the morphism viewed as an automaton with
    /// right multiplication by letter images, accepting exactly `{s}`.
    pub fn preimage_dfa(&self, s: usize) -> Dfa {
        self.recognized_dfa(&BTreeSet::from([s]))
    }

    /// The minimal DFA of `α⁻¹(F)` for an arbitrary `F ⊆ M`.
    pub fn recognized_dfa(&self, set: &BTreeSet<usize>) -> Dfa {
        let n = self.size();
        let delta: Vec<Vec<usize>> = (0..n)
            .map(|m| {
                (0..self.alphabet.len())
                    .map(|a| self.codomain.mul(m, self.letter_image[a]))
                    .collect()
            })
            .collect();
        Dfa::from_parts(self.alphabet.clone(), n, self.codomain.neutral(), set, delta)
            .expect("preimage automaton is well-formed by construction")
            .minimize()
    }
}

/// A finitely generated monoid of letter actions, with every element reached
/// by breadth-first closure from the neutral action.
pub(crate) struct GeneratedMonoid<T> {
    pub elements: Vec<T>,
    pub monoid: FiniteMonoid,
    pub letter_image: Vec<usize>,
    pub representatives: Vec<Word>,
}

/// Closes `{neutral}` under `apply` per letter. Discovery order is shortlex
/// on representatives; the multiplication table is filled through each
/// element's derivation (`s·(p·a) = (s·p)·a`), so only the closure itself
/// hashes element values.
pub(crate) fn generate_monoid<T: Clone + Eq + std::hash::Hash>(
    alphabet: &Alphabet,
    neutral: T,
    apply: impl Fn(&T, usize) -> T,
    cap: usize,
    what: &str,
) -> Result<GeneratedMonoid<T>> {
    let k = alphabet.len();
    let mut ids: HashMap<T, usize> = HashMap::new();
    let mut elements: Vec<T> = Vec::new();
    let mut reps: Vec<Word> = Vec::new();
    // (parent element, letter) producing each non-neutral element.
    let mut derivation: Vec<(usize, usize)> = Vec::new();
    ids.insert(neutral.clone(), 0);
    elements.push(neutral);
    reps.push(Word::empty());
    derivation.push((0, 0));

    let mut i = 0;
    while i < elements.len() {
        for a in 0..k {
            let g = apply(&elements[i], a);
            if !ids.contains_key(&g) {
                if elements.len() >= cap {
                    return Err(Error::Resource {
                        what: what.into(),
                        cap,
                    });
                }
                let id = elements.len();
                ids.insert(g.clone(), id);
                elements.push(g);
                let mut letters = reps[i].letters().to_vec();
                letters.push(alphabet.letter(a));
                reps.push(Word::from_letters(letters));
                derivation.push((i, a));
            }
        }
        i += 1;
    }

    let n = elements.len();
    let letter_image: Vec<usize> = (0..k).map(|a| ids[&apply(&elements[0], a)]).collect();
    let mut right_by_letter = vec![0u32; n * k];
    for (s, f) in elements.iter().enumerate() {
        for a in 0..k {
            right_by_letter[s * k + a] = ids[&apply(f, a)] as u32;
        }
    }
    let mut table = vec![0u32; n * n];
    for s in 0..n {
        table[s * n] = s as u32; // t = neutral (element 0)
        for t in 1..n {
            let (parent, a) = derivation[t];
            let sp = table[s * n + parent] as usize;
            table[s * n + t] = right_by_letter[sp * k + a];
        }
    }
    let monoid = FiniteMonoid::from_closure(n, table, 0)?;
    Ok(GeneratedMonoid {
        elements,
        monoid,
        letter_image,
        representatives: reps,
    })
}

impl Morphism {
    /// Assembles a morphism from a generated monoid whose invariants hold by
    /// construction (surjectivity, shortlex representatives).
    pub(crate) fn from_generated<T>(
        alphabet: Alphabet,
        generated: GeneratedMonoid<T>,
        accepting: BTreeSet<usize>,
    ) -> Morphism {
        Morphism {
            alphabet,
            codomain: generated.monoid,
            order: None,
            letter_image: generated.letter_image,
            representatives: generated.representatives,
            accepting,
        }
    }
}

/// Shortlex-minimal representatives via breadth-first closure from the
/// neutral element; `None` when some element is unreachable.
fn shortlex_representatives(
    alphabet: &Alphabet,
    monoid: &FiniteMonoid,
    letter_image: &[usize],
) -> Option<Vec<Word>> {
    let n = monoid.size();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[monoid.neutral()] = Some(Word::empty());
    let mut queue = VecDeque::from([monoid.neutral()]);
    while let Some(s) = queue.pop_front() {
        for a in 0..alphabet.len() {
            let t = monoid.mul(s, letter_image[a]);
            if reps[t].is_none() {
                let mut letters = reps[s].as_ref().unwrap().letters().to_vec();
                letters.push(alphabet.letter(a));
                reps[t] = Some(Word::from_letters(letters));
                queue.push_back(t);
            }
        }
    }
    reps.into_iter().collect()
}

/// The syntactic morphism of a language, onto its syntactic ordered monoid,
/// together with the minimal DFA it was computed from.
#[derive(Debug, Clone)]
pub struct SyntacticData {
    morphism: Morphism,
    source: Dfa,
}

impl SyntacticData {
    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    /// The minimal DFA of the language.
    pub fn source(&self) -> &Dfa {
        &self.source
    }
}

/// Computes the syntactic morphism, order, and accepting set of the language
/// of `l`, with the default cap on the monoid size.
pub fn syntactic(l: &Dfa) -> Result<SyntacticData> {
    syntactic_with_cap(l, DEFAULT_MONOID_CAP)
}

pub fn syntactic_with_cap(l: &Dfa, cap: usize) -> Result<SyntacticData> {
    let min = l.minimize();
    let n_q = min.n_states();
    let k = min.alphabet().len();

    // Transition monoid: breadth-first closure of the letter transformations
    // under composition.
    let letter_maps: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..n_q).map(|q| min.step(q, a)).collect())
        .collect();
    let identity: Vec<usize> = (0..n_q).collect();
    let generated = generate_monoid(
        min.alphabet(),
        identity,
        |f, a| f.iter().map(|&q| letter_maps[a][q]).collect::<Vec<usize>>(),
        cap,
        "syntactic monoid size",
    )?;
    let GeneratedMonoid {
        elements: transformations,
        monoid: codomain,
        letter_image,
        representatives: reps,
    } = generated;
    let n = transformations.len();

    let accepting: BTreeSet<usize> = (0..n)
        .filter(|&s| min.is_final(transformations[s][min.initial()]))
        .collect();

    // State-inclusion preorder of the minimal DFA: greatest fixpoint of
    // p ⊑ q ⇔ (p final ⇒ q final) ∧ ∀a: δ(p,a) ⊑ δ(q,a).
    let mut state_leq = BitMatrix::new(n_q);
    for p in 0..n_q {
        for q in 0..n_q {
            state_leq.set(p, q, !min.is_final(p) || min.is_final(q));
        }
    }
    loop {
        let mut changed = false;
        for p in 0..n_q {
            for q in 0..n_q {
                if state_leq.get(p, q)
                    && (0..k).any(|a| !state_leq.get(min.step(p, a), min.step(q, a)))
                {
                    state_leq.set(p, q, false);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let morphism = Morphism {
        alphabet: min.alphabet().clone(),
        codomain,
        order: Some(SyntacticOrder {
            transformations,
            state_leq,
        }),
        letter_image,
        representatives: reps,
        accepting,
    };
    Ok(SyntacticData {
        morphism,
        source: min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, parse_regex, words_up_to};

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn syntactic_of(pattern: &str) -> SyntacticData {
        let d = compile(&parse_regex(pattern, &ab()).unwrap());
        syntactic(&d).unwrap()
    }

    /// The definitional syntactic order, quantifying contexts over monoid
    /// elements; the independent route against which the state-inclusion
    /// order is checked.
    fn leq_by_contexts(m: &Morphism, s: usize, t: usize) -> bool {
        let n = m.size();
        let f = m.accepting();
        for x in 0..n {
            for y in 0..n {
                let xsy = m.monoid().mul(m.monoid().mul(x, s), y);
                let xty = m.monoid().mul(m.monoid().mul(x, t), y);
                if f.contains(&xsy) && !f.contains(&xty) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn contains_a_has_the_two_element_monoid() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let m = sd.morphism();
        assert_eq!(m.size(), 2);
        assert_eq!(m.monoid().idempotent_power(), 1);
        let s = m.evaluate(&Word::parse("a", &ab()).unwrap());
        assert_eq!(m.accepting(), &BTreeSet::from([s]));
        assert!(m.leq(m.monoid().neutral(), s));
        assert!(!m.leq(s, m.monoid().neutral()));
        assert_eq!(m.monoid().idempotents(), vec![0, 1]);
    }

    #[test]
    fn universal_language_has_the_trivial_monoid() {
        let sd = syntactic_of("(a|b)*");
        assert_eq!(sd.morphism().size(), 1);
        assert_eq!(sd.morphism().accepting(), &BTreeSet::from([0]));
        assert_eq!(sd.morphism().monoid().idempotent_power(), 1);
    }

    #[test]
    fn ab_star_has_the_six_element_monoid() {
        let sd = syntactic_of("(ab)*");
        let m = sd.morphism();
        assert_eq!(m.size(), 6);
        assert_eq!(m.monoid().idempotent_power(), 2);
        let reps: BTreeSet<String> = (0..6).map(|s| m.representative_text(s)).collect();
        let expected: BTreeSet<String> = ["ε", "a", "b", "ab", "ba", "aa"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(reps, expected);
        let e_ab = m.evaluate(&Word::parse("ab", &ab()).unwrap());
        assert_eq!(m.accepting(), &BTreeSet::from([0, e_ab]));
        assert_eq!(m.monoid().idempotents().len(), 4);
    }

    #[test]
    fn ab_star_congruence_classes_by_brute_force() {
        // Independent count of syntactic classes: words of length ≤ 4
        // distinguished by contexts of length ≤ 4.
        let d = compile(&parse_regex("(ab)*", &ab()).unwrap());
        let words = words_up_to(&ab(), 4);
        let contexts = words_up_to(&ab(), 4);
        let mut profiles: BTreeSet<Vec<bool>> = BTreeSet::new();
        for w in &words {
            let mut profile = Vec::new();
            for x in &contexts {
                for y in &contexts {
                    profile.push(d.accepts(&x.concat(w).concat(y)));
                }
            }
            profiles.insert(profile);
        }
        assert_eq!(profiles.len(), 6);
    }

    #[test]
    fn evaluate_folds_the_table() {
        let sd = syntactic_of("(ab)*");
        let m = sd.morphism();
        let w = |t: &str| Word::parse(t, &ab()).unwrap();
        assert_eq!(m.evaluate(&w("abab")), m.evaluate(&w("ab")));
        assert_eq!(m.evaluate(&Word::empty()), m.monoid().neutral());
        // a·a is the absorbing zero.
        let zero = m.evaluate(&w("aa"));
        assert_eq!(m.evaluate(&w("bb")), zero);
        for s in 0..m.size() {
            assert_eq!(m.monoid().mul(zero, s), zero);
            assert_eq!(m.monoid().mul(s, zero), zero);
        }
    }

    #[test]
    fn upper_set_checks() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let m = sd.morphism();
        let s = m.evaluate(&Word::parse("a", &ab()).unwrap());
        let one = m.monoid().neutral();
        let leq = |x, y| m.leq(x, y);
        assert!(is_upper_set(2, &BTreeSet::from([s]), leq));
        assert!(!is_upper_set(2, &BTreeSet::from([one]), leq));
        assert!(is_upper_set(2, &BTreeSet::from([one, s]), leq));
    }

    #[test]
    fn recognition_and_representatives_on_fixtures() {
        for pattern in ["(a|b)*a(a|b)*", "(ab)*", "b*", "(a|b)*", "a*b*"] {
            let d = compile(&parse_regex(pattern, &ab()).unwrap());
            let sd = syntactic(&d).unwrap();
            let m = sd.morphism();
            for w in words_up_to(&ab(), 8) {
                assert_eq!(
                    d.accepts(&w),
                    m.accepting().contains(&m.evaluate(&w)),
                    "recognition broke for {pattern} on {w}"
                );
            }
            for s in 0..m.size() {
                assert_eq!(m.evaluate(m.representative(s)), s, "rep round trip");
            }
            // Idempotent-power contract.
            let k = m.monoid().idempotent_power();
            for s in 0..m.size() {
                let e = m.monoid().pow(s, k);
                assert_eq!(m.monoid().mul(e, e), e);
                assert_eq!(m.monoid().pow(s, k + 1), m.monoid().mul(s, e));
            }
            // F is an upper set for the syntactic order.
            assert!(is_upper_set(m.size(), m.accepting(), |x, y| m.leq(x, y)));
        }
    }

    #[test]
    fn state_inclusion_order_matches_the_context_definition() {
        for pattern in ["(a|b)*a(a|b)*", "(ab)*", "b*", "a*b*", "(a|b)*b", "(ba)*a|b"] {
            let d = compile(&parse_regex(pattern, &ab()).unwrap());
            let sd = syntactic(&d).unwrap();
            let m = sd.morphism();
            for s in 0..m.size() {
                for t in 0..m.size() {
                    assert_eq!(
                        m.leq(s, t),
                        leq_by_contexts(m, s, t),
                        "order mismatch for {pattern} at ({s}, {t})"
                    );
                }
            }
        }
    }

    #[test]
    fn syntactic_order_is_compatible_with_multiplication() {
        for pattern in ["(ab)*", "a*b*", "(a|b)*a(a|b)*"] {
            let sd = syntactic_of(pattern);
            let m = sd.morphism();
            let related = m.order_pairs();
            for &(s1, t1) in &related {
                for &(s2, t2) in &related {
                    assert!(
                        m.leq(m.monoid().mul(s1, s2), m.monoid().mul(t1, t2)),
                        "compatibility broke for {pattern}"
                    );
                }
            }
        }
    }

    #[test]
    fn monoid_cap_error_names_the_cap() {
        let d = compile(&parse_regex("(ab)*", &ab()).unwrap());
        match syntactic_with_cap(&d, 3) {
            Err(Error::Resource { cap, .. }) => assert_eq!(cap, 3),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn finite_monoid_validation() {
        // Z/2Z is fine.
        assert!(FiniteMonoid::new(2, vec![0, 1, 1, 0], 0).is_ok());
        // A table where the claimed neutral is not neutral.
        assert!(FiniteMonoid::new(2, vec![0, 0, 1, 1], 0).is_err());
        assert!(FiniteMonoid::new(2, vec![0, 1, 1, 0], 1).is_err());
        // Non-associative magma on {0,1,2}: 0·(1·1) ≠ (0·1)·1 with this table.
        let bad = vec![0, 1, 2, 1, 0, 0, 2, 0, 0];
        assert!(FiniteMonoid::new(3, bad, 0).is_err());
    }

    #[test]
    fn idempotent_power_is_minimal() {
        // Tail-2 elements (a, b of (ab)*) mixed with idempotents give 2.
        let sd = syntactic_of("(ab)*");
        assert_eq!(sd.morphism().monoid().idempotent_power(), 2);
        // Z/6Z: pure group, idempotent power 6.
        let table: Vec<usize> = (0..6)
            .flat_map(|s| (0..6).map(move |t| (s + t) % 6))
            .collect();
        let m = FiniteMonoid::new(6, table, 0).unwrap();
        assert_eq!(m.idempotent_power(), 6);
    }

    #[test]
    fn ordered_monoid_rejects_incompatible_orders() {
        // Z/2Z with 0 < 1 is incompatible: 1 ≤ 1 and 0 ≤ 1 force 1·0 ≤ 1·1,
        // i.e. 1 ≤ 0, which antisymmetry rules out.
        let z2 = FiniteMonoid::new(2, vec![0, 1, 1, 0], 0).unwrap();
        assert!(OrderedMonoid::new(z2.clone(), &[(0, 1)]).is_err());
        assert!(OrderedMonoid::new(z2, &[]).is_ok());
    }

    #[test]
    fn preimage_automata() {
        let sd = syntactic_of("(ab)*");
        let m = sd.morphism();
        let e_ab = m.evaluate(&Word::parse("ab", &ab()).unwrap());
        let pre = m.preimage_dfa(e_ab);
        // α⁻¹(ab) = (ab)⁺.
        let expected = compile(&parse_regex("ab(ab)*", &ab()).unwrap());
        assert!(pre.equivalent(&expected).unwrap());
        for w in words_up_to(&ab(), 6) {
            assert_eq!(pre.accepts(&w), m.evaluate(&w) == e_ab);
        }
    }
}
