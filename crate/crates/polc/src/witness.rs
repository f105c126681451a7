//! Constructive witnesses: `K_e` separator languages and the synthesis of an
//! explicit expression `⋃_{s∈F} H_{s,h}` equivalent to the input language.
//!
//! For every idempotent `e`, `K_e` is the intersection of oracle separators
//! of `α⁻¹(e)` from each `α⁻¹(t)` with `(e, t)` not a pair. The per-element
//! languages are built level by level:
//!
//! - level 0: `H_{s,0} = ⋃_{α(b)=s} K_1·b·K_1`, plus `K_1` itself when `s`
//!   is neutral;
//! - level `h`: `H_{s,h} = H_{s,h-1} ∪ ⋃_{t1·t2=s} H_{t1,h-1}·H_{t2,h-1}`,
//!   plus `H_{s,h-1}·K_s·H_{s,h-1}` when `s` is idempotent.
//!
//! Levels grow monotonically and stay sound (`⋃_{s∈F} H_{s,level} ⊆ L` is
//! checked at every level), so the construction stops at the first level
//! whose union is equivalent to `L`; completeness at level `3|M|-1` is
//! guaranteed when the `Pol` equation holds, so running past the bound
//! without reaching equivalence signals an internal error.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Morphism, SyntacticData};
use crate::automata::{Alphabet, Dfa};
use crate::baseclass::BaseClassOracle;
use crate::decide;
use crate::pairs::PairRelation;
use crate::{Error, Result};

/// Default cap on intermediate automaton sizes during synthesis.
pub const DEFAULT_AUTOMATON_CAP: usize = 10000;

/// A named base language of the class, used as an expression leaf.
#[derive(Debug, Clone)]
pub struct NamedBase {
    pub name: String,
    pub dfa: Dfa,
}

/// An expression over base languages, closed under union, concatenation,
/// and marked concatenation. Subtrees are shared.
#[derive(Debug, Clone)]
pub enum PolExpr {
    Base(Arc<NamedBase>),
    Union(Vec<Arc<PolExpr>>),
    Concat(Arc<PolExpr>, Arc<PolExpr>),
    Marked(Arc<PolExpr>, char, Arc<PolExpr>),
}

impl PolExpr {
    pub fn base(name: impl Into<String>, dfa: Dfa) -> Arc<PolExpr> {
        Arc::new(PolExpr::Base(Arc::new(NamedBase {
            name: name.into(),
            dfa,
        })))
    }

    /// Maximal number of marked concatenations along any product of the
    /// union-of-products view of the expression.
    pub fn marked_degree(&self) -> usize {
        match self {
            PolExpr::Base(_) => 0,
            PolExpr::Union(children) => children
                .iter()
                .map(|c| c.marked_degree())
                .max()
                .unwrap_or(0),
            PolExpr::Concat(l, r) => l.marked_degree() + r.marked_degree(),
            PolExpr::Marked(l, _, r) => l.marked_degree() + r.marked_degree() + 1,
        }
    }

    /// Every named base language appearing in the expression.
    pub fn bases(&self) -> BTreeMap<String, Dfa> {
        fn walk(e: &PolExpr, out: &mut BTreeMap<String, Dfa>) {
            match e {
                PolExpr::Base(b) => {
                    out.entry(b.name.clone()).or_insert_with(|| b.dfa.clone());
                }
                PolExpr::Union(children) => children.iter().for_each(|c| walk(c, out)),
                PolExpr::Concat(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                PolExpr::Marked(l, _, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = BTreeMap::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for PolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolExpr::Base(b) => write!(f, "base({})", b.name),
            PolExpr::Union(children) => {
                if children.is_empty() {
                    return write!(f, "union()");
                }
                write!(f, "union(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            PolExpr::Concat(l, r) => write!(f, "cat({l}, {r})"),
            PolExpr::Marked(l, a, r) => write!(f, "mark({l}, '{a}', {r})"),
        }
    }
}

/// Compiles an expression to the minimal DFA of its denotation. An empty
/// union denotes the empty language over `alphabet`.
pub fn expr_to_dfa(expr: &PolExpr, alphabet: &Alphabet) -> Result<Dfa> {
    expr_to_dfa_with_cap(expr, alphabet, DEFAULT_AUTOMATON_CAP)
}

pub fn expr_to_dfa_with_cap(expr: &PolExpr, alphabet: &Alphabet, cap: usize) -> Result<Dfa> {
    let d = match expr {
        PolExpr::Base(b) => b.dfa.minimize(),
        PolExpr::Union(children) => {
            let mut acc = Dfa::empty_lang(alphabet);
            for c in children {
                acc = acc.union(&expr_to_dfa_with_cap(c, alphabet, cap)?)?;
                check_cap(&acc, cap)?;
            }
            acc
        }
        PolExpr::Concat(l, r) => expr_to_dfa_with_cap(l, alphabet, cap)?
            .concat(&expr_to_dfa_with_cap(r, alphabet, cap)?)?,
        PolExpr::Marked(l, a, r) => expr_to_dfa_with_cap(l, alphabet, cap)?
            .marked_concat(*a, &expr_to_dfa_with_cap(r, alphabet, cap)?)?,
    };
    check_cap(&d, cap)?;
    Ok(d)
}

fn check_cap(d: &Dfa, cap: usize) -> Result<()> {
    if d.n_states() > cap {
        return Err(Error::Resource {
            what: "intermediate automaton size".into(),
            cap,
        });
    }
    Ok(())
}

/// The separator language `K_e` for an idempotent `e`: the intersection of
/// oracle separators of `α⁻¹(e)` from every `α⁻¹(t)` with `(e, t)` not a
/// pair (the intersection over no separators is `A*`).
///
/// Postconditions, both checked: `α⁻¹(e) ⊆ K_e`, and every word of `K_e`
/// maps to some `t` with `(e, t)` a pair.
pub fn compute_ke(
    e: usize,
    m: &Morphism,
    oracle: &dyn BaseClassOracle,
    pairs: &PairRelation,
) -> Result<NamedBase> {
    if !m.monoid().is_idempotent(e) {
        return Err(Error::InvalidInput(format!(
            "element {e} is not idempotent"
        )));
    }
    let preimage_e = m.preimage_dfa(e);
    let mut k = Dfa::universal(m.alphabet());
    for t in 0..m.size() {
        if pairs.contains(e, t) {
            continue;
        }
        let g = oracle.separate(&preimage_e, &m.preimage_dfa(t))?.ok_or_else(|| {
            Error::OracleContract(format!(
                "{} failed to separate α⁻¹({}) from α⁻¹({}) although ({}, {}) is not a pair",
                oracle.name(),
                m.representative_text(e),
                m.representative_text(t),
                m.representative_text(e),
                m.representative_text(t),
            ))
        })?;
        k = k.intersection(&g)?;
    }
    if !k.includes(&preimage_e)? {
        return Err(Error::OracleContract(format!(
            "K_{} does not include α⁻¹({})",
            m.representative_text(e),
            m.representative_text(e)
        )));
    }
    Ok(NamedBase {
        name: format!("K_{}", m.representative_text(e)),
        dfa: k,
    })
}

#[derive(Debug, Clone, Default)]
pub struct SynthesisStats {
    pub levels_built: usize,
    pub largest_automaton: usize,
    pub soundness_checks: usize,
}

/// Result of synthesizing a witness expression for a language.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    sd: SyntacticData,
    per_element: Vec<Arc<PolExpr>>,
    per_element_dfas: Vec<Dfa>,
    expr: Arc<PolExpr>,
    dfa: Dfa,
    level: usize,
    verified: bool,
    stats: SynthesisStats,
}

impl SynthesisResult {
    /// The expression `⋃_{s∈F} H_{s,level}`.
    pub fn expr(&self) -> &PolExpr {
        &self.expr
    }

    /// The compiled denotation of [`SynthesisResult::expr`].
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// `H_{s,level}` for element `s`.
    pub fn element_expr(&self, s: usize) -> &Arc<PolExpr> {
        &self.per_element[s]
    }

    pub fn element_dfa(&self, s: usize) -> &Dfa {
        &self.per_element_dfas[s]
    }

    /// The level at which the construction stopped.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Whether the denotation was proved equivalent to the language.
    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn stats(&self) -> &SynthesisStats {
        &self.stats
    }

    pub fn syntactic_data(&self) -> &SyntacticData {
        &self.sd
    }
}

/// Synthesizes a verified expression for the language of `sd`, assuming
/// `decide_pol` answered yes (checked; a no answer is an input error).
///
/// Builds levels 0, 1, 2, …, memoizing one minimal DFA per element and
/// level, asserts `⋃_{s∈F} H_{s,level} ⊆ L` at every level, and stops as
/// soon as the union is equivalent to `L` or the level limit is reached.
/// The limit is `min(3|M|-1, max_h)`; failing to reach equivalence at
/// `3|M|-1` contradicts the completeness bound and is an internal error.
pub fn synthesize(
    sd: &SyntacticData,
    oracle: &dyn BaseClassOracle,
    pairs: &PairRelation,
    max_h: Option<usize>,
) -> Result<SynthesisResult> {
    synthesize_with_cap(sd, oracle, pairs, max_h, DEFAULT_AUTOMATON_CAP)
}

pub fn synthesize_with_cap(
    sd: &SyntacticData,
    oracle: &dyn BaseClassOracle,
    pairs: &PairRelation,
    max_h: Option<usize>,
    cap: usize,
) -> Result<SynthesisResult> {
    let verdict = decide::decide_pol(sd, pairs)?;
    if !verdict.answer {
        return Err(Error::InvalidInput(
            "the language is not in the polynomial closure of this class; no witness exists"
                .into(),
        ));
    }
    let m = sd.morphism();
    let mon = m.monoid();
    let n = m.size();
    let alphabet = m.alphabet().clone();
    let language = sd.source();
    let bound = 3 * n - 1;
    let limit = max_h.map_or(bound, |h| h.min(bound));

    // K_e for every idempotent.
    let mut ke: Vec<Option<Arc<PolExpr>>> = vec![None; n];
    let mut ke_dfa: Vec<Option<Dfa>> = vec![None; n];
    for e in mon.idempotents() {
        let base = compute_ke(e, m, oracle, pairs)?;
        ke_dfa[e] = Some(base.dfa.clone());
        ke[e] = Some(Arc::new(PolExpr::Base(Arc::new(base))));
    }
    let neutral = mon.neutral();
    let k1 = ke[neutral].clone().expect("neutral element is idempotent");
    let k1_dfa = ke_dfa[neutral].clone().unwrap();

    let mut stats = SynthesisStats::default();
    let mut track = |d: &Dfa| {
        if d.n_states() > stats.largest_automaton {
            stats.largest_automaton = d.n_states();
        }
    };

    // Level 0: marked products K_1·b·K_1 grouped by the image of b, and K_1
    // itself for the neutral element.
    let mut exprs: Vec<Arc<PolExpr>> = Vec::with_capacity(n);
    let mut dfas: Vec<Dfa> = Vec::with_capacity(n);
    for s in 0..n {
        let mut parts: Vec<Arc<PolExpr>> = Vec::new();
        let mut acc = Dfa::empty_lang(&alphabet);
        if s == neutral {
            parts.push(k1.clone());
            acc = acc.union(&k1_dfa)?;
        }
        for a in 0..alphabet.len() {
            if m.letter_image(a) == s {
                let letter = alphabet.letter(a);
                parts.push(Arc::new(PolExpr::Marked(k1.clone(), letter, k1.clone())));
                acc = acc.union(&k1_dfa.marked_concat(letter, &k1_dfa)?)?;
            }
        }
        check_cap(&acc, cap)?;
        track(&acc);
        let expr = match parts.len() {
            1 => parts.pop().unwrap(),
            _ => Arc::new(PolExpr::Union(parts)),
        };
        exprs.push(expr);
        dfas.push(acc);
    }

    let mut level = 0usize;
    loop {
        stats.levels_built = level + 1;
        // Union over the accepting set, with the per-level soundness check.
        let mut union = Dfa::empty_lang(&alphabet);
        for &s in m.accepting() {
            union = union.union(&dfas[s])?;
            check_cap(&union, cap)?;
        }
        track(&union);
        if !language.includes(&union)? {
            return Err(Error::Internal(format!(
                "level {level} union is not included in the language; \
                 the synthesis construction is unsound"
            )));
        }
        stats.soundness_checks += 1;

        let verified = union == *language;
        debug_assert_eq!(verified, union.equivalent(language)?);
        if verified || level == limit {
            let expr = Arc::new(PolExpr::Union(
                m.accepting().iter().map(|&s| exprs[s].clone()).collect(),
            ));
            if !verified && limit == bound {
                return Err(Error::Internal(format!(
                    "no equivalence at the completeness bound 3|M|-1 = {bound} \
                     although the Pol equation holds"
                )));
            }
            return Ok(SynthesisResult {
                sd: sd.clone(),
                per_element: exprs,
                per_element_dfas: dfas,
                expr,
                dfa: union,
                level,
                verified,
                stats,
            });
        }

        // Next level.
        let mut next_exprs: Vec<Arc<PolExpr>> = Vec::with_capacity(n);
        let mut next_dfas: Vec<Dfa> = Vec::with_capacity(n);
        for s in 0..n {
            let mut parts: Vec<Arc<PolExpr>> = vec![exprs[s].clone()];
            let mut acc = dfas[s].clone();
            for t1 in 0..n {
                for t2 in 0..n {
                    if mon.mul(t1, t2) != s {
                        continue;
                    }
                    parts.push(Arc::new(PolExpr::Concat(
                        exprs[t1].clone(),
                        exprs[t2].clone(),
                    )));
                    acc = acc.union(&dfas[t1].concat(&dfas[t2])?)?;
                    check_cap(&acc, cap)?;
                }
            }
            if mon.is_idempotent(s) {
                let ks = ke[s].clone().unwrap();
                let ks_dfa = ke_dfa[s].as_ref().unwrap();
                parts.push(Arc::new(PolExpr::Concat(
                    Arc::new(PolExpr::Concat(exprs[s].clone(), ks)),
                    exprs[s].clone(),
                )));
                let middle = dfas[s].concat(ks_dfa)?.concat(&dfas[s])?;
                acc = acc.union(&middle)?;
                check_cap(&acc, cap)?;
            }
            track(&acc);
            next_exprs.push(Arc::new(PolExpr::Union(parts)));
            next_dfas.push(acc);
        }

        // Fixed point without equivalence: no later level can change, so
        // this is the same contradiction as exhausting the bound.
        if next_dfas == dfas {
            return Err(Error::Internal(format!(
                "synthesis reached a fixed point at level {level} without \
                 equivalence although the Pol equation holds"
            )));
        }
        exprs = next_exprs;
        dfas = next_dfas;
        level += 1;
    }
}

/// `true` iff the synthesized denotation is equivalent to `l` (decided by
/// the product-automaton route, independently of the canonical-form equality
/// used during synthesis) and the final level is sound: every word of length
/// at most 8 in each `H_{s,·}` has `s ≤ α(w)`.
pub fn verify_witness(l: &Dfa, r: &SynthesisResult) -> Result<bool> {
    if !r.dfa.equivalent(l)? {
        return Ok(false);
    }
    let m = r.sd.morphism();
    for w in crate::automata::words_up_to(m.alphabet(), 8) {
        let image = m.evaluate(&w);
        for s in 0..m.size() {
            if r.per_element_dfas[s].accepts(&w) && !m.leq(s, image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
