//! The pair relations a base class induces on a morphism's codomain.
//!
//! `(s, t)` is a pair when `α⁻¹(s)` cannot be separated from `α⁻¹(t)` by any
//! language of the class; it is a *saturated* pair when no class language
//! recognized by `α` itself separates them. The saturated relation is also
//! the reflexive-transitive closure of the plain one, and both computation
//! routes are kept and cross-asserted.

use std::collections::BTreeSet;

use crate::algebra::Morphism;
use crate::automata::Dfa;
use crate::baseclass::BaseClassOracle;
use crate::bits::BitMatrix;
use crate::{Error, Result};

/// Default cap on `|M|` for the subset-enumeration route of
/// [`compute_saturated`], which scans all `2^|M|` subsets.
pub const DEFAULT_SUBSET_ENUM_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Plain,
    Saturated,
}

/// A boolean relation on `M × M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    kind: RelationKind,
    bits: BitMatrix,
}

impl PairRelation {
    pub(crate) fn from_bits(kind: RelationKind, bits: BitMatrix) -> PairRelation {
        PairRelation { kind, bits }
    }

    /// The full relation `M × M`.
    pub fn full(kind: RelationKind, n: usize) -> PairRelation {
        PairRelation {
            kind,
            bits: BitMatrix::full(n),
        }
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.bits.size()
    }

    #[inline]
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits.get(s, t)
    }

    pub fn count(&self) -> usize {
        self.bits.count()
    }

    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        self.bits.related_pairs()
    }

    pub fn is_subset_of(&self, other: &PairRelation) -> bool {
        self.related_pairs()
            .into_iter()
            .all(|(s, t)| other.contains(s, t))
    }

    pub fn is_reflexive(&self) -> bool {
        self.bits.is_reflexive()
    }

    pub fn is_transitive(&self) -> bool {
        self.bits.is_transitive()
    }

    /// Bit-for-bit equality ignoring the kind tag.
    pub fn same_bits(&self, other: &PairRelation) -> bool {
        self.bits == other.bits
    }

    pub(crate) fn closure(&self) -> PairRelation {
        PairRelation {
            kind: RelationKind::Saturated,
            bits: self.bits.reflexive_transitive_closure(),
        }
    }
}

/// Computes the exact pair relation for a surjective morphism.
///
/// Classes whose structure admits it (ST, AT) answer through an exact
/// shortcut; otherwise this runs one separation query per ordered pair, via
/// [`compute_pairs_by_calls`]. No cell is shared between `(s, t)` and
/// `(t, s)`: the relation is not symmetric.
pub fn compute_pairs(m: &Morphism, oracle: &dyn BaseClassOracle) -> Result<PairRelation> {
    if let Some(r) = oracle.pair_relation_shortcut(m) {
        debug_assert_eq!(r.size(), m.size());
        return Ok(r);
    }
    compute_pairs_by_calls(m, oracle)
}

/// The literal definition: for each `(s, t)`, build the preimage automata
/// and ask the oracle for a separator; `(s, t)` is a pair iff none exists.
pub fn compute_pairs_by_calls(m: &Morphism, oracle: &dyn BaseClassOracle) -> Result<PairRelation> {
    let n = m.size();
    let preimages: Vec<Dfa> = (0..n).map(|s| m.preimage_dfa(s)).collect();
    let mut bits = BitMatrix::new(n);
    for s in 0..n {
        for t in 0..n {
            let separated = oracle.separate(&preimages[s], &preimages[t])?.is_some();
            bits.set(s, t, !separated);
        }
    }
    Ok(PairRelation {
        kind: RelationKind::Plain,
        bits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturatedMethod {
    /// Enumerate every `F ⊆ M` with `α⁻¹(F)` in the class; `(s, t)` is
    /// saturated iff every such `F` containing `s` contains `t`.
    ByMembership,
    /// Reflexive-transitive closure of the plain relation.
    ByClosure,
}

/// Computes the saturated relation. When the plain relation is supplied
/// alongside `ByMembership`, the two routes are cross-asserted and a
/// disagreement is an internal error.
pub fn compute_saturated(
    m: &Morphism,
    oracle: &dyn BaseClassOracle,
    method: SaturatedMethod,
    plain: Option<&PairRelation>,
) -> Result<PairRelation> {
    match method {
        SaturatedMethod::ByClosure => {
            let plain = plain.ok_or_else(|| {
                Error::InvalidInput("the closure method needs the plain pair relation".into())
            })?;
            Ok(plain.closure())
        }
        SaturatedMethod::ByMembership => {
            let n = m.size();
            if n > DEFAULT_SUBSET_ENUM_CAP {
                return Err(Error::Resource {
                    what: format!(
                        "subset enumeration over a monoid of size {n} (use the closure method)"
                    ),
                    cap: DEFAULT_SUBSET_ENUM_CAP,
                });
            }
            let mut bits = BitMatrix::full(n);
            for mask in 0u64..(1 << n) {
                let subset: BTreeSet<usize> = (0..n).filter(|&s| mask >> s & 1 == 1).collect();
                if !oracle.member(&m.recognized_dfa(&subset))? {
                    continue;
                }
                for s in subset.iter().copied() {
                    for t in 0..n {
                        if !subset.contains(&t) {
                            bits.set(s, t, false);
                        }
                    }
                }
            }
            let rel = PairRelation {
                kind: RelationKind::Saturated,
                bits,
            };
            if let Some(plain) = plain {
                let by_closure = plain.closure();
                if !rel.same_bits(&by_closure) {
                    return Err(Error::Internal(
                        "saturated pairs by membership and by transitive closure disagree".into(),
                    ));
                }
            }
            Ok(rel)
        }
    }
}

/// Outcome of checking the relation laws on a computed relation.
#[derive(Debug, Clone)]
pub struct RelationLawReport {
    pub reflexive: bool,
    pub multiplicative: bool,
    /// First multiplicativity failure: the two related pairs whose product
    /// is not related.
    pub multiplicative_failure: Option<((usize, usize), (usize, usize))>,
    /// Checked for saturated relations only.
    pub transitive: Option<bool>,
    /// Checked when the saturated counterpart is supplied.
    pub plain_subset_of_saturated: Option<bool>,
}

impl RelationLawReport {
    pub fn all_hold(&self) -> bool {
        self.reflexive
            && self.multiplicative
            && self.transitive.unwrap_or(true)
            && self.plain_subset_of_saturated.unwrap_or(true)
    }
}

/// Checks reflexivity, multiplicativity (exhaustively over products of
/// related pairs), transitivity for saturated relations, and containment of
/// the plain relation in the saturated one when both are supplied.
pub fn check_relation_laws(
    r: &PairRelation,
    m: &Morphism,
    saturated: Option<&PairRelation>,
) -> RelationLawReport {
    let reflexive = r.is_reflexive();
    let related = r.related_pairs();
    let mut multiplicative = true;
    let mut multiplicative_failure = None;
    'outer: for &(s1, t1) in &related {
        for &(s2, t2) in &related {
            if !r.contains(m.monoid().mul(s1, s2), m.monoid().mul(t1, t2)) {
                multiplicative = false;
                multiplicative_failure = Some(((s1, t1), (s2, t2)));
                break 'outer;
            }
        }
    }
    let transitive = match r.kind {
        RelationKind::Saturated => Some(r.is_transitive()),
        RelationKind::Plain => None,
    };
    let plain_subset_of_saturated = saturated.map(|sat| r.is_subset_of(sat));
    RelationLawReport {
        reflexive,
        multiplicative,
        multiplicative_failure,
        transitive,
        plain_subset_of_saturated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::syntactic;
    use crate::automata::{compile, parse_regex, Alphabet, Word};
    use crate::baseclass::{AtOracle, StOracle};

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn syntactic_of(pattern: &str) -> crate::algebra::SyntacticData {
        syntactic(&compile(&parse_regex(pattern, &ab()).unwrap())).unwrap()
    }

    #[test]
    fn st_pairs_are_the_full_relation() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let st = StOracle::new(ab());
        let rel = compute_pairs(sd.morphism(), &st).unwrap();
        assert_eq!(rel.count(), 4);
        // Shortcut agrees with the literal |M|² separation queries.
        let literal = compute_pairs_by_calls(sd.morphism(), &st).unwrap();
        assert!(rel.same_bits(&literal));
    }

    #[test]
    fn at_pairs_of_contains_a_are_diagonal() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let at = AtOracle::new(ab());
        let rel = compute_pairs(sd.morphism(), &at).unwrap();
        assert_eq!(rel.count(), 2);
        assert!(rel.is_reflexive());
        let literal = compute_pairs_by_calls(sd.morphism(), &at).unwrap();
        assert!(rel.same_bits(&literal));
    }

    #[test]
    fn at_pairs_of_ab_star_include_the_equal_alphabet_pairs() {
        let sd = syntactic_of("(ab)*");
        let m = sd.morphism();
        let at = AtOracle::new(ab());
        let rel = compute_pairs(m, &at).unwrap();
        let w = |t: &str| m.evaluate(&Word::parse(t, &ab()).unwrap());
        assert!(rel.contains(w("ab"), w("ba")));
        assert!(rel.contains(w("ab"), w("a"))); // witnesses ab and aba
        let literal = compute_pairs_by_calls(m, &at).unwrap();
        assert!(rel.same_bits(&literal));
    }

    #[test]
    fn saturated_at_pairs_of_contains_a_are_diagonal() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let at = AtOracle::new(ab());
        let rel =
            compute_saturated(sd.morphism(), &at, SaturatedMethod::ByMembership, None).unwrap();
        assert_eq!(rel.count(), 2);
    }

    #[test]
    fn saturated_st_pairs_are_the_full_relation() {
        for pattern in ["(ab)*", "b*"] {
            let sd = syntactic_of(pattern);
            let st = StOracle::new(ab());
            let plain = compute_pairs(sd.morphism(), &st).unwrap();
            let n = sd.morphism().size();
            for method in [SaturatedMethod::ByMembership, SaturatedMethod::ByClosure] {
                let sat = compute_saturated(sd.morphism(), &st, method, Some(&plain)).unwrap();
                assert_eq!(sat.count(), n * n, "{pattern}");
            }
        }
    }

    #[test]
    fn saturated_methods_agree_bit_for_bit() {
        for pattern in ["(ab)*", "(a|b)*a(a|b)*", "b*", "a*b*"] {
            let sd = syntactic_of(pattern);
            let at = AtOracle::new(ab());
            let plain = compute_pairs(sd.morphism(), &at).unwrap();
            let by_membership = compute_saturated(
                sd.morphism(),
                &at,
                SaturatedMethod::ByMembership,
                Some(&plain),
            )
            .unwrap();
            let by_closure =
                compute_saturated(sd.morphism(), &at, SaturatedMethod::ByClosure, Some(&plain))
                    .unwrap();
            assert!(by_membership.same_bits(&by_closure), "{pattern}");
        }
    }

    #[test]
    fn subset_enumeration_cap_is_enforced() {
        let at = AtOracle::new(ab());
        // A language whose syntactic monoid exceeds the enumeration cap.
        let big = syntactic_of("(aab|ab|bba)*ab");
        assert!(big.morphism().size() > DEFAULT_SUBSET_ENUM_CAP);
        match compute_saturated(big.morphism(), &at, SaturatedMethod::ByMembership, None) {
            Err(Error::Resource { cap, .. }) => assert_eq!(cap, DEFAULT_SUBSET_ENUM_CAP),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn relation_laws_hold_on_fixtures() {
        for pattern in ["(ab)*", "(a|b)*a(a|b)*", "b*"] {
            let sd = syntactic_of(pattern);
            for oracle in [
                Box::new(StOracle::new(ab())) as Box<dyn BaseClassOracle>,
                Box::new(AtOracle::new(ab())),
            ] {
                let plain = compute_pairs(sd.morphism(), oracle.as_ref()).unwrap();
                let sat = compute_saturated(
                    sd.morphism(),
                    oracle.as_ref(),
                    SaturatedMethod::ByClosure,
                    Some(&plain),
                )
                .unwrap();
                let report = check_relation_laws(&plain, sd.morphism(), Some(&sat));
                assert!(report.all_hold(), "{pattern} plain: {report:?}");
                let report = check_relation_laws(&sat, sd.morphism(), None);
                assert!(report.all_hold(), "{pattern} saturated: {report:?}");
            }
        }
    }
}
