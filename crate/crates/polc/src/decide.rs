//! Membership decision procedures for `Pol(C)`, `co-Pol(C)`, and `UPol(C)`.
//!
//! Each decision evaluates an inequality (or equality) over the syntactic
//! ordered monoid, quantified over the pair relation:
//!
//! - `Pol(C)`: `s^{ω+1} ≤ s^ω t s^ω` for all pairs `(s, t)`, equivalently
//!   `e ≤ ete` for all pairs `(e, t)` with `e` idempotent.
//! - `co-Pol(C)`: the reversed inequalities.
//! - `UPol(C)`: the equality `s^{ω+1} = s^ω t s^ω`, over the plain pairs and
//!   equivalently over the saturated pairs.
//!
//! Both formulations are always evaluated and cross-asserted; a disagreement
//! is an internal error (exit code 4 at the CLI), never a user error.

use crate::algebra::{Morphism, SyntacticData};
use crate::automata::Word;
use crate::pairs::{PairRelation, RelationKind};
use crate::{Error, Result};

/// A reported counterexample pair, with the equation sides it violates.
#[derive(Debug, Clone)]
pub struct Violation {
    pub s: usize,
    pub t: usize,
    pub s_rep: Word,
    pub t_rep: Word,
    /// Left-hand side element of the violated (in)equality.
    pub lhs: usize,
    pub rhs: usize,
    pub lhs_rep: Word,
    pub rhs_rep: Word,
}

/// Outcome of a membership decision.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub answer: bool,
    /// Present exactly when `answer` is `no`: the first violating pair in
    /// lexicographic order of representative words.
    pub violation: Option<Violation>,
    /// Which characterization produced the answer (and the violation).
    pub equation_used: &'static str,
}

impl Verdict {
    pub fn answer_text(&self) -> &'static str {
        if self.answer {
            "yes"
        } else {
            "no"
        }
    }
}

fn ensure_plain(sd: &SyntacticData, pairs: &PairRelation) -> Result<()> {
    if pairs.kind() != RelationKind::Plain {
        return Err(Error::InvalidInput(
            "expected the plain pair relation".into(),
        ));
    }
    if pairs.size() != sd.morphism().size() {
        return Err(Error::InvalidInput(
            "pair relation was computed for a different monoid".into(),
        ));
    }
    Ok(())
}

/// Scans `rel` for pairs failing `holds`, keeping the first violation in
/// lexicographic order of (representative of s, representative of t).
fn first_violation(
    m: &Morphism,
    rel: &PairRelation,
    reps: &[String],
    include_left: impl Fn(usize) -> bool,
    holds: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let n = m.size();
    let mut best: Option<(usize, usize)> = None;
    for s in 0..n {
        if !include_left(s) {
            continue;
        }
        for t in 0..n {
            if rel.contains(s, t) && !holds(s, t) {
                let better = match best {
                    None => true,
                    Some((bs, bt)) => {
                        (reps[s].as_str(), reps[t].as_str()) < (reps[bs].as_str(), reps[bt].as_str())
                    }
                };
                if better {
                    best = Some((s, t));
                }
            }
        }
    }
    best
}

fn violation_for(m: &Morphism, s: usize, t: usize, lhs: usize, rhs: usize) -> Violation {
    Violation {
        s,
        t,
        s_rep: m.representative(s).clone(),
        t_rep: m.representative(t).clone(),
        lhs,
        rhs,
        lhs_rep: m.representative(lhs).clone(),
        rhs_rep: m.representative(rhs).clone(),
    }
}

/// `L ∈ Pol(C)`?
pub fn decide_pol(sd: &SyntacticData, pairs: &PairRelation) -> Result<Verdict> {
    ensure_plain(sd, pairs)?;
    let m = sd.morphism();
    let mon = m.monoid();
    let n = m.size();
    let reps: Vec<String> = (0..n).map(|s| m.representative_text(s)).collect();
    let omega: Vec<usize> = (0..n).map(|s| mon.omega_of(s)).collect();
    let omega1: Vec<usize> = (0..n).map(|s| mon.mul(s, omega[s])).collect();

    // General form: s^{ω+1} ≤ s^ω t s^ω for every pair.
    let general = first_violation(m, pairs, &reps, |_| true, |s, t| {
        m.leq(omega1[s], mon.mul(mon.mul(omega[s], t), omega[s]))
    });
    // Idempotent form: e ≤ ete for every pair with e idempotent.
    let idem = first_violation(
        m,
        pairs,
        &reps,
        |e| mon.is_idempotent(e),
        |e, t| m.leq(e, mon.mul(mon.mul(e, t), e)),
    );
    if general.is_some() != idem.is_some() {
        return Err(Error::Internal(format!(
            "Pol characterization forms disagree: general={general:?}, idempotent={idem:?}"
        )));
    }
    Ok(match idem {
        None => Verdict {
            answer: true,
            violation: None,
            equation_used: "s^(ω+1) ≤ s^ω·t·s^ω",
        },
        Some((e, t)) => {
            let ete = mon.mul(mon.mul(e, t), e);
            Verdict {
                answer: false,
                violation: Some(violation_for(m, e, t, e, ete)),
                equation_used: "e ≤ e·t·e",
            }
        }
    })
}

/// `L ∈ co-Pol(C)`? Same equations with the opposite order.
pub fn decide_copol(sd: &SyntacticData, pairs: &PairRelation) -> Result<Verdict> {
    ensure_plain(sd, pairs)?;
    let m = sd.morphism();
    let mon = m.monoid();
    let n = m.size();
    let reps: Vec<String> = (0..n).map(|s| m.representative_text(s)).collect();
    let omega: Vec<usize> = (0..n).map(|s| mon.omega_of(s)).collect();
    let omega1: Vec<usize> = (0..n).map(|s| mon.mul(s, omega[s])).collect();

    let general = first_violation(m, pairs, &reps, |_| true, |s, t| {
        m.leq(mon.mul(mon.mul(omega[s], t), omega[s]), omega1[s])
    });
    let idem = first_violation(
        m,
        pairs,
        &reps,
        |e| mon.is_idempotent(e),
        |e, t| m.leq(mon.mul(mon.mul(e, t), e), e),
    );
    if general.is_some() != idem.is_some() {
        return Err(Error::Internal(format!(
            "co-Pol characterization forms disagree: general={general:?}, idempotent={idem:?}"
        )));
    }
    Ok(match idem {
        None => Verdict {
            answer: true,
            violation: None,
            equation_used: "s^ω·t·s^ω ≤ s^(ω+1)",
        },
        Some((e, t)) => {
            let ete = mon.mul(mon.mul(e, t), e);
            Verdict {
                answer: false,
                violation: Some(violation_for(m, e, t, ete, e)),
                equation_used: "e·t·e ≤ e",
            }
        }
    })
}

/// `L ∈ UPol(C) = Pol(C) ∩ co-Pol(C)`?
///
/// The equality `s^{ω+1} = s^ω t s^ω` is evaluated over the plain pairs and
/// over the saturated pairs; the two evaluations must agree.
pub fn decide_upol(
    sd: &SyntacticData,
    plain: &PairRelation,
    saturated: &PairRelation,
) -> Result<Verdict> {
    ensure_plain(sd, plain)?;
    if saturated.kind() != RelationKind::Saturated || saturated.size() != sd.morphism().size() {
        return Err(Error::InvalidInput(
            "expected the saturated pair relation of the same monoid".into(),
        ));
    }
    let m = sd.morphism();
    let mon = m.monoid();
    let n = m.size();
    let reps: Vec<String> = (0..n).map(|s| m.representative_text(s)).collect();
    let omega: Vec<usize> = (0..n).map(|s| mon.omega_of(s)).collect();
    let omega1: Vec<usize> = (0..n).map(|s| mon.mul(s, omega[s])).collect();
    let equal = |s: usize, t: usize| omega1[s] == mon.mul(mon.mul(omega[s], t), omega[s]);

    let over_plain = first_violation(m, plain, &reps, |_| true, equal);
    let over_saturated = first_violation(m, saturated, &reps, |_| true, equal);
    if over_plain.is_some() != over_saturated.is_some() {
        return Err(Error::Internal(format!(
            "UPol characterization forms disagree: plain={over_plain:?}, saturated={over_saturated:?}"
        )));
    }
    Ok(match over_saturated {
        None => Verdict {
            answer: true,
            violation: None,
            equation_used: "s^(ω+1) = s^ω·t·s^ω",
        },
        Some((s, t)) => {
            let rhs = mon.mul(mon.mul(omega[s], t), omega[s]);
            Verdict {
                answer: false,
                violation: Some(violation_for(m, s, t, omega1[s], rhs)),
                equation_used: "s^(ω+1) = s^ω·t·s^ω",
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::syntactic;
    use crate::automata::{compile, parse_regex, Alphabet, Dfa};
    use crate::baseclass::{AtOracle, BaseClassOracle, StOracle};
    use crate::pairs::{compute_pairs, compute_saturated, SaturatedMethod};

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn dfa(pattern: &str) -> Dfa {
        compile(&parse_regex(pattern, &ab()).unwrap())
    }

    fn pol_under(pattern: &str, oracle: &dyn BaseClassOracle) -> Verdict {
        let sd = syntactic(&dfa(pattern)).unwrap();
        let pairs = compute_pairs(sd.morphism(), oracle).unwrap();
        decide_pol(&sd, &pairs).unwrap()
    }

    fn copol_under(pattern: &str, oracle: &dyn BaseClassOracle) -> Verdict {
        let sd = syntactic(&dfa(pattern)).unwrap();
        let pairs = compute_pairs(sd.morphism(), oracle).unwrap();
        decide_copol(&sd, &pairs).unwrap()
    }

    fn upol_under(pattern: &str, oracle: &dyn BaseClassOracle) -> Verdict {
        let sd = syntactic(&dfa(pattern)).unwrap();
        let plain = compute_pairs(sd.morphism(), oracle).unwrap();
        let sat = compute_saturated(
            sd.morphism(),
            oracle,
            SaturatedMethod::ByClosure,
            Some(&plain),
        )
        .unwrap();
        decide_upol(&sd, &plain, &sat).unwrap()
    }

    #[test]
    fn pol_st_examples() {
        let st = StOracle::new(ab());
        assert!(pol_under("(a|b)*a(a|b)*", &st).answer);
        assert!(pol_under("(a|b)*", &st).answer);

        let v = pol_under("(ab)*", &st);
        assert!(!v.answer);
        let violation = v.violation.unwrap();
        assert_eq!(violation.s_rep.to_string(), "ab");
        assert_eq!(violation.t_rep.to_string(), "a");
        // ab·a·ab is the zero, whose shortlex representative is aa.
        assert_eq!(violation.rhs_rep.to_string(), "aa");
        assert_eq!(v.equation_used, "e ≤ e·t·e");
    }

    #[test]
    fn copol_st_examples() {
        let st = StOracle::new(ab());
        assert!(copol_under("b*", &st).answer);
        let empty_sd = syntactic(&Dfa::empty_lang(&ab())).unwrap();
        let pairs = compute_pairs(empty_sd.morphism(), &st).unwrap();
        assert!(decide_copol(&empty_sd, &pairs).unwrap().answer);

        let v = copol_under("(ab)*", &st);
        assert!(!v.answer);
        let violation = v.violation.unwrap();
        assert_eq!(violation.s_rep.to_string(), "ε");
        assert_eq!(violation.t_rep.to_string(), "a");
        assert_eq!(violation.lhs_rep.to_string(), "a"); // ete = 1·a·1 = a
    }

    #[test]
    fn upol_examples() {
        let st = StOracle::new(ab());
        let at = AtOracle::new(ab());
        assert!(upol_under("(a|b)*a(a|b)*", &at).answer);
        assert!(!upol_under("(a|b)*a(a|b)*", &st).answer);
        assert!(upol_under("(a|b)*", &st).answer);
    }

    #[test]
    fn complement_duality() {
        let st = StOracle::new(ab());
        let at = AtOracle::new(ab());
        for pattern in ["(a|b)*a(a|b)*", "(ab)*", "b*", "a*b*", "(a|b)*b"] {
            for oracle in [&st as &dyn BaseClassOracle, &at] {
                let copol = copol_under(pattern, oracle);
                let complement = dfa(pattern).complement();
                let sd = syntactic(&complement).unwrap();
                let pairs = compute_pairs(sd.morphism(), oracle).unwrap();
                let pol_of_complement = decide_pol(&sd, &pairs).unwrap();
                assert_eq!(
                    copol.answer, pol_of_complement.answer,
                    "{pattern} under {}",
                    oracle.name()
                );
            }
        }
    }

    #[test]
    fn upol_is_the_conjunction_of_pol_and_copol() {
        let st = StOracle::new(ab());
        let at = AtOracle::new(ab());
        for pattern in ["(a|b)*a(a|b)*", "(ab)*", "b*", "a*b*", "(a|b)*b"] {
            for oracle in [&st as &dyn BaseClassOracle, &at] {
                let pol = pol_under(pattern, oracle).answer;
                let copol = copol_under(pattern, oracle).answer;
                let upol = upol_under(pattern, oracle).answer;
                assert_eq!(upol, pol && copol, "{pattern} under {}", oracle.name());
            }
        }
    }

    #[test]
    fn st_pairs_contain_at_pairs_and_decisions_are_monotone() {
        let st = StOracle::new(ab());
        let at = AtOracle::new(ab());
        for pattern in ["(a|b)*a(a|b)*", "(ab)*", "b*", "a*b*"] {
            let sd = syntactic(&dfa(pattern)).unwrap();
            let st_pairs = compute_pairs(sd.morphism(), &st).unwrap();
            let at_pairs = compute_pairs(sd.morphism(), &at).unwrap();
            assert!(at_pairs.is_subset_of(&st_pairs), "{pattern}");
            let pol_st = decide_pol(&sd, &st_pairs).unwrap().answer;
            let pol_at = decide_pol(&sd, &at_pairs).unwrap().answer;
            assert!(!pol_st || pol_at, "{pattern}: pol(ST) yes must force pol(AT) yes");
        }
    }

    #[test]
    fn trivial_monoid_satisfies_everything() {
        let st = StOracle::new(ab());
        for d in [Dfa::universal(&ab()), Dfa::empty_lang(&ab())] {
            let sd = syntactic(&d).unwrap();
            let pairs = compute_pairs(sd.morphism(), &st).unwrap();
            assert!(decide_pol(&sd, &pairs).unwrap().answer);
            assert!(decide_copol(&sd, &pairs).unwrap().answer);
            let sat = compute_saturated(
                sd.morphism(),
                &st,
                SaturatedMethod::ByClosure,
                Some(&pairs),
            )
            .unwrap();
            assert!(decide_upol(&sd, &pairs, &sat).unwrap().answer);
        }
    }

    #[test]
    fn kind_mismatch_is_an_input_error() {
        let sd = syntactic(&dfa("b*")).unwrap();
        let st = StOracle::new(ab());
        let plain = compute_pairs(sd.morphism(), &st).unwrap();
        let sat = compute_saturated(
            sd.morphism(),
            &st,
            SaturatedMethod::ByClosure,
            Some(&plain),
        )
        .unwrap();
        assert!(decide_pol(&sd, &sat).is_err());
        assert!(decide_upol(&sd, &sat, &plain).is_err());
    }
}
