//! Seeded law suites: every supporting statement the decision procedures
//! lean on, exercised end to end on fixtures and random instances.
//!
//! Each case names the law it checks; a report with an empty failure list is
//! the passing outcome. All randomness is seeded, so identical (suite, seed,
//! samples) runs produce identical reports.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{syntactic, SyntacticData};
use crate::automata::{compile, parse_regex, words_up_to, Alphabet, Dfa, Word};
use crate::baseclass::{
    check_char_property, is_upward_closed, saturate_lattice, AtOracle, BaseClassOracle,
    CanonicalPreorder, FiniteLattice, LatticeOracle, StOracle,
};
use crate::bits::BitMatrix;
use crate::decide::{decide_copol, decide_pol, decide_upol};
use crate::forest::{build_forest, validate_forest};
use crate::pairs::{
    check_relation_laws, compute_pairs, compute_pairs_by_calls, compute_saturated, PairRelation,
    RelationKind, SaturatedMethod,
};
use crate::witness::{synthesize, verify_witness};
use crate::{Error, Result};

/// One checked law instance.
#[derive(Debug, Clone)]
pub struct LawCase {
    pub name: String,
    pub passed: bool,
    /// Observations for passing cases, a minimal reproduction otherwise.
    pub detail: String,
}

/// Outcome of a suite run; deterministic for a given (suite, seed, samples).
#[derive(Debug, Clone)]
pub struct LawSuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub cases: Vec<LawCase>,
}

impl LawSuiteReport {
    pub fn failures(&self) -> Vec<&LawCase> {
        self.cases.iter().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Preorder,
    Period,
    CharProp,
    Pairs,
    Saturated,
    Equations,
    Forest,
    Witness,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = [
        "preorder",
        "period",
        "charprop",
        "pairs",
        "saturated",
        "equations",
        "forest",
        "witness",
        "all",
    ];

    pub fn parse(name: &str) -> Result<Suite> {
        Ok(match name {
            "preorder" => Suite::Preorder,
            "period" => Suite::Period,
            "charprop" => Suite::CharProp,
            "pairs" => Suite::Pairs,
            "saturated" => Suite::Saturated,
            "equations" => Suite::Equations,
            "forest" => Suite::Forest,
            "witness" => Suite::Witness,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown suite '{name}' (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// The two-letter alphabet all fixtures live over.
pub fn fixture_alphabet() -> Alphabet {
    Alphabet::parse("ab").expect("fixture alphabet")
}

/// Named fixture languages over {a, b}.
pub fn fixture_languages() -> Vec<(String, Dfa)> {
    let ab = fixture_alphabet();
    let mut out: Vec<(String, Dfa)> = ["(a|b)*a(a|b)*", "b*", "(ab)*", "(a|b)*", "a*b*"]
        .iter()
        .map(|p| {
            (
                p.to_string(),
                compile(&parse_regex(p, &ab).expect("fixture regex")),
            )
        })
        .collect();
    out.push(("∅".into(), Dfa::empty_lang(&ab)));
    out
}

/// The lattices the preorder/period/charprop suites run on: saturations of
/// `A*`, `b*`, and `(a|b)*a(a|b)*`.
pub fn builtin_lattices() -> Result<Vec<(String, FiniteLattice)>> {
    let ab = fixture_alphabet();
    let mut out = Vec::new();
    for (name, generator) in [
        ("D(A*)", Dfa::universal(&ab)),
        ("D(b*)", compile(&parse_regex("b*", &ab)?)),
        ("D(A*aA*)", compile(&parse_regex("(a|b)*a(a|b)*", &ab)?)),
    ] {
        out.push((name.to_string(), saturate_lattice(&[generator])?));
    }
    Ok(out)
}

/// A uniformly random word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        (0..len)
            .map(|_| alphabet.letter(rng.gen_range(0..alphabet.len())))
            .collect(),
    )
}

/// A random minimal complete DFA: random total transitions and finals over
/// `alphabet` on at most `max_states` states, minimized to canonical form.
pub fn random_minimal_dfa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let finals: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_parts(alphabet.clone(), n, 0, &finals, delta)
        .expect("random DFA parts are well-formed")
        .minimize()
}

/// An alphabet of 1 to `max_letters` letters drawn from a, b, c.
pub fn random_alphabet(rng: &mut ChaCha8Rng, max_letters: usize) -> Alphabet {
    let k = rng.gen_range(1..=max_letters.min(3));
    Alphabet::new("abc".chars().take(k)).expect("random alphabet")
}

pub fn run_laws(suite: Suite, seed: u64, samples: usize) -> Result<LawSuiteReport> {
    let cases = match suite {
        Suite::Preorder => preorder_suite(seed, samples)?,
        Suite::Period => period_suite()?,
        Suite::CharProp => charprop_suite(seed, samples)?,
        Suite::Pairs => pairs_suite(seed, samples)?,
        Suite::Saturated => saturated_suite()?,
        Suite::Equations => equations_suite(seed, samples)?,
        Suite::Forest => forest_suite(seed, samples)?,
        Suite::Witness => witness_suite()?,
        Suite::All => {
            let mut all = Vec::new();
            all.extend(preorder_suite(seed, samples)?);
            all.extend(period_suite()?);
            all.extend(charprop_suite(seed, samples)?);
            all.extend(pairs_suite(seed, samples)?);
            all.extend(saturated_suite()?);
            all.extend(equations_suite(seed, samples)?);
            all.extend(forest_suite(seed, samples)?);
            all.extend(witness_suite()?);
            all
        }
    };
    let suite_name = match suite {
        Suite::Preorder => "preorder",
        Suite::Period => "period",
        Suite::CharProp => "charprop",
        Suite::Pairs => "pairs",
        Suite::Saturated => "saturated",
        Suite::Equations => "equations",
        Suite::Forest => "forest",
        Suite::Witness => "witness",
        Suite::All => "all",
    };
    Ok(LawSuiteReport {
        suite: suite_name.into(),
        seed,
        samples,
        cases,
    })
}

/// Upper sets of `≤_C` are exactly the lattice languages, and `≤_C` is
/// compatible with concatenation.
fn preorder_suite(seed: u64, samples: usize) -> Result<Vec<LawCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = fixture_alphabet();
    let mut cases = Vec::new();
    for (name, lattice) in builtin_lattices()? {
        let pre = CanonicalPreorder::new(&lattice)?;

        let mut mismatches = Vec::new();
        let n_langs = (samples / 10).clamp(5, 40);
        for i in 0..n_langs {
            let l = random_minimal_dfa(&mut rng, &ab, 4);
            let in_lattice = lattice.position_of(&l).is_some();
            let upward = is_upward_closed(&pre, &l)?;
            if in_lattice != upward {
                mismatches.push(format!(
                    "random language #{i} ({} states): member={in_lattice}, upward-closed={upward}",
                    l.n_states()
                ));
            }
        }
        cases.push(LawCase {
            name: format!("{name}: upper sets for ≤_C are exactly the lattice languages"),
            passed: mismatches.is_empty(),
            detail: if mismatches.is_empty() {
                format!("{n_langs} random languages")
            } else {
                mismatches.join("; ")
            },
        });

        let m = pre.profile_morphism().monoid();
        let k = pre.profile_morphism().size();
        let mut compat = true;
        'outer: for s1 in 0..k {
            for t1 in 0..k {
                if !pre.leq_elements(s1, t1) {
                    continue;
                }
                for s2 in 0..k {
                    for t2 in 0..k {
                        if pre.leq_elements(s2, t2)
                            && !pre.leq_elements(m.mul(s1, s2), m.mul(t1, t2))
                        {
                            compat = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        cases.push(LawCase {
            name: format!("{name}: ≤_C is compatible with concatenation"),
            passed: compat,
            detail: format!("exact over all {k}² profile pairs"),
        });
    }
    Ok(cases)
}

/// `w^{pm} ≤_C w^{pm'}` in both directions, `p` the lattice period.
fn period_suite() -> Result<Vec<LawCase>> {
    let ab = fixture_alphabet();
    let mut cases = Vec::new();
    for (name, lattice) in builtin_lattices()? {
        let pre = CanonicalPreorder::new(&lattice)?;
        let p = pre.period();
        let mut failures = Vec::new();
        for w in words_up_to(&ab, 3) {
            for m in 1..=3usize {
                for m2 in 1..=3usize {
                    if !pre.leq_words(&w.repeat(p * m), &w.repeat(p * m2)) {
                        failures.push(format!("{w}^{} ≰ {w}^{}", p * m, p * m2));
                    }
                }
            }
        }
        cases.push(LawCase {
            name: format!("{name}: w^(pm) ≤_C w^(pm') with p = {p}"),
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                "exact over all words of length ≤ 3, m, m' ∈ 1..3".into()
            } else {
                failures.join("; ")
            },
        });
    }
    Ok(cases)
}

/// The characteristic property of polynomial closure, sampled on verified
/// witnesses over saturated lattices.
fn charprop_suite(seed: u64, samples: usize) -> Result<Vec<LawCase>> {
    let ab = fixture_alphabet();
    let mut cases = Vec::new();
    let instances = [
        ("(a|b)*a(a|b)*", "(a|b)*a(a|b)*"),
        ("b*", "b*"),
        ("(a|b)*", "(a|b)*"),
        // The degenerate lattice also admits a witness for A*aA*.
        ("(a|b)*a(a|b)*", "(a|b)*"),
    ];
    for (lang_pattern, generator_pattern) in instances {
        let l = compile(&parse_regex(lang_pattern, &ab)?);
        let lattice = saturate_lattice(&[compile(&parse_regex(generator_pattern, &ab)?)])?;
        let oracle = LatticeOracle::new(format!("D({generator_pattern})"), lattice.clone());
        let sd = syntactic(&l)?;
        let pairs = compute_pairs(sd.morphism(), &oracle)?;
        let synthesis = synthesize(&sd, &oracle, &pairs, None)?;
        let report = check_char_property(&l, &lattice, synthesis.expr(), samples, seed)?;
        cases.push(LawCase {
            name: format!(
                "{lang_pattern} over D({generator_pattern}): \
                 x·u^(pℓ+1)·y ∈ L ⇒ x·u^(pℓ)·v·u^(pℓ)·y ∈ L"
            ),
            passed: report.holds(),
            detail: if report.holds() {
                format!(
                    "{} samples, {} premises hit, h = {}, p = {}",
                    report.samples, report.premises_hit, report.h, report.period
                )
            } else {
                let v = &report.violations[0];
                format!(
                    "violated at x={} u={} v={} y={} ℓ={}",
                    v.x, v.u, v.v, v.y, v.ell
                )
            },
        });
    }
    Ok(cases)
}

fn random_oracle(rng: &mut ChaCha8Rng, alphabet: &Alphabet) -> Box<dyn BaseClassOracle> {
    if rng.gen_bool(0.5) {
        Box::new(StOracle::new(alphabet.clone()))
    } else {
        Box::new(AtOracle::new(alphabet.clone()))
    }
}

/// Reflexivity and multiplicativity of plain pairs, on fixtures and random
/// (morphism, oracle) instances, with the shortcut cross-checked against
/// the literal separation queries on small monoids.
fn pairs_suite(seed: u64, samples: usize) -> Result<Vec<LawCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = fixture_alphabet();
    let mut cases = Vec::new();

    for (name, l) in fixture_languages() {
        let sd = syntactic(&l)?;
        for oracle in [
            Box::new(StOracle::new(ab.clone())) as Box<dyn BaseClassOracle>,
            Box::new(AtOracle::new(ab.clone())),
        ] {
            let rel = compute_pairs(sd.morphism(), oracle.as_ref())?;
            let report = check_relation_laws(&rel, sd.morphism(), None);
            cases.push(LawCase {
                name: format!("{name} under {}: pairs reflexive and multiplicative", oracle.name()),
                passed: report.reflexive && report.multiplicative,
                detail: format!("{} related pairs", rel.count()),
            });
        }
    }

    let n_random = samples.clamp(10, 50);
    let mut failures = Vec::new();
    let mut cross_checked = 0usize;
    for i in 0..n_random {
        let alphabet = random_alphabet(&mut rng, 3);
        let l = random_minimal_dfa(&mut rng, &alphabet, 3);
        let sd = syntactic(&l)?;
        let oracle = random_oracle(&mut rng, &alphabet);
        let rel = compute_pairs(sd.morphism(), oracle.as_ref())?;
        let report = check_relation_laws(&rel, sd.morphism(), None);
        if !(report.reflexive && report.multiplicative) {
            failures.push(format!("instance #{i} under {}", oracle.name()));
        }
        if sd.morphism().size() <= 8 {
            let literal = compute_pairs_by_calls(sd.morphism(), oracle.as_ref())?;
            cross_checked += 1;
            if !rel.same_bits(&literal) {
                failures.push(format!(
                    "instance #{i}: shortcut disagrees with separation queries"
                ));
            }
        }
    }
    cases.push(LawCase {
        name: "random morphisms: pairs reflexive, multiplicative, shortcut exact".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{n_random} instances, {cross_checked} cross-checked literally")
        } else {
            failures.join("; ")
        },
    });
    Ok(cases)
}

/// Saturated pairs: method agreement, transitivity, and the upper-set
/// duality over every subset of the monoid.
fn saturated_suite() -> Result<Vec<LawCase>> {
    let ab = fixture_alphabet();
    let at = AtOracle::new(ab.clone());
    let mut cases = Vec::new();
    for (name, l) in fixture_languages() {
        let sd = syntactic(&l)?;
        let m = sd.morphism();
        if m.size() > 8 {
            continue;
        }
        let plain = compute_pairs(m, &at)?;
        let by_membership =
            compute_saturated(m, &at, SaturatedMethod::ByMembership, Some(&plain))?;
        let by_closure = compute_saturated(m, &at, SaturatedMethod::ByClosure, Some(&plain))?;
        cases.push(LawCase {
            name: format!("{name} under AT: saturated methods agree bit for bit"),
            passed: by_membership.same_bits(&by_closure),
            detail: format!("{} saturated pairs", by_membership.count()),
        });
        let report = check_relation_laws(&by_membership, m, None);
        cases.push(LawCase {
            name: format!("{name} under AT: saturated relation is a multiplicative preorder"),
            passed: report.all_hold(),
            detail: format!("{report:?}"),
        });
        cases.push(LawCase {
            name: format!("{name} under AT: plain pairs are saturated pairs"),
            passed: plain.is_subset_of(&by_membership),
            detail: format!("{} ⊆ {}", plain.count(), by_membership.count()),
        });

        // Upper-set duality over all 2^|M| subsets.
        let n = m.size();
        let mut duality_failures = Vec::new();
        for mask in 0u64..(1 << n) {
            let subset: BTreeSet<usize> = (0..n).filter(|&s| mask >> s & 1 == 1).collect();
            let member = at.member(&m.recognized_dfa(&subset))?;
            let upper = crate::algebra::is_upper_set(n, &subset, |s, t| {
                by_membership.contains(s, t)
            });
            if member != upper {
                duality_failures.push(format!("F = {subset:?}"));
            }
        }
        cases.push(LawCase {
            name: format!("{name} under AT: α⁻¹(F) ∈ AT ⟺ F is a saturated upper set"),
            passed: duality_failures.is_empty(),
            detail: if duality_failures.is_empty() {
                format!("all {} subsets", 1u64 << n)
            } else {
                duality_failures.join("; ")
            },
        });
    }
    Ok(cases)
}

/// A random reflexive, multiplication-compatible relation: the closure of
/// random seed pairs plus the diagonal under products.
fn random_compatible_relation(
    rng: &mut ChaCha8Rng,
    sd: &SyntacticData,
) -> PairRelation {
    let n = sd.morphism().size();
    let mon = sd.morphism().monoid();
    let mut bits = BitMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=n) {
        bits.set(rng.gen_range(0..n), rng.gen_range(0..n), true);
    }
    loop {
        let related: Vec<(usize, usize)> = PairRelation::from_bits(RelationKind::Plain, bits.clone())
            .related_pairs();
        let mut changed = false;
        for &(s1, t1) in &related {
            for &(s2, t2) in &related {
                let (s, t) = (mon.mul(s1, s2), mon.mul(t1, t2));
                if !bits.get(s, t) {
                    bits.set(s, t, true);
                    changed = true;
                }
            }
        }
        if !changed {
            return PairRelation::from_bits(RelationKind::Plain, bits);
        }
    }
}

/// The general and idempotent equation forms must agree on any reflexive
/// multiplication-compatible relation over any syntactic ordered monoid;
/// the deciders cross-assert this internally and error out on disagreement.
fn equations_suite(seed: u64, samples: usize) -> Result<Vec<LawCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_random = samples.clamp(20, 100);
    let mut failures = Vec::new();
    let mut built = 0usize;
    while built < n_random {
        let alphabet = random_alphabet(&mut rng, 3);
        let l = random_minimal_dfa(&mut rng, &alphabet, 3);
        let sd = syntactic(&l)?;
        if sd.morphism().size() > 6 {
            continue;
        }
        built += 1;
        let rel = random_compatible_relation(&mut rng, &sd);
        let saturated = compute_saturated(
            sd.morphism(),
            &StOracle::new(alphabet.clone()),
            SaturatedMethod::ByClosure,
            Some(&rel),
        )?;
        for (what, outcome) in [
            ("pol", decide_pol(&sd, &rel).map(|_| ())),
            ("copol", decide_copol(&sd, &rel).map(|_| ())),
            ("upol", decide_upol(&sd, &rel, &saturated).map(|_| ())),
        ] {
            if let Err(e) = outcome {
                failures.push(format!("instance #{built} {what}: {e}"));
            }
        }
    }
    Ok(vec![LawCase {
        name: "equation forms (general vs idempotent/saturated) agree".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{built} random (monoid ≤ 6, relation) instances")
        } else {
            failures.join("; ")
        },
    }])
}

/// Random words build validating forests within the height bound.
fn forest_suite(seed: u64, samples: usize) -> Result<Vec<LawCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = fixture_alphabet();
    let mut cases = Vec::new();
    for (name, l) in fixture_languages() {
        let sd = syntactic(&l)?;
        let m = sd.morphism();
        let bound = 3 * m.size() - 1;
        let mut max_height = 0usize;
        let mut failures = Vec::new();
        for i in 0..samples {
            let w = random_word(&mut rng, &ab, 50);
            let f = build_forest(m, &w);
            let report = validate_forest(&f, m, &w);
            if !report.valid() {
                failures.push(format!("word #{i} '{w}': {:?}", report.failures));
            } else if report.height > bound {
                failures.push(format!(
                    "word #{i} '{w}': height {} exceeds {bound}",
                    report.height
                ));
            }
            max_height = max_height.max(report.height);
        }
        cases.push(LawCase {
            name: format!("{name}: forests validate with height ≤ 3|M|-1 = {bound}"),
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                format!("{samples} words, max observed height {max_height}")
            } else {
                failures.join("; ")
            },
        });
    }
    Ok(cases)
}

/// Synthesis round trips on every fixture in Pol(ST) or Pol(AT), with the
/// K_e contract checked on short words.
fn witness_suite() -> Result<Vec<LawCase>> {
    let ab = fixture_alphabet();
    let mut cases = Vec::new();
    for (name, l) in fixture_languages() {
        let sd = syntactic(&l)?;
        for oracle in [
            Box::new(StOracle::new(ab.clone())) as Box<dyn BaseClassOracle>,
            Box::new(AtOracle::new(ab.clone())),
        ] {
            let pairs = compute_pairs(sd.morphism(), oracle.as_ref())?;
            if !decide_pol(&sd, &pairs)?.answer {
                continue;
            }
            let synthesis = synthesize(&sd, oracle.as_ref(), &pairs, None)?;
            let verified = synthesis.verified() && verify_witness(&l, &synthesis)?;
            cases.push(LawCase {
                name: format!("{name} under {}: witness synthesizes and verifies", oracle.name()),
                passed: verified,
                detail: format!(
                    "level {}, largest automaton {} states",
                    synthesis.level(),
                    synthesis.stats().largest_automaton
                ),
            });

            let m = sd.morphism();
            let mut ke_failures = Vec::new();
            for e in m.monoid().idempotents() {
                let ke = crate::witness::compute_ke(e, m, oracle.as_ref(), &pairs)?;
                if !ke.dfa.includes(&m.preimage_dfa(e))? {
                    ke_failures.push(format!("{}: preimage not included", ke.name));
                }
                for w in words_up_to(&ab, 6) {
                    if ke.dfa.accepts(&w) && !pairs.contains(e, m.evaluate(&w)) {
                        ke_failures.push(format!("{} contains {w} outside the pairs", ke.name));
                        break;
                    }
                }
            }
            cases.push(LawCase {
                name: format!("{name} under {}: K_e contract", oracle.name()),
                passed: ke_failures.is_empty(),
                detail: if ke_failures.is_empty() {
                    format!("{} idempotents", m.monoid().idempotents().len())
                } else {
                    ke_failures.join("; ")
                },
            });
        }
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_a_fixed_seed() {
        for suite in [
            Suite::Preorder,
            Suite::Period,
            Suite::CharProp,
            Suite::Pairs,
            Suite::Saturated,
            Suite::Equations,
            Suite::Witness,
        ] {
            let report = run_laws(suite, 1, 40).unwrap();
            assert!(!report.cases.is_empty());
            assert!(
                report.passed(),
                "suite {:?} failed: {:?}",
                suite,
                report.failures()
            );
        }
    }

    #[test]
    fn forest_suite_passes_and_reports_heights() {
        let report = run_laws(Suite::Forest, 1, 60).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
        assert!(report.cases.iter().all(|c| c.detail.contains("max observed height")));
    }

    #[test]
    fn reports_are_deterministic_for_a_seed() {
        let a = run_laws(Suite::Pairs, 7, 25).unwrap();
        let b = run_laws(Suite::Pairs, 7, 25).unwrap();
        let render = |r: &LawSuiteReport| {
            r.cases
                .iter()
                .map(|c| format!("{}|{}|{}", c.name, c.passed, c.detail))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(render(&a), render(&b));
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert!(Suite::parse("nope").is_err());
        assert!(Suite::parse("forest").is_ok());
    }

    #[test]
    fn random_dfas_are_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let alphabet = random_alphabet(&mut rng, 3);
            let d = random_minimal_dfa(&mut rng, &alphabet, 5);
            assert_eq!(d.minimize(), d);
        }
    }
}
