//! Factorization forests: tree decompositions of a word into leaves (single
//! letters or the empty word), binary nodes, and idempotent nodes whose
//! children all map to one idempotent element.
//!
//! [`build_forest`] returns a minimum-height forest for the word, found by
//! dynamic programming over word intervals. An interval is either a leaf, a
//! binary split, or (when its image `e` is idempotent) an idempotent split
//! into two or more parts each with image `e`; the only possible idempotent
//! element for an interval is its own image, so each interval has one
//! idempotent candidate. Minimizing height exactly means the returned
//! forests inherit the `3|M| - 1` height bound, which the factorization
//! forest theorem guarantees is always attainable.

use std::fmt::Write as _;

use crate::algebra::Morphism;
use crate::automata::Word;

/// A node of a factorization forest.
#[derive(Debug, Clone)]
pub enum ForestNode {
    /// A single letter or the empty word.
    Leaf(Word),
    Binary(Box<ForestNode>, Box<ForestNode>),
    /// Two or more children, all mapping to the idempotent `element`.
    Idempotent(Vec<ForestNode>, usize),
}

impl ForestNode {
    /// Number of inner nodes on the longest branch; a leaf has height 0.
    pub fn height(&self) -> usize {
        match self {
            ForestNode::Leaf(_) => 0,
            ForestNode::Binary(l, r) => 1 + l.height().max(r.height()),
            ForestNode::Idempotent(children, _) => {
                1 + children.iter().map(|c| c.height()).max().unwrap_or(0)
            }
        }
    }

    /// The label: concatenation of the leaf labels below this node.
    pub fn label(&self) -> Word {
        match self {
            ForestNode::Leaf(w) => w.clone(),
            ForestNode::Binary(l, r) => l.label().concat(&r.label()),
            ForestNode::Idempotent(children, _) => children
                .iter()
                .fold(Word::empty(), |acc, c| acc.concat(&c.label())),
        }
    }
}

/// An α-factorization forest for a word.
#[derive(Debug, Clone)]
pub struct Forest {
    root: ForestNode,
}

impl Forest {
    pub fn root(&self) -> &ForestNode {
        &self.root
    }

    pub fn from_root(root: ForestNode) -> Forest {
        Forest { root }
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    pub fn word(&self) -> Word {
        self.root.label()
    }

    /// Indented dump with per-node images under `m`.
    pub fn dump(&self, m: &Morphism) -> String {
        fn walk(node: &ForestNode, m: &Morphism, depth: usize, out: &mut String) {
            let pad = "  ".repeat(depth);
            let label = node.label();
            let image = m.representative_text(m.evaluate(&label));
            match node {
                ForestNode::Leaf(_) => {
                    writeln!(out, "{pad}leaf {label} ↦ {image}").unwrap();
                }
                ForestNode::Binary(l, r) => {
                    writeln!(out, "{pad}binary {label} ↦ {image}").unwrap();
                    walk(l, m, depth + 1, out);
                    walk(r, m, depth + 1, out);
                }
                ForestNode::Idempotent(children, e) => {
                    writeln!(
                        out,
                        "{pad}idempotent[{}] {label} ↦ {image}",
                        m.representative_text(*e)
                    )
                    .unwrap();
                    for c in children {
                        walk(c, m, depth + 1, out);
                    }
                }
            }
        }
        let mut out = String::new();
        walk(&self.root, m, 0, &mut out);
        out
    }
}

/// Interval DP state over `w[i..j)`.
struct Solver<'a> {
    m: &'a Morphism,
    letters: Vec<char>,
    /// `img[i][j - i - 1]`: image of `w[i..j)`.
    img: Vec<Vec<usize>>,
    /// `height[i][j - i - 1]`: minimal forest height of `w[i..j)`.
    height: Vec<Vec<u32>>,
}

impl<'a> Solver<'a> {
    fn new(m: &'a Morphism, w: &Word) -> Solver<'a> {
        let letters: Vec<char> = w.letters().to_vec();
        let n = letters.len();
        let letter_elems: Vec<usize> = letters
            .iter()
            .map(|&c| {
                let a = m
                    .alphabet()
                    .index_of(c)
                    .expect("word letter not in the morphism alphabet");
                m.letter_image(a)
            })
            .collect();
        let mut img = vec![Vec::new(); n];
        for i in 0..n {
            let mut acc = letter_elems[i];
            img[i].push(acc);
            for j in i + 2..=n {
                acc = m.monoid().mul(acc, letter_elems[j - 1]);
                img[i].push(acc);
            }
        }
        Solver {
            m,
            letters,
            img,
            height: vec![Vec::new(); n],
        }
    }

    fn image(&self, i: usize, j: usize) -> usize {
        self.img[i][j - i - 1]
    }

    fn h(&self, i: usize, j: usize) -> u32 {
        self.height[i][j - i - 1]
    }

    fn solve(&mut self) {
        let n = self.letters.len();
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                let best = self.best_height(i, j);
                debug_assert_eq!(self.height[i].len(), len - 1);
                self.height[i].push(best);
            }
        }
    }

    fn best_height(&self, i: usize, j: usize) -> u32 {
        if j - i == 1 {
            return 0;
        }
        let mut best = u32::MAX;
        for k in i + 1..j {
            best = best.min(1 + self.h(i, k).max(self.h(k, j)));
        }
        let e = self.image(i, j);
        if self.m.monoid().is_idempotent(e) {
            if let Some(minimax) = self.idempotent_minimax(i, j, e) {
                best = best.min(1 + minimax);
            }
        }
        best
    }

    /// Minimal possible maximum part height over splits of `w[i..j)` into
    /// two or more parts, each with image `e`; `None` when no split exists.
    fn idempotent_minimax(&self, i: usize, j: usize, e: usize) -> Option<u32> {
        // tail[x - i - 1]: best minimax for decomposing w[x..j) into one or
        // more e-parts.
        let mut tail: Vec<Option<u32>> = vec![None; j - i - 1];
        for x in (i + 1..j).rev() {
            let mut best: Option<u32> = None;
            for k in x + 1..=j {
                if self.image(x, k) != e {
                    continue;
                }
                let rest = if k == j {
                    Some(0)
                } else {
                    tail[k - i - 1]
                };
                if let Some(rest) = rest {
                    let v = self.h(x, k).max(rest);
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
            tail[x - i - 1] = best;
        }
        let mut best: Option<u32> = None;
        for k in i + 1..j {
            if self.image(i, k) != e {
                continue;
            }
            if let Some(rest) = tail[k - i - 1] {
                let v = self.h(i, k).max(rest);
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        best
    }

    fn rebuild(&self, i: usize, j: usize) -> ForestNode {
        let target = self.h(i, j);
        if j - i == 1 {
            return ForestNode::Leaf(Word::from_letters(vec![self.letters[i]]));
        }
        let e = self.image(i, j);
        if self.m.monoid().is_idempotent(e) {
            if let Some(minimax) = self.idempotent_minimax(i, j, e) {
                if 1 + minimax == target {
                    let cuts = self.idempotent_cuts(i, j, e, minimax);
                    let mut children = Vec::with_capacity(cuts.len() + 1);
                    let mut prev = i;
                    for &cut in &cuts {
                        children.push(self.rebuild(prev, cut));
                        prev = cut;
                    }
                    children.push(self.rebuild(prev, j));
                    return ForestNode::Idempotent(children, e);
                }
            }
        }
        for k in i + 1..j {
            if 1 + self.h(i, k).max(self.h(k, j)) == target {
                return ForestNode::Binary(
                    Box::new(self.rebuild(i, k)),
                    Box::new(self.rebuild(k, j)),
                );
            }
        }
        unreachable!("no split reaches the computed optimum");
    }

    /// Cut positions (strictly inside `(i, j)`) realizing the idempotent
    /// minimax: every part `w[cut..next)` has image `e` and height ≤ bound.
    fn idempotent_cuts(&self, i: usize, j: usize, e: usize, bound: u32) -> Vec<usize> {
        let mut cuts = Vec::new();
        let mut x = i;
        loop {
            // Greedy: any next cut k keeping the remainder decomposable
            // within the bound.
            let k = (x + 1..=j)
                .find(|&k| {
                    self.image(x, k) == e
                        && self.h(x, k) <= bound
                        && (k == j || self.remainder_ok(k, j, e, bound))
                })
                .expect("idempotent decomposition vanished on rebuild");
            if k == j {
                if cuts.is_empty() {
                    unreachable!("idempotent split must produce at least two parts");
                }
                return cuts;
            }
            cuts.push(k);
            x = k;
        }
    }

    /// Can `w[x..j)` be decomposed into one or more e-parts of height at
    /// most `bound`?
    fn remainder_ok(&self, x: usize, j: usize, e: usize, bound: u32) -> bool {
        let mut ok = vec![false; j - x + 1];
        ok[j - x] = true;
        for y in (x..j).rev() {
            ok[y - x] = (y + 1..=j)
                .any(|k| ok[k - x] && self.image(y, k) == e && self.h(y, k) <= bound);
        }
        // A part must start exactly at x.
        ok[0]
    }
}

/// Builds a valid factorization forest for `w` of minimal height; by the
/// factorization forest theorem the height is at most `3|M| - 1`.
pub fn build_forest(m: &Morphism, w: &Word) -> Forest {
    if w.len() <= 1 {
        return Forest {
            root: ForestNode::Leaf(w.clone()),
        };
    }
    let mut solver = Solver::new(m, w);
    solver.solve();
    let root = solver.rebuild(0, w.len());
    Forest { root }
}

/// Validation report for a forest against a morphism and expected word.
#[derive(Debug, Clone)]
pub struct ForestReport {
    pub height: usize,
    pub failures: Vec<String>,
}

impl ForestReport {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks leaf-label lengths, the idempotent condition at every idempotent
/// node (at least two children, all mapping to the node's idempotent
/// element), and that the root label is `w`.
pub fn validate_forest(f: &Forest, m: &Morphism, w: &Word) -> ForestReport {
    let mut failures = Vec::new();
    fn walk(node: &ForestNode, m: &Morphism, failures: &mut Vec<String>) {
        match node {
            ForestNode::Leaf(label) => {
                if label.len() > 1 {
                    failures.push(format!("leaf labeled '{label}' has length {}", label.len()));
                }
            }
            ForestNode::Binary(l, r) => {
                walk(l, m, failures);
                walk(r, m, failures);
            }
            ForestNode::Idempotent(children, e) => {
                if children.len() < 2 {
                    failures.push(format!(
                        "idempotent node has {} children (needs at least 2)",
                        children.len()
                    ));
                }
                if !m.monoid().is_idempotent(*e) {
                    failures.push(format!(
                        "element {} of an idempotent node is not idempotent",
                        m.representative_text(*e)
                    ));
                }
                for (i, c) in children.iter().enumerate() {
                    let image = m.evaluate(&c.label());
                    if image != *e {
                        failures.push(format!(
                            "child {i} of an idempotent node maps to {} instead of {}",
                            m.representative_text(image),
                            m.representative_text(*e)
                        ));
                    }
                    walk(c, m, failures);
                }
            }
        }
    }
    walk(&f.root, m, &mut failures);
    let label = f.root.label();
    if &label != w {
        failures.push(format!("root label '{label}' differs from the word '{w}'"));
    }
    ForestReport {
        height: f.height(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{syntactic, SyntacticData};
    use crate::automata::{compile, parse_regex, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn syntactic_of(pattern: &str) -> SyntacticData {
        syntactic(&compile(&parse_regex(pattern, &ab()).unwrap())).unwrap()
    }

    fn word(text: &str) -> Word {
        Word::parse(text, &ab()).unwrap()
    }

    #[test]
    fn empty_word_is_a_single_leaf() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let f = build_forest(sd.morphism(), &Word::empty());
        assert_eq!(f.height(), 0);
        assert!(matches!(f.root(), ForestNode::Leaf(w) if w.is_empty()));
        assert!(validate_forest(&f, sd.morphism(), &Word::empty()).valid());
    }

    #[test]
    fn idempotent_runs_collapse_to_height_one() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let f = build_forest(sd.morphism(), &word("bbb"));
        assert_eq!(f.height(), 1);
        assert!(matches!(f.root(), ForestNode::Idempotent(children, _) if children.len() == 3));
        assert!(validate_forest(&f, sd.morphism(), &word("bbb")).valid());
    }

    #[test]
    fn abab_over_the_six_element_monoid() {
        let sd = syntactic_of("(ab)*");
        let w = word("abab");
        let f = build_forest(sd.morphism(), &w);
        let report = validate_forest(&f, sd.morphism(), &w);
        assert!(report.valid(), "{:?}", report.failures);
        assert_eq!(f.height(), 2);
        assert!(f.height() <= 3 * sd.morphism().size() - 1);
    }

    #[test]
    fn long_words_meet_the_bound() {
        for pattern in ["(a|b)*a(a|b)*", "b*", "(ab)*"] {
            let sd = syntactic_of(pattern);
            let bound = 3 * sd.morphism().size() - 1;
            // A deterministic pseudo-random-ish word family.
            for stride in 1..6usize {
                let letters: Vec<char> = (0..50)
                    .map(|i| if (i * stride) % 3 == 0 { 'a' } else { 'b' })
                    .collect();
                let w = Word::from_letters(letters);
                let f = build_forest(sd.morphism(), &w);
                let report = validate_forest(&f, sd.morphism(), &w);
                assert!(report.valid(), "{pattern}: {:?}", report.failures);
                assert!(
                    f.height() <= bound,
                    "{pattern}: height {} exceeds {bound}",
                    f.height()
                );
                // Evaluation consistency.
                assert_eq!(
                    sd.morphism().evaluate(&f.word()),
                    sd.morphism().evaluate(&w)
                );
            }
        }
    }

    #[test]
    fn invalid_forests_are_rejected() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let m = sd.morphism();
        let s = m.evaluate(&word("a"));
        // Children mapping to 1 and s under a claimed idempotent 1.
        let bad = Forest::from_root(ForestNode::Idempotent(
            vec![
                ForestNode::Leaf(word("b")),
                ForestNode::Leaf(word("a")),
            ],
            m.monoid().neutral(),
        ));
        let report = validate_forest(&bad, m, &word("ba"));
        assert!(!report.valid());
        assert!(report.failures.iter().any(|f| f.contains("maps to")));
        let _ = s;

        // Leaf labeled by a two-letter word.
        let bad = Forest::from_root(ForestNode::Leaf(word("ab")));
        let report = validate_forest(&bad, m, &word("ab"));
        assert!(!report.valid());

        // Wrong root label.
        let good_tree = Forest::from_root(ForestNode::Leaf(word("a")));
        let report = validate_forest(&good_tree, m, &word("b"));
        assert!(!report.valid());
    }

    #[test]
    fn idempotent_node_with_two_children_is_accepted() {
        let sd = syntactic_of("(a|b)*a(a|b)*");
        let m = sd.morphism();
        let f = Forest::from_root(ForestNode::Idempotent(
            vec![ForestNode::Leaf(word("b")), ForestNode::Leaf(word("b"))],
            m.monoid().neutral(),
        ));
        assert!(validate_forest(&f, m, &word("bb")).valid());
    }

    #[test]
    fn dump_mentions_every_level() {
        let sd = syntactic_of("(ab)*");
        let w = word("abab");
        let f = build_forest(sd.morphism(), &w);
        let dump = f.dump(sd.morphism());
        assert!(dump.contains("leaf a"));
        assert!(dump.contains("↦"));
    }
}
