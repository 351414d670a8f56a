//! The defining relations of the singular virtual braid monoid and one-step
//! rewriting with them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::braid::word::{BraidStep, BraidWord, Generator};
use crate::search::Step;

/// Relation families, declared in label order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    R0,
    R2,
    R3,
    S1,
    S2,
    S3,
    S4,
    SV1,
    SV2,
    V1,
    V2,
    V3,
    V4,
    V5,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::R0,
        Family::R2,
        Family::R3,
        Family::S1,
        Family::S2,
        Family::S3,
        Family::S4,
        Family::SV1,
        Family::SV2,
        Family::V1,
        Family::V2,
        Family::V3,
        Family::V4,
        Family::V5,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::R0 => "R0",
            Family::R2 => "R2",
            Family::R3 => "R3",
            Family::S1 => "S1",
            Family::S2 => "S2",
            Family::S3 => "S3",
            Family::S4 => "S4",
            Family::SV1 => "SV1",
            Family::SV2 => "SV2",
            Family::V1 => "V1",
            Family::V2 => "V2",
            Family::V3 => "V3",
            Family::V4 => "V4",
            Family::V5 => "V5",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: Family,
    pub lhs: BraidWord,
    pub rhs: BraidWord,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.family, self.lhs, self.rhs)
    }
}

/// Every instance of every relation family on `n` strands, grouped by family
/// in label order. Commutation families over a single generator type (R0,
/// V1, S1) list each unordered index pair once; mixed ones list ordered pairs.
pub fn relation_catalog(n: usize) -> Vec<RelationInstance> {
    use Generator as G;
    assert!(n >= 2, "need at least two strands");
    let mut out = Vec::new();
    let mut add = |family, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        out.push(RelationInstance {
            family,
            lhs: BraidWord::from_valid(n, lhs),
            rhs: BraidWord::from_valid(n, rhs),
        })
    };
    let idx: Vec<usize> = (1..n).collect();
    let far_unordered: Vec<(usize, usize)> = idx
        .iter()
        .flat_map(|&i| idx.iter().filter(move |&&j| j >= i + 2).map(move |&j| (i, j)))
        .collect();
    let far_ordered: Vec<(usize, usize)> = idx
        .iter()
        .flat_map(|&i| idx.iter().filter(move |&&j| i.abs_diff(j) >= 2).map(move |&j| (i, j)))
        .collect();
    let adjacent: Vec<usize> = (1..n.saturating_sub(1)).collect();

    for &(i, j) in &far_unordered {
        add(Family::R0, vec![G::sigma(i), G::sigma(j)], vec![G::sigma(j), G::sigma(i)]);
    }
    for &i in &idx {
        add(Family::R2, vec![G::sigma(i), G::sigma_inv(i)], vec![]);
        add(Family::R2, vec![G::sigma_inv(i), G::sigma(i)], vec![]);
    }
    for &i in &adjacent {
        add(
            Family::R3,
            vec![G::sigma(i), G::sigma(i + 1), G::sigma(i)],
            vec![G::sigma(i + 1), G::sigma(i), G::sigma(i + 1)],
        );
    }
    for &(i, j) in &far_unordered {
        add(Family::S1, vec![G::tau(i), G::tau(j)], vec![G::tau(j), G::tau(i)]);
    }
    for &(i, j) in &far_ordered {
        add(Family::S2, vec![G::tau(i), G::sigma(j)], vec![G::sigma(j), G::tau(i)]);
    }
    for &i in &idx {
        add(Family::S3, vec![G::tau(i), G::sigma(i)], vec![G::sigma(i), G::tau(i)]);
    }
    for &i in &adjacent {
        add(
            Family::S4,
            vec![G::sigma(i), G::sigma(i + 1), G::tau(i)],
            vec![G::tau(i + 1), G::sigma(i), G::sigma(i + 1)],
        );
    }
    for &(i, j) in &far_ordered {
        add(Family::SV1, vec![G::rho(i), G::tau(j)], vec![G::tau(j), G::rho(i)]);
    }
    for &i in &adjacent {
        add(
            Family::SV2,
            vec![G::rho(i), G::tau(i + 1), G::rho(i)],
            vec![G::rho(i + 1), G::tau(i), G::rho(i + 1)],
        );
    }
    for &(i, j) in &far_unordered {
        add(Family::V1, vec![G::rho(i), G::rho(j)], vec![G::rho(j), G::rho(i)]);
    }
    for &(i, j) in &far_ordered {
        add(Family::V2, vec![G::sigma(i), G::rho(j)], vec![G::rho(j), G::sigma(i)]);
    }
    for &i in &idx {
        add(Family::V3, vec![G::rho(i), G::rho(i)], vec![]);
    }
    for &i in &adjacent {
        add(
            Family::V4,
            vec![G::rho(i), G::rho(i + 1), G::rho(i)],
            vec![G::rho(i + 1), G::rho(i), G::rho(i + 1)],
        );
    }
    for &i in &adjacent {
        add(
            Family::V5,
            vec![G::rho(i), G::sigma(i + 1), G::rho(i)],
            vec![G::rho(i + 1), G::sigma(i), G::rho(i + 1)],
        );
    }
    out
}

/// A directed rewrite `pattern -> replacement`, possibly backed by a trace of
/// catalog steps when the rule is a derived consequence.
#[derive(Clone, Debug)]
pub(crate) struct Rule {
    pub family: Family,
    pub pattern: Vec<Generator>,
    pub replacement: Vec<Generator>,
    /// `None` for catalog rules; for derived rules, a trace from `pattern` to
    /// `replacement` using catalog rules only.
    pub proof: Option<Vec<BraidStep>>,
}

impl Rule {
    fn primitive(family: Family, pattern: &[Generator], replacement: &[Generator]) -> Self {
        Rule {
            family,
            pattern: pattern.to_vec(),
            replacement: replacement.to_vec(),
            proof: None,
        }
    }
}

/// Compiled rewrite rules for a fixed strand count.
#[derive(Clone, Debug)]
pub(crate) struct RuleSet {
    pub rules: Vec<Rule>,
    by_first: HashMap<Generator, Vec<usize>>,
    inserting: Vec<usize>,
}

impl RuleSet {
    /// Catalog relations in both directions.
    pub fn catalog(n: usize) -> Self {
        let mut rules = Vec::new();
        for inst in relation_catalog(n) {
            rules.push(Rule::primitive(inst.family, inst.lhs.letters(), inst.rhs.letters()));
            rules.push(Rule::primitive(inst.family, inst.rhs.letters(), inst.lhs.letters()));
        }
        Self::index(rules)
    }

    fn index(rules: Vec<Rule>) -> Self {
        let mut by_first: HashMap<Generator, Vec<usize>> = HashMap::new();
        let mut inserting = Vec::new();
        for (ri, rule) in rules.iter().enumerate() {
            match rule.pattern.first() {
                Some(g) => by_first.entry(*g).or_default().push(ri),
                None => inserting.push(ri),
            }
        }
        RuleSet {
            rules,
            by_first,
            inserting,
        }
    }

    /// Catalog relations plus derived relations (both directions), each
    /// carrying a catalog-only proof.
    pub fn with_lemmas(n: usize) -> Self {
        let mut rules = Self::catalog(n).rules;
        let mut seen: BTreeSet<(Vec<Generator>, Vec<Generator>)> = rules
            .iter()
            .map(|r| (r.pattern.clone(), r.replacement.clone()))
            .collect();
        for lemma in derived_relations(n) {
            let back = Rule {
                family: lemma.family,
                pattern: lemma.replacement.clone(),
                replacement: lemma.pattern.clone(),
                proof: lemma.proof.as_ref().map(|p| crate::search::reverse_trace(p)),
            };
            for rule in [lemma, back] {
                if seen.insert((rule.pattern.clone(), rule.replacement.clone())) {
                    rules.push(rule);
                }
            }
        }
        Self::index(rules)
    }

    /// Every single-rule rewrite of `word` whose result has length at most
    /// `max_len`, ordered by family label, then position, then rule order.
    pub fn neighbors(&self, word: &[Generator], max_len: usize) -> Vec<(usize, usize, Vec<Generator>)> {
        let mut out = Vec::new();
        let mut push = |ri: usize, pos: usize| {
            let rule = &self.rules[ri];
            let k = rule.pattern.len();
            if pos + k > word.len() || word.len() - k + rule.replacement.len() > max_len {
                return;
            }
            if word[pos..pos + k] == rule.pattern[..] {
                let mut nb = Vec::with_capacity(word.len() - k + rule.replacement.len());
                nb.extend_from_slice(&word[..pos]);
                nb.extend_from_slice(&rule.replacement);
                nb.extend_from_slice(&word[pos + k..]);
                out.push((ri, pos, nb));
            }
        };
        for pos in 0..=word.len() {
            for &ri in &self.inserting {
                push(ri, pos);
            }
            if let Some(g) = word.get(pos) {
                if let Some(list) = self.by_first.get(g) {
                    for &ri in list {
                        push(ri, pos);
                    }
                }
            }
        }
        out.sort_by_key(|&(ri, pos, _)| (self.rules[ri].family, pos, ri));
        out
    }

    /// The catalog-only steps realizing rule `ri` at `pos`.
    pub fn expand(&self, ri: usize, pos: usize) -> Vec<BraidStep> {
        let rule = &self.rules[ri];
        match &rule.proof {
            None => vec![Step {
                label: rule.family,
                position: pos,
                removed: rule.pattern.clone(),
                inserted: rule.replacement.clone(),
            }],
            Some(proof) => proof.iter().map(|s| s.shifted(pos)).collect(),
        }
    }
}

/// All words obtained from `w` by one catalog relation, in either direction,
/// at any position, with length at most `max_len`. Deleting-side patterns of
/// R2/V3 are empty, so their reverse direction inserts a cancelling pair.
pub fn rewrite_neighbors(w: &BraidWord, max_len: usize) -> BTreeSet<BraidWord> {
    let rules = RuleSet::catalog(w.strand_count());
    rules
        .neighbors(w.letters(), max_len)
        .into_iter()
        .map(|(_, _, nb)| BraidWord::from_valid(w.strand_count(), nb))
        .filter(|nb| nb != w)
        .collect()
}

/// True if `step` is a catalog relation applied in either direction.
pub fn is_catalog_step(n: usize, step: &BraidStep) -> bool {
    relation_catalog(n).iter().any(|inst| {
        inst.family == step.label
            && ((inst.lhs.letters() == step.removed.as_slice()
                && inst.rhs.letters() == step.inserted.as_slice())
                || (inst.rhs.letters() == step.removed.as_slice()
                    && inst.lhs.letters() == step.inserted.as_slice()))
    })
}

// ---------------------------------------------------------------------------
// Derived relations
//
// The catalog only states the positive forms of most relations. Their
// mixed-sign consequences (for instance ρ_iσ_{i+1}^{-1}ρ_i = ρ_{i+1}σ_i^{-1}ρ_{i+1})
// need detours through longer words, which a length-capped search often
// cannot afford. Each derived rule below carries an explicit proof built from
// catalog steps, so traces that use it are expanded back to catalog steps.

fn pair_step(a: Generator, pos: usize, insert: bool) -> BraidStep {
    let inv = a.inverse().expect("invertible letter");
    let family = if a.is_virtual() { Family::V3 } else { Family::R2 };
    let pair = vec![a, inv];
    if insert {
        Step {
            label: family,
            position: pos,
            removed: vec![],
            inserted: pair,
        }
    } else {
        Step {
            label: family,
            position: pos,
            removed: pair,
            inserted: vec![],
        }
    }
}

fn invert(letters: &[Generator]) -> Option<Vec<Generator>> {
    letters.iter().rev().map(|g| g.inverse()).collect()
}

/// From `lhs = rhs` (both invertible) derive `lhs⁻¹ = rhs⁻¹`:
/// `L⁻¹ → L⁻¹·R·R⁻¹ → L⁻¹·L·R⁻¹ → R⁻¹`.
fn inverse_lemma(family: Family, lhs: &[Generator], rhs: &[Generator]) -> Option<Rule> {
    let lhs_inv = invert(lhs)?;
    let rhs_inv = invert(rhs)?;
    let a = lhs_inv.len();
    let mut proof = Vec::new();
    for (m, &r) in rhs.iter().enumerate() {
        proof.push(pair_step(r, a + m, true));
    }
    proof.push(Step {
        label: family,
        position: a,
        removed: rhs.to_vec(),
        inserted: lhs.to_vec(),
    });
    for (m, &l) in lhs.iter().enumerate() {
        proof.push(pair_step(l.inverse()?, a - 1 - m, false));
    }
    Some(Rule {
        family,
        pattern: lhs_inv,
        replacement: rhs_inv,
        proof: Some(proof),
    })
}

/// From the commutation `x·y = y·x` derive `x⁻¹·y = y·x⁻¹` (when `x` is
/// invertible): `x⁻¹y → x⁻¹yxx⁻¹ → x⁻¹xyx⁻¹ → yx⁻¹`.
fn conjugate_lemma(family: Family, x: Generator, y: Generator) -> Option<Rule> {
    let xi = x.inverse()?;
    let proof = vec![
        pair_step(x, 2, true),
        Step {
            label: family,
            position: 1,
            removed: vec![y, x],
            inserted: vec![x, y],
        },
        pair_step(xi, 0, false),
    ];
    Some(Rule {
        family,
        pattern: vec![xi, y],
        replacement: vec![y, xi],
        proof: Some(proof),
    })
}

fn derived_relations(n: usize) -> Vec<Rule> {
    let mut out = Vec::new();
    for inst in relation_catalog(n) {
        let (l, r) = (inst.lhs.letters(), inst.rhs.letters());
        if matches!(inst.family, Family::R2 | Family::V3) {
            continue;
        }
        if let Some(rule) = inverse_lemma(inst.family, l, r) {
            if rule.pattern != rule.replacement {
                out.push(rule);
            }
        }
        // two-letter commutations x·y = y·x
        if l.len() == 2 && r.len() == 2 && l[0] == r[1] && l[1] == r[0] {
            let (x, y) = (l[0], l[1]);
            for (a, b) in [(x, y), (y, x)] {
                if a.is_classical() {
                    if let Some(rule) = conjugate_lemma(inst.family, a, b) {
                        out.push(rule);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::replay;

    fn w(t: &str, n: usize) -> BraidWord {
        BraidWord::parse(t, n).unwrap()
    }

    #[test]
    fn catalog_at_two_strands() {
        let cat = relation_catalog(2);
        let fams: Vec<_> = cat.iter().map(|r| r.family).collect();
        assert_eq!(fams, vec![Family::R2, Family::R2, Family::S3, Family::V3]);
    }

    #[test]
    fn catalog_contains_sv2() {
        let cat = relation_catalog(3);
        assert!(cat
            .iter()
            .any(|r| r.family == Family::SV2 && r.lhs == w("r1 t2 r1", 3) && r.rhs == w("r2 t1 r2", 3)));
    }

    #[test]
    fn catalog_counts() {
        // n=4: indices 1..3, far unordered {(1,3)}, far ordered {(1,3),(3,1)}, adjacent {1,2}
        let cat = relation_catalog(4);
        let count = |f| cat.iter().filter(|r| r.family == f).count();
        assert_eq!(count(Family::R0), 1);
        assert_eq!(count(Family::R2), 6);
        assert_eq!(count(Family::R3), 2);
        assert_eq!(count(Family::S2), 2);
        assert_eq!(count(Family::SV1), 2);
        assert_eq!(count(Family::V3), 3);
        assert_eq!(count(Family::V5), 2);
        assert_eq!(cat.len(), 1 + 6 + 2 + 1 + 2 + 3 + 2 + 2 + 2 + 1 + 2 + 3 + 2 + 2);
    }

    #[test]
    fn catalog_sides_share_invariants() {
        for n in 2..=5 {
            for inst in relation_catalog(n) {
                assert_eq!(inst.lhs.theta(), inst.rhs.theta(), "{inst}");
                assert_eq!(inst.lhs.degree(), inst.rhs.degree(), "{inst}");
                assert_eq!(inst.lhs.singularity_count(), inst.rhs.singularity_count(), "{inst}");
            }
        }
    }

    #[test]
    fn neighbors_examples() {
        let nb = rewrite_neighbors(&w("s1 s1'", 2), 2);
        assert!(nb.contains(&w("e", 2)));
        assert!(!nb.contains(&w("s1 s1'", 2)));

        let nb = rewrite_neighbors(&w("e", 2), 2);
        for t in ["s1 s1'", "s1' s1", "r1 r1"] {
            assert!(nb.contains(&w(t, 2)), "{t}");
        }
        assert_eq!(nb.len(), 3);

        let nb = rewrite_neighbors(&w("r1 t2 r1", 3), 3);
        assert!(nb.contains(&w("r2 t1 r2", 3)));
    }

    #[test]
    fn neighbors_respect_length_cap() {
        let x = w("s1 t1", 2);
        assert!(rewrite_neighbors(&x, 2).iter().all(|y| y.len() <= 2));
        assert!(rewrite_neighbors(&x, 4).iter().any(|y| y.len() == 4));
    }

    #[test]
    fn derived_rule_proofs_replay() {
        for n in 2..=5 {
            let set = RuleSet::with_lemmas(n);
            let mut derived = 0;
            for rule in &set.rules {
                if let Some(proof) = &rule.proof {
                    derived += 1;
                    assert_eq!(replay(&rule.pattern, proof).as_ref(), Some(&rule.replacement));
                    assert!(proof.iter().all(|s| is_catalog_step(n, s)));
                    let a = BraidWord::from_valid(n, rule.pattern.clone());
                    let b = BraidWord::from_valid(n, rule.replacement.clone());
                    assert_eq!(a.theta(), b.theta());
                    assert_eq!(a.degree(), b.degree());
                }
            }
            assert!(derived > 0);
        }
    }

    #[test]
    fn inverse_v5_is_derived() {
        let set = RuleSet::with_lemmas(3);
        let lhs = w("r1 s2' r1", 3);
        let rhs = w("r2 s1' r2", 3);
        assert!(set
            .rules
            .iter()
            .any(|r| r.pattern == lhs.letters() && r.replacement == rhs.letters()));
    }
}
