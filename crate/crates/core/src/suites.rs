//! Batch property checks behind `svbraid verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{relation_catalog, BraidWord, Generator};
use crate::desing::{degree_spectrum, eta_hat, expansion_terms, scalar_preimage_check};
use crate::gauss::{braid_of_gauss, gauss_of_braid, omega_equivalent, pair_invariants, GaussWord};
use crate::pure::verify_sp_relations;
use crate::search::Budget;
use crate::surface::{genus, ribbon_of_braid, ribbon_of_letters, summarize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    GaussRoundtrip,
    DegreeLemma,
    SpRelations,
    ScalarPreimage,
    Surface,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::GaussRoundtrip,
        Suite::DegreeLemma,
        Suite::SpRelations,
        Suite::ScalarPreimage,
        Suite::Surface,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::GaussRoundtrip => "gauss-roundtrip",
            Suite::DegreeLemma => "degree-lemma",
            Suite::SpRelations => "sp-relations",
            Suite::ScalarPreimage => "scalar-preimage",
            Suite::Surface => "surface",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub count: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub example: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.into(),
            count: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub n: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{tag} {} ({}/{} ok)", c.name, c.count - c.failures, c.count)?;
            if let Some(ex) = &c.example {
                write!(f, " first failure: {ex}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "suite {} n={} seed={}: {}",
            self.suite,
            self.n,
            self.seed,
            if self.passed { "passed" } else { "failed" }
        )
    }
}

pub fn run_suite(suite: Suite, n: usize, seed: u64, budget: &Budget) -> crate::Result<Report> {
    if n < 2 {
        return Err(crate::Error::StrandCount { got: n, min: 2 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        Suite::Relations => relations(n),
        Suite::GaussRoundtrip => gauss_roundtrip(n, &mut rng),
        Suite::DegreeLemma => degree_lemma(n, &mut rng),
        Suite::SpRelations => sp_relations(n, budget)?,
        Suite::ScalarPreimage => scalar_preimage(n),
        Suite::Surface => surface(n, &mut rng),
    };
    Ok(Report {
        suite: suite.name(),
        n,
        seed,
        passed: checks.iter().all(Check::passed),
        checks,
    })
}

fn relations(n: usize) -> Vec<Check> {
    let mut inv = Check::new("invariants agree");
    let mut moves = Check::new("gauss sides omega-equivalent within 6 moves");
    for inst in relation_catalog(n) {
        let (l, r) = (&inst.lhs, &inst.rhs);
        let (gl, gr) = (gauss_of_braid(l), gauss_of_braid(r));
        inv.record(
            l.theta() == r.theta()
                && l.degree() == r.degree()
                && l.singularity_count() == r.singularity_count()
                && pair_invariants(&gl) == pair_invariants(&gr),
            || inst.to_string(),
        );
        let ok = omega_equivalent(&gl, &gr, &Budget::with_steps(6))
            .map(|v| v.trace().is_some_and(|t| t.len() <= 6))
            .unwrap_or(false);
        moves.record(ok, || inst.to_string());
    }
    vec![inv, moves]
}

fn gauss_roundtrip(n: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut exact = Check::new("gauss(braid(g)) = g");
    let mut perm = Check::new("perm = theta");
    for _ in 0..500 {
        let len = rng.gen_range(0..=10);
        let g = GaussWord::random(rng, n, len);
        let back = gauss_of_braid(&braid_of_gauss(&g));
        exact.record(back == g, || g.to_string());
        let len = rng.gen_range(0..=12);
        let w = BraidWord::random(rng, n, len);
        perm.record(gauss_of_braid(&w).perm() == &w.theta(), || w.to_string());
    }
    vec![exact, perm]
}

/// The extremal-degree property of the desingularization expansion, for one
/// word. Returns `None` when it holds.
pub fn degree_lemma_violation(w: &BraidWord) -> Option<String> {
    let (s, d) = (w.degree(), w.singularity_count() as i64);
    let terms = match expansion_terms(w) {
        Ok(t) => t,
        Err(e) => return Some(e.to_string()),
    };
    if terms.len() != 1usize << d {
        return Some(format!("{} terms, expected 2^{d}", terms.len()));
    }
    let at = |deg: i64| terms.iter().filter(|(_, t)| t.degree() == deg).count();
    if at(s + d) != 1 || at(s - d) != 1 {
        return Some("extremal degree not attained exactly once".into());
    }
    if let Some((_, t)) = terms.iter().find(|(_, t)| t.degree() < s - d || t.degree() > s + d) {
        return Some(format!("term {t} outside [{}, {}]", s - d, s + d));
    }
    None
}

fn degree_lemma(n: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut lemma = Check::new("spectrum extremes unique at s-d and s+d");
    for _ in 0..500 {
        let len = rng.gen_range(0..=12);
        let w = BraidWord::random(rng, n, len);
        let bad = degree_lemma_violation(&w);
        lemma.record(bad.is_none(), || format!("{w}: {}", bad.unwrap_or_default()));
    }
    vec![lemma]
}

fn sp_relations(n: usize, budget: &Budget) -> crate::Result<Vec<Check>> {
    let report = verify_sp_relations(n, budget)?;
    let mut out: Vec<Check> = Vec::new();
    for c in &report.checks {
        if out.last().is_none_or(|last| last.name != c.label) {
            out.push(Check::new(c.label));
        }
        out.last_mut()
            .expect("just pushed")
            .record(c.verdict == "equivalent", || format!("{} = {}: {}", c.lhs, c.rhs, c.verdict));
    }
    Ok(out)
}

/// Every word over `alphabet` with at most `max_len` letters.
pub fn all_words(n: usize, alphabet: &[Generator], max_len: usize) -> Vec<BraidWord> {
    let mut out = vec![BraidWord::identity(n)];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &g in alphabet {
                let mut v: Vec<Generator> = Vec::clone(w);
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| BraidWord::new(n, v.clone()).expect("alphabet fits")));
        layer = next;
    }
    out
}

fn scalar_preimage(n: usize) -> Vec<Check> {
    // enumerate on the first two strands so the count stays the same for every n
    let alphabet = [
        Generator::sigma(1),
        Generator::sigma_inv(1),
        Generator::rho(1),
        Generator::tau(1),
    ];
    let mut exact = Check::new("scalar iff free-reduces to empty");
    let mut spread = Check::new("singular words have two extremal degrees");
    for w in all_words(n, &alphabet, 6) {
        let sum = eta_hat(&w).expect("at most 6 singular letters");
        let spec = degree_spectrum(&sum);
        let scalar = scalar_preimage_check(&w);
        exact.record(scalar == w.free_reduce().is_empty(), || w.to_string());
        if w.singularity_count() > 0 {
            spread.record(spec.min_degree() != spec.max_degree(), || w.to_string());
            exact.record(!scalar, || w.to_string());
        }
    }
    vec![exact, spread]
}

fn surface(n: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut empty = Check::new("empty braid has genus 0");
    for m in 1..=n {
        let ok = summarize(&ribbon_of_letters(m, &[])).map(|s| s.genus == 0).unwrap_or(false);
        empty.record(ok, || format!("n={m}"));
    }
    let classical: Vec<Generator> = Generator::alphabet(n).into_iter().filter(|g| !g.is_virtual()).collect();
    let mut planar = Check::new("virtual-free words have genus 0");
    let mut euler = Check::new("euler characteristic by weights = by traversal");
    for _ in 0..100 {
        let len = rng.gen_range(0..=12);
        let w = BraidWord::random_over(rng, n, len, &classical);
        planar.record(genus(&w).map(|g| g == 0).unwrap_or(false), || w.to_string());
        let len = rng.gen_range(0..=12);
        let any = BraidWord::random(rng, n, len);
        let r = ribbon_of_braid(&any);
        euler.record(
            r.euler_by_weights() == r.euler_by_traversal() && summarize(&r).is_ok(),
            || any.to_string(),
        );
    }
    vec![empty, planar, euler]
}
