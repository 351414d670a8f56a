//! Desingularization: expanding each singular crossing `τ_i` into the formal
//! difference `σ_i − σ_i^{-1}`.
//!
//! Sums are kept at the level of free words. Two terms merge only when they
//! are letter-for-letter identical, so no relation is applied to the keys.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::braid::{BraidWord, Generator, Kind};
use crate::error::{Error, Result};

/// Largest number of singular letters [`eta_hat`] will expand.
pub const MAX_SINGULARITIES: usize = 20;

/// An integer combination of virtual braid words (no singular letters).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<BraidWord, i64>,
}

#[derive(Serialize)]
struct TermJson {
    coeff: i64,
    word: String,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(word: BraidWord) -> Self {
        let mut s = Self::zero();
        s.add_term(word, 1);
        s
    }

    /// Adds `coeff · word`, dropping the term if the coefficient cancels.
    ///
    /// # Panics
    /// If `word` has a singular letter.
    pub fn add_term(&mut self, word: BraidWord, coeff: i64) {
        assert_eq!(word.singularity_count(), 0, "formal sums hold virtual braid words only");
        let c = self.terms.entry(word).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &BraidWord) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BraidWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Product in the free monoid algebra (concatenation of words).
    pub fn mul(&self, other: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    /// Terms sorted by the printed word.
    fn sorted(&self) -> Vec<(String, i64)> {
        let mut v: Vec<(String, i64)> = self.terms().map(|(w, c)| (w.to_string(), c)).collect();
        v.sort();
        v
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<TermJson> = self
            .sorted()
            .into_iter()
            .map(|(word, coeff)| TermJson { coeff, word })
            .collect();
        serde_json::to_string(&terms).expect("terms serialize")
    }
}

impl fmt::Display for FormalSum {
    /// One `±c word` term per line, sorted by word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (k, (word, c)) in self.sorted().into_iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c:+} {word}")?;
        }
        Ok(())
    }
}

/// The expansion of `w` before equal words are merged: `2^d` signed words,
/// singular letters resolved left to right with `σ_i` before `σ_i^{-1}`.
pub fn expansion_terms(w: &BraidWord) -> Result<Vec<(i64, BraidWord)>> {
    let d = w.singularity_count();
    if d > MAX_SINGULARITIES {
        return Err(Error::TooManySingularities {
            got: d,
            cap: MAX_SINGULARITIES,
        });
    }
    let mut out = Vec::with_capacity(1 << d);
    for choice in 0u32..(1 << d) {
        // bit (d-1-k) of `choice` is set when the k-th τ takes the negative branch
        let mut sign = 1;
        let mut k = 0;
        let letters: Vec<Generator> = w
            .letters()
            .iter()
            .map(|&g| {
                if !g.is_singular() {
                    return g;
                }
                let neg = choice >> (d - 1 - k) & 1 == 1;
                k += 1;
                if neg {
                    sign = -sign;
                    Generator::sigma_inv(g.index)
                } else {
                    Generator::sigma(g.index)
                }
            })
            .collect();
        out.push((sign, BraidWord::new(w.strand_count(), letters)?));
    }
    Ok(out)
}

/// `η̂`: replace every `τ_i` by `σ_i − σ_i^{-1}` and expand.
pub fn eta_hat(w: &BraidWord) -> Result<FormalSum> {
    let mut sum = FormalSum::zero();
    for (c, word) in expansion_terms(w)? {
        sum.add_term(word, c);
    }
    Ok(sum)
}

/// `η`: the same expansion restricted to words without virtual letters.
pub fn eta(w: &BraidWord) -> Result<FormalSum> {
    if let Some(g) = w.letters().iter().find(|g| g.kind == Kind::Virtual) {
        return Err(Error::VirtualLetter(g.to_string()));
    }
    eta_hat(w)
}

/// Replaces every `τ_i` by `σ_i`.
pub fn flatten(w: &BraidWord) -> BraidWord {
    w.flatten()
}

/// Number of terms of each degree, counted with multiplicity `|coeff|`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSpectrum(pub BTreeMap<i64, u64>);

impl DegreeSpectrum {
    pub fn count(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn to_json(&self) -> String {
        let m: BTreeMap<String, u64> = self.0.iter().map(|(d, c)| (d.to_string(), *c)).collect();
        serde_json::to_string(&m).expect("spectrum serializes")
    }
}

impl fmt::Display for DegreeSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (d, c)) in self.0.iter().rev().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if *d > 0 {
                write!(f, "+")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

pub fn degree_spectrum(f: &FormalSum) -> DegreeSpectrum {
    let mut m = BTreeMap::new();
    for (w, c) in f.terms() {
        *m.entry(w.degree()).or_insert(0) += c.unsigned_abs();
    }
    DegreeSpectrum(m)
}

/// Whether `η̂(w)` can be a scalar multiple of the identity. A singular
/// letter spreads the spectrum over two distinct extreme degrees, so `w`
/// must be τ-free, and then `η̂(w) = w` is scalar exactly when `w` reduces
/// to the empty word.
pub fn scalar_preimage_check(w: &BraidWord) -> bool {
    w.singularity_count() == 0 && w.free_reduce().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::arb_word;
    use proptest::prelude::*;

    fn w(t: &str, n: usize) -> BraidWord {
        BraidWord::parse(t, n).unwrap()
    }

    #[test]
    fn no_singularities_is_identity_map() {
        let s = eta_hat(&w("s1 r2", 3)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&w("s1 r2", 3)), 1);
    }

    #[test]
    fn omega_expansion() {
        let s = eta_hat(&w("r1 s2' t1 r2 s2 t2", 3)).unwrap();
        let expected = [
            ("r1 s2' s1 r2 s2 s2", 1),
            ("r1 s2' s1 r2 s2 s2'", -1),
            ("r1 s2' s1' r2 s2 s2", -1),
            ("r1 s2' s1' r2 s2 s2'", 1),
        ];
        assert_eq!(s.len(), 4);
        for (t, c) in expected {
            assert_eq!(s.coefficient(&w(t, 3)), c, "{t}");
        }
        let spec = degree_spectrum(&s);
        assert_eq!(spec.to_string(), "{+2:1, 0:2, -2:1}");
    }

    #[test]
    fn free_words_do_not_merge() {
        let s = eta_hat(&w("t1 t1", 2)).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.coefficient(&w("s1 s1'", 2)), -1);
        assert_eq!(s.coefficient(&w("s1' s1", 2)), -1);
        assert_eq!(s.coefficient(&w("s1' s1'", 2)), 1);
    }

    #[test]
    fn expansion_order() {
        let terms = expansion_terms(&w("t1 t1", 2)).unwrap();
        let printed: Vec<_> = terms.iter().map(|(c, t)| format!("{c} {t}")).collect();
        assert_eq!(printed, ["1 s1 s1", "-1 s1 s1'", "-1 s1' s1", "1 s1' s1'"]);
    }

    #[test]
    fn eta_domain() {
        let s = eta(&w("t1", 2)).unwrap();
        assert_eq!(s.coefficient(&w("s1", 2)), 1);
        assert_eq!(s.coefficient(&w("s1'", 2)), -1);
        assert_eq!(eta(&w("s2", 3)).unwrap().len(), 1);
        assert_eq!(eta(&w("r1", 2)), Err(Error::VirtualLetter("r1".into())));
    }

    #[test]
    fn singularity_cap() {
        let many = BraidWord::new(2, vec![Generator::tau(1); 21]).unwrap();
        assert!(matches!(eta_hat(&many), Err(Error::TooManySingularities { got: 21, .. })));
    }

    #[test]
    fn json_form() {
        let s = eta_hat(&w("t1", 2)).unwrap();
        assert_eq!(s.to_json(), r#"[{"coeff":1,"word":"s1"},{"coeff":-1,"word":"s1'"}]"#);
        assert_eq!(FormalSum::zero().to_json(), "[]");
        assert_eq!(s.to_string(), "+1 s1\n-1 s1'");
    }

    #[test]
    fn sum_algebra() {
        let a = eta_hat(&w("t1", 2)).unwrap();
        let sq = a.mul(&a);
        assert_eq!(sq, eta_hat(&w("t1 t1", 2)).unwrap());
        let mut z = FormalSum::single(w("s1", 2));
        z.add_term(w("s1", 2), -1);
        assert!(z.is_empty());
    }

    #[test]
    fn spectrum_examples() {
        let s = degree_spectrum(&FormalSum::single(w("s1", 2)));
        assert_eq!(s.count(1), 1);
        assert_eq!(s.total(), 1);
        assert_eq!(degree_spectrum(&eta_hat(&w("t1", 2)).unwrap()).to_json(), r#"{"-1":1,"1":1}"#);
    }

    #[test]
    fn scalar_preimage_examples() {
        assert!(scalar_preimage_check(&w("e", 2)));
        assert!(scalar_preimage_check(&w("r1 s1 s1' r1", 2)));
        assert!(!scalar_preimage_check(&w("t1", 2)));
        assert!(!scalar_preimage_check(&w("r1", 2)));
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&w("t1 t2", 3)), w("s1 s2", 3));
        assert_eq!(flatten(&w("s1' r1", 2)), w("s1' r1", 2));
    }

    proptest! {
        #[test]
        fn expansion_has_two_to_the_d_signed_terms(x in arb_word(5, 10)) {
            let d = x.singularity_count();
            let terms = expansion_terms(&x).unwrap();
            prop_assert_eq!(terms.len(), 1 << d);
            for (c, t) in &terms {
                let negs = t.letters().iter().zip(x.letters()).filter(|(a, b)| b.is_singular() && a.kind == Kind::ClassicalNeg).count();
                prop_assert_eq!(*c, if negs % 2 == 0 { 1 } else { -1 });
                prop_assert_eq!(t.singularity_count(), 0);
            }
        }

        #[test]
        fn spectrum_lemma(x in arb_word(5, 12)) {
            let (s, d) = (x.degree(), x.singularity_count() as i64);
            let pre = expansion_terms(&x).unwrap();
            let at = |deg: i64| pre.iter().filter(|(_, t)| t.degree() == deg).count();
            prop_assert_eq!(at(s + d), 1);
            prop_assert_eq!(at(s - d), 1);
            prop_assert!(pre.iter().all(|(_, t)| (s - d..=s + d).contains(&t.degree())));
            let spec = degree_spectrum(&eta_hat(&x).unwrap());
            prop_assert_eq!(spec.max_degree(), Some(s + d));
            prop_assert_eq!(spec.min_degree(), Some(s - d));
        }

        #[test]
        fn eta_agrees_with_eta_hat_without_virtuals(x in arb_word(4, 8)) {
            let classical: Vec<Generator> = x.letters().iter().copied().filter(|g| !g.is_virtual()).collect();
            let y = BraidWord::new(x.strand_count(), classical).unwrap();
            prop_assert_eq!(eta(&y).unwrap(), eta_hat(&y).unwrap());
        }

        #[test]
        fn flatten_laws(x in arb_word(5, 12)) {
            let f = flatten(&x);
            prop_assert_eq!(f.singularity_count(), 0);
            prop_assert_eq!(flatten(&f), f.clone());
            prop_assert_eq!(f.theta(), x.theta());
            prop_assert_eq!(f.degree(), x.degree() + x.singularity_count() as i64);
        }
    }
}
