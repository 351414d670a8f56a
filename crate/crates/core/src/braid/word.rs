use std::fmt;

use rand::Rng;

use crate::braid::relations::Family;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::Step;

/// One step of a braid-word rewrite trace.
pub type BraidStep = Step<Family, Generator>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `σ_i`
    ClassicalPos,
    /// `σ_i^{-1}`
    ClassicalNeg,
    /// `ρ_i`
    Virtual,
    /// `τ_i`
    Singular,
}

/// A generator of the singular virtual braid monoid. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub index: usize,
}

impl Generator {
    pub const fn new(kind: Kind, index: usize) -> Self {
        Generator { kind, index }
    }

    pub const fn sigma(index: usize) -> Self {
        Self::new(Kind::ClassicalPos, index)
    }

    pub const fn sigma_inv(index: usize) -> Self {
        Self::new(Kind::ClassicalNeg, index)
    }

    pub const fn rho(index: usize) -> Self {
        Self::new(Kind::Virtual, index)
    }

    pub const fn tau(index: usize) -> Self {
        Self::new(Kind::Singular, index)
    }

    /// `σ_i ↔ σ_i^{-1}`, `ρ_i ↔ ρ_i`; `τ_i` has none.
    pub fn inverse(self) -> Option<Self> {
        let kind = match self.kind {
            Kind::ClassicalPos => Kind::ClassicalNeg,
            Kind::ClassicalNeg => Kind::ClassicalPos,
            Kind::Virtual => Kind::Virtual,
            Kind::Singular => return None,
        };
        Some(Generator { kind, ..self })
    }

    pub fn cancels(self, next: Self) -> bool {
        self.inverse() == Some(next)
    }

    pub fn degree(self) -> i64 {
        match self.kind {
            Kind::ClassicalPos => 1,
            Kind::ClassicalNeg => -1,
            _ => 0,
        }
    }

    pub fn is_singular(self) -> bool {
        self.kind == Kind::Singular
    }

    pub fn is_virtual(self) -> bool {
        self.kind == Kind::Virtual
    }

    pub fn is_classical(self) -> bool {
        matches!(self.kind, Kind::ClassicalPos | Kind::ClassicalNeg)
    }

    /// Same kind, index shifted by `delta`.
    pub fn shifted(self, delta: usize) -> Self {
        Generator {
            index: self.index + delta,
            ..self
        }
    }

    /// Every generator available on `n` strands.
    pub fn alphabet(n: usize) -> Vec<Generator> {
        let kinds = [Kind::ClassicalPos, Kind::ClassicalNeg, Kind::Virtual, Kind::Singular];
        (1..n)
            .flat_map(|i| kinds.iter().map(move |&k| Generator::new(k, i)))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::ClassicalPos => write!(f, "s{}", self.index),
            Kind::ClassicalNeg => write!(f, "s{}'", self.index),
            Kind::Virtual => write!(f, "r{}", self.index),
            Kind::Singular => write!(f, "t{}", self.index),
        }
    }
}

/// Writes a letter sequence in the word grammar (`"e"` when empty).
pub fn format_letters(letters: &[Generator]) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    for (k, g) in letters.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.push_str(&g.to_string());
    }
    out
}

/// A word in the generators on `strand_count` strands. The empty word is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<Generator>) -> Result<Self> {
        if strand_count < 2 {
            return Err(Error::StrandCount {
                got: strand_count,
                min: 2,
            });
        }
        if let Some(g) = letters.iter().find(|g| g.index == 0 || g.index >= strand_count) {
            return Err(Error::IndexOutOfRange {
                token: g.to_string(),
                n: strand_count,
            });
        }
        Ok(BraidWord {
            strand_count,
            letters,
        })
    }

    pub fn identity(strand_count: usize) -> Self {
        assert!(strand_count >= 2, "need at least two strands");
        BraidWord {
            strand_count,
            letters: Vec::new(),
        }
    }

    /// Crate-internal constructor for letter sequences already known to be
    /// in range (results of rewriting a valid word).
    pub(crate) fn from_valid(strand_count: usize, letters: Vec<Generator>) -> Self {
        debug_assert!(letters.iter().all(|g| g.index >= 1 && g.index < strand_count));
        BraidWord {
            strand_count,
            letters,
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse_word(text, n)
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strand_count, other.strand_count, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strand_count: self.strand_count,
            letters,
        }
    }

    /// Endpoint permutation, composed in diagram order.
    pub fn theta(&self) -> Permutation {
        let mut p = Permutation::identity(self.strand_count);
        for g in &self.letters {
            p.then_swap(g.index);
        }
        p
    }

    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|g| g.degree()).sum()
    }

    pub fn singularity_count(&self) -> usize {
        self.letters.iter().filter(|g| g.is_singular()).count()
    }

    /// Group inverse; fails on words containing `τ`.
    pub fn inverse(&self) -> Result<BraidWord> {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|g| g.inverse().ok_or_else(|| Error::NotInvertible(g.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(BraidWord {
            strand_count: self.strand_count,
            letters,
        })
    }

    /// Cancels adjacent `σ_iσ_i^{∓1}` and `ρ_iρ_i` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        self.free_reduce_traced().0
    }

    /// [`free_reduce`](Self::free_reduce) together with the deletion steps
    /// that take `self` to the result.
    pub fn free_reduce_traced(&self) -> (BraidWord, Vec<BraidStep>) {
        let mut stack: Vec<Generator> = Vec::with_capacity(self.letters.len());
        let mut trace = Vec::new();
        for &g in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(g) => {
                    stack.pop();
                    let family = if g.is_virtual() { Family::V3 } else { Family::R2 };
                    trace.push(Step {
                        label: family,
                        position: stack.len(),
                        removed: vec![top, g],
                        inserted: vec![],
                    });
                }
                _ => stack.push(g),
            }
        }
        (
            BraidWord {
                strand_count: self.strand_count,
                letters: stack,
            },
            trace,
        )
    }

    /// Replaces every `τ_i` by `σ_i`.
    pub fn flatten(&self) -> BraidWord {
        BraidWord {
            strand_count: self.strand_count,
            letters: self
                .letters
                .iter()
                .map(|&g| if g.is_singular() { Generator::sigma(g.index) } else { g })
                .collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
        Self::random_over(rng, n, len, &Generator::alphabet(n))
    }

    /// A uniformly random word of length `len` over `alphabet`.
    pub fn random_over<R: Rng + ?Sized>(
        rng: &mut R,
        n: usize,
        len: usize,
        alphabet: &[Generator],
    ) -> BraidWord {
        let letters = (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        BraidWord::new(n, letters).expect("alphabet letters fit the strand count")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// Parses a word such as `"r1 s2' t1 r2 s2 t2"`. Tokens are separated by one
/// or more spaces; `"e"` is the empty word; `'` and `^-1` mark `σ^{-1}`.
pub fn parse_word(text: &str, n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::StrandCount { got: n, min: 2 });
    }
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut pos = 0;
    let skip_spaces = |mut p: usize| {
        while p < bytes.len() && bytes[p] == b' ' {
            p += 1;
        }
        p
    };
    pos = skip_spaces(pos);
    if pos == bytes.len() {
        return Err(Error::Syntax {
            pos,
            msg: "empty input (use `e` for the identity)".into(),
        });
    }
    if text[pos..].trim_end_matches(' ') == "e" {
        return Ok(BraidWord::identity(n));
    }
    while pos < bytes.len() {
        let start = pos;
        let kind = match bytes[pos] {
            b's' => Kind::ClassicalPos,
            b'r' => Kind::Virtual,
            b't' => Kind::Singular,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("expected one of `s`, `r`, `t`, found `{}`", char_at(text, pos)),
                })
            }
        };
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits_start {
            return Err(Error::Syntax {
                pos,
                msg: "expected a generator index".into(),
            });
        }
        let index: usize = text[digits_start..pos].parse().map_err(|_| Error::Syntax {
            pos: digits_start,
            msg: "index too large".into(),
        })?;
        let mut kind = kind;
        let rest = &text[pos..];
        let suffix_len = if rest.starts_with('\'') {
            1
        } else if rest.starts_with("^-1") {
            3
        } else {
            0
        };
        if suffix_len > 0 {
            if kind != Kind::ClassicalPos {
                return Err(Error::Syntax {
                    pos,
                    msg: "inverse suffix is only allowed on `s` tokens".into(),
                });
            }
            kind = Kind::ClassicalNeg;
            pos += suffix_len;
        }
        if pos < bytes.len() && bytes[pos] != b' ' {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected `{}` after token", char_at(text, pos)),
            });
        }
        if index == 0 || index >= n {
            return Err(Error::IndexOutOfRange {
                token: text[start..pos].to_string(),
                n,
            });
        }
        letters.push(Generator::new(kind, index));
        pos = skip_spaces(pos);
    }
    Ok(BraidWord {
        strand_count: n,
        letters,
    })
}

fn char_at(text: &str, pos: usize) -> char {
    text[pos..].chars().next().unwrap_or('?')
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, n: usize) -> BraidWord {
        parse_word(text, n).unwrap()
    }

    #[test]
    fn parses_identity_and_omega() {
        assert!(w("e", 3).is_empty());
        let omega = w("r1 s2' t1 r2 s2 t2", 3);
        assert_eq!(
            omega.letters(),
            &[
                Generator::rho(1),
                Generator::sigma_inv(2),
                Generator::tau(1),
                Generator::rho(2),
                Generator::sigma(2),
                Generator::tau(2),
            ]
        );
        assert_eq!(w("s1^-1   r2", 3).to_string(), "s1' r2");
    }

    #[test]
    fn parse_errors() {
        match parse_word("s3", 3) {
            Err(Error::IndexOutOfRange { token, n }) => {
                assert_eq!(token, "s3");
                assert_eq!(n, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_word("s0", 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("x1", 3), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_word("s1 r1'", 3), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_word("s", 3), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_word("s1s2", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("e s1", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("s1", 1), Err(Error::StrandCount { .. })));
    }

    #[test]
    fn prints_tokens() {
        assert_eq!(BraidWord::identity(2).to_string(), "e");
        let x = BraidWord::new(3, vec![Generator::sigma_inv(1), Generator::tau(2)]).unwrap();
        assert_eq!(x.to_string(), "s1' t2");
    }

    #[test]
    fn round_trip_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(2..7);
            let len = rng.gen_range(0..15);
            let x = BraidWord::random(&mut rng, n, len);
            assert_eq!(parse_word(&x.to_string(), n).unwrap(), x);
        }
    }

    #[test]
    fn theta_examples() {
        assert!(w("e", 3).theta().is_identity());
        assert_eq!(w("s1", 2).theta().images(), &[2, 1]);
        assert_eq!(w("s1 t2", 3).theta().images(), &[3, 1, 2]);
    }

    #[test]
    fn degree_and_singularities() {
        assert_eq!(w("e", 2).degree(), 0);
        let omega = w("r1 s2' t1 r2 s2 t2", 3);
        assert_eq!(omega.degree(), 0);
        assert_eq!(omega.singularity_count(), 2);
        assert_eq!(w("s1 s1 s2'", 3).degree(), 1);
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("s1 s1'", 2).free_reduce().to_string(), "e");
        assert_eq!(w("r2 r2 t1", 3).free_reduce().to_string(), "t1");
        assert_eq!(w("s1 r2 r2 s1'", 3).free_reduce().to_string(), "e");
        assert_eq!(w("t1 t1", 2).free_reduce().to_string(), "t1 t1");
        assert_eq!(w("s1 t1 s1'", 2).free_reduce().to_string(), "s1 t1 s1'");
    }

    #[test]
    fn inverse_rejects_tau() {
        assert_eq!(w("s1 r2 s2'", 3).inverse().unwrap().to_string(), "s2 r2 s1'");
        assert!(matches!(w("s1 t1", 2).inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn flatten_replaces_tau() {
        assert_eq!(w("t1 t2", 3).flatten().to_string(), "s1 s2");
        assert_eq!(w("s1' r1", 2).flatten().to_string(), "s1' r1");
    }
}
