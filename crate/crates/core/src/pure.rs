//! The pure monoid (kernel of θ) on the X/Y alphabet, the decomposition of a
//! braid word into a pure part and a permutation, and the factorization of a
//! word into conjugated singular letters times a τ-free word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Generator};
use crate::error::{Error, Result};
use crate::gauss::{self, braid_of_gauss, gauss_of_braid, omega_equivalent, Arrow, ArrowKind, GaussWord};
use crate::perm::Permutation;
use crate::search::Budget;

/// `X^+_{i,j}`, `X^-_{i,j}` or `Y_{i,j}`: a single arrow from strand `i` to
/// strand `j` in a pure diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PureGenerator {
    pub kind: ArrowKind,
    pub i: usize,
    pub j: usize,
}

impl PureGenerator {
    pub fn x(i: usize, j: usize, positive: bool) -> Self {
        let kind = if positive { ArrowKind::Pos } else { ArrowKind::Neg };
        PureGenerator { kind, i, j }
    }

    pub fn y(i: usize, j: usize) -> Self {
        PureGenerator {
            kind: ArrowKind::Sing,
            i,
            j,
        }
    }

    pub fn arrow(self) -> Arrow {
        Arrow::new(self.i, self.j, self.kind)
    }

    pub fn from_arrow(a: Arrow) -> Self {
        PureGenerator {
            kind: a.kind,
            i: a.tail,
            j: a.head,
        }
    }

    fn check(self, n: usize) -> Result<()> {
        if self.i == self.j || self.i == 0 || self.j == 0 || self.i > n || self.j > n {
            return Err(Error::IndexOutOfRange {
                token: self.to_string(),
                n,
            });
        }
        Ok(())
    }

    /// Renames strand `k` to `f(k)`.
    fn relabel(self, f: impl Fn(usize) -> usize) -> Self {
        PureGenerator {
            kind: self.kind,
            i: f(self.i),
            j: f(self.j),
        }
    }
}

impl fmt::Display for PureGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ArrowKind::Pos => write!(f, "X+{},{}", self.i, self.j),
            ArrowKind::Neg => write!(f, "X-{},{}", self.i, self.j),
            ArrowKind::Sing => write!(f, "Y{},{}", self.i, self.j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureWord {
    n: usize,
    letters: Vec<PureGenerator>,
}

impl PureWord {
    pub fn new(n: usize, letters: Vec<PureGenerator>) -> Result<Self> {
        if n < 2 {
            return Err(Error::StrandCount { got: n, min: 2 });
        }
        for g in &letters {
            g.check(n)?;
        }
        Ok(PureWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        PureWord { n, letters: vec![] }
    }

    /// Parses whitespace-separated `X+i,j`, `X-i,j`, `Yi,j` tokens, or `e`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "e" {
            return Self::new(n, vec![]);
        }
        if trimmed.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                msg: "empty input (use `e` for the identity)".into(),
            });
        }
        let mut letters = Vec::new();
        for tok in trimmed.split_whitespace() {
            let pos = tok.as_ptr() as usize - text.as_ptr() as usize;
            let bad = |msg: &str| Error::Syntax {
                pos,
                msg: format!("{msg} in `{tok}`"),
            };
            let (kind, rest) = if let Some(r) = tok.strip_prefix("X+") {
                (ArrowKind::Pos, r)
            } else if let Some(r) = tok.strip_prefix("X-") {
                (ArrowKind::Neg, r)
            } else if let Some(r) = tok.strip_prefix('Y') {
                (ArrowKind::Sing, r)
            } else {
                return Err(bad("expected X+, X- or Y"));
            };
            let (a, b) = rest.split_once(',').ok_or_else(|| bad("expected `i,j`"))?;
            let i = a.parse().map_err(|_| bad("bad index"))?;
            let j = b.parse().map_err(|_| bad("bad index"))?;
            letters.push(PureGenerator { kind, i, j });
        }
        Self::new(n, letters)
    }

    pub fn strand_count(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[PureGenerator] {
        &self.letters
    }

    pub fn concat(&self, other: &PureWord) -> PureWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PureWord { n: self.n, letters }
    }

    /// The pure diagram with one arrow per letter.
    pub fn gauss(&self) -> GaussWord {
        GaussWord::pure(self.n, self.letters.iter().map(|g| g.arrow()).collect()).expect("letters were validated")
    }
}

impl fmt::Display for PureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The braid word realizing the one-arrow pure diagram of `g`.
pub fn embed_pure_generator(g: PureGenerator, n: usize) -> Result<BraidWord> {
    g.check(n)?;
    Ok(braid_of_gauss(&GaussWord::pure(n, vec![g.arrow()])?))
}

pub fn embed_pure_word(p: &PureWord) -> BraidWord {
    let mut out = BraidWord::identity(p.n);
    for &g in &p.letters {
        out = out.concat(&embed_pure_generator(g, p.n).expect("letters were validated"));
    }
    out
}

/// A word in the virtual generators alone with `θ = π`.
pub fn tau_of_permutation(pi: &Permutation) -> BraidWord {
    let n = pi.len();
    let start: Vec<usize> = (1..=n).collect();
    BraidWord::new(n, gauss::sorting_word(&start, pi)).expect("indices fit")
}

/// An element of the pure monoid times a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectPair {
    pub pure: PureWord,
    pub perm: Permutation,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    pure: String,
    perm: Permutation,
}

impl SemidirectPair {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PairJson {
            pure: self.pure.to_string(),
            perm: self.perm.clone(),
        })
        .expect("pairs serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PairJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let pure = PureWord::parse(&raw.pure, raw.perm.len())?;
        Ok(SemidirectPair { pure, perm: raw.perm })
    }

    /// `embed_pure_word(pure) · tau_of_permutation(perm)`.
    pub fn reassemble(&self) -> BraidWord {
        embed_pure_word(&self.pure).concat(&tau_of_permutation(&self.perm))
    }
}

impl fmt::Display for SemidirectPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pure {} | perm {}", self.pure, self.perm)
    }
}

/// Splits `w` into the pure word read off its Gauss diagram and `θ(w)`.
pub fn decompose(w: &BraidWord) -> SemidirectPair {
    let g = gauss_of_braid(w);
    SemidirectPair {
        pure: PureWord {
            n: w.strand_count(),
            letters: g.arrows().iter().map(|&a| PureGenerator::from_arrow(a)).collect(),
        },
        perm: g.perm().clone(),
    }
}

/// The action of a permutation on pure words. After a braid with
/// permutation `π`, the strand arriving at position `k` is the one that
/// started at `π⁻¹(k)`, so a letter on strands `(i, j)` of the second factor
/// is renamed `(π⁻¹(i), π⁻¹(j))`.
pub fn act(pi: &Permutation, p: &PureWord) -> PureWord {
    let inv = pi.inverse();
    PureWord {
        n: p.n,
        letters: p.letters.iter().map(|g| g.relabel(|k| inv.apply(k))).collect(),
    }
}

/// `(p₁, π₁)(p₂, π₂) = (p₁ · (π₁ ⋅ p₂), π₁π₂)`.
pub fn semidirect_multiply(a: &SemidirectPair, b: &SemidirectPair) -> Result<SemidirectPair> {
    if a.perm.len() != b.perm.len() {
        return Err(Error::StrandMismatch {
            left: a.perm.len(),
            right: b.perm.len(),
        });
    }
    Ok(SemidirectPair {
        pure: a.pure.concat(&act(&a.perm, &b.pure)),
        perm: a.perm.then(&b.perm),
    })
}

// ---------------------------------------------------------------------------
// Relations of the pure monoid

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpInstance {
    pub label: &'static str,
    pub lhs: PureWord,
    pub rhs: PureWord,
}

fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (1..=n)
                    .filter(|x| !t.contains(x))
                    .map(|x| {
                        let mut u = t.clone();
                        u.push(x);
                        u
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Every instance of the relation families SP1 to SP5 on `n` strands, for
/// all distinct index choices and both signs (all sign pairs for SP3).
pub fn sp_instances(n: usize) -> Vec<SpInstance> {
    use PureGenerator as P;
    let mut out = Vec::new();
    let mut add = |label, lhs: Vec<P>, rhs: Vec<P>| {
        out.push(SpInstance {
            label,
            lhs: PureWord { n, letters: lhs },
            rhs: PureWord { n, letters: rhs },
        })
    };
    for e in [true, false] {
        for t in distinct_tuples(n, 2) {
            let (i, j) = (t[0], t[1]);
            add("SP1", vec![P::x(i, j, e), P::x(i, j, !e)], vec![]);
        }
        for t in distinct_tuples(n, 3) {
            let (i, j, k) = (t[0], t[1], t[2]);
            add(
                "SP2",
                vec![P::x(i, j, e), P::x(i, k, e), P::x(j, k, e)],
                vec![P::x(j, k, e), P::x(i, k, e), P::x(i, j, e)],
            );
        }
    }
    for t in distinct_tuples(n, 4) {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        for a in [true, false] {
            for b in [true, false] {
                add("SP3", vec![P::x(i, j, a), P::x(k, l, b)], vec![P::x(k, l, b), P::x(i, j, a)]);
            }
            add("SP3", vec![P::x(i, j, a), P::y(k, l)], vec![P::y(k, l), P::x(i, j, a)]);
        }
        add("SP3", vec![P::y(i, j), P::y(k, l)], vec![P::y(k, l), P::y(i, j)]);
    }
    for e in [true, false] {
        for t in distinct_tuples(n, 2) {
            let (i, j) = (t[0], t[1]);
            add("SP4", vec![P::y(i, j), P::x(j, i, e)], vec![P::x(i, j, e), P::y(j, i)]);
        }
        for t in distinct_tuples(n, 3) {
            let (i, j, k) = (t[0], t[1], t[2]);
            add(
                "SP5",
                vec![P::y(j, k), P::x(i, k, e), P::x(i, j, e)],
                vec![P::x(i, j, e), P::x(i, k, e), P::y(j, k)],
            );
        }
    }
    out.sort_by_key(|s| s.label);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SpCheck {
    pub label: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub verdict: &'static str,
    pub steps: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpReport {
    pub n: usize,
    pub checks: Vec<SpCheck>,
}

impl SpReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == "equivalent")
    }
}

/// Embeds both sides of every SP instance and certifies that their Gauss
/// diagrams are Ω-equivalent.
pub fn verify_sp_relations(n: usize, budget: &Budget) -> Result<SpReport> {
    if n < 2 {
        return Err(Error::StrandCount { got: n, min: 2 });
    }
    let mut checks = Vec::new();
    for inst in sp_instances(n) {
        let g = gauss_of_braid(&embed_pure_word(&inst.lhs));
        let h = gauss_of_braid(&embed_pure_word(&inst.rhs));
        let v = omega_equivalent(&g, &h, budget)?;
        checks.push(SpCheck {
            label: inst.label,
            lhs: inst.lhs.to_string(),
            rhs: inst.rhs.to_string(),
            verdict: v.class_name(),
            steps: v.trace().map(|t| t.len()),
        });
    }
    Ok(SpReport { n, checks })
}

// ---------------------------------------------------------------------------
// Singular factorization

/// `w = ∏ c_k τ_{i_k} c_k⁻¹ · v` with every `c_k` and `v` free of singular
/// letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFactorization {
    pub conjugated_taus: Vec<(BraidWord, usize)>,
    pub virtual_part: BraidWord,
}

impl SingularFactorization {
    pub fn reassemble(&self) -> BraidWord {
        let n = self.virtual_part.strand_count();
        let mut out = BraidWord::identity(n);
        for (c, i) in &self.conjugated_taus {
            let tau = BraidWord::new(n, vec![Generator::tau(*i)]).expect("index from a valid word");
            let c_inv = c.inverse().expect("conjugators are τ-free");
            out = out.concat(c).concat(&tau).concat(&c_inv);
        }
        out.concat(&self.virtual_part)
    }
}

impl fmt::Display for SingularFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, i) in &self.conjugated_taus {
            writeln!(f, "conj {c} | t{i}")?;
        }
        write!(f, "virtual {}", self.virtual_part)
    }
}

pub fn factor_singular(w: &BraidWord) -> SingularFactorization {
    let n = w.strand_count();
    let mut prefix = Vec::new();
    let mut conjugated_taus = Vec::new();
    for &g in w.letters() {
        if g.is_singular() {
            conjugated_taus.push((BraidWord::new(n, prefix.clone()).expect("valid letters"), g.index));
        } else {
            prefix.push(g);
        }
    }
    SingularFactorization {
        conjugated_taus,
        virtual_part: BraidWord::new(n, prefix).expect("valid letters"),
    }
}
