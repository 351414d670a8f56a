//! Singular horizontal Gauss diagrams as time-ordered arrow sequences, their
//! Ω-moves, and the correspondence with braid words.
//!
//! Conventions (fixed once, used everywhere):
//! * in `σ_i` the strand entering slot `i` passes over, so the arrow runs
//!   from slot `i` to slot `i+1` and is positive;
//! * in `σ_i^{-1}` the strand entering slot `i+1` passes over: arrow from slot
//!   `i+1` to slot `i`, negative;
//! * in `τ_i` the strand entering slot `i` is the tail of the singular arrow.
//!
//! Strands are named by their starting position, so an arrow `a -> b` joins
//! underlying intervals `a` and `b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Generator, Kind};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::{self, Budget, Outcome, Step, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrowKind {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "s")]
    Sing,
}

impl ArrowKind {
    fn rank(self) -> u8 {
        match self {
            ArrowKind::Pos => 0,
            ArrowKind::Neg => 1,
            ArrowKind::Sing => 2,
        }
    }

    pub fn is_signed(self) -> bool {
        self != ArrowKind::Sing
    }

    /// `+1`, `-1`, or `0` for singular arrows.
    pub fn sign(self) -> i64 {
        match self {
            ArrowKind::Pos => 1,
            ArrowKind::Neg => -1,
            ArrowKind::Sing => 0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            ArrowKind::Pos => ArrowKind::Neg,
            ArrowKind::Neg => ArrowKind::Pos,
            ArrowKind::Sing => ArrowKind::Sing,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub kind: ArrowKind,
}

impl Arrow {
    pub fn new(tail: usize, head: usize, kind: ArrowKind) -> Self {
        Arrow { tail, head, kind }
    }

    pub fn pos(tail: usize, head: usize) -> Self {
        Self::new(tail, head, ArrowKind::Pos)
    }

    pub fn neg(tail: usize, head: usize) -> Self {
        Self::new(tail, head, ArrowKind::Neg)
    }

    pub fn sing(tail: usize, head: usize) -> Self {
        Self::new(tail, head, ArrowKind::Sing)
    }

    pub fn touches(&self, strand: usize) -> bool {
        self.tail == strand || self.head == strand
    }

    pub fn disjoint(&self, other: &Arrow) -> bool {
        !self.touches(other.tail) && !self.touches(other.head)
    }

    fn sort_key(&self) -> (usize, usize, u8, usize) {
        (
            self.tail.min(self.head),
            self.tail.max(self.head),
            self.kind.rank(),
            self.tail,
        )
    }
}

impl Ord for Arrow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Arrow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ArrowKind::Pos => write!(f, "A({},{},+)", self.tail, self.head),
            ArrowKind::Neg => write!(f, "A({},{},-)", self.tail, self.head),
            ArrowKind::Sing => write!(f, "S({},{})", self.tail, self.head),
        }
    }
}

#[derive(Deserialize)]
struct RawGaussWord {
    n: usize,
    arrows: Vec<Arrow>,
    perm: Vec<usize>,
}

/// A singular horizontal Gauss diagram on `n` strands: arrows in time order
/// plus the endpoint permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGaussWord")]
pub struct GaussWord {
    n: usize,
    arrows: Vec<Arrow>,
    perm: Permutation,
}

impl TryFrom<RawGaussWord> for GaussWord {
    type Error = Error;

    fn try_from(raw: RawGaussWord) -> Result<Self> {
        GaussWord::new(raw.n, raw.arrows, Permutation::from_images(raw.perm)?)
    }
}

impl GaussWord {
    pub fn new(n: usize, arrows: Vec<Arrow>, perm: Permutation) -> Result<Self> {
        if n < 2 {
            return Err(Error::StrandCount { got: n, min: 2 });
        }
        if perm.len() != n {
            return Err(Error::InvalidPermutation(perm.images().to_vec()));
        }
        for a in &arrows {
            if a.tail == a.head || a.tail == 0 || a.head == 0 || a.tail > n || a.head > n {
                return Err(Error::InvalidArrow {
                    tail: a.tail,
                    head: a.head,
                    n,
                });
            }
        }
        Ok(GaussWord { n, arrows, perm })
    }

    /// Pure diagram (identity permutation).
    pub fn pure(n: usize, arrows: Vec<Arrow>) -> Result<Self> {
        Self::new(n, arrows, Permutation::identity(n))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gauss words serialize")
    }

    pub fn strand_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    fn with_arrows(&self, arrows: Vec<Arrow>) -> Self {
        GaussWord {
            n: self.n,
            arrows,
            perm: self.perm.clone(),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, arrows: usize) -> GaussWord {
        let kinds = [ArrowKind::Pos, ArrowKind::Neg, ArrowKind::Sing];
        let arrows = (0..arrows)
            .map(|_| {
                let tail = rng.gen_range(1..=n);
                let mut head = rng.gen_range(1..n);
                if head >= tail {
                    head += 1;
                }
                Arrow::new(tail, head, kinds[rng.gen_range(0..3)])
            })
            .collect();
        let mut images: Vec<usize> = (1..=n).collect();
        for k in (1..n).rev() {
            images.swap(k, rng.gen_range(0..=k));
        }
        GaussWord {
            n,
            arrows,
            perm: Permutation::from_images(images).expect("shuffle is a bijection"),
        }
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e")?;
        }
        for (k, a) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " | perm {}", self.perm)
    }
}

// ---------------------------------------------------------------------------
// Braid words <-> Gauss words

/// The Gauss diagram of a braid word.
pub fn gauss_of_braid(w: &BraidWord) -> GaussWord {
    let n = w.strand_count();
    // slots[p] = strand currently at position p + 1
    let mut slots: Vec<usize> = (1..=n).collect();
    let mut arrows = Vec::new();
    for g in w.letters() {
        let (upper, lower) = (slots[g.index - 1], slots[g.index]);
        match g.kind {
            Kind::ClassicalPos => arrows.push(Arrow::pos(upper, lower)),
            Kind::ClassicalNeg => arrows.push(Arrow::neg(lower, upper)),
            Kind::Singular => arrows.push(Arrow::sing(upper, lower)),
            Kind::Virtual => {}
        }
        slots.swap(g.index - 1, g.index);
    }
    GaussWord {
        n,
        arrows,
        perm: w.theta(),
    }
}

/// Realizes a Gauss diagram as a braid word. For each arrow the head strand
/// is walked next to the tail strand with virtual crossings, then the
/// matching crossing is emitted; a final virtual section sorts the strands
/// into the diagram's endpoint permutation.
pub fn braid_of_gauss(g: &GaussWord) -> BraidWord {
    let n = g.n;
    let mut slots: Vec<usize> = (1..=n).collect();
    let mut pos: Vec<usize> = (0..=n).map(|s| s.saturating_sub(1)).collect();
    let mut letters = Vec::new();

    let swap = |slots: &mut Vec<usize>, pos: &mut Vec<usize>, p: usize, letters: &mut Vec<Generator>, g| {
        let (a, b) = (slots[p], slots[p + 1]);
        slots.swap(p, p + 1);
        pos[a] = p + 1;
        pos[b] = p;
        letters.push(g);
    };

    for a in &g.arrows {
        // head must end directly below the tail (Pos/Sing) or directly above (Neg)
        let below = a.kind != ArrowKind::Neg;
        loop {
            let (t, h) = (pos[a.tail], pos[a.head]);
            let target_ok = if below { h == t + 1 } else { h + 1 == t };
            if target_ok {
                break;
            }
            let step_down = if below { h < t + 1 } else { h + 1 < t };
            let p = if step_down { h } else { h - 1 };
            swap(&mut slots, &mut pos, p, &mut letters, Generator::rho(p + 1));
        }
        let t = pos[a.tail];
        let (p, gen) = match a.kind {
            ArrowKind::Pos => (t, Generator::sigma(t + 1)),
            ArrowKind::Sing => (t, Generator::tau(t + 1)),
            ArrowKind::Neg => (t - 1, Generator::sigma_inv(t)),
        };
        swap(&mut slots, &mut pos, p, &mut letters, gen);
    }

    letters.extend(sorting_word(&slots, &g.perm));
    BraidWord::new(n, letters).expect("routing stays within the strand count")
}

/// Virtual letters taking the arrangement `slots` (strand at each position)
/// to the one where strand `s` sits at position `perm(s)`: each position, in
/// order, receives its strand by moving it leftwards.
pub(crate) fn sorting_word(slots: &[usize], perm: &Permutation) -> Vec<Generator> {
    let mut cur = slots.to_vec();
    let target = perm.arrangement();
    let mut out = Vec::new();
    for p in 0..cur.len() {
        let q = p + cur[p..].iter().position(|&s| s == target[p]).expect("same strand set");
        for k in (p..q).rev() {
            cur.swap(k, k + 1);
            out.push(Generator::rho(k + 1));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Canonical form under commutation of disjoint arrows

/// Step label for Gauss-diagram rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move {
    /// Two adjacent arrows on disjoint strands trade times.
    Commute,
    Omega2,
    Omega3,
    SingOmega2,
    SingOmega3,
}

impl Move {
    pub fn label(self) -> &'static str {
        match self {
            Move::Commute => "C",
            Move::Omega2 => "O2",
            Move::Omega3 => "O3",
            Move::SingOmega2 => "SO2",
            Move::SingOmega3 => "SO3",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub type GaussStep = Step<Move, Arrow>;

/// The lexicographically least arrow sequence obtainable by commuting
/// adjacent arrows with disjoint strand supports.
pub fn canonical_form(g: &GaussWord) -> GaussWord {
    canonical_form_traced(g).0
}

/// [`canonical_form`] plus the commutation steps reaching it.
pub fn canonical_form_traced(g: &GaussWord) -> (GaussWord, Vec<GaussStep>) {
    let mut rest = g.arrows.clone();
    let mut done = 0;
    let mut steps = Vec::new();
    while done < rest.len() {
        // smallest arrow that commutes with everything before it in `rest`
        let mut best: Option<usize> = None;
        for k in done..rest.len() {
            if rest[done..k].iter().all(|b| b.disjoint(&rest[k]))
                && best.is_none_or(|b| rest[k] < rest[b])
            {
                best = Some(k);
            }
        }
        let mut k = best.expect("the first remaining arrow always qualifies");
        while k > done {
            steps.push(Step {
                label: Move::Commute,
                position: k - 1,
                removed: vec![rest[k - 1], rest[k]],
                inserted: vec![rest[k], rest[k - 1]],
            });
            rest.swap(k - 1, k);
            k -= 1;
        }
        done += 1;
    }
    (g.with_arrows(rest), steps)
}

// ---------------------------------------------------------------------------
// Ω-moves

fn distinct3(a: usize, b: usize, c: usize) -> bool {
    a != b && b != c && a != c
}

/// `(a→b,ε)(a→c,ε)(b→c,ε)`
fn omega3_shape(x: &Arrow, y: &Arrow, z: &Arrow) -> bool {
    x.kind.is_signed()
        && x.kind == y.kind
        && y.kind == z.kind
        && x.tail == y.tail
        && x.head == z.tail
        && y.head == z.head
        && distinct3(x.tail, x.head, y.head)
}

/// `(S b→c)(a→c,ε)(a→b,ε)`
fn sing_omega3_shape(x: &Arrow, y: &Arrow, z: &Arrow) -> bool {
    x.kind == ArrowKind::Sing
        && y.kind.is_signed()
        && y.kind == z.kind
        && y.tail == z.tail
        && x.tail == z.head
        && x.head == y.head
        && distinct3(y.tail, x.tail, x.head)
}

/// Every single move applicable to `arrows` whose result has at most
/// `max_len` arrows, in move order then position.
pub(crate) fn moves(n: usize, arrows: &[Arrow], max_len: usize) -> Vec<(GaussStep, Vec<Arrow>)> {
    let mut out: Vec<(GaussStep, Vec<Arrow>)> = Vec::new();
    let mut emit = |label: Move, position: usize, removed: &[Arrow], inserted: Vec<Arrow>| {
        let step = Step {
            label,
            position,
            removed: removed.to_vec(),
            inserted,
        };
        let next = step.apply(arrows).expect("pattern taken from the word");
        out.push((step, next));
    };
    let len = arrows.len();
    for p in 0..len {
        if p + 1 < len {
            let (x, y) = (&arrows[p], &arrows[p + 1]);
            if x.disjoint(y) {
                emit(Move::Commute, p, &arrows[p..p + 2], vec![*y, *x]);
            }
            if x.kind.is_signed() && x.tail == y.tail && x.head == y.head && y.kind == x.kind.opposite() {
                emit(Move::Omega2, p, &arrows[p..p + 2], vec![]);
            }
            // (S a→b)(b→a,ε) <-> (a→b,ε)(S b→a)
            if x.kind == ArrowKind::Sing && y.kind.is_signed() && y.tail == x.head && y.head == x.tail {
                emit(
                    Move::SingOmega2,
                    p,
                    &arrows[p..p + 2],
                    vec![Arrow::new(x.tail, x.head, y.kind), Arrow::sing(x.head, x.tail)],
                );
            }
            if x.kind.is_signed() && y.kind == ArrowKind::Sing && y.tail == x.head && y.head == x.tail {
                emit(
                    Move::SingOmega2,
                    p,
                    &arrows[p..p + 2],
                    vec![Arrow::sing(x.tail, x.head), Arrow::new(x.head, x.tail, x.kind)],
                );
            }
        }
        if p + 2 < len {
            let (x, y, z) = (&arrows[p], &arrows[p + 1], &arrows[p + 2]);
            if omega3_shape(x, y, z) || omega3_shape(z, y, x) {
                emit(Move::Omega3, p, &arrows[p..p + 3], vec![*z, *y, *x]);
            }
            if sing_omega3_shape(x, y, z) || sing_omega3_shape(z, y, x) {
                emit(Move::SingOmega3, p, &arrows[p..p + 3], vec![*z, *y, *x]);
            }
        }
    }
    if len + 2 <= max_len {
        for p in 0..=len {
            for a in 1..=n {
                for b in (1..=n).filter(|&b| b != a) {
                    for kind in [ArrowKind::Pos, ArrowKind::Neg] {
                        emit(
                            Move::Omega2,
                            p,
                            &[],
                            vec![Arrow::new(a, b, kind), Arrow::new(a, b, kind.opposite())],
                        );
                    }
                }
            }
        }
    }
    out.sort_by_key(|(s, _)| (s.label, s.position));
    out
}

/// All diagrams one Ω-move or commutation away from `g` (Ω2 insertions
/// included, at most `max_len` arrows).
pub fn omega_neighbors(g: &GaussWord, max_len: usize) -> BTreeSet<GaussWord> {
    moves(g.n, &g.arrows, max_len)
        .into_iter()
        .map(|(_, a)| g.with_arrows(a))
        .filter(|h| h != g)
        .collect()
}

// ---------------------------------------------------------------------------
// Pair invariants

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairData {
    pub writhe: i64,
    pub sing_count: usize,
}

/// Signed arrow sum and singular arrow count for every unordered strand pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInvariant {
    pub n: usize,
    pub pairs: BTreeMap<(usize, usize), PairData>,
}

impl PairInvariant {
    pub fn get(&self, i: usize, j: usize) -> PairData {
        self.pairs[&(i.min(j), i.max(j))]
    }
}

impl fmt::Display for PairInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for ((i, j), d) in &self.pairs {
            if *d == PairData::default() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{i}{j}: w={} s={}", d.writhe, d.sing_count)?;
        }
        write!(f, "}}")
    }
}

pub fn pair_invariants(g: &GaussWord) -> PairInvariant {
    let mut pairs = BTreeMap::new();
    for i in 1..=g.n {
        for j in i + 1..=g.n {
            pairs.insert((i, j), PairData::default());
        }
    }
    for a in &g.arrows {
        let d = pairs.get_mut(&(a.tail.min(a.head), a.tail.max(a.head))).expect("valid arrow");
        match a.kind {
            ArrowKind::Sing => d.sing_count += 1,
            k => d.writhe += k.sign(),
        }
    }
    PairInvariant { n: g.n, pairs }
}

// ---------------------------------------------------------------------------
// Equivalence

/// Bounded check of Ω-equivalence. Distinct when the permutations or pair
/// invariants differ; otherwise both diagrams are brought to canonical form
/// and joined by bidirectional search over Ω-moves.
pub fn omega_equivalent(g: &GaussWord, h: &GaussWord, budget: &Budget) -> Result<Verdict<GaussStep>> {
    budget.validate()?;
    if g.n != h.n {
        return Err(Error::StrandMismatch { left: g.n, right: h.n });
    }
    if g.arrows == h.arrows && g.perm == h.perm {
        return Ok(Verdict::Equivalent { trace: vec![] });
    }
    if g.perm != h.perm {
        return Ok(Verdict::Distinct(Witness {
            invariant: "perm".into(),
            left: g.perm.to_string(),
            right: h.perm.to_string(),
        }));
    }
    let (pg, ph) = (pair_invariants(g), pair_invariants(h));
    if pg != ph {
        return Ok(Verdict::Distinct(Witness {
            invariant: "pair_invariants".into(),
            left: pg.to_string(),
            right: ph.to_string(),
        }));
    }

    // Commutations are free to find, so start from canonical forms unless
    // that alone would use up the step limit.
    let (cg, tg) = canonical_form_traced(g);
    let (ch, th) = canonical_form_traced(h);
    let pre = tg.len() + th.len();
    let (start, goal, tg, th, max_steps) = match budget.max_steps {
        Some(m) if pre >= m => (g.arrows.clone(), h.arrows.clone(), vec![], vec![], Some(m)),
        m => (cg.arrows, ch.arrows, tg, th, m.map(|m| m - pre)),
    };
    let cap = budget.length_cap(g.arrows.len(), h.arrows.len());
    let base = g.arrows.len().max(h.arrows.len()).min(cap);
    let caps: Vec<usize> = (0..).map(|k| base + 2 * k).take_while(|&c| c <= cap).collect();
    let n = g.n;
    let outcome = search::widening(
        start,
        goal,
        &caps,
        budget.max_nodes,
        max_steps,
        |w: &Vec<Arrow>, cap| moves(n, w, cap).into_iter().filter(|(_, nb)| nb != w).collect(),
        GaussStep::reversed,
    );
    match outcome {
        Outcome::Found(path) => {
            let mut trace = tg;
            trace.extend(path);
            trace.extend(search::reverse_trace(&th));
            debug_assert_eq!(search::replay(&g.arrows, &trace).as_deref(), Some(h.arrows()));
            Ok(Verdict::Equivalent { trace })
        }
        Outcome::NotFound(stats) => Ok(Verdict::Unknown(stats)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(t: &str, n: usize) -> BraidWord {
        BraidWord::parse(t, n).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn arrows_validate() {
        assert!(GaussWord::pure(2, vec![Arrow::pos(1, 1)]).is_err());
        assert!(GaussWord::pure(2, vec![Arrow::pos(1, 3)]).is_err());
        assert!(GaussWord::new(3, vec![], perm(&[2, 1])).is_err());
    }

    #[test]
    fn json_schema() {
        let g = GaussWord::new(2, vec![Arrow::pos(1, 2), Arrow::sing(2, 1)], perm(&[2, 1])).unwrap();
        let text = g.to_json();
        assert_eq!(
            text,
            r#"{"n":2,"arrows":[{"tail":1,"head":2,"kind":"+"},{"tail":2,"head":1,"kind":"s"}],"perm":[2,1]}"#
        );
        assert_eq!(GaussWord::from_json(&text).unwrap(), g);
        assert!(GaussWord::from_json(r#"{"n":2,"arrows":[{"tail":1,"head":1,"kind":"-"}],"perm":[1,2]}"#).is_err());
        assert!(GaussWord::from_json(r#"{"n":2,"arrows":[],"perm":[1,1]}"#).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let e = GaussWord::pure(4, vec![]).unwrap();
        assert_eq!(canonical_form(&e), e);
        let g = GaussWord::pure(4, vec![Arrow::pos(3, 4), Arrow::pos(1, 2)]).unwrap();
        assert_eq!(canonical_form(&g).arrows(), &[Arrow::pos(1, 2), Arrow::pos(3, 4)]);
        let g = GaussWord::pure(4, vec![Arrow::pos(1, 2), Arrow::pos(2, 3)]).unwrap();
        assert_eq!(canonical_form(&g), g);
    }

    #[test]
    fn canonical_form_moves_past_blocked_pairs() {
        // (2,3) is blocked by nothing once (1,4)... : b=(3,4), u=(1,3), a=(1,2)
        // a commutes with b but not with u; c=(1,2) can't pass u.
        let g = GaussWord::pure(5, vec![Arrow::pos(4, 5), Arrow::pos(2, 4), Arrow::pos(1, 3)]).unwrap();
        // (1,3) commutes with both (4,5) and (2,4)? it shares no strand with either
        let c = canonical_form(&g);
        assert_eq!(c.arrows()[0], Arrow::pos(1, 3));
        let (c2, steps) = canonical_form_traced(&g);
        assert_eq!(search::replay(g.arrows(), &steps).as_deref(), Some(c2.arrows()));
    }

    #[test]
    fn canonical_form_is_class_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let len = rng.gen_range(0..8);
            let g = GaussWord::random(&mut rng, 5, len);
            let c = canonical_form(&g);
            assert_eq!(canonical_form(&c), c);
            // random commutations keep the canonical form
            let mut arrows = g.arrows().to_vec();
            for _ in 0..10 {
                if arrows.len() < 2 {
                    break;
                }
                let p = rng.gen_range(0..arrows.len() - 1);
                if arrows[p].disjoint(&arrows[p + 1]) {
                    arrows.swap(p, p + 1);
                }
            }
            assert_eq!(canonical_form(&g.with_arrows(arrows)), c);
        }
    }

    #[test]
    fn omega_move_examples() {
        let g = GaussWord::pure(2, vec![Arrow::pos(1, 2), Arrow::neg(1, 2)]).unwrap();
        assert!(omega_neighbors(&g, 2).contains(&GaussWord::pure(2, vec![]).unwrap()));

        let g = GaussWord::pure(3, vec![Arrow::pos(1, 2), Arrow::pos(1, 3), Arrow::pos(2, 3)]).unwrap();
        let target = GaussWord::pure(3, vec![Arrow::pos(2, 3), Arrow::pos(1, 3), Arrow::pos(1, 2)]).unwrap();
        assert!(omega_neighbors(&g, 3).contains(&target));
        assert!(omega_neighbors(&target, 3).contains(&g));

        let g = GaussWord::pure(2, vec![Arrow::sing(1, 2), Arrow::pos(2, 1)]).unwrap();
        let target = GaussWord::pure(2, vec![Arrow::pos(1, 2), Arrow::sing(2, 1)]).unwrap();
        assert!(omega_neighbors(&g, 2).contains(&target));
        assert!(omega_neighbors(&target, 2).contains(&g));

        let g = GaussWord::pure(3, vec![Arrow::sing(2, 3), Arrow::neg(1, 3), Arrow::neg(1, 2)]).unwrap();
        let target = GaussWord::pure(3, vec![Arrow::neg(1, 2), Arrow::neg(1, 3), Arrow::sing(2, 3)]).unwrap();
        assert!(omega_neighbors(&g, 3).contains(&target));
        assert!(omega_neighbors(&target, 3).contains(&g));
    }

    #[test]
    fn omega3_requires_equal_signs() {
        let g = GaussWord::pure(3, vec![Arrow::pos(1, 2), Arrow::pos(1, 3), Arrow::neg(2, 3)]).unwrap();
        assert!(moves(3, g.arrows(), 3).iter().all(|(s, _)| s.label != Move::Omega3));
    }

    #[test]
    fn empty_diagram_has_only_insertions() {
        let e = GaussWord::pure(2, vec![]).unwrap();
        let nb = omega_neighbors(&e, 2);
        assert_eq!(nb.len(), 4);
        assert!(omega_neighbors(&e, 1).is_empty());
    }

    #[test]
    fn pair_invariant_examples() {
        let e = GaussWord::pure(3, vec![]).unwrap();
        assert!(pair_invariants(&e).pairs.values().all(|d| *d == PairData::default()));
        let g = GaussWord::pure(2, vec![Arrow::pos(1, 2), Arrow::pos(1, 2)]).unwrap();
        assert_eq!(pair_invariants(&g).get(1, 2).writhe, 2);
        let g = GaussWord::pure(3, vec![Arrow::sing(3, 1), Arrow::neg(2, 1)]).unwrap();
        assert_eq!(pair_invariants(&g).get(1, 3), PairData { writhe: 0, sing_count: 1 });
        assert_eq!(pair_invariants(&g).get(2, 1).writhe, -1);
    }

    #[test]
    fn pair_invariants_constant_on_neighbors() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let n = rng.gen_range(2..5);
            let len = rng.gen_range(0..6);
            let g = GaussWord::random(&mut rng, n, len);
            let p = pair_invariants(&g);
            for h in omega_neighbors(&g, g.arrows().len() + 2) {
                assert_eq!(pair_invariants(&h), p, "{g} -> {h}");
            }
        }
    }

    #[test]
    fn gauss_of_braid_examples() {
        let g = gauss_of_braid(&w("r1", 2));
        assert!(g.arrows().is_empty());
        assert_eq!(g.perm().images(), &[2, 1]);

        let g = gauss_of_braid(&w("s1", 2));
        assert_eq!(g.arrows(), &[Arrow::pos(1, 2)]);
        assert_eq!(g.perm().images(), &[2, 1]);

        let g = gauss_of_braid(&w("s1'", 2));
        assert_eq!(g.arrows(), &[Arrow::neg(2, 1)]);

        let a = gauss_of_braid(&w("r1 t2 r1", 3));
        let b = gauss_of_braid(&w("r2 t1 r2", 3));
        assert_eq!(a.arrows(), &[Arrow::sing(1, 3)]);
        assert_eq!(a, b);
        assert_eq!(a.perm().images(), &[3, 2, 1]);
    }

    #[test]
    fn r2_gives_cancelling_pair() {
        let g = gauss_of_braid(&w("s1 s1'", 2));
        assert_eq!(g.arrows(), &[Arrow::pos(1, 2), Arrow::neg(1, 2)]);
        let g = gauss_of_braid(&w("s1' s1", 2));
        assert_eq!(g.arrows(), &[Arrow::neg(2, 1), Arrow::pos(2, 1)]);
    }

    #[test]
    fn braid_of_gauss_examples() {
        let e = GaussWord::pure(2, vec![]).unwrap();
        assert_eq!(braid_of_gauss(&e).to_string(), "e");
        let g = GaussWord::new(2, vec![], perm(&[2, 1])).unwrap();
        assert_eq!(braid_of_gauss(&g).to_string(), "r1");
        let g = GaussWord::new(2, vec![Arrow::pos(1, 2)], perm(&[2, 1])).unwrap();
        assert_eq!(braid_of_gauss(&g).to_string(), "s1");
        // head above the tail at the bottom slot: the tail has to move up
        let g = GaussWord::pure(2, vec![Arrow::sing(2, 1)]).unwrap();
        assert_eq!(braid_of_gauss(&g).to_string(), "r1 t1");
    }

    #[test]
    fn round_trip_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let n = rng.gen_range(2..=6);
            let len = rng.gen_range(0..=10);
            let g = GaussWord::random(&mut rng, n, len);
            let b = braid_of_gauss(&g);
            assert_eq!(gauss_of_braid(&b), g);
            let sing = g.arrows().iter().filter(|a| a.kind == ArrowKind::Sing).count();
            assert_eq!(b.singularity_count(), sing);
            assert_eq!(
                b.letters().iter().filter(|l| l.is_classical()).count(),
                g.arrows().len() - sing
            );
        }
    }

    #[test]
    fn perm_matches_theta() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..300 {
            let n = rng.gen_range(2..=6);
            let len = rng.gen_range(0..12);
            let b = BraidWord::random(&mut rng, n, len);
            assert_eq!(gauss_of_braid(&b).perm(), &b.theta());
        }
    }

    #[test]
    fn sorting_word_realizes_permutations() {
        for p in Permutation::all(4) {
            let letters = sorting_word(&[1, 2, 3, 4], &p);
            assert!(letters.iter().all(|g| g.is_virtual()));
            assert_eq!(BraidWord::new(4, letters).unwrap().theta(), p);
        }
    }

    #[test]
    fn equivalence_verdicts() {
        let b = Budget::default();
        let g = GaussWord::pure(2, vec![Arrow::pos(1, 2), Arrow::neg(1, 2)]).unwrap();
        let e = GaussWord::pure(2, vec![]).unwrap();
        assert_eq!(omega_equivalent(&g, &g, &b).unwrap(), Verdict::Equivalent { trace: vec![] });
        let v = omega_equivalent(&g, &e, &b).unwrap();
        let trace = v.trace().expect("equivalent");
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].label, Move::Omega2);

        let h = GaussWord::new(2, vec![], perm(&[2, 1])).unwrap();
        assert!(omega_equivalent(&e, &h, &b).unwrap().is_distinct());
        let k = GaussWord::pure(2, vec![Arrow::pos(1, 2)]).unwrap();
        assert!(omega_equivalent(&e, &k, &b).unwrap().is_distinct());

        let bad = Budget {
            max_nodes: 0,
            ..Budget::default()
        };
        assert!(omega_equivalent(&g, &e, &bad).is_err());
    }

    /// Every arrow sequence reachable from `start` within `depth` moves.
    fn brute_force_orbit(n: usize, start: &[Arrow], depth: usize, cap: usize) -> BTreeSet<Vec<Arrow>> {
        let mut seen = BTreeSet::new();
        seen.insert(start.to_vec());
        let mut layer = vec![start.to_vec()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for word in &layer {
                for (_, nb) in moves(n, word, cap) {
                    if seen.insert(nb.clone()) {
                        next.push(nb);
                    }
                }
            }
            layer = next;
        }
        seen
    }

    #[test]
    fn singular_arrow_reversal_stays_unknown() {
        let a = GaussWord::pure(2, vec![Arrow::sing(1, 2)]).unwrap();
        let b = GaussWord::pure(2, vec![Arrow::sing(2, 1)]).unwrap();
        assert_eq!(pair_invariants(&a), pair_invariants(&b));
        // no move sequence of length <= 4 joins them
        let orbit = brute_force_orbit(2, a.arrows(), 4, 5);
        assert!(!orbit.contains(b.arrows()));
        let small = Budget {
            max_nodes: 5_000,
            slack: 4,
            max_len: None,
            max_steps: Some(4),
        };
        assert!(omega_equivalent(&a, &b, &small).unwrap().is_unknown());
    }
}
