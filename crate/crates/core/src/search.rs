//! Bounded bidirectional breadth-first search over a symmetric rewrite
//! relation, plus the step/trace/verdict types shared by the braid and Gauss
//! equivalence checkers.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// One rewrite: at `position`, the factor `removed` is replaced by `inserted`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step<L, T> {
    pub label: L,
    pub position: usize,
    pub removed: Vec<T>,
    pub inserted: Vec<T>,
}

impl<L: Clone, T: Clone + PartialEq> Step<L, T> {
    /// Applies the step, or `None` if `word` does not carry `removed` at
    /// `position`.
    pub fn apply(&self, word: &[T]) -> Option<Vec<T>> {
        let end = self.position.checked_add(self.removed.len())?;
        if end > word.len() || word[self.position..end] != self.removed[..] {
            return None;
        }
        let mut out = Vec::with_capacity(word.len() + self.inserted.len() - self.removed.len());
        out.extend_from_slice(&word[..self.position]);
        out.extend_from_slice(&self.inserted);
        out.extend_from_slice(&word[end..]);
        Some(out)
    }

    /// The step undoing this one.
    pub fn reversed(&self) -> Self {
        Step {
            label: self.label.clone(),
            position: self.position,
            removed: self.inserted.clone(),
            inserted: self.removed.clone(),
        }
    }

    /// The same rewrite performed `offset` letters further right.
    pub fn shifted(&self, offset: usize) -> Self {
        Step {
            position: self.position + offset,
            ..self.clone()
        }
    }
}

/// Applies `steps` in order, failing on the first step that does not match.
pub fn replay<L: Clone, T: Clone + PartialEq>(start: &[T], steps: &[Step<L, T>]) -> Option<Vec<T>> {
    let mut cur = start.to_vec();
    for s in steps {
        cur = s.apply(&cur)?;
    }
    Some(cur)
}

/// Reverses a trace from `a` to `b` into a trace from `b` to `a`.
pub fn reverse_trace<L: Clone, T: Clone + PartialEq>(steps: &[Step<L, T>]) -> Vec<Step<L, T>> {
    steps.iter().rev().map(Step::reversed).collect()
}

/// Limits for an equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Total nodes stored across both search trees.
    pub max_nodes: usize,
    /// Extra letters allowed above the longer input word.
    pub slack: usize,
    /// Absolute length cap; overrides `slack` when set.
    pub max_len: Option<usize>,
    /// Maximum trace length.
    pub max_steps: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000,
            slack: 4,
            max_len: None,
            max_steps: None,
        }
    }
}

impl Budget {
    pub fn with_steps(max_steps: usize) -> Self {
        Budget {
            max_steps: Some(max_steps),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 {
            return Err(Error::InvalidBudget("node limit must be positive"));
        }
        if self.max_len == Some(0) {
            return Err(Error::InvalidBudget("length limit must be positive"));
        }
        if self.max_steps == Some(0) {
            return Err(Error::InvalidBudget("step limit must be positive"));
        }
        Ok(())
    }

    /// Length cap for a search between words of lengths `a` and `b`.
    pub fn length_cap(&self, a: usize, b: usize) -> usize {
        self.max_len.unwrap_or(a.max(b) + self.slack)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub forward_depth: usize,
    pub backward_depth: usize,
    pub max_len: usize,
    /// Both frontiers ran dry: no trace exists within the length cap.
    pub exhausted: bool,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.forward_depth = self.forward_depth.max(other.forward_depth);
        self.backward_depth = self.backward_depth.max(other.backward_depth);
        self.max_len = self.max_len.max(other.max_len);
        self.exhausted = other.exhausted;
    }
}

/// Names the invariant separating two inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} != {}", self.invariant, self.left, self.right)
    }
}

/// Three-valued answer of a bounded equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<S> {
    /// The trace rewrites the first input into the second.
    Equivalent { trace: Vec<S> },
    Distinct(Witness),
    Unknown(SearchStats),
}

impl<S> Verdict<S> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Verdict::Equivalent { .. } => "equivalent",
            Verdict::Distinct(_) => "distinct",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn trace(&self) -> Option<&[S]> {
        match self {
            Verdict::Equivalent { trace } => Some(trace),
            _ => None,
        }
    }
}

pub enum Outcome<S> {
    Found(Vec<S>),
    NotFound(SearchStats),
}

struct Tree<W, S> {
    nodes: Vec<(W, Option<(usize, S)>)>,
    index: HashMap<W, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl<W: Clone + Eq + Hash, S: Clone> Tree<W, S> {
    fn rooted(root: W) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Tree {
            nodes: vec![(root, None)],
            index,
            frontier: vec![0],
            depth: 0,
        }
    }

    fn path_to(&self, mut idx: usize) -> Vec<S> {
        let mut out = Vec::new();
        while let Some((parent, step)) = &self.nodes[idx].1 {
            out.push(step.clone());
            idx = *parent;
        }
        out.reverse();
        out
    }
}

/// Searches for a rewrite path from `start` to `goal`. `expand` must be
/// symmetric (every step has its reverse available from the target) and
/// deterministic; `reverse` turns a step into its inverse.
pub fn bidirectional<W, S, E, R>(
    start: W,
    goal: W,
    max_nodes: usize,
    max_steps: Option<usize>,
    mut expand: E,
    reverse: R,
) -> Outcome<S>
where
    W: Clone + Eq + Hash,
    S: Clone,
    E: FnMut(&W) -> Vec<(S, W)>,
    R: Fn(&S) -> S,
{
    if start == goal {
        return Outcome::Found(Vec::new());
    }
    let mut fwd = Tree::rooted(start);
    let mut bwd = Tree::rooted(goal);
    let stats = |f: &Tree<W, S>, b: &Tree<W, S>, exhausted| SearchStats {
        nodes: f.nodes.len() + b.nodes.len(),
        forward_depth: f.depth,
        backward_depth: b.depth,
        max_len: 0,
        exhausted,
    };

    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return Outcome::NotFound(stats(&fwd, &bwd, true));
        }
        if let Some(ms) = max_steps {
            if fwd.depth + bwd.depth + 1 > ms {
                return Outcome::NotFound(stats(&fwd, &bwd, false));
            }
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let frontier = std::mem::take(&mut this.frontier);
        let mut next = Vec::new();
        for parent in frontier {
            let word = this.nodes[parent].0.clone();
            for (step, nb) in expand(&word) {
                if this.index.contains_key(&nb) {
                    continue;
                }
                let idx = this.nodes.len();
                this.index.insert(nb.clone(), idx);
                this.nodes.push((nb.clone(), Some((parent, step))));
                next.push(idx);
                if let Some(&meet) = other.index.get(&nb) {
                    let here = this.path_to(idx);
                    let there = other.path_to(meet);
                    let (to_meet, from_goal) = if forward { (here, there) } else { (there, here) };
                    let mut path = to_meet;
                    path.extend(from_goal.iter().rev().map(&reverse));
                    return Outcome::Found(path);
                }
                if this.nodes.len() + other.nodes.len() >= max_nodes {
                    this.depth += 1;
                    let (f, b) = if forward { (&*this, other) } else { (other, &*this) };
                    return Outcome::NotFound(stats(f, b, false));
                }
            }
        }
        this.frontier = next;
        this.depth += 1;
    }
}

/// Runs [`bidirectional`] once per length cap in `caps` (ascending), sharing
/// the node budget. Narrow caps are tried first because most equivalences
/// need few insertions.
pub fn widening<W, S, E, R>(
    start: W,
    goal: W,
    caps: &[usize],
    max_nodes: usize,
    max_steps: Option<usize>,
    mut expand: E,
    reverse: R,
) -> Outcome<S>
where
    W: Clone + Eq + Hash,
    S: Clone,
    E: FnMut(&W, usize) -> Vec<(S, W)>,
    R: Fn(&S) -> S,
{
    let mut total = SearchStats::default();
    let mut remaining = max_nodes;
    for &cap in caps {
        if remaining == 0 {
            break;
        }
        let outcome = bidirectional(
            start.clone(),
            goal.clone(),
            remaining,
            max_steps,
            |w| expand(w, cap),
            &reverse,
        );
        match outcome {
            Outcome::Found(path) => return Outcome::Found(path),
            Outcome::NotFound(mut stats) => {
                stats.max_len = cap;
                remaining = remaining.saturating_sub(stats.nodes);
                total.absorb(&stats);
            }
        }
    }
    Outcome::NotFound(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Step<&'static str, u8>;

    // toy system on byte strings: "ab" <-> "ba", "aa" <-> ""
    fn expand(w: &Vec<u8>, cap: usize) -> Vec<(S, Vec<u8>)> {
        let rules: [(&[u8], &[u8]); 4] = [(b"ab", b"ba"), (b"ba", b"ab"), (b"aa", b""), (b"", b"aa")];
        let mut out = Vec::new();
        for (lhs, rhs) in rules {
            for pos in 0..=w.len() {
                let step = Step {
                    label: "toy",
                    position: pos,
                    removed: lhs.to_vec(),
                    inserted: rhs.to_vec(),
                };
                if let Some(nb) = step.apply(w) {
                    if nb.len() <= cap && nb != *w {
                        out.push((step, nb));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn step_apply_and_reverse() {
        let s: S = Step {
            label: "x",
            position: 1,
            removed: vec![1, 2],
            inserted: vec![9],
        };
        assert_eq!(s.apply(&[0, 1, 2, 3]), Some(vec![0, 9, 3]));
        assert_eq!(s.apply(&[0, 2, 1, 3]), None);
        assert_eq!(s.apply(&[0, 1]), None);
        assert_eq!(s.reversed().apply(&[0, 9, 3]), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn finds_replayable_paths() {
        let start = b"aab".to_vec();
        let goal = b"b".to_vec();
        match widening(start.clone(), goal.clone(), &[3, 5], 1000, None, expand, S::reversed) {
            Outcome::Found(path) => assert_eq!(replay(&start, &path), Some(goal)),
            Outcome::NotFound(_) => panic!("no path"),
        }
        let start = b"bab".to_vec();
        let goal = b"abb".to_vec();
        match widening(start.clone(), goal.clone(), &[3], 1000, None, expand, S::reversed) {
            Outcome::Found(path) => assert_eq!(replay(&start, &path), Some(goal)),
            Outcome::NotFound(_) => panic!("no path"),
        }
    }

    #[test]
    fn exhausts_small_spaces() {
        // a-count parity is invariant, so "a" and "" are never joined
        match widening(b"a".to_vec(), b"".to_vec(), &[1, 3], 10_000, None, expand, S::reversed) {
            Outcome::Found(_) => panic!("parity violated"),
            Outcome::NotFound(stats) => {
                assert!(stats.exhausted);
                assert_eq!(stats.max_len, 3);
            }
        }
    }

    #[test]
    fn budget_validation() {
        assert!(Budget::default().validate().is_ok());
        let b = Budget {
            max_nodes: 0,
            ..Budget::default()
        };
        assert!(b.validate().is_err());
        let b = Budget {
            max_len: Some(0),
            ..Budget::default()
        };
        assert!(b.validate().is_err());
        assert_eq!(Budget::default().length_cap(3, 5), 9);
    }
}
