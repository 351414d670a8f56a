//! Bounded equivalence checking in the monoid.

use crate::braid::relations::RuleSet;
use crate::braid::word::{BraidStep, BraidWord};
use crate::error::{Error, Result};
use crate::gauss::{gauss_of_braid, pair_invariants};
use crate::search::{self, Budget, Outcome, Verdict, Witness};

/// Cheap invariants, checked in this order. The first one that differs is
/// reported as the witness.
fn separating_invariant(u: &BraidWord, v: &BraidWord) -> Option<Witness> {
    let witness = |name: &str, a: String, b: String| {
        (a != b).then(|| Witness {
            invariant: name.into(),
            left: a,
            right: b,
        })
    };
    witness(
        "singularity_count",
        u.singularity_count().to_string(),
        v.singularity_count().to_string(),
    )
    .or_else(|| witness("theta", u.theta().to_string(), v.theta().to_string()))
    .or_else(|| witness("degree", u.degree().to_string(), v.degree().to_string()))
    .or_else(|| {
        witness(
            "pair_invariants",
            pair_invariants(&gauss_of_braid(u)).to_string(),
            pair_invariants(&gauss_of_braid(v)).to_string(),
        )
    })
}

/// Decides whether `u` and `v` represent the same element, within `budget`.
///
/// `Distinct` comes with the invariant that separates them. `Equivalent`
/// comes with a trace of catalog relation applications rewriting `u` into
/// `v`. Otherwise the search gives up with `Unknown`. The verdict class is
/// symmetric in the two arguments.
pub fn equivalent(u: &BraidWord, v: &BraidWord, budget: &Budget) -> Result<Verdict<BraidStep>> {
    budget.validate()?;
    if u.strand_count() != v.strand_count() {
        return Err(Error::StrandMismatch {
            left: u.strand_count(),
            right: v.strand_count(),
        });
    }
    if u == v {
        return Ok(Verdict::Equivalent { trace: vec![] });
    }
    if let Some(w) = separating_invariant(u, v) {
        return Ok(Verdict::Distinct(w));
    }
    // Search from a fixed orientation so that swapping the arguments explores
    // the same space.
    if v < u {
        return Ok(match search_trace(v, u, budget) {
            Verdict::Equivalent { trace } => Verdict::Equivalent {
                trace: search::reverse_trace(&trace),
            },
            other => other,
        });
    }
    Ok(search_trace(u, v, budget))
}

/// Step of the internal search: rule index, position, and whether the rule
/// is used backwards.
type RuleUse = (usize, usize, bool);

fn search_trace(u: &BraidWord, v: &BraidWord, budget: &Budget) -> Verdict<BraidStep> {
    let (ru, tu) = u.free_reduce_traced();
    let (rv, tv) = v.free_reduce_traced();
    let rules = RuleSet::with_lemmas(u.strand_count());

    let cap = budget.length_cap(u.len(), v.len());
    let base = ru.len().max(rv.len()).min(cap);
    let caps: Vec<usize> = (0..).map(|k| base + 2 * k).take_while(|&c| c <= cap).collect();
    let pre = tu.len() + tv.len();
    let max_steps = budget.max_steps.map(|m| m.saturating_sub(pre).max(1));

    let outcome = search::widening(
        ru.into_letters(),
        rv.into_letters(),
        &caps,
        budget.max_nodes,
        max_steps,
        |w, cap| {
            rules
                .neighbors(w, cap)
                .into_iter()
                .map(|(ri, pos, nb)| ((ri, pos, false), nb))
                .collect()
        },
        |&(ri, pos, back): &RuleUse| (ri, pos, !back),
    );
    match outcome {
        Outcome::Found(path) => {
            let mut trace = tu;
            for (ri, pos, back) in path {
                let steps = rules.expand(ri, pos);
                if back {
                    trace.extend(search::reverse_trace(&steps));
                } else {
                    trace.extend(steps);
                }
            }
            trace.extend(search::reverse_trace(&tv));
            debug_assert_eq!(search::replay(u.letters(), &trace).as_deref(), Some(v.letters()));
            Verdict::Equivalent { trace }
        }
        Outcome::NotFound(stats) => Verdict::Unknown(stats),
    }
}
