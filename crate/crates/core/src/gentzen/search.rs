use std::sync::Arc;

use super::{premises, GentzenError, Lineage, ReductionStep, Rule, Sequent};
use crate::syntax::Formula;

/// Candidate order: closing rules first, then invertible ones.
const ORDER: [Rule; 9] = [
    Rule::Ax,
    Rule::Labs,
    Rule::Land,
    Rule::Rand,
    Rule::Rimp,
    Rule::Lor,
    Rule::Limp,
    Rule::Ror1,
    Rule::Ror2,
];

struct Tree {
    step: ReductionStep,
    children: Vec<Tree>,
}

enum Outcome {
    Proved(Tree),
    Failed,
    CutOff,
}

fn candidates(s: &Sequent) -> impl Iterator<Item = (Rule, Option<usize>)> + '_ {
    ORDER.into_iter().flat_map(move |rule| {
        let ks: Vec<Option<usize>> = if rule.is_left() {
            (0..s.body.len()).map(Some).collect()
        } else {
            vec![None]
        };
        ks.into_iter().map(move |k| (rule, k))
    })
}

/// Depth-first search below `s`; `limit` bounds the branch length when set.
fn solve(s: &Sequent, branch: &Arc<Lineage>, limit: Option<usize>) -> Outcome {
    if limit == Some(0) {
        return Outcome::CutOff;
    }
    let mut cut = false;
    for (rule, k) in candidates(s) {
        let Some(new) = premises(s, rule, k) else {
            continue;
        };
        if new.iter().any(|n| branch.contains(&n.key())) {
            continue;
        }
        let mut children = Vec::with_capacity(new.len());
        let mut outcome = None;
        for n in &new {
            let below = Arc::new(Lineage {
                key: n.key(),
                parent: Some(branch.clone()),
            });
            match solve(n, &below, limit.map(|l| l - 1)) {
                Outcome::Proved(t) => children.push(t),
                other => {
                    outcome = Some(other);
                    break;
                }
            }
        }
        match outcome {
            None => {
                let step = ReductionStep { rule, sequent: 0, body: k };
                return Outcome::Proved(Tree { step, children });
            }
            Some(Outcome::CutOff) => cut = true,
            _ => {}
        }
    }
    if cut {
        Outcome::CutOff
    } else {
        Outcome::Failed
    }
}

fn linearize(t: Tree, out: &mut Vec<ReductionStep>) {
    out.push(t.step);
    for c in t.children {
        linearize(c, out);
    }
}

/// Searches for a reduction history that empties the initial state of `goal`.
/// Every step targets sequent 0. Returns `None` when the formula has no proof.
pub fn auto(goal: &Formula) -> Result<Option<Vec<ReductionStep>>, GentzenError> {
    let state = super::SequentListState::new(goal)?;
    let root = state.sequents[0].clone();
    let branch = state.lineage[0].clone();
    // The loop check alone makes the unbounded search finite; it decides
    // provability, and iterative deepening then finds a shortest proof.
    if let Outcome::Failed = solve(&root, &branch, None) {
        return Ok(None);
    }
    for limit in 1.. {
        if let Outcome::Proved(t) = solve(&root, &branch, Some(limit)) {
            let mut out = Vec::new();
            linearize(t, &mut out);
            return Ok(Some(out));
        }
    }
    unreachable!("a provable sequent has a proof of some finite height")
}
