use std::fmt;

use super::{GentzenError, Rule, ReductionStep, Sequent, SequentListState};
use crate::syntax::Formula;

/// One line of a linear sequent proof: a sequent, the rule that proves it and
/// the lines holding its premises.
#[derive(Clone, Debug, PartialEq)]
pub struct SequentProofLine {
    pub sequent: Sequent,
    pub label: String,
    pub premises: Vec<usize>,
}

impl fmt::Display for SequentProofLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sequent, self.label)?;
        for p in &self.premises {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

fn label(step: &ReductionStep) -> String {
    let k = step.body.map(|k| k.to_string()).unwrap_or_default();
    let name = match step.rule {
        Rule::Rand => "Rand",
        Rule::Ror1 => "Ror1",
        Rule::Ror2 => "Ror2",
        Rule::Rimp => "Rimp",
        Rule::Land => "Land",
        Rule::Lor => "Lor",
        Rule::Limp => "Limp",
        Rule::Labs => "Labs",
        Rule::Ax => "Ax",
    };
    format!("{name}{k}")
}

struct Node {
    sequent: Sequent,
    step: Option<ReductionStep>,
    children: Vec<usize>,
}

/// Rebuilds the proof tree behind a history and lists it leaves first; the
/// last line is the goal sequent.
pub fn reconstruct(
    goal: &Formula,
    history: &[ReductionStep],
) -> Result<Vec<SequentProofLine>, GentzenError> {
    let mut state = SequentListState::new(goal)?;
    let mut nodes = vec![Node {
        sequent: state.sequents[0].clone(),
        step: None,
        children: vec![],
    }];
    let mut open = vec![0usize];
    for (index, &step) in history.iter().enumerate() {
        let next = state.reduce(step).map_err(|e| GentzenError::Replay {
            index,
            step,
            source: Box::new(e),
        })?;
        let added = next.sequents.len() + 1 - state.sequents.len();
        let parent = open[step.sequent];
        let ids: Vec<usize> = next.sequents[step.sequent..step.sequent + added]
            .iter()
            .map(|s| {
                nodes.push(Node {
                    sequent: s.clone(),
                    step: None,
                    children: vec![],
                });
                nodes.len() - 1
            })
            .collect();
        nodes[parent].step = Some(step);
        nodes[parent].children = ids.clone();
        open.splice(step.sequent..=step.sequent, ids);
        state = next;
    }
    if !state.is_proved() {
        return Err(GentzenError::Incomplete(state.sequents.len()));
    }
    // Each node's children are listed together, before any grandchildren;
    // reversing puts premises above their conclusions.
    let mut order = vec![0usize];
    fn emit(n: usize, nodes: &[Node], order: &mut Vec<usize>) {
        order.extend(nodes[n].children.iter().copied());
        for &c in &nodes[n].children {
            emit(c, nodes, order);
        }
    }
    emit(0, &nodes, &mut order);
    order.reverse();
    let mut line_of = vec![0usize; nodes.len()];
    for (line, &n) in order.iter().enumerate() {
        line_of[n] = line;
    }
    Ok(order
        .iter()
        .map(|&n| {
            let node = &nodes[n];
            SequentProofLine {
                sequent: node.sequent.clone(),
                label: label(node.step.as_ref().expect("every node is reduced")),
                premises: node.children.iter().map(|&c| line_of[c]).collect(),
            }
        })
        .collect())
}
