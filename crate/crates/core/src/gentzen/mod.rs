//! Decision procedure for intuitionistic propositional logic by backward
//! reduction in G3i.
//!
//! A state is a list of sequents still to be proved. A reduction picks one
//! sequent, removes it, and puts the premises of the matching G3i rule in its
//! place. A formula is provable when some sequence of reductions empties the
//! list.

mod reconstruct;
mod search;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;
use std::str::FromStr;

pub use reconstruct::{reconstruct, SequentProofLine};
pub use search::auto;

use crate::environment::signature::Signature;
use crate::syntax::{self, Formula, SyntaxError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GentzenError {
    #[error("not a propositional formula")]
    NotPropositional,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("sequent {index} does not exist ({len} sequent(s))")]
    SequentOutOfRange { index: usize, len: usize },
    #[error("formula {index} does not exist in the context of sequent {sequent}")]
    BodyOutOfRange { sequent: usize, index: usize },
    #[error("{0} does not apply to the selected sequent")]
    Shape(ReductionStep),
    #[error("{0} would revisit a sequent already on its branch")]
    Cycle(ReductionStep),
    #[error("cannot read reduction step '{0}'")]
    BadStep(String),
    #[error("step {index} ({step}) failed: {source}")]
    Replay {
        index: usize,
        step: ReductionStep,
        source: Box<GentzenError>,
    },
    #[error("the history leaves {0} sequent(s) unproved")]
    Incomplete(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub head: Formula,
    pub body: Vec<Formula>,
}

/// Sequents are compared with the context read as a set.
type Key = (Formula, BTreeSet<Formula>);

impl Sequent {
    pub fn goal(head: Formula) -> Self {
        Sequent { head, body: Vec::new() }
    }

    fn key(&self) -> Key {
        (self.head.clone(), self.body.iter().cloned().collect())
    }

    pub fn render(&self) -> String {
        let sig = Signature::default();
        let mut s = String::new();
        for f in &self.body {
            s.push_str(&syntax::pretty(f, &sig));
            s.push_str(", ");
        }
        if s.ends_with(", ") {
            s.truncate(s.len() - 2);
            s.push(' ');
        }
        format!("{s}=> {}", syntax::pretty(&self.head, &sig))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Rand,
    Ror1,
    Ror2,
    Rimp,
    Land,
    Lor,
    Limp,
    Labs,
    Ax,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Rand,
        Rule::Ror1,
        Rule::Ror2,
        Rule::Rimp,
        Rule::Land,
        Rule::Lor,
        Rule::Limp,
        Rule::Labs,
        Rule::Ax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Rand => "rand",
            Rule::Ror1 => "ror1",
            Rule::Ror2 => "ror2",
            Rule::Rimp => "rimp",
            Rule::Land => "land",
            Rule::Lor => "lor",
            Rule::Limp => "limp",
            Rule::Labs => "labs",
            Rule::Ax => "ax",
        }
    }

    /// Rules that act on a context formula.
    pub fn is_left(self) -> bool {
        matches!(self, Rule::Land | Rule::Lor | Rule::Limp | Rule::Labs | Rule::Ax)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub rule: Rule,
    pub sequent: usize,
    pub body: Option<usize>,
}

impl ReductionStep {
    pub fn right(rule: Rule, sequent: usize) -> Self {
        ReductionStep { rule, sequent, body: None }
    }

    pub fn left(rule: Rule, sequent: usize, body: usize) -> Self {
        ReductionStep {
            rule,
            sequent,
            body: Some(body),
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.body {
            Some(k) => write!(f, "{}({},{})", self.rule.name(), self.sequent, k),
            None => write!(f, "{}({})", self.rule.name(), self.sequent),
        }
    }
}

impl FromStr for ReductionStep {
    type Err = GentzenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GentzenError::BadStep(s.to_string());
        let s_trim = s.trim();
        let (name, rest) = s_trim.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let rule = Rule::ALL
            .into_iter()
            .find(|r| r.name() == name.trim())
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|n| n.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (rule.is_left(), nums.as_slice()) {
            (false, [i]) => Ok(ReductionStep::right(rule, *i)),
            (true, [i, k]) => Ok(ReductionStep::left(rule, *i, *k)),
            _ => Err(bad()),
        }
    }
}

/// Replaces `¬` sugar and `<->` by implications and checks the formula is
/// propositional.
pub fn negation_expand(f: &Formula) -> Result<Formula, GentzenError> {
    Ok(match f {
        Formula::Sov(_) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(negation_expand(a)?, negation_expand(b)?),
        Formula::Or(a, b) => Formula::or(negation_expand(a)?, negation_expand(b)?),
        Formula::Imp(a, b) => Formula::imp(negation_expand(a)?, negation_expand(b)?),
        Formula::Iff(a, b) => {
            let (a, b) = (negation_expand(a)?, negation_expand(b)?);
            Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
        }
        _ => return Err(GentzenError::NotPropositional),
    })
}

fn is_atomic(f: &Formula) -> bool {
    matches!(f, Formula::Sov(_) | Formula::Bottom)
}

fn splice(body: &[Formula], k: usize, with: &[Formula]) -> Vec<Formula> {
    let mut out = body[..k].to_vec();
    out.extend_from_slice(with);
    out.extend_from_slice(&body[k + 1..]);
    out
}

/// Premises of the inverted rule, or `None` if it does not apply.
fn premises(s: &Sequent, rule: Rule, k: Option<usize>) -> Option<Vec<Sequent>> {
    let seq = |head: &Formula, body: Vec<Formula>| Sequent {
        head: head.clone(),
        body,
    };
    let gk = k.and_then(|k| s.body.get(k));
    match (rule, &s.head, gk) {
        (Rule::Rand, Formula::And(a, b), None) => {
            Some(vec![seq(a, s.body.clone()), seq(b, s.body.clone())])
        }
        (Rule::Ror1, Formula::Or(a, _), None) => Some(vec![seq(a, s.body.clone())]),
        (Rule::Ror2, Formula::Or(_, b), None) => Some(vec![seq(b, s.body.clone())]),
        (Rule::Rimp, Formula::Imp(a, b), None) => {
            let mut body = vec![(**a).clone()];
            body.extend(s.body.iter().cloned());
            Some(vec![seq(b, body)])
        }
        (Rule::Land, _, Some(Formula::And(a, b))) => {
            let k = k?;
            Some(vec![seq(&s.head, splice(&s.body, k, &[(**a).clone(), (**b).clone()]))])
        }
        (Rule::Lor, _, Some(Formula::Or(a, b))) => {
            let k = k?;
            Some(vec![
                seq(&s.head, splice(&s.body, k, &[(**a).clone()])),
                seq(&s.head, splice(&s.body, k, &[(**b).clone()])),
            ])
        }
        (Rule::Limp, _, Some(Formula::Imp(a, b))) => {
            let k = k?;
            Some(vec![
                seq(a, s.body.clone()),
                seq(&s.head, splice(&s.body, k, &[(**b).clone()])),
            ])
        }
        (Rule::Labs, _, Some(Formula::Bottom)) => Some(vec![]),
        (Rule::Ax, h, Some(g)) if g == h && is_atomic(h) => Some(vec![]),
        _ => None,
    }
}

/// Sequent keys on the branch from the root down to a sequent, inclusive.
#[derive(Clone, Debug)]
struct Lineage {
    key: Key,
    parent: Option<Arc<Lineage>>,
}

impl Lineage {
    fn contains(&self, key: &Key) -> bool {
        let mut node = Some(self);
        while let Some(n) = node {
            if n.key == *key {
                return true;
            }
            node = n.parent.as_deref();
        }
        false
    }
}

/// The prover's working state.
#[derive(Clone, Debug)]
pub struct SequentListState {
    sequents: Vec<Sequent>,
    lineage: Vec<Arc<Lineage>>,
    memory: HashSet<Key>,
    history: Vec<ReductionStep>,
}

impl SequentListState {
    pub fn new(goal: &Formula) -> Result<Self, GentzenError> {
        let s = Sequent::goal(negation_expand(goal)?);
        let key = s.key();
        Ok(SequentListState {
            lineage: vec![Arc::new(Lineage {
                key: key.clone(),
                parent: None,
            })],
            memory: HashSet::from([key]),
            sequents: vec![s],
            history: Vec::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, GentzenError> {
        let f = syntax::parse_formula(text, &Signature::default())?;
        Self::new(&f)
    }

    pub fn sequents(&self) -> &[Sequent] {
        &self.sequents
    }

    pub fn history(&self) -> &[ReductionStep] {
        &self.history
    }

    pub fn memory_size(&self) -> usize {
        self.memory.len()
    }

    pub fn is_proved(&self) -> bool {
        self.sequents.is_empty()
    }

    /// Applies one reduction, returning the new state.
    pub fn reduce(&self, step: ReductionStep) -> Result<Self, GentzenError> {
        let len = self.sequents.len();
        let s = self
            .sequents
            .get(step.sequent)
            .ok_or(GentzenError::SequentOutOfRange {
                index: step.sequent,
                len,
            })?;
        if let Some(k) = step.body {
            if k >= s.body.len() {
                return Err(GentzenError::BodyOutOfRange {
                    sequent: step.sequent,
                    index: k,
                });
            }
        }
        if step.rule.is_left() != step.body.is_some() {
            return Err(GentzenError::Shape(step));
        }
        let new = premises(s, step.rule, step.body).ok_or(GentzenError::Shape(step))?;
        let branch = &self.lineage[step.sequent];
        if new.iter().any(|n| branch.contains(&n.key())) {
            return Err(GentzenError::Cycle(step));
        }
        let mut next = self.clone();
        let lineages: Vec<Arc<Lineage>> = new
            .iter()
            .map(|n| {
                Arc::new(Lineage {
                    key: n.key(),
                    parent: Some(branch.clone()),
                })
            })
            .collect();
        for n in &new {
            next.memory.insert(n.key());
        }
        next.sequents.splice(step.sequent..=step.sequent, new);
        next.lineage.splice(step.sequent..=step.sequent, lineages);
        next.history.push(step);
        Ok(next)
    }

    /// Replays a history from this state.
    pub fn replay(&self, history: &[ReductionStep]) -> Result<Self, GentzenError> {
        let mut state = self.clone();
        for (index, &step) in history.iter().enumerate() {
            state = state.reduce(step).map_err(|e| GentzenError::Replay {
                index,
                step,
                source: Box::new(e),
            })?;
        }
        Ok(state)
    }

    pub fn display(&self) -> Vec<String> {
        self.sequents
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{i}. {s}"))
            .collect()
    }
}
