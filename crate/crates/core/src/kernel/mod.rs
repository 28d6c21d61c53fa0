//! Linear natural deduction: proof lines, the rule table, log replay and
//! theory checking.

pub mod check;
pub mod invocation;
pub mod proof;
pub mod rules;

pub use check::{check_theorem, check_theory, TheoryReport, Verdict};
pub use invocation::{Arg, RuleInvocation};
pub use proof::{Proof, ProofLine, Step};
pub use rules::{Param, RULES};

use crate::environment::{EnvError, ProofEnvironment};
use crate::syntax::SyntaxError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("line {index} does not exist (proof has {len} line(s))")]
    LineOutOfRange { index: usize, len: usize },
    #[error("{rule}: line {line} is not {expected}")]
    Shape {
        rule: String,
        line: usize,
        expected: &'static str,
    },
    #[error("{rule}: {message}")]
    Mismatch { rule: String, message: String },
    #[error("{rule}: line {line} is not a hypothesis")]
    NotAHypothesis { rule: String, line: usize },
    #[error("variable '{var}' occurs free in line {line}")]
    Eigenvariable { var: String, line: usize },
    #[error("{rule}: {message}")]
    Capture { rule: String, message: String },
    #[error("'{name}' occurs in live hypothesis {line}")]
    SecondOrderInHypothesis { name: String, line: usize },
    #[error("predicate '{name}' occurs in live hypothesis {line}")]
    PredicateInHypothesis { name: String, line: usize },
    #[error("Predicate is defined.")]
    PredicateDefined,
    #[error("predicate '{0}' has no definition")]
    NotDefined(String),
    #[error("unknown rule '{0}'")]
    UnknownRule(String),
    #[error("{rule}: {message}")]
    BadArgs { rule: String, message: String },
    #[error("no {list} {index} (there are {len})")]
    EntryOutOfRange {
        list: &'static str,
        index: usize,
        len: usize,
    },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("the proof is empty")]
    EmptyProof,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("log entry {index} ({entry}) failed: {source}")]
pub struct ReplayError {
    pub index: usize,
    pub entry: String,
    pub source: KernelError,
}

/// Result of replaying a log: the rebuilt proof and whether its last line is Qed
/// (`None` for an empty log).
#[derive(Debug, Clone)]
pub struct Replay {
    pub proof: Proof,
    pub qed: Option<bool>,
}

/// Rebuilds a proof from its log and runs Qed on the last line.
pub fn replay(env: &ProofEnvironment, log: &[RuleInvocation]) -> Result<Replay, ReplayError> {
    let mut proof = Proof::new();
    for (index, inv) in log.iter().enumerate() {
        proof.apply(env, inv).map_err(|source| ReplayError {
            index,
            entry: inv.to_string(),
            source,
        })?;
    }
    let qed = match proof.len() {
        0 => None,
        n => Some(proof.qed(n - 1).expect("last line exists")),
    };
    Ok(Replay { proof, qed })
}

/// Sorted, de-duplicated indices of the assumed theorems a log cites.
pub fn used_theorems(log: &[RuleInvocation]) -> Vec<usize> {
    let mut out: Vec<usize> = log
        .iter()
        .filter(|inv| inv.rule == "TheoremInt")
        .filter_map(|inv| match inv.args.first() {
            Some(Arg::Int(n)) if *n >= 0 => Some(*n as usize),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
