use std::collections::BTreeSet;

use super::invocation::RuleInvocation;
use super::rules;
use super::KernelError;
use crate::environment::ProofEnvironment;
use crate::syntax::Formula;

/// One line of a linear proof.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: String,
    pub parents: Vec<usize>,
    /// The invocation that produced this line, as logged.
    pub invocation: RuleInvocation,
    /// Hypothesis lines discharged by this line.
    pub discharges: Vec<usize>,
    /// Later lines that discharged this hypothesis.
    pub discharged_by: Vec<usize>,
    pub pos: usize,
    pub qed: bool,
    pub comment: String,
}

impl ProofLine {
    pub fn is_hypothesis(&self) -> bool {
        self.rule == "Hyp"
    }
}

/// What a rule contributes: the new line's formula, parents and discharges.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub formula: Formula,
    pub parents: Vec<usize>,
    pub discharges: Vec<usize>,
}

/// A linear proof. Line `i` was produced by log entry `i`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Proof {
    lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new() -> Self {
        Proof::default()
    }

    pub fn lines(&self) -> &[ProofLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn line(&self, n: usize) -> Result<&ProofLine, KernelError> {
        self.lines.get(n).ok_or(KernelError::LineOutOfRange {
            index: n,
            len: self.lines.len(),
        })
    }

    pub fn log(&self) -> Vec<RuleInvocation> {
        self.lines.iter().map(|l| l.invocation.clone()).collect()
    }

    /// Applies a rule; on failure the proof is unchanged.
    pub fn apply(
        &mut self,
        env: &ProofEnvironment,
        inv: &RuleInvocation,
    ) -> Result<usize, KernelError> {
        let step = rules::apply(self, env, inv)?;
        Ok(self.push(inv.clone(), step))
    }

    fn push(&mut self, inv: RuleInvocation, step: Step) -> usize {
        let pos = self.lines.len();
        let mut discharges = step.discharges;
        discharges.sort_unstable();
        discharges.dedup();
        for &h in &discharges {
            self.lines[h].discharged_by.push(pos);
        }
        self.lines.push(ProofLine {
            formula: step.formula,
            rule: inv.rule.clone(),
            parents: step.parents,
            invocation: inv,
            discharges,
            discharged_by: Vec::new(),
            pos,
            qed: false,
            comment: String::new(),
        });
        pos
    }

    /// Removes the last line and any discharge links pointing at it.
    pub fn undo(&mut self) -> Result<ProofLine, KernelError> {
        let last = self.lines.pop().ok_or(KernelError::EmptyProof)?;
        for &h in &last.discharges {
            self.lines[h].discharged_by.retain(|&d| d != last.pos);
        }
        Ok(last)
    }

    /// `n` together with every line reachable from it through parents.
    pub fn dependency_tree(&self, n: usize) -> Result<BTreeSet<usize>, KernelError> {
        self.line(n)?;
        let mut seen = BTreeSet::new();
        let mut stack = vec![n];
        while let Some(i) = stack.pop() {
            if seen.insert(i) {
                stack.extend(self.lines[i].parents.iter().copied());
            }
        }
        Ok(seen)
    }

    /// Hypotheses that line `n` still depends on.
    pub fn hypotheses(&self, n: usize) -> Result<BTreeSet<usize>, KernelError> {
        let tree = self.dependency_tree(n)?;
        Ok(tree
            .iter()
            .copied()
            .filter(|&h| {
                let line = &self.lines[h];
                line.is_hypothesis() && !line.discharged_by.iter().any(|d| tree.contains(d))
            })
            .collect())
    }

    /// Marks line `n` Qed when it depends on no hypotheses.
    pub fn qed(&mut self, n: usize) -> Result<bool, KernelError> {
        let done = self.hypotheses(n)?.is_empty();
        if done {
            self.lines[n].qed = true;
        }
        Ok(done)
    }

    pub fn qed_lines(&self) -> Vec<usize> {
        self.lines.iter().filter(|l| l.qed).map(|l| l.pos).collect()
    }

    /// `n. formula Rule parents [Qed]`.
    pub fn render_line(&self, n: usize, env: &ProofEnvironment) -> Result<String, KernelError> {
        let line = self.line(n)?;
        let mut s = format!("{n}. {} {}", env.pretty(&line.formula), line.rule);
        for p in &line.parents {
            s.push_str(&format!(" {p}"));
        }
        if line.qed {
            s.push_str(" Qed");
        }
        Ok(s)
    }

    pub fn render(&self, env: &ProofEnvironment) -> Vec<String> {
        (0..self.len())
            .map(|n| self.render_line(n, env).expect("index in range"))
            .collect()
    }

    pub fn render_log(&self) -> Vec<String> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{i}. {}", l.invocation))
            .collect()
    }
}
