use std::path::Path;

use serde::Serialize;

use super::replay;
use crate::environment::file::{theorem_path, TheoremFile};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Verdict {
    Qed,
    /// An environment with no proof: nothing to verify.
    EnvironmentOnly,
    /// Replay succeeded but the last line still has live hypotheses.
    NotQed,
    Failed { entry: usize, message: String },
    /// A line recorded as Qed in the file does not verify.
    QedMarkFailed { line: usize },
    /// The replayed last line differs from the stored conclusion.
    ConclusionMismatch,
    LoadError { message: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Qed | Verdict::EnvironmentOnly)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryReport {
    pub results: Vec<(String, Verdict)>,
    pub passed: bool,
}

/// Replays a theorem file in its own stored environment.
pub fn verify_file(file: &TheoremFile) -> Verdict {
    let env = match file.environment() {
        Ok(env) => env,
        Err(e) => {
            return Verdict::LoadError {
                message: e.to_string(),
            }
        }
    };
    if file.log.is_empty() && file.conclusion.is_none() {
        return Verdict::EnvironmentOnly;
    }
    let mut run = match replay(&env, &file.log) {
        Ok(r) => r,
        Err(e) => {
            return Verdict::Failed {
                entry: e.index,
                message: e.source.to_string(),
            }
        }
    };
    for &line in &file.qed {
        if !matches!(run.proof.qed(line), Ok(true)) {
            return Verdict::QedMarkFailed { line };
        }
    }
    let last = run.proof.lines().last().map(|l| &l.formula);
    if let Some(stored) = &file.conclusion {
        match (last, env.parse(stored)) {
            (Some(f), Ok(g)) if f.alpha_eq(&g) => {}
            _ => return Verdict::ConclusionMismatch,
        }
    }
    match run.qed {
        Some(true) => Verdict::Qed,
        _ => Verdict::NotQed,
    }
}

pub fn check_theorem(dir: &Path, name: &str) -> Verdict {
    match theorem_path(dir, name).and_then(|p| TheoremFile::read(&p)) {
        Ok(file) => verify_file(&file),
        Err(e) => Verdict::LoadError {
            message: e.to_string(),
        },
    }
}

/// Checks each named theorem; theorems are independent and run in parallel.
pub fn check_theory(dir: &Path, names: &[String]) -> TheoryReport {
    let results: Vec<(String, Verdict)> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| s.spawn(move || (n.clone(), check_theorem(dir, n))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker thread panicked"))
            .collect()
    });
    let passed = results.iter().all(|(_, v)| v.passed());
    TheoryReport { results, passed }
}
