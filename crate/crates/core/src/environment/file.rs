//! On-disk theorem files: one JSON document holding an environment and a
//! proof log. A theory is a directory of such files.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{EnvError, PredicateDefinition, ProofEnvironment, Signature};
use crate::kernel::RuleInvocation;
use crate::syntax::{ascii, parse_formula};

pub const FORMAT: &str = "ndkernel-theorem/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinitionRecord {
    pub name: String,
    pub params: Vec<String>,
    pub body: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TheoremFile {
    pub format: String,
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<String>,
    pub theorems: Vec<String>,
    pub def_equations: Vec<String>,
    pub definitions: Vec<DefinitionRecord>,
    pub class_guard: String,
    pub log: Vec<RuleInvocation>,
    pub conclusion: Option<String>,
    /// Lines explicitly marked Qed when the file was saved.
    #[serde(default)]
    pub qed: Vec<usize>,
}

impl TheoremFile {
    pub fn new(
        name: &str,
        env: &ProofEnvironment,
        log: Vec<RuleInvocation>,
        conclusion: Option<&crate::syntax::Formula>,
        qed: Vec<usize>,
    ) -> Self {
        let (axioms, theorems, def_equations) = env.ascii_lists();
        TheoremFile {
            format: FORMAT.to_string(),
            name: name.to_string(),
            signature: env.signature.clone(),
            axioms,
            theorems,
            def_equations,
            definitions: env
                .definitions
                .iter()
                .map(|d| DefinitionRecord {
                    name: d.name.clone(),
                    params: d.params.clone(),
                    body: ascii(&d.body),
                })
                .collect(),
            class_guard: env.class_guard.clone(),
            log,
            conclusion: conclusion.map(ascii),
            qed,
        }
    }

    /// Rebuilds and validates the stored environment.
    pub fn environment(&self) -> Result<ProofEnvironment, EnvError> {
        if self.format != FORMAT {
            return Err(EnvError::Version(self.format.clone()));
        }
        let sig = &self.signature;
        for builtin in [super::signature::ELEM, super::signature::EQUALS] {
            if sig.predicate(builtin).is_none() {
                return Err(EnvError::Schema(format!("missing built-in predicate {builtin}")));
            }
        }
        let parse_all = |list: &[String], what: &str| {
            list.iter()
                .map(|t| {
                    parse_formula(t, sig)
                        .map_err(|e| EnvError::Schema(format!("{what} '{t}': {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let mut definitions = Vec::new();
        for d in &self.definitions {
            let body = parse_formula(&d.body, sig)
                .map_err(|e| EnvError::Schema(format!("definition of {}: {e}", d.name)))?;
            if sig.predicate(&d.name).map(|p| p.arity) != Some(d.params.len()) {
                return Err(EnvError::Schema(format!(
                    "definition of {} does not match its declaration",
                    d.name
                )));
            }
            if body.free_vars().iter().any(|v| !d.params.contains(v)) {
                return Err(EnvError::Schema(format!(
                    "definition of {} has free variables outside its parameters",
                    d.name
                )));
            }
            definitions.push(PredicateDefinition {
                name: d.name.clone(),
                params: d.params.clone(),
                body,
            });
        }
        if let Some(c) = &self.conclusion {
            parse_formula(c, sig).map_err(|e| EnvError::Schema(format!("conclusion: {e}")))?;
        }
        Ok(ProofEnvironment {
            name: self.name.clone(),
            signature: sig.clone(),
            axioms: parse_all(&self.axioms, "axiom")?,
            theorems: parse_all(&self.theorems, "theorem")?,
            def_equations: parse_all(&self.def_equations, "defining equation")?,
            definitions,
            class_guard: self.class_guard.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("theorem files always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, EnvError> {
        serde_json::from_str(text).map_err(|e| EnvError::Schema(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, EnvError> {
        let text = fs::read_to_string(path).map_err(|e| match e.kind() {
            ErrorKind::NotFound => EnvError::MissingFile(path.display().to_string()),
            _ => EnvError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        })?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), EnvError> {
        fs::write(path, self.to_json()).map_err(|e| EnvError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

/// `dir/name.json`, rejecting names that would escape the directory.
pub fn theorem_path(dir: &Path, name: &str) -> Result<PathBuf, EnvError> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !name.starts_with('.');
    if !ok {
        return Err(EnvError::BadName(name.to_string()));
    }
    Ok(dir.join(format!("{name}.json")))
}
