use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EnvError;

/// Name of the built-in membership predicate.
pub const ELEM: &str = "Elem";
/// Name of the built-in equality predicate.
pub const EQUALS: &str = "=";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fixity {
    Prefix,
    Infix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolInfo {
    pub arity: usize,
    pub fixity: Fixity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Constant,
    Function,
    Predicate,
    Variable,
}

impl std::fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SymbolKind::Constant => "constant",
            SymbolKind::Function => "function",
            SymbolKind::Predicate => "predicate",
            SymbolKind::Variable => "variable",
        })
    }
}

/// Declared symbols of an environment together with their display strings.
///
/// A pretty string containing `{0}`, `{1}`, ... is a template whose
/// placeholders are filled with the rendered arguments. Otherwise an infix
/// symbol renders as `(a S b)` and a prefix symbol as `S(a, ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub constants: BTreeSet<String>,
    pub functions: BTreeMap<String, SymbolInfo>,
    pub predicates: BTreeMap<String, SymbolInfo>,
    pub variables: BTreeSet<String>,
    pub pretty: BTreeMap<String, String>,
}

impl Default for Signature {
    fn default() -> Self {
        let infix = SymbolInfo {
            arity: 2,
            fixity: Fixity::Infix,
        };
        Signature {
            constants: BTreeSet::new(),
            functions: BTreeMap::new(),
            predicates: BTreeMap::from([
                (ELEM.to_string(), infix.clone()),
                (EQUALS.to_string(), infix),
            ]),
            variables: BTreeSet::new(),
            pretty: BTreeMap::from([(ELEM.to_string(), "ε".to_string())]),
        }
    }
}

impl Signature {
    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.constants.contains(name) {
            Some(SymbolKind::Constant)
        } else if self.functions.contains_key(name) {
            Some(SymbolKind::Function)
        } else if self.predicates.contains_key(name) {
            Some(SymbolKind::Predicate)
        } else if self.variables.contains(name) {
            Some(SymbolKind::Variable)
        } else {
            None
        }
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn function(&self, name: &str) -> Option<&SymbolInfo> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&SymbolInfo> {
        self.predicates.get(name)
    }

    pub fn pretty(&self, name: &str) -> Option<&str> {
        self.pretty.get(name).map(String::as_str)
    }

    pub fn declare(
        &mut self,
        kind: SymbolKind,
        name: &str,
        arity: usize,
        fixity: Fixity,
    ) -> Result<(), EnvError> {
        if !is_identifier(name) {
            return Err(EnvError::BadName(name.to_string()));
        }
        if let Some(existing) = self.kind_of(name) {
            // Re-declaring a variable is harmless; anything else conflicts.
            if !(existing == SymbolKind::Variable && kind == SymbolKind::Variable) {
                return Err(EnvError::Duplicate {
                    name: name.to_string(),
                    kind: existing,
                });
            }
        }
        match kind {
            SymbolKind::Constant => {
                self.constants.insert(name.to_string());
            }
            SymbolKind::Variable => {
                self.variables.insert(name.to_string());
            }
            SymbolKind::Function | SymbolKind::Predicate => {
                if arity < 1 {
                    return Err(EnvError::BadArity(name.to_string()));
                }
                if fixity == Fixity::Infix && arity != 2 {
                    return Err(EnvError::InfixArity(name.to_string()));
                }
                let info = SymbolInfo { arity, fixity };
                let table = if kind == SymbolKind::Function {
                    &mut self.functions
                } else {
                    &mut self.predicates
                };
                table.insert(name.to_string(), info);
            }
        }
        Ok(())
    }

    pub fn set_pretty(&mut self, name: &str, display: &str) -> Result<(), EnvError> {
        match self.kind_of(name) {
            Some(SymbolKind::Variable) | None => Err(EnvError::Undeclared(name.to_string())),
            Some(_) => {
                self.pretty.insert(name.to_string(), display.to_string());
                Ok(())
            }
        }
    }
}

/// Identifiers are non-empty runs of ASCII letters, digits and underscores.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}
