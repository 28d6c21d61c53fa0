//! Proof environments: the signature plus axioms, assumed theorems, defining
//! equations and predicate definitions that a proof may cite.

pub mod file;
pub mod signature;

use std::collections::BTreeSet;

pub use file::{TheoremFile, FORMAT};
pub use signature::{Fixity, Signature, SymbolInfo, SymbolKind};

use crate::syntax::{self, ascii, pretty, Formula, SyntaxError, Term};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnvError {
    #[error("'{0}' is not a valid identifier")]
    BadName(String),
    #[error("'{name}' is already declared as a {kind}")]
    Duplicate { name: String, kind: SymbolKind },
    #[error("'{0}' must have arity at least 1")]
    BadArity(String),
    #[error("infix symbol '{0}' must have arity 2")]
    InfixArity(String),
    #[error("'{0}' is not declared")]
    Undeclared(String),
    #[error("'{0}' is not a declared predicate")]
    NotAPredicate(String),
    #[error("'{name}' has arity {expected} but {found} parameter(s) were given")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("parameters must be distinct variable names")]
    BadParameters,
    #[error("free variable(s) {0:?} not among the parameters")]
    FreeVariableLeak(Vec<String>),
    #[error("predicate '{0}' is already defined")]
    AlreadyDefined(String),
    #[error("a defining equation must have the form c = t or f(x1,...,xn) = t")]
    MalformedHead,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("no theorem file '{0}'")]
    MissingFile(String),
    #[error("cannot access '{path}': {message}")]
    Io { path: String, message: String },
    #[error("invalid theorem file: {0}")]
    Schema(String),
    #[error("unsupported theorem file format '{0}'")]
    Version(String),
    #[error("theorem '{0}' was proved in a different environment")]
    EnvironmentMismatch(String),
    #[error("theorem '{0}' is not proved: its last line is not Qed")]
    NotProved(String),
}

/// `name(params) <-> body`.
#[derive(Clone, Debug, PartialEq)]
pub struct PredicateDefinition {
    pub name: String,
    pub params: Vec<String>,
    pub body: Formula,
}

impl PredicateDefinition {
    /// The body with the parameters replaced by `args`.
    pub fn instantiate(&self, args: &[Term]) -> Formula {
        let s: syntax::Subst = self
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        self.body.subst(&s)
    }

    pub fn head(&self) -> Formula {
        Formula::Pred(
            self.name.clone(),
            self.params.iter().map(|p| Term::var(p)).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofEnvironment {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<Formula>,
    pub theorems: Vec<Formula>,
    pub def_equations: Vec<Formula>,
    pub definitions: Vec<PredicateDefinition>,
    /// Predicate guarding the class rules: `t ε {x: A}` iff `Guard(t) & A[t/x]`.
    pub class_guard: String,
}

impl Default for ProofEnvironment {
    fn default() -> Self {
        let mut env = ProofEnvironment {
            name: String::new(),
            signature: Signature::default(),
            axioms: Vec::new(),
            theorems: Vec::new(),
            def_equations: Vec::new(),
            definitions: Vec::new(),
            class_guard: "Set".to_string(),
        };
        env.declare(SymbolKind::Predicate, "Set", 1, Fixity::Prefix)
            .expect("fresh signature");
        env.new_def("Set", &["x".to_string()], "exists y. Elem(x,y)")
            .expect("built-in definition");
        env
    }
}

impl ProofEnvironment {
    pub fn parse(&self, text: &str) -> Result<Formula, EnvError> {
        Ok(syntax::parse_formula(text, &self.signature)?)
    }

    pub fn parse_term(&self, text: &str) -> Result<Term, EnvError> {
        Ok(syntax::parse_term(text, &self.signature)?)
    }

    pub fn pretty(&self, f: &Formula) -> String {
        pretty(f, &self.signature)
    }

    pub fn declare(
        &mut self,
        kind: SymbolKind,
        name: &str,
        arity: usize,
        fixity: Fixity,
    ) -> Result<(), EnvError> {
        self.signature.declare(kind, name, arity, fixity)
    }

    pub fn definition(&self, name: &str) -> Option<&PredicateDefinition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    pub fn new_def(&mut self, name: &str, params: &[String], body: &str) -> Result<(), EnvError> {
        let info = self
            .signature
            .predicate(name)
            .ok_or_else(|| EnvError::NotAPredicate(name.to_string()))?;
        if info.arity != params.len() {
            return Err(EnvError::ArityMismatch {
                name: name.to_string(),
                expected: info.arity,
                found: params.len(),
            });
        }
        let distinct: BTreeSet<&String> = params.iter().collect();
        if distinct.len() != params.len()
            || params.iter().any(|p| {
                !signature::is_identifier(p)
                    || matches!(
                        self.signature.kind_of(p),
                        Some(SymbolKind::Constant | SymbolKind::Function | SymbolKind::Predicate)
                    )
            })
        {
            return Err(EnvError::BadParameters);
        }
        if self.definition(name).is_some() {
            return Err(EnvError::AlreadyDefined(name.to_string()));
        }
        let body = self.parse(body)?;
        let leak: Vec<String> = body
            .free_vars()
            .into_iter()
            .filter(|v| !params.contains(v))
            .collect();
        if !leak.is_empty() {
            return Err(EnvError::FreeVariableLeak(leak));
        }
        self.definitions.push(PredicateDefinition {
            name: name.to_string(),
            params: params.to_vec(),
            body,
        });
        Ok(())
    }

    /// Appends a defining equation and returns its index.
    pub fn new_def_eq(&mut self, text: &str) -> Result<usize, EnvError> {
        let f = self.parse(text)?;
        let Formula::Eq(lhs, rhs) = &f else {
            return Err(EnvError::MalformedHead);
        };
        let params: Vec<&String> = match lhs {
            Term::Const(_) => Vec::new(),
            Term::App(_, args) => args
                .iter()
                .map(|a| match a {
                    Term::Var(x) => Ok(x),
                    _ => Err(EnvError::MalformedHead),
                })
                .collect::<Result<_, _>>()?,
            _ => return Err(EnvError::MalformedHead),
        };
        let distinct: BTreeSet<&&String> = params.iter().collect();
        if distinct.len() != params.len() {
            return Err(EnvError::MalformedHead);
        }
        let leak: Vec<String> = rhs
            .free_vars()
            .into_iter()
            .filter(|v| !params.contains(&v))
            .collect();
        if !leak.is_empty() {
            return Err(EnvError::FreeVariableLeak(leak));
        }
        self.def_equations.push(f);
        Ok(self.def_equations.len() - 1)
    }

    pub fn add_axiom(&mut self, text: &str) -> Result<usize, EnvError> {
        let f = self.parse(text)?;
        self.axioms.push(f);
        Ok(self.axioms.len() - 1)
    }

    pub fn add_theorem(&mut self, text: &str) -> Result<usize, EnvError> {
        let f = self.parse(text)?;
        self.theorems.push(f);
        Ok(self.theorems.len() - 1)
    }

    pub fn show_axioms(&self) -> Vec<String> {
        self.numbered(&self.axioms)
    }

    pub fn show_theorems(&self) -> Vec<String> {
        self.numbered(&self.theorems)
    }

    pub fn show_def_equations(&self) -> Vec<String> {
        self.numbered(&self.def_equations)
    }

    pub fn show_definitions(&self) -> Vec<String> {
        self.definitions
            .iter()
            .map(|d| self.pretty(&Formula::iff(d.head(), d.body.clone())))
            .collect()
    }

    fn numbered(&self, list: &[Formula]) -> Vec<String> {
        list.iter()
            .enumerate()
            .map(|(i, f)| format!("{i}. {}", self.pretty(f)))
            .collect()
    }

    /// Whether a theorem proved in `other` may be imported here. Assumed
    /// theorems are not compared; everything else must agree up to
    /// alpha-equivalence and ordering.
    pub fn compatible_with(&self, other: &ProofEnvironment) -> bool {
        fn same_set(a: &[Formula], b: &[Formula]) -> bool {
            a.iter().all(|f| b.iter().any(|g| f.alpha_eq(g)))
                && b.iter().all(|g| a.iter().any(|f| f.alpha_eq(g)))
        }
        let defs = |e: &ProofEnvironment| -> Vec<Formula> {
            e.definitions
                .iter()
                .map(|d| Formula::iff(d.head(), d.body.clone()))
                .collect()
        };
        self.signature == other.signature
            && self.class_guard == other.class_guard
            && same_set(&self.axioms, &other.axioms)
            && same_set(&self.def_equations, &other.def_equations)
            && same_set(&defs(self), &defs(other))
    }

    /// Ascii forms, used by persistence.
    pub fn ascii_lists(&self) -> (Vec<String>, Vec<String>, Vec<String>) {
        let a = |v: &[Formula]| v.iter().map(ascii).collect();
        (a(&self.axioms), a(&self.theorems), a(&self.def_equations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_has_set_definition() {
        let env = ProofEnvironment::default();
        assert_eq!(env.definitions.len(), 1);
        assert_eq!(env.show_definitions(), vec!["Set(x) <-> ∃y.(x ε y)"]);
        assert!(matches!(
            env.clone()
                .declare(SymbolKind::Predicate, "Set", 1, Fixity::Prefix),
            Err(EnvError::Duplicate { .. })
        ));
    }

    #[test]
    fn def_equation_heads() {
        let mut env = ProofEnvironment::default();
        env.declare(SymbolKind::Constant, "rus", 0, Fixity::Prefix)
            .unwrap();
        env.declare(SymbolKind::Function, "union", 2, Fixity::Infix)
            .unwrap();
        env.signature.set_pretty("union", "∪").unwrap();
        assert_eq!(env.new_def_eq("rus = extension z. neg Elem(z,z)"), Ok(0));
        assert_eq!(
            env.new_def_eq("union(x,y) = extension z. (Elem(z,x) v Elem(z,y))"),
            Ok(1)
        );
        assert_eq!(
            env.show_def_equations()[1],
            "1. (x ∪ y) = {z: ((z ε x) v (z ε y))}"
        );
        assert_eq!(env.new_def_eq("x = y"), Err(EnvError::MalformedHead));
        assert!(matches!(
            env.new_def_eq("union(x,x) = x"),
            Err(EnvError::MalformedHead)
        ));
    }

    #[test]
    fn definition_leak_rejected() {
        let mut env = ProofEnvironment::default();
        env.declare(SymbolKind::Predicate, "Full", 1, Fixity::Prefix)
            .unwrap();
        assert!(matches!(
            env.new_def("Full", &["x".into()], "Elem(z,x)"),
            Err(EnvError::FreeVariableLeak(_))
        ));
        env.new_def("Full", &["x".into()], "forall y. (Elem(y,x) -> Elem(y,y))")
            .unwrap();
        assert!(matches!(
            env.new_def("Full", &["x".into()], "Elem(x,x)"),
            Err(EnvError::AlreadyDefined(_))
        ));
    }
}
