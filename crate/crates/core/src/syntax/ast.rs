use std::collections::BTreeSet;

/// First-order terms. Extensions `{x: A}` are terms that bind `x` in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var(String),
    App(String, Vec<Term>),
    Ext(String, Box<Formula>),
}

/// Formulas. Negation is not a node of its own: `¬A` is `A -> _|_`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Mem(Term, Term),
    /// Second-order (propositional) variable.
    Sov(String),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// Unique existence `∃¹x.A`, eliminated by `UniqueElim`.
    Unique(String, Box<Formula>),
}

/// A term or a formula; the unit that occurrence search and replacement work on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Term(Term),
    Formula(Formula),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprRef<'a> {
    Term(&'a Term),
    Formula(&'a Formula),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }
}

impl Formula {
    pub fn sov(name: &str) -> Formula {
        Formula::Sov(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::imp(f, Formula::Bottom)
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(body))
    }

    /// Returns `A` when `self` is `A -> _|_`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    /// Names of second-order variables occurring anywhere, including inside extensions.
    pub fn second_order_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        ExprRef::Formula(self).walk(&mut |node, _, _| {
            if let ExprRef::Formula(Formula::Sov(name)) = node {
                out.insert(name.clone());
            }
        });
        out
    }

    /// Names of predicate symbols applied anywhere in the formula.
    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        ExprRef::Formula(self).walk(&mut |node, _, _| {
            if let ExprRef::Formula(Formula::Pred(name, _)) = node {
                out.insert(name.clone());
            }
        });
        out
    }

    /// True when the only atoms are second-order variables and `_|_`.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Sov(_) | Formula::Bottom => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            _ => false,
        }
    }
}

impl Expr {
    pub fn as_ref(&self) -> ExprRef<'_> {
        match self {
            Expr::Term(t) => ExprRef::Term(t),
            Expr::Formula(f) => ExprRef::Formula(f),
        }
    }

    pub fn is_term(&self) -> bool {
        matches!(self, Expr::Term(_))
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::Term(t)
    }
}

impl From<Formula> for Expr {
    fn from(f: Formula) -> Self {
        Expr::Formula(f)
    }
}

/// Callback for [`ExprRef::walk`]: node, path from the root, enclosing binders.
pub type Visitor<'a, 'f> = dyn FnMut(ExprRef<'a>, &[usize], &[String]) + 'f;

impl<'a> ExprRef<'a> {
    pub fn to_owned(self) -> Expr {
        match self {
            ExprRef::Term(t) => Expr::Term(t.clone()),
            ExprRef::Formula(f) => Expr::Formula(f.clone()),
        }
    }

    pub fn is_term(self) -> bool {
        matches!(self, ExprRef::Term(_))
    }

    /// Immediate subexpressions in left-to-right order, plus the variable bound
    /// by this node (if any), which scopes over every child.
    pub fn children(self) -> (Vec<ExprRef<'a>>, Option<&'a str>) {
        match self {
            ExprRef::Term(t) => match t {
                Term::Const(_) | Term::Var(_) => (vec![], None),
                Term::App(_, args) => (args.iter().map(ExprRef::Term).collect(), None),
                Term::Ext(x, body) => (vec![ExprRef::Formula(body)], Some(x)),
            },
            ExprRef::Formula(f) => match f {
                Formula::Pred(_, args) => (args.iter().map(ExprRef::Term).collect(), None),
                Formula::Eq(l, r) | Formula::Mem(l, r) => {
                    (vec![ExprRef::Term(l), ExprRef::Term(r)], None)
                }
                Formula::Sov(_) | Formula::Bottom => (vec![], None),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Imp(a, b)
                | Formula::Iff(a, b) => (vec![ExprRef::Formula(a), ExprRef::Formula(b)], None),
                Formula::Forall(x, body) | Formula::Exists(x, body) | Formula::Unique(x, body) => {
                    (vec![ExprRef::Formula(body)], Some(x))
                }
            },
        }
    }

    /// Preorder traversal. The callback receives each node, its path from the
    /// root, and the variables bound by enclosing binders (outermost first).
    pub fn walk(self, f: &mut Visitor<'a, '_>) {
        fn go<'a>(
            node: ExprRef<'a>,
            path: &mut Vec<usize>,
            bound: &mut Vec<String>,
            f: &mut Visitor<'a, '_>,
        ) {
            f(node, path, bound);
            let (children, binder) = node.children();
            if let Some(x) = binder {
                bound.push(x.to_string());
            }
            for (i, child) in children.into_iter().enumerate() {
                path.push(i);
                go(child, path, bound, f);
                path.pop();
            }
            if binder.is_some() {
                bound.pop();
            }
        }
        go(self, &mut Vec::new(), &mut Vec::new(), f);
    }

    /// Number of nodes in the tree.
    pub fn size(self) -> usize {
        let mut n = 0;
        self.walk(&mut |_, _, _| n += 1);
        n
    }
}
