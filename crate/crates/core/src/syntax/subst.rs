//! Free variables, alpha-equivalence and capture-avoiding substitution.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Expr, ExprRef, Formula, Term};

/// Simultaneous substitution of terms for first-order variables.
pub type Subst = BTreeMap<String, Term>;

impl Term {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        free_term(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable name occurring in the term, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_names(ExprRef::Term(self), &mut out);
        out
    }

    pub fn subst(&self, s: &Subst) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => s.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(s)).collect()),
            Term::Ext(x, body) => {
                let (x, body) = subst_binder(x, body, s);
                Term::Ext(x, Box::new(body))
            }
        }
    }

    pub fn substitute(&self, var: &str, t: &Term) -> Term {
        self.subst(&Subst::from([(var.to_string(), t.clone())]))
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_term(self, other, &mut Vec::new())
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        free_formula(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_names(ExprRef::Formula(self), &mut out);
        out
    }

    pub fn subst(&self, s: &Subst) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        let bin = |a: &Formula, b: &Formula| (Box::new(a.subst(s)), Box::new(b.subst(s)));
        match self {
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| a.subst(s)).collect())
            }
            Formula::Eq(l, r) => Formula::Eq(l.subst(s), r.subst(s)),
            Formula::Mem(l, r) => Formula::Mem(l.subst(s), r.subst(s)),
            Formula::Sov(_) | Formula::Bottom => self.clone(),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b);
                Formula::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Or(a, b)
            }
            Formula::Imp(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Imp(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Iff(a, b)
            }
            Formula::Forall(x, body) => {
                let (x, body) = subst_binder(x, body, s);
                Formula::Forall(x, Box::new(body))
            }
            Formula::Exists(x, body) => {
                let (x, body) = subst_binder(x, body, s);
                Formula::Exists(x, Box::new(body))
            }
            Formula::Unique(x, body) => {
                let (x, body) = subst_binder(x, body, s);
                Formula::Unique(x, Box::new(body))
            }
        }
    }

    /// `self[t/var]`, renaming bound variables that would capture `FV(t)`.
    pub fn substitute(&self, var: &str, t: &Term) -> Formula {
        self.subst(&Subst::from([(var.to_string(), t.clone())]))
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_formula(self, other, &mut Vec::new())
    }

    /// Replaces every occurrence of the second-order variable `name` by `with`.
    ///
    /// Fails with the offending binder when a free variable of `with` would
    /// be captured by a quantifier or extension enclosing an occurrence.
    pub fn subst_sov(&self, name: &str, with: &Formula) -> Result<Formula, String> {
        let fv = with.free_vars();
        sov_formula(self, name, with, &fv, &mut Vec::new())
    }
}

impl Expr {
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Expr::Term(t) => t.free_vars(),
            Expr::Formula(f) => f.free_vars(),
        }
    }

    pub fn alpha_eq(&self, other: &Expr) -> bool {
        self.as_ref().alpha_eq(other.as_ref())
    }

    pub fn substitute(&self, var: &str, t: &Term) -> Expr {
        match self {
            Expr::Term(x) => Expr::Term(x.substitute(var, t)),
            Expr::Formula(f) => Expr::Formula(f.substitute(var, t)),
        }
    }
}

impl ExprRef<'_> {
    pub fn alpha_eq(self, other: ExprRef<'_>) -> bool {
        match (self, other) {
            (ExprRef::Term(a), ExprRef::Term(b)) => a.alpha_eq(b),
            (ExprRef::Formula(a), ExprRef::Formula(b)) => a.alpha_eq(b),
            _ => false,
        }
    }
}

/// Smallest numeric suffix of `base` that is not in `avoid` (`x0`, `x1`, ...).
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded suffix search")
}

fn subst_binder(x: &str, body: &Formula, s: &Subst) -> (String, Formula) {
    let body_fv = body.free_vars();
    let live: Subst = s
        .iter()
        .filter(|(k, _)| k.as_str() != x && body_fv.contains(k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if live.is_empty() {
        return (x.to_string(), body.clone());
    }
    let incoming: BTreeSet<String> = live.values().flat_map(Term::free_vars).collect();
    if !incoming.contains(x) {
        return (x.to_string(), body.subst(&live));
    }
    let mut avoid = incoming;
    avoid.extend(body.all_vars());
    avoid.extend(live.keys().cloned());
    let fresh = fresh_name(x, &avoid);
    let mut renamed = live;
    renamed.insert(x.to_string(), Term::Var(fresh.clone()));
    let body = body.subst(&renamed);
    (fresh, body)
}

fn free_term(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.iter().any(|b| b == x) {
                out.insert(x.clone());
            }
        }
        Term::Const(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| free_term(a, bound, out)),
        Term::Ext(x, body) => {
            bound.push(x.clone());
            free_formula(body, bound, out);
            bound.pop();
        }
    }
}

fn free_formula(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Pred(_, args) => args.iter().for_each(|a| free_term(a, bound, out)),
        Formula::Eq(l, r) | Formula::Mem(l, r) => {
            free_term(l, bound, out);
            free_term(r, bound, out);
        }
        Formula::Sov(_) | Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            free_formula(a, bound, out);
            free_formula(b, bound, out);
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) | Formula::Unique(x, body) => {
            bound.push(x.clone());
            free_formula(body, bound, out);
            bound.pop();
        }
    }
}

fn collect_names(e: ExprRef<'_>, out: &mut BTreeSet<String>) {
    e.walk(&mut |node, _, _| match node {
        ExprRef::Term(Term::Var(x)) | ExprRef::Term(Term::Ext(x, _)) => {
            out.insert(x.clone());
        }
        ExprRef::Formula(Formula::Forall(x, _))
        | ExprRef::Formula(Formula::Exists(x, _))
        | ExprRef::Formula(Formula::Unique(x, _)) => {
            out.insert(x.clone());
        }
        _ => {}
    });
}

// Bound-variable correspondence: each entry pairs a binder of the left
// expression with the binder at the same depth on the right.
type Pairs = Vec<(String, String)>;

fn var_eq(x: &str, y: &str, env: &Pairs) -> bool {
    let left = env.iter().rposition(|(a, _)| a == x);
    let right = env.iter().rposition(|(_, b)| b == y);
    match (left, right) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, env: &mut Pairs) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => var_eq(x, y, env),
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (Term::Ext(x, p), Term::Ext(y, q)) => under_binder(x, y, p, q, env),
        _ => false,
    }
}

fn under_binder(x: &str, y: &str, p: &Formula, q: &Formula, env: &mut Pairs) -> bool {
    env.push((x.to_string(), y.to_string()));
    let eq = alpha_formula(p, q, env);
    env.pop();
    eq
}

fn alpha_formula(a: &Formula, b: &Formula, env: &mut Pairs) -> bool {
    use Formula::*;
    match (a, b) {
        (Pred(p, xs), Pred(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_term(x, y, env))
        }
        (Eq(l1, r1), Eq(l2, r2)) | (Mem(l1, r1), Mem(l2, r2)) => {
            alpha_term(l1, l2, env) && alpha_term(r1, r2, env)
        }
        (Sov(x), Sov(y)) => x == y,
        (Bottom, Bottom) => true,
        (And(a1, b1), And(a2, b2))
        | (Or(a1, b1), Or(a2, b2))
        | (Imp(a1, b1), Imp(a2, b2))
        | (Iff(a1, b1), Iff(a2, b2)) => alpha_formula(a1, a2, env) && alpha_formula(b1, b2, env),
        (Forall(x, p), Forall(y, q)) | (Exists(x, p), Exists(y, q)) | (Unique(x, p), Unique(y, q)) => {
            under_binder(x, y, p, q, env)
        }
        _ => false,
    }
}

fn sov_term(
    t: &Term,
    name: &str,
    with: &Formula,
    fv: &BTreeSet<String>,
    bound: &mut Vec<String>,
) -> Result<Term, String> {
    Ok(match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter()
                .map(|a| sov_term(a, name, with, fv, bound))
                .collect::<Result<_, _>>()?,
        ),
        Term::Ext(x, body) => {
            bound.push(x.clone());
            let body = sov_formula(body, name, with, fv, bound);
            bound.pop();
            Term::Ext(x.clone(), Box::new(body?))
        }
    })
}

fn sov_formula(
    f: &Formula,
    name: &str,
    with: &Formula,
    fv: &BTreeSet<String>,
    bound: &mut Vec<String>,
) -> Result<Formula, String> {
    let sub = |g: &Formula, bound: &mut Vec<String>| -> Result<Box<Formula>, String> {
        Ok(Box::new(sov_formula(g, name, with, fv, bound)?))
    };
    Ok(match f {
        Formula::Sov(n) if n == name => {
            if let Some(x) = bound.iter().find(|b| fv.contains(b.as_str())) {
                return Err(x.clone());
            }
            with.clone()
        }
        Formula::Sov(_) | Formula::Bottom => f.clone(),
        Formula::Pred(p, args) => Formula::Pred(
            p.clone(),
            args.iter()
                .map(|a| sov_term(a, name, with, fv, bound))
                .collect::<Result<_, _>>()?,
        ),
        Formula::Eq(l, r) => Formula::Eq(
            sov_term(l, name, with, fv, bound)?,
            sov_term(r, name, with, fv, bound)?,
        ),
        Formula::Mem(l, r) => Formula::Mem(
            sov_term(l, name, with, fv, bound)?,
            sov_term(r, name, with, fv, bound)?,
        ),
        Formula::And(a, b) => Formula::And(sub(a, bound)?, sub(b, bound)?),
        Formula::Or(a, b) => Formula::Or(sub(a, bound)?, sub(b, bound)?),
        Formula::Imp(a, b) => Formula::Imp(sub(a, bound)?, sub(b, bound)?),
        Formula::Iff(a, b) => Formula::Iff(sub(a, bound)?, sub(b, bound)?),
        Formula::Forall(x, body) | Formula::Exists(x, body) | Formula::Unique(x, body) => {
            bound.push(x.clone());
            let body = sub(body, bound);
            bound.pop();
            let body = body?;
            match f {
                Formula::Forall(..) => Formula::Forall(x.clone(), body),
                Formula::Exists(..) => Formula::Exists(x.clone(), body),
                _ => Formula::Unique(x.clone(), body),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn mem(a: Term, b: Term) -> Formula {
        Formula::Mem(a, b)
    }

    #[test]
    fn extension_binds_its_variable() {
        let e = Term::Ext("x".into(), Box::new(mem(v("x"), v("y"))));
        assert_eq!(e.free_vars(), BTreeSet::from(["y".to_string()]));
    }

    #[test]
    fn second_order_variables_have_no_free_variables() {
        assert!(Formula::sov("A").free_vars().is_empty());
    }

    #[test]
    fn quantifier_scopes_over_conjunction() {
        // ∀x.((x ε y) & (z ε x))
        let f = Formula::forall("x", Formula::and(mem(v("x"), v("y")), mem(v("z"), v("x"))));
        let fv: Vec<_> = f.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["y", "z"]);
    }

    #[test]
    fn substitution_without_binders() {
        let f = mem(v("x"), v("y"));
        let t = Term::app("union", vec![v("a"), v("b")]);
        assert_eq!(f.substitute("x", &t), mem(t.clone(), v("y")));
    }

    #[test]
    fn substitution_renames_capturing_binder() {
        // (∀y.(x ε y))[y/x] = ∀y0.(y ε y0)
        let f = Formula::forall("y", mem(v("x"), v("y")));
        let out = f.substitute("x", &v("y"));
        assert_eq!(out, Formula::forall("y0", mem(v("y"), v("y0"))));
    }

    #[test]
    fn substitution_leaves_bound_occurrences_alone() {
        let f = Formula::forall("x", mem(v("x"), v("z")));
        assert_eq!(f.substitute("x", &v("w")), f);
        assert_eq!(mem(v("z"), v("x")).substitute("z", &v("w")), mem(v("w"), v("x")));
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let f = mem(v("x"), v("y"));
        let s = Subst::from([("x".to_string(), v("y")), ("y".to_string(), v("x"))]);
        assert_eq!(f.subst(&s), mem(v("y"), v("x")));
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::forall("x", mem(v("x"), v("y")));
        let b = Formula::forall("w", mem(v("w"), v("y")));
        let c = Formula::forall("x", mem(v("x"), v("z")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
        let rus = |x: &str| Term::Ext(x.into(), Box::new(Formula::not(mem(v(x), v(x)))));
        assert!(rus("x").alpha_eq(&rus("z")));
    }

    #[test]
    fn alpha_distinguishes_bound_from_free() {
        // ∀x.(x ε y) vs ∀y.(y ε y)
        let a = Formula::forall("x", mem(v("x"), v("y")));
        let b = Formula::forall("y", mem(v("y"), v("y")));
        assert!(!a.alpha_eq(&b));
        // shadowing: ∀x.∀x.(x ε x) vs ∀x.∀y.(y ε y)
        let c = Formula::forall("x", Formula::forall("x", mem(v("x"), v("x"))));
        let d = Formula::forall("x", Formula::forall("y", mem(v("y"), v("y"))));
        let e = Formula::forall("x", Formula::forall("y", mem(v("x"), v("x"))));
        assert!(c.alpha_eq(&d));
        assert!(!c.alpha_eq(&e));
    }

    #[test]
    fn sov_substitution_rejects_capture() {
        let f = Formula::forall("z", Formula::sov("A"));
        assert_eq!(f.subst_sov("A", &mem(v("z"), v("x"))), Err("z".to_string()));
        let ok = f.subst_sov("A", &mem(v("y"), v("x"))).unwrap();
        assert_eq!(ok, Formula::forall("z", mem(v("y"), v("x"))));
    }

    #[test]
    fn fresh_names_use_numeric_suffix() {
        let avoid = BTreeSet::from(["x".to_string(), "x0".to_string()]);
        assert_eq!(fresh_name("x", &avoid), "x1");
    }
}
