//! The rule table. Each rule checks its premises and side conditions and
//! returns the new line without touching the proof.

use std::collections::BTreeSet;

use super::invocation::{Arg, RuleInvocation};
use super::proof::{Proof, Step};
use super::KernelError;
use crate::environment::{ProofEnvironment, SymbolKind};
use crate::syntax::{
    at_path, find_occurrences_by, replace_paths, select, Expr, ExprRef, Formula, Term,
};

/// Parameter kinds, in the order the rule takes them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Param {
    /// Index of an earlier proof line.
    Line,
    /// Index into an environment list.
    Index,
    Formula,
    Term,
    Variable,
    Symbol,
    Terms,
    Variables,
    Positions,
}

use Param::*;

/// Every rule with its parameter list.
pub const RULES: &[(&str, &[Param])] = &[
    ("Hyp", &[Formula]),
    ("AndInt", &[Line, Line]),
    ("AndElimL", &[Line]),
    ("AndElimR", &[Line]),
    ("ImpInt", &[Line, Line]),
    ("ImpElim", &[Line, Line]),
    ("OrIntL", &[Line, Formula]),
    ("OrIntR", &[Line, Formula]),
    ("OrElim", &[Line, Line, Line, Line, Line]),
    ("ForallInt", &[Line, Variable, Variable]),
    ("ForallElim", &[Line, Term]),
    ("ExistsInt", &[Line, Term, Variable, Positions]),
    ("ExistsElim", &[Line, Line, Line, Variable]),
    ("UniqueElim", &[Line, Variable]),
    ("AbsI", &[Line, Formula]),
    ("AbsC", &[Line, Line]),
    ("ClassElim", &[Line]),
    ("ClassInt", &[Line, Variable]),
    ("Identity", &[Term]),
    ("Symmetry", &[Line]),
    ("EqualitySub", &[Line, Line, Positions]),
    ("PolySub", &[Line, Symbol, Formula]),
    ("PredSub", &[Line, Symbol, Variables, Formula, Positions]),
    ("AxInt", &[Index]),
    ("TheoremInt", &[Index]),
    ("DefEqInt", &[Index]),
    ("DefExp", &[Line, Symbol, Positions]),
    ("DefSub", &[Line, Symbol, Terms, Positions]),
    ("EquivConst", &[Line]),
    ("EquivExp", &[Line]),
    ("EquivJoin", &[Line, Line]),
    ("EquivLeft", &[Line]),
    ("EquivRight", &[Line]),
    ("FreeSub", &[Line, Variable, Term]),
];

pub fn signature(rule: &str) -> Option<&'static [Param]> {
    RULES.iter().find(|(n, _)| *n == rule).map(|(_, p)| *p)
}

/// Typed access to an invocation's arguments.
struct Args<'a> {
    inv: &'a RuleInvocation,
    env: &'a ProofEnvironment,
}

impl<'a> Args<'a> {
    fn bad(&self, message: impl Into<String>) -> KernelError {
        KernelError::BadArgs {
            rule: self.inv.rule.clone(),
            message: message.into(),
        }
    }

    fn int(&self, i: usize) -> Result<usize, KernelError> {
        match self.inv.args.get(i) {
            Some(Arg::Int(n)) if *n >= 0 => Ok(*n as usize),
            _ => Err(self.bad(format!("argument {} must be a non-negative integer", i + 1))),
        }
    }

    fn str(&self, i: usize) -> Result<&'a str, KernelError> {
        match self.inv.args.get(i) {
            Some(Arg::Str(s)) => Ok(s),
            _ => Err(self.bad(format!("argument {} must be a string", i + 1))),
        }
    }

    /// A list of strings; a bare string counts as a one-element list.
    fn strs(&self, i: usize) -> Result<Vec<&'a str>, KernelError> {
        match self.inv.args.get(i) {
            Some(Arg::Str(s)) => Ok(vec![s]),
            Some(Arg::List(items)) => items
                .iter()
                .map(|a| match a {
                    Arg::Str(s) => Ok(s.as_str()),
                    _ => Err(self.bad(format!("argument {} must be a list of strings", i + 1))),
                })
                .collect(),
            _ => Err(self.bad(format!("argument {} must be a list of strings", i + 1))),
        }
    }

    fn positions(&self, i: usize) -> Result<Vec<usize>, KernelError> {
        match self.inv.args.get(i) {
            Some(Arg::List(items)) => items
                .iter()
                .map(|a| match a {
                    Arg::Int(n) if *n >= 0 => Ok(*n as usize),
                    _ => Err(self.bad(format!("argument {} must be a list of positions", i + 1))),
                })
                .collect(),
            _ => Err(self.bad(format!("argument {} must be a list of positions", i + 1))),
        }
    }

    fn formula(&self, i: usize) -> Result<Formula, KernelError> {
        Ok(self.env.parse(self.str(i)?)?)
    }

    fn term(&self, i: usize) -> Result<Term, KernelError> {
        Ok(self.env.parse_term(self.str(i)?)?)
    }

    fn variable(&self, i: usize) -> Result<String, KernelError> {
        let name = self.str(i)?;
        let ok = crate::environment::signature::is_identifier(name)
            && matches!(
                self.env.signature.kind_of(name),
                None | Some(SymbolKind::Variable)
            )
            && !matches!(name, "neg" | "forall" | "exists" | "exists1" | "extension");
        if ok {
            Ok(name.to_string())
        } else {
            Err(self.bad(format!("'{name}' cannot be used as a variable")))
        }
    }
}

fn shape(rule: &str, line: usize, expected: &'static str) -> KernelError {
    KernelError::Shape {
        rule: rule.to_string(),
        line,
        expected,
    }
}

fn mismatch(rule: &str, message: impl Into<String>) -> KernelError {
    KernelError::Mismatch {
        rule: rule.to_string(),
        message: message.into(),
    }
}

fn step(formula: Formula, parents: Vec<usize>) -> Step {
    Step {
        formula,
        parents,
        discharges: Vec::new(),
    }
}

/// Computes the line `inv` would add to `proof`.
pub fn apply(
    proof: &Proof,
    env: &ProofEnvironment,
    inv: &RuleInvocation,
) -> Result<Step, KernelError> {
    let rule = inv.rule.as_str();
    let params = signature(rule).ok_or_else(|| KernelError::UnknownRule(rule.to_string()))?;
    if inv.args.len() != params.len() {
        return Err(KernelError::BadArgs {
            rule: rule.to_string(),
            message: format!("expected {} argument(s), got {}", params.len(), inv.args.len()),
        });
    }
    let a = Args { inv, env };
    let f = |i: usize| -> Result<(usize, &Formula), KernelError> {
        let n = a.int(i)?;
        Ok((n, &proof.line(n)?.formula))
    };
    let hyp = |i: usize| -> Result<(usize, &Formula), KernelError> {
        let (n, formula) = f(i)?;
        if proof.line(n)?.is_hypothesis() {
            Ok((n, formula))
        } else {
            Err(KernelError::NotAHypothesis {
                rule: rule.to_string(),
                line: n,
            })
        }
    };

    match rule {
        "Hyp" => Ok(step(a.formula(0)?, vec![])),
        "AndInt" => {
            let (i, l) = f(0)?;
            let (j, r) = f(1)?;
            Ok(step(Formula::and(l.clone(), r.clone()), vec![i, j]))
        }
        "AndElimL" | "AndElimR" => {
            let (i, x) = f(0)?;
            let Formula::And(l, r) = x else {
                return Err(shape(rule, i, "a conjunction"));
            };
            let out = if rule == "AndElimL" { l } else { r };
            Ok(step((**out).clone(), vec![i]))
        }
        "ImpInt" => {
            let (i, b) = f(0)?;
            let (h, a_) = hyp(1)?;
            Ok(Step {
                formula: Formula::imp(a_.clone(), b.clone()),
                parents: vec![i],
                discharges: vec![h],
            })
        }
        "ImpElim" => {
            let (i, x) = f(0)?;
            let (j, imp) = f(1)?;
            let Formula::Imp(ante, cons) = imp else {
                return Err(shape(rule, j, "an implication"));
            };
            if !ante.alpha_eq(x) {
                return Err(mismatch(
                    rule,
                    format!("line {i} is not the antecedent of line {j}"),
                ));
            }
            Ok(step((**cons).clone(), vec![i, j]))
        }
        "OrIntL" | "OrIntR" => {
            let (i, x) = f(0)?;
            let extra = a.formula(1)?;
            let out = if rule == "OrIntL" {
                Formula::or(extra, x.clone())
            } else {
                Formula::or(x.clone(), extra)
            };
            Ok(step(out, vec![i]))
        }
        "OrElim" => {
            let (o, disj) = f(0)?;
            let Formula::Or(l, r) = disj else {
                return Err(shape(rule, o, "a disjunction"));
            };
            let (hl, fl) = hyp(1)?;
            let (cl, c1) = f(2)?;
            let (hr, fr) = hyp(3)?;
            let (cr, c2) = f(4)?;
            if !fl.alpha_eq(l) {
                return Err(mismatch(rule, format!("hypothesis {hl} is not the left disjunct")));
            }
            if !fr.alpha_eq(r) {
                return Err(mismatch(rule, format!("hypothesis {hr} is not the right disjunct")));
            }
            if !c1.alpha_eq(c2) {
                return Err(mismatch(rule, format!("lines {cl} and {cr} differ")));
            }
            Ok(Step {
                formula: c1.clone(),
                parents: vec![o, hl, cl, hr, cr],
                discharges: vec![hl, hr],
            })
        }
        "ForallInt" => {
            let (i, x) = f(0)?;
            let y = a.variable(1)?;
            let v = a.variable(2)?;
            eigenvariable(proof, i, &y, None)?;
            if v != y && x.free_vars().contains(&v) {
                return Err(KernelError::Capture {
                    rule: rule.to_string(),
                    message: format!("'{v}' already occurs free in line {i}"),
                });
            }
            let body = if v == y {
                x.clone()
            } else {
                x.substitute(&y, &Term::Var(v.clone()))
            };
            Ok(step(Formula::Forall(v, Box::new(body)), vec![i]))
        }
        "ForallElim" => {
            let (i, x) = f(0)?;
            let Formula::Forall(v, body) = x else {
                return Err(shape(rule, i, "a universal formula"));
            };
            let t = a.term(1)?;
            Ok(step(body.substitute(v, &t), vec![i]))
        }
        "ExistsInt" => {
            let (i, x) = f(0)?;
            let t = a.term(1)?;
            let v = a.variable(2)?;
            let positions = a.positions(3)?;
            let occ = find_occurrences_by(ExprRef::Formula(x), |n| n == ExprRef::Term(&t));
            let paths: Vec<_> = select(&occ, &positions)?
                .into_iter()
                .map(|o| o.path.clone())
                .collect();
            let body = replace_paths(x, &paths, &Expr::Term(Term::Var(v.clone())))?;
            if !body.substitute(&v, &t).alpha_eq(x) {
                return Err(KernelError::Capture {
                    rule: rule.to_string(),
                    message: format!("abstracting to '{v}' does not give back line {i}"),
                });
            }
            Ok(step(Formula::Exists(v, Box::new(body)), vec![i]))
        }
        "ExistsElim" => {
            let (e, ex) = f(0)?;
            let Formula::Exists(x, body) = ex else {
                return Err(shape(rule, e, "an existential formula"));
            };
            let (h, inst) = hyp(1)?;
            let (c, con) = f(2)?;
            let y = a.variable(3)?;
            if !body.substitute(x, &Term::Var(y.clone())).alpha_eq(inst) {
                return Err(mismatch(
                    rule,
                    format!("hypothesis {h} is not the instance of line {e} at '{y}'"),
                ));
            }
            if ex.free_vars().contains(&y) {
                return Err(KernelError::Eigenvariable { var: y, line: e });
            }
            if con.free_vars().contains(&y) {
                return Err(KernelError::Eigenvariable { var: y, line: c });
            }
            eigenvariable(proof, c, &y, Some(h))?;
            Ok(Step {
                formula: con.clone(),
                parents: vec![e, h, c],
                discharges: vec![h],
            })
        }
        "UniqueElim" => {
            let (i, x) = f(0)?;
            let Formula::Unique(v, body) = x else {
                return Err(shape(rule, i, "a unique existence formula"));
            };
            let w = a.variable(1)?;
            if w == *v || body.free_vars().contains(&w) {
                return Err(KernelError::Capture {
                    rule: rule.to_string(),
                    message: format!("'{w}' clashes with line {i}"),
                });
            }
            let other = body.substitute(v, &Term::Var(w.clone()));
            let unique = Formula::Forall(
                w.clone(),
                Box::new(Formula::imp(
                    other,
                    Formula::Eq(Term::Var(w), Term::Var(v.clone())),
                )),
            );
            Ok(step(
                Formula::Exists(v.clone(), Box::new(Formula::and((**body).clone(), unique))),
                vec![i],
            ))
        }
        "AbsI" => {
            let (i, x) = f(0)?;
            if *x != Formula::Bottom {
                return Err(shape(rule, i, "_|_"));
            }
            Ok(step(a.formula(1)?, vec![i]))
        }
        "AbsC" => {
            let (h, neg) = hyp(0)?;
            let (b, bot) = f(1)?;
            let Some(target) = neg.negated() else {
                return Err(shape(rule, h, "a negation"));
            };
            if *bot != Formula::Bottom {
                return Err(shape(rule, b, "_|_"));
            }
            Ok(Step {
                formula: target.clone(),
                parents: vec![b],
                discharges: vec![h],
            })
        }
        "ClassElim" => {
            let (i, x) = f(0)?;
            let Formula::Mem(t, class) = x else {
                return Err(shape(rule, i, "a membership in an extension"));
            };
            let Term::Ext(v, body) = class else {
                return Err(shape(rule, i, "a membership in an extension"));
            };
            let guard = Formula::Pred(env.class_guard.clone(), vec![t.clone()]);
            Ok(step(Formula::and(guard, body.substitute(v, t)), vec![i]))
        }
        "ClassInt" => {
            let (i, x) = f(0)?;
            let v = a.variable(1)?;
            let t = match x {
                Formula::And(g, _) => match &**g {
                    Formula::Pred(p, args) if *p == env.class_guard && args.len() == 1 => &args[0],
                    _ => return Err(shape(rule, i, "a guarded conjunction")),
                },
                _ => return Err(shape(rule, i, "a guarded conjunction")),
            };
            let Formula::And(_, b) = x else { unreachable!() };
            let blocked: BTreeSet<String> = t.free_vars().into_iter().chain([v.clone()]).collect();
            let paths: Vec<_> = find_occurrences_by(ExprRef::Formula(b), |n| n == ExprRef::Term(t))
                .into_iter()
                .filter(|o| !o.bound.iter().any(|w| blocked.contains(w)))
                .map(|o| o.path)
                .collect();
            let body = replace_paths(b, &paths, &Expr::Term(Term::Var(v.clone())))?;
            if !body.substitute(&v, t).alpha_eq(b) {
                return Err(KernelError::Capture {
                    rule: rule.to_string(),
                    message: format!("'{v}' already occurs in line {i}"),
                });
            }
            Ok(step(
                Formula::Mem(t.clone(), Term::Ext(v, Box::new(body))),
                vec![i],
            ))
        }
        "Identity" => {
            let t = a.term(0)?;
            Ok(step(Formula::Eq(t.clone(), t), vec![]))
        }
        "Symmetry" => {
            let (i, x) = f(0)?;
            let Formula::Eq(l, r) = x else {
                return Err(shape(rule, i, "an equation"));
            };
            Ok(step(Formula::Eq(r.clone(), l.clone()), vec![i]))
        }
        "EqualitySub" => {
            let (i, x) = f(0)?;
            let (j, eq) = f(1)?;
            let Formula::Eq(t, s) = eq else {
                return Err(shape(rule, j, "an equation"));
            };
            let positions = a.positions(2)?;
            let occ = find_occurrences_by(ExprRef::Formula(x), |n| n == ExprRef::Term(t));
            let chosen = select(&occ, &positions)?;
            let fv: BTreeSet<String> = t.free_vars().into_iter().chain(s.free_vars()).collect();
            for o in &chosen {
                if let Some(w) = o.bound.iter().find(|w| fv.contains(*w)) {
                    return Err(KernelError::Capture {
                        rule: rule.to_string(),
                        message: format!("'{w}' is bound at the selected occurrence"),
                    });
                }
            }
            let paths: Vec<_> = chosen.into_iter().map(|o| o.path.clone()).collect();
            let out = replace_paths(x, &paths, &Expr::Term(s.clone()))?;
            Ok(step(out, vec![i, j]))
        }
        "PolySub" => {
            let (i, x) = f(0)?;
            let name = a.str(1)?;
            let with = a.formula(2)?;
            for h in proof.hypotheses(i)? {
                if proof.line(h)?.formula.second_order_vars().contains(name) {
                    return Err(KernelError::SecondOrderInHypothesis {
                        name: name.to_string(),
                        line: h,
                    });
                }
            }
            let out = x.subst_sov(name, &with).map_err(|w| KernelError::Capture {
                rule: rule.to_string(),
                message: format!("a free variable of the substituted formula would be bound by '{w}'"),
            })?;
            Ok(step(out, vec![i]))
        }
        "PredSub" => {
            let (i, x) = f(0)?;
            let name = a.str(1)?;
            if env.definition(name).is_some() {
                return Err(KernelError::PredicateDefined);
            }
            let arity = match env.signature.predicate(name) {
                Some(info) if name != crate::environment::signature::EQUALS
                    && name != crate::environment::signature::ELEM =>
                {
                    info.arity
                }
                _ => return Err(a.bad(format!("'{name}' is not a substitutable predicate"))),
            };
            let params: Vec<String> = a.strs(2)?.into_iter().map(String::from).collect();
            if params.len() != arity
                || params.iter().collect::<BTreeSet<_>>().len() != params.len()
            {
                return Err(a.bad(format!("'{name}' needs {arity} distinct parameter(s)")));
            }
            let with = a.formula(3)?;
            let positions = a.positions(4)?;
            for h in proof.hypotheses(i)? {
                if proof.line(h)?.formula.predicates().contains(name) {
                    return Err(KernelError::PredicateInHypothesis {
                        name: name.to_string(),
                        line: h,
                    });
                }
            }
            let occ = find_occurrences_by(ExprRef::Formula(x), |n| {
                matches!(n, ExprRef::Formula(Formula::Pred(p, _)) if p == name)
            });
            let wanted: BTreeSet<usize> = positions.iter().copied().collect();
            select(&occ, &positions)?;
            if wanted.len() != occ.len() {
                return Err(mismatch(
                    rule,
                    format!("all {} occurrence(s) of '{name}' must be substituted", occ.len()),
                ));
            }
            let extra: BTreeSet<String> = with
                .free_vars()
                .into_iter()
                .filter(|v| !params.contains(v))
                .collect();
            for o in &occ {
                if let Some(w) = o.bound.iter().find(|w| extra.contains(*w)) {
                    return Err(KernelError::Capture {
                        rule: rule.to_string(),
                        message: format!("'{w}' would be captured"),
                    });
                }
            }
            let out = expand_atoms(x, &occ.iter().map(|o| o.path.clone()).collect::<Vec<_>>(), |args| {
                let s = params.iter().cloned().zip(args.iter().cloned()).collect();
                with.subst(&s)
            })?;
            Ok(step(out, vec![i]))
        }
        "AxInt" | "TheoremInt" | "DefEqInt" => {
            let n = a.int(0)?;
            let (list, what) = match rule {
                "AxInt" => (&env.axioms, "axiom"),
                "TheoremInt" => (&env.theorems, "theorem"),
                _ => (&env.def_equations, "defining equation"),
            };
            let out = list.get(n).ok_or(KernelError::EntryOutOfRange {
                list: what,
                index: n,
                len: list.len(),
            })?;
            Ok(step(out.clone(), vec![]))
        }
        "DefExp" => {
            let (i, x) = f(0)?;
            let name = a.str(1)?;
            let def = env
                .definition(name)
                .ok_or_else(|| KernelError::NotDefined(name.to_string()))?;
            let positions = a.positions(2)?;
            let occ = find_occurrences_by(ExprRef::Formula(x), |n| {
                matches!(n, ExprRef::Formula(Formula::Pred(p, _)) if p == name)
            });
            let paths: Vec<_> = select(&occ, &positions)?
                .into_iter()
                .map(|o| o.path.clone())
                .collect();
            let out = expand_atoms(x, &paths, |args| def.instantiate(args))?;
            Ok(step(out, vec![i]))
        }
        "DefSub" => {
            let (i, x) = f(0)?;
            let name = a.str(1)?;
            let def = env
                .definition(name)
                .ok_or_else(|| KernelError::NotDefined(name.to_string()))?;
            let args = a
                .strs(2)?
                .into_iter()
                .map(|s| env.parse_term(s))
                .collect::<Result<Vec<_>, _>>()?;
            if args.len() != def.params.len() {
                return Err(a.bad(format!("'{name}' takes {} argument(s)", def.params.len())));
            }
            let positions = a.positions(3)?;
            let target = def.instantiate(&args);
            let occ = find_occurrences_by(ExprRef::Formula(x), |n| {
                n.alpha_eq(ExprRef::Formula(&target))
            });
            let paths: Vec<_> = select(&occ, &positions)?
                .into_iter()
                .map(|o| o.path.clone())
                .collect();
            let out = replace_paths(x, &paths, &Expr::Formula(Formula::Pred(name.to_string(), args)))?;
            Ok(step(out, vec![i]))
        }
        "EquivConst" => {
            let (i, x) = f(0)?;
            let conv = || shape(rule, i, "a conjunction of converse implications");
            let Formula::And(l, r) = x else { return Err(conv()) };
            let (Formula::Imp(a1, b1), Formula::Imp(b2, a2)) = (&**l, &**r) else {
                return Err(conv());
            };
            if !a1.alpha_eq(a2) || !b1.alpha_eq(b2) {
                return Err(conv());
            }
            Ok(step(Formula::iff((**a1).clone(), (**b1).clone()), vec![i]))
        }
        "EquivExp" => {
            let (i, x) = f(0)?;
            let Formula::Iff(l, r) = x else {
                return Err(shape(rule, i, "an equivalence"));
            };
            Ok(step(
                Formula::and(
                    Formula::imp((**l).clone(), (**r).clone()),
                    Formula::imp((**r).clone(), (**l).clone()),
                ),
                vec![i],
            ))
        }
        "EquivLeft" | "EquivRight" => {
            let i = a.int(0)?;
            let elim = if rule == "EquivLeft" { "AndElimL" } else { "AndElimR" };
            let mut scratch = proof.clone();
            let n = scratch.apply(env, &RuleInvocation::new("EquivExp", vec![i.into()]))?;
            let n = scratch.apply(env, &RuleInvocation::new(elim, vec![n.into()]))?;
            Ok(step(scratch.line(n)?.formula.clone(), vec![i]))
        }
        "EquivJoin" => {
            let i = a.int(0)?;
            let j = a.int(1)?;
            let mut scratch = proof.clone();
            let n = scratch.apply(env, &RuleInvocation::new("AndInt", vec![i.into(), j.into()]))?;
            let n = scratch.apply(env, &RuleInvocation::new("EquivConst", vec![n.into()]))?;
            Ok(step(scratch.line(n)?.formula.clone(), vec![i, j]))
        }
        "FreeSub" => {
            let i = a.int(0)?;
            let y = a.variable(1)?;
            a.term(2)?;
            let mut scratch = proof.clone();
            let n = scratch.apply(
                env,
                &RuleInvocation::new("ForallInt", vec![i.into(), y.as_str().into(), y.as_str().into()]),
            )?;
            let n = scratch.apply(
                env,
                &RuleInvocation::new("ForallElim", vec![n.into(), inv.args[2].clone()]),
            )?;
            Ok(step(scratch.line(n)?.formula.clone(), vec![i]))
        }
        _ => Err(KernelError::UnknownRule(rule.to_string())),
    }
}

/// Rejects `var` if it is free in a live hypothesis of line `n` other than `except`.
fn eigenvariable(
    proof: &Proof,
    n: usize,
    var: &str,
    except: Option<usize>,
) -> Result<(), KernelError> {
    for h in proof.hypotheses(n)? {
        if Some(h) != except && proof.line(h)?.formula.free_vars().contains(var) {
            return Err(KernelError::Eigenvariable {
                var: var.to_string(),
                line: h,
            });
        }
    }
    Ok(())
}

/// Replaces the predicate atoms at `paths` by `expand(args)`. Deeper atoms are
/// rewritten first so that enclosing atoms see their rewritten arguments.
fn expand_atoms(
    f: &Formula,
    paths: &[Vec<usize>],
    expand: impl Fn(&[Term]) -> Formula,
) -> Result<Formula, KernelError> {
    let mut ordered = paths.to_vec();
    ordered.sort();
    ordered.dedup();
    let mut out = f.clone();
    for path in ordered.iter().rev() {
        let Some(ExprRef::Formula(Formula::Pred(_, args))) = at_path(ExprRef::Formula(&out), path)
        else {
            unreachable!("paths come from an occurrence search on the same formula")
        };
        let replacement = expand(args);
        out = replace_paths(&out, std::slice::from_ref(path), &Expr::Formula(replacement))?;
    }
    Ok(out)
}
