//! Occurrence search and positional replacement of subexpressions.
//!
//! Occurrences are enumerated in preorder (leftmost-outermost first); a
//! position list selects occurrences by their zero-based rank in that order.

use std::collections::BTreeSet;

use super::ast::{Expr, ExprRef, Formula, Term};
use super::SyntaxError;

/// Child indices from the root down to a subexpression.
pub type Path = Vec<usize>;

/// An occurrence together with the variables bound above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub path: Path,
    pub bound: Vec<String>,
}

/// Preorder paths of every subexpression syntactically equal to `target`.
pub fn find_occurrences(expr: ExprRef<'_>, target: ExprRef<'_>) -> Vec<Path> {
    find_occurrences_by(expr, |node| node == target)
        .into_iter()
        .map(|o| o.path)
        .collect()
}

/// Preorder occurrences of every subexpression accepted by `matches`.
pub fn find_occurrences_by(
    expr: ExprRef<'_>,
    mut matches: impl FnMut(ExprRef<'_>) -> bool,
) -> Vec<Occurrence> {
    let mut out = Vec::new();
    expr.walk(&mut |node, path, bound| {
        if matches(node) {
            out.push(Occurrence {
                path: path.to_vec(),
                bound: bound.to_vec(),
            });
        }
    });
    out
}

/// Picks the occurrences named by `positions`, rejecting out-of-range indices.
pub fn select<'o>(
    occurrences: &'o [Occurrence],
    positions: &[usize],
) -> Result<Vec<&'o Occurrence>, SyntaxError> {
    positions
        .iter()
        .map(|&i| {
            occurrences.get(i).ok_or(SyntaxError::PositionOutOfRange {
                index: i,
                count: occurrences.len(),
            })
        })
        .collect()
}

/// Replaces the occurrences of `target` selected by `positions` with `replacement`.
pub fn replace_at(
    expr: &Formula,
    target: &Expr,
    replacement: &Expr,
    positions: &[usize],
) -> Result<Formula, SyntaxError> {
    if target.is_term() != replacement.is_term() {
        return Err(SyntaxError::CategoryMismatch);
    }
    let occurrences = find_occurrences_by(ExprRef::Formula(expr), |n| n == target.as_ref());
    let paths: Vec<Path> = select(&occurrences, positions)?
        .into_iter()
        .map(|o| o.path.clone())
        .collect();
    replace_paths(expr, &paths, replacement)
}

/// The subexpression at `path`, if the path exists.
pub fn at_path<'a>(expr: ExprRef<'a>, path: &[usize]) -> Option<ExprRef<'a>> {
    let mut node = expr;
    for &i in path {
        node = node.children().0.into_iter().nth(i)?;
    }
    Some(node)
}

/// Rebuilds `expr` with the subexpressions at `paths` replaced.
pub fn replace_paths(
    expr: &Formula,
    paths: &[Path],
    replacement: &Expr,
) -> Result<Formula, SyntaxError> {
    let set: BTreeSet<&[usize]> = paths.iter().map(|p| p.as_slice()).collect();
    match rebuild(ExprRef::Formula(expr), &mut Vec::new(), &set, replacement)? {
        Expr::Formula(f) => Ok(f),
        Expr::Term(_) => Err(SyntaxError::CategoryMismatch),
    }
}

fn rebuild(
    node: ExprRef<'_>,
    path: &mut Vec<usize>,
    targets: &BTreeSet<&[usize]>,
    replacement: &Expr,
) -> Result<Expr, SyntaxError> {
    if targets.contains(path.as_slice()) {
        if node.is_term() != replacement.is_term() {
            return Err(SyntaxError::CategoryMismatch);
        }
        return Ok(replacement.clone());
    }
    if !targets.iter().any(|t| t.starts_with(path)) {
        return Ok(node.to_owned());
    }
    let (children, _) = node.children();
    let mut rebuilt = Vec::with_capacity(children.len());
    for (i, child) in children.into_iter().enumerate() {
        path.push(i);
        let r = rebuild(child, path, targets, replacement);
        path.pop();
        rebuilt.push(r?);
    }
    Ok(with_children(node, rebuilt))
}

fn term(e: Expr) -> Term {
    match e {
        Expr::Term(t) => t,
        Expr::Formula(_) => unreachable!("category checked before rebuild"),
    }
}

fn formula(e: Expr) -> Box<Formula> {
    match e {
        Expr::Formula(f) => Box::new(f),
        Expr::Term(_) => unreachable!("category checked before rebuild"),
    }
}

fn with_children(node: ExprRef<'_>, children: Vec<Expr>) -> Expr {
    let mut it = children.into_iter();
    let mut next = || it.next().expect("child count preserved");
    match node {
        ExprRef::Term(t) => Expr::Term(match t {
            Term::Const(_) | Term::Var(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|_| term(next())).collect()),
            Term::Ext(x, _) => Term::Ext(x.clone(), formula(next())),
        }),
        ExprRef::Formula(f) => Expr::Formula(match f {
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|_| term(next())).collect())
            }
            Formula::Eq(..) => Formula::Eq(term(next()), term(next())),
            Formula::Mem(..) => Formula::Mem(term(next()), term(next())),
            Formula::Sov(_) | Formula::Bottom => f.clone(),
            Formula::And(..) => Formula::And(formula(next()), formula(next())),
            Formula::Or(..) => Formula::Or(formula(next()), formula(next())),
            Formula::Imp(..) => Formula::Imp(formula(next()), formula(next())),
            Formula::Iff(..) => Formula::Iff(formula(next()), formula(next())),
            Formula::Forall(x, _) => Formula::Forall(x.clone(), formula(next())),
            Formula::Exists(x, _) => Formula::Exists(x.clone(), formula(next())),
            Formula::Unique(x, _) => Formula::Unique(x.clone(), formula(next())),
        }),
    }
}
