//! Random terms and formulas over a given signature.

use proptest::prelude::*;
use proptest::sample::select;

use ndkernel::environment::signature::{Signature, ELEM, EQUALS};
use ndkernel::syntax::{Formula, Term};

pub const VARS: &[&str] = &["x", "y", "z", "w", "u"];
pub const SOVS: &[&str] = &["A", "B", "C"];

#[derive(Clone, Debug)]
pub struct Symbols {
    constants: Vec<String>,
    functions: Vec<(String, usize)>,
    predicates: Vec<(String, usize)>,
}

impl Symbols {
    pub fn of(sig: &Signature) -> Self {
        Symbols {
            constants: sig.constants.iter().cloned().collect(),
            functions: sig
                .functions
                .iter()
                .map(|(n, i)| (n.clone(), i.arity))
                .collect(),
            predicates: sig
                .predicates
                .iter()
                .filter(|(n, i)| *n != ELEM && *n != EQUALS && i.arity > 0)
                .map(|(n, i)| (n.clone(), i.arity))
                .collect(),
        }
    }
}

pub fn var() -> impl Strategy<Value = String> {
    select(VARS).prop_map(str::to_string)
}

fn leaf_term(sym: &Symbols) -> BoxedStrategy<Term> {
    let v = var().prop_map(Term::Var);
    if sym.constants.is_empty() {
        v.boxed()
    } else {
        prop_oneof![3 => v, 1 => select(sym.constants.clone()).prop_map(Term::Const)].boxed()
    }
}

/// Terms without extensions.
pub fn plain_term(sym: &Symbols) -> BoxedStrategy<Term> {
    let functions = sym.functions.clone();
    let leaf = leaf_term(sym);
    if functions.is_empty() {
        return leaf;
    }
    leaf.prop_recursive(3, 12, 3, move |inner| {
        select(functions.clone())
            .prop_flat_map(move |(name, arity)| {
                proptest::collection::vec(inner.clone(), arity)
                    .prop_map(move |args| Term::App(name.clone(), args))
            })
            .boxed()
    })
    .boxed()
}

fn atomic(sym: &Symbols, term: BoxedStrategy<Term>) -> BoxedStrategy<Formula> {
    let mut options: Vec<(u32, BoxedStrategy<Formula>)> = vec![
        (2, select(SOVS).prop_map(Formula::sov).boxed()),
        (1, Just(Formula::Bottom).boxed()),
        (
            2,
            (term.clone(), term.clone())
                .prop_map(|(a, b)| Formula::Eq(a, b))
                .boxed(),
        ),
        (
            2,
            (term.clone(), term.clone())
                .prop_map(|(a, b)| Formula::Mem(a, b))
                .boxed(),
        ),
    ];
    if !sym.predicates.is_empty() {
        let preds = sym.predicates.clone();
        options.push((
            3,
            select(preds)
                .prop_flat_map(move |(name, arity)| {
                    proptest::collection::vec(term.clone(), arity)
                        .prop_map(move |args| Formula::Pred(name.clone(), args))
                })
                .boxed(),
        ));
    }
    proptest::strategy::Union::new_weighted(options).boxed()
}

/// Formulas with quantifiers and extensions nested inside terms.
pub fn formula(sym: &Symbols) -> BoxedStrategy<Formula> {
    let sym2 = sym.clone();
    atomic(sym, plain_term(sym))
        .prop_recursive(5, 48, 2, move |inner| {
            let ext = (var(), inner.clone()).prop_map(|(x, f)| Term::Ext(x, Box::new(f)));
            let term_with_ext = prop_oneof![3 => plain_term(&sym2), 1 => ext].boxed();
            let b = |f: fn(Formula, Formula) -> Formula| {
                (inner.clone(), inner.clone()).prop_map(move |(l, r)| f(l, r))
            };
            prop_oneof![
                2 => b(Formula::and),
                2 => b(Formula::or),
                2 => b(Formula::imp),
                1 => b(Formula::iff),
                2 => inner.clone().prop_map(Formula::not),
                2 => (var(), inner.clone()).prop_map(|(x, f)| Formula::Forall(x, Box::new(f))),
                2 => (var(), inner.clone()).prop_map(|(x, f)| Formula::Exists(x, Box::new(f))),
                1 => (var(), inner.clone()).prop_map(|(x, f)| Formula::Unique(x, Box::new(f))),
                1 => atomic(&sym2, term_with_ext),
            ]
        })
        .boxed()
}

/// Terms that may contain extensions.
pub fn term(sym: &Symbols) -> BoxedStrategy<Term> {
    let f = formula(sym);
    prop_oneof![
        4 => plain_term(sym),
        1 => (var(), f).prop_map(|(x, f)| Term::Ext(x, Box::new(f))),
    ]
    .boxed()
}

/// Propositional formulas over `A`, `B` of depth at most `depth`.
pub fn propositional(depth: u32) -> BoxedStrategy<Formula> {
    select(&["A", "B"][..])
        .prop_map(Formula::sov)
        .prop_recursive(depth.saturating_sub(1), 1 << depth, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
            ]
        })
        .boxed()
}
