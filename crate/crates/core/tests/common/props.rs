//! Property checks. Each returns the number of cases it ran, or a description
//! of the first counterexample.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ndkernel::environment::{Fixity, ProofEnvironment, SymbolKind};
use ndkernel::kernel::{replay, Arg, Proof, RuleInvocation};
use ndkernel::syntax::{ascii, parse_formula, Formula};

use super::gen::{self, Symbols, VARS};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn kelley_morse() -> ProofEnvironment {
    super::environment("kelley-morse", "Kelley-Morse")
}

/// ASCII rendering parses back to an alpha-equal formula.
pub fn round_trip(cases: u32) -> Result<u32, String> {
    let env = kelley_morse();
    let sym = Symbols::of(&env.signature);
    runner(cases)
        .run(&gen::formula(&sym), |f| {
            let text = ascii(&f);
            let back = parse_formula(&text, &env.signature)
                .map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert!(back.alpha_eq(&f), "{text} parsed as {back:?}");
            let _ = env.pretty(&f);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

/// Free variables after substitution, and vacuous substitution.
pub fn substitution_law(cases: u32) -> Result<u32, String> {
    let env = kelley_morse();
    let sym = Symbols::of(&env.signature);
    let input = (gen::formula(&sym), gen::var(), gen::term(&sym));
    runner(cases)
        .run(&input, |(f, x, t)| {
            let out = f.substitute(&x, &t);
            let fv = f.free_vars();
            if fv.contains(&x) {
                let mut expected: BTreeSet<String> = fv;
                expected.remove(&x);
                expected.extend(t.free_vars());
                prop_assert_eq!(out.free_vars(), expected);
            } else {
                prop_assert!(out.alpha_eq(&f), "vacuous substitution changed {f:?}");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

fn unary_env() -> ProofEnvironment {
    let mut env = ProofEnvironment::default();
    env.declare(SymbolKind::Predicate, "P", 1, Fixity::Prefix)
        .expect("declare P");
    env
}

fn apply(proof: &mut Proof, env: &ProofEnvironment, rule: &str, args: Vec<Arg>) -> Result<usize, String> {
    proof
        .apply(env, &RuleInvocation::new(rule, args))
        .map_err(|e| e.to_string())
}

/// Hypotheses `P(v_i)` are conjoined, some are discharged by ImpInt, then
/// ForallInt generalises `VARS[target]`. It must fail exactly when the
/// variable is free in an undischarged hypothesis.
pub fn forall_int_case(hyps: &[(usize, bool)], target: usize, rename: bool) -> Result<(), String> {
    let env = unary_env();
    let mut p = Proof::new();
    for &(v, _) in hyps {
        apply(&mut p, &env, "Hyp", vec![format!("P({})", VARS[v]).as_str().into()])?;
    }
    let mut cur = 0usize;
    for i in 1..hyps.len() {
        cur = apply(&mut p, &env, "AndInt", vec![cur.into(), i.into()])?;
    }
    for (i, &(_, discharged)) in hyps.iter().enumerate() {
        if discharged {
            cur = apply(&mut p, &env, "ImpInt", vec![cur.into(), i.into()])?;
        }
    }
    let y = VARS[target];
    let live: BTreeSet<&str> = hyps.iter().filter(|h| !h.1).map(|h| VARS[h.0]).collect();
    let expect_ok = !live.contains(y);
    let fresh = if rename { "q" } else { y };
    let got = apply(&mut p, &env, "ForallInt", vec![cur.into(), y.into(), fresh.into()]);
    match (expect_ok, got) {
        (true, Ok(_)) | (false, Err(_)) => Ok(()),
        (true, Err(e)) => Err(format!("{hyps:?} ForallInt {y}: rejected ({e})")),
        (false, Ok(_)) => Err(format!("{hyps:?} ForallInt {y}: accepted a violation")),
    }
}

/// `∃x.(P(x) [& P(w)])`, the instance at `VARS[eigen]` as a hypothesis,
/// further hypotheses `P(g_i)` and a conclusion `P(g_0)` depending on all of
/// them. ExistsElim must fail exactly when the eigenvariable occurs free in
/// the existential, the conclusion or another live hypothesis.
pub fn exists_elim_case(extra: Option<usize>, eigen: usize, gs: &[usize]) -> Result<(), String> {
    let env = unary_env();
    let mut p = Proof::new();
    let y = VARS[eigen];
    let (ex, inst) = match extra {
        Some(w) => (
            format!("exists x. (P(x) & P({}))", VARS[w]),
            format!("(P({y}) & P({}))", VARS[w]),
        ),
        None => ("exists x. P(x)".to_string(), format!("P({y})")),
    };
    let e = apply(&mut p, &env, "Hyp", vec![ex.as_str().into()])?;
    let h = apply(&mut p, &env, "Hyp", vec![inst.as_str().into()])?;
    let first = p.len();
    for &g in gs {
        apply(&mut p, &env, "Hyp", vec![format!("P({})", VARS[g]).as_str().into()])?;
    }
    let mut conj = first;
    for i in first + 1..first + gs.len() {
        conj = apply(&mut p, &env, "AndInt", vec![conj.into(), i.into()])?;
    }
    let t = apply(&mut p, &env, "AndInt", vec![h.into(), conj.into()])?;
    let mut c = apply(&mut p, &env, "AndElimR", vec![t.into()])?;
    for _ in 1..gs.len() {
        c = apply(&mut p, &env, "AndElimL", vec![c.into()])?;
    }
    let mut bad: BTreeSet<&str> = gs.iter().map(|&g| VARS[g]).collect();
    if let Some(w) = extra {
        bad.insert(VARS[w]);
    }
    let expect_ok = !bad.contains(y);
    let got = apply(&mut p, &env, "ExistsElim", vec![e.into(), h.into(), c.into(), y.into()]);
    match (expect_ok, got) {
        (true, Ok(_)) | (false, Err(_)) => Ok(()),
        (true, Err(err)) => Err(format!("{extra:?} {y} {gs:?}: rejected ({err})")),
        (false, Ok(_)) => Err(format!("{extra:?} {y} {gs:?}: accepted a violation")),
    }
}

/// Runs both eigenvariable fuzzers; returns (cases, accepted, rejected) counts.
pub fn eigenvariable_fuzz(cases: u32) -> Result<u32, String> {
    let nv = VARS.len();
    let forall = (
        proptest::collection::vec((0..nv, any::<bool>()), 1..5),
        0..nv,
        any::<bool>(),
    );
    runner(cases)
        .run(&forall, |(hyps, target, rename)| {
            forall_int_case(&hyps, target, rename).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    // "x" is the bound variable of the existential, so the extra free variable avoids it.
    let exists = (
        proptest::option::of(1..nv),
        0..nv,
        proptest::collection::vec(0..nv, 1..4),
    );
    runner(cases)
        .run(&exists, |(extra, eigen, gs)| {
            exists_elim_case(extra, eigen, &gs).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(2 * cases)
}

/// Single-entry mutations of one log entry.
fn mutations(env: &ProofEnvironment, log: &[RuleInvocation], i: usize) -> Vec<(String, Vec<RuleInvocation>)> {
    const SIBLINGS: &[(&str, &str)] = &[
        ("AndElimL", "AndElimR"),
        ("OrIntL", "OrIntR"),
        ("EquivLeft", "EquivRight"),
        ("AxInt", "TheoremInt"),
        ("DefEqInt", "AxInt"),
    ];
    let entry = &log[i];
    let mut out = Vec::new();
    let mut with = |what: String, inv: RuleInvocation| {
        let mut l = log.to_vec();
        l[i] = inv;
        out.push((what, l));
    };
    for (a, b) in SIBLINGS {
        let other = if entry.rule == *a {
            b
        } else if entry.rule == *b {
            a
        } else {
            continue;
        };
        with(
            format!("{i}: rule {} -> {other}", entry.rule),
            RuleInvocation::new(other, entry.args.clone()),
        );
    }
    for (k, arg) in entry.args.iter().enumerate() {
        match arg {
            Arg::Int(n) => {
                for m in [n + 1, n - 1] {
                    if m >= 0 {
                        let mut args = entry.args.clone();
                        args[k] = Arg::Int(m);
                        with(format!("{i}: {entry} arg {k} -> {m}"), RuleInvocation::new(&entry.rule, args));
                    }
                }
            }
            Arg::Str(s) => {
                if let Ok(f) = env.parse(s) {
                    let mut args = entry.args.clone();
                    args[k] = Arg::Str(ascii(&Formula::not(f)));
                    with(format!("{i}: {entry} arg {k} negated"), RuleInvocation::new(&entry.rule, args));
                }
            }
            Arg::List(items) if !items.is_empty() => {
                let mut args = entry.args.clone();
                args[k] = Arg::List(items.iter().map(|a| match a {
                    Arg::Int(n) => Arg::Int(n + 1),
                    other => other.clone(),
                }).collect());
                with(format!("{i}: {entry} positions shifted"), RuleInvocation::new(&entry.rule, args));
            }
            _ => {}
        }
    }
    let mut deleted = log.to_vec();
    deleted.remove(i);
    out.push((format!("{i}: {entry} deleted"), deleted));
    out
}

/// Replays single-entry mutations of every Qed fixture. Each must fail
/// replay or change the conclusion (last formula or its Qed status).
///
/// Deletions are tried everywhere. In-place edits are tried only on entries
/// the conclusion depends on, and an edit that derives the same formula from
/// the same live hypotheses at that line is an equivalent proof, not a
/// mutation (the Th5 log, for one, has two identical hypotheses).
pub fn log_mutations() -> Result<u32, String> {
    let mut count = 0u32;
    for (name, env, log) in super::qed_fixtures() {
        let base = replay(&env, &log).map_err(|e| format!("{name}: {e}"))?;
        assert_eq!(base.qed, Some(true), "{name} is not Qed");
        let end = base.proof.len() - 1;
        let last = base.proof.lines()[end].formula.clone();
        let used = base.proof.dependency_tree(end).expect("last line");
        for i in 0..log.len() {
            for (what, mutated) in mutations(&env, &log, i) {
                if mutated == log {
                    continue;
                }
                let in_place = mutated.len() == log.len();
                if in_place && !used.contains(&i) {
                    continue;
                }
                let Ok(run) = replay(&env, &mutated) else {
                    count += 1;
                    continue;
                };
                if in_place {
                    let line = &run.proof.lines()[i];
                    let same_judgement = line.formula.alpha_eq(&base.proof.lines()[i].formula)
                        && run.proof.hypotheses(i).ok() == base.proof.hypotheses(i).ok();
                    if same_judgement {
                        continue;
                    }
                }
                count += 1;
                let same = run
                    .proof
                    .lines()
                    .last()
                    .is_some_and(|l| l.formula.alpha_eq(&last));
                if same && run.qed == Some(true) {
                    return Err(format!("{name}: mutation {what} still proves the conclusion"));
                }
            }
        }
    }
    Ok(count)
}

/// `auto` against the Kripke oracle: its verdict must agree, and a returned
/// history must empty the initial state.
pub fn check_against_oracle(f: &Formula) -> Result<(), String> {
    let text = ascii(f);
    let verdict = ndkernel::gentzen::auto(f).map_err(|e| format!("{text}: {e}"))?;
    let valid = super::kripke::valid(f);
    match verdict {
        Some(history) => {
            if !valid {
                return Err(format!("{text}: proved but has a Kripke countermodel"));
            }
            let end = ndkernel::gentzen::SequentListState::new(f)
                .and_then(|s| s.replay(&history))
                .map_err(|e| format!("{text}: history does not replay: {e}"))?;
            if !end.is_proved() {
                return Err(format!("{text}: history leaves sequents"));
            }
        }
        None if valid => return Err(format!("{text}: rejected but valid in all small models")),
        None => {}
    }
    Ok(())
}

/// The depth-3 corpus over two atoms plus a fixed sample of depth-4 formulas.
pub fn kripke_agreement(sample: u32) -> Result<usize, String> {
    let mut formulas = super::kripke::corpus(3);
    let mut rng = TestRunner::deterministic();
    let strategy = gen::propositional(4);
    for _ in 0..sample {
        let tree = strategy.new_tree(&mut rng).map_err(|e| e.to_string())?;
        formulas.push(proptest::strategy::ValueTree::current(&tree));
    }
    for f in &formulas {
        check_against_oracle(f)?;
    }
    Ok(formulas.len())
}
