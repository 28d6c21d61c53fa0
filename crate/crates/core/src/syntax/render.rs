//! Unicode display and ASCII input renderings.
//!
//! The display form is what listings show. The ASCII form is what the parser
//! reads back; it is used for persistence.

use super::ast::{ExprRef, Formula, Term};
use crate::environment::signature::{Fixity, Signature, ELEM};

/// Unicode display of a formula at the top of a line.
pub fn pretty(f: &Formula, sig: &Signature) -> String {
    let mut out = String::new();
    pretty_formula(f, sig, true, &mut out);
    out
}

pub fn pretty_term(t: &Term, sig: &Signature) -> String {
    let mut out = String::new();
    pretty_t(t, sig, &mut out);
    out
}

/// Display of either category.
pub fn pretty_expr(e: ExprRef<'_>, sig: &Signature) -> String {
    match e {
        ExprRef::Term(t) => pretty_term(t, sig),
        ExprRef::Formula(f) => pretty(f, sig),
    }
}

/// ASCII input notation of a formula; parses back to an alpha-equal formula.
pub fn ascii(f: &Formula) -> String {
    let mut out = String::new();
    ascii_formula(f, true, &mut out);
    out
}

pub fn ascii_term(t: &Term) -> String {
    let mut out = String::new();
    ascii_t(t, &mut out);
    out
}

/// Fills `{0}`, `{1}`, ... in one pass so argument text is never rescanned.
fn fill_template(template: &str, args: &[String]) -> String {
    let mut out = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let digits = after.bytes().take_while(u8::is_ascii_digit).count();
        let slot = (digits > 0 && after[digits..].starts_with('}'))
            .then(|| after[..digits].parse::<usize>().ok())
            .flatten()
            .and_then(|i| args.get(i));
        match slot {
            Some(arg) => {
                out.push_str(arg);
                rest = &after[digits + 1..];
            }
            None => {
                out.push('{');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn is_template(s: &str) -> bool {
    s.contains("{0}")
}

/// Renders an application of `name` to already rendered arguments.
fn application(name: &str, fixity: Option<Fixity>, args: &[String], sig: &Signature, top: bool) -> String {
    match sig.pretty(name) {
        Some(p) if is_template(p) => fill_template(p, args),
        shown => {
            let shown = shown.unwrap_or(name);
            if fixity == Some(Fixity::Infix) && args.len() == 2 {
                if top {
                    format!("{} {} {}", args[0], shown, args[1])
                } else {
                    format!("({} {} {})", args[0], shown, args[1])
                }
            } else if args.is_empty() {
                shown.to_string()
            } else {
                format!("{}({})", shown, args.join(","))
            }
        }
    }
}

fn pretty_t(t: &Term, sig: &Signature, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Const(c) => out.push_str(sig.pretty(c).unwrap_or(c)),
        Term::App(f, args) => {
            let args: Vec<String> = args.iter().map(|a| pretty_term(a, sig)).collect();
            let fixity = sig.function(f).map(|i| i.fixity);
            out.push_str(&application(f, fixity, &args, sig, false));
        }
        Term::Ext(x, body) => {
            out.push('{');
            out.push_str(x);
            out.push_str(": ");
            pretty_formula(body, sig, false, out);
            out.push('}');
        }
    }
}

fn pretty_formula(f: &Formula, sig: &Signature, top: bool, out: &mut String) {
    let binary = |op: &str, a: &Formula, b: &Formula, out: &mut String| {
        if !top {
            out.push('(');
        }
        pretty_formula(a, sig, false, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        pretty_formula(b, sig, false, out);
        if !top {
            out.push(')');
        }
    };
    match f {
        Formula::Bottom => out.push_str("_|_"),
        Formula::Sov(a) => out.push_str(a),
        Formula::Pred(p, args) => {
            let args: Vec<String> = args.iter().map(|a| pretty_term(a, sig)).collect();
            let fixity = sig.predicate(p).map(|i| i.fixity);
            out.push_str(&application(p, fixity, &args, sig, top));
        }
        Formula::Mem(l, r) => {
            let args = [pretty_term(l, sig), pretty_term(r, sig)];
            out.push_str(&application(ELEM, Some(Fixity::Infix), &args, sig, top));
        }
        Formula::Eq(l, r) => {
            let (l, r) = (pretty_term(l, sig), pretty_term(r, sig));
            if top {
                out.push_str(&format!("{l} = {r}"));
            } else {
                out.push_str(&format!("({l} = {r})"));
            }
        }
        Formula::Imp(a, b) if **b == Formula::Bottom => {
            out.push('¬');
            pretty_formula(a, sig, false, out);
        }
        Formula::And(a, b) => binary("&", a, b, out),
        Formula::Or(a, b) => binary("v", a, b, out),
        Formula::Imp(a, b) => binary("->", a, b, out),
        Formula::Iff(a, b) => binary("<->", a, b, out),
        Formula::Forall(x, body) | Formula::Exists(x, body) | Formula::Unique(x, body) => {
            out.push_str(match f {
                Formula::Forall(..) => "∀",
                Formula::Exists(..) => "∃",
                _ => "∃¹",
            });
            out.push_str(x);
            out.push('.');
            pretty_formula(body, sig, false, out);
        }
    }
}

fn ascii_t(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) | Term::Const(x) => out.push_str(x),
        Term::App(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                ascii_t(a, out);
            }
            out.push(')');
        }
        Term::Ext(x, body) => {
            out.push_str("extension ");
            out.push_str(x);
            out.push_str(". ");
            // A body ending in a bare name would swallow a following `=`.
            let bare = matches!(
                **body,
                Formula::Sov(_) | Formula::Forall(..) | Formula::Exists(..) | Formula::Unique(..)
            ) || body.negated().is_some();
            if bare {
                out.push('(');
            }
            ascii_formula(body, false, out);
            if bare {
                out.push(')');
            }
        }
    }
}

fn ascii_formula(f: &Formula, top: bool, out: &mut String) {
    let binary = |op: &str, a: &Formula, b: &Formula, out: &mut String| {
        if !top {
            out.push('(');
        }
        ascii_formula(a, false, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        ascii_formula(b, false, out);
        if !top {
            out.push(')');
        }
    };
    match f {
        Formula::Bottom => out.push_str("_|_"),
        Formula::Sov(a) => out.push_str(a),
        Formula::Pred(p, args) => {
            out.push_str(p);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                ascii_t(a, out);
            }
            out.push(')');
        }
        Formula::Mem(l, r) => {
            out.push_str(ELEM);
            out.push('(');
            ascii_t(l, out);
            out.push(',');
            ascii_t(r, out);
            out.push(')');
        }
        Formula::Eq(l, r) => {
            if !top {
                out.push('(');
            }
            ascii_t(l, out);
            out.push_str(" = ");
            ascii_t(r, out);
            if !top {
                out.push(')');
            }
        }
        Formula::Imp(a, b) if **b == Formula::Bottom => {
            out.push_str("neg ");
            ascii_formula(a, false, out);
        }
        Formula::And(a, b) => binary("&", a, b, out),
        Formula::Or(a, b) => binary("v", a, b, out),
        Formula::Imp(a, b) => binary("->", a, b, out),
        Formula::Iff(a, b) => binary("<->", a, b, out),
        Formula::Forall(x, body) | Formula::Exists(x, body) | Formula::Unique(x, body) => {
            out.push_str(match f {
                Formula::Forall(..) => "forall ",
                Formula::Exists(..) => "exists ",
                _ => "exists1 ",
            });
            out.push_str(x);
            out.push_str(". ");
            ascii_formula(body, false, out);
        }
    }
}
