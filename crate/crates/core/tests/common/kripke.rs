//! Brute-force intuitionistic validity over small Kripke models.
//!
//! A frame is a rooted partial order on at most four worlds, labelled so that
//! `i <= j` in the order implies `i <= j` as numbers (world 0 is the root).
//! Valuations are upward closed. Forcing sets are bitmasks over worlds.

use ndkernel::syntax::Formula;

pub const MAX_WORLDS: usize = 4;

struct Model {
    /// `up[w]`: the worlds at or above `w`.
    up: Vec<u8>,
    full: u8,
    val: Vec<(String, u8)>,
}

fn frames() -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for n in 1..=MAX_WORLDS {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for bits in 0u32..(1 << pairs.len()) {
            let mut lt = vec![vec![false; n]; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                lt[i][j] = bits & (1 << k) != 0;
            }
            let rooted = (1..n).all(|j| lt[0][j]);
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| !(lt[i][j] && lt[j][k]) || lt[i][k]))
            });
            if rooted && transitive {
                out.push(
                    (0..n)
                        .map(|w| {
                            (0..n)
                                .filter(|&v| v == w || lt[w][v])
                                .fold(0u8, |m, v| m | (1 << v))
                        })
                        .collect(),
                );
            }
        }
    }
    out
}

fn upsets(up: &[u8]) -> Vec<u8> {
    let n = up.len();
    (0u8..(1 << n))
        .filter(|&s| (0..n).all(|w| s & (1 << w) == 0 || up[w] & !s == 0))
        .collect()
}

fn atoms(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Sov(a) => {
            if !out.contains(a) {
                out.push(a.clone())
            }
        }
        Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            atoms(a, out);
            atoms(b, out);
        }
        other => panic!("not propositional: {other:?}"),
    }
}

fn force(f: &Formula, m: &Model) -> u8 {
    let imp = |a: u8, b: u8| {
        (0..m.up.len())
            .filter(|&w| m.up[w] & a & !b == 0)
            .fold(0u8, |s, w| s | (1 << w))
    };
    match f {
        Formula::Sov(a) => m.val.iter().find(|(n, _)| n == a).map_or(0, |(_, s)| *s),
        Formula::Bottom => 0,
        Formula::And(a, b) => force(a, m) & force(b, m),
        Formula::Or(a, b) => force(a, m) | force(b, m),
        Formula::Imp(a, b) => imp(force(a, m), force(b, m)),
        Formula::Iff(a, b) => {
            let (x, y) = (force(a, m), force(b, m));
            imp(x, y) & imp(y, x)
        }
        other => panic!("not propositional: {other:?}"),
    }
}

/// True iff `f` is forced at every world of every model with at most
/// `MAX_WORLDS` worlds.
pub fn valid(f: &Formula) -> bool {
    let mut names = Vec::new();
    atoms(f, &mut names);
    for up in frames() {
        let full = ((1u16 << up.len()) - 1) as u8;
        let sets = upsets(&up);
        let mut choice = vec![0usize; names.len()];
        loop {
            let model = Model {
                up: up.clone(),
                full,
                val: names
                    .iter()
                    .zip(&choice)
                    .map(|(n, &i)| (n.clone(), sets[i]))
                    .collect(),
            };
            if force(f, &model) != model.full {
                return false;
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < sets.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    true
}

/// Every formula over `A`, `B` built with `¬`, `&`, `v`, `->` of depth at
/// most `depth`, counting an atom as depth 1.
pub fn corpus(depth: usize) -> Vec<Formula> {
    let atoms = [Formula::sov("A"), Formula::sov("B")];
    let mut level: Vec<Formula> = atoms.to_vec();
    for _ in 1..depth {
        let mut next = atoms.to_vec();
        next.extend(level.iter().cloned().map(Formula::not));
        for a in &level {
            for b in &level {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
                next.push(Formula::imp(a.clone(), b.clone()));
            }
        }
        level = next;
    }
    level
}
