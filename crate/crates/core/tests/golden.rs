mod common;

use std::time::Instant;

use common::golden_replay;

pub const TH4_ALIASES: &[common::Alias<'static>] = &[(11, "exists x. Elem(z,x)")];

#[test]
fn th4_replays_to_the_listing() {
    let start = Instant::now();
    let s = golden_replay(
        "kelley-morse",
        &["Load(\"Kelley-Morse\")"],
        "th4_log.txt",
        "th4.txt",
        TH4_ALIASES,
    )
    .unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(s.proof.len(), 39);
    assert!(s.proof.lines()[20].qed && s.proof.lines()[37].qed);
}

#[test]
fn th5_replays_to_the_listing() {
    let mut s = golden_replay(
        "kelley-morse",
        &["Load(\"Kelley-Morse\")", "LoadTheorem(\"Th4\")"],
        "th5_log.txt",
        "th5.txt",
        &[],
    )
    .unwrap();
    assert_eq!(s.env.pretty(&s.proof.lines()[27].formula), "(x ∪ x) = x");
    assert!(s.proof.qed(27).unwrap());
}

#[test]
fn excluded_middle_replays_to_the_listing() {
    let s = golden_replay("logic", &["Load(\"logic\")"], "excluded_middle_log.txt", "excluded_middle.txt", &[])
        .unwrap();
    assert_eq!(s.env.pretty(&s.proof.lines()[32].formula), "A v ¬A");
    assert!(s.proof.lines()[32].qed);
    // AbsC enters only through the imported theorem.
    assert!(s.log().iter().all(|inv| inv.rule != "AbsC"));
}

#[test]
fn stored_fixtures_render_as_listed() {
    for (dir, name, listing) in [
        ("category", "TerminalIso", "terminal_iso.txt"),
        ("z2", "ZeroNotOne", "zero_not_one.txt"),
    ] {
        let mut s = common::session(dir, name);
        common::compare_listing(&mut s, listing, &[]).unwrap_or_else(|e| panic!("{name}: {e}"));
        let last = s.proof.len() - 1;
        assert!(s.proof.qed(last).unwrap(), "{name}");
    }
}
