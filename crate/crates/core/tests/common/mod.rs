//! Helpers shared by the integration tests: fixture loading, an independent
//! Kripke-model oracle, random expression strategies and the property checks.
#![allow(dead_code)]

pub mod gen;
pub mod kripke;
pub mod props;

use std::path::PathBuf;

use ndkernel::environment::{ProofEnvironment, TheoremFile};
use ndkernel::kernel::RuleInvocation;
use ndkernel::shell::Session;

pub fn workspace_root() -> PathBuf {
    let here = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    here.ancestors()
        .find(|p| p.join("theories").is_dir())
        .expect("theories directory above the crate")
        .to_path_buf()
}

pub fn theories() -> PathBuf {
    workspace_root().join("theories")
}

pub fn data(name: &str) -> String {
    let path = workspace_root().join("crates/core/tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Non-empty lines of a data file.
pub fn data_lines(name: &str) -> Vec<String> {
    data(name)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

pub fn theorem(dir: &str, name: &str) -> TheoremFile {
    let path = theories().join(dir).join(format!("{name}.json"));
    TheoremFile::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn environment(dir: &str, name: &str) -> ProofEnvironment {
    theorem(dir, name).environment().expect("stored environment is valid")
}

/// The fixtures whose last line is Qed: (theory directory, theorem name).
pub const QED_FIXTURES: &[(&str, &str)] = &[
    ("kelley-morse", "Th4"),
    ("kelley-morse", "Th5"),
    ("kelley-morse", "Log1"),
    ("logic", "ExcludedMiddle"),
    ("category", "TerminalIso"),
    ("z2", "ZeroNotOne"),
];

pub fn qed_fixtures() -> Vec<(String, ProofEnvironment, Vec<RuleInvocation>)> {
    QED_FIXTURES
        .iter()
        .map(|(dir, name)| {
            let file = theorem(dir, name);
            let env = file.environment().expect("stored environment is valid");
            (name.to_string(), env, file.log)
        })
        .collect()
}

/// A session in `dir` with `env_name` loaded.
pub fn session(dir: &str, env_name: &str) -> Session {
    let mut s = Session::new(theories().join(dir));
    let r = s.dispatch(&format!("Load({env_name:?})"));
    assert!(r.ok, "Load({env_name}) failed: {:?}", r.message);
    s
}

/// Splits a listing line `N. formula Rule p1 p2 [Qed]` into its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ListingLine {
    pub index: usize,
    pub formula: String,
    pub rule: String,
    pub parents: Vec<usize>,
    pub qed: bool,
}

pub fn parse_listing_line(line: &str) -> ListingLine {
    let (index, rest) = line
        .split_once(". ")
        .unwrap_or_else(|| panic!("no line number in {line:?}"));
    let mut words: Vec<&str> = rest.split_whitespace().collect();
    let qed = words.last() == Some(&"Qed");
    if qed {
        words.pop();
    }
    let mut parents = Vec::new();
    while let Some(n) = words.last().and_then(|w| w.parse::<usize>().ok()) {
        parents.insert(0, n);
        words.pop();
    }
    let rule = words.pop().expect("rule name").to_string();
    ListingLine {
        index: index.trim().parse().expect("line number"),
        formula: words.join(" "),
        rule,
        parents,
        qed,
    }
}

/// A listing line whose formula is shown with different bound variable
/// names: the ASCII text of the listed formula.
pub type Alias<'a> = (usize, &'a str);

/// Replays a log, one call-notation entry per line, after `setup` commands,
/// then checks the result against a listing and runs Qed where the listing
/// shows it. Returns the session.
pub fn golden_replay(
    dir: &str,
    setup: &[&str],
    log_file: &str,
    listing_file: &str,
    aliases: &[Alias<'_>],
) -> Result<Session, String> {
    let mut s = Session::new(theories().join(dir));
    for cmd in setup {
        let r = s.dispatch(cmd);
        if !r.ok {
            return Err(format!("{cmd}: {:?}", r.message));
        }
    }
    for (i, entry) in data_lines(log_file).iter().enumerate() {
        let r = s.dispatch(entry);
        if !r.ok {
            return Err(format!("log entry {i} {entry}: {}", r.message.unwrap_or_default()));
        }
    }
    compare_listing(&mut s, listing_file, aliases)?;
    Ok(s)
}

/// Checks the session's proof against a listing, running Qed first on each
/// line the listing marks.
pub fn compare_listing(s: &mut Session, listing_file: &str, aliases: &[Alias<'_>]) -> Result<(), String> {
    let expected: Vec<ListingLine> = data_lines(listing_file)
        .iter()
        .map(|l| parse_listing_line(l))
        .collect();
    if s.proof.len() != expected.len() {
        return Err(format!("{} lines, listing has {}", s.proof.len(), expected.len()));
    }
    for want in &expected {
        if want.qed {
            let r = s.dispatch(&format!("Qed({})", want.index));
            if !r.ok {
                return Err(format!("line {} is not Qed: {:?}", want.index, r.message));
            }
        }
    }
    let rendered = s.rendered_proof();
    for (want, line) in expected.iter().zip(&rendered) {
        let got = parse_listing_line(line);
        let n = want.index;
        if got.index != n || got.rule != want.rule {
            return Err(format!("line {n}: got {line:?}, listing {want:?}"));
        }
        // Listings print the Equiv conversions without their premise.
        let unshown = want.parents.is_empty() && want.rule.starts_with("Equiv");
        if got.parents != want.parents && !unshown {
            return Err(format!("line {n}: parents {:?}, listing {:?}", got.parents, want.parents));
        }
        if want.qed && !got.qed {
            return Err(format!("line {n}: Qed missing"));
        }
        if got.formula != want.formula {
            let Some((_, text)) = aliases.iter().find(|(k, _)| *k == n) else {
                return Err(format!("line {n}: {:?} != {:?}", got.formula, want.formula));
            };
            let theirs = s.env.parse(text).map_err(|e| e.to_string())?;
            if s.env.pretty(&theirs) != want.formula {
                return Err(format!("line {n}: alias does not render as the listing"));
            }
            if !theirs.alpha_eq(&s.proof.lines()[n].formula) {
                return Err(format!("line {n}: not alpha-equal to the listing"));
            }
        }
    }
    Ok(())
}
