//! The command layer shared by the REPL, batch scripts and the session
//! service. Commands use call notation, e.g. `ImpElim(3,4)`.

mod command;

pub use command::{parse_command, Command};

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::environment::{
    file::theorem_path, EnvError, Fixity, ProofEnvironment, SymbolKind, TheoremFile,
};
use crate::gentzen::{self, GentzenError};
use crate::kernel::{self, check, Arg, KernelError, Proof, RuleInvocation};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ShellError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown command '{0}'")]
    UnknownCommand(String),
    #[error("{command}: {message}")]
    Arguments { command: String, message: String },
    #[error("line {line} depends on hypotheses {hypotheses:?}")]
    NotQed { line: usize, hypotheses: Vec<usize> },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Gentzen(#[from] GentzenError),
    #[error("{0}")]
    Replay(String),
}

/// Outcome of one command. A failed command leaves the session unchanged.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CommandResult {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rendered_proof: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranscriptEntry {
    pub command: String,
    pub ok: bool,
}

/// What a successful command produced.
struct Output {
    message: Option<String>,
    show_proof: bool,
}

impl Output {
    fn changed(message: impl Into<String>) -> Self {
        Output {
            message: Some(message.into()),
            show_proof: true,
        }
    }

    fn text(lines: Vec<String>) -> Self {
        Output {
            message: Some(lines.join("\n")),
            show_proof: false,
        }
    }
}

/// An environment, the proof under construction and the theory directory
/// that Load/Save resolve names against.
#[derive(Clone, Debug)]
pub struct Session {
    pub env: ProofEnvironment,
    pub proof: Proof,
    pub theory_dir: PathBuf,
    pub transcript: Vec<TranscriptEntry>,
}

impl Session {
    pub fn new(theory_dir: impl Into<PathBuf>) -> Self {
        Session {
            env: ProofEnvironment::default(),
            proof: Proof::new(),
            theory_dir: theory_dir.into(),
            transcript: Vec::new(),
        }
    }

    pub fn rendered_proof(&self) -> Vec<String> {
        self.proof.render(&self.env)
    }

    pub fn log(&self) -> Vec<RuleInvocation> {
        self.proof.log()
    }

    /// Parses and runs one line of call notation.
    pub fn dispatch(&mut self, line: &str) -> CommandResult {
        match parse_command(line) {
            Ok(cmd) => self.execute(&cmd),
            Err(e) => {
                self.transcript.push(TranscriptEntry {
                    command: line.trim().to_string(),
                    ok: false,
                });
                failure(e)
            }
        }
    }

    /// Runs a parsed command. State is restored if the command fails.
    pub fn execute(&mut self, cmd: &Command) -> CommandResult {
        let env = self.env.clone();
        let proof = self.proof.clone();
        let result = self.run(cmd);
        self.transcript.push(TranscriptEntry {
            command: cmd.to_string(),
            ok: result.is_ok(),
        });
        match result {
            Ok(out) => CommandResult {
                ok: true,
                rendered_proof: out.show_proof.then(|| self.rendered_proof()),
                message: out.message,
            },
            Err(e) => {
                self.env = env;
                self.proof = proof;
                failure(e)
            }
        }
    }

    /// Runs each non-blank line that is not a `#` comment, stopping at the
    /// first failure. Returns the index of the failing line with its result.
    pub fn run_script(&mut self, script: &str) -> Result<(), (usize, CommandResult)> {
        for (i, line) in script.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let r = self.dispatch(line);
            if !r.ok {
                return Err((i + 1, r));
            }
        }
        Ok(())
    }

    fn run(&mut self, cmd: &Command) -> Result<Output, ShellError> {
        let a = Args { cmd };
        if kernel::rules::signature(&cmd.name).is_some() {
            let inv = RuleInvocation::new(&cmd.name, cmd.args.clone());
            let n = self.proof.apply(&self.env, &inv)?;
            return Ok(Output::changed(self.proof.render_line(n, &self.env)?));
        }
        match cmd.name.as_str() {
            "Qed" => {
                a.count(1)?;
                let n = a.index(0)?;
                if self.proof.qed(n)? {
                    Ok(Output::changed("Qed"))
                } else {
                    Err(ShellError::NotQed {
                        line: n,
                        hypotheses: self.proof.hypotheses(n)?.into_iter().collect(),
                    })
                }
            }
            "Undo" => {
                a.count(0)?;
                self.proof.undo()?;
                Ok(Output::changed("True"))
            }
            "GenerateProof" => {
                a.count(0)?;
                self.regenerate()?;
                Ok(Output::changed("True"))
            }
            "ShowProof" => {
                a.count(0)?;
                Ok(Output {
                    message: None,
                    show_proof: true,
                })
            }
            "ShowLog" => {
                a.count(0)?;
                Ok(Output::text(self.proof.render_log()))
            }
            "ShowAxioms" => {
                a.count(0)?;
                Ok(Output::text(self.env.show_axioms()))
            }
            "ShowTheorems" => {
                a.count(0)?;
                Ok(Output::text(self.env.show_theorems()))
            }
            "ShowDefEquations" => {
                a.count(0)?;
                Ok(Output::text(self.env.show_def_equations()))
            }
            "ShowDefinitions" => {
                a.count(0)?;
                Ok(Output::text(self.env.show_definitions()))
            }
            "Hypotheses" => {
                a.count(1)?;
                let hyps = self.proof.hypotheses(a.index(0)?)?;
                let lines = hyps
                    .into_iter()
                    .map(|h| self.proof.render_line(h, &self.env))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Output::text(lines))
            }
            "UsedTheorems" => {
                a.count(0)?;
                let used = kernel::used_theorems(&self.proof.log());
                let lines = used
                    .into_iter()
                    .map(|i| match self.env.theorems.get(i) {
                        Some(f) => format!("{i}. {}", self.env.pretty(f)),
                        None => format!("{i}. (missing)"),
                    })
                    .collect();
                Ok(Output::text(lines))
            }
            "Load" => {
                a.count(1)?;
                self.load(a.str(0)?)?;
                Ok(Output::changed("True"))
            }
            "Save" => {
                a.count(1)?;
                self.save(a.str(0)?)?;
                Ok(Output {
                    message: Some("True".into()),
                    show_proof: false,
                })
            }
            "ViewTheorem" => {
                a.count(1)?;
                Ok(Output::text(vec![self.view_theorem(a.str(0)?)?]))
            }
            "ViewTheory" => {
                a.count(0)?;
                let mut lines = Vec::new();
                for name in theory_names(&self.theory_dir)? {
                    let view = self.view_theorem(&name)?;
                    lines.push(format!("{name}: {view}"));
                }
                Ok(Output::text(lines))
            }
            "LoadTheorem" => {
                a.count(1)?;
                let i = self.load_theorem(a.str(0)?)?;
                Ok(Output::changed(format!(
                    "{i}. {}",
                    self.env.pretty(&self.env.theorems[i])
                )))
            }
            "CheckTheory" => {
                let names = match cmd.args.len() {
                    0 => theory_names(&self.theory_dir)?,
                    1 => a.strs(0)?,
                    _ => return Err(a.error("expected at most one list of names")),
                };
                let report = check::check_theory(&self.theory_dir, &names);
                let lines = report
                    .results
                    .iter()
                    .map(|(n, v)| format!("{n}: {}", verdict_text(v)))
                    .collect();
                if report.passed {
                    Ok(Output::text(lines))
                } else {
                    Err(ShellError::Replay(lines.join("\n")))
                }
            }
            "AddPredicate" | "AddFunction" => {
                a.count(3)?;
                let kind = if cmd.name == "AddPredicate" {
                    SymbolKind::Predicate
                } else {
                    SymbolKind::Function
                };
                let fixity = if a.bool(2)? {
                    Fixity::Prefix
                } else {
                    Fixity::Infix
                };
                self.env.declare(kind, a.str(0)?, a.index(1)?, fixity)?;
                Ok(Output::changed("True"))
            }
            "AddConstants" | "AddVariables" => {
                a.count(1)?;
                let kind = if cmd.name == "AddConstants" {
                    SymbolKind::Constant
                } else {
                    SymbolKind::Variable
                };
                for name in a.strs(0)? {
                    self.env.declare(kind, &name, 0, Fixity::Prefix)?;
                }
                Ok(Output::changed("True"))
            }
            "SetPretty" => {
                a.count(2)?;
                self.env.signature.set_pretty(a.str(0)?, a.str(1)?)?;
                Ok(Output::changed("True"))
            }
            "SetClassGuard" => {
                a.count(1)?;
                let guard = a.str(0)?;
                match self.env.signature.predicate(guard) {
                    Some(info) if info.arity == 1 => {}
                    _ => return Err(EnvError::NotAPredicate(guard.to_string()).into()),
                }
                self.env.class_guard = guard.to_string();
                Ok(Output::changed("True"))
            }
            "SetName" => {
                a.count(1)?;
                self.env.name = a.str(0)?.to_string();
                Ok(Output::changed("True"))
            }
            "NewDef" => {
                a.count(3)?;
                self.env.new_def(a.str(0)?, &a.strs(1)?, a.str(2)?)?;
                Ok(Output::changed("True"))
            }
            "NewDefEq" => {
                a.count(1)?;
                let i = self.env.new_def_eq(a.str(0)?)?;
                Ok(Output::changed(format!("{i}")))
            }
            "NewAx" => {
                a.count(1)?;
                let i = self.env.add_axiom(a.str(0)?)?;
                Ok(Output::changed(format!("{i}")))
            }
            "AddTheorem" => {
                a.count(1)?;
                let i = self.env.add_theorem(a.str(0)?)?;
                Ok(Output::changed(format!("{i}")))
            }
            "Auto" => {
                a.count(1)?;
                let goal = self.env.parse(a.str(0)?)?;
                Ok(Output::text(auto_report(&goal)?.lines))
            }
            _ => Err(ShellError::UnknownCommand(cmd.name.clone())),
        }
    }

    /// Clears the proof and rebuilds it from its own log.
    fn regenerate(&mut self) -> Result<(), ShellError> {
        let log = self.proof.log();
        let marks = self.proof.qed_lines();
        self.proof = rebuild(&self.env, &log, &marks)?;
        Ok(())
    }

    /// Replaces the environment and proof with those stored under `name`.
    pub fn load(&mut self, name: &str) -> Result<(), ShellError> {
        let file = TheoremFile::read(&theorem_path(&self.theory_dir, name)?)?;
        let env = file.environment()?;
        self.proof = rebuild(&env, &file.log, &file.qed)?;
        self.env = env;
        Ok(())
    }

    pub fn save(&self, name: &str) -> Result<(), ShellError> {
        let file = self.theorem_file(name);
        file.write(&theorem_path(&self.theory_dir, name)?)?;
        Ok(())
    }

    /// The session as a theorem file; the conclusion is the last line.
    pub fn theorem_file(&self, name: &str) -> TheoremFile {
        let conclusion = self.proof.lines().last().map(|l| &l.formula);
        TheoremFile::new(
            name,
            &self.env,
            self.proof.log(),
            conclusion,
            self.proof.qed_lines(),
        )
    }

    fn view_theorem(&self, name: &str) -> Result<String, ShellError> {
        let file = TheoremFile::read(&theorem_path(&self.theory_dir, name)?)?;
        let env = file.environment()?;
        Ok(match &file.conclusion {
            Some(c) => env.pretty(&env.parse(c)?),
            None => "(no proof)".to_string(),
        })
    }

    /// Verifies a saved theorem and appends its conclusion to the assumed
    /// theorems. The file must have been proved in a compatible environment.
    pub fn load_theorem(&mut self, name: &str) -> Result<usize, ShellError> {
        let file = TheoremFile::read(&theorem_path(&self.theory_dir, name)?)?;
        let env = file.environment()?;
        if !self.env.compatible_with(&env) {
            return Err(EnvError::EnvironmentMismatch(name.to_string()).into());
        }
        let verdict = check::verify_file(&file);
        let conclusion = match (&file.conclusion, verdict.passed()) {
            (Some(c), true) => env.parse(c)?,
            _ => return Err(EnvError::NotProved(name.to_string()).into()),
        };
        self.env.theorems.push(conclusion);
        Ok(self.env.theorems.len() - 1)
    }
}

fn failure(e: ShellError) -> CommandResult {
    CommandResult {
        ok: false,
        rendered_proof: None,
        message: Some(e.to_string()),
    }
}

fn rebuild(
    env: &ProofEnvironment,
    log: &[RuleInvocation],
    marks: &[usize],
) -> Result<Proof, ShellError> {
    let mut proof = kernel::replay(env, log)
        .map_err(|e| ShellError::Replay(e.to_string()))?
        .proof;
    for &n in marks {
        if !proof.qed(n)? {
            return Err(ShellError::NotQed {
                line: n,
                hypotheses: proof.hypotheses(n)?.into_iter().collect(),
            });
        }
    }
    Ok(proof)
}

/// Names of the theorem files in a theory directory, sorted.
pub fn theory_names(dir: &Path) -> Result<Vec<String>, ShellError> {
    let entries = std::fs::read_dir(dir).map_err(|e| EnvError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut names: Vec<String> = entries
        .filter_map(Result::ok)
        .filter_map(|e| {
            let path = e.path();
            (path.extension()? == "json")
                .then(|| path.file_stem()?.to_str().map(str::to_string))
                .flatten()
        })
        .collect();
    names.sort();
    Ok(names)
}

pub fn verdict_text(v: &check::Verdict) -> String {
    use check::Verdict::*;
    match v {
        Qed => "Qed".into(),
        EnvironmentOnly => "environment (no proof)".into(),
        NotQed => "not Qed".into(),
        Failed { entry, message } => format!("log entry {entry} failed: {message}"),
        QedMarkFailed { line } => format!("line {line} is marked Qed but has live hypotheses"),
        ConclusionMismatch => "conclusion differs from the stored one".into(),
        LoadError { message } => message.clone(),
    }
}

/// A search result in printable form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AutoReport {
    pub proved: bool,
    pub history: Vec<String>,
    pub proof: Vec<String>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

/// Runs the sequent prover and formats the history and reconstruction.
pub fn auto_report(goal: &crate::syntax::Formula) -> Result<AutoReport, ShellError> {
    let Some(history) = gentzen::auto(goal)? else {
        return Ok(AutoReport {
            proved: false,
            history: vec![],
            proof: vec![],
            lines: vec!["No proof.".into()],
        });
    };
    let proof: Vec<String> = gentzen::reconstruct(goal, &history)?
        .iter()
        .enumerate()
        .map(|(i, l)| format!("{i}. {l}"))
        .collect();
    let history: Vec<String> = history.iter().map(ToString::to_string).collect();
    let mut lines: Vec<String> = history
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{}. {s}", i + 1))
        .collect();
    lines.push(String::new());
    lines.extend(proof.iter().cloned());
    Ok(AutoReport {
        proved: true,
        history,
        proof,
        lines,
    })
}

struct Args<'a> {
    cmd: &'a Command,
}

impl<'a> Args<'a> {
    fn error(&self, message: impl Into<String>) -> ShellError {
        ShellError::Arguments {
            command: self.cmd.name.clone(),
            message: message.into(),
        }
    }

    fn count(&self, n: usize) -> Result<(), ShellError> {
        if self.cmd.args.len() == n {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {n} argument(s), found {}",
                self.cmd.args.len()
            )))
        }
    }

    fn index(&self, i: usize) -> Result<usize, ShellError> {
        match self.cmd.args.get(i) {
            Some(Arg::Int(n)) if *n >= 0 => Ok(*n as usize),
            _ => Err(self.error(format!("argument {i} must be a non-negative integer"))),
        }
    }

    fn str(&self, i: usize) -> Result<&'a str, ShellError> {
        match self.cmd.args.get(i) {
            Some(Arg::Str(s)) => Ok(s),
            _ => Err(self.error(format!("argument {i} must be a string"))),
        }
    }

    fn bool(&self, i: usize) -> Result<bool, ShellError> {
        match self.cmd.args.get(i) {
            Some(Arg::Bool(b)) => Ok(*b),
            _ => Err(self.error(format!("argument {i} must be True or False"))),
        }
    }

    fn strs(&self, i: usize) -> Result<Vec<String>, ShellError> {
        match self.cmd.args.get(i) {
            Some(Arg::Str(s)) => Ok(vec![s.clone()]),
            Some(Arg::List(items)) => items
                .iter()
                .map(|a| match a {
                    Arg::Str(s) => Ok(s.clone()),
                    _ => Err(self.error(format!("argument {i} must be a list of strings"))),
                })
                .collect(),
            _ => Err(self.error(format!("argument {i} must be a list of strings"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_command_leaves_state() {
        let mut s = Session::new(".");
        assert!(s.dispatch(r#"Hyp("(A & B)")"#).ok);
        let before = s.rendered_proof();
        for bad in [r#"Hyp("Elem(z")"#, "AndElimL(7)", "Frobnicate(1)", "Qed(0)"] {
            let r = s.dispatch(bad);
            assert!(!r.ok, "{bad}");
            assert!(r.message.is_some());
            assert_eq!(s.rendered_proof(), before);
        }
        assert_eq!(s.dispatch("Frobnicate(1)").message.unwrap(), "unknown command 'Frobnicate'");
    }

    #[test]
    fn rules_echo_proof() {
        let mut s = Session::new(".");
        s.dispatch(r#"Hyp("(A & B)")"#);
        let r = s.dispatch("AndElimR(0)");
        assert_eq!(
            r.rendered_proof.unwrap(),
            vec!["0. A & B Hyp", "1. B AndElimR 0"]
        );
        assert!(s.dispatch("ImpInt(1,0)").ok);
        assert!(s.dispatch("Qed(2)").ok);
        assert_eq!(s.rendered_proof()[2], "2. (A & B) -> B ImpInt 1 Qed");
        assert_eq!(s.dispatch("ShowLog()").message.unwrap().lines().count(), 3);
        assert!(s.dispatch("Undo()").ok);
        assert_eq!(s.proof.len(), 2);
    }

    #[test]
    fn declarations() {
        let mut s = Session::new(".");
        assert!(s.dispatch(r#"AddPredicate("Foo",1,True)"#).ok);
        assert!(s.dispatch(r#"Hyp("Foo(x)")"#).ok);
        assert!(!s.dispatch(r#"AddPredicate("Set",1,True)"#).ok);
        assert!(s.dispatch(r#"AddConstants(["rus"])"#).ok);
        assert!(s.dispatch(r#"NewDefEq("rus = extension z. neg Elem(z,z)")"#).ok);
        assert!(!s.dispatch(r#"NewDefEq("x = y")"#).ok);
        let r = s.dispatch("ShowDefEquations()");
        assert_eq!(r.message.unwrap(), "0. rus = {z: ¬(z ε z)}");
    }

    #[test]
    fn auto_command() {
        let mut s = Session::new(".");
        let r = s.dispatch(r#"Auto("(A -> A)")"#);
        assert_eq!(
            r.message.unwrap(),
            "1. rimp(0)\n2. ax(0,0)\n\n0. A => A Ax0\n1. => A -> A Rimp 0"
        );
    }
}
