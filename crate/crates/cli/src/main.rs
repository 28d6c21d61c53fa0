use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use ndkernel::environment::ProofEnvironment;
use ndkernel::kernel::check_theory;
use ndkernel::shell::{auto_report, theory_names, verdict_text, CommandResult, Session};
use ndkernel_cli::service;

#[derive(Parser)]
#[command(name = "ndkernel", version, about = "Natural deduction proof kernel")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interactive session reading one command per line.
    Repl {
        /// Theorem file to load at start; its directory becomes the theory.
        #[arg(long)]
        env: Option<PathBuf>,
        /// Theory directory used by Load and Save.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Replay theorems in a theory directory; exits 0 iff every one is Qed.
    Check {
        theory_dir: PathBuf,
        /// Theorem names; all files in the directory when omitted.
        names: Vec<String>,
    },
    /// Search for an intuitionistic sequent proof; exits 0 iff one is found.
    Auto { formula: String },
    /// Run a script of commands, stopping at the first failure.
    Run {
        script: PathBuf,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Serve the JSON session protocol over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn print_result(r: &CommandResult) {
    if let Some(lines) = &r.rendered_proof {
        for l in lines {
            println!("{l}");
        }
    }
    if let Some(m) = &r.message {
        if r.ok {
            println!("{m}");
        } else {
            println!("error: {m}");
        }
    }
}

fn repl(env: Option<PathBuf>, dir: PathBuf) -> anyhow::Result<ExitCode> {
    let mut session = match env {
        Some(file) => {
            let parent = file.parent().map(PathBuf::from).unwrap_or_default();
            let name = file
                .file_stem()
                .and_then(|s| s.to_str())
                .context("bad theorem file name")?
                .to_string();
            let mut s = Session::new(parent);
            s.load(&name)?;
            s
        }
        None => Session::new(dir),
    };
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        write!(out, ">>> ")?;
        out.flush()?;
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if matches!(line, "exit" | "quit") {
            break;
        }
        print_result(&session.dispatch(line));
    }
    Ok(ExitCode::SUCCESS)
}

fn check(dir: PathBuf, names: Vec<String>) -> anyhow::Result<ExitCode> {
    let names = if names.is_empty() {
        theory_names(&dir)?
    } else {
        names
    };
    if names.is_empty() {
        bail!("no theorem files in {}", dir.display());
    }
    let report = check_theory(&dir, &names);
    for (name, verdict) in &report.results {
        println!("{name}: {}", verdict_text(verdict));
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn auto(formula: &str) -> anyhow::Result<ExitCode> {
    let goal = ProofEnvironment::default().parse(formula)?;
    let report = auto_report(&goal)?;
    for l in &report.lines {
        println!("{l}");
    }
    Ok(if report.proved {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(script: PathBuf, dir: PathBuf) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&script)
        .with_context(|| format!("reading {}", script.display()))?;
    let mut session = Session::new(dir);
    match session.run_script(&text) {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err((line, r)) => {
            eprintln!(
                "{}:{line}: {}",
                script.display(),
                r.message.unwrap_or_default()
            );
            Ok(ExitCode::FAILURE)
        }
    }
}

async fn serve(addr: String, dir: PathBuf) -> anyhow::Result<ExitCode> {
    let listener = tokio::net::TcpListener::bind(&addr)
        .await
        .with_context(|| format!("binding {addr}"))?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, service::router(service::AppState::new(dir))).await?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Repl { env, dir } => repl(env, dir),
        Cmd::Check { theory_dir, names } => check(theory_dir, names),
        Cmd::Auto { formula } => auto(&formula),
        Cmd::Run { script, dir } => run(script, dir),
        Cmd::Serve { addr, dir } => tokio::runtime::Runtime::new()
            .map_err(anyhow::Error::from)
            .and_then(|rt| rt.block_on(serve(addr, dir))),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
