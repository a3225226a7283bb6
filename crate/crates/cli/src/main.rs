//! `gizatullin`: reports on Gizatullin surfaces from a document file.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use gizatullin_core::document::{parse_document, DocumentError};
use gizatullin_core::report::{run_command, Command, Report};

#[derive(Parser)]
#[command(name = "gizatullin", version, about = "Invariants and automorphism verdicts for Gizatullin surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Document to read; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classification, exceptional components and configuration invariant.
    Analyze,
    /// The divisor of the reversed completion.
    Reverse,
    /// Invariant subsets and the homogeneity verdict.
    Orbits,
    /// Condition (*), the fibration graph and hugeness.
    Autgraph,
    /// Apply the de Jonquières shift by `a` at level `t`.
    Shift {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        level: usize,
    },
    /// Apply the torus element (a, b).
    Torus {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Write dext.dot and, when condition (*) holds, fv.dot.
    Dot {
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn write_files(dir: &Path, report: &Report) -> anyhow::Result<Vec<PathBuf>> {
    let Report::Dot(d) = report else {
        return Ok(Vec::new());
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for (name, content) in &d.files {
        let path = dir.join(name);
        std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let text = match read_input(cli.input.as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let source = cli.input.as_ref().map_or("<stdin>".to_string(), |p| p.display().to_string());
    let doc = match parse_document(&text) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("{source}:{e}");
            return ExitCode::from(match e {
                DocumentError::Syntax(_) => 1,
                DocumentError::Invalid { .. } => 2,
            });
        }
    };
    let (command, out) = match cli.command {
        Cmd::Analyze => (Command::Analyze, None),
        Cmd::Reverse => (Command::Reverse, None),
        Cmd::Orbits => (Command::Orbits, None),
        Cmd::Autgraph => (Command::Autgraph, None),
        Cmd::Shift { a, level } => (Command::Shift { a, level }, None),
        Cmd::Torus { a, b } => (Command::Torus { a, b }, None),
        Cmd::Dot { out } => (Command::Dot, Some(out)),
    };
    let report = match run_command(&command, &doc) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(dir) = out {
        match write_files(&dir, &report) {
            Ok(paths) if !cli.json => {
                for p in paths {
                    println!("wrote {}", p.display());
                }
                return ExitCode::SUCCESS;
            }
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
        }
    }
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::SUCCESS
}
