use std::fs;
use std::path::Path;

use clap::ValueEnum;
use elim_core::io::{parse_dimacs, parse_fo, ParseErrorKind};
use elim_core::Problem;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Fo,
}

pub enum Input {
    Problem(Problem),
    /// A DIMACS file with an empty clause, refuted without parsing further.
    EmptyClause { line: usize },
}

fn infer(path: &Path) -> Result<Format, Failure> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("cnf") => Ok(Format::Dimacs),
        Some("p") => Ok(Format::Fo),
        _ => Err(Failure::usage(format!(
            "{}: cannot infer the format from the extension; pass --format",
            path.display()
        ))),
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, format: Option<Format>) -> Result<Input, Failure> {
    let format = match format {
        Some(f) => f,
        None => infer(path)?,
    };
    let text = read(path)?;
    let parsed = match format {
        Format::Dimacs => parse_dimacs(&text),
        Format::Fo => parse_fo(&text),
    };
    match parsed {
        Ok(mut problem) => {
            problem.source = path.display().to_string();
            Ok(Input::Problem(problem))
        }
        Err(e) if format == Format::Dimacs && e.kind == ParseErrorKind::EmptyClause => {
            Ok(Input::EmptyClause { line: e.line })
        }
        Err(e) => Err(Failure::usage(format!(
            "{}:{}: {}",
            path.display(),
            e.line,
            e.kind
        ))),
    }
}

/// Like [`load`], for commands that need the clauses themselves.
pub fn load_problem(path: &Path, format: Option<Format>) -> Result<Problem, Failure> {
    match load(path, format)? {
        Input::Problem(p) => Ok(p),
        Input::EmptyClause { line } => Err(Failure::usage(format!(
            "{}:{line}: empty clause",
            path.display()
        ))),
    }
}
