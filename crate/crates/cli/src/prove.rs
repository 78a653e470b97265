use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use elim_core::io::write_trace;
use elim_core::search::SearchStats;
use elim_core::{prove, DerivationTrace, LemmaPolicy, LemmaReuse, SearchConfig, SearchOutcome};

use crate::input::{self, Format, Input};
use crate::{Failure, NO};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lemmas {
    Off,
    Record,
    Use,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Reuse {
    Path,
    Global,
}

#[derive(clap::Args)]
pub struct Args {
    /// Problem file: `.cnf` is read as DIMACS, `.p` as first-order clauses.
    problem: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest number of extensions per derivation.
    #[arg(long, default_value_t = 12)]
    depth_max: usize,
    #[arg(long, value_enum, default_value = "record")]
    lemmas: Lemmas,
    /// Longest lemma kept as an extension clause under `--lemmas use`.
    #[arg(long, default_value_t = 2)]
    lemma_max_len: usize,
    /// Whether `--lemmas use` may reuse lemmas from abandoned branches.
    #[arg(long, value_enum, default_value = "path")]
    lemma_reuse: Reuse,
    /// Skip goals identical to one of their ancestors.
    #[arg(long)]
    prune_identical_ancestor: bool,
    /// Write the derivation here when one is found.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Only start from this clause (0-based).
    #[arg(long)]
    start_clause: Option<usize>,
    /// Budget on applied inferences.
    #[arg(long, default_value_t = 10_000_000)]
    steps: u64,
    /// Reserved; the search is deterministic.
    #[arg(long)]
    #[allow(dead_code)]
    seed: Option<u64>,
}

fn stats_line(trace: Option<&DerivationTrace>, stats: &SearchStats) -> String {
    let (e, r, m, l) = match trace {
        Some(t) => (
            t.count("ext") as u64,
            t.count("red") as u64,
            t.count("rem") as u64,
            t.lemmas().count() as u64,
        ),
        None => (
            stats.extensions,
            stats.reductions,
            stats.removals,
            stats.lemmas_emitted,
        ),
    };
    format!(
        "stats: extensions={e} reductions={r} removals={m} lemmas={l} steps={} depth={} iterations={}",
        stats.steps, stats.depth, stats.iterations
    )
}

pub fn run(args: Args) -> Result<u8, Failure> {
    let problem = match input::load(&args.problem, args.format)? {
        Input::Problem(p) => p,
        Input::EmptyClause { line } => {
            println!("UNSAT");
            println!("stats: extensions=0 reductions=0 removals=0 lemmas=0 steps=0 depth=0 iterations=0");
            eprintln!(
                "note: {}:{line} is an empty clause; no trace is written",
                args.problem.display()
            );
            return Ok(0);
        }
    };
    if problem.clauses.is_empty() {
        return Err(Failure::usage(format!("{}: no clauses", args.problem.display())));
    }
    if let Some(i) = args.start_clause.filter(|&i| i >= problem.clauses.len()) {
        return Err(Failure::usage(format!(
            "--start-clause {i} is out of range ({} clauses)",
            problem.clauses.len()
        )));
    }
    let config = SearchConfig {
        depth_max: args.depth_max,
        lemma_policy: match args.lemmas {
            Lemmas::Off => LemmaPolicy::Off,
            Lemmas::Record => LemmaPolicy::Record,
            Lemmas::Use => LemmaPolicy::Use,
        },
        lemma_max_len: args.lemma_max_len,
        lemma_reuse: match args.lemma_reuse {
            Reuse::Path => LemmaReuse::Path,
            Reuse::Global => LemmaReuse::Global,
        },
        prune_identical_ancestor: args.prune_identical_ancestor,
        start_clause: args.start_clause,
        step_limit: args.steps,
        ..SearchConfig::default()
    };
    match prove(&problem.clauses, &config) {
        SearchOutcome::Proof {
            trace,
            lemmas,
            stats,
        } => {
            println!("UNSAT");
            println!("{}", stats_line(Some(&trace), &stats));
            for lemma in &lemmas {
                println!("lemma {lemma}");
            }
            if let Some(path) = &args.trace {
                fs::write(path, write_trace(&trace))
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        SearchOutcome::Exhausted { depth, stats } => {
            println!("UNKNOWN depth={depth}");
            println!("{}", stats_line(None, &stats));
            Ok(NO)
        }
        SearchOutcome::BudgetExceeded { stats } => {
            println!("UNKNOWN steps={}", args.steps);
            println!("{}", stats_line(None, &stats));
            Ok(NO)
        }
    }
}
