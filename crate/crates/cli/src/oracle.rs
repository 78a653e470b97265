use std::path::PathBuf;

use elim_core::io::write_dimacs;
use elim_core::oracle::{ground, GroundingSpec, OracleError, DEFAULT_MAX_VARS};
use elim_core::{Oracle, Satisfiability};

use crate::input::{self, Format, Input};
use crate::{Failure, NO};

#[derive(clap::Args)]
pub struct Args {
    problem: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Print a minimally unsatisfiable subset by clause index.
    #[arg(long)]
    minimize: bool,
    /// Ground a first-order problem up to this term depth and print it as
    /// DIMACS.
    #[arg(long)]
    ground_depth: Option<usize>,
    /// Constants of the Herbrand universe, replacing those of the problem.
    #[arg(long, value_delimiter = ',')]
    constants: Vec<String>,
    /// Largest number of atoms the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
    max_vars: usize,
}

fn oracle_error(e: OracleError) -> Failure {
    Failure::usage(e.to_string())
}

pub fn run(args: Args) -> Result<u8, Failure> {
    let problem = match input::load(&args.problem, args.format)? {
        Input::Problem(p) => p,
        Input::EmptyClause { .. } => {
            println!("UNSAT");
            return Ok(0);
        }
    };
    let oracle = Oracle::new(args.max_vars);

    if let Some(depth) = args.ground_depth {
        let mut spec = GroundingSpec::for_clauses(&problem.clauses, depth);
        if !args.constants.is_empty() {
            spec.constants = args.constants.iter().map(|c| c.as_str().into()).collect();
        }
        let grounding = ground(&problem.clauses, &spec).map_err(oracle_error)?;
        print!("{}", write_dimacs(&grounding.clauses));
        return Ok(0);
    }
    if !problem.clauses.is_ground() {
        return Err(Failure::usage(
            "first-order input needs --ground-depth".to_string(),
        ));
    }

    match oracle.satisfiable(&problem.clauses).map_err(oracle_error)? {
        Satisfiability::Sat(model) => {
            println!("SAT");
            println!("model: {model}");
            Ok(NO)
        }
        Satisfiability::Unsat => {
            println!("UNSAT");
            if args.minimize {
                let core = oracle
                    .minimal_unsat_subset(&problem.clauses)
                    .map_err(oracle_error)?;
                let indices: Vec<String> = core.indices.iter().map(usize::to_string).collect();
                println!("core: {}", indices.join(" "));
            }
            Ok(0)
        }
    }
}
