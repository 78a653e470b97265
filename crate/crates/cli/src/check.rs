use std::path::PathBuf;

use elim_core::derivation::CheckError;
use elim_core::io::read_trace;
use elim_core::{
    audit_derived_chain_property, certify_lemma, check_trace, Certification, ClauseSet, Lemma,
    Oracle,
};

use crate::input::{self, Format};
use crate::{Failure, NO};

#[derive(clap::Args)]
pub struct Args {
    problem: PathBuf,
    trace: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Audit the derived-chain property on every chain (ground traces only).
    #[arg(long)]
    audit_invariant: bool,
    /// Certify every lemma the trace emits.
    #[arg(long)]
    certify_lemmas: bool,
    /// Term depth for grounding first-order certifications.
    #[arg(long, default_value_t = 2)]
    ground_depth: usize,
    /// Largest number of atoms in one oracle query.
    #[arg(long, default_value_t = elim_core::oracle::DEFAULT_MAX_VARS)]
    max_vars: usize,
}

fn certify(
    what: &str,
    lemma: &Lemma,
    gamma: &ClauseSet,
    oracle: &Oracle,
    depth: usize,
) -> bool {
    let verdict = match certify_lemma(lemma, gamma, oracle, depth) {
        Ok(Certification::Certified) => "certified".to_string(),
        Ok(Certification::Refuted) => "REFUTED".to_string(),
        Ok(Certification::Unknown) => format!("UNKNOWN at ground depth {depth}"),
        Err(e) => format!("ERROR {e}"),
    };
    println!("{what} `{lemma}`: {verdict}");
    verdict == "certified"
}

pub fn run(args: Args) -> Result<u8, Failure> {
    let problem = input::load_problem(&args.problem, args.format)?;
    let gamma = &problem.clauses;
    let text = input::read(&args.trace)?;
    let trace = read_trace(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.trace.display())))?;
    let report = match check_trace(&trace, gamma) {
        Ok(r) => r,
        Err(e @ CheckError::DigestMismatch { .. }) => return Err(Failure::usage(e.to_string())),
        Err(e) => return Err(Failure::negative(e.to_string())),
    };
    let oracle = Oracle::new(args.max_vars);
    let mut ok = report.verified;

    for v in &report.verdicts {
        let mark = if v.ok { "ok" } else { "FAIL" };
        let note = if v.note.is_empty() {
            String::new()
        } else {
            format!("  {}", v.note)
        };
        println!("{:>4}  {:<5} {mark}{note}", v.index, v.kind);
    }

    for &j in &report.undischarged {
        // A lemma the trace uses but never derives is only as good as its
        // certificate.
        ok &= certify("assumed", &trace.assumed[j], gamma, &oracle, args.ground_depth);
    }

    if args.audit_invariant {
        for (i, chain) in report.chains.iter().enumerate() {
            if !chain.is_ground() || !gamma.is_ground() {
                println!("audit {i}: skipped (not ground)");
                continue;
            }
            match audit_derived_chain_property(chain, gamma, &oracle) {
                Ok(a) if a.passed() => println!("audit {i}: ok"),
                Ok(a) => {
                    let bad: Vec<String> = a
                        .ancestors
                        .iter()
                        .filter(|x| !(x.member && x.entailed))
                        .map(|x| x.ordinal.to_string())
                        .collect();
                    println!("audit {i}: FAIL at A-entries {}", bad.join(","));
                    ok = false;
                }
                Err(e) => {
                    println!("audit {i}: ERROR {e}");
                    ok = false;
                }
            }
        }
    }

    if args.certify_lemmas {
        for (i, lemma) in report.lemmas.iter().enumerate() {
            ok &= certify(&format!("lemma {i}"), lemma, gamma, &oracle, args.ground_depth);
        }
        // Recorded lemma lines are matched during replay; certify them too,
        // in case the replay stopped before reaching them.
        for lemma in trace.lemmas().skip(report.lemmas.len()) {
            ok &= certify("recorded", lemma, gamma, &oracle, args.ground_depth);
        }
    }

    if ok {
        println!(
            "VERIFIED{}",
            if report.refutation() { " refutation" } else { "" }
        );
        Ok(0)
    } else {
        println!("FAILED");
        Ok(NO)
    }
}
