use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use elim_core::generate::{random_cnf, random_fo};
use elim_core::io::{digest, parse_fo, print_clauses, write_dimacs};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

const FOUR: &str = "p | q.\n~p | q.\np | ~q.\n~p | ~q.\n";

fn elim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn prove_then_check_the_four_clause_example() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "four.p", FOUR);
    let trace = dir.path().join("four.trace");
    let out = elim(&["prove", s(&problem), "--trace", s(&trace)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("UNSAT\nstats: extensions="));
    assert!(text.contains("lemma ~q."));

    let out = elim(&[
        "check",
        s(&problem),
        s(&trace),
        "--audit-invariant",
        "--certify-lemmas",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("VERIFIED refutation"));
}

#[test]
fn satisfiable_input_is_unknown() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "one.p", "p.\n");
    let out = elim(&["prove", s(&problem)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("UNKNOWN depth=12\n"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "d.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let out = elim(&["prove", "--format", "fo", s(&cnf)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d.cnf:1:"));

    let odd = write(&dir, "x.txt", FOUR);
    assert_eq!(code(&elim(&["prove", s(&odd)])), 2);
    assert_eq!(code(&elim(&["prove", "--depth-max", "x", s(&cnf)])), 2);
    assert_eq!(code(&elim(&["prove", s(&dir.path().join("missing.p"))])), 2);
}

#[test]
fn dimacs_input_and_empty_clause() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "u.cnf", "c two units\np cnf 1 2\n1 0\n-1 0\n");
    let out = elim(&["prove", s(&cnf)]);
    assert_eq!(code(&out), 0);
    let empty = write(&dir, "e.cnf", "p cnf 1 2\n1 0\n0\n");
    let out = elim(&["prove", s(&empty)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("UNSAT"));
}

#[test]
fn check_against_the_wrong_problem() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "four.p", FOUR);
    let other = write(&dir, "other.p", "p.\n~p.\n");
    let trace = dir.path().join("t");
    assert_eq!(code(&elim(&["prove", s(&problem), "--trace", s(&trace)])), 0);
    let out = elim(&["check", s(&other), s(&trace)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("digest mismatch"));
}

/// Every lemma is a consequence of an unsatisfiable set, so the corrupted
/// lemma is checked against a satisfiable one with a partial trace.
#[test]
fn corrupted_lemma_fails_certification() {
    let dir = TempDir::new().unwrap();
    let text = "p | q.\n~p.\n";
    let problem = write(&dir, "sat.p", text);
    let digest = digest(&parse_fo(text).unwrap().clauses);
    let good = format!(
        "me-trace 1\nproblem {digest}\nstart 0 => p q\next 1 0 {{}} => [p]^0 q\nrem => q\nlemma ~p.\n"
    );
    let trace = write(&dir, "good.trace", &good);
    let out = elim(&["check", s(&problem), s(&trace), "--certify-lemmas"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let trace = write(&dir, "bad.trace", &good.replace("lemma ~p.", "lemma p."));
    let out = elim(&["check", s(&problem), s(&trace), "--certify-lemmas"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("lemma mismatch"));
    assert!(text.contains("`p.`: REFUTED"));
}

#[test]
fn corrupted_scope_fails_the_step() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "four.p", FOUR);
    let trace = dir.path().join("t");
    assert_eq!(code(&elim(&["prove", s(&problem), "--trace", s(&trace)])), 0);
    let text = fs::read_to_string(&trace).unwrap();
    let corrupted = text.replacen("]^1", "]^0", 1);
    fs::write(&trace, corrupted).unwrap();
    let out = elim(&["check", s(&problem), s(&trace)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("red   FAIL"));
}

#[test]
fn malformed_trace_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "four.p", FOUR);
    let trace = write(&dir, "t", "me-trace 1\nproblem 00\njump 0 => p q\n");
    let out = elim(&["check", s(&problem), s(&trace)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn oracle_commands() {
    let dir = TempDir::new().unwrap();
    let four = write(&dir, "four.p", FOUR);
    let out = elim(&["oracle", s(&four)]);
    assert_eq!((code(&out), stdout(&out)), (0, "UNSAT\n".to_string()));

    let m = write(&dir, "m.p", "p.\n~p.\nq.\n");
    let out = elim(&["oracle", "--minimize", s(&m)]);
    assert!(stdout(&out).contains("core: 0 1\n"));

    let sat = write(&dir, "s.p", "p | q.\n");
    let out = elim(&["oracle", s(&sat)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("SAT\nmodel: "));

    let fo = write(&dir, "g.p", "p(X).\n");
    let out = elim(&["oracle", "--ground-depth", "0", "--constants", "a", s(&fo)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "c 1 p(a)\np cnf 1 1\n1 0\n");
    assert_eq!(code(&elim(&["oracle", s(&fo)])), 2);

    assert_eq!(code(&elim(&["oracle", "--max-vars", "1", s(&four)])), 2);
}

#[test]
fn lemma_use_traces_check() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "five.p", "p | q | r.\n~p | q.\n~q | r.\n~r | p.\n~p | ~q | ~r.\n");
    for reuse in ["path", "global"] {
        let trace = dir.path().join(format!("{reuse}.trace"));
        let out = elim(&[
            "prove",
            s(&problem),
            "--lemmas",
            "use",
            "--lemma-reuse",
            reuse,
            "--trace",
            s(&trace),
        ]);
        assert_eq!(code(&out), 0);
        let out = elim(&["check", s(&problem), s(&trace), "--certify-lemmas"]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
}

#[test]
fn first_order_prove_and_check() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "nat.p",
        "% successor chain\np(a).\n~p(X) | p(f(X)).\n~p(f(f(a))).\n",
    );
    let trace = dir.path().join("t");
    assert_eq!(code(&elim(&["prove", s(&problem), "--trace", s(&trace)])), 0);
    let out = elim(&[
        "check",
        s(&problem),
        s(&trace),
        "--certify-lemmas",
        "--max-vars",
        "64",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

/// Every trace `prove` writes passes `check`, and every refuted
/// propositional problem is unsatisfiable for the oracle.
#[test]
fn prove_and_check_agree_on_a_corpus() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut refuted = 0;
    for i in 0..40 {
        let (name, text, propositional) = match i % 4 {
            0 => {
                let g = random_cnf(&mut rng, (3, 6), (4, 12));
                (format!("{i}.cnf"), write_dimacs(&g), true)
            }
            1 | 2 => {
                let g = random_cnf(&mut rng, (3, 6), (4, 12));
                (format!("{i}.p"), print_clauses(&g), true)
            }
            _ => (format!("{i}.p"), print_clauses(&random_fo(&mut rng)), false),
        };
        let problem = write(&dir, &name, &text);
        let trace = dir.path().join(format!("{i}.trace"));
        let out = elim(&["prove", s(&problem), "--trace", s(&trace), "--steps", "200000"]);
        if code(&out) != 0 {
            continue;
        }
        refuted += 1;
        let mut args = vec!["check", s(&problem), s(&trace)];
        if propositional {
            args.push("--audit-invariant");
            args.push("--certify-lemmas");
        }
        let out = elim(&args);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
        if propositional {
            assert_eq!(stdout(&elim(&["oracle", s(&problem)])), "UNSAT\n", "{name}");
        }
    }
    assert!(refuted > 5);
}
