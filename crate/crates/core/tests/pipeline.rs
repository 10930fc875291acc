mod common;

use std::io::Write;
use std::process::Command;

use casp2smt::backend::{enumerate, EnumerationMode, EnumerationRequest};
use casp2smt::emit::{emit, EmissionConfig};
use casp2smt::fixtures;
use casp2smt::oracle::{brute_force_answer_sets, check_extended_answer_set, DomainBox};
use casp2smt::parse_program;
use casp2smt::translate::{clausify, translate_cas, SupportMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn request(
    count: Option<usize>,
    mode: EnumerationMode,
    support: Option<SupportMode>,
) -> EnumerationRequest {
    EnumerationRequest {
        count,
        mode,
        support,
        ..EnumerationRequest::default()
    }
}

#[test]
fn p1_emission_matches_golden_file() {
    let p = parse_program(fixtures::P1).unwrap();
    let text = emit(
        &clausify(&translate_cas(&p, None).unwrap()),
        &EmissionConfig::default(),
    )
    .unwrap();
    assert_eq!(text, include_str!("golden/p1.smt2"));
}

#[test]
fn fixtures_agree_with_oracle() {
    let solver = require_solver!();
    for src in [
        fixtures::P1,
        fixtures::P1_NONSTRICT,
        fixtures::P1_NONSTRICT_BOXED,
        fixtures::LIGHT,
        fixtures::SELF_LOOP,
    ] {
        let p = parse_program(src).unwrap();
        let oracle = brute_force_answer_sets(&p, &DomainBox::for_program(&p)).unwrap();
        let found = enumerate(&p, &solver, &request(None, EnumerationMode::Atoms, None)).unwrap();
        assert_eq!(
            common::atom_sets(&p, &found),
            common::atom_sets(&p, &oracle),
            "{src}"
        );
        assert_eq!(found.len(), oracle.len(), "{src}");
    }
}

#[test]
fn tight_mode_matches_rankings_on_tight_programs() {
    let solver = require_solver!();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 25 {
        let (src, p) = common::random_program(&mut rng);
        if !casp2smt::analysis::is_tight(&p) {
            continue;
        }
        let mut results = Vec::new();
        for mode in [
            SupportMode::Tight,
            SupportMode::PlainRanking,
            SupportMode::SccRanking,
        ] {
            let found = enumerate(
                &p,
                &solver,
                &request(None, EnumerationMode::Atoms, Some(mode)),
            )
            .unwrap();
            results.push(common::atom_sets(&p, &found));
        }
        assert_eq!(results[0], results[1], "{src}");
        assert_eq!(results[0], results[2], "{src}");
        checked += 1;
    }
}

#[test]
fn extended_mode_yields_distinct_verified_pairs() {
    let solver = require_solver!();
    let p = parse_program(
        "cvar x : int [0,3]. cvar y : int [0,3]. {a}. :- a, not [x + y >= 5]!. :- not a, [x != y].",
    )
    .unwrap();
    let found = enumerate(&p, &solver, &request(None, EnumerationMode::Extended, None)).unwrap();
    let distinct: std::collections::BTreeSet<_> = found.iter().cloned().collect();
    assert_eq!(distinct.len(), found.len());
    for a in &found {
        assert!(
            check_extended_answer_set(&p, &a.atoms, &a.valuation),
            "{}",
            a.render(&p)
        );
    }
    // a: x + y >= 5 over 0..3 has 3 solutions; not a: x != y non-strict, x and y free
    let with_a = found.iter().filter(|a| !a.atoms.is_empty()).count();
    assert!(with_a >= 3, "{found:?}");
}

#[test]
fn count_limits_enumeration() {
    let solver = require_solver!();
    let p = parse_program("{a}. {b}. {c}.").unwrap();
    let found = enumerate(&p, &solver, &request(Some(3), EnumerationMode::Atoms, None)).unwrap();
    assert_eq!(found.len(), 3);
    let every = enumerate(&p, &solver, &request(None, EnumerationMode::Atoms, None)).unwrap();
    assert_eq!(every.len(), 8);
}

#[test]
fn real_variables_round_trip_through_the_solver() {
    let solver = require_solver!();
    let p = parse_program(
        "cvar r : real [0,1]. cvar n : int [0,2]. :- not [2*r > 1]!. :- not [r + n < 3/2]!.",
    )
    .unwrap();
    let found = enumerate(&p, &solver, &request(Some(1), EnumerationMode::Atoms, None)).unwrap();
    assert_eq!(found.len(), 1);
    assert!(check_extended_answer_set(
        &p,
        &found[0].atoms,
        &found[0].valuation
    ));
}

fn cli(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_casp2smt"));
    cmd.args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn cli_solves_p1() {
    let _solver = require_solver!();
    let (code, out, _) = cli(&["-"], Some(fixtures::P1));
    assert_eq!(code, 10);
    let line = out.trim();
    let (atoms, valuation) = line.split_once(" | ").unwrap();
    assert_eq!(atoms, "[x>=12]! lightOn switch");
    let x: i64 = valuation.strip_prefix("x=").unwrap().parse().unwrap();
    assert!((12..=23).contains(&x));
}

#[test]
fn cli_reports_unsatisfiable() {
    let _solver = require_solver!();
    let (code, out, _) = cli(&["-"], Some(":- a.  a."));
    assert_eq!((code, out.as_str()), (20, "UNSATISFIABLE\n"));
}

#[test]
fn cli_matches_oracle_atom_sets() {
    let _solver = require_solver!();
    for src in [
        fixtures::P1_NONSTRICT,
        fixtures::SELF_LOOP,
        "{a}. {b}. :- a, b. c :- a. c :- b.",
    ] {
        let atoms_of = |out: &str| -> Vec<String> {
            let mut v: Vec<String> = out
                .lines()
                .map(|l| l.split(" | ").next().unwrap().to_string())
                .collect();
            v.sort();
            v
        };
        let (_, solved, _) = cli(&["-", "-n", "0"], Some(src));
        let (code, oracle, _) = cli(&["-", "--oracle"], Some(src));
        assert_eq!(code, 0);
        assert_eq!(atoms_of(&solved), atoms_of(&oracle), "{src}");
    }
}

#[test]
fn cli_dump_does_not_invoke_solver() {
    let (code, out, _) = cli(
        &["-", "--dump", "smtlib", "--solver", "/nonexistent/solver"],
        Some(fixtures::P1),
    );
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/p1.smt2"));
}

#[test]
fn cli_solver_env_fallback() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_casp2smt"));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"a.").unwrap();
    let out = cmd
        .arg(file.path())
        .env("CASP2SMT_SOLVER", "/nonexistent/solver")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/solver"));
}
