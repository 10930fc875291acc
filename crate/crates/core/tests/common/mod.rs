#![allow(dead_code)]

use std::collections::BTreeSet;
use std::time::Duration;

use casp2smt::backend::{solve_once, SolverConfig, Verdict};
use casp2smt::translate::PropFormula;
use casp2smt::{AtomId, CasProgram, ExtendedAnswerSet};
use rand::Rng;

/// The configured solver, if it answers a trivial query.
pub fn solver() -> Option<SolverConfig> {
    let line = std::env::var("CASP2SMT_SOLVER").unwrap_or_else(|_| "z3 -in".to_string());
    let config = SolverConfig::from_command_line(&line)
        .ok()?
        .with_timeout(Duration::from_secs(30));
    match solve_once("(check-sat)\n", &config) {
        Ok(o) if o.verdict == Verdict::Sat => Some(config),
        _ => None,
    }
}

/// Skips the calling test when no solver is available.
#[macro_export]
macro_rules! require_solver {
    () => {
        match common::solver() {
            Some(s) => s,
            None => {
                eprintln!("skipping: no SMT solver available");
                return;
            }
        }
    };
}

pub fn atom_sets(program: &CasProgram, found: &[ExtendedAnswerSet]) -> BTreeSet<BTreeSet<String>> {
    found.iter().map(|a| program.names(&a.atoms)).collect()
}

fn random_constraint(rng: &mut impl Rng, vars: &[&str]) -> String {
    let mut terms = Vec::new();
    for v in vars {
        let c: i32 = rng.random_range(-2..=2);
        if c != 0 {
            terms.push(format!("{c}*{v}"));
        }
    }
    if terms.is_empty() {
        terms.push(vars[rng.random_range(0..vars.len())].to_string());
    }
    let rel = ["<", "<=", ">", ">=", "==", "!="][rng.random_range(0..6)];
    let k: i32 = rng.random_range(0..=4);
    format!("[{} {rel} {k}]", terms.join(" + "))
}

/// Ground program text: up to 8 regular atoms, 12 rules, 2 int variables over
/// `0..3` and 3 constraint atoms, bodies mixing `not` and `not not`.
pub fn random_program_text(rng: &mut impl Rng) -> String {
    let regular = rng.random_range(1..=8usize);
    let var_count = rng.random_range(0..=2usize);
    let vars: Vec<&str> = ["x", "y"][..var_count].to_vec();
    let mut src = String::new();
    for v in &vars {
        src.push_str(&format!("cvar {v} : int [0,3].\n"));
    }
    let catoms: Vec<(String, bool)> = if vars.is_empty() {
        Vec::new()
    } else {
        (0..rng.random_range(0..=3))
            .map(|_| (random_constraint(rng, &vars), rng.random_bool(0.5)))
            .collect()
    };
    let rules = rng.random_range(1..=12);
    for _ in 0..rules {
        let mut body = Vec::new();
        for _ in 0..rng.random_range(0..=3) {
            if !catoms.is_empty() && rng.random_bool(0.25) {
                let (text, strict) = &catoms[rng.random_range(0..catoms.len())];
                if *strict {
                    let neg = if rng.random_bool(0.3) { "not " } else { "" };
                    body.push(format!("{neg}{text}!"));
                } else {
                    body.push(text.clone());
                }
            } else {
                let atom = format!("a{}", rng.random_range(0..regular));
                let prefix = match rng.random_range(0..6) {
                    0 | 1 => "not ",
                    2 => "not not ",
                    _ => "",
                };
                body.push(format!("{prefix}{atom}"));
            }
        }
        let head = format!("a{}", rng.random_range(0..regular));
        let rule = match rng.random_range(0..6) {
            0 => format!("{{{head}}}"),
            1 => String::new(),
            _ => head,
        };
        let line = match (rule.is_empty(), body.is_empty()) {
            (true, true) => continue,
            (true, false) => format!(":- {}.", body.join(", ")),
            (false, true) => format!("{rule}."),
            (false, false) => format!("{rule} :- {}.", body.join(", ")),
        };
        src.push_str(&line);
        src.push('\n');
    }
    src
}

/// Retries until the generated text parses (a constraint may come out both
/// strict and non-strict).
pub fn random_program(rng: &mut impl Rng) -> (String, CasProgram) {
    loop {
        let src = random_program_text(rng);
        if let Ok(p) = casp2smt::parse_program(&src) {
            return (src, p);
        }
    }
}

pub fn random_formula(rng: &mut impl Rng, atoms: u32, depth: u32) -> PropFormula {
    if depth == 0 || rng.random_bool(0.2) {
        return match rng.random_range(0..20) {
            0 => PropFormula::True,
            1 => PropFormula::False,
            _ => PropFormula::Atom(AtomId(rng.random_range(0..atoms))),
        };
    }
    let kind = rng.random_range(0..4);
    let n = match kind {
        0 => 1,
        3 => 2,
        _ => rng.random_range(2..=3),
    };
    let mut children: Vec<PropFormula> = (0..n)
        .map(|_| random_formula(rng, atoms, depth - 1))
        .collect();
    match kind {
        0 => PropFormula::Not(Box::new(children.remove(0))),
        1 => PropFormula::And(children),
        2 => PropFormula::Or(children),
        _ => {
            let b = children.pop().unwrap();
            let a = children.pop().unwrap();
            PropFormula::implies(a, b)
        }
    }
}

type Clause = Vec<(AtomId, bool)>;

/// Whether some assignment extending `fixed` (indexed by atom id; `None` for
/// free atoms) satisfies every clause.
pub fn satisfiable(clauses: &[Clause], fixed: &mut Vec<Option<bool>>) -> bool {
    // unit propagation to a fixpoint
    let mut trail = Vec::new();
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for (a, sign) in clause {
                match fixed[a.index()] {
                    Some(v) if v == *sign => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open += 1;
                        unassigned = Some((*a, *sign));
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => {
                    for a in trail {
                        fixed[a] = None;
                    }
                    return false;
                }
                (1, Some((a, sign))) => {
                    fixed[a.index()] = Some(sign);
                    trail.push(a.index());
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let result = match fixed.iter().position(Option::is_none) {
        None => true,
        Some(free) => [true, false].into_iter().any(|v| {
            fixed[free] = Some(v);
            let ok = satisfiable(clauses, fixed);
            fixed[free] = None;
            ok
        }),
    };
    for a in trail {
        fixed[a] = None;
    }
    result
}
