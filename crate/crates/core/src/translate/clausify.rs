//! Definitional clausification. Every auxiliary atom is tied to its
//! subformula by a full equivalence, so auxiliaries are functionally
//! determined and projected models are preserved one-to-one.

use std::collections::{HashMap, HashSet};

use super::{PropFormula, SmtFormula};
use crate::model::{Atom, AtomId, AtomKind};

type Literal = (AtomId, bool);

/// Rewrites the skeleton into clauses, introducing `aux_0`, `aux_1`, ... in
/// first-encounter order. Names already taken by other atoms are skipped.
pub fn clausify(formula: &SmtFormula) -> SmtFormula {
    let mut state = Clausifier {
        atoms: formula.atoms().to_vec(),
        taken: formula.atoms().iter().map(|a| a.name.clone()).collect(),
        next_aux: 0,
        definitions: HashMap::new(),
        clauses: Vec::new(),
    };
    for f in formula.skeleton() {
        let nnf = simplify(to_nnf(f, true));
        state.top_level(nnf);
    }
    let skeleton = state.clauses.into_iter().map(clause_formula).collect();
    formula.with_clauses(state.atoms, skeleton)
}

fn clause_formula(literals: Vec<Literal>) -> PropFormula {
    PropFormula::or(
        literals
            .into_iter()
            .map(|(a, positive)| {
                if positive {
                    PropFormula::Atom(a)
                } else {
                    PropFormula::not(PropFormula::Atom(a))
                }
            })
            .collect(),
    )
}

/// Negation normal form over atoms, ⊤, ⊥, ∧ and ∨.
fn to_nnf(f: &PropFormula, positive: bool) -> PropFormula {
    match f {
        PropFormula::Atom(a) => {
            if positive {
                PropFormula::Atom(*a)
            } else {
                PropFormula::Not(Box::new(PropFormula::Atom(*a)))
            }
        }
        PropFormula::True => {
            if positive {
                PropFormula::True
            } else {
                PropFormula::False
            }
        }
        PropFormula::False => {
            if positive {
                PropFormula::False
            } else {
                PropFormula::True
            }
        }
        PropFormula::Not(g) => to_nnf(g, !positive),
        PropFormula::And(gs) => {
            let parts = gs.iter().map(|g| to_nnf(g, positive)).collect();
            if positive {
                PropFormula::And(parts)
            } else {
                PropFormula::Or(parts)
            }
        }
        PropFormula::Or(gs) => {
            let parts = gs.iter().map(|g| to_nnf(g, positive)).collect();
            if positive {
                PropFormula::Or(parts)
            } else {
                PropFormula::And(parts)
            }
        }
        PropFormula::Implies(a, b) => {
            if positive {
                PropFormula::Or(vec![to_nnf(a, false), to_nnf(b, true)])
            } else {
                PropFormula::And(vec![to_nnf(a, true), to_nnf(b, false)])
            }
        }
    }
}

/// Flattens nested connectives and folds constants. Input must be in NNF.
fn simplify(f: PropFormula) -> PropFormula {
    match f {
        PropFormula::And(parts) => {
            let mut out = Vec::new();
            for p in parts.into_iter().map(simplify) {
                match p {
                    PropFormula::True => {}
                    PropFormula::False => return PropFormula::False,
                    PropFormula::And(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            dedup(&mut out);
            PropFormula::and(out)
        }
        PropFormula::Or(parts) => {
            let mut out = Vec::new();
            for p in parts.into_iter().map(simplify) {
                match p {
                    PropFormula::False => {}
                    PropFormula::True => return PropFormula::True,
                    PropFormula::Or(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            dedup(&mut out);
            PropFormula::or(out)
        }
        other => other,
    }
}

fn dedup(parts: &mut Vec<PropFormula>) {
    let mut seen = HashSet::new();
    parts.retain(|p| seen.insert(p.clone()));
}

struct Clausifier {
    atoms: Vec<Atom>,
    taken: HashSet<String>,
    next_aux: usize,
    definitions: HashMap<PropFormula, AtomId>,
    clauses: Vec<Vec<Literal>>,
}

impl Clausifier {
    fn top_level(&mut self, f: PropFormula) {
        match f {
            PropFormula::True => {}
            PropFormula::False => self.clauses.push(Vec::new()),
            PropFormula::And(parts) => {
                for p in parts {
                    self.top_level(p);
                }
            }
            PropFormula::Or(parts) => {
                let compound: Vec<usize> = (0..parts.len())
                    .filter(|i| parts[*i].as_literal().is_none())
                    .collect();
                // l1 | ... | (c1 & c2) splits into clauses without an auxiliary
                if let [i] = compound[..] {
                    if let PropFormula::And(conjuncts) = &parts[i] {
                        for c in conjuncts {
                            let mut rest = parts.clone();
                            rest[i] = c.clone();
                            self.top_level(simplify(PropFormula::Or(rest)));
                        }
                        return;
                    }
                }
                let lits = parts.iter().map(|p| self.literal_for(p)).collect();
                self.push_clause(lits);
            }
            other => {
                let lit = self.literal_for(&other);
                self.push_clause(vec![lit]);
            }
        }
    }

    fn push_clause(&mut self, literals: Vec<Literal>) {
        let mut seen = HashSet::new();
        let mut clause = Vec::with_capacity(literals.len());
        for lit in literals {
            if seen.contains(&(lit.0, !lit.1)) {
                return;
            }
            if seen.insert(lit) {
                clause.push(lit);
            }
        }
        self.clauses.push(clause);
    }

    fn fresh_aux(&mut self) -> AtomId {
        let name = loop {
            let candidate = format!("aux_{}", self.next_aux);
            self.next_aux += 1;
            if !self.taken.contains(&candidate) {
                break candidate;
            }
        };
        self.taken.insert(name.clone());
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(Atom {
            name,
            kind: AtomKind::Auxiliary,
        });
        id
    }

    /// A literal equivalent to `f` (an NNF, simplified subformula).
    fn literal_for(&mut self, f: &PropFormula) -> Literal {
        if let Some(lit) = f.as_literal() {
            return lit;
        }
        if let Some(aux) = self.definitions.get(f) {
            return (*aux, true);
        }
        let aux = self.fresh_aux();
        self.definitions.insert(f.clone(), aux);
        match f {
            PropFormula::And(parts) => {
                let lits: Vec<Literal> = parts.iter().map(|p| self.literal_for(p)).collect();
                for l in &lits {
                    self.push_clause(vec![(aux, false), *l]);
                }
                let mut back = vec![(aux, true)];
                back.extend(lits.iter().map(|(a, s)| (*a, !s)));
                self.push_clause(back);
            }
            PropFormula::Or(parts) => {
                let lits: Vec<Literal> = parts.iter().map(|p| self.literal_for(p)).collect();
                let mut forward = vec![(aux, false)];
                forward.extend(lits.iter().copied());
                self.push_clause(forward);
                for (a, s) in &lits {
                    self.push_clause(vec![(aux, true), (*a, !s)]);
                }
            }
            PropFormula::True => self.push_clause(vec![(aux, true)]),
            PropFormula::False => self.push_clause(vec![(aux, false)]),
            _ => unreachable!("formula is in negation normal form"),
        }
        (aux, true)
    }
}
