//! Brute-force semantics for small programs: reducts, least models, input
//! answer sets and exhaustive search over boxed constraint variables.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{
    AtomId, AtomKind, CasProgram, Constraint, ExtendedAnswerSet, Head, NumericVariable, Rational,
    Sort, Valuation,
};

pub const DEFAULT_ATOM_CAP: usize = 16;

/// Widest integer range the default box will enumerate per variable.
const MAX_DEFAULT_RANGE: i64 = 4096;

/// Finite candidate values per variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DomainBox {
    domains: BTreeMap<String, Vec<Rational>>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl DomainBox {
    pub fn new() -> Self {
        DomainBox::default()
    }

    /// Declared bounds where present. Missing integer bounds default to
    /// `±K` with `K` one more than the largest constant magnitude in the
    /// program; real variables get a probe set of constraint boundary points,
    /// their neighbours at distance one, and midpoints.
    pub fn for_program(program: &CasProgram) -> Self {
        let magnitudes = program
            .constraint_atoms()
            .map(|ca| ca.constraint.lhs().constant_term().abs())
            .chain(
                program
                    .variables()
                    .iter()
                    .flat_map(|v| [v.lower.clone(), v.upper.clone()])
                    .flatten()
                    .map(|b| b.abs()),
            );
        let k = magnitudes.fold(Rational::zero(), |acc, m| if m > acc { m } else { acc });
        let k = k.ceil() + Rational::one();
        let mut domains = BTreeMap::new();
        for v in program.variables() {
            let values = match v.sort {
                Sort::Int => int_domain(v, &k),
                Sort::Real => real_probes(program, v),
            };
            domains.insert(v.name.clone(), values);
        }
        DomainBox { domains }
    }

    pub fn with_domain(mut self, name: impl Into<String>, values: Vec<Rational>) -> Self {
        self.domains.insert(name.into(), values);
        self
    }

    /// Inclusive integer range.
    pub fn with_int_range(self, name: impl Into<String>, lo: i64, hi: i64) -> Self {
        self.with_domain(name, (lo..=hi).map(int).collect())
    }

    pub fn domain(&self, name: &str) -> Option<&[Rational]> {
        self.domains.get(name).map(Vec::as_slice)
    }
}

fn int_domain(v: &NumericVariable, k: &Rational) -> Vec<Rational> {
    let lo = v.lower.clone().unwrap_or_else(|| -k).ceil();
    let hi = v.upper.clone().unwrap_or_else(|| k.clone()).floor();
    let (Some(lo), Some(hi)) = (lo.to_integer().to_i64(), hi.to_integer().to_i64()) else {
        return vec![Rational::zero()];
    };
    let hi = hi.min(lo.saturating_add(MAX_DEFAULT_RANGE));
    if lo > hi {
        // empty declared range; keep the domain non-empty, bounds reject it
        return vec![int(lo)];
    }
    (lo..=hi).map(int).collect()
}

fn real_probes(program: &CasProgram, v: &NumericVariable) -> Vec<Rational> {
    let mut points: BTreeSet<Rational> = BTreeSet::new();
    points.insert(Rational::zero());
    points.extend(v.lower.iter().cloned());
    points.extend(v.upper.iter().cloned());
    for ca in program.constraint_atoms() {
        let lhs = ca.constraint.lhs();
        for (coefficient, name) in lhs.terms() {
            if name == &v.name {
                points.insert(-lhs.constant_term() / coefficient);
            }
        }
    }
    let base: Vec<Rational> = points.iter().cloned().collect();
    for p in &base {
        points.insert(p - Rational::one());
        points.insert(p + Rational::one());
    }
    let sorted: Vec<Rational> = points.iter().cloned().collect();
    for pair in sorted.windows(2) {
        points.insert((&pair[0] + &pair[1]) / int(2));
    }
    let in_bounds = |p: &Rational| {
        v.lower.as_ref().is_none_or(|lo| p >= lo) && v.upper.as_ref().is_none_or(|hi| p <= hi)
    };
    let kept: Vec<Rational> = points.into_iter().filter(in_bounds).collect();
    if kept.is_empty() {
        vec![v.lower.clone().unwrap_or_else(Rational::zero)]
    } else {
        kept
    }
}

/// A rule of a reduct: no negation left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRule {
    pub head: Head,
    pub body: Vec<AtomId>,
}

/// Rules whose negative and doubly negated parts `x` satisfies, with those
/// parts removed.
pub fn reduct(program: &CasProgram, x: &BTreeSet<AtomId>) -> Vec<PositiveRule> {
    program
        .rules()
        .iter()
        .filter(|r| r.neg.iter().all(|a| !x.contains(a)) && r.negneg.iter().all(|a| x.contains(a)))
        .map(|r| PositiveRule {
            head: r.head,
            body: r.pos.clone(),
        })
        .collect()
}

/// Least fixpoint of the rules; `None` when a denial fires.
pub fn least_model(rules: &[PositiveRule]) -> Option<BTreeSet<AtomId>> {
    let mut model = BTreeSet::new();
    loop {
        let mut changed = false;
        for r in rules {
            if !r.body.iter().all(|b| model.contains(b)) {
                continue;
            }
            match r.head {
                Head::Bottom => return None,
                Head::Atom(a) => changed |= model.insert(a),
            }
        }
        if !changed {
            return Some(model);
        }
    }
}

/// `x` is an answer set of the program extended with the facts `x ∩ iota`.
pub fn is_input_answer_set(
    program: &CasProgram,
    iota: &BTreeSet<AtomId>,
    x: &BTreeSet<AtomId>,
) -> bool {
    let mut rules = reduct(program, x);
    rules.extend(x.intersection(iota).map(|a| PositiveRule {
        head: Head::Atom(*a),
        body: Vec::new(),
    }));
    least_model(&rules).is_some_and(|m| &m == x)
}

/// `{γ(a) : a ∈ x ∩ (σ_e ∪ σ_i)} ∪ {γ(¬a) : a ∈ σ_e \ x}`, by atom id.
pub fn condition_b_constraints(program: &CasProgram, x: &BTreeSet<AtomId>) -> Vec<Constraint> {
    program
        .constraint_atoms()
        .filter_map(|ca| match program.atom(ca.atom).kind {
            AtomKind::StrictIrregular if !x.contains(&ca.atom) => Some(ca.constraint.complement()),
            _ if x.contains(&ca.atom) => Some(ca.constraint),
            _ => None,
        })
        .collect()
}

/// First solution in lexicographic order (variables by name, values in box
/// order), or `None`. Variables missing from the box make it unsolvable.
pub fn csp_satisfiable(constraints: &[Constraint], domains: &DomainBox) -> Option<Valuation> {
    let names: Vec<String> = constraints
        .iter()
        .flat_map(|c| c.variables().map(str::to_string).collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut values = Vec::with_capacity(names.len());
    for n in &names {
        values.push(domains.domain(n)?);
    }
    // constraints become checkable once their last variable is assigned
    let position: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut due: Vec<Vec<&Constraint>> = vec![Vec::new(); names.len().max(1)];
    for c in constraints {
        let last = c.variables().map(|v| position[v]).max().unwrap_or(0);
        due[last].push(c);
    }
    if names.is_empty() {
        return due[0]
            .iter()
            .all(|c| c.holds(&Valuation::new()) == Some(true))
            .then(Valuation::new);
    }
    let mut valuation = Valuation::new();
    search(0, &names, &values, &due, &mut valuation).then_some(valuation)
}

fn search(
    depth: usize,
    names: &[String],
    values: &[&[Rational]],
    due: &[Vec<&Constraint>],
    valuation: &mut Valuation,
) -> bool {
    if depth == names.len() {
        return true;
    }
    for value in values[depth] {
        valuation.insert(names[depth].clone(), value.clone());
        if due[depth].iter().all(|c| c.holds(valuation) == Some(true))
            && search(depth + 1, names, values, due, valuation)
        {
            return true;
        }
    }
    valuation.remove(&names[depth]);
    false
}

/// Every extended answer set with the first valuation found in `domains`.
/// Candidate atom sets are visited in binary-counting order over the atoms
/// sorted by name (first name is the lowest bit).
pub fn brute_force_answer_sets(
    program: &CasProgram,
    domains: &DomainBox,
) -> Result<Vec<ExtendedAnswerSet>> {
    brute_force_with_cap(program, domains, DEFAULT_ATOM_CAP)
}

pub fn brute_force_with_cap(
    program: &CasProgram,
    domains: &DomainBox,
    cap: usize,
) -> Result<Vec<ExtendedAnswerSet>> {
    let mut atoms: Vec<AtomId> = program.atom_ids().collect();
    if atoms.len() > cap {
        return Err(Error::OracleCapExceeded {
            atoms: atoms.len(),
            cap,
        });
    }
    atoms.sort_by(|a, b| program.atom(*a).name.cmp(&program.atom(*b).name));
    let iota = program.input_vocabulary();
    let mut found = Vec::new();
    for bits in 0u64..(1u64 << atoms.len()) {
        let x: BTreeSet<AtomId> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| *a)
            .collect();
        if !is_input_answer_set(program, &iota, &x) {
            continue;
        }
        if let Some(valuation) = csp_satisfiable(&condition_b_constraints(program, &x), domains) {
            found.push(ExtendedAnswerSet {
                atoms: x,
                valuation,
            });
        }
    }
    Ok(found)
}

fn within_declaration(v: &NumericVariable, value: &Rational) -> bool {
    (v.sort == Sort::Real || value.is_integer())
        && v.lower.as_ref().is_none_or(|lo| value >= lo)
        && v.upper.as_ref().is_none_or(|hi| value <= hi)
}

/// Both conditions of an extended answer set: `x` is an input answer set and
/// `valuation` solves its constraint set while respecting declared sorts and
/// bounds.
pub fn check_extended_answer_set(
    program: &CasProgram,
    x: &BTreeSet<AtomId>,
    valuation: &Valuation,
) -> bool {
    if !is_input_answer_set(program, &program.input_vocabulary(), x) {
        return false;
    }
    let declared_ok = program
        .variables()
        .iter()
        .all(|v| match valuation.get(&v.name) {
            Some(value) => within_declaration(v, value),
            None => true,
        });
    declared_ok
        && condition_b_constraints(program, x)
            .iter()
            .all(|c| c.holds(valuation) == Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{LinearExpression, Relation};
    use crate::parser::parse_program;

    fn set(p: &CasProgram, names: &[&str]) -> BTreeSet<AtomId> {
        names.iter().map(|n| p.atom_id(n).unwrap()).collect()
    }

    fn names(p: &CasProgram, atoms: &BTreeSet<AtomId>) -> Vec<String> {
        p.names(atoms).into_iter().collect()
    }

    #[test]
    fn reduct_of_light_program() {
        let p = parse_program("lightOn :- switch, not am. :- not lightOn. switch.").unwrap();
        let r = reduct(&p, &set(&p, &["switch", "lightOn"]));
        assert_eq!(r.len(), 2);
        assert_eq!(least_model(&r), Some(set(&p, &["switch", "lightOn"])));
    }

    #[test]
    fn reduct_edge_cases() {
        let p = parse_program("a :- not a.").unwrap();
        let r = reduct(&p, &BTreeSet::new());
        assert_eq!(
            r,
            vec![PositiveRule {
                head: Head::Atom(AtomId(0)),
                body: vec![]
            }]
        );

        let p = parse_program("a :- not not a.").unwrap();
        assert_eq!(reduct(&p, &set(&p, &["a"])).len(), 1);
        assert!(reduct(&p, &BTreeSet::new()).is_empty());
    }

    #[test]
    fn least_model_cases() {
        let p = parse_program("a :- b. b :- c.").unwrap();
        assert_eq!(
            least_model(&reduct(&p, &BTreeSet::new())),
            Some(BTreeSet::new())
        );
        let p = parse_program("a. :- a.").unwrap();
        assert_eq!(least_model(&reduct(&p, &BTreeSet::new())), None);
    }

    #[test]
    fn light_input_answer_sets() {
        let p = parse_program(fixtures::LIGHT).unwrap();
        let iota = set(&p, &["switch", "am"]);
        assert!(is_input_answer_set(
            &p,
            &iota,
            &set(&p, &["switch", "lightOn"])
        ));
        assert!(!is_input_answer_set(&p, &iota, &set(&p, &["am"])));
        let empty = parse_program("").unwrap();
        assert!(is_input_answer_set(
            &empty,
            &BTreeSet::new(),
            &BTreeSet::new()
        ));
    }

    #[test]
    fn csp_examples() {
        let x = LinearExpression::variable("x");
        let c = |v: i64| LinearExpression::constant(int(v));
        let b = DomainBox::new().with_int_range("x", 0, 23);
        let cs = vec![
            Constraint::new(&x, Relation::Ge, &c(0)),
            Constraint::new(&x, Relation::Ge, &c(12)),
            Constraint::new(&x, Relation::Le, &c(23)),
        ];
        assert_eq!(csp_satisfiable(&cs, &b).unwrap().get("x"), Some(&int(12)));
        assert!(csp_satisfiable(&[Constraint::new(&x, Relation::Lt, &c(0))], &b).is_none());

        let sum = LinearExpression::new([(int(2), "x"), (int(3), "y")], Rational::zero());
        let b = DomainBox::new()
            .with_int_range("x", 0, 1)
            .with_int_range("y", 0, 1);
        let v = csp_satisfiable(&[Constraint::new(&sum, Relation::Gt, &c(0))], &b).unwrap();
        assert_eq!(v.to_string(), "x=0 y=1");
        assert_eq!(csp_satisfiable(&[], &b), Some(Valuation::new()));
    }

    #[test]
    fn p1_has_one_extended_answer_set() {
        let p = parse_program(fixtures::P1).unwrap();
        let b = DomainBox::new().with_int_range("x", 0, 23);
        let found = brute_force_answer_sets(&p, &b).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].render(&p), "[x>=12]! lightOn switch | x=12");
        // the default box reaches the same answer
        let found = brute_force_answer_sets(&p, &DomainBox::for_program(&p)).unwrap();
        assert_eq!(found[0].render(&p), "[x>=12]! lightOn switch | x=12");
    }

    #[test]
    fn p1_nonstrict_constraint_set() {
        let p = parse_program(fixtures::P1_NONSTRICT).unwrap();
        let x = set(&p, &["switch", "lightOn", "[x>=12]"]);
        let keys: Vec<String> = condition_b_constraints(&p, &x)
            .iter()
            .map(|c| c.canonical_key())
            .collect();
        assert_eq!(keys, vec!["-x + 12 <= 0"]);
        let found = brute_force_answer_sets(&p, &DomainBox::for_program(&p)).unwrap();
        let atom_sets: Vec<Vec<String>> = found.iter().map(|a| names(&p, &a.atoms)).collect();
        assert!(atom_sets.contains(&vec!["[x>=12]".into(), "lightOn".into(), "switch".into()]));
    }

    #[test]
    fn self_loop_has_empty_answer_set() {
        let p = parse_program(fixtures::SELF_LOOP).unwrap();
        let found = brute_force_answer_sets(&p, &DomainBox::new()).unwrap();
        assert_eq!(
            found,
            vec![ExtendedAnswerSet {
                atoms: BTreeSet::new(),
                valuation: Valuation::new()
            }]
        );
    }

    #[test]
    fn check_extended() {
        let p = parse_program(fixtures::P1).unwrap();
        let x = set(&p, &["switch", "lightOn", "[x>=12]"]);
        let at = |n: i64| Valuation::from_iter([("x".to_string(), int(n))]);
        assert!(check_extended_answer_set(&p, &x, &at(12)));
        assert!(!check_extended_answer_set(&p, &x, &at(5)));
        assert!(!check_extended_answer_set(&p, &x, &at(24)));
        assert!(!check_extended_answer_set(
            &p,
            &set(&p, &["switch", "lightOn"]),
            &at(12)
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let src: String = (0..17).map(|i| format!("a{i}. ")).collect();
        let p = parse_program(&src).unwrap();
        assert!(matches!(
            brute_force_answer_sets(&p, &DomainBox::new()),
            Err(Error::OracleCapExceeded { atoms: 17, cap: 16 })
        ));
    }

    #[test]
    fn real_probes_cover_boundaries() {
        let p = parse_program("cvar r : real [0,1]. :- [2*r < 1]!.").unwrap();
        let b = DomainBox::for_program(&p);
        let d = b.domain("r").unwrap();
        assert!(d.contains(&Rational::new(1.into(), 2.into())));
        assert!(d.iter().all(|v| *v >= int(0) && *v <= int(1)));
    }
}
