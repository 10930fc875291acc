//! CAS program to SMT formula: rule implications, support implications
//! (input completion, optionally carrying level-ranking conjuncts) and
//! clausification.

mod clausify;
mod formula;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use clausify::clausify;
pub use formula::PropFormula;

use num_traits::{One, Zero};

use crate::analysis::{dependency_graph, is_tight, sccs, SccDecomposition};
use crate::error::{Error, Result};
use crate::model::{
    Atom, AtomId, AtomKind, CasProgram, Constraint, Head, LinearExpression, NumericVariable,
    Rational, Relation, Rule, Sort,
};

/// How support implications are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportMode {
    /// Plain completion `a -> OR bodies`; only sound for tight programs.
    Tight,
    /// Ranking conjuncts for every non-input positive body atom.
    PlainRanking,
    /// Ranking conjuncts only inside non-trivial strongly connected components.
    SccRanking,
}

impl fmt::Display for SupportMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportMode::Tight => "tight",
            SupportMode::PlainRanking => "plain",
            SupportMode::SccRanking => "scc",
        })
    }
}

/// Strict atom standing for `lr_head - 1 >= lr_body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingAtom {
    pub atom: AtomId,
    pub head_var: String,
    pub body_var: String,
}

impl RankingAtom {
    pub fn constraint(&self) -> Constraint {
        let head =
            LinearExpression::new([(Rational::one(), self.head_var.clone())], -Rational::one());
        Constraint::new(
            &head,
            Relation::Ge,
            &LinearExpression::variable(&self.body_var),
        )
    }
}

/// Theory meaning of a strict atom in an [`SmtFormula`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Constraint(Constraint),
    Ranking(RankingAtom),
}

impl Binding {
    pub fn constraint(&self) -> Constraint {
        match self {
            Binding::Constraint(c) => c.clone(),
            Binding::Ranking(r) => r.constraint(),
        }
    }
}

/// Propositional skeleton plus theory bindings. Atom ids below
/// `source_atoms().len()` coincide with the ids of the translated program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmtFormula {
    atoms: Vec<Atom>,
    skeleton: Vec<PropFormula>,
    strict_bindings: BTreeMap<AtomId, Binding>,
    nonstrict_bindings: BTreeMap<AtomId, Constraint>,
    variables: Vec<NumericVariable>,
    ranking_variables: Vec<NumericVariable>,
    source_atoms: BTreeSet<AtomId>,
}

impl SmtFormula {
    /// A formula without theory bindings; every given atom is a source atom.
    pub fn propositional(atoms: Vec<Atom>, skeleton: Vec<PropFormula>) -> Self {
        let source_atoms = (0..atoms.len()).map(|i| AtomId(i as u32)).collect();
        SmtFormula {
            atoms,
            skeleton,
            strict_bindings: BTreeMap::new(),
            nonstrict_bindings: BTreeMap::new(),
            variables: Vec::new(),
            ranking_variables: Vec::new(),
            source_atoms,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn skeleton(&self) -> &[PropFormula] {
        &self.skeleton
    }

    pub fn strict_bindings(&self) -> &BTreeMap<AtomId, Binding> {
        &self.strict_bindings
    }

    pub fn nonstrict_bindings(&self) -> &BTreeMap<AtomId, Constraint> {
        &self.nonstrict_bindings
    }

    /// Variables declared by the program.
    pub fn variables(&self) -> &[NumericVariable] {
        &self.variables
    }

    pub fn ranking_variables(&self) -> &[NumericVariable] {
        &self.ranking_variables
    }

    pub fn all_variables(&self) -> impl Iterator<Item = &NumericVariable> {
        self.variables.iter().chain(&self.ranking_variables)
    }

    pub fn source_atoms(&self) -> &BTreeSet<AtomId> {
        &self.source_atoms
    }

    pub fn is_clausal(&self) -> bool {
        self.skeleton.iter().all(|f| f.clause_literals().is_some())
    }

    /// Every (atom, constraint) pair: strict bindings first.
    pub fn bound_constraints(&self) -> impl Iterator<Item = (AtomId, Constraint, bool)> + '_ {
        self.strict_bindings
            .iter()
            .map(|(a, b)| (*a, b.constraint(), true))
            .chain(
                self.nonstrict_bindings
                    .iter()
                    .map(|(a, c)| (*a, c.clone(), false)),
            )
    }

    pub(crate) fn with_clauses(&self, atoms: Vec<Atom>, skeleton: Vec<PropFormula>) -> Self {
        SmtFormula {
            atoms,
            skeleton,
            ..self.clone()
        }
    }

    /// One formula per line.
    pub fn render(&self) -> String {
        render_formulas(&self.skeleton, &self.atoms)
    }
}

pub fn render_formulas(formulas: &[PropFormula], atoms: &[Atom]) -> String {
    formulas
        .iter()
        .map(|f| format!("{}\n", f.display(atoms)))
        .collect()
}

fn body_formula(rule: &Rule) -> Vec<PropFormula> {
    rule.pos
        .iter()
        .map(|a| PropFormula::atom(*a))
        .chain(
            rule.neg
                .iter()
                .map(|a| PropFormula::not(PropFormula::atom(*a))),
        )
        // ¬¬b is read as b once rules are formulas
        .chain(rule.negneg.iter().map(|a| PropFormula::atom(*a)))
        .collect()
}

/// Each rule read as a propositional implication, double negation dropped.
pub fn rule_implications(program: &CasProgram) -> Vec<PropFormula> {
    program
        .rules()
        .iter()
        .map(|rule| {
            let body = body_formula(rule);
            match rule.head {
                Head::Atom(a) if body.is_empty() => PropFormula::atom(a),
                Head::Atom(a) => PropFormula::implies(PropFormula::and(body), PropFormula::atom(a)),
                Head::Bottom => PropFormula::not(PropFormula::and(body)),
            }
        })
        .collect()
}

/// Support implications together with the ranking atoms and variables they
/// introduce. Ranking atom ids continue after the program's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportImplications {
    pub implications: Vec<PropFormula>,
    pub ranking_atoms: Vec<RankingAtom>,
    pub ranking_variables: Vec<NumericVariable>,
}

impl SupportImplications {
    /// Program atoms followed by the ranking atoms.
    pub fn atoms(&self, program: &CasProgram) -> Vec<Atom> {
        let mut atoms = program.atoms().to_vec();
        atoms.extend(self.ranking_atoms.iter().map(|r| Atom {
            name: ranking_atom_name(&r.head_var, &r.body_var),
            kind: AtomKind::Ranking,
        }));
        atoms
    }
}

fn ranking_variable_name(program: &CasProgram, a: AtomId) -> String {
    format!("lr[{}]", program.atom(a).name)
}

fn ranking_atom_name(head_var: &str, body_var: &str) -> String {
    format!("[{head_var}-1>={body_var}]")
}

struct RankingTable<'p> {
    program: &'p CasProgram,
    bound: Rational,
    atoms: Vec<RankingAtom>,
    index: HashMap<(AtomId, AtomId), AtomId>,
    variables: Vec<NumericVariable>,
    declared: BTreeSet<AtomId>,
}

impl<'p> RankingTable<'p> {
    fn new(program: &'p CasProgram) -> Self {
        RankingTable {
            program,
            bound: Rational::from_integer(program.regular().count().into()),
            atoms: Vec::new(),
            index: HashMap::new(),
            variables: Vec::new(),
            declared: BTreeSet::new(),
        }
    }

    fn variable(&mut self, a: AtomId) -> String {
        let name = ranking_variable_name(self.program, a);
        if self.declared.insert(a) {
            self.variables.push(
                NumericVariable::new(name.clone(), Sort::Int)
                    .with_bounds(Some(Rational::zero()), Some(self.bound.clone())),
            );
        }
        name
    }

    fn atom(&mut self, head: AtomId, body: AtomId) -> AtomId {
        if let Some(id) = self.index.get(&(head, body)) {
            return *id;
        }
        let head_var = self.variable(head);
        let body_var = self.variable(body);
        let id = AtomId((self.program.atoms().len() + self.atoms.len()) as u32);
        self.atoms.push(RankingAtom {
            atom: id,
            head_var,
            body_var,
        });
        self.index.insert((head, body), id);
        id
    }
}

/// One implication `a -> OR(B & ranking)` per regular atom of the program.
pub fn support_implications(
    program: &CasProgram,
    mode: SupportMode,
) -> Result<SupportImplications> {
    if mode == SupportMode::Tight && !is_tight(program) {
        return Err(Error::NotTight);
    }
    Ok(build_support(program, mode))
}

fn build_support(program: &CasProgram, mode: SupportMode) -> SupportImplications {
    let input = program.input_vocabulary();
    let decomposition: Option<SccDecomposition> = match mode {
        SupportMode::SccRanking => Some(sccs(&dependency_graph(program))),
        _ => None,
    };
    let has_rules: BTreeSet<AtomId> = program.heads_of();
    let mut table = RankingTable::new(program);
    let mut implications = Vec::new();

    for a in program.regular() {
        let mut disjuncts = Vec::new();
        for rule in program.bodies_of(a) {
            let mut conjuncts = body_formula(rule);
            for b in &rule.pos {
                if input.contains(b) {
                    continue;
                }
                let ranked = match mode {
                    SupportMode::Tight => false,
                    // an atom without rules is false, so its body never holds
                    SupportMode::PlainRanking => has_rules.contains(b),
                    SupportMode::SccRanking => decomposition
                        .as_ref()
                        .is_some_and(|d| d.in_nontrivial(a) && d.same_component(a, *b)),
                };
                if ranked {
                    conjuncts.push(PropFormula::atom(table.atom(a, *b)));
                }
            }
            disjuncts.push(PropFormula::and(conjuncts));
        }
        implications.push(PropFormula::implies(
            PropFormula::atom(a),
            PropFormula::or(disjuncts),
        ));
    }

    SupportImplications {
        implications,
        ranking_atoms: table.atoms,
        ranking_variables: table.variables,
    }
}

/// Mode used when none is requested: completion for tight programs, SCC
/// rankings otherwise.
pub fn auto_mode(program: &CasProgram) -> SupportMode {
    if is_tight(program) {
        SupportMode::Tight
    } else {
        SupportMode::SccRanking
    }
}

/// Unclausified SMT formula of the program.
pub fn translate_cas(program: &CasProgram, mode: Option<SupportMode>) -> Result<SmtFormula> {
    let mode = mode.unwrap_or_else(|| auto_mode(program));
    let support = support_implications(program, mode)?;
    Ok(assemble(program, support))
}

/// Plain completion regardless of tightness. Its models over-approximate
/// the answer sets of non-tight programs.
#[doc(hidden)]
pub fn translate_completion_only(program: &CasProgram) -> SmtFormula {
    assemble(program, build_support(program, SupportMode::Tight))
}

fn assemble(program: &CasProgram, support: SupportImplications) -> SmtFormula {
    let atoms = support.atoms(program);
    let mut skeleton = rule_implications(program);
    skeleton.extend(support.implications);

    let mut strict_bindings = BTreeMap::new();
    let mut nonstrict_bindings = BTreeMap::new();
    for ca in program.constraint_atoms() {
        match program.atom(ca.atom).kind {
            AtomKind::StrictIrregular => {
                strict_bindings.insert(ca.atom, Binding::Constraint(ca.constraint));
            }
            _ => {
                nonstrict_bindings.insert(ca.atom, ca.constraint);
            }
        }
    }
    for r in support.ranking_atoms {
        strict_bindings.insert(r.atom, Binding::Ranking(r));
    }

    SmtFormula {
        atoms,
        skeleton,
        strict_bindings,
        nonstrict_bindings,
        variables: program.variables().to_vec(),
        ranking_variables: support.ranking_variables,
        source_atoms: program.atom_ids().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parser::parse_program;

    fn show(program: &CasProgram, formulas: &[PropFormula], atoms: Option<&[Atom]>) -> Vec<String> {
        let atoms = atoms.unwrap_or(program.atoms());
        formulas
            .iter()
            .map(|f| f.display(atoms).to_string())
            .collect()
    }

    #[test]
    fn rule_implication_shapes() {
        let p = parse_program("lightOn :- switch, not am. :- not lightOn. a. {c} :- a.").unwrap();
        assert_eq!(
            show(&p, &rule_implications(&p), None),
            vec!["(switch & ~am) -> lightOn", "lightOn", "a", "(a & c) -> c",]
        );
    }

    #[test]
    fn tight_support_for_p1() {
        let p = parse_program(fixtures::P1).unwrap();
        let s = support_implications(&p, SupportMode::Tight).unwrap();
        let lines = show(&p, &s.implications, None);
        assert_eq!(
            lines,
            vec!["switch -> switch", "lightOn -> (switch & ~am)", "am -> am",]
        );
        assert!(s.ranking_atoms.is_empty());
    }

    #[test]
    fn plain_ranking_self_loop() {
        let p = parse_program(fixtures::SELF_LOOP).unwrap();
        let s = support_implications(&p, SupportMode::PlainRanking).unwrap();
        let atoms = s.atoms(&p);
        assert_eq!(
            show(&p, &s.implications, Some(&atoms)),
            vec!["p -> (p & [lr[p]-1>=lr[p]])"]
        );
        assert_eq!(s.ranking_variables.len(), 1);
        let lr = &s.ranking_variables[0];
        assert_eq!(lr.lower, Some(Rational::zero()));
        assert_eq!(lr.upper, Some(Rational::one()));
        // lr_p - 1 >= lr_p is unsatisfiable: canonical form is a constant
        assert_eq!(s.ranking_atoms[0].constraint().canonical_key(), "1 <= 0");
    }

    #[test]
    fn atom_without_rules_is_false() {
        let p = parse_program(":- not a.").unwrap();
        let s = support_implications(&p, SupportMode::Tight).unwrap();
        assert_eq!(show(&p, &s.implications, None), vec!["a -> false"]);
    }

    #[test]
    fn tight_mode_refused_for_loops() {
        let p = parse_program(fixtures::SELF_LOOP).unwrap();
        assert!(matches!(
            support_implications(&p, SupportMode::Tight),
            Err(Error::NotTight)
        ));
        assert!(matches!(
            translate_cas(&p, Some(SupportMode::Tight)),
            Err(Error::NotTight)
        ));
    }

    #[test]
    fn scc_mode_ranks_only_inside_components() {
        let p = parse_program("a :- b. b :- a. c :- a. a :- not d.").unwrap();
        let s = support_implications(&p, SupportMode::SccRanking).unwrap();
        let atoms = s.atoms(&p);
        assert_eq!(
            show(&p, &s.implications, Some(&atoms)),
            vec![
                "a -> ((b & [lr[a]-1>=lr[b]]) | ~d)",
                "b -> (a & [lr[b]-1>=lr[a]])",
                "c -> a",
                "d -> false",
            ]
        );
        let plain = support_implications(&p, SupportMode::PlainRanking).unwrap();
        let atoms = plain.atoms(&p);
        assert_eq!(
            show(&p, &plain.implications, Some(&atoms))[2],
            "c -> (a & [lr[c]-1>=lr[a]])"
        );
    }

    #[test]
    fn ranking_atoms_are_shared() {
        let p = parse_program("a :- b, c. a :- b. b :- a. c.").unwrap();
        let s = support_implications(&p, SupportMode::PlainRanking).unwrap();
        let names: Vec<String> = s
            .ranking_atoms
            .iter()
            .map(|r| ranking_atom_name(&r.head_var, &r.body_var))
            .collect();
        assert_eq!(
            names,
            vec!["[lr[a]-1>=lr[b]]", "[lr[a]-1>=lr[c]]", "[lr[b]-1>=lr[a]]"]
        );
    }

    #[test]
    fn translate_collects_bindings() {
        let p = parse_program("a :- b. b :- a.").unwrap();
        let f = translate_cas(&p, None).unwrap();
        assert_eq!(f.strict_bindings().len(), 2);
        assert!(f.nonstrict_bindings().is_empty());
        assert_eq!(f.ranking_variables().len(), 2);
        assert_eq!(f.source_atoms().len(), 2);

        let p = parse_program(fixtures::P1_NONSTRICT).unwrap();
        let f = translate_cas(&p, None).unwrap();
        assert!(f.strict_bindings().is_empty());
        assert_eq!(f.nonstrict_bindings().len(), 4);

        let p = parse_program("a :- not b. b :- not a.").unwrap();
        let f = translate_cas(&p, None).unwrap();
        assert!(f.strict_bindings().is_empty() && f.ranking_variables().is_empty());
    }
}
