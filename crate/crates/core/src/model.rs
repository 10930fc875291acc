//! Ground constraint answer set programs: atoms, rules, linear constraints,
//! valuations and extended answer sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every coefficient, bound and value.
pub type Rational = BigRational;

/// Index of an atom in its owning vocabulary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Regular,
    StrictIrregular,
    NonStrictIrregular,
    /// Introduced by clausification.
    Auxiliary,
    /// Level-ranking comparison introduced by translation.
    Ranking,
}

impl AtomKind {
    pub fn is_irregular(self) -> bool {
        matches!(
            self,
            AtomKind::StrictIrregular | AtomKind::NonStrictIrregular
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub name: String,
    pub kind: AtomKind,
}

impl Atom {
    /// Rendering used in answer-set output: strict atoms carry a trailing `!`.
    pub fn display_name(&self) -> String {
        match self.kind {
            AtomKind::StrictIrregular => format!("{}!", self.name),
            _ => self.name.clone(),
        }
    }
}

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Head {
    Atom(AtomId),
    Bottom,
}

impl Head {
    pub fn atom(self) -> Option<AtomId> {
        match self {
            Head::Atom(a) => Some(a),
            Head::Bottom => None,
        }
    }
}

/// `head :- pos, not neg, not not negneg.`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: Head,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
    pub negneg: Vec<AtomId>,
    pub span: Span,
}

impl Rule {
    pub fn new(head: Head, pos: Vec<AtomId>, neg: Vec<AtomId>, negneg: Vec<AtomId>) -> Self {
        Rule {
            head,
            pos: dedup(pos),
            neg: dedup(neg),
            negneg: dedup(negneg),
            span: Span::default(),
        }
    }

    pub fn is_denial(&self) -> bool {
        self.head == Head::Bottom
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.negneg.is_empty()
    }

    /// Every atom mentioned by the rule, head first.
    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.head
            .atom()
            .into_iter()
            .chain(self.pos.iter().copied())
            .chain(self.neg.iter().copied())
            .chain(self.negneg.iter().copied())
    }

    /// Whether the atom set satisfies the whole body, read classically.
    pub fn body_holds(&self, x: &BTreeSet<AtomId>) -> bool {
        self.pos.iter().all(|a| x.contains(a))
            && self.neg.iter().all(|a| !x.contains(a))
            && self.negneg.iter().all(|a| x.contains(a))
    }
}

fn dedup(mut atoms: Vec<AtomId>) -> Vec<AtomId> {
    let mut seen = BTreeSet::new();
    atoms.retain(|a| seen.insert(*a));
    atoms
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Int,
    Real,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Int => "int",
            Sort::Real => "real",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericVariable {
    pub name: String,
    pub sort: Sort,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl NumericVariable {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        NumericVariable {
            name: name.into(),
            sort,
            lower: None,
            upper: None,
        }
    }

    pub fn with_bounds(mut self, lower: Option<Rational>, upper: Option<Rational>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }
}

/// `sum(coefficient * variable) + constant`, kept merged, sorted by variable
/// name and free of zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearExpression {
    terms: Vec<(Rational, String)>,
    constant: Rational,
}

impl LinearExpression {
    pub fn new<I, S>(terms: I, constant: Rational) -> Self
    where
        I: IntoIterator<Item = (Rational, S)>,
        S: Into<String>,
    {
        let mut merged: BTreeMap<String, Rational> = BTreeMap::new();
        for (c, v) in terms {
            *merged.entry(v.into()).or_insert_with(Rational::zero) += c;
        }
        LinearExpression {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(v, c)| (c, v))
                .collect(),
            constant,
        }
    }

    pub fn constant(value: Rational) -> Self {
        LinearExpression {
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn variable(name: impl Into<String>) -> Self {
        LinearExpression::new([(Rational::one(), name.into())], Rational::zero())
    }

    pub fn terms(&self) -> &[(Rational, String)] {
        &self.terms
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|(_, v)| v.as_str())
    }

    pub fn sub(&self, other: &LinearExpression) -> LinearExpression {
        LinearExpression::new(
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().map(|(c, v)| (-c, v.clone()))),
            &self.constant - &other.constant,
        )
    }

    pub fn scale(&self, factor: &Rational) -> LinearExpression {
        LinearExpression::new(
            self.terms.iter().map(|(c, v)| (c * factor, v.clone())),
            &self.constant * factor,
        )
    }

    pub fn negate(&self) -> LinearExpression {
        self.scale(&-Rational::one())
    }

    pub fn evaluate(&self, valuation: &Valuation) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for (c, v) in &self.terms {
            acc += c * valuation.get(v)?;
        }
        Some(acc)
    }

    pub fn is_integral(&self) -> bool {
        self.constant.is_integer() && self.terms.iter().all(|(c, _)| c.is_integer())
    }

    /// Positive rescaling to coprime integer coefficients (constant included).
    fn primitive(&self) -> LinearExpression {
        let denominators = self
            .terms
            .iter()
            .map(|(c, _)| c.denom().clone())
            .chain(std::iter::once(self.constant.denom().clone()));
        let lcm = denominators.fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let scaled = self.scale(&Rational::from_integer(lcm));
        let gcd = scaled
            .terms
            .iter()
            .map(|(c, _)| c.numer().clone())
            .chain(std::iter::once(scaled.constant.numer().clone()))
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        if gcd.is_zero() || gcd.is_one() {
            scaled
        } else {
            scaled.scale(&Rational::new(BigInt::one(), gcd))
        }
    }
}

impl fmt::Display for LinearExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in &self.terms {
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if magnitude.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{}*{v}", fmt_rational(&magnitude))?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", fmt_rational(&self.constant))
        } else if self.constant.is_negative() {
            write!(f, " - {}", fmt_rational(&-&self.constant))
        } else if self.constant.is_positive() {
            write!(f, " + {}", fmt_rational(&self.constant))
        } else {
            Ok(())
        }
    }
}

/// `p` for integers, `p/q` otherwise.
pub fn fmt_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Ne => "!=",
        }
    }

    pub fn negated(self) -> Relation {
        match self {
            Relation::Lt => Relation::Ge,
            Relation::Ge => Relation::Lt,
            Relation::Le => Relation::Gt,
            Relation::Gt => Relation::Le,
            Relation::Eq => Relation::Ne,
            Relation::Ne => Relation::Eq,
        }
    }

    pub fn compare(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A linear comparison `lhs REL 0` in canonical form: coprime integer
/// coefficients, relation one of `<`, `<=`, `==`, `!=`, and for the two
/// symmetric relations a positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    lhs: LinearExpression,
    relation: Relation,
}

impl Constraint {
    /// Builds `left REL right` and normalizes it.
    pub fn new(left: &LinearExpression, relation: Relation, right: &LinearExpression) -> Self {
        Constraint::from_difference(left.sub(right), relation)
    }

    /// Normalizes `lhs REL 0`.
    pub fn from_difference(lhs: LinearExpression, relation: Relation) -> Self {
        let lhs = lhs.primitive();
        let (lhs, relation) = match relation {
            Relation::Gt => (lhs.negate(), Relation::Lt),
            Relation::Ge => (lhs.negate(), Relation::Le),
            Relation::Eq | Relation::Ne => {
                let leading_negative = match lhs.terms.first() {
                    Some((c, _)) => c.is_negative(),
                    None => lhs.constant.is_negative(),
                };
                if leading_negative {
                    (lhs.negate(), relation)
                } else {
                    (lhs, relation)
                }
            }
            _ => (lhs, relation),
        };
        Constraint { lhs, relation }
    }

    pub fn lhs(&self) -> &LinearExpression {
        &self.lhs
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    /// The constraint satisfied exactly when this one is not.
    pub fn complement(&self) -> Constraint {
        Constraint::from_difference(self.lhs.clone(), self.relation.negated())
    }

    pub fn canonical_key(&self) -> String {
        format!("{} {} 0", self.lhs, self.relation)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.lhs.variables()
    }

    /// `None` when the valuation misses a referenced variable.
    pub fn holds(&self, valuation: &Valuation) -> Option<bool> {
        let value = self.lhs.evaluate(valuation)?;
        Some(self.relation.compare(&value, &Rational::zero()))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_key())
    }
}

/// An irregular atom together with the constraint it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintAtom {
    pub atom: AtomId,
    pub constraint: Constraint,
}

impl ConstraintAtom {
    pub fn canonical_key(&self) -> String {
        self.constraint.canonical_key()
    }
}

/// A validated-or-not ground CAS program. Construct through the parser.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CasProgram {
    atoms: Vec<Atom>,
    rules: Vec<Rule>,
    constraints: BTreeMap<AtomId, Constraint>,
    variables: Vec<NumericVariable>,
}

impl CasProgram {
    pub(crate) fn from_parts(
        atoms: Vec<Atom>,
        rules: Vec<Rule>,
        constraints: BTreeMap<AtomId, Constraint>,
        variables: Vec<NumericVariable>,
    ) -> Self {
        CasProgram {
            atoms,
            rules,
            constraints,
            variables,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn atom_ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.atoms.len() as u32).map(AtomId)
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atoms
            .iter()
            .position(|a| a.name == name)
            .map(|i| AtomId(i as u32))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn variables(&self) -> &[NumericVariable] {
        &self.variables
    }

    pub fn variable(&self, name: &str) -> Option<&NumericVariable> {
        self.variables.iter().find(|v| v.name == name)
    }

    fn ids_of_kind(&self, kind: AtomKind) -> impl Iterator<Item = AtomId> + '_ {
        self.atom_ids()
            .filter(move |id| self.atom(*id).kind == kind)
    }

    /// σ_r: regular atoms occurring in the program.
    pub fn regular(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.ids_of_kind(AtomKind::Regular)
    }

    /// σ_e
    pub fn strict(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.ids_of_kind(AtomKind::StrictIrregular)
    }

    /// σ_i
    pub fn nonstrict(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.ids_of_kind(AtomKind::NonStrictIrregular)
    }

    /// The input vocabulary σ_e ∪ σ_i.
    pub fn input_vocabulary(&self) -> BTreeSet<AtomId> {
        self.atom_ids()
            .filter(|id| self.atom(*id).kind.is_irregular())
            .collect()
    }

    pub fn constraint(&self, atom: AtomId) -> Option<&Constraint> {
        self.constraints.get(&atom)
    }

    pub fn constraint_atoms(&self) -> impl Iterator<Item = ConstraintAtom> + '_ {
        self.constraints.iter().map(|(a, c)| ConstraintAtom {
            atom: *a,
            constraint: c.clone(),
        })
    }

    /// Bodies(Π, a): rules with head `a`, in input order.
    pub fn bodies_of(&self, atom: AtomId) -> Vec<&Rule> {
        self.rules
            .iter()
            .filter(|r| r.head == Head::Atom(atom))
            .collect()
    }

    /// hd(Π)
    pub fn heads_of(&self) -> BTreeSet<AtomId> {
        self.rules.iter().filter_map(|r| r.head.atom()).collect()
    }

    /// Variables mentioned by any irregular atom, sorted by name.
    pub fn referenced_variables(&self) -> BTreeSet<&str> {
        self.constraints
            .values()
            .flat_map(|c| c.variables())
            .collect()
    }

    pub fn names(&self, atoms: &BTreeSet<AtomId>) -> BTreeSet<String> {
        atoms.iter().map(|a| self.atom(*a).name.clone()).collect()
    }
}

impl fmt::Display for CasProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.variables {
            write!(f, "cvar {} : {}", v.name, v.sort)?;
            if let (Some(lo), Some(hi)) = (&v.lower, &v.upper) {
                write!(f, " [{},{}]", fmt_rational(lo), fmt_rational(hi))?;
            }
            writeln!(f, ".")?;
        }
        let name = |id: &AtomId| self.atom(*id).display_name();
        for rule in &self.rules {
            let mut body: Vec<String> = rule.pos.iter().map(name).collect();
            body.extend(rule.neg.iter().map(|a| format!("not {}", name(a))));
            body.extend(rule.negneg.iter().map(|a| format!("not not {}", name(a))));
            match rule.head {
                Head::Atom(h) if body.is_empty() => writeln!(f, "{}.", name(&h))?,
                Head::Atom(h) => writeln!(f, "{} :- {}.", name(&h), body.join(", "))?,
                Head::Bottom => writeln!(f, ":- {}.", body.join(", "))?,
            }
        }
        Ok(())
    }
}

/// ν: assignment of exact values to numeric variables.
#[derive(Debug, Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct Valuation(BTreeMap<String, Rational>);

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: Rational) {
        self.0.insert(name.into(), value);
    }

    pub fn remove(&mut self, name: &str) -> Option<Rational> {
        self.0.remove(name)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }
}

impl FromIterator<(String, Rational)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (String, Rational)>>(iter: T) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_rational(v)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// ⟨X, ν⟩
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedAnswerSet {
    pub atoms: BTreeSet<AtomId>,
    pub valuation: Valuation,
}

impl ExtendedAnswerSet {
    /// Canonical one-line form: atoms sorted lexicographically (strict atoms
    /// with a trailing `!`), then `| var=value ...` when ν is non-empty.
    /// The empty atom set renders as `{}`.
    pub fn render(&self, program: &CasProgram) -> String {
        let mut names: Vec<String> = self
            .atoms
            .iter()
            .map(|a| program.atom(*a).display_name())
            .collect();
        names.sort();
        let mut line = if names.is_empty() {
            "{}".to_string()
        } else {
            names.join(" ")
        };
        if !self.valuation.is_empty() {
            line.push_str(" | ");
            line.push_str(&self.valuation.to_string());
        }
        line
    }
}
