use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Atom, AtomId};

/// Propositional formula over atom ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Atom(AtomId),
    True,
    False,
    Not(Box<PropFormula>),
    And(Vec<PropFormula>),
    Or(Vec<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(a: AtomId) -> Self {
        PropFormula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        match f {
            PropFormula::Not(inner) => *inner,
            PropFormula::True => PropFormula::False,
            PropFormula::False => PropFormula::True,
            f => PropFormula::Not(Box::new(f)),
        }
    }

    /// Conjunction; a single conjunct is returned as is, none gives ⊤.
    pub fn and(mut parts: Vec<PropFormula>) -> Self {
        match parts.len() {
            0 => PropFormula::True,
            1 => parts.pop().expect("one part"),
            _ => PropFormula::And(parts),
        }
    }

    /// Disjunction; a single disjunct is returned as is, none gives ⊥.
    pub fn or(mut parts: Vec<PropFormula>) -> Self {
        match parts.len() {
            0 => PropFormula::False,
            1 => parts.pop().expect("one part"),
            _ => PropFormula::Or(parts),
        }
    }

    pub fn implies(lhs: PropFormula, rhs: PropFormula) -> Self {
        PropFormula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn eval(&self, truth: &dyn Fn(AtomId) -> bool) -> bool {
        match self {
            PropFormula::Atom(a) => truth(*a),
            PropFormula::True => true,
            PropFormula::False => false,
            PropFormula::Not(f) => !f.eval(truth),
            PropFormula::And(fs) => fs.iter().all(|f| f.eval(truth)),
            PropFormula::Or(fs) => fs.iter().any(|f| f.eval(truth)),
            PropFormula::Implies(a, b) => !a.eval(truth) || b.eval(truth),
        }
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a);
        });
        out
    }

    /// Calls `f` for every atom leaf in left-to-right order.
    pub fn visit_atoms(&self, f: &mut dyn FnMut(AtomId)) {
        match self {
            PropFormula::Atom(a) => f(*a),
            PropFormula::True | PropFormula::False => {}
            PropFormula::Not(g) => g.visit_atoms(f),
            PropFormula::And(gs) | PropFormula::Or(gs) => gs.iter().for_each(|g| g.visit_atoms(f)),
            PropFormula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// `Some((atom, polarity))` when the formula is a literal.
    pub fn as_literal(&self) -> Option<(AtomId, bool)> {
        match self {
            PropFormula::Atom(a) => Some((*a, true)),
            PropFormula::Not(inner) => match **inner {
                PropFormula::Atom(a) => Some((a, false)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Literals of a clause (a literal or a disjunction of literals).
    pub fn clause_literals(&self) -> Option<Vec<(AtomId, bool)>> {
        match self {
            PropFormula::Or(parts) => parts.iter().map(|p| p.as_literal()).collect(),
            PropFormula::False => Some(Vec::new()),
            other => other.as_literal().map(|l| vec![l]),
        }
    }

    pub fn display<'a>(&'a self, atoms: &'a [Atom]) -> impl fmt::Display + 'a {
        FormulaDisplay {
            formula: self,
            atoms,
        }
    }
}

struct FormulaDisplay<'a> {
    formula: &'a PropFormula,
    atoms: &'a [Atom],
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, g: &PropFormula, top: bool) -> fmt::Result {
        let joined = |f: &mut fmt::Formatter<'_>, parts: &[PropFormula], sep: &str| {
            if !top {
                f.write_str("(")?;
            }
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                self.write(f, p, false)?;
            }
            if !top {
                f.write_str(")")?;
            }
            Ok(())
        };
        match g {
            PropFormula::Atom(a) => f.write_str(&self.atoms[a.index()].name),
            PropFormula::True => f.write_str("true"),
            PropFormula::False => f.write_str("false"),
            PropFormula::Not(inner) => {
                f.write_str("~")?;
                self.write(f, inner, false)
            }
            PropFormula::And(parts) => joined(f, parts, " & "),
            PropFormula::Or(parts) => joined(f, parts, " | "),
            PropFormula::Implies(a, b) => {
                if !top {
                    f.write_str("(")?;
                }
                self.write(f, a, false)?;
                f.write_str(" -> ")?;
                self.write(f, b, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, true)
    }
}
