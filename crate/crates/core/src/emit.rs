//! SMT-LIB 2 text for an [`SmtFormula`].

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{AtomId, Constraint, NumericVariable, Rational, Relation, Sort};
use crate::translate::{PropFormula, SmtFormula};

/// Prefix of every numeric constant. Atom prefixes must not start with `v`.
pub const VARIABLE_PREFIX: &str = "v_";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmissionConfig {
    pub logic_override: Option<String>,
    pub produce_models: bool,
    pub atom_prefix: String,
}

impl Default for EmissionConfig {
    fn default() -> Self {
        EmissionConfig {
            logic_override: None,
            produce_models: true,
            atom_prefix: "b_".to_string(),
        }
    }
}

impl EmissionConfig {
    pub fn validate(&self) -> Result<()> {
        let p = &self.atom_prefix;
        if p.is_empty()
            || !p.chars().all(is_simple_char)
            || p.starts_with(|c: char| c.is_ascii_digit())
        {
            return Err(Error::Config(format!(
                "atom prefix `{p}` is not a simple SMT-LIB symbol"
            )));
        }
        if p.starts_with('v') {
            return Err(Error::Config(format!(
                "atom prefix `{p}` may collide with variable symbols `{VARIABLE_PREFIX}*`"
            )));
        }
        Ok(())
    }
}

fn is_simple_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

/// Quotes a symbol with `|...|` unless it is a simple symbol.
pub fn smt_symbol(raw: &str) -> String {
    let simple = !raw.is_empty()
        && raw.chars().all(is_simple_char)
        && !raw.starts_with(|c: char| c.is_ascii_digit());
    if simple {
        raw.to_string()
    } else {
        format!("|{raw}|")
    }
}

/// Symbol names (unquoted) for atoms and variables of one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    atoms: Vec<String>,
    variables: BTreeMap<String, String>,
    by_symbol: HashMap<String, Symbol>,
}

/// What an SMT constant stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symbol {
    Atom(AtomId),
    Variable(String),
}

impl SymbolTable {
    pub fn new(formula: &SmtFormula, atom_prefix: &str) -> Self {
        let atoms: Vec<String> = formula
            .atoms()
            .iter()
            .map(|a| format!("{atom_prefix}{}", a.name))
            .collect();
        let variables: BTreeMap<String, String> = formula
            .all_variables()
            .map(|v| (v.name.clone(), format!("{VARIABLE_PREFIX}{}", v.name)))
            .collect();
        let mut by_symbol = HashMap::new();
        for (i, s) in atoms.iter().enumerate() {
            by_symbol.insert(s.clone(), Symbol::Atom(AtomId(i as u32)));
        }
        for (name, s) in &variables {
            by_symbol.insert(s.clone(), Symbol::Variable(name.clone()));
        }
        SymbolTable {
            atoms,
            variables,
            by_symbol,
        }
    }

    pub fn atom(&self, id: AtomId) -> &str {
        &self.atoms[id.index()]
    }

    pub fn variable(&self, name: &str) -> Option<&str> {
        self.variables.get(name).map(String::as_str)
    }

    /// Looks up an unquoted symbol.
    pub fn resolve(&self, symbol: &str) -> Option<&Symbol> {
        self.by_symbol.get(symbol)
    }
}

fn sorts(formula: &SmtFormula) -> HashMap<&str, Sort> {
    formula
        .all_variables()
        .map(|v| (v.name.as_str(), v.sort))
        .collect()
}

/// `x - y REL k` or `x REL k` with unit coefficients.
fn is_difference(c: &Constraint) -> bool {
    match c.lhs().terms() {
        [] => true,
        [(a, _)] => a.abs().is_one(),
        [(a, _), (b, _)] => (a + b).is_zero() && a.abs().is_one(),
        _ => false,
    }
}

pub fn select_logic(formula: &SmtFormula) -> &'static str {
    let has_int = formula.all_variables().any(|v| v.sort == Sort::Int);
    let has_real = formula.all_variables().any(|v| v.sort == Sort::Real);
    match (has_int, has_real) {
        (true, true) => "QF_LIRA",
        (false, true) => "QF_LRA",
        _ => {
            if formula
                .bound_constraints()
                .all(|(_, c, _)| is_difference(&c))
            {
                "QF_IDL"
            } else {
                "QF_LIA"
            }
        }
    }
}

/// Atom ids in order of first appearance in the skeleton, then the rest by id.
fn atoms_by_first_use(formula: &SmtFormula) -> Vec<AtomId> {
    let mut seen = vec![false; formula.atoms().len()];
    let mut order = Vec::with_capacity(seen.len());
    for f in formula.skeleton() {
        f.visit_atoms(&mut |a| {
            if !seen[a.index()] {
                seen[a.index()] = true;
                order.push(a);
            }
        });
    }
    for (i, s) in seen.iter().enumerate() {
        if !s {
            order.push(AtomId(i as u32));
        }
    }
    order
}

struct Writer<'a> {
    symbols: &'a SymbolTable,
    sorts: HashMap<&'a str, Sort>,
}

impl Writer<'_> {
    fn number(value: &Rational, real: bool) -> String {
        let magnitude = value.abs();
        let body = if !real {
            magnitude.to_integer().to_string()
        } else if magnitude.is_integer() {
            format!("{}.0", magnitude.numer())
        } else {
            format!("(/ {}.0 {}.0)", magnitude.numer(), magnitude.denom())
        };
        if value.is_negative() {
            format!("(- {body})")
        } else {
            body
        }
    }

    fn variable(&self, name: &str, real: bool) -> String {
        let symbol = smt_symbol(self.symbols.variable(name).expect("declared variable"));
        if real && self.sorts.get(name) == Some(&Sort::Int) {
            format!("(to_real {symbol})")
        } else {
            symbol
        }
    }

    fn constraint(&self, c: &Constraint) -> String {
        let real = c
            .variables()
            .any(|v| self.sorts.get(v) == Some(&Sort::Real));
        let terms = c.lhs().terms();
        // -k*x REL c is written k*x REL' -c; difference logic rejects (- x)
        if let [(k, v)] = terms {
            if k.is_negative() {
                let var = self.variable(v, real);
                let lhs = if (-k).is_one() {
                    var
                } else {
                    format!("(* {} {var})", Self::number(&-k, real))
                };
                let rhs = Self::number(c.lhs().constant_term(), real);
                let op = match c.relation() {
                    Relation::Lt => ">",
                    Relation::Le => ">=",
                    Relation::Gt => "<",
                    Relation::Ge => "<=",
                    Relation::Eq | Relation::Ne => "=",
                };
                let atom = format!("({op} {lhs} {rhs})");
                return if c.relation() == Relation::Ne {
                    format!("(not {atom})")
                } else {
                    atom
                };
            }
        }
        let rendered: Vec<String> = terms
            .iter()
            .map(|(k, v)| {
                let var = self.variable(v, real);
                if k.is_one() {
                    var
                } else if (-k).is_one() {
                    format!("(- {var})")
                } else {
                    format!("(* {} {var})", Self::number(k, real))
                }
            })
            .collect();
        let lhs = match (terms, rendered.as_slice()) {
            ([], _) => Self::number(&Rational::zero(), real),
            (_, [single]) => single.clone(),
            ([(a, x), (b, y)], _) if a.is_one() && (-b).is_one() => {
                format!("(- {} {})", self.variable(x, real), self.variable(y, real))
            }
            ([(a, y), (b, x)], _) if (-a).is_one() && b.is_one() => {
                format!("(- {} {})", self.variable(x, real), self.variable(y, real))
            }
            _ => format!("(+ {})", rendered.join(" ")),
        };
        let rhs = Self::number(&-c.lhs().constant_term(), real);
        match c.relation() {
            Relation::Lt => format!("(< {lhs} {rhs})"),
            Relation::Le => format!("(<= {lhs} {rhs})"),
            Relation::Gt => format!("(> {lhs} {rhs})"),
            Relation::Ge => format!("(>= {lhs} {rhs})"),
            Relation::Eq => format!("(= {lhs} {rhs})"),
            Relation::Ne => format!("(not (= {lhs} {rhs}))"),
        }
    }

    fn atom(&self, a: AtomId) -> String {
        smt_symbol(self.symbols.atom(a))
    }

    fn formula(&self, f: &PropFormula) -> String {
        let join = |op: &str, parts: &[PropFormula]| {
            let inner: Vec<String> = parts.iter().map(|p| self.formula(p)).collect();
            format!("({op} {})", inner.join(" "))
        };
        match f {
            PropFormula::Atom(a) => self.atom(*a),
            PropFormula::True => "true".to_string(),
            PropFormula::False => "false".to_string(),
            PropFormula::Not(g) => format!("(not {})", self.formula(g)),
            PropFormula::And(gs) => join("and", gs),
            PropFormula::Or(gs) => join("or", gs),
            PropFormula::Implies(a, b) => format!("(=> {} {})", self.formula(a), self.formula(b)),
        }
    }

    fn bounds(&self, v: &NumericVariable, out: &mut String) {
        let real = v.sort == Sort::Real;
        let symbol = smt_symbol(self.symbols.variable(&v.name).expect("declared variable"));
        if let Some(lo) = &v.lower {
            let _ = writeln!(out, "(assert (<= {} {symbol}))", Self::number(lo, real));
        }
        if let Some(hi) = &v.upper {
            let _ = writeln!(out, "(assert (<= {symbol} {}))", Self::number(hi, real));
        }
    }
}

/// Emitted text together with the symbols it declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emission {
    /// Everything up to, but excluding, `(check-sat)`.
    pub body: String,
    pub symbols: SymbolTable,
}

impl Emission {
    pub fn text(&self) -> String {
        format!("{}(check-sat)\n", self.body)
    }
}

pub fn emit_parts(formula: &SmtFormula, config: &EmissionConfig) -> Result<Emission> {
    config.validate()?;
    let symbols = SymbolTable::new(formula, &config.atom_prefix);
    let writer = Writer {
        symbols: &symbols,
        sorts: sorts(formula),
    };
    let mut out = String::new();
    if config.produce_models {
        out.push_str("(set-option :produce-models true)\n");
    }
    let logic = config
        .logic_override
        .as_deref()
        .unwrap_or_else(|| select_logic(formula));
    let _ = writeln!(out, "(set-logic {logic})");

    for a in atoms_by_first_use(formula) {
        let _ = writeln!(out, "(declare-const {} Bool)", writer.atom(a));
    }
    for v in formula.all_variables() {
        let sort = match v.sort {
            Sort::Int => "Int",
            Sort::Real => "Real",
        };
        let symbol = smt_symbol(symbols.variable(&v.name).expect("declared variable"));
        let _ = writeln!(out, "(declare-const {symbol} {sort})");
    }
    for (a, binding) in formula.strict_bindings() {
        let _ = writeln!(
            out,
            "(assert (= {} {}))",
            writer.atom(*a),
            writer.constraint(&binding.constraint())
        );
    }
    for (a, c) in formula.nonstrict_bindings() {
        let _ = writeln!(
            out,
            "(assert (=> {} {}))",
            writer.atom(*a),
            writer.constraint(c)
        );
    }
    for v in formula.all_variables() {
        writer.bounds(v, &mut out);
    }
    for f in formula.skeleton() {
        let _ = writeln!(out, "(assert {})", writer.formula(f));
    }
    Ok(Emission { body: out, symbols })
}

/// Complete SMT-LIB script ending in `(check-sat)`.
pub fn emit(formula: &SmtFormula, config: &EmissionConfig) -> Result<String> {
    Ok(emit_parts(formula, config)?.text())
}

/// Renders a Boolean formula over the formula's atoms, for blocking clauses.
pub fn render_formula(formula: &SmtFormula, symbols: &SymbolTable, f: &PropFormula) -> String {
    Writer {
        symbols,
        sorts: sorts(formula),
    }
    .formula(f)
}

/// `(= v_x 12)` style equality for a variable value.
pub fn render_value_equality(
    formula: &SmtFormula,
    symbols: &SymbolTable,
    variable: &str,
    value: &Rational,
) -> Option<String> {
    let sort = formula.all_variables().find(|v| v.name == variable)?.sort;
    let symbol = smt_symbol(symbols.variable(variable)?);
    Some(format!(
        "(= {symbol} {})",
        Writer::number(value, sort == Sort::Real)
    ))
}
