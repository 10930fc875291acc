//! Text format for ground CAS programs.
//!
//! ```text
//! cvar x : int [0,23].
//! {switch}.
//! lightOn :- switch, not am.
//! :- not lightOn.
//! :- am, [x >= 12]!.
//! ```
//!
//! `[e1 REL e2]` is a non-strict irregular atom, `[e1 REL e2]!` a strict one.
//! Choice rules `{a} :- B.` are expanded to `a :- not not a, B.`

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{
    Atom, AtomId, AtomKind, CasProgram, Constraint, Head, LinearExpression, NumericVariable,
    Rational, Relation, Rule, Sort, Span,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    fn error(span: Span, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            line: span.line.max(1),
            column: span.column.max(1),
            message: message.into(),
            severity: Severity::Error,
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// Parses and validates a program.
pub fn parse_program(source: &str) -> Result<CasProgram> {
    let program = parse_unvalidated(source)?;
    let diagnostics = validate(&program);
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        return Err(Error::Parse(diagnostics));
    }
    Ok(program)
}

/// Parses without checking the CAS program invariants; only syntax errors
/// (and strict/non-strict conflicts, which the model cannot represent) are
/// reported.
pub fn parse_unvalidated(source: &str) -> Result<CasProgram> {
    let tokens = lex(source).map_err(|d| Error::Parse(vec![d]))?;
    let mut parser = Parser::new(tokens);
    parser.program();
    if parser.diagnostics.is_empty() {
        Ok(parser.finish())
    } else {
        Err(Error::Parse(parser.diagnostics))
    }
}

/// One diagnostic per violated invariant; empty for a legal program.
pub fn validate(program: &CasProgram) -> Vec<ParseDiagnostic> {
    let mut out = Vec::new();

    let mut first_use: HashMap<AtomId, Span> = HashMap::new();
    for rule in program.rules() {
        for a in rule.atoms() {
            first_use.entry(a).or_insert(rule.span);
        }
    }
    let span_of = |a: AtomId| first_use.get(&a).copied().unwrap_or_default();

    for rule in program.rules() {
        if let Head::Atom(h) = rule.head {
            let atom = program.atom(h);
            if atom.kind != AtomKind::Regular {
                out.push(ParseDiagnostic::error(
                    rule.span,
                    format!("irregular atom `{}` in rule head", atom.display_name()),
                ));
            }
        }
    }

    for id in program.atom_ids() {
        let atom = program.atom(id);
        match atom.kind {
            AtomKind::Auxiliary | AtomKind::Ranking => out.push(ParseDiagnostic::error(
                span_of(id),
                format!("translation-only atom `{}` in program", atom.name),
            )),
            AtomKind::StrictIrregular | AtomKind::NonStrictIrregular => {
                if program.constraint(id).is_none() {
                    out.push(ParseDiagnostic::error(
                        span_of(id),
                        format!("irregular atom `{}` has no constraint", atom.name),
                    ));
                }
            }
            AtomKind::Regular => {
                if program.constraint(id).is_some() {
                    out.push(ParseDiagnostic::error(
                        span_of(id),
                        format!("regular atom `{}` carries a constraint", atom.name),
                    ));
                }
            }
        }
    }

    let mut seen = HashMap::new();
    for v in program.variables() {
        if seen.insert(v.name.as_str(), ()).is_some() {
            out.push(ParseDiagnostic::error(
                Span::default(),
                format!("constraint variable `{}` declared twice", v.name),
            ));
        }
        if let (Some(lo), Some(hi)) = (&v.lower, &v.upper) {
            if lo > hi {
                out.push(ParseDiagnostic::error(
                    Span::default(),
                    format!(
                        "empty domain for `{}`: lower bound exceeds upper bound",
                        v.name
                    ),
                ));
            }
        }
        if v.sort == Sort::Int
            && [&v.lower, &v.upper]
                .into_iter()
                .flatten()
                .any(|b| !b.is_integer())
        {
            out.push(ParseDiagnostic::error(
                Span::default(),
                format!("int variable `{}` has a non-integer bound", v.name),
            ));
        }
    }

    for ca in program.constraint_atoms() {
        let mut all_int = true;
        for var in ca.constraint.variables() {
            match program.variable(var) {
                None => {
                    all_int = false;
                    out.push(ParseDiagnostic::error(
                        span_of(ca.atom),
                        format!("undeclared constraint variable `{var}`"),
                    ))
                }
                Some(v) => all_int &= v.sort == Sort::Int,
            }
        }
        if all_int && !ca.constraint.lhs().is_integral() {
            out.push(ParseDiagnostic::error(
                span_of(ca.atom),
                format!(
                    "int-sorted constraint `{}` has non-integer coefficients",
                    program.atom(ca.atom).name
                ),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    ColonDash,
    Colon,
    Dot,
    Comma,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Bang,
    Plus,
    Minus,
    Star,
    Slash,
    Rel(Relation),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    span: Span,
}

fn lex(source: &str) -> std::result::Result<Vec<Token>, ParseDiagnostic> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Num(digits.parse().expect("digits"))
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, len) = match (c, next) {
                (':', Some('-')) => (Tok::ColonDash, 2),
                ('<', Some('=')) => (Tok::Rel(Relation::Le), 2),
                ('>', Some('=')) => (Tok::Rel(Relation::Ge), 2),
                ('=', Some('=')) => (Tok::Rel(Relation::Eq), 2),
                ('!', Some('=')) => (Tok::Rel(Relation::Ne), 2),
                (':', _) => (Tok::Colon, 1),
                ('.', _) => (Tok::Dot, 1),
                (',', _) => (Tok::Comma, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('!', _) => (Tok::Bang, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('/', _) => (Tok::Slash, 1),
                ('<', _) => (Tok::Rel(Relation::Lt), 1),
                ('>', _) => (Tok::Rel(Relation::Gt), 1),
                ('=', _) => (Tok::Rel(Relation::Eq), 1),
                _ => {
                    return Err(ParseDiagnostic::error(
                        span,
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            i += len;
            tok
        };
        col += i - start;
        out.push(Token {
            tok,
            text: chars[start..i].iter().collect(),
            span,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        text: String::new(),
        span: Span { line, column: col },
    });
    Ok(out)
}

type Parsed<T> = std::result::Result<T, ParseDiagnostic>;

enum Literal {
    Pos(AtomId),
    Neg(AtomId),
    NegNeg(AtomId),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    atoms: Vec<Atom>,
    regular_index: HashMap<String, AtomId>,
    constraint_index: HashMap<String, AtomId>,
    constraints: BTreeMap<AtomId, Constraint>,
    variables: Vec<NumericVariable>,
    rules: Vec<Rule>,
    diagnostics: Vec<ParseDiagnostic>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser {
            tokens,
            pos: 0,
            atoms: Vec::new(),
            regular_index: HashMap::new(),
            constraint_index: HashMap::new(),
            constraints: BTreeMap::new(),
            variables: Vec::new(),
            rules: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn finish(self) -> CasProgram {
        CasProgram::from_parts(self.atoms, self.rules, self.constraints, self.variables)
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Parsed<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseDiagnostic {
        let t = self.peek();
        let found = if t.tok == Tok::Eof {
            "end of input".to_string()
        } else {
            format!("`{}`", t.text)
        };
        ParseDiagnostic::error(t.span, format!("expected {what}, found {found}"))
    }

    fn program(&mut self) {
        while self.peek().tok != Tok::Eof {
            if let Err(d) = self.statement() {
                self.diagnostics.push(d);
                self.recover();
            }
        }
    }

    fn recover(&mut self) {
        while !matches!(self.peek().tok, Tok::Dot | Tok::Eof) {
            self.bump();
        }
        self.eat(&Tok::Dot);
    }

    fn statement(&mut self) -> Parsed<()> {
        let span = self.peek().span;
        match (&self.peek().tok, self.peek_at(1)) {
            (Tok::Dot, _) => {
                self.bump();
                Ok(())
            }
            (Tok::Ident(kw), Tok::Ident(_)) if kw == "cvar" => self.cvar_decl(),
            (Tok::ColonDash, _) => {
                self.bump();
                let body = self.body()?;
                self.expect(Tok::Dot, "`.`")?;
                self.push_rule(Head::Bottom, body, span);
                Ok(())
            }
            (Tok::LBrace, _) => {
                self.bump();
                let head = self.regular_atom()?;
                self.expect(Tok::RBrace, "`}`")?;
                let mut body = vec![Literal::NegNeg(head)];
                if self.eat(&Tok::ColonDash) {
                    body.extend(self.body()?);
                }
                self.expect(Tok::Dot, "`.`")?;
                self.push_rule(Head::Atom(head), body, span);
                Ok(())
            }
            (Tok::LBracket, _) => {
                // Kept so that validation reports the irregular head.
                let head = self.constraint_atom()?;
                let body = if self.eat(&Tok::ColonDash) {
                    self.body()?
                } else {
                    Vec::new()
                };
                self.expect(Tok::Dot, "`.`")?;
                self.push_rule(Head::Atom(head), body, span);
                Ok(())
            }
            (Tok::Ident(_), _) => {
                let head = self.regular_atom()?;
                let body = if self.eat(&Tok::ColonDash) {
                    self.body()?
                } else {
                    Vec::new()
                };
                self.expect(Tok::Dot, "`.`")?;
                self.push_rule(Head::Atom(head), body, span);
                Ok(())
            }
            _ => Err(self.unexpected("a rule or declaration")),
        }
    }

    fn push_rule(&mut self, head: Head, body: Vec<Literal>, span: Span) {
        let (mut pos, mut neg, mut negneg) = (Vec::new(), Vec::new(), Vec::new());
        for lit in body {
            match lit {
                Literal::Pos(a) => pos.push(a),
                Literal::Neg(a) => neg.push(a),
                Literal::NegNeg(a) => negneg.push(a),
            }
        }
        let mut rule = Rule::new(head, pos, neg, negneg);
        rule.span = span;
        self.rules.push(rule);
    }

    fn cvar_decl(&mut self) -> Parsed<()> {
        self.bump();
        let (name, _) = self.term_name("a variable name")?;
        self.expect(Tok::Colon, "`:`")?;
        let sort_tok = self.bump();
        let sort = match &sort_tok.tok {
            Tok::Ident(s) if s == "int" => Sort::Int,
            Tok::Ident(s) if s == "real" => Sort::Real,
            _ => {
                return Err(ParseDiagnostic::error(
                    sort_tok.span,
                    format!("expected `int` or `real`, found `{}`", sort_tok.text),
                ))
            }
        };
        let mut var = NumericVariable::new(name, sort);
        if self.eat(&Tok::LBracket) {
            let lo = self.signed_number()?;
            self.expect(Tok::Comma, "`,`")?;
            let hi = self.signed_number()?;
            self.expect(Tok::RBracket, "`]`")?;
            var = var.with_bounds(Some(lo), Some(hi));
        }
        self.expect(Tok::Dot, "`.`")?;
        self.variables.push(var);
        Ok(())
    }

    fn body(&mut self) -> Parsed<Vec<Literal>> {
        let mut lits = vec![self.literal()?];
        while self.eat(&Tok::Comma) {
            lits.push(self.literal()?);
        }
        Ok(lits)
    }

    fn is_not(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Tok::Ident(s) if s == "not")
    }

    fn literal(&mut self) -> Parsed<Literal> {
        let start = self.peek().span;
        let mut negations = 0;
        while self.is_not(0) {
            self.bump();
            negations += 1;
        }
        if negations > 2 {
            return Err(ParseDiagnostic::error(
                start,
                "at most two negations may precede an atom",
            ));
        }
        if self.peek().tok == Tok::LBracket {
            let atom = self.constraint_atom()?;
            return match negations {
                0 => Ok(Literal::Pos(atom)),
                1 if self.atoms[atom.index()].kind == AtomKind::StrictIrregular => {
                    Ok(Literal::Neg(atom))
                }
                1 => Err(ParseDiagnostic::error(
                    start,
                    "`not` applies only to strict irregular atoms",
                )),
                _ => Err(ParseDiagnostic::error(
                    start,
                    "`not not` cannot precede an irregular atom",
                )),
            };
        }
        let atom = self.regular_atom()?;
        Ok(match negations {
            0 => Literal::Pos(atom),
            1 => Literal::Neg(atom),
            _ => Literal::NegNeg(atom),
        })
    }

    /// `name` or `name(arg, ...)`, flattened without whitespace.
    fn term_name(&mut self, what: &str) -> Parsed<(String, Span)> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) if s.starts_with(|c: char| c.is_ascii_lowercase()) && s != "not" => {
                self.bump();
                let mut name = s.clone();
                if self.peek().tok == Tok::LParen {
                    name.push_str(&self.arguments()?);
                }
                Ok((name, t.span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn arguments(&mut self) -> Parsed<String> {
        self.expect(Tok::LParen, "`(`")?;
        let mut parts = Vec::new();
        loop {
            let mut arg = String::new();
            if self.eat(&Tok::Minus) {
                arg.push('-');
            }
            let t = self.bump();
            match &t.tok {
                Tok::Num(n) => arg.push_str(&n.to_string()),
                Tok::Ident(s) if !arg.starts_with('-') => {
                    arg.push_str(s);
                    if self.peek().tok == Tok::LParen {
                        arg.push_str(&self.arguments()?);
                    }
                }
                _ => {
                    return Err(ParseDiagnostic::error(
                        t.span,
                        format!("expected a constant argument, found `{}`", t.text),
                    ))
                }
            }
            parts.push(arg);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(format!("({})", parts.join(",")))
    }

    fn regular_atom(&mut self) -> Parsed<AtomId> {
        let (name, _) = self.term_name("an atom")?;
        if let Some(id) = self.regular_index.get(&name) {
            return Ok(*id);
        }
        let id = self.push_atom(name.clone(), AtomKind::Regular);
        self.regular_index.insert(name, id);
        Ok(id)
    }

    fn push_atom(&mut self, name: String, kind: AtomKind) -> AtomId {
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(Atom { name, kind });
        id
    }

    fn constraint_atom(&mut self) -> Parsed<AtomId> {
        let open = self.expect(Tok::LBracket, "`[`")?;
        let first = self.pos;
        let left = self.linear_expression()?;
        let rel_tok = self.bump();
        let relation = match rel_tok.tok {
            Tok::Rel(r) => r,
            _ => {
                return Err(ParseDiagnostic::error(
                    rel_tok.span,
                    format!("expected a comparison, found `{}`", rel_tok.text),
                ))
            }
        };
        let right = self.linear_expression()?;
        let last = self.pos;
        self.expect(Tok::RBracket, "`]`")?;
        let strict = self.eat(&Tok::Bang);
        let text: String = self.tokens[first..last]
            .iter()
            .map(|t| t.text.as_str())
            .collect();
        let name = format!("[{text}]");
        let constraint = Constraint::new(&left, relation, &right);
        let kind = if strict {
            AtomKind::StrictIrregular
        } else {
            AtomKind::NonStrictIrregular
        };
        let key = constraint.canonical_key();
        if let Some(id) = self.constraint_index.get(&key).copied() {
            let existing = &self.atoms[id.index()];
            if existing.kind != kind {
                return Err(ParseDiagnostic::error(
                    open.span,
                    format!(
                        "constraint `{name}` used both as strict and non-strict (first as `{}`)",
                        existing.display_name()
                    ),
                ));
            }
            return Ok(id);
        }
        let id = self.push_atom(name, kind);
        self.constraint_index.insert(key, id);
        self.constraints.insert(id, constraint);
        Ok(id)
    }

    fn linear_expression(&mut self) -> Parsed<LinearExpression> {
        let mut terms: Vec<(Rational, String)> = Vec::new();
        let mut constant = Rational::zero();
        let mut sign = Rational::one();
        if self.eat(&Tok::Minus) {
            sign = -sign;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            match self.term()? {
                (c, Some(v)) => terms.push((sign.clone() * c, v)),
                (c, None) => constant += sign.clone() * c,
            }
            if self.eat(&Tok::Plus) {
                sign = Rational::one();
            } else if self.eat(&Tok::Minus) {
                sign = -Rational::one();
            } else {
                break;
            }
        }
        Ok(LinearExpression::new(terms, constant))
    }

    fn term(&mut self) -> Parsed<(Rational, Option<String>)> {
        if let Tok::Num(_) = self.peek().tok {
            let value = self.number()?;
            if self.eat(&Tok::Star) {
                let (var, _) = self.term_name("a variable")?;
                return Ok((value, Some(var)));
            }
            return Ok((value, None));
        }
        let (var, _) = self.term_name("a term")?;
        Ok((Rational::one(), Some(var)))
    }

    fn number(&mut self) -> Parsed<Rational> {
        let t = self.bump();
        let numer = match t.tok {
            Tok::Num(n) => n,
            _ => {
                return Err(ParseDiagnostic::error(
                    t.span,
                    format!("expected a number, found `{}`", t.text),
                ))
            }
        };
        if self.peek().tok == Tok::Slash {
            let slash = self.bump();
            let d = self.bump();
            return match d.tok {
                Tok::Num(d) if !d.is_zero() => Ok(BigRational::new(numer, d)),
                Tok::Num(_) => Err(ParseDiagnostic::error(slash.span, "zero denominator")),
                _ => Err(ParseDiagnostic::error(
                    d.span,
                    format!("expected a denominator, found `{}`", d.text),
                )),
            };
        }
        Ok(BigRational::from_integer(numer))
    }

    fn signed_number(&mut self) -> Parsed<Rational> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.number()?);
        }
        self.eat(&Tok::Plus);
        self.number()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn messages(src: &str) -> Vec<String> {
        match parse_program(src) {
            Err(Error::Parse(d)) => d.into_iter().map(|d| d.message).collect(),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn simple_rule() {
        let p = parse_program("a :- b, not c.").unwrap();
        assert_eq!(p.rules().len(), 1);
        let r = &p.rules()[0];
        assert_eq!(r.head, Head::Atom(p.atom_id("a").unwrap()));
        assert_eq!(r.pos, vec![p.atom_id("b").unwrap()]);
        assert_eq!(r.neg, vec![p.atom_id("c").unwrap()]);
        assert!(r.negneg.is_empty());
    }

    #[test]
    fn choice_rule_expands_to_double_negation() {
        let p = parse_program("{switch}.").unwrap();
        let s = p.atom_id("switch").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.head, Head::Atom(s));
        assert_eq!(r.negneg, vec![s]);
        assert!(r.pos.is_empty() && r.neg.is_empty());
    }

    #[test]
    fn strict_constraint_in_denial() {
        let p = parse_program("cvar x : int [0,23].  :- am, [x >= 12]!.").unwrap();
        let c = p.atom_id("[x>=12]").unwrap();
        assert_eq!(p.atom(c).kind, AtomKind::StrictIrregular);
        assert_eq!(p.constraint(c).unwrap().canonical_key(), "-x + 12 <= 0");
        assert!(p.rules()[0].is_denial());
        let x = p.variable("x").unwrap();
        assert_eq!(
            (x.lower.clone(), x.upper.clone()),
            (Some(int(0)), Some(int(23)))
        );
    }

    #[test]
    fn undeclared_variable_is_reported() {
        let msgs = messages("cvar x : int. :- [2*x + 3*y > 0].");
        assert_eq!(msgs, vec!["undeclared constraint variable `y`"]);
    }

    #[test]
    fn irregular_head_is_reported() {
        let p = parse_unvalidated("cvar x : int. [x >= 12]! :- a.").unwrap();
        let d = validate(&p);
        assert_eq!(d.len(), 1);
        assert!(d[0]
            .message
            .contains("irregular atom `[x>=12]!` in rule head"));
        assert_eq!((d[0].line, d[0].column), (1, 15));
    }

    #[test]
    fn mixed_strictness_is_rejected() {
        let msgs = messages("cvar x : int. :- [x < 1]. :- [1 > x]!.");
        assert_eq!(msgs.len(), 1);
        assert!(msgs[0].contains("both as strict and non-strict"));
    }

    #[test]
    fn equal_constraints_share_one_atom() {
        let p =
            parse_program("cvar x : int. :- [x >= 12]!, a. :- [12 <= x]!. :- [2*x>=24]!.").unwrap();
        assert_eq!(p.strict().count(), 1);
        assert_eq!(p.rules()[1].pos, p.rules()[2].pos);
    }

    #[test]
    fn not_on_nonstrict_is_rejected() {
        let msgs = messages("cvar x : int. :- not [x < 1].");
        assert!(msgs[0].contains("only to strict"));
    }

    #[test]
    fn triple_negation_is_rejected() {
        let msgs = messages("a :- not not not b.");
        assert!(msgs[0].contains("at most two negations"));
    }

    #[test]
    fn duplicate_body_literals_collapse() {
        let p = parse_program("a :- b, b, not c, not c.").unwrap();
        assert_eq!(p.rules()[0].pos.len(), 1);
        assert_eq!(p.rules()[0].neg.len(), 1);
    }

    #[test]
    fn arguments_fold_into_names() {
        let p = parse_program(
            "cvar c(a,b) : int [0,1]. route(a,b) :- road(a, b), cost(a,b,1). :- [c(a,b) != 1]!.",
        )
        .unwrap();
        assert!(p.atom_id("route(a,b)").is_some());
        assert!(p.atom_id("cost(a,b,1)").is_some());
        assert!(p.variable("c(a,b)").is_some());
    }

    #[test]
    fn rationals_and_comments() {
        let p = parse_program("cvar r : real [-1/2, 5]. % bounds\n:- [1/2*r - 1/3 > 0].").unwrap();
        let r = p.variable("r").unwrap();
        assert_eq!(r.lower, Some(Rational::new((-1).into(), 2.into())));
        let c = p.constraint(p.atom_id("[1/2*r-1/3>0]").unwrap()).unwrap();
        assert_eq!(c.canonical_key(), "-3*r + 2 < 0");
    }

    #[test]
    fn int_bounds_must_be_integers() {
        let msgs = messages("cvar x : int [1/2, 3].");
        assert!(msgs[0].contains("non-integer bound"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_program("a :- b\nc.") {
            Err(Error::Parse(d)) => {
                assert_eq!((d[0].line, d[0].column), (2, 1));
                assert!(d[0].message.contains("expected `.`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn recovery_reports_each_bad_statement() {
        match parse_program("a :- . b :- ,. c.") {
            Err(Error::Parse(d)) => assert_eq!(d.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cvar_as_atom_name_still_parses() {
        let p = parse_program("cvar. a :- cvar.").unwrap();
        assert!(p.atom_id("cvar").is_some());
    }

    #[test]
    fn printing_round_trips() {
        let src = "cvar x : int [0,23].\n{switch}.\nlightOn :- switch, not am.\n:- not lightOn.\n{am}.\n:- not am, [x < 12]!.\n";
        let p = parse_program(src).unwrap();
        let printed = p.to_string();
        let q = parse_program(&printed).unwrap();
        assert_eq!(p, q);
        assert_eq!(printed, q.to_string());
    }
}
