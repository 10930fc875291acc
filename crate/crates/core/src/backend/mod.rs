//! External SMT solver driver: one process per check, models read back with
//! `get-value`, enumeration by re-solving with blocking assertions.

mod sexpr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

pub use sexpr::{parse_all, to_rational, SExpr};

use crate::emit::{
    emit_parts, render_formula, render_value_equality, smt_symbol, EmissionConfig, SymbolTable,
};
use crate::error::{Error, Result};
use crate::model::{AtomId, AtomKind, CasProgram, ExtendedAnswerSet, Rational, Valuation};
use crate::oracle::condition_b_constraints;
use crate::translate::{clausify, translate_cas, PropFormula, SmtFormula, SupportMode};

pub const DEFAULT_SOLVER: &str = "z3 -in";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelQuery {
    GetValue,
    GetModel,
}

/// How the script reaches the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputChannel {
    Stdin,
    /// Written to a temporary file whose path is appended to the arguments.
    TempFile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Executable followed by its arguments.
    pub command: Vec<String>,
    pub timeout: Duration,
    pub model_query: ModelQuery,
    pub input: InputChannel,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig::from_command_line(DEFAULT_SOLVER).expect("default solver command")
    }
}

impl SolverConfig {
    /// Splits on whitespace; no shell quoting is interpreted.
    pub fn from_command_line(line: &str) -> Result<Self> {
        let command: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if command.is_empty() {
            return Err(Error::Config("empty solver command".into()));
        }
        Ok(SolverConfig {
            command,
            timeout: Duration::from_secs(60),
            model_query: ModelQuery::GetValue,
            input: InputChannel::Stdin,
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.command.is_empty() {
            return Err(Error::Config("empty solver command".into()));
        }
        if self.timeout.is_zero() {
            return Err(Error::Config("timeout must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown => "unknown",
            Verdict::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Number(Rational),
}

/// Values keyed by unquoted SMT symbol.
pub type Model = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub model: Option<Model>,
    pub raw: String,
}

impl SolveOutcome {
    fn failure(verdict: Verdict, raw: String) -> Self {
        SolveOutcome {
            verdict,
            model: None,
            raw,
        }
    }
}

/// Symbols of all `(declare-const NAME SORT)` lines, in order.
fn declared_symbols(text: &str) -> Vec<String> {
    text.lines()
        .filter(|l| l.trim_start().starts_with("(declare-const"))
        .filter_map(|l| {
            let parsed = parse_all(l).ok()?;
            let items = parsed.first()?.as_list()?;
            items.get(1)?.as_atom().map(str::to_string)
        })
        .collect()
}

fn model_query(text: &str, query: ModelQuery) -> String {
    match query {
        ModelQuery::GetModel => "(get-model)\n".to_string(),
        ModelQuery::GetValue => {
            let symbols = declared_symbols(text);
            if symbols.is_empty() {
                String::new()
            } else {
                let quoted: Vec<String> = symbols.iter().map(|s| smt_symbol(s)).collect();
                format!("(get-value ({}))\n", quoted.join(" "))
            }
        }
    }
}

fn spawn_reader<R: Read + Send + 'static>(mut source: R) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = String::new();
        let _ = source.read_to_string(&mut buf);
        buf
    })
}

/// Runs the solver on `text` (which should end in `(check-sat)`), asking for
/// values of every declared constant.
pub fn solve_once(text: &str, config: &SolverConfig) -> Result<SolveOutcome> {
    config.validate()?;
    let mut script = text.to_string();
    if !script.ends_with('\n') {
        script.push('\n');
    }
    script.push_str(&model_query(text, config.model_query));
    script.push_str("(exit)\n");

    let mut command = Command::new(&config.command[0]);
    command.args(&config.command[1..]);
    let temp = match config.input {
        InputChannel::Stdin => None,
        InputChannel::TempFile => {
            let mut file = tempfile::Builder::new().suffix(".smt2").tempfile()?;
            file.write_all(script.as_bytes())?;
            file.flush()?;
            command.arg(file.path());
            Some(file)
        }
    };
    command
        .stdin(if temp.is_none() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = command.spawn().map_err(|source| Error::SolverLaunch {
        command: config.command.join(" "),
        source,
    })?;

    let writer = child.stdin.take().map(|mut stdin| {
        let script = script.clone();
        // a solver that exits early closes the pipe; that shows up in the verdict
        thread::spawn(move || {
            let _ = stdin.write_all(script.as_bytes());
        })
    });
    let stdout = spawn_reader(child.stdout.take().expect("piped stdout"));
    let stderr = spawn_reader(child.stderr.take().expect("piped stderr"));

    let deadline = Instant::now() + config.timeout;
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break Some(status);
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        thread::sleep(Duration::from_millis(2));
    };
    if let Some(w) = writer {
        let _ = w.join();
    }
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();
    drop(temp);

    let mut raw = out.clone();
    if !err.is_empty() {
        raw.push_str("\n; stderr\n");
        raw.push_str(&err);
    }
    match status {
        None => {
            raw.push_str(&format!("\n; killed after {:?}\n", config.timeout));
            return Ok(SolveOutcome::failure(Verdict::Unknown, raw));
        }
        Some(s) => raw.push_str(&format!("\n; {s}\n")),
    }
    Ok(interpret(&out, raw))
}

fn interpret(out: &str, raw: String) -> SolveOutcome {
    let Ok(exprs) = parse_all(out) else {
        return SolveOutcome::failure(Verdict::Error, raw);
    };
    let verdict = match exprs.first().and_then(SExpr::as_atom) {
        Some("sat") => Verdict::Sat,
        Some("unsat") => Verdict::Unsat,
        Some("unknown") => Verdict::Unknown,
        _ => return SolveOutcome::failure(Verdict::Error, raw),
    };
    if verdict != Verdict::Sat {
        return SolveOutcome::failure(verdict, raw);
    }
    let mut model = Model::new();
    for e in &exprs[1..] {
        if !read_model(e, &mut model) {
            return SolveOutcome::failure(Verdict::Error, raw);
        }
    }
    SolveOutcome {
        verdict,
        model: Some(model),
        raw,
    }
}

fn value_of(e: &SExpr) -> Option<Value> {
    match e.as_atom() {
        Some("true") => Some(Value::Bool(true)),
        Some("false") => Some(Value::Bool(false)),
        _ => to_rational(e).map(Value::Number),
    }
}

/// Accepts a `get-value` response or a `get-model` response, with or
/// without the leading `model` keyword.
fn read_model(e: &SExpr, model: &mut Model) -> bool {
    let Some(items) = e.as_list() else {
        return false;
    };
    let items = match items.first().and_then(SExpr::as_atom) {
        Some("model") => &items[1..],
        Some("error") => return false,
        _ => items,
    };
    for item in items {
        let Some(parts) = item.as_list() else {
            return false;
        };
        match parts {
            [name, value] => {
                let (Some(name), Some(value)) = (name.as_atom(), value_of(value)) else {
                    return false;
                };
                model.insert(name.to_string(), value);
            }
            [kw, name, params, _sort, value] if kw.as_atom() == Some("define-fun") => {
                if params.as_list().is_some_and(|p| !p.is_empty()) {
                    continue;
                }
                let (Some(name), Some(value)) = (name.as_atom(), value_of(value)) else {
                    return false;
                };
                model.insert(name.to_string(), value);
            }
            _ => return false,
        }
    }
    true
}

/// Projects a model onto the formula's source atoms and program variables.
pub fn extract_answer_set(
    outcome: &SolveOutcome,
    formula: &SmtFormula,
) -> Result<ExtendedAnswerSet> {
    let symbols = SymbolTable::new(formula, &EmissionConfig::default().atom_prefix);
    extract_with_symbols(outcome, formula, &symbols)
}

pub fn extract_with_symbols(
    outcome: &SolveOutcome,
    formula: &SmtFormula,
    symbols: &SymbolTable,
) -> Result<ExtendedAnswerSet> {
    let model = match (&outcome.verdict, &outcome.model) {
        (Verdict::Sat, Some(m)) => m,
        _ => {
            return Err(Error::SolverFailure {
                verdict: outcome.verdict.to_string(),
                detail: "no model to extract".into(),
            })
        }
    };
    let mut atoms = BTreeSet::new();
    for a in formula.source_atoms() {
        let symbol = symbols.atom(*a);
        match model.get(symbol) {
            Some(Value::Bool(true)) => {
                atoms.insert(*a);
            }
            Some(Value::Bool(false)) => {}
            _ => return Err(Error::MissingSymbol(symbol.to_string())),
        }
    }
    let mut valuation = Valuation::new();
    for v in formula.variables() {
        let symbol = symbols.variable(&v.name).expect("declared variable");
        match model.get(symbol) {
            Some(Value::Number(n)) => valuation.insert(v.name.clone(), n.clone()),
            _ => return Err(Error::MissingSymbol(symbol.to_string())),
        }
    }
    Ok(ExtendedAnswerSet { atoms, valuation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Distinct atom sets.
    Atoms,
    /// Distinct (atom set, valuation) pairs.
    Extended,
}

/// Variables whose values matter for `answer`: those of its condition-(b)
/// constraint set.
fn csp_variables(program: &CasProgram, atoms: &BTreeSet<AtomId>) -> BTreeSet<String> {
    condition_b_constraints(program, atoms)
        .iter()
        .flat_map(|c| c.variables().map(str::to_string).collect::<Vec<_>>())
        .collect()
}

fn check_extended_enumerable(program: &CasProgram, answer: &ExtendedAnswerSet) -> Result<()> {
    for a in &answer.atoms {
        if program.atom(*a).kind != AtomKind::NonStrictIrregular {
            continue;
        }
        let constraint = program
            .constraint(*a)
            .expect("irregular atom has a constraint");
        for v in constraint.variables() {
            let bounded = program.variable(v).is_some_and(|d| d.is_bounded());
            if !bounded {
                return Err(Error::EnumerationRefused(format!(
                    "variable `{v}` of satisfied non-strict atom `{}` has no declared bounds; \
                     the set of valuations may be infinite (request a finite count instead)",
                    program.atom(*a).name
                )));
            }
        }
    }
    Ok(())
}

fn blocking_assertion(
    program: &CasProgram,
    formula: &SmtFormula,
    symbols: &SymbolTable,
    answer: &ExtendedAnswerSet,
    mode: EnumerationMode,
) -> String {
    let mut conjuncts: Vec<String> = program
        .atom_ids()
        .map(|a| {
            let lit = if answer.atoms.contains(&a) {
                PropFormula::atom(a)
            } else {
                PropFormula::not(PropFormula::atom(a))
            };
            render_formula(formula, symbols, &lit)
        })
        .collect();
    if mode == EnumerationMode::Extended {
        for v in csp_variables(program, &answer.atoms) {
            if let Some(value) = answer.valuation.get(&v) {
                conjuncts.extend(render_value_equality(formula, symbols, &v, value));
            }
        }
    }
    match conjuncts.len() {
        0 => "(assert false)\n".to_string(),
        1 => format!("(assert (not {}))\n", conjuncts[0]),
        _ => format!("(assert (not (and {})))\n", conjuncts.join(" ")),
    }
}

/// Options for [`enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRequest {
    /// `None` asks for all answer sets.
    pub count: Option<usize>,
    pub mode: EnumerationMode,
    /// `None` picks tight or SCC rankings from the program.
    pub support: Option<SupportMode>,
    pub emission: EmissionConfig,
}

impl Default for EnumerationRequest {
    fn default() -> Self {
        EnumerationRequest {
            count: Some(1),
            mode: EnumerationMode::Atoms,
            support: None,
            emission: EmissionConfig::default(),
        }
    }
}

/// Finds up to `request.count` answer sets, re-solving from scratch with one
/// more blocking assertion each round.
pub fn enumerate(
    program: &CasProgram,
    config: &SolverConfig,
    request: &EnumerationRequest,
) -> Result<Vec<ExtendedAnswerSet>> {
    let formula = clausify(&translate_cas(program, request.support)?);
    enumerate_formula(program, &formula, config, request)
}

/// As [`enumerate`], over an already translated formula of `program`.
pub fn enumerate_formula(
    program: &CasProgram,
    formula: &SmtFormula,
    config: &SolverConfig,
    request: &EnumerationRequest,
) -> Result<Vec<ExtendedAnswerSet>> {
    let emission = emit_parts(formula, &request.emission)?;
    let mut blocks = String::new();
    let mut found = Vec::new();
    while request.count.is_none_or(|n| found.len() < n) {
        let text = format!("{}{blocks}(check-sat)\n", emission.body);
        let outcome = solve_once(&text, config)?;
        match outcome.verdict {
            Verdict::Unsat => break,
            Verdict::Sat => {}
            verdict => {
                return Err(Error::SolverFailure {
                    verdict: verdict.to_string(),
                    detail: outcome.raw,
                })
            }
        }
        let answer = extract_with_symbols(&outcome, formula, &emission.symbols)?;
        if request.count.is_none() && request.mode == EnumerationMode::Extended {
            check_extended_enumerable(program, &answer)?;
        }
        blocks.push_str(&blocking_assertion(
            program,
            formula,
            &emission.symbols,
            &answer,
            request.mode,
        ));
        found.push(answer);
    }
    Ok(found)
}
