//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use crate::analysis::{dependency_graph, is_tight, sccs};
use crate::backend::{
    enumerate, EnumerationMode, EnumerationRequest, SolverConfig, DEFAULT_SOLVER,
};
use crate::emit::{emit, EmissionConfig};
use crate::error::Error;
use crate::model::CasProgram;
use crate::oracle::{brute_force_answer_sets, DomainBox};
use crate::parser::parse_program;
use crate::translate::{
    auto_mode, clausify, render_formulas, rule_implications, translate_cas,
    translate_completion_only, SupportMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BACKEND: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Tight,
    Plain,
    Scc,
}

impl ModeArg {
    fn support(self) -> Option<SupportMode> {
        match self {
            ModeArg::Auto => None,
            ModeArg::Tight => Some(SupportMode::Tight),
            ModeArg::Plain => Some(SupportMode::PlainRanking),
            ModeArg::Scc => Some(SupportMode::SccRanking),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumArg {
    Atoms,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpStage {
    Deps,
    Completion,
    Ranking,
    Smtlib,
}

/// Solve ground constraint answer set programs with an SMT solver.
#[derive(Debug, Clone, Parser)]
#[command(name = "casp2smt", version)]
pub struct RunConfig {
    /// Program file (`-` reads standard input).
    pub input: PathBuf,

    /// Solver command line; the SMT-LIB script is sent on its standard input.
    #[arg(long, env = "CASP2SMT_SOLVER", default_value = DEFAULT_SOLVER)]
    pub solver: String,

    /// Seconds allowed per solver call.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,

    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,

    /// Number of answer sets to print; 0 prints all.
    #[arg(short = 'n', default_value_t = 1)]
    pub count: usize,

    #[arg(long = "enum", value_enum, default_value_t = EnumArg::Atoms)]
    pub enumeration: EnumArg,

    /// Print an intermediate stage and exit without solving.
    #[arg(long, value_enum)]
    pub dump: Option<DumpStage>,

    /// Write the SMT-LIB script to OUT (`-` for standard output) and exit.
    #[arg(long, value_name = "OUT")]
    pub emit_only: Option<PathBuf>,

    /// Enumerate answer sets by brute force instead of calling a solver.
    #[arg(long)]
    pub oracle: bool,
}

/// Parses `args`, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let source = match read_input(&config.input) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "casp2smt: cannot read {}: {e}", config.input.display());
            return EXIT_USAGE;
        }
    };
    let program = match parse_program(&source) {
        Ok(p) => p,
        Err(Error::Parse(diags)) => {
            for d in diags {
                let _ = writeln!(err, "{}:{d}", config.input.display());
            }
            return EXIT_USAGE;
        }
        Err(e) => return report(err, &e),
    };
    match execute(config, &program, out) {
        Ok(code) => code,
        Err(e) => report(err, &e),
    }
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "casp2smt: {e}");
    match e {
        Error::SolverLaunch { .. } | Error::SolverFailure { .. } | Error::MissingSymbol(_) => {
            EXIT_BACKEND
        }
        _ => EXIT_USAGE,
    }
}

fn execute(config: &RunConfig, program: &CasProgram, out: &mut dyn Write) -> crate::Result<i32> {
    let support = config.mode.support();
    if support == Some(SupportMode::Tight) && !is_tight(program) {
        return Err(Error::NotTight);
    }
    if let Some(stage) = config.dump {
        out.write_all(dump(program, stage, support)?.as_bytes())?;
        return Ok(EXIT_OK);
    }
    if let Some(path) = &config.emit_only {
        let text = emit(
            &clausify(&translate_cas(program, support)?),
            &EmissionConfig::default(),
        )?;
        if path.as_os_str() == "-" {
            out.write_all(text.as_bytes())?;
        } else {
            std::fs::write(path, text)?;
        }
        return Ok(EXIT_OK);
    }
    if config.oracle {
        let found = brute_force_answer_sets(program, &DomainBox::for_program(program))?;
        print_answers(program, &found, out)?;
        return Ok(EXIT_OK);
    }

    let solver = SolverConfig::from_command_line(&config.solver)?
        .with_timeout(Duration::from_secs(config.timeout));
    let request = EnumerationRequest {
        count: (config.count > 0).then_some(config.count),
        mode: match config.enumeration {
            EnumArg::Atoms => EnumerationMode::Atoms,
            EnumArg::Extended => EnumerationMode::Extended,
        },
        support,
        emission: EmissionConfig::default(),
    };
    let found = enumerate(program, &solver, &request)?;
    print_answers(program, &found, out)?;
    Ok(if found.is_empty() {
        EXIT_UNSAT
    } else {
        EXIT_SAT
    })
}

fn print_answers(
    program: &CasProgram,
    found: &[crate::model::ExtendedAnswerSet],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    if found.is_empty() {
        writeln!(out, "UNSATISFIABLE")?;
    }
    for a in found {
        writeln!(out, "{}", a.render(program))?;
    }
    Ok(())
}

fn dump(
    program: &CasProgram,
    stage: DumpStage,
    support: Option<SupportMode>,
) -> crate::Result<String> {
    Ok(match stage {
        DumpStage::Deps => {
            let graph = dependency_graph(program);
            let decomposition = sccs(&graph);
            let mut text = graph.render(program);
            for (i, component) in decomposition.components().iter().enumerate() {
                let names: Vec<&str> = component
                    .iter()
                    .map(|a| program.atom(*a).name.as_str())
                    .collect();
                let marker = if decomposition.is_nontrivial(i) {
                    " *"
                } else {
                    ""
                };
                text.push_str(&format!("% scc {i}: {}{marker}\n", names.join(" ")));
            }
            text.push_str(&format!("% tight: {}\n", is_tight(program)));
            text
        }
        DumpStage::Completion => {
            let formula = translate_completion_only(program);
            formula.render()
        }
        DumpStage::Ranking => {
            let mode = support.unwrap_or_else(|| auto_mode(program));
            let formula = translate_cas(program, Some(mode))?;
            let rules = rule_implications(program).len();
            let mut text = format!("% mode: {mode}\n");
            text.push_str(&render_formulas(
                &formula.skeleton()[rules..],
                formula.atoms(),
            ));
            for v in formula.ranking_variables() {
                let lo = v
                    .lower
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                let hi = v
                    .upper
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                text.push_str(&format!("% {} in {lo}..{hi}\n", v.name));
            }
            text
        }
        DumpStage::Smtlib => emit(
            &clausify(&translate_cas(program, support)?),
            &EmissionConfig::default(),
        )?,
    })
}
