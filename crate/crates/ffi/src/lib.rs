//! C ABI for casp2smt.
//!
//! Programs live behind an opaque handle. Every fallible call returns a
//! [`Casp2smtStatus`]; on failure a message is available from
//! [`casp2smt_last_error`] until the next call on the same thread. Strings
//! handed out by the library are released with [`casp2smt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use casp2smt::backend::{
    enumerate, EnumerationMode, EnumerationRequest, SolverConfig, DEFAULT_SOLVER,
};
use casp2smt::emit::{emit, EmissionConfig};
use casp2smt::oracle::{brute_force_answer_sets, DomainBox};
use casp2smt::translate::{clausify, translate_cas, SupportMode};
use casp2smt::{CasProgram, Error, ExtendedAnswerSet};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Casp2smtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotTight = 4,
    SolverError = 5,
    EnumerationRefused = 6,
    OracleCapExceeded = 7,
    InvalidArgument = 8,
    Internal = 9,
}

/// Support encoding used by the translation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Casp2smtMode {
    /// Completion for tight programs, SCC rankings otherwise.
    Auto = 0,
    Tight = 1,
    Plain = 2,
    Scc = 3,
}

impl Casp2smtMode {
    fn support(self) -> Option<SupportMode> {
        match self {
            Casp2smtMode::Auto => None,
            Casp2smtMode::Tight => Some(SupportMode::Tight),
            Casp2smtMode::Plain => Some(SupportMode::PlainRanking),
            Casp2smtMode::Scc => Some(SupportMode::SccRanking),
        }
    }
}

/// Opaque parsed program.
pub struct Casp2smtProgram {
    program: CasProgram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> Casp2smtStatus {
    match e {
        Error::Parse(_) => Casp2smtStatus::ParseError,
        Error::NotTight => Casp2smtStatus::NotTight,
        Error::SolverLaunch { .. } | Error::SolverFailure { .. } | Error::MissingSymbol(_) => {
            Casp2smtStatus::SolverError
        }
        Error::EnumerationRefused(_) => Casp2smtStatus::EnumerationRefused,
        Error::OracleCapExceeded { .. } => Casp2smtStatus::OracleCapExceeded,
        Error::Config(_) => Casp2smtStatus::InvalidArgument,
        Error::Io(_) => Casp2smtStatus::Internal,
    }
}

/// Runs `body`, recording errors and turning panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), (Casp2smtStatus, String)>) -> Casp2smtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => Casp2smtStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error (panic)");
            Casp2smtStatus::Internal
        }
    }
}

fn fail(e: Error) -> (Casp2smtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (Casp2smtStatus, String) {
    (Casp2smtStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (Casp2smtStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        (
            Casp2smtStatus::InvalidUtf8,
            format!("`{what}` is not valid UTF-8"),
        )
    })
}

unsafe fn program_ref<'a>(
    p: *const Casp2smtProgram,
) -> Result<&'a CasProgram, (Casp2smtStatus, String)> {
    p.as_ref()
        .map(|h| &h.program)
        .ok_or_else(|| null("program"))
}

unsafe fn write_string(
    out: *mut *mut c_char,
    text: String,
) -> Result<(), (Casp2smtStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(text)
        .map_err(|_| (Casp2smtStatus::Internal, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn render_answers(program: &CasProgram, found: &[ExtendedAnswerSet]) -> String {
    if found.is_empty() {
        return "UNSATISFIABLE\n".to_string();
    }
    found
        .iter()
        .map(|a| format!("{}\n", a.render(program)))
        .collect()
}

/// Parses `source` (NUL-terminated UTF-8). On success `*out` owns a handle
/// to release with [`casp2smt_program_free`].
///
/// # Safety
/// `source` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_program_parse(
    source: *const c_char,
    out: *mut *mut Casp2smtProgram,
) -> Casp2smtStatus {
    guard(|| {
        let text = read_str(source, "source")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let program = casp2smt::parse_program(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(Casp2smtProgram { program }));
        Ok(())
    })
}

/// Releases a program handle. Null is ignored.
///
/// # Safety
/// `program` must come from [`casp2smt_program_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_program_free(program: *mut Casp2smtProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Number of atoms occurring in the program.
///
/// # Safety
/// `program` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_program_atom_count(
    program: *const Casp2smtProgram,
    out: *mut usize,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.atoms().len();
        Ok(())
    })
}

/// Whether the positive dependency graph over non-input atoms is acyclic.
///
/// # Safety
/// `program` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_program_is_tight(
    program: *const Casp2smtProgram,
    out: *mut bool,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = casp2smt::analysis::is_tight(p);
        Ok(())
    })
}

/// Canonical text of the program.
///
/// # Safety
/// `program` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_program_print(
    program: *const Casp2smtProgram,
    out: *mut *mut c_char,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        write_string(out, p.to_string())
    })
}

/// SMT-LIB script for the program.
///
/// # Safety
/// `program` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_emit_smtlib(
    program: *const Casp2smtProgram,
    mode: Casp2smtMode,
    out: *mut *mut c_char,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        let formula = translate_cas(p, mode.support()).map_err(fail)?;
        let text = emit(&clausify(&formula), &EmissionConfig::default()).map_err(fail)?;
        write_string(out, text)
    })
}

/// Brute-force answer sets, one canonical line each, or `UNSATISFIABLE`.
///
/// # Safety
/// `program` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_oracle_answer_sets(
    program: *const Casp2smtProgram,
    out: *mut *mut c_char,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        let found = brute_force_answer_sets(p, &DomainBox::for_program(p)).map_err(fail)?;
        write_string(out, render_answers(p, &found))
    })
}

/// Answer sets computed by the external solver, one canonical line each, or
/// `UNSATISFIABLE`. `solver` may be null for the default command; `count` 0
/// asks for all; `extended` enumerates distinct valuations as well.
///
/// # Safety
/// `program` must be a live handle, `solver` null or a valid C string, `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_solve(
    program: *const Casp2smtProgram,
    solver: *const c_char,
    timeout_seconds: u32,
    count: u32,
    extended: bool,
    mode: Casp2smtMode,
    out: *mut *mut c_char,
) -> Casp2smtStatus {
    guard(|| {
        let p = program_ref(program)?;
        let command = if solver.is_null() {
            DEFAULT_SOLVER
        } else {
            read_str(solver, "solver")?
        };
        if timeout_seconds == 0 {
            return Err((
                Casp2smtStatus::InvalidArgument,
                "timeout must be positive".into(),
            ));
        }
        let config = SolverConfig::from_command_line(command)
            .map_err(fail)?
            .with_timeout(Duration::from_secs(timeout_seconds.into()));
        let request = EnumerationRequest {
            count: (count > 0).then_some(count as usize),
            mode: if extended {
                EnumerationMode::Extended
            } else {
                EnumerationMode::Atoms
            },
            support: mode.support(),
            emission: EmissionConfig::default(),
        };
        let found = enumerate(p, &config, &request).map_err(fail)?;
        write_string(out, render_answers(p, &found))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn casp2smt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn casp2smt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
