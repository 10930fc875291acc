use thiserror::Error;

use crate::parser::ParseDiagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}", render_diagnostics(.0))]
    Parse(Vec<ParseDiagnostic>),

    #[error("program is not tight; tight translation mode is not applicable")]
    NotTight,

    #[error("oracle atom cap exceeded: program has {atoms} atoms, cap is {cap}")]
    OracleCapExceeded { atoms: usize, cap: usize },

    #[error("failed to launch solver `{command}`: {source}")]
    SolverLaunch {
        command: String,
        #[source]
        source: std::io::Error,
    },

    #[error("solver returned {verdict}: {detail}")]
    SolverFailure { verdict: String, detail: String },

    #[error("solver model is missing symbol `{0}`")]
    MissingSymbol(String),

    #[error("enumeration refused: {0}")]
    EnumerationRefused(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn render_diagnostics(diags: &[ParseDiagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}
