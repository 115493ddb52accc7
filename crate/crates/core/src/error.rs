use std::fmt;

use thiserror::Error as ThisError;

/// A primitive was evaluated outside its real domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainError {
    pub primitive: &'static str,
    pub value: f64,
}

impl DomainError {
    pub fn new(primitive: &'static str, value: f64) -> Self {
        Self { primitive, value }
    }
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} undefined at argument {}", self.primitive, self.value)
    }
}

impl std::error::Error for DomainError {}

#[derive(Debug, Clone, ThisError)]
pub enum Error {
    #[error("domain error at (u, v) = ({u}, {v}){}: {source}", location_suffix(location))]
    Domain {
        source: DomainError,
        u: f64,
        v: f64,
        /// Printed form of the subexpression that failed, when known.
        location: Option<String>,
    },

    #[error("syntax error at byte {offset}: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<String>,
    },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("singular point at (u, v) = ({u}, {v}): x_u x x_v vanishes")]
    Singular { u: f64, v: f64 },

    #[error("framed-surface axiom `{axiom}` violated at (u, v) = ({u}, {v}): residual {residual:e}")]
    FramedAxiom {
        axiom: &'static str,
        u: f64,
        v: f64,
        residual: f64,
    },

    #[error("degenerate parameter change at (p, q) = ({p}, {q}): Jacobian determinant {det:e}")]
    DegenerateJacobian { p: f64, q: f64, det: f64 },

    #[error("radius must be positive, got {lambda} at (u, v) = ({u}, {v})")]
    NonPositiveRadius { u: f64, v: f64, lambda: f64 },

    #[error("family is not creative at (u, v) = ({u}, {v})")]
    NotCreative { u: f64, v: f64 },

    #[error("branch {branch} unavailable at (u, v) = ({u}, {v}): solution set is {kind}")]
    BranchUnavailable {
        branch: String,
        kind: String,
        u: f64,
        v: f64,
    },

    #[error("not applicable at (u, v) = ({u}, {v}): {reason}")]
    NotApplicable { u: f64, v: f64, reason: String },

    #[error("omega is ill defined at (u, v) = ({u}, {v}): gamma^2 + alpha^2 = {value:e}")]
    IllDefinedOmega { u: f64, v: f64, value: f64 },

    #[error("no open neighborhood inside the Sigma4/Sigma5 region: {0}")]
    NoOpenNeighborhood(String),

    #[error("point (u, v) = ({u}, {v}) is not in Sigma4 (label {label})")]
    NotSigma4 { u: f64, v: f64, label: String },

    #[error("inconsistent rank-one constraint at (u, v) = ({u}, {v}): |c| = {c} > 1")]
    InconsistentConstraint { u: f64, v: f64, c: f64 },

    #[error("direction l is not unit length at (u, v) = ({u}, {v}): |l| = {norm}")]
    NonUnitDirection { u: f64, v: f64, norm: f64 },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn location_suffix(location: &Option<String>) -> String {
    match location {
        Some(l) => format!(" in `{l}`"),
        None => String::new(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
