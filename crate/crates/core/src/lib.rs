//! holant-lab: exact evaluation and complexity classification of
//! Holant problems #[a,1,b] | [1,0,0,1] on 3-regular graphs.
//!
//! The crate is organized around exact arithmetic in Q(zeta_12)
//! ([`cyclo`]), a small polynomial kernel ([`poly`]), a signature-grid
//! instance model ([`grid`]), exact Holant evaluators ([`eval`]), the
//! gadget matrix catalog with its verified identity suite ([`gadgets`]),
//! the interpolation machinery ([`interp`]), and the dichotomy
//! classifier with hardness witnesses ([`dichotomy`]).

use thiserror::Error as ThisError;

pub mod cyclo;
pub mod dichotomy;
pub mod eval;
pub mod gadgets;
pub mod grid;
pub mod interp;
pub mod poly;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound variable(s) {0} in scalar evaluation")]
    UnboundVariable(String),
    #[error("matrix is not square")]
    NonSquare,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("malformed instance document: {0}")]
    MalformedDocument(String),
    #[error("vertex {vertex} port {port} on the {side} side is {problem}")]
    DanglingPort {
        side: &'static str,
        vertex: usize,
        port: usize,
        problem: &'static str,
    },
    #[error("signature arity {arity} does not match vertex degree {degree}")]
    ArityMismatch { arity: usize, degree: usize },
    #[error("graph is not 3-regular: vertex {vertex} has degree {degree}")]
    NotThreeRegular { vertex: usize, degree: usize },
    #[error("tensor is not symmetric: indices {first:#b} and {second:#b} differ")]
    NotSymmetric { first: usize, second: usize },
    #[error("grid contains an unfilled SLOT generator")]
    UnfilledSlot,
    #[error("unknown gadget id {0}")]
    UnknownGadget(String),
    #[error("parameters outside the valid region: {0}")]
    InvalidRegion(String),
    #[error("omega is not a cube root of unity")]
    NotCubeRoot,
    #[error("tractable-case mismatch: {0}")]
    CaseMismatch(String),
    #[error("no polynomial-time algorithm in scope for this tractable point")]
    NoPolyTimeAlgorithmInScope,
    #[error("point is not #P-hard; no witness exists")]
    NotHard,
    #[error("singular interpolation system: repeated ratio")]
    SingularSystem,
    #[error("independent-point selection failed: {0}")]
    SelectionFailure(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("complement-pair parity anomaly: i={i}, j={j} with i != j (mod 3)")]
    Mod3ViolationAnomaly { i: usize, j: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
