//! Crate-wide error type.
//!
//! Variants split into two families the CLI maps onto exit codes: input
//! errors (malformed graphs, addresses, domain violations) and integrity
//! errors (a computation reached a state the underlying theory forbids, or a
//! tolerance could not disambiguate a decision). [`Error::is_integrity`]
//! reports the family; [`Error::code`] is the stable machine-readable name.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Core graph has no vertices.
    EmptyCore,
    /// Core graph is not connected.
    DisconnectedCore,
    /// An edge appears twice (in either orientation).
    DuplicateEdge(String, String),
    /// An edge joins a vertex to itself.
    LoopEdge(String),
    /// An edge or graft names a vertex absent from the core.
    UnknownVertex(String),
    /// A graft entry names the same core vertex twice.
    DuplicateGraft(String),
    /// A graft count of zero was supplied.
    ZeroGraftCount(String),
    /// Tree degree q too small for the requested use (q ≥ 3 for spectral
    /// theory; q = 2 only on the chain reference path).
    DegreeTooSmall { q: u32, needed: u32 },
    /// A vertex address failed to parse or refers outside the graph.
    InvalidAddress(String),
    /// Transition matrix requested for a standalone core with an isolated
    /// vertex (the single-vertex core has no standalone walk).
    UndefinedTransitionMatrix,
    /// Division by the zero function in the surd field.
    DivisionByZeroFunction,
    /// Arithmetic attempted between surd functions over different q or
    /// different variables.
    MismatchedDegreeQ,
    /// Series expansion requested for a function with a genuine pole at the
    /// origin.
    PoleAtOrigin,
    /// Evaluation requested exactly at a pole.
    EvaluationAtPole,
    /// Residue requested at a pole of order ≥ 2.
    HigherOrderPole,
    /// Residue requested at a point certified not to be a pole.
    NotAPole,
    /// Numerical rank of a residue matrix sits inside the ambiguity window.
    RankAmbiguous { gap_low: f64, gap_high: f64 },
    /// A yes/no decision fell inside its tolerance window.
    ToleranceAmbiguity(String),
    /// λ outside the continuous band [−a/q, a/q].
    OutsideBand,
    /// Density requested at an embedded eigenvalue (point mass, no density).
    EmbeddedPointMass,
    /// Exterior-eigenvalue machinery invoked with |λ| ≤ a/q.
    NotExterior,
    /// The q-regular analysis needs a (q−p)-regular core.
    NotRegularCore,
    /// Quadrature failed its node-doubling convergence check.
    QuadratureNotConverged { delta: f64 },
    /// Decay-exponent fit needs ≥ 10 samples spanning close to a decade.
    InsufficientDecade,
    /// A tree address deeper than the supported depth.
    DepthOverflow,
    /// Surd part of a resolvent element is singular at a band edge,
    /// contradicting the spectral theory; reported, never patched over.
    BandEdgePole,
}

impl Error {
    /// Stable machine-readable code (the variant name).
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyCore => "EmptyCore",
            Error::DisconnectedCore => "DisconnectedCore",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::LoopEdge(..) => "LoopEdge",
            Error::UnknownVertex(..) => "UnknownVertex",
            Error::DuplicateGraft(..) => "DuplicateGraft",
            Error::ZeroGraftCount(..) => "ZeroGraftCount",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::InvalidAddress(..) => "InvalidAddress",
            Error::UndefinedTransitionMatrix => "UndefinedTransitionMatrix",
            Error::DivisionByZeroFunction => "DivisionByZeroFunction",
            Error::MismatchedDegreeQ => "MismatchedDegreeQ",
            Error::PoleAtOrigin => "PoleAtOrigin",
            Error::EvaluationAtPole => "EvaluationAtPole",
            Error::HigherOrderPole => "HigherOrderPole",
            Error::NotAPole => "NotAPole",
            Error::RankAmbiguous { .. } => "RankAmbiguous",
            Error::ToleranceAmbiguity(..) => "ToleranceAmbiguity",
            Error::OutsideBand => "OutsideBand",
            Error::EmbeddedPointMass => "EmbeddedPointMass",
            Error::NotExterior => "NotExterior",
            Error::NotRegularCore => "NotRegularCore",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::InsufficientDecade => "InsufficientDecade",
            Error::DepthOverflow => "DepthOverflow",
            Error::BandEdgePole => "BandEdgePole",
        }
    }

    /// True for errors that signal a violated invariant of the computation
    /// itself rather than bad input.
    pub fn is_integrity(&self) -> bool {
        matches!(
            self,
            Error::RankAmbiguous { .. }
                | Error::ToleranceAmbiguity(..)
                | Error::QuadratureNotConverged { .. }
                | Error::BandEdgePole
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyCore => write!(f, "core graph has no vertices"),
            Error::DisconnectedCore => write!(f, "core graph is not connected"),
            Error::DuplicateEdge(u, v) => write!(f, "duplicate edge {{{u}, {v}}}"),
            Error::LoopEdge(u) => write!(f, "loop edge at vertex {u}"),
            Error::UnknownVertex(v) => write!(f, "unknown core vertex '{v}'"),
            Error::DuplicateGraft(v) => write!(f, "vertex '{v}' grafted twice"),
            Error::ZeroGraftCount(v) => write!(f, "graft at '{v}' has count 0"),
            Error::DegreeTooSmall { q, needed } => {
                write!(f, "tree degree q = {q} too small (need q ≥ {needed})")
            }
            Error::InvalidAddress(a) => write!(f, "invalid vertex address '{a}'"),
            Error::UndefinedTransitionMatrix => {
                write!(f, "standalone transition matrix undefined for an isolated core vertex")
            }
            Error::DivisionByZeroFunction => write!(f, "division by the zero function"),
            Error::MismatchedDegreeQ => {
                write!(f, "operands live over different q or different variables")
            }
            Error::PoleAtOrigin => write!(f, "function has a pole at the origin"),
            Error::EvaluationAtPole => write!(f, "evaluation point is a pole"),
            Error::HigherOrderPole => write!(f, "pole of order ≥ 2; residue machinery assumes simple poles"),
            Error::NotAPole => write!(f, "point is certified not to be a pole (residue 0)"),
            Error::RankAmbiguous { gap_low, gap_high } => write!(
                f,
                "residue-matrix rank ambiguous: singular-value gap straddles [{gap_low:e}, {gap_high:e}]"
            ),
            Error::ToleranceAmbiguity(what) => write!(f, "decision within tolerance window: {what}"),
            Error::OutsideBand => write!(f, "λ outside the continuous band [−a/q, a/q]"),
            Error::EmbeddedPointMass => {
                write!(f, "λ is an embedded eigenvalue (point mass; no density value)")
            }
            Error::NotExterior => write!(f, "λ is not exterior (|λ| ≤ a/q)"),
            Error::NotRegularCore => write!(f, "core is not (q−p)-regular with uniform grafting"),
            Error::QuadratureNotConverged { delta } => {
                write!(f, "quadrature changed by {delta:e} on node doubling")
            }
            Error::InsufficientDecade => {
                write!(f, "decay fit needs ≥ 10 samples spanning ≥ 0.9 decades")
            }
            Error::DepthOverflow => write!(f, "tree address exceeds supported depth"),
            Error::BandEdgePole => {
                write!(f, "surd part singular at a band edge (contradicts band regularity)")
            }
        }
    }
}

impl core::error::Error for Error {}
