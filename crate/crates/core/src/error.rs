//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("mismatched number of degrees of freedom: {0} vs {1}")]
    MismatchedDof(usize, usize),

    #[error("mismatched truncation orders: {0} vs {1}")]
    MismatchedTrunc(u32, u32),

    #[error("division by zero in coefficient field")]
    DivisionByZero,

    #[error("matrix is singular or numerically rank-deficient")]
    SingularMatrix,

    #[error("matrix has odd dimension {0}; symplectic structure needs even dimension")]
    OddDimension(usize),

    #[error("hamiltonian has a nonzero linear part; the flow does not fix the origin")]
    NonvanishingLinearPart,

    #[error("map jet does not fix the origin: component {component} has a nonzero constant term")]
    DoesNotFixOrigin { component: usize },

    #[error("{context}: expected a homogeneous quadratic form")]
    NotQuadratic { context: &'static str },

    #[error("JB is not symmetric (residual {residual:.3e}); input is not sigma-antisymmetric")]
    NotSigmaAntisymmetric { residual: f64 },

    #[error("eigenvalue {lambda} lies on the closed negative real axis; no real logarithm branch exists for this block")]
    NegativeEigenvalue { lambda: String },

    #[error("eigenvalue cluster near {lambda} (multiplicity {multiplicity}) cannot be resolved into a single Jordan block at tolerance {tol:.1e}")]
    UnresolvedCluster {
        lambda: String,
        multiplicity: usize,
        tol: f64,
    },

    #[error("resonance at degree {degree}: k = {k:?} gives {value}")]
    Resonance {
        degree: u32,
        k: Vec<i64>,
        value: String,
    },

    #[error("quadratic part is not in diagonal form sum_j mu_j x_j xi_j")]
    NotDiagonalQuadratic,

    #[error("non-resonant monomial {mono} in input expected to be resonant")]
    NotResonant { mono: String },

    #[error("amplitude is not elliptic: leading symbol vanishes at the base point")]
    NotElliptic,

    #[error("normal-form parameters are not distinct: {detail}")]
    DistinctnessViolation { detail: String },

    #[error("operation not representable in the exact coefficient field: {what}")]
    ExactUnsupported { what: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
