//! Truncated-jet algebra for Hamiltonian dynamics near a fixed point:
//! symplectic matrix and map-germ logarithms, classical Birkhoff normal
//! forms, and semiclassical (Weyl-symbol) normal forms of elliptic
//! Fourier integral operator data.
//!
//! Everything is computed degree by degree on jets truncated at a total
//! degree `N` (and, for semiclassical symbols, at order `M` in `h`).
//! Two coefficient fields are supported: complex double floats and an
//! exact field of Gaussian rationals optionally extended by a single
//! transcendental symbol with a known exponential (see [`exact`]).

pub mod error;
pub mod scalar;
pub mod exact;
pub mod jet;
pub mod mapjet;
pub mod hjet;
pub mod mat;
pub mod exppoly;
pub mod flow;
pub mod symlin;
pub mod homology;
pub mod maplog;
pub mod birkhoff;
pub mod weylq;
pub mod io;

pub use error::{Error, Result};
pub use exact::{Exact, GRat, Symbol};
pub use hjet::HJet;
pub use jet::{Jet, Mono};
pub use mapjet::MapJet;
pub use mat::Mat;
pub use scalar::Scalar;
pub use symlin::{BranchRule, BlockKind, LogResult, SpectralBlock, SpectralData};
pub use homology::{ExactMu, MuList, ResonanceCondition, ResonanceReport, ResonantSplit};
pub use birkhoff::{ActionExpression, QuadraticNormalForm};
pub use weylq::{FormalFIO, Homotopy, OperatorLogResult};
