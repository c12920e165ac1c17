//! Euclidean Jordan algebra models of sharp theories with purification.
//!
//! The crate builds the catalog of Euclidean Jordan algebras (classical,
//! real/complex/quaternionic Hermitian matrices, spin factors), reads each
//! one as an operational theory of states and effects, constructs the pure
//! orthogonal projectors onto faces, and evaluates the Sorkin interference
//! hierarchy `I_1, …, I_n` for multi-slit experiments.
//!
//! Module map:
//!
//! * [`eja`]: elements, Jordan product, trace form, spectral decomposition,
//!   quadratic representation, cone membership.
//! * [`system`]: states, effects, the dagger, the invariant state,
//!   distinguishability.
//! * [`projectors`]: face effects `a_I`, projectors `P_I`, and the projector
//!   law checks.
//! * [`interference`]: value tables, `I_n`, the operator defect `D_n`, and
//!   the bilinear maximizer.
//! * [`adjoint`]: operational and dagger norms, impurity, dagger fidelity,
//!   adjoints of linear maps and channel classification.
//! * [`cli`]: descriptor files, TSV reports, and the command line.

pub mod adjoint;
pub mod cli;
pub mod eja;
pub mod error;
pub mod interference;
pub mod linalg;
pub mod projectors;
pub mod quat;
pub mod sampling;
pub mod system;

pub use eja::{
    cone_contains, jordan_product, quadratic_rep, spectral_decompose, trace_inner_product, unit,
    AlgebraKind, JordanElement, SpectralDecomposition, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use interference::{InterferenceReport, SlitExperiment, ValueTable};
pub use projectors::LinearMap;
pub use system::{Effect, State, SystemModel};
