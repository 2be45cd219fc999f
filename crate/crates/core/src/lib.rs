//! Skew-information uncertainty measures with quantum memory.
//!
//! The crate computes the Wigner–Yanase skew information `I(ρ,H)`, its
//! companion `J_ρ(H)`, the product measure `UN = √(IJ)`, and a
//! discord-like correlation `Q(ρ_AB)` obtained by minimizing a sum of
//! skew-information gaps over measurement bases on `A`. On top of these,
//! [`relations`] checks the product-form uncertainty relation and the
//! memory-assisted relation
//!
//! ```text
//! UN(ρ)_{φ⊗1} + UN(ρ)_{ψ⊗1} ≥ 2 Σ_k L_{ρ_A}(φ_k, ψ_k) + 2 Q(ρ)
//! ```
//!
//! and reproduces the two-qubit Werner-state comparison curves.
//!
//! All numerics are generic over the scalar via [`Real`] (`f32` or `f64`);
//! the `*64` / `*32` aliases below fix the common choices.

// Validation uses `!(x <= tol)` deliberately so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hermlin;
pub mod nelder_mead;
pub mod qcorr;
pub mod relations;
pub mod scalar;
pub mod skewinfo;
pub mod states;

pub use error::{Error, Result};
pub use hermlin::{
    anticommutator, commutator, expectation, herm_eig, kron, partial_trace, psd_sqrt,
    ComplexMatrix, HermEig, Subsystem,
};
pub use qcorr::{basis_from_params, bloch_basis, minimize_q, q_objective, QOptions, QResult};
pub use relations::{
    berta_bound, check_luo, check_theorem, cond_entropy_after_measurement, overlap_c,
    post_measurement, von_neumann_entropy, werner_closed_forms, werner_row, werner_sweep,
    RelationReport, SweepRow, WernerCurves,
};
pub use scalar::Real;
pub use skewinfo::{
    l_sum, l_term, skew_i, skew_j, un, un_sum, variance, DensityMatrix, LTerm, ProjectiveBasis,
};
pub use states::StateRng;

pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type ComplexMatrix32 = ComplexMatrix<f32>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type ProjectiveBasis64 = ProjectiveBasis<f64>;
pub type ProjectiveBasis32 = ProjectiveBasis<f32>;
pub type RelationReport64 = RelationReport<f64>;
pub type QResult64 = QResult<f64>;
pub type SweepRow64 = SweepRow<f64>;
