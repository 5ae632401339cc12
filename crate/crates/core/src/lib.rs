//! Exact computations on affine pointed semigroups `Q ⊂ ℤ^d` and the top local
//! cohomology of the semigroup ring `k[Q]` in positive characteristic.
//!
//! The pipeline is:
//!
//! 1. [`AffineSemigroup::build`] reduces the generators to coordinates of the
//!    group `M = gr(Q) ≅ ℤ^n` and builds the cone `σ` with its inward facet
//!    forms `u_1, …, u_r`.
//! 2. [`AffineSemigroup::find_gamma`] searches for an element `γ ∈ Q` with
//!    `γ + (σ ∩ M) ⊆ Q`, certified against a finite residue set; this yields
//!    `m_Q = max_i u_i(γ)`.
//! 3. [`AffineSemigroup::facets`] gives each facet's invariant factors and
//!    [`n_q`] the largest prime dividing one of them.
//! 4. [`cohomology::theoretical_bound`] is `⌈log_p m_Q⌉` for `p > N_Q`, and
//!    [`TopCohomology`] measures Frobenius nilpotency of monomial classes over
//!    a window of degrees to check it.

pub mod cohomology;
pub mod cone;
pub mod lattice;
pub mod semigroup;
pub mod serde_int;

pub use cohomology::{
    hsl_exact_dim1, theoretical_bound, HslReport, Nilpotency, NonzeroCertificate, OrbitReport,
    TopCohomology, Witness, ZeroClassResult,
};
pub use cone::{Cone, Region, RegionTag, SimplicialSubcone};
pub use lattice::{IntMatrix, IntVector};
pub use semigroup::{n_q, AffineSemigroup, FacetData, GammaCertificate, GammaSearch, SaturationData};

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("no nonzero generators")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generators span rank {rank}, expected full rank {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("the cone contains a line, so the semigroup is not pointed")]
    NotPointed,
    #[error("no valid gamma among the first {budget} candidates (search reached grading level {level})")]
    BudgetExhausted { budget: usize, level: BigInt },
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("vector {0} is not in the cone")]
    OutsideCone(IntVector),
    #[error("facet index {index} out of range ({count} facets)")]
    FacetIndex { index: usize, count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
