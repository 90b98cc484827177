//! Basis-dependent quantum coherence and the entropic bounds that constrain it.
//!
//! The relative entropy of coherence of a state `rho` in a basis `{|k>}` is
//! `C(rho) = S(Δ(rho)) - S(rho)`, where `Δ` removes every off-diagonal element
//! in that basis. All entropies are in bits.
//!
//! ```
//! use cohlab::{computational_basis, hadamard_basis, maximally_coherent, rel_ent_coherence};
//!
//! let plus = maximally_coherent(2);
//! assert!((rel_ent_coherence(&plus, &computational_basis(2)).unwrap() - 1.0).abs() < 1e-12);
//! assert!(rel_ent_coherence(&plus, &hadamard_basis()).unwrap().abs() < 1e-12);
//! ```
//!
//! The [`relations`] module checks lower bounds on sums of coherences in
//! several bases (with and without a quantum memory), upper bounds from
//! conditional entropy and from separable/entangled splits, and continuity
//! bounds. [`fuzz`] runs all of them over seeded random instances.

pub mod coherence;
pub mod correlations;
pub mod error;
pub mod figure;
pub mod fuzz;
pub mod io;
pub mod linalg;
pub mod lsdecomp;
pub mod reference_values;
pub mod relations;
pub mod states;

pub use coherence::{
    binary_entropy, dephase, measure, product_basis_with_b_eigenbasis, rel_ent_coherence, shannon_entropy,
    von_neumann_entropy, MeasurementDistribution,
};
pub use correlations::{
    classical_correlation, concurrence, conditional_entropy, correlation_set, mutual_information, Concurrence,
    CorrelationSet,
};
pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use lsdecomp::{ls_bell_diagonal, ls_horodecki, upper_bound_ls, LsDecomposition};
pub use relations::{BasisOrder, Direction, RelationId, RelationReport};
pub use states::{
    bell_diagonal, circular_basis, computational_basis, fourier_basis, hadamard_basis, horodecki_state,
    maximally_coherent, maximally_mixed, random_basis, random_mixed, random_pure, Basis, BellDiagonalParams,
    BellOrdering, BellVector, DensityMatrix, HorodeckiParams,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/coherence.md")]
    mod coherence {}
    #[doc = include_str!("../../../book/src/lower-bounds.md")]
    mod lower_bounds {}
    #[doc = include_str!("../../../book/src/quantum-memory.md")]
    mod quantum_memory {}
    #[doc = include_str!("../../../book/src/upper-bounds.md")]
    mod upper_bounds {}
    #[doc = include_str!("../../../book/src/continuity.md")]
    mod continuity {}
    #[doc = include_str!("../../../book/src/fuzzing.md")]
    mod fuzzing {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
