//! Differential calculus of a Lie (super)algebra of inner derivations on a matrix algebra.

mod cohomology;
mod context;
mod form;
mod index;
mod maps;
mod ops;

pub use cohomology::{
    body_cohomology_check, cohomology_dims, d_matrix, invariant_forms, lie_matrix, null_space, BlockRank, BodyCohomologyCheck,
    CohomologyReport, DegreeReport,
};
pub use context::{DerivationContext, Weights};
pub use form::{coefficient_factor, SuperForm};
pub use index::{expected_size, sort_with_sign, GradedIndexSet};
pub use maps::{body_cochain_map, eta_forms};
pub use ops::{
    compose, exterior_d, exterior_d_recursive, homogeneous_parts, interior, lambda, lie_derivative, maurer_cartan,
    operator_columns, operator_matrix, wedge,
};
