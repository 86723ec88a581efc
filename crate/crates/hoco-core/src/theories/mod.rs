//! Simplicial algebraic theories and homotopy algebras.
//!
//! `theory` presents enriched theories by generators under three finiteness
//! caps, `mapping` enumerates truncated mapping spaces between finite
//! simplicial sets, and `algebra` checks the homotopy-algebra condition:
//! every comparison map from a carrier at a power object into the honest
//! power of the base carrier must certify as a weak equivalence.

pub mod algebra;
pub mod mapping;
pub mod theory;

pub use algebra::{
    check_homotopy_algebra, min_algebra, pointwise_map, saturating_max_algebra, strict_algebra,
    AlgebraData,
};
pub use mapping::{mapping_space, MappingSpace};
pub use theory::{
    build_t0, build_t1, standard_projections, subst, trivial_theory, validate_theory, CellGen,
    EnrichedTheory, OpGen, Term,
};

/// Default truncation level of every hom in a theory.
pub const DEFAULT_TRUNC: usize = 2;

/// Default largest power object `X_n`.
pub const DEFAULT_ARITY_CAP: usize = 4;

/// Default bound on the weight of a single term. Weight four admits the
/// associativity witness composed with projection tuples while keeping hom
/// enumerations at desk scale.
pub const DEFAULT_OP_CAP: usize = 4;
