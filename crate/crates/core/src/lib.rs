//! Homotopy decompositions of coordinate subspace arrangement complements.
//!
//! Removing every coordinate subspace of complex codimension two from `ℂ^n`
//! leaves a space equivalent to the homotopy fibre of `⋁ CP^∞ -> ∏ CP^∞`,
//! which splits as
//! `⋁_{k=2}^{n} (k-1) C(n,k) S^{k+1}`. This crate computes that splitting by
//! rewriting formal space expressions ([`normal`], [`fibre`]) and checks it
//! against the integral cohomology of the moment-angle complex of `n`
//! disjoint points, computed from Smith normal forms ([`homology`],
//! [`oracle`]).

pub mod error;
pub mod expr;
pub mod fibre;
pub mod homology;
pub mod normal;
pub mod oracle;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
pub use expr::{parse, Generator, SpaceExpr};
pub use fibre::{
    fibre_closed_form, fibre_closed_form_with, fibre_normal_form, fibre_recursive, theorem_counts, theorem_normal_form,
    total_summands, DecompositionResult, FibreInput, LedgerRecord, Origin,
};
pub use homology::{
    boundary_matrix, reduced_cohomology, reduced_homology, smith_normal_form, AbelianGroup, IntegerMatrix,
    ReducedGroups, SmithForm,
};
pub use normal::{betti_of, normalize, podecomp, Monomial, Normalizer, Rule, Strategy, WedgeNormalForm};
pub use oracle::{
    betti_vector, poincare_series, zk_cohomology, zk_cohomology_with, HochsterSummand, OracleOptions, PoincareSeries,
    ZkCohomology, DEFAULT_SUBSET_BOUND,
};
pub use simplicial::{SimplicialComplex, VertexSet};

pub use num_bigint::BigUint;
