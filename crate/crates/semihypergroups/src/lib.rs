//! Finite semihypergroups as convolution cubes.
//!
//! A convolution cube on `n` states assigns each pair `(i, j)` a probability
//! column `a[i][j]`, giving a bilinear product `e_i * e_j = sum_k a[i][j](k)
//! e_k` on measures. This crate builds such cubes from `(group, measure)`
//! pairs, checks the structural conditions that characterize group-derived
//! cubes in exact rational arithmetic, inverts the construction with an
//! exact reconstruction certificate, and runs the same pipeline with
//! tolerances on cubes estimated from second-order event streams.
//!
//! The modules mirror that flow:
//!
//! - [`cube`]: validated cubes, associativity and the distinct-rows/full-rank
//!   condition, value-multiset structure.
//! - [`group`]: Cayley tables, a catalog of the groups of order 1 through 8,
//!   regular representations, isomorphism search.
//! - [`derive`]: the cube of a `(group, measure)` pair.
//! - [`recover`]: the inverse problem with certification.
//! - [`stream`]: simulation, estimation, rational snapping, and the
//!   tolerance-based analysis report.
//! - [`io`]: the JSON and stream file formats shared by the `shg` binary and
//!   the examples.
//!
//! Everything exact is `num::BigRational` underneath; nothing structural is
//! ever decided by a float.

// index loops here walk several matrices in lockstep; iterator rewrites hide
// the row/column arithmetic
#![allow(clippy::needless_range_loop)]

pub mod cube;
pub mod derive;
pub mod group;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod recover;
pub mod stream;

pub use cube::{
    AssociativityViolation, ConditionAReport, ConvolutionCube, CubeError, Measure, Orientation,
    StochasticMatrix, StructureReport,
};
pub use derive::{base_matrix, from_group, DerivationResult, DeriveError};
pub use group::{
    by_name, catalog, catalog_names, cyclic, dihedral, direct_product, is_isomorphic,
    is_uniform_on_subgroup, quaternion8, symmetric3, CayleyTable, GroupError, GroupIsomorphism,
    PermutationMatrix,
};
pub use rational::Rational;
pub use recover::{
    recover_fallback, recover_group, slice_to_group, value_slices, verify_recovery, RecoverError,
    RecoveryMethod, RecoveryResult, SliceRelation,
};
pub use stream::{
    analyze_stream, associativity_residual, condition_a_at_tolerance, estimate_cube, simulate,
    snap_cube, snap_to_rational, AnalysisReport, EstimatedCube, EventStream, StreamError,
    ToleranceConditionA,
};
