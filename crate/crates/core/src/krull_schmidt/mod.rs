//! Krull-Schmidt decompositions, endomorphism algebras and catalogs of
//! indecomposable modules.

mod ar;
mod catalog;
mod decompose;
mod enumerate;
mod endring;

pub use ar::{
    almost_split_sequence, ar_translate, has_projective_summand, ar_translate_inverse, knit, transpose, AlmostSplit, KnitBudget, Knitting,
};
pub use catalog::{
    enumerate_indecomposables, multiplicity_by_hom, random_sum, CatalogMethod, EnumerationMode, IndecomposableCatalog,
};
pub use decompose::{
    decompose, decompose_any, decompose_brute_force, is_indecomposable, is_indecomposable_brute_force, is_isomorphic, Decomposition,
    Summand, EXHAUSTIVE_LIMIT,
};
pub use enumerate::{enumerate_bounded, EnumBudget, Enumeration};
pub use endring::{end_ring, local_eigenvalue, BlockIndex, EndRing};
