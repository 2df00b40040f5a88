//! Exact computations with finite-dimensional algebras presented by quivers
//! with relations: modules and their homomorphisms, homological invariants,
//! Krull-Schmidt decompositions, relative Auslander algebras of finite-type
//! subcategories, intermediate extensions, and tilting certificates.
//!
//! All arithmetic is exact, over the rationals or a prime field.

pub mod algebra;
pub mod error;
pub mod field;
pub mod homology;
pub mod krull_schmidt;
pub mod matrix;
pub mod module;
pub mod par;
pub mod poly;
pub mod recollement;
pub mod tilting;

pub use algebra::{build_algebra, Algebra, Presentation};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use matrix::Matrix;
