//! Complex cyclic Leibniz algebras.
//!
//! A cyclic Leibniz algebra of dimension `n` has a basis `a, a², …, aⁿ` and
//! is determined by the single product `a·aⁿ = α₂a² + ⋯ + αₙaⁿ`. This crate
//! builds such algebras, computes a canonical form for each isomorphism
//! class and decides isomorphism. The [`oracle`] module re-derives every
//! classification step by brute force (linear solves and explicit basis
//! maps) so the two routes can be checked against each other.
//!
//! All types are generic over the real field ([`Real`]); the aliases below
//! fix it to `f64`, with `f32` variants for single precision.

mod error;

pub mod algebra;
pub mod classification;
pub mod oracle;
pub mod sampling;
pub mod scalar;

pub use algebra::{CyclicAlgebra, Element, Law, LeibnizReport, MultOperator, MultiplicationTable};
pub use classification::{
    canonical_representative, detect_type, equivalent, family_table, generator_law, isomorphic,
    isomorphic_by_orbit, normalize, normalize_leading, orbit, CanonicalForm, Family, FamilyTable,
    GammaTuple, TypeLabel,
};
pub use error::{Error, Result};
pub use oracle::{
    explicit_iso_check, fuzz, iso_by_search, law_by_linear_solve, power_basis_conditioning,
    well_conditioned_generator, FuzzConfig, FuzzReport, OracleReport,
};
pub use scalar::{
    approx_eq, canonical_key, principal_root, roots_of_unity, CanonicalKey, Real, Tolerance,
    DEFAULT_EPS,
};

pub use num_complex::Complex;

pub type Scalar = Complex<f64>;
pub type Algebra = CyclicAlgebra<f64>;
pub type Vector = Element<f64>;
pub type Form = CanonicalForm<f64>;
pub type Gamma = GammaTuple<f64>;
pub type Tol = Tolerance<f64>;

pub type Scalar32 = Complex<f32>;
pub type Algebra32 = CyclicAlgebra<f32>;
pub type Form32 = CanonicalForm<f32>;
pub type Tol32 = Tolerance<f32>;
