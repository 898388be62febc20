//! Exact computation with locally nilpotent derivations of finitely
//! presented commutative algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: sparse polynomials with rational coefficients.
//! * [`algebra`]: quotient algebras with Gröbner normal forms and ideal and
//!   radical membership.
//! * [`lnd`]: derivations, nilpotency certificates, exponential flows,
//!   automorphisms and weight gradings.
//! * [`invariants`]: degree-truncated kernels, Makar-Limanov and Derksen
//!   subspaces, subalgebra membership and point separation.
//! * [`flexgeo`]: tangent spaces, orbit tangents, flexibility and
//!   transversality checks, and the plane transitivity demonstrator.
//! * [`catalog`]: named example varieties with their derivations.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod flexgeo;
pub mod invariants;
pub mod linalg;
pub mod lnd;
pub mod poly;

pub use algebra::{groebner_basis, Algebra, AlgebraElement, FPAlgebra, Presentation};
pub use error::{Error, Result};
pub use poly::{frac, poly_arith, rat, ArithOp, Monomial, Polynomial, Rational, Vars};
pub use catalog::CatalogEntry;
pub use flexgeo::{Point, Verdict};
pub use invariants::{GeneratorFamily, SubspaceBasis};
pub use lnd::{Automorphism, Derivation, Nilpotency, WeightGrading};
