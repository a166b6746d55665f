//! Exact-arithmetic engine for quantum generalized Weyl algebras (GWAs).
//!
//! A quantum GWA is the algebra `D(sigma, a)` over `D = k[h]` or `k[h^{&pm;1}]`
//! generated by `x`, `y` with relations `x d = sigma(d) x`, `y d = sigma^{-1}(d) y`,
//! `yx = a`, `xy = sigma(a)`, where `sigma(h) = q h`. This crate constructs such
//! algebras over cyclotomic coefficient fields, computes their fixed rings under
//! finite diagonal and x/y-swapping automorphisms in closed form, verifies the
//! closed forms against brute-force invariant computation, and classifies
//! ring-theoretic properties (global dimension, twisted Calabi-Yau, rigidity,
//! simplicity) by root-congruence analysis of the defining polynomial.
//!
//! Module map:
//! - [`exactfield`]: exact arithmetic in `Q(zeta_N)`, torsion orders, complex embeddings
//! - [`polynomials`]: Laurent polynomials over the field, factored forms, the `h -> q h` action
//! - [`linalg`]: exact Gaussian elimination over the field
//! - [`gwacore`]: normal-form GWA elements, multiplication, brute-force fixed spaces
//! - [`autogroup`]: the automorphisms `eta_{gamma,mu}` and `Omega`, composition and classification
//! - [`fixedring`]: closed-form fixed-ring presentations and their verification
//! - [`rootprops`]: root congruence analysis and the derived property classifiers
//! - [`parser`] / [`report`] / [`pipeline`]: input language, JSON/text reports, orchestration

pub mod autogroup;
pub mod error;
pub mod exactfield;
pub mod fixedring;
pub mod gwacore;
pub mod linalg;
pub mod parser;
pub mod pipeline;
pub mod polynomials;
pub mod report;
pub mod rootprops;

pub use error::QgwaError;
pub use exactfield::{FieldContext, FieldElement};
pub use gwacore::{GwaElement, QuantumGwa};
pub use polynomials::{BaseKind, FactoredPoly, LaurentPoly};
