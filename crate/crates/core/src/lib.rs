//! Standard monomial machinery for torus quotients of Grassmannians, two-step
//! flag varieties of type A and the spin varieties `Spin_5`, `Spin_7`.
//!
//! The crate enumerates zero-weight standard tableaux, straightens Plücker
//! polynomials, factors invariant monomials through their graphs and checks
//! generation degrees of invariant rings by exact linear algebra.

pub mod error;
pub mod graphs;
pub mod linalg;
pub mod oracle;
pub mod plucker;
pub mod tableau_a;
pub mod tableau_b;
pub mod verifier;
pub mod weights;

pub use error::{Error, Result};
pub use graphs::{GraphCombo, LoopedMultigraph};
pub use plucker::{PluckerMonomial, PluckerPoly, Row};
pub use tableau_a::{ContentSpec, TableauA};
pub use tableau_b::TableauB;
pub use verifier::{FactorCertificate, GenerationReport, Verdict};
pub use weights::{Family, GroupInstance, ManifestEntry, Shape, ShapeA, ShapeB};

/// Exact rational scalars used for every coefficient.
pub type Rational = num_rational::BigRational;
