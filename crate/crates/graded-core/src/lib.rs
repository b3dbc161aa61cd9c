//! Graded-commutative F_p algebra with monomial rewriting, dimension
//! presentations, enumeration and Hilbert series.
//!
//! Two dual descriptions of graded objects live here:
//!
//! * [`RingSpec`]: generators plus monomial rewrite rules. Normal forms
//!   are monomials no rule divides; products re-normalize.
//! * [`DimSpec`]: a direct sum of tensor-product summands (with
//!   parameterized families), defining dimensions without products.
//!
//! Everything is graded by (filtration `s`, internal degree `t`) and by
//! a weight in Z/(p-1).

mod config;
mod dimspec;
mod element;
mod gens;
mod monomial;
mod ring;

pub use config::{parse_ring_config, ring_to_config};
pub use dimspec::{
    vp, BasisClass, ClassSpec, Constraint, DimFactor, DimSpec, DimSummand, FamilySpec,
    SummandBuilder, Window,
};
pub use element::Element;
pub use gens::{GenId, GenKind, GeneratorSpec, Gens, TriDeg};
pub use monomial::Monomial;
pub use ring::{ConfluenceViolation, HealthReport, RewriteRule, RingSpec};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("{0} is not an odd prime >= 3")]
    BadPrime(u64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("rewriting did not terminate at {0}")]
    NonTerminating(String),
    #[error("infinitely many classes in window: {0}")]
    InfiniteFiber(String),
    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("config parse error: {0}")]
    Parse(String),
}
