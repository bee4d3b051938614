//! Exact symbolic verification of the Racah algebra of the generic
//! superintegrable system on the (n-1)-sphere, in its classical Poisson and
//! quantum operator realisations.

pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod monomial;
pub mod observable;
pub mod phase;
pub mod racah;
pub mod report;
pub mod scalar;
pub mod weyl;

pub use coalgebra::{Generator, HamiltonianSpec, SiteRange};
pub use error::{AlgebraError, Result};
pub use monomial::Monomial;
pub use observable::{Algebra, AlgebraMode, Observable};
pub use phase::{PhaseFunction, PhaseMonomial};
pub use racah::{IndexSubset, RacahBasis, SubstructureHandle};
pub use report::{CheckStatus, RelationReport};
pub use scalar::{Bindings, GaussianRational, Param, ParamExp, ParamScalar};
pub use weyl::{WeylMonomial, WeylOperator};
