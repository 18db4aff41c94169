//! Exact combinatorics of weighted projective hypersurfaces.
//!
//! Weight tuples and their singular strata live in [`weights`]; the
//! Reid-Tai classification of cyclic quotient singularities in
//! [`singularity`]; graded dimensions and plurigenera in [`hilbert`]; the
//! general hypersurface `X_d` with its volume, quasi-smoothness and
//! singularity report in [`hypersurface`]; verifiers for the explicit
//! constructions in [`families`]; and a bounded candidate search in
//! [`search`]. All arithmetic is exact.

pub mod error;
pub mod families;
pub mod hilbert;
pub mod hypersurface;
pub mod limits;
pub mod rational;
pub mod search;
pub mod singularity;
pub mod weights;

pub use error::{Error, Result};
pub use hypersurface::{analyze, Analysis, SingularityReport, WeightedHypersurface};
pub use limits::Limits;
pub use rational::Rational;
pub use singularity::{CyclicQuotientSingularity, SingularityClass};
pub use weights::{StratumRecord, Weights};
