//! Morita context rings over finite base rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`finalg`] finite abelian groups, finite rings, ring isomorphisms and the
//!   exhaustive isomorphism search used as ground truth everywhere else.
//! * [`bimod`] finite bimodules and semilinear bimodule isomorphisms.
//! * [`context`] Morita contexts, the generalized matrix ring they define, its
//!   three-component grading and Peirce decomposition of arbitrary finite rings.
//! * [`isoclasses`] six-tuples describing the two constructive families of
//!   isomorphisms between context rings, with their composition law.
//! * [`theorems`] executable checks that compare the constructive families
//!   against the exhaustive search.
//! * [`cli`] configuration files, command dispatch and structured reports.

pub mod bimod;
pub mod cli;
pub mod context;
pub mod error;
pub mod finalg;
pub mod fixtures;
pub mod isoclasses;
pub mod theorems;
pub mod validation;

pub use error::{AlgebraError, Result};
pub use finalg::{AbGroup, Elem, FinRing, RingIso, SearchOptions};
pub use validation::ValidationReport;
