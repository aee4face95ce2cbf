//! An SIH-type compartmental epidemic model (susceptible, infected,
//! hospitalised) and a health-insurance design built on it.
//!
//! The crate covers four layers:
//!
//! - [`model`]: parameter and state types, the continuous vector field, and
//!   the two shipped scenarios (subcritical and supercritical incidence).
//! - [`analysis`]: basic reproduction number, equilibria, and local
//!   stability of both the continuous model (Routh-Hurwitz) and its
//!   forward-Euler discretisation (eigenvalue thresholds, Schur-Cohn).
//! - [`simulator`]: fixed-step forward-Euler integration of the five
//!   equations, plus a fourth-order reference integrator used as a
//!   numerical oracle.
//! - [`actuarial`] and [`sensitivity`]: premiums via the equivalence
//!   principle, profit and start-up capital, and elasticity estimates of
//!   the headline quantities under parameter perturbations.
//!
//! The companion guide in `book/` walks through the concepts chapter by
//! chapter; its code snippets compile and run as doctests of this crate.
//!
//! ```
//! use sih::model::default_scenarios;
//! use sih::analysis::basic_reproduction_number;
//!
//! let (disease_free, endemic) = default_scenarios();
//! assert!(basic_reproduction_number(disease_free.epidemic()) < 1.0);
//! assert!(basic_reproduction_number(endemic.epidemic()) > 1.0);
//! ```

pub mod actuarial;
pub mod analysis;
mod error;
pub mod model;
pub mod sensitivity;
pub mod simulator;

pub use error::{Error, ValidationError};

// The guide's code snippets run as doctests so the book cannot drift from
// the library. mdbook cannot execute snippets against a crate on its own;
// including the chapters here hands them to `cargo test --doc`.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub struct BookIntroduction;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/model.md")]
pub struct BookModel;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/equilibria.md")]
pub struct BookEquilibria;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/discretisation.md")]
pub struct BookDiscretisation;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/simulation.md")]
pub struct BookSimulation;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pricing.md")]
pub struct BookPricing;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/sensitivity.md")]
pub struct BookSensitivity;
