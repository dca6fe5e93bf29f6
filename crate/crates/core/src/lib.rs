//! Exact computer algebra for free Baxter algebras of weight λ.
//!
//! - [`coeff`]: the coefficient rings ℤ, ℚ and ℤ/m.
//! - [`poly`]: the base algebra A = C[X].
//! - [`shuffle`]: the shuffle Baxter algebra Ш_C(X) with its mixed shuffle
//!   product and Baxter operator.
//! - [`series`]: its completion, handled at finite precision.
//! - [`ideals`]: Baxter ideals and quotient maps.
//! - [`expr`]: the expression language used by the command line.
//! - [`standard`]: the sequence model and the morphism Φ into it.
//! - [`verify`]: executable witnesses and randomized identity checks.
//! - [`random`]: seeded samplers for small elements.

pub mod coeff;
pub mod error;
pub mod expr;
pub mod ideals;
pub mod poly;
pub mod random;
pub mod series;
pub mod shuffle;
pub mod standard;
pub mod verify;

pub use coeff::{Coefficient, Ring, Valuation};
pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial};
pub use series::CompleteElement;
pub use shuffle::{BaxterContext, ShuffleElement, TensorWord};
pub use standard::{BarElement, SequenceElement};
