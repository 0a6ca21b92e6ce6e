//! Rings of integers of pure number fields `Q(alpha)`, `alpha^n = a`.

pub mod arith;
mod error;
pub mod field;
pub mod global;
pub mod lattice;
pub mod local;
pub mod verify;

pub use arith::FactoredInt;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use global::{ring_of_integers, CompositeParts, IntegerRingResult, PrimeGenerator};
pub use lattice::OrderLattice;
pub use local::{local_order, Construction, LocalOrder, ResidueProfile};
pub use verify::{certified, certify, Certificate};
