//! Noetherian forms over finite groups and finite modular lattices.
//!
//! Image maps and normality live in [`form`], interval projections and the
//! butterfly in [`subfactor`], series and their refinement in [`series`].
//! [`verify`] checks an instance against the axioms by brute force.

pub mod dot;
pub mod error;
pub mod form;
pub mod group;
pub mod lattice;
pub mod modular;
pub mod series;
pub mod subfactor;
pub mod verify;
pub mod zigzag;

pub use error::{Error, Result};
pub use form::{dualize, Dual, Form, ObjectId, SubobjectRef};
pub use subfactor::{Ambient, Interval};
