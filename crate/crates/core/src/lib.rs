//! Fuzzy supersphere toolkit.
//!
//! Graded matrix algebras `End(V(q/2,1̄))` carrying the adjoint action of osp(1|2),
//! their superspherical harmonics, an exact polynomial model of the classical
//! (2|2)-supersphere, and a graded derivation-based differential calculus.

pub mod error;
pub mod graded;
pub mod numeric;
pub mod osp;
pub mod fuzzy;
pub mod oracle;
pub mod calculus;

pub use error::{Error, Result};
