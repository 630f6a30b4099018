//! Exact polynomial model of the (2|2)-supersphere.

pub mod gauss;
pub mod harmonics;
pub mod sphere;
pub mod superpoly;

pub use gauss::GaussRat;
pub use harmonics::{proportionality, Scaled};
pub use sphere::{body_vector_field, sphere_moment, vector_field, SuperSphereOracle};
pub use superpoly::{Monomial, Poly, SuperPoly};
