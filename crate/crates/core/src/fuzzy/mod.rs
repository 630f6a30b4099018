//! Truncated supersphere and sphere: harmonic bases, ψ maps, embeddings, products and body map.

mod body;
mod element;
mod label;
mod sphere;
mod supersphere;

pub use body::{body_map_coefficients, body_map_fuzzy};
pub use element::{FuzzyElement, SphereElement};
pub use label::{HarmonicLabel, SphereLabel};
pub use sphere::FuzzySphere;
pub use supersphere::{FuzzySuperSphere, SuperSphereSummary};

use crate::error::{Error, Result};

/// Embedding of coefficient vectors from level `q_from` into level `q_to`.
pub fn eta(q_to: u32, q_from: u32, e: &FuzzyElement) -> Result<FuzzyElement> {
    if q_from > q_to {
        return Err(Error::Embedding { from: q_from, to: q_to });
    }
    if e.q != q_from {
        return Err(Error::InvalidArgument(format!("element lives at level {}, not {q_from}", e.q)));
    }
    e.embed(q_to)
}

/// Structure constant `c^q_{j1 j2}` of highest weight harmonics, with the residual of
/// the proportionality claim.
pub fn structure_constant_fuzzy(q: u32, j1_2: u32, j2_2: u32) -> Result<(f64, f64)> {
    FuzzySuperSphere::new(q, 1.0)?.structure_constant(j1_2, j2_2)
}

#[cfg(test)]
mod tests;
