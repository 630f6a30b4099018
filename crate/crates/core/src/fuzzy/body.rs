use super::element::{FuzzyElement, SphereElement};
use super::label::SphereLabel;
use super::sphere::FuzzySphere;
use super::supersphere::FuzzySuperSphere;
use crate::error::{Error, Result};
use crate::graded::{GradedMatrix, Parity, C64};

/// Body map on harmonic coefficients: `(j,l,m,μ) ↦ (−1)^μ/√(2l+1) · (l,m)` for even
/// labels, zero for odd ones.
pub fn body_map_coefficients(e: &FuzzyElement) -> SphereElement {
    let mut out = SphereElement::zero(e.q);
    for (label, z) in e.iter() {
        if label.parity() == Parity::Odd {
            continue;
        }
        let l = label.l2() / 2;
        let sign = if label.mu == 1 { -1.0 } else { 1.0 };
        let w = sign / ((2 * l + 1) as f64).sqrt();
        out.add_term(SphereLabel { j: l, m: label.m2 / 2 }, z * C64::new(w, 0.0)).expect("l ≤ j ≤ q");
    }
    out
}

/// Noncommutative body map `End(V(q/2,1̄)) → End(V(q/2))`.
pub fn body_map_fuzzy(f: &GradedMatrix, sup: &FuzzySuperSphere, body: &FuzzySphere) -> Result<GradedMatrix> {
    if sup.q() != body.q() {
        return Err(Error::InvalidArgument(format!(
            "body map needs matching levels, got {} and {}",
            sup.q(),
            body.q()
        )));
    }
    body.psi(&body_map_coefficients(&sup.psi_inv(f)?))
}
