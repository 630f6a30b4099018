use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::gauss::GaussRat;
use super::sphere::{body_vector_field, vector_field, SuperSphereOracle};
use super::superpoly::{Poly, SuperPoly};
use crate::error::{Error, Result};
use crate::fuzzy::{HarmonicLabel, SphereLabel};
use crate::graded::C64;
use crate::numeric::{factorial, pow2, ratio, sqrt_rational};
use crate::osp::J5;

/// `√norm_sq · poly`, keeping the polynomial part exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Scaled<P> {
    pub norm_sq: BigRational,
    pub poly: P,
}

impl<P> Scaled<P> {
    pub fn factor(&self) -> f64 {
        sqrt_rational(&self.norm_sq)
    }
}

/// Exact `r` with `a = r·b`, if it exists.
pub fn proportionality(a: &SuperPoly, b: &SuperPoly) -> Option<GaussRat> {
    if b.is_zero() {
        return a.is_zero().then(GaussRat::zero);
    }
    let (comp, (m, zb)) = (0..4).find_map(|c| b.comps[c].terms().next().map(|(m, z)| (c, (*m, z.clone()))))?;
    let za = a.comps[comp].terms().find(|(ma, _)| **ma == m).map(|(_, z)| z.clone()).unwrap_or_else(GaussRat::zero);
    let r = za.checked_div(&zb)?;
    (a == &b.scale(&r)).then_some(r)
}

fn z_poly() -> Poly {
    &Poly::x(0) + &Poly::x(1).scale(&GaussRat::i())
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SuperSphereOracle {
    fn lower(&self, f: &SuperPoly) -> SuperPoly {
        let jm = &vector_field(0, f) - &vector_field(1, f).scale(&GaussRat::i());
        self.normal_form(&jm)
    }

    /// Highest weight harmonic of superspin `j2/2`, representative with no `P_ρ` factor.
    pub fn highest_weight(&self, j2: u32) -> Scaled<SuperPoly> {
        let norm_sq = int(1) * ratio(factorial(j2 as u64), BigUint::from(1u32));
        let h = j2 / 2;
        let z = SuperPoly::even(z_poly());
        let poly = if j2 % 2 == 0 {
            let pref = (pow2(h as i64) * int(1) * ratio(factorial(h as u64), BigUint::from(1u32)) * self.rho_pow(h as i64)).recip();
            z.pow(h).scale(&GaussRat::real(pref))
        } else {
            let pref = (pow2(h as i64) * ratio(factorial(h as u64), BigUint::from(1u32)) * self.rho_pow(h as i64 + 2)).recip();
            let odd = &SuperPoly::x(2).theta_mul(0) + &z.theta_mul(1);
            // x³θ⁴ + zθ⁵
            (&z.pow(h) * &odd).scale(&GaussRat::real(pref))
        };
        Scaled { norm_sq, poly }
    }

    /// Superspherical harmonic `Y_{j,l,m,μ}` in normal form.
    pub fn classical_harmonic(&self, label: &HarmonicLabel) -> Scaled<SuperPoly> {
        let hw = self.highest_weight(label.j2);
        let mut cur = if label.mu == 1 { self.normal_form(&vector_field(J5, &hw.poly)) } else { self.normal_form(&hw.poly) };
        let steps = (label.l2() as i32 - label.m2) / 2;
        for _ in 0..steps {
            cur = self.lower(&cur);
        }
        let l2 = label.l2() as i64;
        let m2 = label.m2 as i64;
        let lowering = pow2(2 * label.mu as i64)
            * ratio(factorial(((l2 + m2) / 2) as u64), factorial(label.j2 as u64) * factorial(((l2 - m2) / 2) as u64));
        Scaled { norm_sq: hw.norm_sq * lowering, poly: cur }
    }

    /// `⟨Y_a|Y_b⟩`: exact polynomial pairing times the real normalisations.
    pub fn harmonic_inner(&self, a: &Scaled<SuperPoly>, b: &Scaled<SuperPoly>) -> C64 {
        self.inner(&a.poly, &b.poly).to_c64() * (a.factor() * b.factor())
    }

    /// Structure constant `c` in `Y_{j1} Y_{j2} = c Y_{j1+j2}` for highest weight harmonics.
    /// Fails if the product is not exactly proportional in normal form.
    pub fn structure_constant_classical(&self, j1: u32, j2: u32) -> Result<f64> {
        let a = self.highest_weight(j1);
        let b = self.highest_weight(j2);
        let c = self.highest_weight(j1 + j2);
        let prod = self.normal_form(&(&a.poly * &b.poly));
        let target = self.normal_form(&c.poly);
        let r = proportionality(&prod, &target).ok_or_else(|| {
            Error::InvalidArgument(format!("product of highest weight harmonics {j1}/2 and {j2}/2 is not proportional"))
        })?;
        if !r.im.is_zero() {
            return Err(Error::InvalidArgument("structure constant is not real".into()));
        }
        let s = sqrt_rational(&(&a.norm_sq * &b.norm_sq / &c.norm_sq));
        Ok(s * r.to_c64().re)
    }

    /// Ordinary spherical harmonic `Y_{j,m}` on the body sphere.
    pub fn body_harmonic(&self, label: &SphereLabel) -> Scaled<Poly> {
        let j = label.j as u64;
        let pref = (pow2(j as i64) * ratio(factorial(j), BigUint::from(1u32)) * self.rho_pow(j as i64)).recip();
        let mut cur = z_poly().pow(label.j).scale(&GaussRat::real(pref));
        for _ in 0..(label.j as i32 - label.m) {
            let jm = &body_vector_field(0, &cur) - &body_vector_field(1, &cur).scale(&GaussRat::i());
            cur = self.body_normal_form(&jm);
        }
        let up = (label.j as i64 + label.m as i64) as u64;
        let down = (label.j as i64 - label.m as i64) as u64;
        let norm_sq = int(2 * j + 1) * ratio(factorial(up), factorial(down));
        Scaled { norm_sq, poly: cur }
    }

    /// Classical body map applied to a harmonic, as a multiple of a body harmonic.
    /// Returns `None` for labels whose image is zero, else `(l, m, factor)` with
    /// `β(Y_{j,l,m,μ}) = factor · Y_{l,m}`.
    pub fn body_map_harmonic(&self, label: &HarmonicLabel) -> Result<Option<(SphereLabel, f64)>> {
        let y = self.classical_harmonic(label);
        let img = self.body_map(&y.poly);
        if img.is_zero() {
            return Ok(None);
        }
        if label.l2() % 2 == 1 {
            return Err(Error::InvalidArgument(format!("nonzero body of half-integer label {label}")));
        }
        let bl = SphereLabel::new(label.l2() / 2, label.m2 / 2)?;
        let yb = self.body_harmonic(&bl);
        let r = proportionality(&SuperPoly::even(img), &SuperPoly::even(yb.poly.clone()))
            .ok_or_else(|| Error::InvalidArgument(format!("body of {label} is not a multiple of Y{bl}")))?;
        Ok(Some((bl, r.to_c64().re * y.factor() / yb.factor())))
    }

    /// Signed harmonic coefficients `sign · ⟨Y|f⟩` of `f` over all labels with `j ≤ max_j2/2`.
    pub fn expand(&self, f: &SuperPoly, max_j2: u32) -> Vec<(HarmonicLabel, C64)> {
        let mut out = Vec::new();
        for j2 in 0..=max_j2 {
            for label in HarmonicLabel::block(j2) {
                let y = self.classical_harmonic(&label);
                let c = self.inner(&y.poly, f).to_c64() * (y.factor() * label.norm_sign());
                if c.norm() > 0.0 {
                    out.push((label, c));
                }
            }
        }
        out
    }
}
