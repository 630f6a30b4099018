use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::element::SphereElement;
use super::label::SphereLabel;
use crate::error::{Error, Result};
use crate::graded::{hs_inner, GradedDims, GradedMatrix, Parity, C64, ZERO};
use crate::numeric::{double_factorial, factorial, pow2, ratio, sqrt_rational};
use crate::osp::{build_sl2_basis, build_sl2_irrep, LieSuperalgebra, Sl2Irrep};

/// The truncated sphere `End(V(q/2))` with its orthonormal harmonic basis.
#[derive(Debug)]
pub struct FuzzySphere {
    q: u32,
    rho: f64,
    rep: Sl2Irrep,
    basis: LieSuperalgebra,
    generators: Vec<GradedMatrix>,
    labels: Vec<SphereLabel>,
    index: HashMap<SphereLabel, usize>,
    harmonics: OnceLock<Vec<GradedMatrix>>,
}

fn highest_weight_norm_sq(q: u32, j: u32) -> BigRational {
    let (q, j) = (q as u64, j as u64);
    let num = pow2(j as i64)
        * ratio(double_factorial(2 * j as i64 + 1) * (q + 1) * factorial(q - j), BigUint::from(1u32));
    num / ratio(factorial(j) * factorial(q + j + 1), BigUint::from(1u32))
}

fn lowering_norm_sq(label: &SphereLabel) -> BigRational {
    let j = label.j as i64;
    let m = label.m as i64;
    ratio(factorial((j + m) as u64), factorial(2 * j as u64) * factorial((j - m) as u64))
}

impl FuzzySphere {
    pub fn new(q: u32, rho: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("truncation level q must be at least 1".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {rho}")));
        }
        let rep = build_sl2_irrep(q);
        let generators = rep.generators();
        let labels = SphereLabel::all_up_to(q);
        let index = labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
        Ok(Self { q, rho, rep, basis: build_sl2_basis(), generators, labels, index, harmonics: OnceLock::new() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rep(&self) -> &Sl2Irrep {
        &self.rep
    }

    pub fn basis(&self) -> &LieSuperalgebra {
        &self.basis
    }

    pub fn dims(&self) -> GradedDims {
        self.rep.dims()
    }

    pub fn generator(&self, a: usize) -> &GradedMatrix {
        &self.generators[a]
    }

    pub fn labels(&self) -> &[SphereLabel] {
        &self.labels
    }

    pub fn adjoint_action(&self, a: usize, f: &GradedMatrix) -> Result<GradedMatrix> {
        if f.dims() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims().to_string(), found: f.dims().to_string() });
        }
        Ok(GradedMatrix::adjoint_action(&self.generators[a], Parity::Even, f))
    }

    pub fn nc_highest_weight(&self, j: u32) -> Result<GradedMatrix> {
        if j > self.q {
            return Err(Error::Truncation { j2: 2 * j, q: self.q });
        }
        let mut m = GradedMatrix::identity(self.dims());
        for _ in 0..j {
            m = &m * &self.rep.jp;
        }
        Ok(m.scale_real(sqrt_rational(&highest_weight_norm_sq(self.q, j))))
    }

    fn build_harmonics(&self) -> Vec<GradedMatrix> {
        let mut table = vec![GradedMatrix::zeros(self.dims()); self.labels.len()];
        for j in 0..=self.q {
            let mut cur = self.nc_highest_weight(j).expect("j within truncation");
            for k in 0..=2 * j {
                let label = SphereLabel { j, m: j as i32 - k as i32 };
                table[self.index[&label]] = cur.scale_real(sqrt_rational(&lowering_norm_sq(&label)));
                cur = GradedMatrix::adjoint_action(&self.rep.jm, Parity::Even, &cur);
            }
        }
        table
    }

    pub fn harmonics(&self) -> &[GradedMatrix] {
        self.harmonics.get_or_init(|| self.build_harmonics())
    }

    pub fn nc_spherical_harmonic(&self, j: u32, m: i32) -> Result<&GradedMatrix> {
        let label = SphereLabel::new(j, m)?;
        let k = self.index.get(&label).ok_or(Error::Truncation { j2: 2 * j, q: self.q })?;
        Ok(&self.harmonics()[*k])
    }

    pub fn psi(&self, e: &SphereElement) -> Result<GradedMatrix> {
        let mut out = GradedMatrix::zeros(self.dims());
        for (label, z) in e.iter() {
            out.axpy(*z, self.nc_spherical_harmonic(label.j, label.m)?);
        }
        Ok(out)
    }

    pub fn psi_inv(&self, f: &GradedMatrix) -> Result<SphereElement> {
        let mut e = SphereElement::zero(self.q);
        for (label, y) in self.labels.iter().zip(self.harmonics()) {
            let c = hs_inner(y, f, self.q)?;
            if c != ZERO {
                e.add_term(*label, c)?;
            }
        }
        Ok(e)
    }

    /// `X̂_k = 2ρ/√(q(q+2)) · J_k`.
    pub fn coordinates(&self) -> Vec<GradedMatrix> {
        let q = self.q as f64;
        let s = 2.0 * self.rho / (q * (q + 2.0)).sqrt();
        self.generators.iter().map(|g| g.scale_real(s)).collect()
    }

    /// `Σ X̂_k² − ρ² Id`.
    pub fn casimir_defect(&self) -> GradedMatrix {
        let mut out = GradedMatrix::identity(self.dims()).scale_real(-self.rho * self.rho);
        for x in self.coordinates() {
            out += &(&x * &x);
        }
        out
    }

    pub fn gram(&self) -> nalgebra::DMatrix<C64> {
        let h = self.harmonics();
        nalgebra::DMatrix::from_fn(h.len(), h.len(), |r, c| hs_inner(&h[r], &h[c], self.q).unwrap())
    }
}
