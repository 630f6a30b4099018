use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::element::FuzzyElement;
use super::label::HarmonicLabel;
use crate::error::{Error, Result};
use crate::graded::{indefinite_inner, GradedDims, GradedMatrix, Parity, C64, ZERO};
use crate::numeric::{double_factorial, factorial, pow2, ratio, sqrt_rational};
use crate::osp::{build_irrep, build_osp_basis, Irrep, LieSuperalgebra, J3, J4, J5};

/// The truncated supersphere `End(V(q/2,1̄))` with its harmonic basis.
#[derive(Debug)]
pub struct FuzzySuperSphere {
    q: u32,
    rho: f64,
    rep: Irrep,
    basis: LieSuperalgebra,
    generators: Vec<GradedMatrix>,
    labels: Vec<HarmonicLabel>,
    index: HashMap<HarmonicLabel, usize>,
    harmonics: OnceLock<Vec<GradedMatrix>>,
}

/// Squared prefactor of the highest weight harmonic of superspin `j2/2` at level `q`.
fn highest_weight_norm_sq(q: u32, j2: u32) -> BigRational {
    let q = q as u64;
    let j2 = j2 as u64;
    if j2 % 2 == 0 {
        let j = j2 / 2;
        let num = pow2(j as i64)
            * ratio(double_factorial(2 * j as i64 - 1) * factorial(q - j), BigUint::from(1u32));
        num / ratio(factorial(j) * factorial(q + j), BigUint::from(1u32))
    } else {
        // Γ(q−j+½) = (q−(j2+1)/2)!, Γ(j+½) = ((j2−1)/2)!, Γ(q+j+3/2) = (q+(j2+1)/2)!
        let h = (j2 + 1) / 2;
        let num = pow2(((j2 + 7) / 2) as i64) * ratio(double_factorial(j2 as i64) * factorial(q - h), BigUint::from(1u32));
        let den = ratio(factorial(h - 1) * factorial(q + h), BigUint::from(1u32));
        let pre = ratio(BigUint::from(4u32), BigUint::from((2 * q + 1) * (2 * q + 1)));
        pre * num / den
    }
}

/// Squared lowering prefactor `4^{2(j−l)} Γ(l+m+1) / (Γ(2j+1) Γ(l−m+1))`.
fn lowering_norm_sq(label: &HarmonicLabel) -> BigRational {
    let l2 = label.l2() as i64;
    let m2 = label.m2 as i64;
    let up = ((l2 + m2) / 2) as u64;
    let down = ((l2 - m2) / 2) as u64;
    pow2(2 * label.mu as i64) * ratio(factorial(up), factorial(label.j2 as u64) * factorial(down))
}

impl FuzzySuperSphere {
    pub fn new(q: u32, rho: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("truncation level q must be at least 1".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {rho}")));
        }
        let rep = build_irrep(q, Parity::Odd);
        let generators = rep.generators();
        let labels = HarmonicLabel::all_up_to(q);
        let index = labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
        Ok(Self { q, rho, rep, basis: build_osp_basis(), generators, labels, index, harmonics: OnceLock::new() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rep(&self) -> &Irrep {
        &self.rep
    }

    pub fn basis(&self) -> &LieSuperalgebra {
        &self.basis
    }

    pub fn dims(&self) -> GradedDims {
        self.rep.dims
    }

    pub fn generator(&self, a: usize) -> &GradedMatrix {
        &self.generators[a]
    }

    pub fn labels(&self) -> &[HarmonicLabel] {
        &self.labels
    }

    pub fn label_index(&self, label: &HarmonicLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Graded commutator of the generator `a` with `f`.
    pub fn adjoint_action(&self, a: usize, f: &GradedMatrix) -> Result<GradedMatrix> {
        if f.dims() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims().to_string(), found: f.dims().to_string() });
        }
        Ok(GradedMatrix::adjoint_action(&self.generators[a], self.basis.parities[a], f))
    }

    fn ad(&self, a: usize, f: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::adjoint_action(&self.generators[a], self.basis.parities[a], f)
    }

    fn jp_power(&self, k: u32) -> GradedMatrix {
        let mut out = GradedMatrix::identity(self.dims());
        for _ in 0..k {
            out = &out * &self.rep.jp;
        }
        out
    }

    /// Highest weight harmonic of superspin `j2/2`.
    pub fn nc_highest_weight(&self, j2: u32) -> Result<GradedMatrix> {
        if j2 > 2 * self.q {
            return Err(Error::Truncation { j2, q: self.q });
        }
        let n = sqrt_rational(&highest_weight_norm_sq(self.q, j2));
        let m = if j2 % 2 == 0 {
            self.jp_power(j2 / 2)
        } else {
            let id = GradedMatrix::identity(self.dims());
            let shifted = &self.rep.j3 - &id.scale_real(0.75);
            let inner = &(&shifted * &self.rep.j4) + &(&self.rep.jp * &self.rep.j5);
            &self.jp_power((j2 - 1) / 2) * &inner
        };
        Ok(m.scale_real(n))
    }

    fn build_harmonics(&self) -> Vec<GradedMatrix> {
        let mut table = vec![GradedMatrix::zeros(self.dims()); self.labels.len()];
        for j2 in 0..=2 * self.q {
            let hw = self.nc_highest_weight(j2).expect("j2 within truncation");
            for mu in 0..=1u8 {
                if mu == 1 && j2 == 0 {
                    continue;
                }
                let mut cur = if mu == 1 { self.ad(J5, &hw) } else { hw.clone() };
                let l2 = (j2 - mu as u32) as i32;
                let mut m2 = l2;
                while m2 >= -l2 {
                    let label = HarmonicLabel { j2, mu, m2 };
                    let pref = sqrt_rational(&lowering_norm_sq(&label));
                    table[self.index[&label]] = cur.scale_real(pref);
                    if m2 > -l2 {
                        cur = GradedMatrix::adjoint_action(&self.rep.jm, Parity::Even, &cur);
                    }
                    m2 -= 2;
                }
            }
        }
        table
    }

    /// Every harmonic, in the order of [`Self::labels`]. Built on first use.
    pub fn harmonics(&self) -> &[GradedMatrix] {
        self.harmonics.get_or_init(|| self.build_harmonics())
    }

    pub fn nc_harmonic(&self, label: &HarmonicLabel) -> Result<&GradedMatrix> {
        let k = self.label_index(label).ok_or_else(|| Error::Truncation { j2: label.j2, q: self.q })?;
        Ok(&self.harmonics()[k])
    }

    pub fn psi(&self, e: &FuzzyElement) -> Result<GradedMatrix> {
        let mut out = GradedMatrix::zeros(self.dims());
        for (label, z) in e.iter() {
            out.axpy(*z, self.nc_harmonic(label)?);
        }
        Ok(out)
    }

    /// Harmonic coefficients of `f` from the signed dual basis.
    pub fn psi_inv(&self, f: &GradedMatrix) -> Result<FuzzyElement> {
        let mut e = FuzzyElement::zero(self.q);
        for (label, y) in self.labels.iter().zip(self.harmonics()) {
            let c = indefinite_inner(y, f)? * label.norm_sign();
            if c != ZERO {
                e.add_term(*label, c)?;
            }
        }
        Ok(e)
    }

    pub fn fuzzy_product(&self, a: &FuzzyElement, b: &FuzzyElement) -> Result<FuzzyElement> {
        for e in [a, b] {
            if e.max_j2() > 2 * self.q {
                return Err(Error::Truncation { j2: e.max_j2(), q: self.q });
            }
        }
        self.psi_inv(&(&self.psi(a)? * &self.psi(b)?))
    }

    /// `(X₁, X₂, X₃, Θ₄, Θ₅) = 2ρ/√(q(q+1)) · (J₁, …, J₅)`.
    pub fn coordinates(&self) -> Vec<GradedMatrix> {
        let q = self.q as f64;
        let s = 2.0 * self.rho / (q * (q + 1.0)).sqrt();
        self.generators.iter().map(|g| g.scale_real(s)).collect()
    }

    /// `Σ X_k² + Θ₄Θ₅ − Θ₅Θ₄ − ρ² Id`, which should vanish.
    pub fn casimir_defect(&self) -> GradedMatrix {
        let x = self.coordinates();
        let mut out = GradedMatrix::identity(self.dims()).scale_real(-self.rho * self.rho);
        for xk in &x[..3] {
            out += &(xk * xk);
        }
        out += &(&x[J4] * &x[J5]);
        &out - &(&x[J5] * &x[J4])
    }

    /// Largest deviation of `⟨f|ad(J_A)g⟩ = (−1)^{|J_A||f|}⟨ad(J_A^{‡₁})f|g⟩` over random homogeneous `f, g`.
    pub fn grade_star_residual<R: Rng>(&self, samples: usize, rng: &mut R) -> f64 {
        // J_i‡₁ = J_i, J₄‡₁ = −J₅, J₅‡₁ = J₄
        let star: [(usize, f64); 5] = [(0, 1.0), (1, 1.0), (2, 1.0), (J5, -1.0), (J4, 1.0)];
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            for pf in [Parity::Even, Parity::Odd] {
                let f = random_matrix(self.dims(), rng).project(pf);
                let g = random_matrix(self.dims(), rng);
                for a in 0..5 {
                    let lhs = indefinite_inner(&f, &self.ad(a, &g)).unwrap();
                    let (b, s) = star[a];
                    let adf = self.ad(b, &f).scale_real(s);
                    let rhs = indefinite_inner(&adf, &g).unwrap() * self.basis.parities[a].koszul(pf);
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }

    /// Structure constant `c` in `Ŷ_{j1} Ŷ_{j2} = c Ŷ_{j1+j2}` for highest weight harmonics,
    /// together with the Frobenius norm of the remainder.
    pub fn structure_constant(&self, j1: u32, j2: u32) -> Result<(f64, f64)> {
        if j1 + j2 > 2 * self.q {
            return Err(Error::Truncation { j2: j1 + j2, q: self.q });
        }
        let prod = &self.nc_highest_weight(j1)? * &self.nc_highest_weight(j2)?;
        let target = self.nc_highest_weight(j1 + j2)?;
        let c = indefinite_inner(&target, &prod)?;
        let residual = (&prod - &target.scale(c)).norm();
        Ok((c.re, residual.max(c.im.abs())))
    }

    /// Gram matrix of the harmonic basis under the indefinite inner product.
    pub fn gram(&self) -> nalgebra::DMatrix<C64> {
        let h = self.harmonics();
        let n = h.len();
        nalgebra::DMatrix::from_fn(n, n, |r, c| indefinite_inner(&h[r], &h[c]).unwrap())
    }

    /// Harmonic coefficients of `(X₁, X₂, X₃, Θ₄, Θ₅)`.
    pub fn coordinate_coefficients(&self) -> Result<Vec<FuzzyElement>> {
        self.coordinates().iter().map(|x| self.psi_inv(x)).collect()
    }

    pub fn j3_weight(&self, f: &GradedMatrix) -> GradedMatrix {
        self.ad(J3, f)
    }
}

pub(crate) fn random_matrix<R: Rng>(dims: GradedDims, rng: &mut R) -> GradedMatrix {
    let n = dims.total();
    let m = nalgebra::DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    GradedMatrix::from_matrix(dims, m).expect("square")
}

/// Serializable summary of a truncated supersphere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperSphereSummary {
    pub q: u32,
    pub rho: f64,
    pub dims: GradedDims,
    pub labels: Vec<HarmonicLabel>,
}

impl From<&FuzzySuperSphere> for SuperSphereSummary {
    fn from(s: &FuzzySuperSphere) -> Self {
        Self { q: s.q, rho: s.rho, dims: s.dims(), labels: s.labels.clone() }
    }
}
