use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gauss::GaussRat;
use super::superpoly::{Monomial, Poly, SuperPoly, EMPTY, T45};
use crate::error::{Error, Result};
use crate::graded::C64;
use crate::numeric::{double_factorial, ratio};
use crate::osp::pauli;

/// Polynomial model of the (2|2)-supersphere `Σ(x^i)² + 2θ⁴θ⁵ = ρ²` with exact radius.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperSphereOracle {
    rho: BigRational,
}

/// `∮ x^a y^b z^c dΩ / 4π` over the unit sphere.
pub fn sphere_moment(m: &Monomial) -> BigRational {
    if m.iter().any(|e| e % 2 == 1) {
        return BigRational::zero();
    }
    let num = double_factorial(m[0] as i64 - 1) * double_factorial(m[1] as i64 - 1) * double_factorial(m[2] as i64 - 1);
    ratio(num, double_factorial((m[0] + m[1] + m[2]) as i64 + 1))
}

fn rat_pow(r: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= r;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

fn gauss(z: C64) -> GaussRat {
    let conv = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
    GaussRat::new(conv(z.re), conv(z.im))
}

impl SuperSphereOracle {
    pub fn new(rho: BigRational) -> Result<Self> {
        if rho <= BigRational::zero() {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        Ok(Self { rho })
    }

    /// Radius taken as the exact binary fraction of `rho`.
    pub fn from_f64(rho: f64) -> Result<Self> {
        let r = BigRational::from_float(rho).ok_or_else(|| Error::InvalidArgument(format!("radius {rho} is not finite")))?;
        Self::new(r)
    }

    pub fn rho(&self) -> &BigRational {
        &self.rho
    }

    pub fn rho_pow(&self, e: i64) -> BigRational {
        rat_pow(&self.rho, e)
    }

    /// Generator `Σ(x^i)² + 2θ⁴θ⁵ − ρ²` of the defining ideal.
    pub fn ideal_generator(&self) -> SuperPoly {
        let mut p = Poly::constant(GaussRat::real(-(&self.rho * &self.rho)));
        for k in 0..3 {
            let mut m = [0; 3];
            m[k] = 2;
            p.add_term(m, &GaussRat::one());
        }
        SuperPoly::from_comps(p, Poly::zero(), Poly::zero(), Poly::constant(GaussRat::from_int(2)))
    }

    /// Unique representative with `x3`-degree at most one.
    pub fn normal_form(&self, f: &SuperPoly) -> SuperPoly {
        let rho2 = GaussRat::real(&self.rho * &self.rho);
        let mut out = f.clone();
        loop {
            let mut changed = false;
            for comp in 0..4 {
                let Some((m, z)) = out.comps[comp].terms().find(|(m, _)| m[2] >= 2).map(|(m, z)| (*m, z.clone())) else {
                    continue;
                };
                changed = true;
                out.comps[comp].add_term(m, &-&z);
                let base = [m[0], m[1], m[2] - 2];
                out.comps[comp].add_term(base, &(&z * &rho2));
                out.comps[comp].add_term([base[0] + 2, base[1], base[2]], &-&z);
                out.comps[comp].add_term([base[0], base[1] + 2, base[2]], &-&z);
                // −2θ⁴θ⁵ only survives on the θ-free component
                if comp == EMPTY {
                    out.comps[T45].add_term(base, &(&z * &GaussRat::from_int(-2)));
                }
            }
            if !changed {
                return out;
            }
        }
    }

    /// `I(f) / π`, exact.
    pub fn integral_over_pi(&self, f: &SuperPoly) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, z) in f.comps[EMPTY].terms() {
            let n = (m[0] + m[1] + m[2]) as i64;
            let w = sphere_moment(m) * BigRational::from_integer(BigInt::from(n + 1)) * self.rho_pow(n - 1);
            acc += &z.scale(&w);
        }
        for (m, z) in f.comps[T45].terms() {
            let n = (m[0] + m[1] + m[2]) as i64;
            let w = sphere_moment(m) * self.rho_pow(n + 1);
            acc += &(-z.scale(&w));
        }
        acc.scale(&BigRational::from_integer(BigInt::from(2)))
    }

    /// Berezin-spherical integral `½∮[∂_ρ f_∅ + f_∅/ρ − ρ f₄₅] dΩ`.
    pub fn integral(&self, f: &SuperPoly) -> C64 {
        self.integral_over_pi(f).to_c64() * std::f64::consts::PI
    }

    /// `⟨f|g⟩ = (ρ/2π) I(f^× g)`, exact.
    pub fn inner(&self, f: &SuperPoly, g: &SuperPoly) -> GaussRat {
        let prod = &self.normal_form(f).cross() * g;
        self.integral_over_pi(&prod).scale(&(&self.rho / BigRational::from_integer(BigInt::from(2))))
    }

    /// Action of the osp(1|2) generator `a` as a graded vector field.
    pub fn vector_field(&self, a: usize, f: &SuperPoly) -> SuperPoly {
        vector_field(a, f)
    }

    /// Body map followed by reduction modulo `Σ(x^i)² − ρ²`.
    pub fn body_map(&self, f: &SuperPoly) -> Poly {
        self.body_normal_form(&f.body())
    }

    pub fn body_normal_form(&self, p: &Poly) -> Poly {
        self.normal_form(&SuperPoly::even(p.clone())).comps[EMPTY].clone()
    }

    /// `(1/4π) ∮ f* g` on the sphere of radius ρ.
    pub fn body_inner(&self, f: &Poly, g: &Poly) -> GaussRat {
        let prod = &f.conj() * g;
        let mut acc = GaussRat::zero();
        for (m, z) in prod.terms() {
            let n = (m[0] + m[1] + m[2]) as i64;
            acc += &z.scale(&(sphere_moment(m) * self.rho_pow(n)));
        }
        acc
    }
}

/// `J_i = −iε_{ijk} x^j ∂_k + ½(σ_i)_{αβ} θ^α ∂_β`,
/// `J_α = ½[i x^k (σ₂σ_k)_{αβ} ∂_β − θ^β (σ_k)_{βα} ∂_k]`.
pub fn vector_field(a: usize, f: &SuperPoly) -> SuperPoly {
    let sigma = pauli();
    let half = GaussRat::frac(1, 2);
    let mut out = SuperPoly::zero();
    if a < 3 {
        out = f.map(|p| body_vector_field(a, p));
        for al in 0..2 {
            for be in 0..2 {
                let c = sigma[a][al][be];
                if c.norm() == 0.0 {
                    continue;
                }
                let term = f.deriv_theta(be).theta_mul(al).scale(&(&gauss(c) * &half));
                out = &out + &term;
            }
        }
    } else {
        let al = a - 3;
        for k in 0..3 {
            let s2sk = mat2(&sigma[1], &sigma[k]);
            for be in 0..2 {
                let c1 = s2sk[al][be] * C64::new(0.0, 1.0);
                if c1.norm() != 0.0 {
                    out = &out + &f.deriv_theta(be).mul_x(k).scale(&(&gauss(c1) * &half));
                }
                let c2 = sigma[k][be][al];
                if c2.norm() != 0.0 {
                    out = &out - &f.deriv_x(k).theta_mul(be).scale(&(&gauss(c2) * &half));
                }
            }
        }
    }
    out
}

fn mat2(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            out[r][s] = a[r][0] * b[0][s] + a[r][1] * b[1][s];
        }
    }
    out
}

/// Angular momentum `J_i = −i ε_{ijk} x^j ∂_k` on polynomials.
pub fn body_vector_field(i: usize, p: &Poly) -> Poly {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let minus_i = -GaussRat::i();
    let t1 = p.deriv(k).mul_x(j).scale(&minus_i);
    let t2 = p.deriv(j).mul_x(k).scale(&minus_i);
    &t1 - &t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::superpoly::{T4, T5};

    fn oracle() -> SuperSphereOracle {
        SuperSphereOracle::new(BigRational::new(3.into(), 2.into())).unwrap()
    }

    #[test]
    fn moments() {
        assert_eq!(sphere_moment(&[0, 0, 0]), BigRational::one());
        assert_eq!(sphere_moment(&[2, 0, 0]), BigRational::new(1.into(), 3.into()));
        assert_eq!(sphere_moment(&[2, 2, 0]), BigRational::new(1.into(), 15.into()));
        assert_eq!(sphere_moment(&[1, 0, 1]), BigRational::zero());
    }

    #[test]
    fn integral_of_constants() {
        let o = oracle();
        let rho = o.rho().clone();
        assert_eq!(o.integral_over_pi(&SuperPoly::one()), GaussRat::real(BigRational::from_integer(2.into()) / &rho));
        let t45 = &SuperPoly::theta(0) * &SuperPoly::theta(1);
        assert_eq!(o.integral_over_pi(&t45), GaussRat::real(-BigRational::from_integer(2.into()) * &rho));
        assert_eq!(o.inner(&SuperPoly::one(), &SuperPoly::one()), GaussRat::one());
    }

    #[test]
    fn normal_form_of_ideal() {
        let o = oracle();
        assert!(o.normal_form(&o.ideal_generator()).is_zero());
        let x3sq = SuperPoly::x(2).pow(2);
        let nf = o.normal_form(&x3sq);
        let expected = &o.ideal_generator().scale(&GaussRat::from_int(-1)) + &x3sq;
        assert_eq!(nf, expected);
        assert_eq!(nf.comps[T45], Poly::constant(GaussRat::from_int(-2)));
        assert!(nf.comps[T4].is_zero() && nf.comps[T5].is_zero());
    }

    #[test]
    fn vector_fields_preserve_ideal() {
        let o = oracle();
        for a in 0..5 {
            assert!(o.vector_field(a, &o.ideal_generator()).is_zero(), "generator {a}");
        }
        // J₃ z = z and J₋ z = −2 x³
        let z = &SuperPoly::x(0) + &SuperPoly::x(1).scale(&GaussRat::i());
        assert_eq!(vector_field(2, &z), z);
        let jm = &vector_field(0, &z) - &vector_field(1, &z).scale(&GaussRat::i());
        assert_eq!(jm, SuperPoly::x(2).scale(&GaussRat::from_int(-2)));
    }
}
