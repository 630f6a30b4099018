use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::gauss::GaussRat;
use crate::error::{Error, Result};
use crate::graded::Parity;

/// Exponent vector `(a, b, c)` of `x1^a x2^b x3^c`.
pub type Monomial = [u32; 3];

/// Polynomial in `x1, x2, x3` with Gaussian-rational coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    /// The coordinate `x_{k+1}`.
    pub fn x(k: usize) -> Self {
        let mut m = [0; 3];
        m[k] = 1;
        Self::monomial(m, GaussRat::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussRat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (m, z) in &self.terms {
            out.add_term(*m, &(z * c));
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussRat::real(r.clone()))
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, z)| (*m, z.conj())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(GaussRat::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `∂/∂x_{k+1}`.
    pub fn deriv(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, z) in &self.terms {
            if m[k] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[k] -= 1;
            out.add_term(m2, &(z * &GaussRat::from_int(m[k] as i64)));
        }
        out
    }

    pub fn mul_x(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, z) in &self.terms {
            let mut m2 = *m;
            m2[k] += 1;
            out.add_term(m2, z);
        }
        out
    }

    pub fn max_x3_degree(&self) -> u32 {
        self.terms.keys().map(|m| m[2]).max().unwrap_or(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, z) in &o.terms {
            out.add_term(*m, z);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, z) in &o.terms {
            out.add_term(*m, &-z);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, z)| (*m, -z)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, z1) in &self.terms {
            for (m2, z2) in &o.terms {
                out.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], &(z1 * z2));
            }
        }
        out
    }
}

/// Component index in `f = f_∅ + f₄θ⁴ + f₅θ⁵ + f₄₅θ⁴θ⁵`.
pub const EMPTY: usize = 0;
pub const T4: usize = 1;
pub const T5: usize = 2;
pub const T45: usize = 3;

/// Polynomial superfunction on ℝ^{3|2}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperPoly {
    pub comps: [Poly; 4],
}

impl SuperPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_comps(empty: Poly, t4: Poly, t5: Poly, t45: Poly) -> Self {
        Self { comps: [empty, t4, t5, t45] }
    }

    pub fn even(p: Poly) -> Self {
        Self::from_comps(p, Poly::zero(), Poly::zero(), Poly::zero())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::even(Poly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn x(k: usize) -> Self {
        Self::even(Poly::x(k))
    }

    /// `θ⁴` for `alpha = 0`, `θ⁵` for `alpha = 1`.
    pub fn theta(alpha: usize) -> Self {
        let mut out = Self::zero();
        out.comps[1 + alpha] = Poly::constant(GaussRat::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Parity if homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let even = !self.comps[EMPTY].is_zero() || !self.comps[T45].is_zero();
        let odd = !self.comps[T4].is_zero() || !self.comps[T5].is_zero();
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn even_part(&self) -> Self {
        Self::from_comps(self.comps[EMPTY].clone(), Poly::zero(), Poly::zero(), self.comps[T45].clone())
    }

    pub fn odd_part(&self) -> Self {
        Self::from_comps(Poly::zero(), self.comps[T4].clone(), self.comps[T5].clone(), Poly::zero())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self { comps: [f(&self.comps[0]), f(&self.comps[1]), f(&self.comps[2]), f(&self.comps[3])] }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `∂/∂x_{k+1}` acting componentwise.
    pub fn deriv_x(&self, k: usize) -> Self {
        self.map(|p| p.deriv(k))
    }

    pub fn mul_x(&self, k: usize) -> Self {
        self.map(|p| p.mul_x(k))
    }

    /// Left derivative `∂/∂θ^{4+alpha}`.
    pub fn deriv_theta(&self, alpha: usize) -> Self {
        let c = &self.comps;
        if alpha == 0 {
            Self::from_comps(c[T4].clone(), Poly::zero(), c[T45].clone(), Poly::zero())
        } else {
            Self::from_comps(c[T5].clone(), -&c[T45], Poly::zero(), Poly::zero())
        }
    }

    /// Left multiplication by `θ^{4+alpha}`.
    pub fn theta_mul(&self, alpha: usize) -> Self {
        let c = &self.comps;
        if alpha == 0 {
            Self::from_comps(Poly::zero(), c[EMPTY].clone(), Poly::zero(), c[T5].clone())
        } else {
            Self::from_comps(Poly::zero(), Poly::zero(), c[EMPTY].clone(), -&c[T4])
        }
    }

    /// Cross involution `f_∅* + f₄*θ⁵ − f₅*θ⁴ + f₄₅*θ⁴θ⁵`.
    pub fn cross(&self) -> Self {
        let c = &self.comps;
        Self::from_comps(c[EMPTY].conj(), -&c[T5].conj(), c[T4].conj(), c[T45].conj())
    }

    /// Body: set all odd coordinates to zero.
    pub fn body(&self) -> Poly {
        self.comps[EMPTY].clone()
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, o: &SuperPoly) -> SuperPoly {
        SuperPoly {
            comps: [
                &self.comps[0] + &o.comps[0],
                &self.comps[1] + &o.comps[1],
                &self.comps[2] + &o.comps[2],
                &self.comps[3] + &o.comps[3],
            ],
        }
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, o: &SuperPoly) -> SuperPoly {
        self + &-o
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.map(|p| -p)
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, o: &SuperPoly) -> SuperPoly {
        let (f, g) = (&self.comps, &o.comps);
        let empty = &f[EMPTY] * &g[EMPTY];
        let t4 = &(&f[EMPTY] * &g[T4]) + &(&f[T4] * &g[EMPTY]);
        let t5 = &(&f[EMPTY] * &g[T5]) + &(&f[T5] * &g[EMPTY]);
        let t45 = &(&(&f[EMPTY] * &g[T45]) + &(&f[T45] * &g[EMPTY])) + &(&(&f[T4] * &g[T5]) - &(&f[T5] * &g[T4]));
        SuperPoly::from_comps(empty, t4, t5, t45)
    }
}

impl fmt::Display for SuperPoly {
    /// Terms `c * x1^a x2^b x3^c t4 t5` joined by ` + `; `0` if empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const THETA: [&str; 4] = ["", " t4", " t5", " t4 t5"];
        let mut first = true;
        for (comp, theta) in THETA.iter().enumerate() {
            for (m, z) in self.comps[comp].terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{z}")?;
                if m.iter().all(|e| *e == 0) && theta.is_empty() {
                    continue;
                }
                write!(f, " *")?;
                for (k, e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => write!(f, " x{}", k + 1)?,
                        _ => write!(f, " x{}^{e}", k + 1)?,
                    }
                }
                write!(f, "{theta}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_factor(tok: &str) -> Result<SuperPoly> {
    let bad = || Error::Parse(format!("bad factor '{tok}'"));
    match tok {
        "t4" => return Ok(SuperPoly::theta(0)),
        "t5" => return Ok(SuperPoly::theta(1)),
        _ => {}
    }
    let rest = tok.strip_prefix('x').ok_or_else(bad)?;
    let (var, exp) = match rest.split_once('^') {
        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let k = match var {
        "1" => 0,
        "2" => 1,
        "3" => 2,
        _ => return Err(bad()),
    };
    Ok(SuperPoly::x(k).pow(exp))
}

/// Parses the `Display` form; factors may appear in any order, θ's multiply left to right.
impl FromStr for SuperPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = SuperPoly::zero();
        for term in s.split(" + ") {
            let (coef, factors) = match term.split_once('*') {
                Some((c, f)) => (c.trim().parse::<GaussRat>()?, f),
                None if term.trim_start().starts_with(['x', 't']) => (GaussRat::one(), term),
                None => (term.trim().parse::<GaussRat>()?, ""),
            };
            let mut t = SuperPoly::constant(coef);
            for tok in factors.split_whitespace() {
                t = &t * &parse_factor(tok)?;
            }
            out = &out + &t;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_rules() {
        let t4 = SuperPoly::theta(0);
        let t5 = SuperPoly::theta(1);
        let p45 = &t4 * &t5;
        assert_eq!(p45.comps[T45], Poly::constant(GaussRat::one()));
        assert_eq!((&t5 * &t4).comps[T45], Poly::constant(GaussRat::from_int(-1)));
        assert!((&t4 * &t4).is_zero());
        assert_eq!(t4.theta_mul(1), &t5 * &t4);
        assert_eq!(p45.deriv_theta(0), t5);
        assert_eq!(p45.deriv_theta(1), -&t4);
    }

    #[test]
    fn cross_on_generators() {
        let t4 = SuperPoly::theta(0);
        let t5 = SuperPoly::theta(1);
        assert_eq!(t4.cross(), t5);
        assert_eq!(t5.cross(), -&t4);
        assert_eq!(t4.cross().cross(), -&t4);
    }

    #[test]
    fn text_round_trip() {
        let z = GaussRat::new(BigRational::new((-3).into(), 4.into()), BigRational::new(5.into(), 2.into()));
        let f = &(&SuperPoly::x(0).pow(2) * &SuperPoly::theta(0)).scale(&z) + &SuperPoly::constant(GaussRat::frac(-1, 3));
        let g = &(&SuperPoly::x(2) * &(&SuperPoly::theta(0) * &SuperPoly::theta(1))).scale(&GaussRat::i()) + &f;
        for p in [SuperPoly::zero(), f, g] {
            let text = p.to_string();
            assert_eq!(text.parse::<SuperPoly>().unwrap(), p, "{text}");
        }
        assert_eq!("-1/2 * x1^2 x3 t4".parse::<SuperPoly>().unwrap().to_string(), "-1/2 * x1^2 x3 t4");
        assert_eq!("t5 t4".parse::<SuperPoly>().unwrap(), -&(&SuperPoly::theta(0) * &SuperPoly::theta(1)));
        assert!("2 * x4".parse::<SuperPoly>().is_err());
        assert!("1/0".parse::<SuperPoly>().is_err());
        assert!("".parse::<SuperPoly>().is_err());
    }
}
