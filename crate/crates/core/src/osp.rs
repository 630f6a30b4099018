//! The Lie superalgebra osp(1|2), its even part sl(2), and their finite-dimensional irreps.
//!
//! Generators are indexed `0..5` for `J₁, J₂, J₃, J₄, J₅`. Spins are stored doubled
//! (`j2 = 2j`, `m2 = 2m`) so that every label is an integer.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{graded_commutator, superadjoint, GradedDims, GradedMatrix, Parity, C64, I, ONE, ZERO};

pub const J1: usize = 0;
pub const J2: usize = 1;
pub const J3: usize = 2;
pub const J4: usize = 3;
pub const J5: usize = 4;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [[[C64; 2]; 2]; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

fn mat2_mul(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            out[r][s] = a[r][0] * b[0][s] + a[r][1] * b[1][s];
        }
    }
    out
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// A finite-dimensional Lie superalgebra given by a homogeneous basis and
/// structure constants `[X_a, X_b] = Σ_c consts[a][b][c] X_c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieSuperalgebra {
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    pub consts: Vec<Vec<Vec<C64>>>,
}

impl LieSuperalgebra {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[C64] {
        &self.consts[a][b]
    }

    /// Bracket of two coordinate vectors, bilinear over homogeneous parts.
    pub fn bracket_vec(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut out = vec![ZERO; n];
        for a in 0..n {
            if x[a] == ZERO {
                continue;
            }
            for b in 0..n {
                if y[b] == ZERO {
                    continue;
                }
                for (cc, o) in out.iter_mut().enumerate() {
                    *o += x[a] * y[b] * self.consts[a][b][cc];
                }
            }
        }
        out
    }

    /// Largest violation of graded antisymmetry `[a,b] = -(-1)^{|a||b|}[b,a]`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let s = self.parities[a].koszul(self.parities[b]);
                for cc in 0..n {
                    worst = worst.max((self.consts[a][b][cc] + self.consts[b][a][cc] * s).norm());
                }
            }
        }
        worst
    }

    /// Largest violation of the graded Jacobi identity
    /// `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]` over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let unit = |k: usize| -> Vec<C64> { (0..n).map(|i| if i == k { ONE } else { ZERO }).collect() };
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let (ea, eb, ec) = (unit(a), unit(b), unit(cc));
                    let lhs = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let r1 = self.bracket_vec(&self.bracket_vec(&ea, &eb), &ec);
                    let r2 = self.bracket_vec(&eb, &self.bracket_vec(&ea, &ec));
                    let s = self.parities[a].koszul(self.parities[b]);
                    for k in 0..n {
                        worst = worst.max((lhs[k] - r1[k] - r2[k] * s).norm());
                    }
                }
            }
        }
        worst
    }
}

/// osp(1|2) with brackets
/// `[J_i,J_j] = iε_{ijk}J_k`, `[J_i,J_α] = ½(σ_i)_{βα}J_β`, `[J_α,J_β] = ½(iσ₂σ_i)_{αβ}J_i`.
pub fn build_osp_basis() -> LieSuperalgebra {
    let n = 5;
    let mut consts = vec![vec![vec![ZERO; n]; n]; n];
    let sigma = pauli();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                consts[i][j][k] = c(0.0, levi_civita(i, j, k));
            }
        }
    }
    for i in 0..3 {
        for a in 0..2 {
            for b in 0..2 {
                let v = sigma[i][b][a] * 0.5;
                consts[i][3 + a][3 + b] = v;
                consts[3 + a][i][3 + b] = -v;
            }
        }
    }
    let isigma2 = sigma[1].map(|row| row.map(|z| z * I));
    for i in 0..3 {
        let m = mat2_mul(&isigma2, &sigma[i]);
        for a in 0..2 {
            for b in 0..2 {
                consts[3 + a][3 + b][i] = m[a][b] * 0.5;
            }
        }
    }
    LieSuperalgebra {
        names: ["J1", "J2", "J3", "J4", "J5"].iter().map(|s| s.to_string()).collect(),
        parities: vec![Parity::Even, Parity::Even, Parity::Even, Parity::Odd, Parity::Odd],
        consts,
    }
}

/// sl(2) with `[J_i,J_j] = iε_{ijk}J_k`.
pub fn build_sl2_basis() -> LieSuperalgebra {
    let mut consts = vec![vec![vec![ZERO; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                consts[i][j][k] = c(0.0, levi_civita(i, j, k));
            }
        }
    }
    LieSuperalgebra {
        names: ["J1", "J2", "J3"].iter().map(|s| s.to_string()).collect(),
        parities: vec![Parity::Even; 3],
        consts,
    }
}

/// Irreducible osp(1|2) module of superspin `j` with highest weight vector of parity `hw_parity`.
///
/// The basis consists of `e_{l,m}` for `l = j` and `l = j - ½`; even vectors come first,
/// and inside each `l`-block `m` runs downwards from `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub j2: u32,
    pub hw_parity: Parity,
    pub dims: GradedDims,
    pub j3: GradedMatrix,
    pub jp: GradedMatrix,
    pub jm: GradedMatrix,
    pub j4: GradedMatrix,
    pub j5: GradedMatrix,
}

impl Irrep {
    /// Offset of the `l = j` (top) block and of the `l = j - ½` block.
    fn offsets(j2: u32, hw_parity: Parity) -> (usize, usize) {
        let top = j2 as usize + 1;
        let low = j2 as usize;
        match hw_parity {
            Parity::Even => (0, top),
            Parity::Odd => (low, 0),
        }
    }

    /// Basis position of `e_{l,m}`; `top` selects `l = j` versus `l = j - ½`.
    pub fn index_of(&self, top: bool, m2: i64) -> Option<usize> {
        let (o_top, o_low) = Self::offsets(self.j2, self.hw_parity);
        let (l2, off) = if top { (self.j2 as i64, o_top) } else { (self.j2 as i64 - 1, o_low) };
        if l2 < 0 || m2.abs() > l2 || (l2 - m2) % 2 != 0 {
            return None;
        }
        Some(off + ((l2 - m2) / 2) as usize)
    }

    pub fn j1(&self) -> GradedMatrix {
        (&self.jp + &self.jm).scale_real(0.5)
    }

    pub fn j2_matrix(&self) -> GradedMatrix {
        (&self.jp - &self.jm).scale(C64::new(0.0, -0.5))
    }

    /// Representation matrix of generator `a` (`0..5` for `J₁..J₅`).
    pub fn generator(&self, a: usize) -> GradedMatrix {
        match a {
            J1 => self.j1(),
            J2 => self.j2_matrix(),
            J3 => self.j3.clone(),
            J4 => self.j4.clone(),
            J5 => self.j5.clone(),
            _ => panic!("osp(1|2) generator index {a} out of range"),
        }
    }

    pub fn generators(&self) -> Vec<GradedMatrix> {
        (0..5).map(|a| self.generator(a)).collect()
    }

    /// Largest deviation of the represented brackets from the structure constants.
    pub fn bracket_residual(&self, basis: &LieSuperalgebra) -> f64 {
        let gens = self.generators();
        let mut worst: f64 = 0.0;
        for a in 0..5 {
            for b in 0..5 {
                let lhs = graded_commutator(&gens[a], &gens[b]).expect("same dims");
                let mut rhs = GradedMatrix::zeros(self.dims);
                for (k, g) in gens.iter().enumerate() {
                    rhs.axpy(basis.consts[a][b][k], g);
                }
                worst = worst.max((&lhs - &rhs).max_abs());
            }
        }
        worst
    }
}

/// Builds the irrep of superspin `j = j2/2` from the ladder action.
pub fn build_irrep(j2: u32, hw_parity: Parity) -> Irrep {
    let top_dim = j2 as usize + 1;
    let low_dim = j2 as usize;
    let dims = match hw_parity {
        Parity::Even => GradedDims { even_dim: top_dim, odd_dim: low_dim },
        Parity::Odd => GradedDims { even_dim: low_dim, odd_dim: top_dim },
    };
    let n = dims.total();
    let mut rep = Irrep {
        j2,
        hw_parity,
        dims,
        j3: GradedMatrix::zeros(dims),
        jp: GradedMatrix::zeros(dims),
        jm: GradedMatrix::zeros(dims),
        j4: GradedMatrix::zeros(dims),
        j5: GradedMatrix::zeros(dims),
    };
    let j = j2 as f64 / 2.0;
    let mut j3 = DMatrix::<C64>::zeros(n, n);
    let mut jp = DMatrix::<C64>::zeros(n, n);
    let mut jm = DMatrix::<C64>::zeros(n, n);
    let mut j4 = DMatrix::<C64>::zeros(n, n);
    let mut j5 = DMatrix::<C64>::zeros(n, n);
    for top in [true, false] {
        let l2 = if top { j2 as i64 } else { j2 as i64 - 1 };
        if l2 < 0 {
            continue;
        }
        let l = l2 as f64 / 2.0;
        let mut m2 = l2;
        while m2 >= -l2 {
            let m = m2 as f64 / 2.0;
            let src = rep.index_of(top, m2).unwrap();
            j3[(src, src)] = c(m, 0.0);
            if let Some(t) = rep.index_of(top, m2 + 2) {
                jp[(t, src)] = c(((l - m) * (l + m + 1.0)).sqrt(), 0.0);
            }
            if let Some(t) = rep.index_of(top, m2 - 2) {
                jm[(t, src)] = c(((l + m) * (l - m + 1.0)).sqrt(), 0.0);
            }
            if top {
                if let Some(t) = rep.index_of(false, m2 + 1) {
                    j4[(t, src)] = c(-0.5 * (j - m).sqrt(), 0.0);
                }
                if let Some(t) = rep.index_of(false, m2 - 1) {
                    j5[(t, src)] = c(0.5 * (j + m).sqrt(), 0.0);
                }
            } else {
                if let Some(t) = rep.index_of(true, m2 + 1) {
                    j4[(t, src)] = c(-0.5 * (j + m + 0.5).sqrt(), 0.0);
                }
                if let Some(t) = rep.index_of(true, m2 - 1) {
                    j5[(t, src)] = c(-0.5 * (j - m + 0.5).sqrt(), 0.0);
                }
            }
            m2 -= 2;
        }
    }
    rep.j3 = GradedMatrix::from_matrix(dims, j3).unwrap();
    rep.jp = GradedMatrix::from_matrix(dims, jp).unwrap();
    rep.jm = GradedMatrix::from_matrix(dims, jm).unwrap();
    rep.j4 = GradedMatrix::from_matrix(dims, j4).unwrap();
    rep.j5 = GradedMatrix::from_matrix(dims, j5).unwrap();
    rep
}

/// Spin-`s` representation of sl(2), `s = spin2/2`, basis `e_m` with `m` descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Irrep {
    pub spin2: u32,
    pub j3: GradedMatrix,
    pub jp: GradedMatrix,
    pub jm: GradedMatrix,
}

impl Sl2Irrep {
    pub fn dims(&self) -> GradedDims {
        self.j3.dims()
    }

    pub fn generator(&self, a: usize) -> GradedMatrix {
        match a {
            J1 => (&self.jp + &self.jm).scale_real(0.5),
            J2 => (&self.jp - &self.jm).scale(C64::new(0.0, -0.5)),
            J3 => self.j3.clone(),
            _ => panic!("sl(2) generator index {a} out of range"),
        }
    }

    pub fn generators(&self) -> Vec<GradedMatrix> {
        (0..3).map(|a| self.generator(a)).collect()
    }

    pub fn casimir(&self) -> GradedMatrix {
        let g = self.generators();
        let mut out = GradedMatrix::zeros(self.dims());
        for x in &g {
            out += &(x * x);
        }
        out
    }
}

pub fn build_sl2_irrep(spin2: u32) -> Sl2Irrep {
    let n = spin2 as usize + 1;
    let dims = GradedDims { even_dim: n, odd_dim: 0 };
    let s = spin2 as f64 / 2.0;
    let mut j3 = DMatrix::<C64>::zeros(n, n);
    let mut jp = DMatrix::<C64>::zeros(n, n);
    let mut jm = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        let m = s - k as f64;
        j3[(k, k)] = c(m, 0.0);
        if k > 0 {
            jp[(k - 1, k)] = c(((s - m) * (s + m + 1.0)).sqrt(), 0.0);
        }
        if k + 1 < n {
            jm[(k + 1, k)] = c(((s + m) * (s - m + 1.0)).sqrt(), 0.0);
        }
    }
    Sl2Irrep {
        spin2,
        j3: GradedMatrix::from_matrix(dims, j3).unwrap(),
        jp: GradedMatrix::from_matrix(dims, jp).unwrap(),
        jm: GradedMatrix::from_matrix(dims, jm).unwrap(),
    }
}

/// Quadratic Casimir `Σ J_k² + J₄J₅ − J₅J₄`.
pub fn osp_casimir(rep: &Irrep) -> GradedMatrix {
    let mut out = GradedMatrix::zeros(rep.dims);
    for k in 0..3 {
        let g = rep.generator(k);
        out += &(&g * &g);
    }
    out += &(&rep.j4 * &rep.j5);
    out = &out - &(&rep.j5 * &rep.j4);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradeStarReport {
    pub lambda: u8,
    pub even_residual: f64,
    pub odd_residual: f64,
}

impl GradeStarReport {
    pub fn max_residual(&self) -> f64 {
        self.even_residual.max(self.odd_residual)
    }
}

/// Residuals of `J_i‡ = J_i`, `J₄‡ = (-1)^λ J₅`, `J₅‡ = (-1)^{λ+1} J₄`.
pub fn verify_grade_star(rep: &Irrep, lambda: u8) -> Result<GradeStarReport> {
    if lambda > 1 {
        return Err(Error::InvalidArgument(format!("grade adjoint index must be 0 or 1, got {lambda}")));
    }
    let mut even_residual: f64 = 0.0;
    for k in 0..3 {
        let g = rep.generator(k);
        even_residual = even_residual.max((&superadjoint(&g) - &g).max_abs());
    }
    let s = if lambda == 0 { 1.0 } else { -1.0 };
    let r4 = (&superadjoint(&rep.j4) - &rep.j5.scale_real(s)).max_abs();
    let r5 = (&superadjoint(&rep.j5) + &rep.j4.scale_real(s)).max_abs();
    Ok(GradeStarReport { lambda, even_residual, odd_residual: r4.max(r5) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{numerical_rank, RANK_TOL};

    #[test]
    fn osp_brackets_from_pauli() {
        let b = build_osp_basis();
        assert_eq!(b.bracket(J1, J2)[J3], I);
        assert!(b.bracket(J3, J3).iter().all(|z| *z == ZERO));
        assert!(b.antisymmetry_residual() < 1e-15);
        assert!(b.jacobi_residual() < 1e-12);
        // [J3, J4] = ½ J4, [J4, J5] = -½ J3, [J4, J4] = ½ J+
        assert_eq!(b.bracket(J3, J4)[J4], c(0.5, 0.0));
        assert_eq!(b.bracket(J4, J5)[J3], c(-0.5, 0.0));
        assert_eq!(b.bracket(J4, J4)[J1], c(0.5, 0.0));
        assert_eq!(b.bracket(J4, J4)[J2], c(0.0, 0.5));
    }

    #[test]
    fn sl2_basis_jacobi() {
        let b = build_sl2_basis();
        assert!(b.jacobi_residual() < 1e-15);
    }

    #[test]
    fn trivial_irrep() {
        let r = build_irrep(0, Parity::Odd);
        assert_eq!(r.dims.total(), 1);
        assert!(r.generators().iter().all(|g| g.is_zero()));
        assert!(osp_casimir(&r).is_zero());
        assert_eq!(verify_grade_star(&r, 1).unwrap().max_residual(), 0.0);
    }

    #[test]
    fn superspin_half_entries() {
        let r = build_irrep(1, Parity::Odd);
        assert_eq!((r.dims.even_dim, r.dims.odd_dim), (1, 2));
        let src = r.index_of(true, 1).unwrap();
        let dst = r.index_of(false, 0).unwrap();
        assert!((r.j5.matrix()[(dst, src)] - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(build_irrep(4, Parity::Odd).dims.total(), 9);
    }

    #[test]
    fn irreps_satisfy_brackets() {
        let b = build_osp_basis();
        for j2 in 0..8 {
            for p in [Parity::Even, Parity::Odd] {
                let r = build_irrep(j2, p);
                assert!(r.bracket_residual(&b) < 1e-10, "j2={j2}");
            }
        }
    }

    #[test]
    fn highest_weight_conditions() {
        let r = build_irrep(5, Parity::Odd);
        let hw = r.index_of(true, 5).unwrap();
        for k in 0..r.dims.total() {
            assert_eq!(r.jp.matrix()[(k, hw)], ZERO);
            assert_eq!(r.j4.matrix()[(k, hw)], ZERO);
        }
        assert_eq!(r.j3.matrix()[(hw, hw)], c(2.5, 0.0));
    }

    #[test]
    fn casimir_is_scalar() {
        for j2 in 0..7u32 {
            let r = build_irrep(j2, Parity::Odd);
            let cas = osp_casimir(&r);
            let j = j2 as f64 / 2.0;
            let expected = GradedMatrix::identity(r.dims).scale_real(j * (j + 0.5));
            assert!((&cas - &expected).max_abs() < 1e-10, "j2={j2}");
        }
    }

    #[test]
    fn grade_star_zero_holds_one_fails() {
        for j2 in 0..7 {
            let r = build_irrep(j2, Parity::Odd);
            assert!(verify_grade_star(&r, 0).unwrap().max_residual() < 1e-10);
        }
        let r = build_irrep(2, Parity::Odd);
        assert!(verify_grade_star(&r, 1).unwrap().max_residual() > 0.1);
        let half = build_irrep(1, Parity::Odd);
        assert!((&superadjoint(&half.j4) - &half.j5).max_abs() < 1e-15);
        assert!(verify_grade_star(&half, 2).is_err());
    }

    #[test]
    fn weights_of_irrep() {
        let r = build_irrep(3, Parity::Odd);
        let mut w: Vec<i64> = (0..r.dims.total()).map(|k| (r.j3.matrix()[(k, k)].re * 2.0).round() as i64).collect();
        w.sort();
        assert_eq!(w, vec![-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn irreducibility_witness() {
        for j2 in 1..4 {
            let r = build_irrep(j2, Parity::Odd);
            let n = r.dims.total();
            let gens = r.generators();
            let parities = build_osp_basis().parities;
            let mut op = DMatrix::<C64>::zeros(5 * n * n, n * n);
            for col in 0..n * n {
                let e = GradedMatrix::unit(r.dims, col % n, col / n);
                for a in 0..5 {
                    let img = GradedMatrix::adjoint_action(&gens[a], parities[a], &e);
                    for (k, z) in img.matrix().iter().enumerate() {
                        op[(a * n * n + k, col)] = *z;
                    }
                }
            }
            assert_eq!(n * n - numerical_rank(&op, RANK_TOL), 1);
        }
    }

    #[test]
    fn sl2_irreps() {
        let z = build_sl2_irrep(0);
        assert!(z.generators().iter().all(|g| g.is_zero()));
        let h = build_sl2_irrep(1);
        let sigma = pauli();
        for k in 0..3 {
            let g = h.generator(k);
            for r in 0..2 {
                for s in 0..2 {
                    assert!((g.matrix()[(r, s)] - sigma[k][r][s] * 0.5).norm() < 1e-15);
                }
            }
        }
        for spin2 in 0..8u32 {
            let r = build_sl2_irrep(spin2);
            let s = spin2 as f64 / 2.0;
            let expected = GradedMatrix::identity(r.dims()).scale_real(s * (s + 1.0));
            assert!((&r.casimir() - &expected).max_abs() < 1e-12);
            let b = build_sl2_basis();
            let g = r.generators();
            for a in 0..3 {
                for bb in 0..3 {
                    let lhs = graded_commutator(&g[a], &g[bb]).unwrap();
                    let mut rhs = GradedMatrix::zeros(r.dims());
                    for k in 0..3 {
                        rhs.axpy(b.consts[a][bb][k], &g[k]);
                    }
                    assert!((&lhs - &rhs).max_abs() < 1e-12);
                }
            }
        }
    }
}
