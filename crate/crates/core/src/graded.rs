//! Z₂-graded linear algebra on finite-dimensional graded Hilbert spaces.
//!
//! Basis vectors are ordered with every even vector before every odd one, so
//! a [`GradedMatrix`] has the block form `[[even→even, odd→even], [even→odd, odd→odd]]`.
//! An ungraded algebra is the special case `odd_dim = 0`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|self| |other|}`
    pub fn koszul(self, other: Parity) -> f64 {
        if self.is_odd() && other.is_odd() {
            -1.0
        } else {
            1.0
        }
    }

    /// `(-1)^{|self|}`
    pub fn sign(self) -> f64 {
        if self.is_odd() {
            -1.0
        } else {
            1.0
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "0"),
            Parity::Odd => write!(f, "1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedDims {
    pub even_dim: usize,
    pub odd_dim: usize,
}

impl GradedDims {
    pub fn new(even_dim: usize, odd_dim: usize) -> Result<Self> {
        if even_dim + odd_dim == 0 {
            return Err(Error::InvalidArgument("graded space must be non-zero".into()));
        }
        Ok(Self { even_dim, odd_dim })
    }

    /// Trivially graded space of dimension `n`.
    pub fn ungraded(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn total(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    pub fn parity_of(&self, index: usize) -> Parity {
        if index < self.even_dim {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of the matrix unit `E_{row,col}`.
    pub fn entry_parity(&self, row: usize, col: usize) -> Parity {
        self.parity_of(row) + self.parity_of(col)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even_dim, self.odd_dim)
    }
}

/// Complex square matrix acting on a graded space.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix {
    dims: GradedDims,
    mat: DMatrix<C64>,
}

impl GradedMatrix {
    pub fn zeros(dims: GradedDims) -> Self {
        let n = dims.total();
        Self { dims, mat: DMatrix::zeros(n, n) }
    }

    pub fn identity(dims: GradedDims) -> Self {
        let n = dims.total();
        Self { dims, mat: DMatrix::identity(n, n) }
    }

    pub fn from_matrix(dims: GradedDims, mat: DMatrix<C64>) -> Result<Self> {
        let n = dims.total();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n}"),
                found: format!("{}x{}", mat.nrows(), mat.ncols()),
            });
        }
        Ok(Self { dims, mat })
    }

    /// Matrix unit `E_{row,col}`.
    pub fn unit(dims: GradedDims, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(dims);
        m.mat[(row, col)] = ONE;
        m
    }

    pub fn dims(&self) -> GradedDims {
        self.dims
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn size(&self) -> usize {
        self.dims.total()
    }

    pub fn project(&self, parity: Parity) -> Self {
        let mut out = self.clone();
        let n = self.size();
        for c in 0..n {
            for r in 0..n {
                if self.dims.entry_parity(r, c) != parity {
                    out.mat[(r, c)] = ZERO;
                }
            }
        }
        out
    }

    pub fn even_part(&self) -> Self {
        self.project(Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.project(Parity::Odd)
    }

    /// Parity of a homogeneous matrix; `None` when both parts are non-zero.
    /// The zero matrix counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let n = self.size();
        let (mut has_even, mut has_odd) = (false, false);
        for c in 0..n {
            for r in 0..n {
                if self.mat[(r, c)] != ZERO {
                    match self.dims.entry_parity(r, c) {
                        Parity::Even => has_even = true,
                        Parity::Odd => has_odd = true,
                    }
                }
            }
        }
        match (has_even, has_odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    /// Grading automorphism `P M P`, i.e. even part minus odd part.
    pub fn grade_involution(&self) -> Self {
        let mut out = self.clone();
        let n = self.size();
        for c in 0..n {
            for r in 0..n {
                if self.dims.entry_parity(r, c).is_odd() {
                    out.mat[(r, c)] = -out.mat[(r, c)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dims: self.dims, mat: &self.mat * s }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|z| *z == ZERO)
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims.to_string(),
                found: other.dims.to_string(),
            });
        }
        Ok(())
    }

    /// `a * self + other` accumulated in place.
    pub fn axpy(&mut self, a: C64, other: &Self) {
        debug_assert_eq!(self.dims, other.dims);
        self.mat.zip_apply(&other.mat, |x, y| *x += a * y);
    }

    /// Action of a homogeneous operator by graded commutator: `E f - (-1)^{|E||f|} f E`,
    /// extended linearly over the homogeneous parts of `f`.
    pub fn adjoint_action(op: &GradedMatrix, op_parity: Parity, f: &GradedMatrix) -> GradedMatrix {
        let left = &op.mat * &f.mat;
        let right = if op_parity.is_odd() {
            f.grade_involution().mat * &op.mat
        } else {
            &f.mat * &op.mat
        };
        GradedMatrix { dims: f.dims, mat: left - right }
    }
}

impl Add for &GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dims, rhs.dims, "graded dims differ");
        GradedMatrix { dims: self.dims, mat: &self.mat + &rhs.mat }
    }
}

impl Add for GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: GradedMatrix) -> GradedMatrix {
        &self + &rhs
    }
}

impl AddAssign<&GradedMatrix> for GradedMatrix {
    fn add_assign(&mut self, rhs: &GradedMatrix) {
        assert_eq!(self.dims, rhs.dims, "graded dims differ");
        self.mat += &rhs.mat;
    }
}

impl Sub for &GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dims, rhs.dims, "graded dims differ");
        GradedMatrix { dims: self.dims, mat: &self.mat - &rhs.mat }
    }
}

impl Sub for GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: GradedMatrix) -> GradedMatrix {
        &self - &rhs
    }
}

impl Mul for &GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dims, rhs.dims, "graded dims differ");
        GradedMatrix { dims: self.dims, mat: &self.mat * &rhs.mat }
    }
}

impl Mul for GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: GradedMatrix) -> GradedMatrix {
        &self * &rhs
    }
}

impl Neg for GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        GradedMatrix { dims: self.dims, mat: -self.mat }
    }
}

/// `tr(even block) - tr(odd block)`.
pub fn supertrace(m: &GradedMatrix) -> C64 {
    let d = m.dims();
    (0..d.total()).fold(ZERO, |acc, i| acc + m.matrix()[(i, i)] * d.parity_of(i).sign())
}

/// Superadjoint with respect to the orthonormal basis of the graded Hilbert space:
/// `<f‡ v, w> = (-1)^{|f||v|} <v, f w>`.
///
/// On the even part this is the conjugate transpose; on the odd part it is the
/// conjugate transpose followed by the grading operator, `f† P`.
pub fn superadjoint(m: &GradedMatrix) -> GradedMatrix {
    let d = m.dims();
    let mut adj = m.matrix().adjoint();
    let n = d.total();
    for c in 0..n {
        for r in 0..n {
            // odd entries pick up the sign of the column parity
            if d.entry_parity(r, c).is_odd() && d.parity_of(c).is_odd() {
                adj[(r, c)] = -adj[(r, c)];
            }
        }
    }
    GradedMatrix { dims: d, mat: adj }
}

/// Indefinite inner product `<f|g> = -Str(f‡ g)`; antilinear in `f`.
/// Normalised so that `<Id|Id> = 1` on spaces with one more odd than even basis vector.
pub fn indefinite_inner(f: &GradedMatrix, g: &GradedMatrix) -> Result<C64> {
    f.check_same(g)?;
    // Entrywise form of -Str(f‡ g): weight -1 on the even-even block, +1 elsewhere.
    let d = f.dims();
    let n = d.total();
    let mut acc = ZERO;
    for c in 0..n {
        let col_even = !d.parity_of(c).is_odd();
        for r in 0..n {
            let t = f.mat[(r, c)].conj() * g.mat[(r, c)];
            if col_even && !d.parity_of(r).is_odd() {
                acc -= t;
            } else {
                acc += t;
            }
        }
    }
    Ok(acc)
}

/// Normalised Hilbert–Schmidt product `tr(f† g) / (q+1)` on the ungraded algebra `End(V(q/2))`.
pub fn hs_inner(f: &GradedMatrix, g: &GradedMatrix, q: u32) -> Result<C64> {
    f.check_same(g)?;
    let n = q as usize + 1;
    if f.size() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n}"), found: format!("{0}x{0}", f.size()) });
    }
    let n = n as f64;
    let s = f.matrix().iter().zip(g.matrix().iter()).fold(ZERO, |acc, (a, b)| acc + a.conj() * b);
    Ok(s / n)
}

/// Graded commutator `AB - (-1)^{|A||B|} BA`, extended bilinearly over homogeneous parts.
pub fn graded_commutator(a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix> {
    a.check_same(b)?;
    let a0 = a.even_part();
    let a1 = a.odd_part();
    let mut out = GradedMatrix::adjoint_action(&a0, Parity::Even, b);
    out += &GradedMatrix::adjoint_action(&a1, Parity::Odd, b);
    Ok(out)
}

/// Commutation factor of a permutation acting on graded slots.
///
/// `perm[k]` is the slot whose argument lands in position `k`, so the rearranged
/// tuple is `(D_{perm[0]}, D_{perm[1]}, ...)`. The factor is the product of
/// `(-1)^{|r||s|}` over all pairs `r < s` whose relative order is reversed.
pub fn commutation_factor(perm: &[usize], parities: &[Parity]) -> Result<f64> {
    if perm.len() != parities.len() {
        return Err(Error::Arity { degree: parities.len(), given: perm.len() });
    }
    let p = perm.len();
    let mut position = vec![usize::MAX; p];
    for (k, &s) in perm.iter().enumerate() {
        if s >= p || position[s] != usize::MAX {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        position[s] = k;
    }
    let mut sign = 1.0;
    for r in 0..p {
        for s in (r + 1)..p {
            if position[r] > position[s] {
                sign *= parities[r].koszul(parities[s]);
            }
        }
    }
    Ok(sign)
}

/// Sign of a permutation given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> f64 {
    let mut sign = 1.0;
    for r in 0..perm.len() {
        for s in (r + 1)..perm.len() {
            if perm[r] > perm[s] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Default relative tolerance for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

/// Outcome of a rank decision, with the singular-value gap around the cut.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    /// Cut-off actually applied: `tol * max(sigma_max, 1)`.
    pub threshold: f64,
    pub sigma_max: f64,
    /// Smallest retained singular value divided by `max(sigma_max, 1)`; `None` for rank 0.
    pub smallest_kept: Option<f64>,
    /// Largest discarded singular value divided by `max(sigma_max, 1)`; `None` at full rank.
    pub largest_dropped: Option<f64>,
}

impl RankReport {
    /// Relative size of the smallest retained singular value (1 when nothing is retained).
    pub fn gap(&self) -> f64 {
        self.smallest_kept.unwrap_or(1.0)
    }
}

pub fn rank_report(m: &DMatrix<C64>, tol: f64) -> RankReport {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankReport {
            rank: 0,
            threshold: tol,
            sigma_max: 0.0,
            smallest_kept: None,
            largest_dropped: None,
        };
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let sigma_max = sv[0];
    let scale = sigma_max.max(1.0);
    let threshold = tol * scale;
    let rank = sv.iter().take_while(|&&s| s > threshold).count();
    RankReport {
        rank,
        threshold,
        sigma_max,
        smallest_kept: (rank > 0).then(|| sv[rank - 1] / scale),
        largest_dropped: sv.get(rank).map(|s| s / scale),
    }
}

/// Number of singular values above `tol * max(sigma_max, 1)`.
pub fn numerical_rank(m: &DMatrix<C64>, tol: f64) -> usize {
    rank_report(m, tol).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(e: usize, o: usize) -> GradedDims {
        GradedDims::new(e, o).unwrap()
    }

    fn random_matrix(d: GradedDims, seed: u64) -> GradedMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = d.total();
        let m = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        GradedMatrix::from_matrix(d, m).unwrap()
    }

    #[test]
    fn supertrace_of_identity_on_one_two() {
        let id = GradedMatrix::identity(dims(1, 2));
        assert_eq!(supertrace(&id), C64::new(-1.0, 0.0));
        assert_eq!(supertrace(&GradedMatrix::zeros(dims(1, 2))), ZERO);
        let odd = random_matrix(dims(2, 3), 1).odd_part();
        assert_eq!(supertrace(&odd), ZERO);
    }

    #[test]
    fn graded_cyclicity_of_supertrace() {
        let d = dims(3, 4);
        for seed in 0..4 {
            let a = random_matrix(d, seed);
            let b = random_matrix(d, seed + 100);
            for pa in [Parity::Even, Parity::Odd] {
                for pb in [Parity::Even, Parity::Odd] {
                    let (a, b) = (a.project(pa), b.project(pb));
                    let lhs = supertrace(&(&a * &b));
                    let rhs = supertrace(&(&b * &a)) * pa.koszul(pb);
                    assert!((lhs - rhs).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn superadjoint_involutive_up_to_sign() {
        let d = dims(2, 3);
        let f = random_matrix(d, 7);
        let even = f.even_part();
        let odd = f.odd_part();
        assert!((&superadjoint(&superadjoint(&even)) - &even).max_abs() < 1e-14);
        assert!((&superadjoint(&superadjoint(&odd)) + &odd).max_abs() < 1e-14);
        let id = GradedMatrix::identity(d);
        assert_eq!(superadjoint(&id), id);
    }

    #[test]
    fn superadjoint_defining_property() {
        // <f‡ v, w> = (-1)^{|f||v|} <v, f w> on homogeneous basis vectors
        let d = dims(2, 3);
        for parity in [Parity::Even, Parity::Odd] {
            let f = random_matrix(d, 11).project(parity);
            let fd = superadjoint(&f);
            for v in 0..d.total() {
                for w in 0..d.total() {
                    // <e_v, M e_w> = M[v, w]; <M e_v, e_w> = conj(M[w, v])
                    let lhs = fd.matrix()[(w, v)].conj();
                    let rhs = f.matrix()[(v, w)] * parity.koszul(d.parity_of(v));
                    assert!((lhs - rhs).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn indefinite_inner_properties() {
        for q in 1..5 {
            let d = dims(q, q + 1);
            let id = GradedMatrix::identity(d);
            assert!((indefinite_inner(&id, &id).unwrap() - ONE).norm() < 1e-14);
        }
        let d = dims(3, 4);
        let f = random_matrix(d, 3);
        let g = random_matrix(d, 4);
        let fg = indefinite_inner(&f, &g).unwrap();
        let gf = indefinite_inner(&g, &f).unwrap();
        assert!((fg - gf.conj()).norm() < 1e-12);
        let direct = -supertrace(&(&superadjoint(&f) * &g));
        assert!((fg - direct).norm() < 1e-12);
        let mixed = indefinite_inner(&f.odd_part(), &g.even_part()).unwrap();
        assert!(mixed.norm() < 1e-14);
        assert!(indefinite_inner(&f, &GradedMatrix::zeros(dims(2, 2))).is_err());
    }

    #[test]
    fn hs_inner_normalisation() {
        let d = GradedDims::ungraded(4).unwrap();
        let id = GradedMatrix::identity(d);
        assert!((hs_inner(&id, &id, 3).unwrap() - ONE).norm() < 1e-15);
        assert!(hs_inner(&id, &id, 2).is_err());
        let f = random_matrix(d, 5);
        let n = hs_inner(&f, &f, 3).unwrap();
        assert!(n.re > 0.0 && n.im.abs() < 1e-14);
    }

    #[test]
    fn graded_commutator_basics() {
        let d = dims(2, 3);
        let a = random_matrix(d, 9).odd_part();
        let aa = graded_commutator(&a, &a).unwrap();
        assert!((&aa - &(&a * &a).scale_real(2.0)).max_abs() < 1e-13);
        let b = random_matrix(d, 10);
        let c = graded_commutator(&GradedMatrix::identity(d), &b).unwrap();
        assert!(c.max_abs() < 1e-14);
    }

    #[test]
    fn commutation_factor_examples() {
        use Parity::*;
        assert_eq!(commutation_factor(&[0, 1, 2], &[Odd, Odd, Even]).unwrap(), 1.0);
        assert_eq!(commutation_factor(&[1, 0], &[Odd, Odd]).unwrap(), -1.0);
        assert_eq!(commutation_factor(&[1, 0], &[Odd, Even]).unwrap(), 1.0);
        assert!(commutation_factor(&[0, 0], &[Odd, Odd]).is_err());
    }

    /// Brute force over S₃ with every parity assignment: the commutation factor
    /// is the Koszul sign, so it satisfies the cocycle identity that makes
    /// `σ ↦ π_σ` a representation.
    #[test]
    fn commutation_factor_cocycle_on_s3() {
        use Parity::*;
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        for bits in 0..8u32 {
            let par: Vec<Parity> = (0..3).map(|k| Parity::from_bit((bits >> k) & 1)).collect();
            for s in &perms {
                for t in &perms {
                    let st: Vec<usize> = (0..3).map(|k| s[t[k]]).collect();
                    let permuted: Vec<Parity> = s.iter().map(|&k| par[k]).collect();
                    let lhs = commutation_factor(&st, &par).unwrap();
                    let rhs = commutation_factor(s, &par).unwrap() * commutation_factor(t, &permuted).unwrap();
                    assert_eq!(lhs, rhs, "s={s:?} t={t:?} par={par:?}");
                }
            }
            let _ = (Even, Odd);
        }
    }

    #[test]
    fn numerical_rank_examples() {
        let z = DMatrix::<C64>::zeros(4, 4);
        assert_eq!(numerical_rank(&z, RANK_TOL), 0);
        let id = DMatrix::<C64>::identity(5, 5);
        assert_eq!(numerical_rank(&id, RANK_TOL), 5);
        let r = rank_report(&id, RANK_TOL);
        assert_eq!(r.largest_dropped, None);
        assert!((r.gap() - 1.0).abs() < 1e-15);
    }
}
