use std::borrow::Cow;

use nalgebra::DMatrix;

use super::index::GradedIndexSet;
use crate::error::{Error, Result};
use crate::graded::{graded_commutator, rank_report, GradedDims, GradedMatrix, Parity, C64, ZERO};
use crate::osp::{build_irrep, build_osp_basis, build_sl2_basis, build_sl2_irrep, LieSuperalgebra};

const PRECOMPUTED_DEGREES: usize = 8;
const CLOSURE_TOL: f64 = 1e-10;

/// A Lie (super)algebra acting by graded commutators on a matrix algebra, with the index
/// sets of its form complex.
#[derive(Clone, Debug)]
pub struct DerivationContext {
    dims: GradedDims,
    generators: Vec<GradedMatrix>,
    parities: Vec<Parity>,
    consts: Vec<Vec<Vec<C64>>>,
    index_sets: Vec<GradedIndexSet>,
}

impl DerivationContext {
    /// Derivations `∂_A = ad E_A`. Fails with [`Error::NotClosed`] if the represented
    /// brackets miss `[E_A, E_B] = Σ c^C_{AB} E_C` by more than `1e-10`.
    pub fn new(generators: Vec<GradedMatrix>, parities: Vec<Parity>, consts: Vec<Vec<Vec<C64>>>) -> Result<Self> {
        let n = generators.len();
        if n == 0 || parities.len() != n || consts.len() != n {
            return Err(Error::InvalidArgument("generators, parities and structure constants disagree in number".into()));
        }
        let dims = generators[0].dims();
        if let Some(g) = generators.iter().find(|g| g.dims() != dims) {
            return Err(Error::DimensionMismatch { expected: dims.to_string(), found: g.dims().to_string() });
        }
        let index_sets = (0..=PRECOMPUTED_DEGREES).map(|p| GradedIndexSet::new(&parities, p)).collect();
        let ctx = Self { dims, generators, parities, consts, index_sets };
        let residual = ctx.closure_residual();
        if residual > CLOSURE_TOL {
            return Err(Error::NotClosed(residual));
        }
        Ok(ctx)
    }

    fn from_algebra(generators: Vec<GradedMatrix>, basis: LieSuperalgebra) -> Result<Self> {
        Self::new(generators, basis.parities, basis.consts)
    }

    /// osp(1|2) acting on `End(V(q/2,1̄))`.
    pub fn fuzzy_supersphere(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("truncation level q must be at least 1".into()));
        }
        Self::from_algebra(build_irrep(q, Parity::Odd).generators(), build_osp_basis())
    }

    /// sl(2) acting on `End(V(q/2))`.
    pub fn fuzzy_sphere(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("truncation level q must be at least 1".into()));
        }
        Self::from_algebra(build_sl2_irrep(q).generators(), build_sl2_basis())
    }

    pub fn dims(&self) -> GradedDims {
        self.dims
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, a: usize) -> Parity {
        self.parities[a]
    }

    pub fn generator(&self, a: usize) -> &GradedMatrix {
        &self.generators[a]
    }

    /// `c^C_{AB}` for all `C`.
    pub fn bracket(&self, a: usize, b: usize) -> &[C64] {
        &self.consts[a][b]
    }

    /// `∂_A f`.
    pub fn derive(&self, a: usize, f: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::adjoint_action(&self.generators[a], self.parities[a], f)
    }

    pub fn index_set(&self, p: usize) -> Cow<'_, GradedIndexSet> {
        match self.index_sets.get(p) {
            Some(set) => Cow::Borrowed(set),
            None => Cow::Owned(GradedIndexSet::new(&self.parities, p)),
        }
    }

    /// Dimension of the underlying matrix algebra.
    pub fn algebra_dim(&self) -> usize {
        self.dims.total() * self.dims.total()
    }

    /// Dimension of the space of p-forms.
    pub fn form_dim(&self, p: usize) -> usize {
        self.algebra_dim() * self.index_set(p).len()
    }

    pub fn closure_residual(&self) -> f64 {
        let n = self.generators.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let lhs = graded_commutator(&self.generators[a], &self.generators[b]).expect("same dims");
                let mut rhs = GradedMatrix::zeros(self.dims);
                for (c, g) in self.generators.iter().enumerate() {
                    rhs.axpy(self.consts[a][b][c], g);
                }
                worst = worst.max((&lhs - &rhs).max_abs());
            }
        }
        worst
    }

    /// Matrix of `∂_A` on the column-major vectorisation of the algebra.
    pub fn derivation_matrix(&self, a: usize) -> DMatrix<C64> {
        let n = self.dims.total();
        let mut out = DMatrix::zeros(n * n, n * n);
        for c in 0..n {
            for r in 0..n {
                let img = self.derive(a, &GradedMatrix::unit(self.dims, r, c));
                out.column_mut(c * n + r).copy_from_slice(img.matrix().as_slice());
            }
        }
        out
    }

    /// Equivalent context with generators `E'_A = Σ_B m[(B,A)] E_B`. The change of basis
    /// must not mix parities.
    pub fn change_basis(&self, m: &DMatrix<C64>) -> Result<Self> {
        let n = self.n_generators();
        if m.shape() != (n, n) {
            return Err(Error::InvalidArgument(format!("change of basis must be {n}x{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                if self.parities[a] != self.parities[b] && m[(a, b)] != ZERO {
                    return Err(Error::InvalidArgument("change of basis mixes parities".into()));
                }
            }
        }
        let minv = m.clone().try_inverse().ok_or_else(|| Error::InvalidArgument("change of basis is singular".into()))?;
        let generators = (0..n)
            .map(|a| {
                let mut g = GradedMatrix::zeros(self.dims);
                for b in 0..n {
                    g.axpy(m[(b, a)], &self.generators[b]);
                }
                g
            })
            .collect();
        let mut consts = vec![vec![vec![ZERO; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let w = m[(d, a)] * m[(e, b)];
                        if w == ZERO {
                            continue;
                        }
                        for f in 0..n {
                            let x = w * self.consts[d][e][f];
                            if x == ZERO {
                                continue;
                            }
                            for c in 0..n {
                                consts[a][b][c] += minv[(c, f)] * x;
                            }
                        }
                    }
                }
            }
        }
        Self::new(generators, self.parities.clone(), consts)
    }

    /// Replaces the first two generators `J1, J2` by `J1 ± iJ2`.
    pub fn ladder_basis(&self) -> Result<Self> {
        let n = self.n_generators();
        if n < 3 {
            return Err(Error::InvalidArgument("ladder basis needs at least three generators".into()));
        }
        let mut m = DMatrix::<C64>::identity(n, n);
        m[(0, 0)] = C64::new(1.0, 0.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m[(0, 1)] = C64::new(1.0, 0.0);
        m[(1, 1)] = C64::new(0.0, -1.0);
        self.change_basis(&m)
    }

    /// An even generator acting diagonally on both the generators and the matrix basis, if
    /// there is one, with the resulting weights.
    pub fn weights(&self) -> Option<Weights> {
        let n = self.n_generators();
        let tol = 1e-12;
        (0..n).filter(|&h| !self.parities[h].is_odd()).find_map(|h| {
            let mut generator = Vec::with_capacity(n);
            for b in 0..n {
                let row = &self.consts[h][b];
                if (0..n).any(|c| c != b && row[c].norm() > tol) || row[b].im.abs() > tol {
                    return None;
                }
                generator.push(row[b].re);
            }
            let e = self.generators[h].matrix();
            let size = e.nrows();
            if (0..size).any(|r| (0..size).any(|c| r != c && e[(r, c)].norm() > tol)) {
                return None;
            }
            if (0..size).any(|r| e[(r, r)].im.abs() > tol) {
                return None;
            }
            let state = (0..size).map(|r| e[(r, r)].re).collect();
            Some(Weights { cartan: h, generator, state })
        })
    }

    /// Dimension of the joint kernel of all derivations (the graded center).
    pub fn center_dimension(&self, tol: f64) -> usize {
        let n2 = self.algebra_dim();
        let blocks: Vec<_> = (0..self.n_generators()).map(|a| self.derivation_matrix(a)).collect();
        let mut stacked = DMatrix::zeros(n2 * blocks.len(), n2);
        for (k, b) in blocks.iter().enumerate() {
            stacked.view_mut((k * n2, 0), (n2, n2)).copy_from(b);
        }
        n2 - rank_report(&stacked, tol).rank
    }
}

/// Eigenvalues of `ad E_h` for a diagonally acting generator `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub cartan: usize,
    /// `[E_h, E_B] = generator[B]·E_B`.
    pub generator: Vec<f64>,
    /// `E_h = diag(state)` in the matrix basis.
    pub state: Vec<f64>,
}

impl Weights {
    /// Weight of the basis form with value `E_{rc}` on the tuple `t`, scaled by 2 and rounded.
    pub fn form_weight(&self, t: &[usize], r: usize, c: usize) -> i64 {
        let w = self.state[r] - self.state[c] - t.iter().map(|&a| self.generator[a]).sum::<f64>();
        (2.0 * w).round() as i64
    }
}
