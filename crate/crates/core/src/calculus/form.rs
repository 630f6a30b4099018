use nalgebra::DVector;
use rand::Rng;

use super::context::DerivationContext;
use super::index::sort_with_sign;
use crate::error::{Error, Result};
use crate::graded::{GradedDims, GradedMatrix, Parity, C64, ZERO};

/// A p-superform, stored by its values `ω(∂_{A₁},…,∂_{A_p})` on the basis tuples of the
/// context's index set. The expansion coefficients of the λ-basis are obtained with
/// [`SuperForm::coefficients`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuperForm {
    degree: usize,
    dims: GradedDims,
    n_gen: usize,
    values: Vec<GradedMatrix>,
}

impl SuperForm {
    pub fn zero(ctx: &DerivationContext, degree: usize) -> Self {
        let len = ctx.index_set(degree).len();
        Self { degree, dims: ctx.dims(), n_gen: ctx.n_generators(), values: vec![GradedMatrix::zeros(ctx.dims()); len] }
    }

    /// The 0-form `f`.
    pub fn function(ctx: &DerivationContext, f: GradedMatrix) -> Result<Self> {
        Self::from_values(ctx, 0, vec![f])
    }

    pub fn from_values(ctx: &DerivationContext, degree: usize, values: Vec<GradedMatrix>) -> Result<Self> {
        let len = ctx.index_set(degree).len();
        if values.len() != len {
            return Err(Error::Arity { degree: len, given: values.len() });
        }
        if let Some(v) = values.iter().find(|v| v.dims() != ctx.dims()) {
            return Err(Error::DimensionMismatch { expected: ctx.dims().to_string(), found: v.dims().to_string() });
        }
        Ok(Self { degree, dims: ctx.dims(), n_gen: ctx.n_generators(), values })
    }

    /// Uniform random entries in the unit square, optionally restricted to one parity.
    pub fn random<R: Rng>(ctx: &DerivationContext, degree: usize, parity: Option<Parity>, rng: &mut R) -> Self {
        let n = ctx.dims().total();
        let values = (0..ctx.index_set(degree).len())
            .map(|_| {
                let m = nalgebra::DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                GradedMatrix::from_matrix(ctx.dims(), m).expect("square")
            })
            .collect();
        let form = Self { degree, dims: ctx.dims(), n_gen: ctx.n_generators(), values };
        match parity {
            Some(p) => form.parity_part(ctx, p),
            None => form,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[GradedMatrix] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [GradedMatrix] {
        &mut self.values
    }

    pub(crate) fn check(&self, ctx: &DerivationContext) -> Result<()> {
        if self.dims != ctx.dims() || self.n_gen != ctx.n_generators() {
            return Err(Error::InvalidArgument(format!(
                "form over {} with {} derivations used in a context over {} with {}",
                self.dims,
                self.n_gen,
                ctx.dims(),
                ctx.n_generators()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_pair(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims || self.n_gen != other.n_gen {
            return Err(Error::InvalidArgument("forms belong to different contexts".into()));
        }
        Ok(())
    }

    /// Position and sign of `ω(∂_{args})` relative to the stored basis value.
    pub(crate) fn locate(ctx: &DerivationContext, args: &[usize]) -> Option<(usize, f64)> {
        let (sorted, sign) = sort_with_sign(args, ctx.parities())?;
        Some((ctx.index_set(args.len()).position(&sorted).expect("sorted tuple is a basis tuple"), sign))
    }

    /// `ω(∂_{A₁},…,∂_{A_p})` for arbitrary generator indices.
    pub fn eval(&self, ctx: &DerivationContext, args: &[usize]) -> Result<GradedMatrix> {
        if args.len() != self.degree {
            return Err(Error::Arity { degree: self.degree, given: args.len() });
        }
        if let Some(&a) = args.iter().find(|&&a| a >= ctx.n_generators()) {
            return Err(Error::InvalidArgument(format!("no derivation with index {a}")));
        }
        Ok(match Self::locate(ctx, args) {
            Some((k, s)) => self.values[k].scale_real(s),
            None => GradedMatrix::zeros(self.dims),
        })
    }

    /// Multilinear evaluation on derivations given by their coordinates in the `∂_A` basis.
    pub fn eval_general(&self, ctx: &DerivationContext, args: &[Vec<C64>]) -> Result<GradedMatrix> {
        if args.len() != self.degree {
            return Err(Error::Arity { degree: self.degree, given: args.len() });
        }
        let n = ctx.n_generators();
        let mut out = GradedMatrix::zeros(self.dims);
        let mut idx = vec![0usize; self.degree];
        loop {
            let coef = idx.iter().zip(args).fold(C64::new(1.0, 0.0), |acc, (&a, v)| acc * v.get(a).copied().unwrap_or(ZERO));
            if coef != ZERO {
                if let Some((k, s)) = Self::locate(ctx, &idx) {
                    out.axpy(coef * s, &self.values[k]);
                }
            }
            let mut pos = 0;
            loop {
                if pos == self.degree {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Component of parity `parity`: values on `∂_T` keep the part of parity `parity + Σ|T|`.
    pub fn parity_part(&self, ctx: &DerivationContext, parity: Parity) -> Self {
        let set = ctx.index_set(self.degree);
        let values = set
            .tuples()
            .iter()
            .zip(&self.values)
            .map(|(t, v)| v.project(t.iter().fold(parity, |acc, &a| acc + ctx.parity(a))))
            .collect();
        Self { values, ..self.clone() }
    }

    /// `Some(parity)` if the form is homogeneous; zero counts as even.
    pub fn parity(&self, ctx: &DerivationContext) -> Option<Parity> {
        let even = !self.parity_part(ctx, Parity::Even).is_zero();
        let odd = !self.parity_part(ctx, Parity::Odd).is_zero();
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GradedMatrix::is_zero)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { values: self.values.iter().map(|v| v.scale(s)).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!("cannot add forms of degree {} and {}", self.degree, other.degree)));
        }
        Ok(Self { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(GradedMatrix::max_abs).fold(0.0, f64::max)
    }

    /// `max |ω − ω'|` over all stored entries; infinite if degrees differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        match self.sub(other) {
            Ok(d) => d.max_abs(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Values stacked tuple by tuple, each matrix column-major.
    pub fn to_vector(&self) -> DVector<C64> {
        let n2 = self.dims.total() * self.dims.total();
        let mut out = DVector::zeros(n2 * self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            out.rows_mut(k * n2, n2).copy_from_slice(v.matrix().as_slice());
        }
        out
    }

    pub fn from_vector(ctx: &DerivationContext, degree: usize, v: &[C64]) -> Result<Self> {
        let n = ctx.dims().total();
        let len = ctx.index_set(degree).len();
        if v.len() != n * n * len {
            return Err(Error::Arity { degree: n * n * len, given: v.len() });
        }
        let values = v
            .chunks(n * n)
            .map(|c| GradedMatrix::from_matrix(ctx.dims(), nalgebra::DMatrix::from_column_slice(n, n, c)).expect("square"))
            .collect();
        Self::from_values(ctx, degree, values)
    }

    /// Basis form with value `E_{rc}` on the `k`-th tuple and zero elsewhere.
    pub fn basis_element(ctx: &DerivationContext, degree: usize, k: usize, r: usize, c: usize) -> Self {
        let mut out = Self::zero(ctx, degree);
        out.values[k] = GradedMatrix::unit(ctx.dims(), r, c);
        out
    }

    /// Coefficients `ω_{A₁…A_p}` of the expansion `Σ ω_{A₁…A_p} ∧ λ^{A₁} ∧ … ∧ λ^{A_p}`.
    pub fn coefficients(&self, ctx: &DerivationContext) -> Vec<GradedMatrix> {
        let set = ctx.index_set(self.degree);
        set.tuples().iter().zip(&self.values).map(|(t, v)| v.scale_real(coefficient_factor(ctx, t))).collect()
    }
}

/// `(−1)^{p''(p''−1)/2} / Π N_A!` with `p''` the number of odd entries and `N_A` the
/// multiplicity of `A`.
pub fn coefficient_factor(ctx: &DerivationContext, tuple: &[usize]) -> f64 {
    let odd = tuple.iter().filter(|&&a| ctx.parity(a).is_odd()).count();
    let sign = if (odd * odd.saturating_sub(1) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    let mut denom = 1.0;
    let mut run = 1.0;
    for k in 1..tuple.len() {
        if tuple[k] == tuple[k - 1] {
            run += 1.0;
            denom *= run;
        } else {
            run = 1.0;
        }
    }
    sign / denom
}
