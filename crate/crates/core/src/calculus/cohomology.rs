use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::context::{DerivationContext, Weights};
use super::form::SuperForm;
use super::maps::body_cochain_map;
use super::ops::{exterior_d, lie_derivative, operator_columns, operator_matrix};
use crate::error::Result;
use crate::fuzzy::{FuzzySphere, FuzzySuperSphere};
use crate::graded::{rank_report, Parity, RankReport, C64};

/// Matrix of `d: Ω^p → Ω^{p+1}`.
pub fn d_matrix(ctx: &DerivationContext, p: usize) -> Result<DMatrix<C64>> {
    operator_matrix(ctx, p, p + 1, |w| exterior_d(ctx, w))
}

/// Matrix of `L_{∂_a}` on p-forms.
pub fn lie_matrix(ctx: &DerivationContext, a: usize, p: usize) -> Result<DMatrix<C64>> {
    operator_matrix(ctx, p, p, |w| lie_derivative(ctx, a, w))
}

/// Orthonormal basis (as columns) of the numerical kernel of `m`, cut as in [`rank_report`].
pub fn null_space(m: &DMatrix<C64>, tol: f64) -> DMatrix<C64> {
    let n = m.ncols();
    if m.nrows() == 0 || n == 0 {
        return DMatrix::identity(n, n);
    }
    let padded = if m.nrows() < n { m.clone().resize_vertically(n, C64::new(0.0, 0.0)) } else { m.clone() };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let sigma_max = svd.singular_values.max();
    let threshold = tol * sigma_max.max(1.0);
    let basis: Vec<DVector<C64>> =
        (0..svd.singular_values.len()).filter(|&k| svd.singular_values[k] <= threshold).map(|k| vt.row(k).adjoint()).collect();
    if basis.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    DMatrix::from_columns(&basis)
}

fn gram(blocks: &[DMatrix<C64>], dim: usize) -> DMatrix<C64> {
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for l in blocks {
        out += l.adjoint() * l;
    }
    out
}

/// Invariant p-forms: joint kernel of all Lie derivatives, as orthonormal columns.
pub fn invariant_forms(ctx: &DerivationContext, p: usize, tol: f64) -> Result<DMatrix<C64>> {
    let blocks = (0..ctx.n_generators()).map(|a| lie_matrix(ctx, a, p)).collect::<Result<Vec<_>>>()?;
    Ok(null_space(&gram(&blocks, ctx.form_dim(p)), tol))
}

/// Sector key: doubled weight and parity of a basis form.
type Sector = (i64, u32);

/// Basis forms of degree p grouped by weight and parity; a single sector without weights.
fn sectors(ctx: &DerivationContext, weights: Option<&Weights>, p: usize) -> BTreeMap<Sector, Vec<usize>> {
    let n = ctx.dims().total();
    let set = ctx.index_set(p);
    let mut out: BTreeMap<Sector, Vec<usize>> = BTreeMap::new();
    for (k, t) in set.tuples().iter().enumerate() {
        let tp = t.iter().fold(Parity::Even, |acc, &a| acc + ctx.parity(a));
        for c in 0..n {
            for r in 0..n {
                let key = match weights {
                    Some(w) => (w.form_weight(t, r, c), (ctx.dims().entry_parity(r, c) + tp).bit()),
                    None => (0, 0),
                };
                out.entry(key).or_default().push(k * n * n + c * n + r);
            }
        }
    }
    out
}

fn select(m: &DMatrix<C64>, rows: &[usize], cols: &[usize]) -> DMatrix<C64> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])])
}

/// Rank decision for one weight/parity block of `d_p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRank {
    /// Twice the weight.
    pub weight2: i64,
    pub parity: u32,
    pub rows: usize,
    pub cols: usize,
    pub report: RankReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub p: usize,
    pub dim_omega: usize,
    /// Rank of `d: Ω^p → Ω^{p+1}`.
    pub rank_d: usize,
    pub betti: usize,
    /// Smallest relative retained singular value over the blocks of `d_p`.
    pub sv_gap: f64,
    /// Largest relative discarded singular value over the blocks of `d_p`.
    pub max_dropped: f64,
    pub invariant_dim: usize,
    pub invariant_rank_d: usize,
    pub invariant_betti: usize,
    pub blocks: Vec<BlockRank>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub instance: String,
    pub q: u32,
    pub p_max: usize,
    pub tol: f64,
    pub betti: Vec<usize>,
    /// Betti numbers of the complex restricted to invariant forms.
    pub invariant_betti: Vec<usize>,
    /// Smallest relative retained singular value over all rank decisions.
    pub min_gap: f64,
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    /// Every rank decision keeps its smallest singular value at least `factor × tol`.
    pub fn is_conclusive(&self, factor: f64) -> bool {
        self.min_gap >= factor * self.tol
    }
}

/// Betti numbers `dim ker d_p − rank d_{p−1}` for `p = 0..=p_max`, together with the
/// same numbers for the subcomplex of invariant forms.
///
/// The complex is assembled in the ladder basis when the context admits one, which splits
/// `d` into blocks of fixed weight and parity; the cohomology does not depend on the basis.
pub fn cohomology_dims(ctx: &DerivationContext, instance: &str, q: u32, p_max: usize, tol: f64) -> Result<CohomologyReport> {
    let work = ctx.ladder_basis().ok().filter(|c| c.weights().is_some()).unwrap_or_else(|| ctx.clone());
    let weights = work.weights();
    let mut degrees = Vec::new();
    let mut prev_rank = 0;
    let mut prev_inv_rank = 0;
    let mut next_sectors = sectors(&work, weights.as_ref(), 0);
    for p in 0..=p_max {
        let here = std::mem::replace(&mut next_sectors, sectors(&work, weights.as_ref(), p + 1));
        let d = d_matrix(&work, p)?;
        let mut blocks = Vec::new();
        let mut invariant_dim = 0;
        let mut invariant_rank_d = 0;
        for (key, cols) in &here {
            let rows = next_sectors.get(key).map(Vec::as_slice).unwrap_or(&[]);
            let block = select(&d, rows, cols);
            let report = rank_report(&block, tol);
            if key.0 == 0 {
                let lie = (0..work.n_generators())
                    .map(|a| operator_columns(&work, p, p, cols, |w| lie_derivative(&work, a, w)))
                    .collect::<Result<Vec<_>>>()?;
                let inv = null_space(&gram(&lie, cols.len()), tol);
                invariant_dim += inv.ncols();
                if inv.ncols() > 0 && !rows.is_empty() {
                    invariant_rank_d += rank_report(&(&block * &inv), tol).rank;
                }
            }
            blocks.push(BlockRank { weight2: key.0, parity: key.1, rows: rows.len(), cols: cols.len(), report });
        }
        let rank_d: usize = blocks.iter().map(|b| b.report.rank).sum();
        let dim_omega = work.form_dim(p);
        let betti = dim_omega - rank_d - prev_rank;
        let invariant_betti = invariant_dim - invariant_rank_d - prev_inv_rank;
        prev_rank = rank_d;
        prev_inv_rank = invariant_rank_d;
        let sv_gap = blocks.iter().map(|b| b.report.gap()).fold(f64::INFINITY, f64::min);
        let max_dropped = blocks.iter().filter_map(|b| b.report.largest_dropped).fold(0.0, f64::max);
        degrees.push(DegreeReport {
            p,
            dim_omega,
            rank_d,
            betti,
            sv_gap,
            max_dropped,
            invariant_dim,
            invariant_rank_d,
            invariant_betti,
            blocks,
        });
    }
    let min_gap = degrees.iter().map(|d| d.sv_gap).fold(f64::INFINITY, f64::min);
    Ok(CohomologyReport {
        instance: instance.to_string(),
        q,
        p_max,
        tol,
        betti: degrees.iter().map(|d| d.betti).collect(),
        invariant_betti: degrees.iter().map(|d| d.invariant_betti).collect(),
        min_gap,
        degrees,
    })
}

/// Behaviour of the body map on the degree-3 cohomology generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyCohomologyCheck {
    pub q: u32,
    /// `|dω|` for the chosen closed, non-exact invariant 3-superform `ω`.
    pub super_closed_residual: f64,
    /// Distance of `ω` from exact 3-superforms, relative to `|ω|`.
    pub super_exact_distance: f64,
    /// `|d β(ω)|`.
    pub body_closed_residual: f64,
    /// Distance of `β(ω)` from exact 3-forms, relative to `|β(ω)|`.
    pub body_exact_distance: f64,
}

fn distance_from_range(range: &DMatrix<C64>, v: &DVector<C64>, tol: f64) -> f64 {
    let svd = range.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let threshold = tol * svd.singular_values.max().max(1.0);
    let mut rest = v.clone();
    for k in 0..svd.singular_values.len() {
        if svd.singular_values[k] > threshold {
            let col = u.column(k);
            let c = col.dotc(v);
            rest -= col * c;
        }
    }
    rest.norm()
}

/// Coordinates of the generator `a` of the original basis in the ladder basis.
fn ladder_coordinates(a: usize, n: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    match a {
        0 => {
            v[0] = C64::new(0.5, 0.0);
            v[1] = C64::new(0.5, 0.0);
        }
        1 => {
            v[0] = C64::new(0.0, -0.5);
            v[1] = C64::new(0.0, 0.5);
        }
        _ => v[a] = C64::new(1.0, 0.0),
    }
    v
}

/// Picks a closed invariant 3-superform outside the exact ones and checks that its body is
/// closed and not exact.
pub fn body_cohomology_check(q: u32, tol: f64) -> Result<BodyCohomologyCheck> {
    let sup_ctx = DerivationContext::fuzzy_supersphere(q)?;
    let body_ctx = DerivationContext::fuzzy_sphere(q)?;
    let sup = FuzzySuperSphere::new(q, 1.0)?;
    let body = FuzzySphere::new(q, 1.0)?;
    let work = sup_ctx.ladder_basis()?;
    let weights = work.weights();
    let (s2, s3, s4) = (sectors(&work, weights.as_ref(), 2), sectors(&work, weights.as_ref(), 3), sectors(&work, weights.as_ref(), 4));
    let d2 = d_matrix(&work, 2)?;
    let d3 = d_matrix(&work, 3)?;

    let mut best: (f64, DVector<C64>) = (0.0, DVector::zeros(work.form_dim(3)));
    for parity in [0, 1] {
        let key = (0, parity);
        let Some(cols) = s3.get(&key) else { continue };
        let lie = (0..work.n_generators())
            .map(|a| operator_columns(&work, 3, 3, cols, |w| lie_derivative(&work, a, w)))
            .collect::<Result<Vec<_>>>()?;
        let inv = null_space(&gram(&lie, cols.len()), tol);
        let rows4 = s4.get(&key).map(Vec::as_slice).unwrap_or(&[]);
        let closed = if rows4.is_empty() { inv.clone() } else { &inv * null_space(&(select(&d3, rows4, cols) * &inv), tol) };
        let exact = select(&d2, cols, s2.get(&key).map(Vec::as_slice).unwrap_or(&[]));
        for k in 0..closed.ncols() {
            let v = closed.column(k).into_owned();
            let dist = if exact.ncols() == 0 { 1.0 } else { distance_from_range(&exact, &v, tol) / v.norm() };
            if dist > best.0 {
                let mut full = DVector::zeros(work.form_dim(3));
                for (i, &c) in cols.iter().enumerate() {
                    full[c] = v[i];
                }
                best = (dist, full);
            }
        }
    }
    let (super_exact_distance, v) = best;
    let ladder_form = SuperForm::from_vector(&work, 3, v.as_slice())?;
    let n = sup_ctx.n_generators();
    let values = sup_ctx
        .index_set(3)
        .tuples()
        .iter()
        .map(|t| ladder_form.eval_general(&work, &t.iter().map(|&a| ladder_coordinates(a, n)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let w = SuperForm::from_values(&sup_ctx, 3, values)?;
    let super_closed_residual = exterior_d(&sup_ctx, &w)?.max_abs();

    let b = body_cochain_map(&w, &sup_ctx, &body_ctx, &sup, &body)?;
    let body_closed_residual = exterior_d(&body_ctx, &b)?.max_abs();
    let bv = b.to_vector();
    let body_d2 = d_matrix(&body_ctx, 2)?;
    let body_exact_distance = if bv.norm() == 0.0 { 0.0 } else { distance_from_range(&body_d2, &bv, tol) / bv.norm() };
    Ok(BodyCohomologyCheck { q, super_closed_residual, super_exact_distance, body_closed_residual, body_exact_distance })
}
