use nalgebra::DMatrix;
use rayon::prelude::*;

use super::context::DerivationContext;
use super::form::SuperForm;
use crate::error::{Error, Result};
use crate::graded::{commutation_factor, permutation_sign, GradedMatrix, Parity, C64, ZERO};

/// Nonzero homogeneous components of `ω`.
pub fn homogeneous_parts(ctx: &DerivationContext, w: &SuperForm) -> Vec<(SuperForm, Parity)> {
    [Parity::Even, Parity::Odd]
        .into_iter()
        .map(|p| (w.parity_part(ctx, p), p))
        .filter(|(f, _)| !f.is_zero())
        .collect()
}

fn sum_parts(ctx: &DerivationContext, degree: usize, parts: impl IntoIterator<Item = SuperForm>) -> Result<SuperForm> {
    parts.into_iter().try_fold(SuperForm::zero(ctx, degree), |acc, f| acc.add(&f))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn parity_sum(ctx: &DerivationContext, args: &[usize]) -> Parity {
    args.iter().fold(Parity::Even, |acc, &a| acc + ctx.parity(a))
}

/// Graded wedge product, summing over all permutations of the arguments.
pub fn wedge(ctx: &DerivationContext, a: &SuperForm, b: &SuperForm) -> Result<SuperForm> {
    a.check(ctx)?;
    b.check(ctx)?;
    let degree = a.degree() + b.degree();
    let parts: Vec<_> = homogeneous_parts(ctx, b).into_iter().map(|(bh, pb)| wedge_homogeneous(ctx, a, &bh, pb)).collect();
    sum_parts(ctx, degree, parts)
}

fn wedge_homogeneous(ctx: &DerivationContext, a: &SuperForm, b: &SuperForm, pb: Parity) -> SuperForm {
    let (p, pp) = (a.degree(), b.degree());
    let n = p + pp;
    let perms = permutations(n);
    let norm = 1.0 / (factorial(p) * factorial(pp));
    let set = ctx.index_set(n);
    let values = set
        .tuples()
        .par_iter()
        .map(|t| {
            let pars: Vec<Parity> = t.iter().map(|&x| ctx.parity(x)).collect();
            let mut val = GradedMatrix::zeros(ctx.dims());
            let mut first = vec![0; p];
            let mut second = vec![0; pp];
            for sigma in &perms {
                for (k, &s) in sigma[..p].iter().enumerate() {
                    first[k] = t[s];
                }
                for (k, &s) in sigma[p..].iter().enumerate() {
                    second[k] = t[s];
                }
                let (Some((k1, s1)), Some((k2, s2))) = (SuperForm::locate(ctx, &first), SuperForm::locate(ctx, &second)) else {
                    continue;
                };
                let sign = permutation_sign(sigma)
                    * commutation_factor(sigma, &pars).expect("permutation")
                    * pb.koszul(parity_sum(ctx, &first))
                    * s1
                    * s2;
                val.axpy(C64::new(sign * norm, 0.0), &(&a.values()[k1] * &b.values()[k2]));
            }
            val
        })
        .collect();
    SuperForm::from_values(ctx, n, values).expect("consistent sizes")
}

/// Lie derivative `L_{∂_a}`.
pub fn lie_derivative(ctx: &DerivationContext, a: usize, w: &SuperForm) -> Result<SuperForm> {
    w.check(ctx)?;
    let pa = ctx.parity(a);
    let p = w.degree();
    let parts: Vec<_> = homogeneous_parts(ctx, w)
        .into_iter()
        .map(|(wh, pw)| {
            let set = ctx.index_set(p);
            let values = set
                .tuples()
                .iter()
                .zip(wh.values())
                .map(|(t, v)| {
                    let mut val = ctx.derive(a, v);
                    let mut before = pw;
                    for l in 0..p {
                        let sign = pa.koszul(before);
                        before = before + ctx.parity(t[l]);
                        for (c, &coef) in ctx.bracket(a, t[l]).iter().enumerate() {
                            if coef == ZERO {
                                continue;
                            }
                            let mut args = t.clone();
                            args[l] = c;
                            if let Some((k, s)) = SuperForm::locate(ctx, &args) {
                                val.axpy(-coef * (sign * s), &wh.values()[k]);
                            }
                        }
                    }
                    val
                })
                .collect();
            SuperForm::from_values(ctx, p, values).expect("consistent sizes")
        })
        .collect();
    sum_parts(ctx, p, parts)
}

/// Interior product `ι_{∂_a}`; on 0-forms the result is the zero 0-form.
pub fn interior(ctx: &DerivationContext, a: usize, w: &SuperForm) -> Result<SuperForm> {
    w.check(ctx)?;
    if w.degree() == 0 {
        return Ok(SuperForm::zero(ctx, 0));
    }
    let set = ctx.index_set(w.degree() - 1);
    let values = set
        .tuples()
        .iter()
        .map(|t| {
            let mut args = Vec::with_capacity(t.len() + 1);
            args.push(a);
            args.extend_from_slice(t);
            w.eval(ctx, &args)
        })
        .collect::<Result<_>>()?;
    SuperForm::from_values(ctx, w.degree() - 1, values)
}

/// Exterior derivative from the explicit Chevalley-Eilenberg formula.
pub fn exterior_d(ctx: &DerivationContext, w: &SuperForm) -> Result<SuperForm> {
    w.check(ctx)?;
    let p = w.degree();
    let parts: Vec<_> = homogeneous_parts(ctx, w).into_iter().map(|(wh, pw)| d_homogeneous(ctx, &wh, pw)).collect();
    sum_parts(ctx, p + 1, parts)
}

fn d_homogeneous(ctx: &DerivationContext, w: &SuperForm, pw: Parity) -> SuperForm {
    let p = w.degree();
    let set = ctx.index_set(p + 1);
    let values = set
        .tuples()
        .iter()
        .map(|t| {
            let mut val = GradedMatrix::zeros(ctx.dims());
            let mut before = pw;
            for l in 0..=p {
                let sign = alt(l) * ctx.parity(t[l]).koszul(before);
                before = before + ctx.parity(t[l]);
                let mut rest = t.clone();
                rest.remove(l);
                if let Some((k, s)) = SuperForm::locate(ctx, &rest) {
                    val.axpy(C64::new(sign * s, 0.0), &ctx.derive(t[l], &w.values()[k]));
                }
            }
            for l in 0..=p {
                for l2 in (l + 1)..=p {
                    let between = parity_sum(ctx, &t[l + 1..l2]);
                    let sign = alt(l2) * ctx.parity(t[l2]).koszul(between);
                    for (c, &coef) in ctx.bracket(t[l], t[l2]).iter().enumerate() {
                        if coef == ZERO {
                            continue;
                        }
                        let mut args = t.clone();
                        args[l] = c;
                        args.remove(l2);
                        if let Some((k, s)) = SuperForm::locate(ctx, &args) {
                            val.axpy(coef * (sign * s), &w.values()[k]);
                        }
                    }
                }
            }
            val
        })
        .collect();
    SuperForm::from_values(ctx, p + 1, values).expect("consistent sizes")
}

fn alt(l: usize) -> f64 {
    if l % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Exterior derivative from `df(D) = (−1)^{|f||D|} Df` and the recursion
/// `ι_D dω = (−1)^{|D||ω|} L_D ω − d ι_D ω`.
pub fn exterior_d_recursive(ctx: &DerivationContext, w: &SuperForm) -> Result<SuperForm> {
    w.check(ctx)?;
    let p = w.degree();
    let mut parts = Vec::new();
    for (wh, pw) in homogeneous_parts(ctx, w) {
        if p == 0 {
            let values = (0..ctx.n_generators())
                .map(|a| ctx.derive(a, &wh.values()[0]).scale_real(pw.koszul(ctx.parity(a))))
                .collect();
            parts.push(SuperForm::from_values(ctx, 1, values)?);
            continue;
        }
        let pieces = (0..ctx.n_generators())
            .map(|a| {
                let lie = lie_derivative(ctx, a, &wh)?.scale(C64::new(ctx.parity(a).koszul(pw), 0.0));
                lie.sub(&exterior_d_recursive(ctx, &interior(ctx, a, &wh)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let set = ctx.index_set(p + 1);
        let values = set.tuples().iter().map(|t| pieces[t[0]].eval(ctx, &t[1..])).collect::<Result<_>>()?;
        parts.push(SuperForm::from_values(ctx, p + 1, values)?);
    }
    sum_parts(ctx, p + 1, parts)
}

/// `λ^a`: the 1-form with `λ^a(∂_b) = δ^a_b Id`.
pub fn lambda(ctx: &DerivationContext, a: usize) -> SuperForm {
    let id = GradedMatrix::identity(ctx.dims());
    let values = (0..ctx.n_generators()).map(|b| if a == b { id.clone() } else { GradedMatrix::zeros(ctx.dims()) }).collect();
    SuperForm::from_values(ctx, 1, values).expect("consistent sizes")
}

/// Builds `Σ ω_{A₁…A_p} ∧ λ^{A₁} ∧ … ∧ λ^{A_p}` from expansion coefficients.
pub fn compose(ctx: &DerivationContext, degree: usize, coeffs: &[GradedMatrix]) -> Result<SuperForm> {
    let set = ctx.index_set(degree);
    if coeffs.len() != set.len() {
        return Err(Error::Arity { degree: set.len(), given: coeffs.len() });
    }
    let mut out = SuperForm::zero(ctx, degree);
    for (t, c) in set.tuples().iter().zip(coeffs) {
        let mut term = SuperForm::function(ctx, c.clone())?;
        for &a in t {
            term = wedge(ctx, &term, &lambda(ctx, a))?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Maurer-Cartan form `Λ = Σ_A E_A ∧ λ^A`.
pub fn maurer_cartan(ctx: &DerivationContext) -> Result<SuperForm> {
    let mut out = SuperForm::zero(ctx, 1);
    for a in 0..ctx.n_generators() {
        let e = SuperForm::function(ctx, ctx.generator(a).clone())?;
        out = out.add(&wedge(ctx, &e, &lambda(ctx, a))?)?;
    }
    Ok(out)
}

/// Matrix of a linear map on p-forms in the [`SuperForm::to_vector`] layout.
pub fn operator_matrix<F>(ctx: &DerivationContext, degree: usize, out_degree: usize, op: F) -> Result<DMatrix<C64>>
where
    F: Fn(&SuperForm) -> Result<SuperForm> + Sync,
{
    let cols: Vec<usize> = (0..ctx.form_dim(degree)).collect();
    operator_columns(ctx, degree, out_degree, &cols, op)
}

/// Selected columns of [`operator_matrix`].
pub fn operator_columns<F>(ctx: &DerivationContext, degree: usize, out_degree: usize, cols: &[usize], op: F) -> Result<DMatrix<C64>>
where
    F: Fn(&SuperForm) -> Result<SuperForm> + Sync,
{
    let n = ctx.dims().total();
    let rows = ctx.form_dim(out_degree);
    let columns = cols
        .par_iter()
        .map(|&col| {
            let (k, rest) = (col / (n * n), col % (n * n));
            let img = op(&SuperForm::basis_element(ctx, degree, k, rest % n, rest / n))?;
            if img.degree() != out_degree {
                return Err(Error::InvalidArgument(format!("operator produced degree {}, expected {out_degree}", img.degree())));
            }
            Ok(img.to_vector())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = DMatrix::zeros(rows, cols.len());
    for (c, v) in columns.iter().enumerate() {
        out.set_column(c, v);
    }
    Ok(out)
}
