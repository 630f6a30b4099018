use super::context::DerivationContext;
use super::form::SuperForm;
use crate::error::{Error, Result};
use crate::fuzzy::{body_map_fuzzy, eta, FuzzySphere, FuzzySuperSphere};

/// Body map of superforms: values on even derivations only, each passed through the
/// noncommutative body map. The even generators of `sup_ctx` are identified, in order,
/// with the generators of `body_ctx`.
pub fn body_cochain_map(
    w: &SuperForm,
    sup_ctx: &DerivationContext,
    body_ctx: &DerivationContext,
    sup: &FuzzySuperSphere,
    body: &FuzzySphere,
) -> Result<SuperForm> {
    w.check(sup_ctx)?;
    let even: Vec<usize> = (0..sup_ctx.n_generators()).filter(|&a| !sup_ctx.parity(a).is_odd()).collect();
    if even.len() != body_ctx.n_generators() {
        return Err(Error::InvalidArgument(format!(
            "{} even derivations cannot be matched with {} body derivations",
            even.len(),
            body_ctx.n_generators()
        )));
    }
    let set = body_ctx.index_set(w.degree());
    let values = set
        .tuples()
        .iter()
        .map(|t| {
            let args: Vec<usize> = t.iter().map(|&k| even[k]).collect();
            body_map_fuzzy(&w.eval(sup_ctx, &args)?, sup, body)
        })
        .collect::<Result<_>>()?;
    SuperForm::from_values(body_ctx, w.degree(), values)
}

/// Embedding of forms from level `from.q()` to level `to.q()`, acting on each coefficient.
pub fn eta_forms(
    w: &SuperForm,
    from_ctx: &DerivationContext,
    to_ctx: &DerivationContext,
    from: &FuzzySuperSphere,
    to: &FuzzySuperSphere,
) -> Result<SuperForm> {
    w.check(from_ctx)?;
    if from.q() > to.q() {
        return Err(Error::Embedding { from: from.q(), to: to.q() });
    }
    let coeffs = w
        .coefficients(from_ctx)
        .iter()
        .map(|c| to.psi(&eta(to.q(), from.q(), &from.psi_inv(c)?)?))
        .collect::<Result<Vec<_>>>()?;
    let set = to_ctx.index_set(w.degree());
    let values = set
        .tuples()
        .iter()
        .zip(coeffs)
        .map(|(t, c)| c.scale_real(1.0 / super::form::coefficient_factor(to_ctx, t)))
        .collect();
    SuperForm::from_values(to_ctx, w.degree(), values)
}
