use anyhow::Result;
use clap::ValueEnum;
use fuzzsuper::calculus::{body_cochain_map, exterior_d, maurer_cartan, wedge, DerivationContext, SuperForm};
use fuzzsuper::fuzzy::{body_map_coefficients, FuzzyElement, FuzzySphere, FuzzySuperSphere, HarmonicLabel};
use fuzzsuper::graded::{Parity, C64};
use fuzzsuper::oracle::{GaussRat, SuperPoly, SuperSphereOracle};
use fuzzsuper::osp::{build_irrep, verify_grade_star};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Harmonics,
    Casimir,
    GradeStar,
    Oracle,
    Calculus,
    MaurerCartan,
    Body,
}

impl Suite {
    const EACH: [Suite; 7] =
        [Suite::Harmonics, Suite::Casimir, Suite::GradeStar, Suite::Oracle, Suite::Calculus, Suite::MaurerCartan, Suite::Body];

    /// Requested suites in a fixed order, with `all` expanded and duplicates removed.
    pub fn expand(requested: &[Suite]) -> Vec<Suite> {
        let all = requested.contains(&Suite::All);
        Self::EACH.into_iter().filter(|s| all || requested.contains(s)).collect()
    }

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Harmonics => "harmonics",
            Suite::Casimir => "casimir",
            Suite::GradeStar => "grade-star",
            Suite::Oracle => "oracle",
            Suite::Calculus => "calculus",
            Suite::MaurerCartan => "maurer-cartan",
            Suite::Body => "body",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub q: u32,
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

struct Recorder {
    suite: &'static str,
    q: u32,
    tol: Option<f64>,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &str, residual: f64, default_tol: f64) {
        let tol = self.tol.unwrap_or(default_tol);
        self.checks.push(Check { suite: self.suite, q: self.q, name: name.into(), residual, tol, pass: residual <= tol });
    }

    /// Exact check: residual 0 on success, 1 otherwise.
    fn exact(&mut self, name: &str, ok: bool) {
        let residual = if ok { 0.0 } else { 1.0 };
        self.checks.push(Check { suite: self.suite, q: self.q, name: name.into(), residual, tol: 0.0, pass: ok });
    }
}

pub fn run(suite: Suite, q: u32, rho: f64, pmax: usize, seed: u64, tol: Option<f64>) -> Result<Vec<Check>> {
    let mut r = Recorder { suite: suite.name(), q, tol, checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (q as u64) << 32);
    match suite {
        Suite::All => unreachable!("expanded before running"),
        Suite::Harmonics => harmonics(&mut r, q, rho, &mut rng)?,
        Suite::Casimir => {
            r.record("supersphere casimir", FuzzySuperSphere::new(q, rho)?.casimir_defect().max_abs(), 1e-10);
            r.record("sphere casimir", FuzzySphere::new(q, rho)?.casimir_defect().max_abs(), 1e-10);
        }
        Suite::GradeStar => {
            r.record("irrep grade adjoint 0", verify_grade_star(&build_irrep(q, Parity::Odd), 0)?.max_residual(), 1e-10);
            r.record("adjoint grade adjoint 1", FuzzySuperSphere::new(q, rho)?.grade_star_residual(4, &mut rng), 1e-10);
        }
        Suite::Oracle => oracle(&mut r, q, rho)?,
        Suite::Calculus => calculus(&mut r, q, pmax, &mut rng)?,
        Suite::MaurerCartan => maurer_cartan_suite(&mut r, q, &mut rng)?,
        Suite::Body => body(&mut r, q, rho, pmax, &mut rng)?,
    }
    Ok(r.checks)
}

fn harmonics(r: &mut Recorder, q: u32, rho: f64, rng: &mut ChaCha8Rng) -> Result<()> {
    let s = FuzzySuperSphere::new(q, rho)?;
    let labels = s.labels();
    let even = labels.iter().filter(|l| l.parity() == Parity::Even).count() as u32;
    let expected = (q * q + (q + 1) * (q + 1), 2 * q * (q + 1), (2 * q + 1) * (2 * q + 1));
    r.exact("label counts", (even, labels.len() as u32 - even, labels.len() as u32) == expected);
    let g = s.gram();
    let mut worst: f64 = 0.0;
    for (a, l) in labels.iter().enumerate() {
        for b in 0..labels.len() {
            let e = if a == b { l.norm_sign() } else { 0.0 };
            worst = worst.max((g[(a, b)] - C64::new(e, 0.0)).norm());
        }
    }
    r.record("signed gram", worst, 1e-9);
    let e = FuzzyElement::random(q, 2 * q, None, rng);
    let back = s.psi_inv(&s.psi(&e)?)?;
    r.record("coefficient round trip", back.max_abs_diff(&e), 1e-10);
    Ok(())
}

fn oracle(r: &mut Recorder, q: u32, rho: f64) -> Result<()> {
    let o = SuperSphereOracle::from_f64(rho)?;
    r.exact("unit norm", o.inner(&SuperPoly::one(), &SuperPoly::one()) == GaussRat::one());
    let labels = HarmonicLabel::all_up_to(q.min(2));
    let ys: Vec<_> = labels.iter().map(|l| o.classical_harmonic(l)).collect();
    let mut worst: f64 = 0.0;
    for (a, l) in labels.iter().enumerate() {
        for b in 0..labels.len() {
            let e = if a == b { l.norm_sign() } else { 0.0 };
            worst = worst.max((o.harmonic_inner(&ys[a], &ys[b]) - C64::new(e, 0.0)).norm());
        }
    }
    r.record("classical signed gram", worst, 1e-12);
    Ok(())
}

fn calculus(r: &mut Recorder, q: u32, pmax: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let c = DerivationContext::fuzzy_supersphere(q)?;
    let mut worst: f64 = 0.0;
    for p in 0..=pmax {
        let w = SuperForm::random(&c, p, None, rng);
        worst = worst.max(exterior_d(&c, &exterior_d(&c, &w)?)?.max_abs());
    }
    r.record("d squared", worst, 1e-9);
    Ok(())
}

fn maurer_cartan_suite(r: &mut Recorder, q: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    let c = DerivationContext::fuzzy_supersphere(q)?;
    let lam = maurer_cartan(&c)?;
    r.record("d lambda = lambda ^ lambda", exterior_d(&c, &lam)?.max_abs_diff(&wedge(&c, &lam, &lam)?), 1e-9);
    let mut worst: f64 = 0.0;
    for p in [Parity::Even, Parity::Odd] {
        let f = SuperForm::random(&c, 0, Some(p), rng);
        let comm = wedge(&c, &lam, &f)?.sub(&wedge(&c, &f, &lam)?)?;
        worst = worst.max(exterior_d(&c, &f)?.max_abs_diff(&comm));
    }
    r.record("df = [lambda, f]", worst, 1e-9);
    Ok(())
}

fn body(r: &mut Recorder, q: u32, rho: f64, pmax: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let s = FuzzySuperSphere::new(q, rho)?;
    let b = FuzzySphere::new(q, rho)?;
    let x = s.coordinates();
    let xb = b.coordinates();
    let mut coord: f64 = 0.0;
    for k in 0..5 {
        let img = body_map_coefficients(&s.psi_inv(&x[k])?);
        coord = coord.max(if k < 3 { img.max_abs_diff(&b.psi_inv(&xb[k])?) } else { img.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max) });
    }
    r.record("coordinates", coord, 1e-12);
    let c = DerivationContext::fuzzy_supersphere(q)?;
    let bc = DerivationContext::fuzzy_sphere(q)?;
    let mut worst: f64 = 0.0;
    for p in 0..=pmax.min(2) {
        let w = SuperForm::random(&c, p, None, rng);
        let lhs = body_cochain_map(&exterior_d(&c, &w)?, &c, &bc, &s, &b)?;
        let rhs = exterior_d(&bc, &body_cochain_map(&w, &c, &bc, &s, &b)?)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    r.record("cochain map", worst, 1e-10);
    Ok(())
}
