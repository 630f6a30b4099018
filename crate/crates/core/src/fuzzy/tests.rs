use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graded::{indefinite_inner, GradedMatrix, Parity, C64, ONE};
use crate::osp::{J1, J3, J4, J5};

fn signed_identity_defect(s: &FuzzySuperSphere) -> f64 {
    let g = s.gram();
    let mut worst: f64 = 0.0;
    for (r, lr) in s.labels().iter().enumerate() {
        for c in 0..g.ncols() {
            let expected = if r == c { lr.norm_sign() } else { 0.0 };
            worst = worst.max((g[(r, c)] - C64::new(expected, 0.0)).norm());
        }
    }
    worst
}

#[test]
fn highest_weight_norms() {
    for q in 1..=4 {
        let s = FuzzySuperSphere::new(q, 1.0).unwrap();
        for j2 in 0..=2 * q {
            let y = s.nc_highest_weight(j2).unwrap();
            let n = indefinite_inner(&y, &y).unwrap();
            assert!((n - ONE).norm() < 1e-10, "q={q} j2={j2} norm={n}");
            assert!(s.adjoint_action(J4, &y).unwrap().max_abs() < 1e-10);
            let jp = s.rep().jp.clone();
            assert!(GradedMatrix::adjoint_action(&jp, Parity::Even, &y).max_abs() < 1e-10);
        }
        assert_eq!(s.nc_highest_weight(0).unwrap(), GradedMatrix::identity(s.dims()));
        assert!(s.nc_highest_weight(2 * q + 1).is_err());
    }
}

#[test]
fn pseudo_orthonormal_basis() {
    for q in 1..=4 {
        let s = FuzzySuperSphere::new(q, 1.0).unwrap();
        assert!(signed_identity_defect(&s) < 1e-9, "q={q}");
    }
}

#[test]
fn j3_weights_of_harmonics() {
    let s = FuzzySuperSphere::new(3, 1.0).unwrap();
    for (label, y) in s.labels().iter().zip(s.harmonics()) {
        let lhs = s.adjoint_action(J3, y).unwrap();
        assert!((&lhs - &y.scale_real(label.m())).max_abs() < 1e-10);
        assert_eq!(y.parity(), Some(label.parity()));
    }
}

#[test]
fn psi_round_trip_and_intertwiner() {
    let s = FuzzySuperSphere::new(2, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = FuzzyElement::random(2, 4, None, &mut rng);
    let back = s.psi_inv(&s.psi(&e).unwrap()).unwrap();
    assert!(back.max_abs_diff(&e) < 1e-10);
    assert_eq!(s.psi(&FuzzyElement::unit(2)).unwrap(), GradedMatrix::identity(s.dims()));
    for a in 0..5 {
        let lhs = s.psi(&e.act(a)).unwrap();
        let rhs = s.adjoint_action(a, &s.psi(&e).unwrap()).unwrap();
        assert!((&lhs - &rhs).max_abs() < 1e-10, "generator {a}");
    }
}

#[test]
fn ad_is_graded_derivation() {
    let s = FuzzySuperSphere::new(2, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for pf in [Parity::Even, Parity::Odd] {
        let f = s.psi(&FuzzyElement::random(2, 4, Some(pf), &mut rng)).unwrap();
        let g = s.psi(&FuzzyElement::random(2, 4, None, &mut rng)).unwrap();
        for a in 0..5 {
            let lhs = s.adjoint_action(a, &(&f * &g)).unwrap();
            let sign = s.basis().parities[a].koszul(pf);
            let rhs = &(&s.adjoint_action(a, &f).unwrap() * &g) + &(&f * &s.adjoint_action(a, &g).unwrap()).scale_real(sign);
            assert!((&lhs - &rhs).max_abs() < 1e-10);
        }
    }
}

#[test]
fn ad_is_grade_star_for_dagger_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in 1..=3 {
        let s = FuzzySuperSphere::new(q, 1.0).unwrap();
        assert!(s.grade_star_residual(2, &mut rng) < 1e-10);
    }
}

#[test]
fn fuzzy_product_unit_and_associativity() {
    let s = FuzzySuperSphere::new(2, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = FuzzyElement::random(2, 4, None, &mut rng);
    let b = FuzzyElement::random(2, 4, None, &mut rng);
    let c = FuzzyElement::random(2, 4, None, &mut rng);
    assert!(s.fuzzy_product(&FuzzyElement::unit(2), &a).unwrap().max_abs_diff(&a) < 1e-10);
    let left = s.fuzzy_product(&s.fuzzy_product(&a, &b).unwrap(), &c).unwrap();
    let right = s.fuzzy_product(&a, &s.fuzzy_product(&b, &c).unwrap()).unwrap();
    assert!(left.max_abs_diff(&right) < 1e-9);
}

#[test]
fn eta_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let e = FuzzyElement::random(2, 4, None, &mut rng);
    assert_eq!(eta(2, 2, &e).unwrap(), e);
    let two_step = eta(5, 3, &eta(3, 2, &e).unwrap()).unwrap();
    assert_eq!(two_step, eta(5, 2, &e).unwrap());
    assert!(eta(1, 2, &e).is_err());
    for a in 0..5 {
        assert_eq!(eta(4, 2, &e.act(a)).unwrap(), eta(4, 2, &e).unwrap().act(a));
    }
}

#[test]
fn casimir_identity() {
    for q in 1..=6 {
        for rho in [1.0, 2.5] {
            let s = FuzzySuperSphere::new(q, rho).unwrap();
            assert!(s.casimir_defect().max_abs() < 1e-10);
            let b = FuzzySphere::new(q, rho).unwrap();
            assert!(b.casimir_defect().max_abs() < 1e-10);
        }
    }
}

#[test]
fn coordinates_are_degree_one_harmonics() {
    // z = x¹ + i x² = √2 ρ Y_{1,1,1,0}
    let rho = 1.7;
    let s = FuzzySuperSphere::new(3, rho).unwrap();
    let x = s.coordinates();
    let z = &x[J1] + &x[1].scale(C64::new(0.0, 1.0));
    let y = s.nc_harmonic(&HarmonicLabel::highest(2)).unwrap();
    assert!((&z - &y.scale_real(2f64.sqrt() * rho)).max_abs() < 1e-10);
}

#[test]
fn sphere_harmonics_orthonormal() {
    for q in 1..=4 {
        let b = FuzzySphere::new(q, 1.0).unwrap();
        let g = b.gram();
        let id = nalgebra::DMatrix::<C64>::identity(g.nrows(), g.ncols());
        assert!((g - id).iter().all(|z| z.norm() < 1e-10), "q={q}");
        assert_eq!(b.nc_spherical_harmonic(0, 0).unwrap(), &GradedMatrix::identity(b.dims()));
    }
}

#[test]
fn body_map_coordinates() {
    for q in 1..=4 {
        let s = FuzzySuperSphere::new(q, 1.3).unwrap();
        let b = FuzzySphere::new(q, 1.3).unwrap();
        let x = s.coordinates();
        let xb = b.coordinates();
        for k in 0..3 {
            let img = body_map_fuzzy(&x[k], &s, &b).unwrap();
            assert!((&img - &xb[k]).max_abs() < 1e-10);
        }
        for a in [J4, J5] {
            assert!(body_map_fuzzy(&x[a], &s, &b).unwrap().max_abs() < 1e-12);
        }
        let id = GradedMatrix::identity(s.dims());
        let img = body_map_fuzzy(&id, &s, &b).unwrap();
        assert!((&img - &GradedMatrix::identity(b.dims())).max_abs() < 1e-12);
    }
}

#[test]
fn structure_constants_are_rank_one() {
    let s = FuzzySuperSphere::new(3, 1.0).unwrap();
    for j1 in 0..=6 {
        for j2 in 0..=(6 - j1) {
            let (c, res) = s.structure_constant(j1, j2).unwrap();
            assert!(res < 1e-9, "j1={j1} j2={j2} res={res}");
            if j1 == 0 || j2 == 0 {
                assert!((c - 1.0).abs() < 1e-12);
            }
        }
    }
    assert!(s.structure_constant(4, 3).is_err());
}
