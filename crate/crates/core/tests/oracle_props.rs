use fuzzsuper::graded::Parity;
use fuzzsuper::oracle::{vector_field, GaussRat, Poly, SuperPoly, SuperSphereOracle};
use num_rational::BigRational;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| GaussRat::new(BigRational::new(a.into(), d.into()), BigRational::from_integer(b.into())))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), coeff()), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for ((a, b, c), z) in terms {
            p.add_term([a, b, c], &z);
        }
        p
    })
}

fn superpoly() -> impl Strategy<Value = SuperPoly> {
    (poly(), poly(), poly(), poly()).prop_map(|(a, b, c, d)| SuperPoly::from_comps(a, b, c, d))
}

fn homogeneous() -> impl Strategy<Value = (SuperPoly, Parity)> {
    (superpoly(), any::<bool>()).prop_map(|(f, odd)| if odd { (f.odd_part(), Parity::Odd) } else { (f.even_part(), Parity::Even) })
}

fn oracle() -> SuperSphereOracle {
    SuperSphereOracle::new(BigRational::new(7.into(), 3.into())).unwrap()
}

fn sign(a: Parity, b: Parity) -> GaussRat {
    GaussRat::from_int(if a.is_odd() && b.is_odd() { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graded_commutativity((f, pf) in homogeneous(), (g, pg) in homogeneous()) {
        prop_assert_eq!(&f * &g, (&g * &f).scale(&sign(pf, pg)));
    }

    #[test]
    fn text_form_round_trips(f in superpoly()) {
        prop_assert_eq!(f.to_string().parse::<SuperPoly>().unwrap(), f);
    }

    #[test]
    fn product_is_associative(f in superpoly(), g in superpoly(), h in superpoly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn ideal_reduces_to_zero(f in superpoly(), h in superpoly()) {
        let o = oracle();
        let in_ideal = &f * &o.ideal_generator();
        prop_assert!(o.normal_form(&in_ideal).is_zero());
        prop_assert_eq!(o.normal_form(&(&in_ideal + &h)), o.normal_form(&h));
        prop_assert!(o.integral_over_pi(&in_ideal).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent(f in superpoly()) {
        let o = oracle();
        let nf = o.normal_form(&f);
        prop_assert!(nf.comps.iter().all(|p| p.max_x3_degree() <= 1));
        prop_assert_eq!(o.normal_form(&nf), nf);
    }

    #[test]
    fn cross_laws((f, pf) in homogeneous(), (g, pg) in homogeneous()) {
        prop_assert_eq!(f.cross().cross(), f.scale(&sign(pf, pf)));
        prop_assert_eq!((&f * &g).cross(), (&g.cross() * &f.cross()).scale(&sign(pf, pg)));
    }

    #[test]
    fn inner_is_hermitian_and_even(f in superpoly(), g in superpoly()) {
        let o = oracle();
        prop_assert_eq!(o.inner(&f, &g), o.inner(&g, &f).conj());
        prop_assert!(o.inner(&f.even_part(), &g.odd_part()).is_zero());
    }

    #[test]
    fn body_map_is_multiplicative(f in superpoly(), g in superpoly()) {
        let o = oracle();
        let lhs = o.body_map(&(&f * &g));
        let rhs = o.body_normal_form(&(&o.body_map(&f) * &o.body_map(&g)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(o.body_map(&SuperPoly::theta(0)).is_zero());
    }

    #[test]
    fn vector_fields_are_graded_derivations(a in 0usize..5, (f, pf) in homogeneous(), g in superpoly()) {
        let pa = if a < 3 { Parity::Even } else { Parity::Odd };
        let lhs = vector_field(a, &(&f * &g));
        let rhs = &(&vector_field(a, &f) * &g) + &(&f * &vector_field(a, &g)).scale(&sign(pa, pf));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_fields_preserve_the_ideal(a in 0usize..5, f in superpoly()) {
        let o = oracle();
        let in_ideal = &f * &o.ideal_generator();
        prop_assert!(o.normal_form(&vector_field(a, &in_ideal)).is_zero());
    }
}

#[test]
fn structure_constant_symmetry() {
    let o = oracle();
    for j1 in 0..=3u32 {
        for j2 in 0..=(3 - j1) {
            let a = o.structure_constant_classical(j1, j2).unwrap();
            let b = o.structure_constant_classical(j2, j1).unwrap();
            let s = if j1 % 2 == 1 && j2 % 2 == 1 { -1.0 } else { 1.0 };
            assert!((a - s * b).abs() < 1e-14, "({j1},{j2}): {a} vs {b}");
            println!("c({j1}/2,{j2}/2) = {a}");
        }
    }
}

#[test]
fn structure_constants_are_radius_free() {
    let a = SuperSphereOracle::from_f64(1.0).unwrap();
    let b = SuperSphereOracle::from_f64(2.5).unwrap();
    for (j1, j2) in [(1, 2), (2, 2), (1, 3), (2, 4)] {
        let ca = a.structure_constant_classical(j1, j2).unwrap();
        let cb = b.structure_constant_classical(j1, j2).unwrap();
        assert!((ca - cb).abs() < 1e-14);
    }
}
