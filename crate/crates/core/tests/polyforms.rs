use num_traits::Zero;
use proptest::prelude::*;

use pcfheight::numerics::{QuadExt, Rational};
use pcfheight::poly::inequalities::{affine_height_check, derivative_height_check, roots_height_check};
use pcfheight::poly::{
    affine_conjugate, critical_points, from_critical_points, g_forms, monic_centred_height_exact, parse_poly,
    to_monic_centred, AffineMap, CriticalVector, PolySpec,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn poly(max_degree: usize) -> impl Strategy<Value = PolySpec> {
    (2..=max_degree)
        .prop_flat_map(|d| (prop::collection::vec(rational(), d), nonzero()))
        .prop_map(|(mut v, lead)| {
            v.push(lead);
            PolySpec::new(v).unwrap()
        })
}

fn critical_vector() -> impl Strategy<Value = CriticalVector> {
    prop::collection::vec(rational(), 1..=4).prop_map(CriticalVector)
}

fn same(a: &pcfheight::numerics::LogLinear, b: &pcfheight::numerics::LogLinear) -> bool {
    a.le(b) && b.le(a)
}

proptest! {
    #[test]
    fn g_forms_are_homogeneous(c in critical_vector(), lambda in nonzero()) {
        let d = c.0.len() as i32 + 1;
        let scaled = CriticalVector(c.0.iter().map(|x| x * &lambda).collect());
        let k = num_traits::pow::pow(lambda.clone(), d as usize);
        for (g, gs) in g_forms(&c).iter().zip(g_forms(&scaled)) {
            prop_assert_eq!(gs, g * &k);
        }
    }

    #[test]
    fn normal_form_has_the_prescribed_critical_points(c in critical_vector()) {
        let f = from_critical_points(&c);
        let d = c.0.len() + 1;
        prop_assert_eq!(f.degree(), d);
        prop_assert_eq!(f.leading(), &Rational::new(1.into(), (d as i64).into()));
        prop_assert!(f.coeff(0).is_zero());
        let fp = f.derivative_coeffs();
        for ci in &c.0 {
            let v = fp.iter().rev().fold(Rational::zero(), |acc, a| acc * ci + a);
            prop_assert!(v.is_zero());
        }
        let total: usize = critical_points(&f).unwrap().iter().map(|p| p.multiplicity).sum();
        prop_assert_eq!(total, d - 1);
    }

    #[test]
    fn conjugation_is_a_right_action(f in poly(5), a1 in nonzero(), g1 in rational(), a2 in nonzero(), g2 in rational()) {
        let psi = AffineMap::rational(a1, g1).unwrap();
        let phi = AffineMap::rational(a2, g2).unwrap();
        let step = affine_conjugate(&affine_conjugate(&f, &psi).unwrap(), &phi).unwrap();
        let once = affine_conjugate(&f, &psi.compose(&phi).unwrap()).unwrap();
        prop_assert_eq!(&step, &once);
        let back = affine_conjugate(&affine_conjugate(&f, &psi).unwrap(), &psi.inverse()).unwrap();
        prop_assert_eq!(back.coeffs(), f.coeffs());
    }

    #[test]
    fn conjugation_commutes_with_iteration(f in poly(4), a in nonzero(), g in rational(), z in rational()) {
        let psi = AffineMap::rational(a, g).unwrap();
        let h = affine_conjugate(&f, &psi).unwrap();
        // psi(h(z)) = f(psi(z))
        let lhs = psi.apply(&QuadExt::rational(h.eval(&z))).unwrap();
        let rhs = QuadExt::rational(f.eval(psi.apply(&QuadExt::rational(z)).unwrap().as_rational().unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monic_centred_form_is_monic_and_centred(f in poly(3)) {
        let (mc, _) = to_monic_centred(&f).unwrap();
        let d = f.degree();
        prop_assert_eq!(&mc.coeffs[d], &QuadExt::one());
        prop_assert!(mc.coeffs[d - 1].is_zero());
    }

    #[test]
    fn monic_centred_height_is_a_conjugacy_invariant(f in poly(3), a in nonzero(), g in rational()) {
        let h = affine_conjugate(&f, &AffineMap::rational(a, g).unwrap()).unwrap();
        let (x, y) = (monic_centred_height_exact(&f).unwrap(), monic_centred_height_exact(&h).unwrap());
        prop_assert!(same(&x, &y), "{} vs {}", x, y);
    }

    #[test]
    fn some_g_form_survives(c in critical_vector()) {
        prop_assume!(c.0.iter().any(|x| !x.is_zero()));
        prop_assert!(g_forms(&c).iter().any(|g| !g.is_zero()), "{:?}", c);
    }

    #[test]
    fn constant_vectors_are_not_in_the_zero_locus(x in nonzero(), n in 1usize..5) {
        let c = CriticalVector(vec![x; n]);
        prop_assert!(g_forms(&c).iter().any(|g| !g.is_zero()));
    }

    #[test]
    fn twist_keeps_the_monic_centred_height(v in prop::collection::vec(rational(), 2..=4)) {
        let mut coeffs = v;
        coeffs.push(Rational::from_integer(1.into()));
        let f = PolySpec::new(coeffs).unwrap();
        let minus = Rational::from_integer((-1).into());
        let twist = affine_conjugate(&f, &AffineMap::rational(minus, Rational::zero()).unwrap()).unwrap();
        let (x, y) = (monic_centred_height_exact(&f).unwrap(), monic_centred_height_exact(&twist).unwrap());
        prop_assert!(same(&x, &y));
    }

    #[test]
    fn affine_bound_holds(f in poly(6), a in nonzero(), g in rational()) {
        let c = affine_height_check(&f, &a, &g).unwrap();
        prop_assert!(c.holds, "{} > {}", c.lhs, c.rhs);
    }

    #[test]
    fn root_bounds_hold(roots in prop::collection::vec(rational(), 1..=7)) {
        for c in roots_height_check(&roots) {
            prop_assert!(c.holds, "{}: {} > {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn derivative_bounds_hold(f in poly(7)) {
        let mut v = f.coeffs().to_vec();
        v[0] = Rational::zero();
        let f = PolySpec::new(v).unwrap();
        for c in derivative_height_check(&f).unwrap() {
            prop_assert!(c.holds, "{}: {} > {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn text_form_round_trips(f in poly(6)) {
        prop_assert_eq!(&f.to_string().parse::<PolySpec>().unwrap(), &f);
    }
}

#[test]
fn derivative_bound_needs_a_fixed_origin() {
    assert!(derivative_height_check(&parse_poly("z^2 + 1").unwrap()).is_err());
}

#[test]
fn scale_changes_the_field_when_needed() {
    let f = parse_poly("(1/3)z^3 - z").unwrap();
    let (mc, psi) = to_monic_centred(&f).unwrap();
    assert!(!psi.alpha.is_rational());
    assert_eq!(mc.as_poly_spec().unwrap(), parse_poly("z^3 - z").unwrap());
}
