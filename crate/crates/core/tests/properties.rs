use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use spinor_core::action::{act, TorusEndomorphism};
use spinor_core::clifford::{Blade, CliffordElement, Signature};
use spinor_core::dual::{BundleClass, PicardMap};
use spinor_core::endo::{transport_multiplication, Unimodular};
use spinor_core::exact::{smith_form, solve_mod1, GaussianRational, IntMatrix, Matrix, Rational};
use spinor_core::parse::{parse_and_eval, parse_point};
use spinor_core::spinor::RepresentationTable;
use spinor_core::torus::{reduce, LatticeSpec, PolarizationData, TorusPoint};

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..24, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn gaussian_int() -> impl Strategy<Value = GaussianRational> {
    (-3i64..4, -3i64..4).prop_map(|(a, b)| GaussianRational::from_ints(a, b))
}

fn element(sig: Signature, coeff: BoxedStrategy<GaussianRational>) -> impl Strategy<Value = CliffordElement> {
    let blades = sig.blade_count() as u32;
    prop::collection::vec((0..blades, coeff), 0..5).prop_map(move |terms| {
        let mut e = CliffordElement::zero(sig);
        for (b, c) in terms {
            e.add_term(Blade(b), c);
        }
        e
    })
}

fn k1() -> Signature {
    Signature::euclidean(1)
}

fn k2() -> Signature {
    Signature::euclidean(2)
}

fn point(dim: usize) -> impl Strategy<Value = TorusPoint> {
    prop::collection::vec(gaussian(), dim).prop_map(|v| TorusPoint::from_lattice_coords(&v))
}

fn lattice_shift(dim: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(gaussian_int(), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &a.conj()).im().clone(), Rational::zero());
        prop_assert_eq!((&a * &a.conj()).re().clone(), a.norm());
    }

    #[test]
    fn scalar_text_round_trip(a in gaussian()) {
        prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a);
    }

    #[test]
    fn clifford_associative(
        x in element(k2(), gaussian().boxed()),
        y in element(k2(), gaussian().boxed()),
        z in element(k2(), gaussian().boxed()),
    ) {
        let lhs = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
        let rhs = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_an_anti_involution(x in element(k2(), gaussian().boxed()), y in element(k2(), gaussian().boxed())) {
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.try_mul(&y).unwrap().star(), y.star().try_mul(&x.star()).unwrap());
    }

    #[test]
    fn grades_reassemble(x in element(k2(), gaussian().boxed())) {
        let sum = (0..=4).fold(CliffordElement::zero(k2()), |acc, g| acc.try_add(&x.grade_project(g)).unwrap());
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn integer_subring_closed(x in element(k2(), gaussian_int().boxed()), y in element(k2(), gaussian_int().boxed())) {
        prop_assert!(x.try_mul(&y).unwrap().in_integer_subring());
        prop_assert!(x.try_add(&y).unwrap().in_integer_subring());
    }

    #[test]
    fn rho_is_multiplicative(x in element(k2(), gaussian().boxed()), y in element(k2(), gaussian().boxed())) {
        let t = RepresentationTable::build(k2());
        prop_assert_eq!(t.rho(&x.try_mul(&y).unwrap()).unwrap(), &t.rho(&x).unwrap() * &t.rho(&y).unwrap());
        prop_assert_eq!(t.rho(&x.star()).unwrap(), t.rho(&x).unwrap().adjoint());
    }

    #[test]
    fn element_text_round_trip(x in element(k2(), gaussian().boxed())) {
        prop_assert_eq!(parse_and_eval(&x.to_string(), k2()).unwrap(), x);
    }

    #[test]
    fn point_text_round_trip(p in point(4)) {
        prop_assert_eq!(parse_point(&p.to_string(), 2).unwrap(), p);
    }

    #[test]
    fn torus_group_axioms(p in point(2), q in point(2), r in point(2)) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
        prop_assert!(p.add(&p.neg()).unwrap().is_origin());
        prop_assert_eq!(p.add(&TorusPoint::origin(2)).unwrap(), p.clone());
        let n = p.order();
        let small: i64 = n.clone().try_into().unwrap();
        prop_assert!(p.times(small).is_origin());
    }

    #[test]
    fn action_is_independent_of_lift(
        h in element(k1(), gaussian_int().boxed()),
        p in point(2),
        gamma in lattice_shift(2),
    ) {
        let t = RepresentationTable::build(k1());
        let l = LatticeSpec::standard(1);
        let shifted: Vec<_> = p.lift(&l).iter().zip(&gamma).map(|(a, b)| a + b).collect();
        let q = reduce(&shifted, &l).unwrap();
        prop_assert_eq!(&q, &p);
        // the same image from an unreduced lift
        let image = reduce(&t.rho(&h).unwrap().apply(&shifted).unwrap(), &l).unwrap();
        prop_assert_eq!(act(&h, &p, &t, &l).unwrap(), image);
    }

    #[test]
    fn action_is_a_homomorphism(
        h in element(k1(), gaussian_int().boxed()),
        g in element(k1(), gaussian_int().boxed()),
        p in point(2),
    ) {
        let t = RepresentationTable::build(k1());
        let l = LatticeSpec::standard(1);
        let hg = h.try_mul(&g).unwrap();
        prop_assert_eq!(act(&hg, &p, &t, &l).unwrap(), act(&h, &act(&g, &p, &t, &l).unwrap(), &t, &l).unwrap());
    }

    #[test]
    fn analytic_matrix_is_rho(h in element(k1(), gaussian_int().boxed()), v in prop::collection::vec(gaussian(), 2)) {
        let t = RepresentationTable::build(k1());
        let l = LatticeSpec::standard(1);
        let lhs = act(&h, &reduce(&v, &l).unwrap(), &t, &l).unwrap();
        let rhs = reduce(&t.rho(&h).unwrap().apply(&v).unwrap(), &l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_on_custom_lattice(h in element(k1(), gaussian_int().boxed()), v in prop::collection::vec(gaussian(), 2)) {
        // (1+i) Z[i]^2 is preserved by every integral element
        let t = RepresentationTable::build(k1());
        let l = LatticeSpec::new(Matrix::identity(2).scale(&GaussianRational::from_ints(1, 1))).unwrap();
        let lhs = act(&h, &reduce(&v, &l).unwrap(), &t, &l).unwrap();
        let rhs = reduce(&t.rho(&h).unwrap().apply(&v).unwrap(), &l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_is_an_isomorphism(p in point(2), q in point(2)) {
        let l = LatticeSpec::standard(1);
        let map = PicardMap::new(&PolarizationData::standard(&l)).unwrap();
        let fp = map.phi_forward(&p).unwrap();
        let fq = map.phi_forward(&q).unwrap();
        prop_assert_eq!(map.phi_forward(&p.add(&q).unwrap()).unwrap(), fp.tensor(&fq).unwrap());
        prop_assert_eq!(map.phi_inverse(&fp).unwrap(), p.clone());
        prop_assert_eq!(fp.order(), p.order());
        prop_assert_eq!(map.phi_forward(&p.neg()).unwrap(), fp.dual());
    }

    #[test]
    fn bundle_group_laws(a in prop::collection::vec(rational(), 4), b in prop::collection::vec(rational(), 4), c in prop::collection::vec(rational(), 4)) {
        let (a, b, c) = (BundleClass::new(&a), BundleClass::new(&b), BundleClass::new(&c));
        prop_assert_eq!(a.tensor(&b).unwrap(), b.tensor(&a).unwrap());
        prop_assert_eq!(a.tensor(&b).unwrap().tensor(&c).unwrap(), a.tensor(&b.tensor(&c).unwrap()).unwrap());
        prop_assert!(a.tensor(&a.dual()).unwrap().is_trivial());
        let n: i64 = a.order().try_into().unwrap();
        prop_assert!(a.power(n).is_trivial());
    }

    #[test]
    fn induced_action_is_functorial(
        h in element(k1(), gaussian_int().boxed()),
        g in element(k1(), gaussian_int().boxed()),
        c in prop::collection::vec(rational(), 4),
    ) {
        let t = RepresentationTable::build(k1());
        let l = LatticeSpec::standard(1);
        let map = PicardMap::new(&PolarizationData::standard(&l)).unwrap();
        let eh = TorusEndomorphism::from_element(&h, &t, &l).unwrap();
        let eg = TorusEndomorphism::from_element(&g, &t, &l).unwrap();
        let ehg = TorusEndomorphism::from_element(&h.try_mul(&g).unwrap(), &t, &l).unwrap();
        let c = BundleClass::new(&c);
        prop_assert_eq!(
            map.induced_action(&ehg, &c).unwrap(),
            map.induced_action(&eh, &map.induced_action(&eg, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn transport_is_multiplicative(
        h in element(k1(), gaussian_int().boxed()),
        g in element(k1(), gaussian_int().boxed()),
        z in gaussian_int(),
    ) {
        let t = RepresentationTable::build(k1());
        let f = Matrix::from_rows(vec![vec![GaussianRational::one(), z], vec![GaussianRational::zero(), GaussianRational::one()]]).unwrap();
        prop_assert!(Unimodular::new(f.clone()).is_ok());
        let lhs = transport_multiplication(&f, &h.try_mul(&g).unwrap(), &t).unwrap();
        let rhs = &transport_multiplication(&f, &h, &t).unwrap() * &transport_multiplication(&f, &g, &t).unwrap();
        prop_assert!(lhs.is_gaussian_integral());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_divisibility_and_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 3)) {
        let m = IntMatrix::from_rows(&rows);
        let d = smith_form(&m);
        for w in d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero());
            }
        }
        let product: BigInt = d.iter().product();
        prop_assert_eq!(product, m.det().abs());
        // the first divisor is the gcd of the entries
        let g = rows.iter().flatten().fold(BigInt::zero(), |acc, &x| num_integer::Integer::gcd(&acc, &BigInt::from(x)));
        prop_assert_eq!(d[0].clone(), g);
    }

    #[test]
    fn solve_mod1_inverts(x in prop::collection::vec(rational(), 4), shear in -3i64..4) {
        let a = IntMatrix::from_rows(&[vec![1, shear, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]]);
        let c: Vec<Rational> = (0..4).map(|i| (0..4).map(|j| Rational::from_integer(a.get(i, j).clone()) * &x[j]).sum()).collect();
        let sol = solve_mod1(&a, &c).unwrap();
        let expect: Vec<Rational> = x.iter().map(|r| r - r.floor()).collect();
        prop_assert_eq!(sol, expect);
    }
}
