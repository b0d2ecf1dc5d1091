use jordanlab::geometry::Geometry;
use jordanlab::rings::{Ring, Value};
use proptest::prelude::*;

fn q() -> Ring {
    Ring::rationals()
}

fn rat(n: i64, d: i64) -> Value {
    let r = q();
    r.div(&r.from_i64(n), &r.from_i64(d)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_mod_p(a in 0i64..101, b in 0i64..101, c in 0i64..101) {
        let r: Ring = "Fp:101".parse().unwrap();
        let (a, b, c) = (r.from_i64(a), r.from_i64(b), r.from_i64(c));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        if !r.is_zero(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &r.inv(&a).unwrap())));
        }
    }

    #[test]
    fn dual_numbers_square_to_zero(a in -20i64..20, b in -20i64..20) {
        let t = q().tangent();
        let eps = t.generator(0);
        let x = t.add(&t.from_i64(a), &t.mul(&t.from_i64(b), &eps));
        let y = t.sub(&t.from_i64(a), &t.mul(&t.from_i64(b), &eps));
        prop_assert_eq!(t.mul(&x, &y), t.from_i64(a * a));
    }

    #[test]
    fn inversions_are_involutions_on_the_rational_line(
        x in -30i64..30, a in -30i64..30, z in -30i64..30, y in -30i64..30, d in 1i64..7,
    ) {
        let g = Geometry::projective_line(q()).unwrap();
        let p = |n: i64| g.affine(&rat(n, d));
        let (x, a, z, y) = (p(x), p(a), p(z), p(y));
        prop_assume!(g.transversal(&x, &a) && g.transversal(&z, &a));
        let j = g.j_map(&x, &a, &z).unwrap();
        prop_assert_eq!(j.apply(&j.apply(&y)), y);
        prop_assert_eq!(j.apply(&x), z.clone());
        prop_assert_eq!(j.apply(&a), a);
    }

    #[test]
    fn canonical_span_ignores_the_chosen_basis(
        u in prop::collection::vec(-5i64..5, 4), v in prop::collection::vec(-5i64..5, 4), s in 1i64..5, t in -4i64..4,
    ) {
        let g: Geometry = "gras:Q:4".parse().unwrap();
        let Ok(p) = g.point_i64(&[&u, &v]) else { return Ok(()) };
        prop_assume!(p.rank() == 2);
        let w: Vec<i64> = u.iter().zip(&v).map(|(a, b)| s * a + t * b).collect();
        let q2 = g.point_i64(&[&w, &v]).unwrap();
        prop_assert_eq!(p, q2);
    }
}
