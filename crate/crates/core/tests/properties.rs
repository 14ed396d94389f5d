use gwenum_core::binom::binom;
use gwenum_core::etale::EtaleAlgebra;
use gwenum_core::gw::{format_gw, parse_gw, FormatOptions};
use gwenum_core::picard::{DivisorClass, SurfaceModel};
use gwenum_core::wallcross::{quadric_split, wall_cross, InvariantTable};
use gwenum_core::{gw_eq, BaseField, GwElement, SquareClass};
use proptest::prelude::*;

const Q_CLASSES: [i64; 10] = [1, -1, 2, -2, 3, -3, 5, 6, -10, 30];

fn rational_element() -> impl Strategy<Value = GwElement> {
    prop::collection::vec((0..Q_CLASSES.len(), -4i64..=4), 0..5).prop_map(|ts| {
        let q = BaseField::Rationals;
        ts.into_iter().fold(GwElement::zero(q), |acc, (i, m)| {
            let c = q.class_of_int(Q_CLASSES[i]).unwrap();
            &acc + &GwElement::class(q, c).scale(m)
        })
    })
}

fn finite_element() -> impl Strategy<Value = GwElement> {
    (prop::sample::select(vec![3u64, 5, 7, 9, 25]), -5i64..=5, -5i64..=5).prop_map(|(q, a, b)| {
        let f = BaseField::finite(q).unwrap();
        &GwElement::one(f).scale(a) + &GwElement::class(f, SquareClass::Finite(true)).scale(b)
    })
}

fn finite_algebra() -> impl Strategy<Value = EtaleAlgebra> {
    (prop::sample::select(vec![3u64, 5, 9]), prop::collection::vec(1u32..=3, 0..4))
        .prop_map(|(q, ms)| EtaleAlgebra::finite(BaseField::finite(q).unwrap(), &ms).unwrap())
}

fn eq(x: &GwElement, y: &GwElement) -> bool {
    gw_eq(x, y).unwrap()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_over_q(x in rational_element(), y in rational_element(), z in rational_element()) {
        prop_assert!(eq(&(&x + &y), &(&y + &x)));
        prop_assert!(eq(&(&x * &y), &(&y * &x)));
        prop_assert!(eq(&(&(&x * &y) * &z), &(&x * &(&y * &z))));
        prop_assert!(eq(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z))));
        prop_assert_eq!((&x * &y).rank(), x.rank() * y.rank());
    }

    #[test]
    fn hyperbolic_absorbs(x in rational_element()) {
        let q = BaseField::Rationals;
        let h = GwElement::hyperbolic(q);
        prop_assert!(eq(&(&h * &x), &h.scale(x.rank())));
    }

    #[test]
    fn finite_equality_is_rank_and_det(x in finite_element(), y in finite_element()) {
        let same = x.rank() == y.rank()
            && x.mult(SquareClass::Finite(true)).rem_euclid(2) == y.mult(SquareClass::Finite(true)).rem_euclid(2);
        if x.field() == y.field() {
            prop_assert_eq!(eq(&x, &y), same);
        }
    }

    #[test]
    fn printed_elements_reparse(x in rational_element(), extract_h in any::<bool>()) {
        let s = format_gw(&x, FormatOptions { extract_h, raw: false });
        let back = parse_gw(&s, x.field(), None).unwrap();
        prop_assert!(eq(&back, &x), "{}", s);
    }

    #[test]
    fn printed_finite_elements_reparse(x in finite_element()) {
        let s = format_gw(&x, FormatOptions::default());
        prop_assert!(eq(&parse_gw(&s, x.field(), None).unwrap(), &x));
    }

    #[test]
    fn binomial_ranks_and_symmetry(a in finite_algebra()) {
        let n = a.degree();
        for j in 0..=n {
            let v = binom(&a, j).unwrap();
            prop_assert_eq!(v.rank(), binomial(n, j));
            prop_assert!(eq(&v, &binom(&a, n - j).unwrap()));
        }
    }

    #[test]
    fn dehn_twist_is_an_isometric_involution(
        which in 0usize..3,
        v in prop::collection::vec(-6i64..=6, 7),
        w in prop::collection::vec(-6i64..=6, 7),
    ) {
        let model = [SurfaceModel::quadric(), SurfaceModel::blowup(2), SurfaceModel::cubic()][which].clone();
        let r = model.lattice().rank();
        let d1 = DivisorClass::new(&v[..r]);
        let d2 = DivisorClass::new(&w[..r]);
        let t1 = model.dehn_twist(&d1).unwrap();
        let t2 = model.dehn_twist(&d2).unwrap();
        prop_assert_eq!(model.dot(&t1, &t2).unwrap(), model.dot(&d1, &d2).unwrap());
        prop_assert_eq!(model.dehn_twist(&t1).unwrap(), d1.clone());
        prop_assert_eq!(model.n_points(&t1).unwrap(), model.n_points(&d1).unwrap());
        let k = model.lattice().canonical().clone();
        prop_assert_eq!(model.dehn_twist(&k).unwrap(), k);
        let g = model.gamma().unwrap().clone();
        prop_assert_eq!(model.dehn_twist(&g).unwrap(), g.scale(-1));
        for j in -3..=3 {
            let moved = d1.add_scaled(&g, j);
            prop_assert_eq!(model.n_points(&moved).unwrap(), model.n_points(&d1).unwrap());
        }
    }

    #[test]
    fn phi_fibers_map_back(a in 0i64..=6, l in -3i64..=3) {
        let model = SurfaceModel::quadric();
        let d = DivisorClass::new(&[a, a]);
        let g = model.gamma().unwrap().clone();
        for pair in model.phi_fiber(&d, l).unwrap() {
            prop_assert_eq!(model.phi1(&d, &pair).unwrap(), d.add_scaled(&g, -l));
        }
    }

    #[test]
    fn wall_crossing_preserves_rank(
        a in 1i64..=4,
        data in prop::collection::vec((0i64..=20, 0i64..=10), 5),
        d in prop::sample::select(vec![-1i64, 2, 3, 5, 1]),
    ) {
        let q = BaseField::Rationals;
        let mut t = InvariantTable::new(SurfaceModel::quadric(), q);
        for (k, (w, hh)) in data.iter().enumerate() {
            let c = DivisorClass::new(&[a - k as i64, a + k as i64]);
            if let Ok(s) = t.split_sigma(&c) {
                t.insert(c, s, quadric_split(w + 2 * hh, *w).unwrap(), "random").unwrap();
            }
        }
        let c = DivisorClass::new(&[a, a]);
        let s = t.split_sigma(&c).unwrap();
        let dc = q.class_of_int(d).unwrap();
        let e = wall_cross(&t, &c, &s, dc).unwrap();
        let top = &t.get(&c, &s).unwrap().unwrap().value;
        prop_assert_eq!(e.value.rank(), top.rank());
        if d == 1 {
            prop_assert!(eq(&e.value, top));
        }
        let again = InvariantTable::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(again, t);
    }
}
