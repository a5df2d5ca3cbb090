//! Randomized invariants.

use proptest::prelude::*;
use qwedge::coeff::{QSeries, RatQ, Ring};
use qwedge::crystal::{AffineType, Elem, Family, Weight};
use qwedge::fock::Fock;
use qwedge::io;
use qwedge::lincomb::LinComb;
use qwedge::wedge::{Engine, Gen, WedgeVec, Word};
use std::collections::HashMap;

fn laurent() -> impl Strategy<Value = RatQ> {
    (-3i64..=3, prop::collection::vec(-3i64..=3, 1..4)).prop_map(|(lo, cs)| RatQ::laurent(lo, &cs))
}

fn ratq() -> impl Strategy<Value = RatQ> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(a, b)| a.checked_div(&b).ok())
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::all().to_vec())
}

thread_local! {
    static ENGINES: std::cell::RefCell<HashMap<Family, std::rc::Rc<Engine>>> = Default::default();
}

// Relation tables are expensive; one engine per family per thread.
fn engine(f: Family) -> std::rc::Rc<Engine> {
    ENGINES.with(|m| m.borrow_mut().entry(f).or_insert_with(|| std::rc::Rc::new(Engine::new(AffineType::minimal(f)))).clone())
}

fn word(t: &AffineType, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    let ls = t.letters().to_vec();
    prop::collection::vec((prop::sample::select(ls), -2i64..=2), len).prop_map(|v| v.into_iter().map(|(j, z)| Elem::new(j, z)).collect())
}

fn typed_word(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Family, Word)> {
    family().prop_flat_map(move |f| (Just(f), word(&AffineType::minimal(f), len.clone())))
}

fn wt_sum(t: &AffineType, w: &[Elem]) -> Weight {
    w.iter().fold(Weight::zero(t.rank()), |acc, b| acc.add(&t.wt(*b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in ratq(), y in ratq(), z in ratq()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, RatQ::zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn series_expansion_is_a_ring_map(x in ratq(), y in ratq()) {
        let o = 12;
        let s = |v: &RatQ| QSeries::from_ratq(v, o);
        prop_assert!(s(&(&x + &y)).agrees(&s(&x).add(&s(&y))));
        prop_assert!(s(&(&x * &y)).agrees(&s(&x).mul(&s(&y))));
    }

    #[test]
    fn ratq_json_roundtrip(x in ratq()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: RatQ = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn wedge_json_roundtrip((_f, w) in typed_word(0..=4), c in ratq(), (_g, u) in typed_word(1..=3)) {
        let mut v: WedgeVec = LinComb::new();
        v.add_term(w, c);
        v.add_term(u, RatQ::one());
        let s = serde_json::to_string(&io::wedge_to_wire(&v)).unwrap();
        let back = io::wedge_from_wire(&io::parse_json::<Vec<io::WireTerm>>(&s).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn crystal_weight_identity((f, w) in typed_word(1..=1)) {
        let t = AffineType::minimal(f);
        for i in t.indices() {
            prop_assert_eq!(t.phi(i, w[0].j) - t.eps(i, w[0].j), t.wt(w[0]).pairing(i));
        }
    }

    #[test]
    fn tensor_kashiwara_laws((f, w) in typed_word(1..=4)) {
        let t = AffineType::minimal(f);
        let base = wt_sum(&t, &w);
        for i in t.indices() {
            if let Some(x) = t.tensor_kashiwara(false, i, &w) {
                prop_assert_eq!(wt_sum(&t, &x), base.sub(&t.alpha(i)));
                prop_assert_eq!(t.tensor_kashiwara(true, i, &x), Some(w.clone()));
            }
            if let Some(x) = t.tensor_kashiwara(true, i, &w) {
                prop_assert_eq!(wt_sum(&t, &x), base.add(&t.alpha(i)));
                prop_assert_eq!(t.tensor_kashiwara(false, i, &x), Some(w.clone()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn straightening_confluent((f, w) in typed_word(1..=4)) {
        let e = engine(f);
        let v = WedgeVec::basis(w);
        let a = e.straighten(&v);
        prop_assert_eq!(&a, &e.rewrite(&v, true));
        prop_assert_eq!(&a, &e.rewrite(&v, false));
        prop_assert_eq!(&e.straighten(&a), &a);
        for (u, _) in a.iter() {
            prop_assert!(e.is_normal(u));
        }
    }

    #[test]
    fn action_well_defined_on_wedges((f, w) in typed_word(1..=3), gi in 0usize..3) {
        let e = engine(f);
        let v = WedgeVec::basis(w);
        let s = e.straighten(&v);
        for i in e.t.indices() {
            let g = [Gen::E(i), Gen::F(i), Gen::T(i, 1)][gi];
            prop_assert_eq!(e.wedge_act(g, &v), e.wedge_act(g, &s));
        }
    }
}

const FOCKS: [(Family, usize, usize); 4] = [(Family::A2Even, 1, 0), (Family::A1K, 2, 0), (Family::A1K, 2, 1), (Family::D2, 1, 1)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bosons_commute(case in 0usize..4, m in 0i64..2, n1 in -2i64..=2, n2 in -2i64..=2, i in 0usize..2) {
        prop_assume!(n1 != 0 && n2 != 0 && n1 + n2 != 0);
        let (f, k, kappa) = FOCKS[case];
        let t = if f == Family::A1K { AffineType::new(f, 1, k).unwrap() } else { AffineType::minimal(f) };
        let fk = Fock::new(Engine::new(t), kappa).unwrap();
        // a nontrivial start vector
        let v = fk.f_act(i, &fk.vacuum(m)).unwrap();
        let v = if v.is_zero() { fk.vacuum(m) } else { v };
        let ab = fk.boson_act(n1, &fk.boson_act(n2, &v).unwrap()).unwrap();
        let ba = fk.boson_act(n2, &fk.boson_act(n1, &v).unwrap()).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn first_boson_descendant_is_singular(case in 0usize..4, m in -1i64..2) {
        let (f, k, kappa) = FOCKS[case];
        let t = if f == Family::A1K { AffineType::new(f, 1, k).unwrap() } else { AffineType::minimal(f) };
        let fk = Fock::new(Engine::new(t), kappa).unwrap();
        let b = fk.boson_act(-1, &fk.vacuum(m)).unwrap();
        prop_assert!(!b.is_zero());
        for i in fk.eng.t.indices() {
            prop_assert!(fk.e_act(i, &b).is_zero());
        }
    }
}
