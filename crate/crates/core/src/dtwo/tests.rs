use super::*;

fn ix(n: usize) -> Index {
    Index::new(n).unwrap()
}

#[test]
fn index_set() {
    let i = ix(2);
    assert_eq!(i.order, vec![1, 2, 0, -2, -1, PHI]);
    assert!(i.above(0, -2) && i.above(-1, PHI) && !i.above(PHI, 1));
    assert_eq!([1, 2, 0, -2, -1, PHI].map(|j| i.bar(j)), [1, 2, 2, 3, 4, 4]);
    assert_eq!([1, 2, 0, -2].map(|j| i.phi_pairing(j)), [8, 4, 0, -4]);
    assert!(Index::new(1).is_err());
}

#[test]
fn numeric_pole_is_reported() {
    // 1 − q⁴z² = 0 at q = 1/2, z = 4
    let r = build_rbar(&ix(2), &cst(&rat(1, 2)), &cst(&rat(4, 1)));
    assert!(matches!(r, Err(Error::Pole)));
}

#[test]
fn cleared_entries_are_laurent() {
    let r = build_cleared(&ix(2), &rat(2, 7)).unwrap();
    assert!(r.cols.iter().flatten().all(|(_, c)| c.is_laurent()));
}

#[test]
fn normalization_unitarity_crossing() {
    for n in [2usize, 3] {
        for c in ["normalization", "unitarity", "crossing"] {
            let r = run_check(n, c, None).unwrap();
            assert!(r.ok, "n={n} {c}");
            assert_eq!(r.points, degree_bound(c).unwrap() + 1);
        }
    }
}

#[test]
fn wrong_beta_breaks_crossing() {
    let z = rat(1, 5);
    assert!(crossing_check(&ix(2), &z).unwrap());
    assert!(!crossing_scaled(&ix(2), &z, &qs()).unwrap());
}

#[test]
fn yang_baxter() {
    let two = rat(2, 7);
    assert!(ybe_check(&ix(2), &two, &BigRational::one()).unwrap());
    let r = run_check(2, "ybe", Some(2)).unwrap();
    assert!(r.ok && r.method == "sampled" && r.points == 4);
    assert!(ybe_check(&ix(3), &rat(3, 11), &rat(5, 13)).unwrap());
}

#[test]
fn intertwining() {
    let i = ix(2);
    let (l, r) = intertwine_sides(&i, &qs(), &RatQ::zero()).unwrap();
    assert_eq!(l, r);
    let w0 = w_vector(&i, &qs(), &RatQ::zero()).unwrap();
    assert_eq!(w0[i.pos(0) * i.dim() + i.pos(0)], RatQ::one());
    for n in [2usize, 3] {
        assert!(run_check(n, "intertwine", None).unwrap().ok, "n={n}");
    }
}

#[test]
fn literal_phi_sign_fails() {
    let i = ix(2);
    let (q, z) = (qs(), cst(&rat(1, 5)));
    let k = Consts::new(2, &q).unwrap();
    let sz = &k.qp(2).mul(&k.xi2) * &z;
    let w = w_vector_literal(&i, &q, &z).unwrap();
    let lhs = build_rbar(&i, &q, &sz).unwrap().apply(&apply_phi(&i, &q, &w).unwrap());
    let c = int_scalar(&k, &z).unwrap();
    let rhs: Vec<RatQ> = w_vector_literal(&i, &q, &sz).unwrap().iter().map(|x| x * &c).collect();
    assert_ne!(lhs, rhs);
}

#[test]
fn qkz_truncated() {
    assert!(qkz_residual::<8>(&ix(2)).unwrap().is_none());
    assert!(qkz_residual::<4>(&ix(3)).unwrap().is_none());
}

#[test]
fn theta_matches_wedge_model() {
    assert!(theta_consistency(2, 6, 20).unwrap());
}

#[test]
fn report_errors() {
    assert!(run_check(2, "bogus", None).is_err());
    assert!(run_check(1, "crossing", None).is_err());
}
