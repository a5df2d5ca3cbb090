use super::*;
use crate::coeff::RatQ;
use num_traits::Zero;

#[test]
fn empty_and_first_box() {
    let y = Young::new(1).unwrap();
    assert_eq!(y.act(Gen::F(1), &[]).unwrap(), LinComb::basis(vec![1]));
    for i in 0..=1 {
        let c = if i == 1 { q(1) } else { RatQ::one() };
        assert_eq!(y.act(Gen::T(i, 1), &[]).unwrap(), LinComb::basis(vec![]).scale(&c));
    }
    assert!(y.act(Gen::F(0), &[2, 2]).is_err());
}

#[test]
fn outputs_stay_in_dp() {
    for n in [1usize, 2] {
        let y = Young::new(n).unwrap();
        for d in 0..=7 {
            for x in y.diagrams(d) {
                for i in 0..=n {
                    for g in [Gen::E(i), Gen::F(i)] {
                        for (z, _) in y.act(g, &x).unwrap().iter() {
                            assert!(y.is_dp(z), "{g:?} {x:?} -> {z:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn transport_identity() {
    for n in [1usize, 2] {
        let y = Young::new(n).unwrap();
        let fk = y.fock().unwrap();
        assert!(y.transport_check(&fk, 8).unwrap().is_none(), "n={n}");
    }
}

#[test]
fn bijection_examples() {
    let y = Young::new(2).unwrap();
    let t = y.affine_type().unwrap();
    assert_eq!(y.bij_from_wedge(&t, &[]).unwrap(), Vec::<i64>::new());
    let vmn = -2;
    assert_eq!(y.bij_from_wedge(&t, &[Elem::new(vmn, 0)]).unwrap(), vec![1]);
    for d in 0..=6 {
        for x in y.diagrams(d) {
            let w = y.wedge_from_diagram(&t, &x).unwrap();
            assert_eq!(y.bij_from_wedge(&t, &w).unwrap(), x);
        }
    }
    assert!(y.bij_from_wedge(&t, &[Elem::new(vmn, 1)]).is_err());
}

#[test]
fn graded_counts_match_fock() {
    let y = Young::new(1).unwrap();
    let fk = y.fock().unwrap();
    let (a, b) = y.graded_counts(&fk, 6);
    assert_eq!(a, b);
}

#[test]
fn norms() {
    let y = Young::new(1).unwrap();
    assert_eq!(y.norm(&[2, 1]), RatQ::one());
    assert_eq!(y.norm(&[3]), &RatQ::one() + &q(2));
    assert_eq!(y.norm(&[3, 3]), &(&RatQ::one() + &q(2)) * &(&RatQ::one() - &q(4)));
    assert_eq!(y.norm(&[6, 3, 3, 1]), &(&RatQ::one() + &q(2)).pow(2) * &(&RatQ::one() - &q(4)));
}

#[test]
fn adjoints() {
    for n in [1usize, 2] {
        let y = Young::new(n).unwrap();
        for i in 0..=n {
            assert!(y.adjoint_check(i, 7).unwrap(), "n={n} i={i}");
        }
    }
}

#[test]
fn reduced_space() {
    let y = Young::new(1).unwrap();
    let r = y.reduce_q1(8);
    assert_eq!(r, vec![1, 1, 1, 2, 2, 3, 4, 5, 6]);
    assert_eq!(r, (0..=8).map(distinct_partitions).collect::<Vec<_>>());
    assert!(y.reduced_well_defined(8).unwrap());
    for d in 0..=8 {
        for x in y.diagrams(d) {
            let one = num_rational::BigRational::from_integer(1.into());
            let zero = y.norm(&x).eval(&one).unwrap().is_zero();
            assert_eq!(zero, x.windows(2).any(|w| w[0] == w[1]));
        }
    }
}

#[test]
fn boson_adjoint_check() {
    let y = Young::new(1).unwrap();
    let fk = y.fock().unwrap();
    eprintln!("B_-1^dagger = B_1 through size 6: {:?}", y.boson_adjoint_check(&fk, 6));
}
