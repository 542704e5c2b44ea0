use super::*;
use crate::lattice::Parity;
use crate::manifold::{e1, quintic_fibration};

#[test]
fn e2_from_two_rational_elliptic_surfaces() {
    let m = e1();
    let s = generalized_fibre_sum(&m, &m, &GluingClass::zero(1), &[-2, -2]).unwrap();
    let x = s.manifold();
    assert_eq!((x.euler(), x.sigma()), (24, -16));
    assert_eq!(x.lattice().rank(), 22);
    assert_eq!(x.lattice().parity(), Parity::Even);
    assert_eq!(alloc::string::ToString::to_string(&x.classify_homeo().unwrap()), "2·E8(−1) ⊕ 3·H");
    assert!(x.canonical().is_zero());
    s.verify_structure().unwrap();
}

#[test]
fn iterated_en() {
    let m = e1();
    for n in 1..=4usize {
        let it = iterated_fibre_sum(&m, n).unwrap();
        let x = it.manifold();
        assert_eq!(x.euler(), 12 * n as i64);
        assert_eq!(x.sigma(), -8 * n as i64);
        assert_eq!(x.section_square(), BigInt::from(-(n as i64)));
        assert_eq!(it.summand_count(), n);
        if let Some(s) = it.as_sum() {
            assert_eq!(s.copies().len(), n);
            assert_eq!(s.rim_pairs().len(), 2 * (n - 1));
            s.verify_structure().unwrap();
        }
    }
}

#[test]
fn quintic_pair() {
    let q = quintic_fibration();
    let s = generalized_fibre_sum(&q, &q, &GluingClass::zero(6), &[-2; 12]).unwrap();
    let x = s.manifold();
    assert_eq!((x.euler(), x.sigma(), x.b2()), (140, -80, 138));
}

#[test]
fn twisted_zero_matches_iterated() {
    let m = e1();
    let t = twisted_sum(1, 2, &m, &GluingClass::zero(1)).unwrap();
    let i = iterated_fibre_sum(&m, 3).unwrap();
    let (a, b) = (t.manifold(), i.manifold());
    assert_eq!(a.lattice().rank(), b.lattice().rank());
    assert_eq!(a.sigma(), b.sigma());
    assert_eq!(a.lattice().parity(), b.lattice().parity());
    assert_eq!(
        a.lattice().divisibility(a.canonical()).unwrap(),
        b.lattice().divisibility(b.canonical()).unwrap()
    );
}

#[test]
fn odd_rim_coefficient_forces_odd_square() {
    let m = e1();
    let s = twisted_sum(1, 2, &m, &GluingClass::new(vec![3, 0])).unwrap();
    assert_eq!(s.s_squares(), &[-1, -2]);
    assert!(s.lattice().is_characteristic(s.manifold().canonical()).unwrap());
    let err = generalized_fibre_sum_with(
        &m,
        iterated_fibre_sum(&m, 2).unwrap().manifold(),
        &GluingClass::new(vec![3, 0]),
        SquareChoice::Given(&[-2, -2]),
        &[BigInt::zero(), BigInt::zero()],
    )
    .unwrap_err();
    assert!(matches!(err, Error::SquareParity { index: 1, .. }));
}

#[test]
fn shape_errors() {
    let m = e1();
    let q = quintic_fibration();
    assert!(matches!(
        generalized_fibre_sum(&m, &q, &GluingClass::zero(1), &[-2, -2]),
        Err(Error::GenusMismatch { .. })
    ));
    assert!(matches!(
        generalized_fibre_sum(&m, &m, &GluingClass::zero(2), &[-2, -2]),
        Err(Error::GluingLength { expected: 2, got: 4 })
    ));
}

#[test]
fn role_tags_round_trip() {
    let labels = NormalFormLabels::new(2, 1, 2);
    let tags: Vec<String> = labels.roles().iter().map(alloc::string::ToString::to_string).collect();
    assert_eq!(tags, ["PM1", "PM2", "PN1", "S1", "R1", "S2", "R2", "B", "Sigma"]);
    let back: Vec<Role> = tags.iter().map(|t| Role::parse(t).unwrap()).collect();
    assert_eq!(NormalFormLabels::from_roles(&back), Some(labels));
    assert_eq!(Role::parse("S0"), None);
    assert_eq!(Role::parse("X1"), None);
}
