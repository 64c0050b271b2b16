use super::*;
use crate::cohom::{h2_units, trivialize, Budget, Trivialization};

fn c(v: i64) -> Cyclotomic {
    Cyclotomic::int(v)
}

fn sigma_z() -> CMatrix {
    CMatrix::from_ints(&[&[1, 0], &[0, -1]])
}

fn sigma_x() -> CMatrix {
    CMatrix::from_ints(&[&[0, 1], &[1, 0]])
}

fn isy() -> CMatrix {
    CMatrix::from_ints(&[&[0, 1], &[-1, 0]])
}

fn z2_id() -> MagneticGroup {
    MagneticGroup::cyclic_mod2(2).unwrap()
}

/// Klein group with phi = projection to the second factor; elements (a, b) at 2a + b.
fn klein_pi2() -> MagneticGroup {
    MagneticGroup::product_proj2(&FiniteGroup::cyclic(2).unwrap(), 2).unwrap()
}

/// Projective rep from explicit matrices for every element.
fn rep(base: MagneticGroup, mats: Vec<CMatrix>) -> MagneticRep {
    MagneticRep::new(base, mats, None).unwrap()
}

#[test]
fn strict_examples() {
    let t = MagneticRep::trivial(klein_pi2(), 3);
    assert!(t.verify_twisted_hom());
    assert!(t.extract_cocycle().unwrap().is_trivial());
    let q = example_quaternionic();
    assert!(q.verify_twisted_hom());
    assert_eq!(q.matrices[2], CMatrix::scalar(2, c(-1)));
    let broken = rep(
        MagneticGroup::cyclic_mod2(4).unwrap(),
        vec![CMatrix::identity(2), isy(), CMatrix::identity(2), isy().scale(&c(-1))],
    );
    assert_eq!(broken.twisted_hom_violation(), Some((1, 1)));
}

#[test]
fn discrepancy_cocycles() {
    // sigma_z on (1,0) = index 2, sigma_x on (0,1) = index 1, product on index 3
    let k = klein_pi2();
    let r = rep(k.clone(), vec![CMatrix::identity(2), sigma_x(), sigma_z(), sigma_z().mul(&sigma_x())]);
    let t = r.extract_cocycle().unwrap();
    let ratio = (t.value(2, 1) as i64 - t.value(1, 2) as i64).rem_euclid(t.m as i64);
    assert_eq!(BigRational::new(ratio.into(), (t.m as i64).into()), BigRational::new(1.into(), 2.into()));
    assert!(t.violation(&k).is_none());
    let q = rep(z2_id(), vec![CMatrix::identity(2), isy()]);
    let tq = q.extract_cocycle().unwrap();
    assert_eq!((tq.value(1, 1), tq.m), (1, 2));
    let ext = cocycle_to_extension(&tq, &z2_id()).unwrap();
    assert_eq!(ext.group.order, 4);
    assert_eq!(ext.group.abelian_invariants(), vec![4]);
    let tk = cocycle_to_extension(&t, &k).unwrap();
    assert_eq!(tk.group.order, 8);
    assert!(!tk.group.is_abelian());
    let trivial = cocycle_to_extension(&ScalarCocycle::trivial(2), &z2_id()).unwrap();
    assert_eq!(trivial.group.order, 2);
}

#[test]
fn non_projective_and_unsupported() {
    let m = MagneticGroup::plain(FiniteGroup::cyclic(2).unwrap());
    let d = CMatrix::from_ints(&[&[1, 0], &[0, 2]]);
    let r = rep(m.clone(), vec![CMatrix::identity(2), d]);
    assert_eq!(r.extract_cocycle(), Err(MagError::NotProjective(1, 1)));
    let s = rep(m, vec![CMatrix::identity(1), CMatrix::from_ints(&[&[2]])]);
    assert!(matches!(s.extract_cocycle(), Err(MagError::UnsupportedScalar(_))));
}

#[test]
fn tensor_multiplies_cocycles() {
    let k = klein_pi2();
    let r = rep(k.clone(), vec![CMatrix::identity(2), sigma_x(), sigma_z(), sigma_z().mul(&sigma_x())]);
    let i = Cyclotomic::i();
    let s = rep(
        k.clone(),
        vec![
            CMatrix::identity(1),
            CMatrix::scalar(1, i.clone()),
            CMatrix::scalar(1, i.clone()),
            CMatrix::scalar(1, c(1)),
        ],
    );
    let rs = r.tensor(&s).unwrap();
    assert_eq!(rs.dim, 2);
    let want = r.extract_cocycle().unwrap().mul(&s.extract_cocycle().unwrap());
    assert_eq!(rs.extract_cocycle().unwrap().reduced(), want);
    let triv = MagneticRep::trivial(k, 1);
    assert_eq!(r.tensor(&triv).unwrap().matrices, r.matrices);
}

#[test]
fn equivalence_search() {
    let q = example_quaternionic();
    let selfm = equival_reps(&q, &q, 2).unwrap().expect("self-equivalent");
    for g in 0..4 {
        assert_eq!(selfm.mul(&q.matrices[g]), q.matrices[g].mul(&selfm.conj_if(g % 2 == 1)));
    }
    let p = CMatrix::from_rows(vec![vec![c(1), Cyclotomic::i()], vec![c(0), c(2)]]).unwrap();
    let q2 = q.conjugate_by(&p).unwrap();
    let m = equival_reps(&q, &q2, 3).unwrap().expect("equivalent");
    for g in 0..4 {
        assert_eq!(m.mul(&q.matrices[g]), q2.matrices[g].mul(&m.conj_if(q.base.phi(g) == 1)));
    }
    let triv = MagneticRep::trivial(z2_id(), 1);
    let sign = rep(z2_id(), vec![CMatrix::identity(1), CMatrix::scalar(1, c(-1))]);
    assert!(sign.verify_twisted_hom());
    // for antilinear g, sign and trivial are equivalent through M = i
    assert!(equival_reps(&triv, &sign, 2).unwrap().is_some());
    let plain = MagneticGroup::plain(FiniteGroup::cyclic(2).unwrap());
    let t = MagneticRep::trivial(plain.clone(), 1);
    let s = rep(plain, vec![CMatrix::identity(1), CMatrix::scalar(1, c(-1))]);
    assert_eq!(equival_reps(&t, &s, 3).unwrap(), None);
}

#[test]
fn wigner_and_dyson_types() {
    let r = MagneticRep::trivial(z2_id(), 1);
    let cm = commutant(&r).unwrap();
    assert_eq!((cm.real_dimension, cm.identified_type), (1, Some(CommutantType::Real)));
    let q = commutant(&example_quaternionic()).unwrap();
    assert_eq!((q.real_dimension, q.identified_type), (4, Some(CommutantType::Quaternionic)));
    let plain = MagneticRep::trivial(MagneticGroup::plain(FiniteGroup::cyclic(3).unwrap()), 1);
    let cc = commutant(&plain).unwrap();
    assert_eq!((cc.real_dimension, cc.identified_type), (2, Some(CommutantType::Complex)));
    let ch = commutant(&example_chiral()).unwrap();
    assert_eq!(ch.real_dimension, 4);
    assert_eq!(ch.identified_type, Some(CommutantType::Graded(TenfoldClass::C1)));
    for x in &q.basis {
        for g in 0..4 {
            let rq = example_quaternionic();
            assert_eq!(rq.matrices[g].mul(&x.conj_if(g % 2 == 1)), x.mul(&rq.matrices[g]));
        }
    }
}

#[test]
fn commutant_dimension_is_conjugation_invariant() {
    let q = example_quaternionic();
    let p = CMatrix::from_rows(vec![vec![c(2), c(1)], vec![Cyclotomic::i(), c(1)]]).unwrap();
    assert_eq!(commutant(&q.conjugate_by(&p).unwrap()).unwrap().real_dimension, 4);
}

#[test]
fn lifting_matches_trivialization() {
    let budget = Budget::default();
    // sigma example on (Z/4, mod2) with Lambda_{t^2} forced to +I: projective, liftable
    let base = MagneticGroup::cyclic_mod2(4).unwrap();
    let r = rep(
        base.clone(),
        vec![CMatrix::identity(2), isy(), CMatrix::identity(2), isy().scale(&c(-1))],
    );
    let tau = r.extract_cocycle().unwrap();
    assert!(!tau.is_trivial());
    let h2 = h2_units(&base, &budget).unwrap();
    match trivialize(&base, &h2, &tau.to_cochain(&base), &budget).unwrap() {
        Trivialization::Coboundary(alpha) => {
            let lifted = r.rescale(&alpha).unwrap();
            assert!(lifted.verify_twisted_hom());
            assert!(equival_reps(&lifted, &example_quaternionic(), 3).unwrap().is_some());
        }
        Trivialization::Nontrivial(c) => panic!("unexpected class {c:?}"),
    }
    // quaternionic example on (Z/2, id): no strict lift
    let q = rep(z2_id(), vec![CMatrix::identity(2), isy()]);
    let tq = q.extract_cocycle().unwrap();
    let h2 = h2_units(&z2_id(), &budget).unwrap();
    assert!(matches!(
        trivialize(&z2_id(), &h2, &tq.to_cochain(&z2_id()), &budget).unwrap(),
        Trivialization::Nontrivial(_)
    ));
    assert_eq!(ScalarCocycle::from_cochain(&z2_id(), &tq.to_cochain(&z2_id())).unwrap(), tq);
}

#[test]
fn json_round_trip() {
    let q = example_quaternionic();
    let back = MagneticRep::from_json(&q.base, &q.to_json()).unwrap();
    assert_eq!(back, q);
    let ch = example_chiral();
    assert_eq!(MagneticRep::from_json(&ch.base, &ch.to_json()).unwrap(), ch);
    let v = serde_json::json!({"dim": 2, "matrices": {"1": [["0", "1"], ["-1", "0"]]}});
    assert!(MagneticRep::from_json(&z2_id(), &v).unwrap().matrices[1] == isy());
    let bad = serde_json::json!({"dim": 2, "matrices": {}});
    assert!(MagneticRep::from_json(&z2_id(), &bad).is_err());
}

#[test]
fn grading_is_checked() {
    let base = MagneticGroup::plain(FiniteGroup::cyclic(2).unwrap());
    let bad = MagneticRep::new(
        base,
        vec![CMatrix::identity(2), sigma_z()],
        Some(Grading { psi: vec![0, 1], d0: 1 }),
    );
    assert!(bad.is_err());
}
