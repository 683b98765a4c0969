use std::sync::Arc;

use adjstring::graded::*;
use adjstring::graded::{hilbert_function, GradedRing};
use adjstring::Error;

fn so3_map() -> RingMap {
    let qd = Arc::new(GradedRing::new("Q[d]", vec![("d".into(), -4)]).unwrap());
    let qc = Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap());
    RingMap::new(qd, qc.clone(), vec![qc.var(0).pow(2)]).unwrap()
}

#[test]
fn basis_one_c_verifies_with_c_squared_d() {
    let theta = so3_map();
    let s = theta.target().clone();
    let vb = verify_basis_certificate(&theta, vec![s.one(), s.var(0)], Window::DEFAULT).unwrap();
    let c = vb.structure_constants().unwrap();
    // c . c = d . 1
    assert_eq!(c[1][1][0], theta.source().var(0));
    assert!(c[1][1][1].is_zero());
    vb.check_associativity().unwrap();
}

#[test]
fn basis_one_fails_at_minus_two() {
    let theta = so3_map();
    let err =
        verify_basis_certificate(&theta, vec![theta.target().one()], Window::DEFAULT).unwrap_err();
    match err {
        Error::BasisCertificate { degree, .. } => assert_eq!(degree, -2),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn identity_basis() {
    let r = so3_map().source().clone();
    let id = RingMap::identity(r.clone());
    verify_basis_certificate(&id, vec![r.one()], Window::DEFAULT).unwrap();
}

#[test]
fn small_window_rejected() {
    let theta = so3_map();
    let s = theta.target().clone();
    let w = Window::new(-3, 0).unwrap();
    assert!(matches!(
        verify_basis_certificate(&theta, vec![s.one(), s.var(0)], w),
        Err(Error::WindowTooSmall(_))
    ));
}

#[test]
fn extension_of_truncated_d() {
    let theta = so3_map();
    let r = theta.source().clone();
    let m = PresentedModule::new(r.clone(), vec![0], vec![vec![r.var(0).pow(2)]]).unwrap();
    let e = extend_scalars(&theta, &m).unwrap();
    assert_eq!(e.relations()[0][0], theta.target().var(0).pow(4));
    let id = RingMap::identity(r.clone());
    assert_eq!(extend_scalars(&id, &m).unwrap(), m);
}

#[test]
fn restriction_preserves_hilbert_function() {
    let theta = so3_map();
    let s = theta.target().clone();
    let vb = verify_basis_certificate(&theta, vec![s.one(), s.var(0)], Window::DEFAULT).unwrap();
    let w = Window::new(-20, 4).unwrap();
    for rels in [
        vec![],
        vec![vec![s.var(0).pow(2)]],
        vec![vec![s.var(0).pow(5)]],
    ] {
        let n = PresentedModule::new(s.clone(), vec![0], rels).unwrap();
        let r = restrict_scalars(&vb, &n).unwrap();
        assert_eq!(hilbert_function(&r, w), hilbert_function(&n, w));
    }
    let free = restrict_scalars(&vb, &PresentedModule::free(s.clone(), vec![0])).unwrap();
    assert_eq!(free.gen_degrees(), &[0, -2]);
    assert!(free.relations().is_empty());
}
