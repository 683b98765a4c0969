use std::sync::Arc;

use adjstring::graded::*;
use adjstring::linalg::q;

fn qd() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[d]", vec![("d".into(), -4)]).unwrap())
}

fn qc() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap())
}

#[test]
fn rejects_bad_degrees() {
    assert!(GradedRing::new("R", vec![("x".into(), -3)]).is_err());
    assert!(GradedRing::new("R", vec![("x".into(), 2)]).is_err());
    assert!(GradedRing::new("R", vec![("x".into(), -2), ("x".into(), -4)]).is_err());
}

#[test]
fn monomial_counts() {
    let r = GradedRing::new("R", vec![("a".into(), -2), ("b".into(), -4)]).unwrap();
    // Brute force: pairs (i, j) with 2i + 4j = 8.
    assert_eq!(r.dim(-8), 3);
    assert_eq!(r.dim(-7), 0);
    assert_eq!(r.dim(0), 1);
    assert_eq!(r.dim(2), 0);
    assert_eq!(GradedRing::rationals().dim(0), 1);
    assert_eq!(GradedRing::rationals().dim(-2), 0);
}

#[test]
fn ring_map_checks_degree() {
    let c = qc().var(0);
    assert!(RingMap::new(qd(), qc(), vec![c.pow(2)]).is_ok());
    assert!(RingMap::new(qd(), qc(), vec![c.clone()]).is_err());
    let theta = RingMap::new(qd(), qc(), vec![c.pow(2)]).unwrap();
    assert_eq!(theta.apply(&qd().var(0).pow(2)), c.pow(4));
    assert_eq!(theta.describe(), vec!["d ↦ c^2".to_string()]);
    assert_eq!(theta.matrix(-8)[(0, 0)], q(1));
}

#[test]
fn formatting() {
    let r = GradedRing::new("R", vec![("a".into(), -2), ("b".into(), -4)]).unwrap();
    let p = &r.var(0).pow(2).scale(&q(-3)) + &r.var(1);
    assert_eq!(r.format(&p), "b - 3*a^2");
}
