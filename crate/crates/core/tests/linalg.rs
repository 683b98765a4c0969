use adjstring::linalg::*;

fn m(rows: &[&[i64]]) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect(),
        cols,
    )
}

#[test]
fn rank_and_kernel() {
    let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    assert_eq!(a.rank(), 2);
    let k = a.kernel();
    assert_eq!(k.cols(), 1);
    assert!(a.mul(&k).is_zero());
}

#[test]
fn inverse_and_determinant() {
    let a = m(&[&[2, 1], &[7, 4]]);
    assert_eq!(a.determinant(), q(1));
    let inv = a.inverse().unwrap();
    assert!(a.mul(&inv).is_identity());
    assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
}

#[test]
fn solve_consistent_and_inconsistent() {
    let a = m(&[&[1, 1], &[1, -1]]);
    assert_eq!(a.solve(&[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
    let b = m(&[&[1, 1], &[2, 2]]);
    assert!(b.solve(&[q(1), q(3)]).is_none());
}

#[test]
fn quotient_normal_forms() {
    // Q^3 / span{(1, -1, 0)}
    let red = QuotientReducer::new(3, &[vec![q(1), q(-1), q(0)]]);
    assert_eq!(red.dim(), 2);
    assert_eq!(
        red.coords(&[q(1), q(0), q(0)]),
        red.coords(&[q(0), q(1), q(0)])
    );
    assert!(red.is_zero_class(&[q(2), q(-2), q(0)]));
    let v = red.lift(&[q(5), q(7)]);
    assert_eq!(red.coords(&v), vec![q(5), q(7)]);
}
