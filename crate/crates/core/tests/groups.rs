use std::sync::Arc;

use adjstring::groups::*;
use adjstring::linalg::{q, Matrix};

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric3())
}

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2))
}

fn c2_into_s3() -> GroupHom {
    GroupHom::new(c2(), s3(), vec![0, 1]).unwrap()
}

fn sign_s3_to_c2() -> GroupHom {
    GroupHom::new(s3(), c2(), vec![0, 1, 1, 1, 0, 0]).unwrap()
}

#[test]
fn rejects_non_associative_table() {
    // A Latin square with identity 0 that is not associative.
    let mult = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    let err = FiniteGroup::new(mult, 0, None).unwrap_err();
    assert!(err.to_string().contains("associativity"), "{err}");
}

#[test]
fn rejects_non_homomorphism() {
    assert!(GroupHom::new(s3(), c2(), vec![0, 1, 1, 0, 0, 0]).is_err());
}

#[test]
fn s3_sign_character_found() {
    let chi = Character::first_sign(s3()).unwrap();
    assert_eq!(chi.values(), &[1, -1, -1, -1, 1, 1]);
    assert!(Character::first_sign(Arc::new(FiniteGroup::cyclic(3))).is_none());
}

#[test]
fn restriction_of_regular_s3_is_three_regular_c2() {
    let h = c2_into_s3();
    let m = restrict_group_module(&h, &GroupAlgebraModule::regular(s3())).unwrap();
    assert_eq!(m.dim(), 6);
    // Brute-force eigenspaces of the transposition: +1 and -1 each of dim 3.
    let w = m.action(1);
    let plus = w.sub(&Matrix::identity(6)).kernel().cols();
    let minus = w.add(&Matrix::identity(6)).kernel().cols();
    assert_eq!((plus, minus), (3, 3));
    let three_regular = (0..3)
        .fold(None::<GroupAlgebraModule>, |acc, _| {
            let r = GroupAlgebraModule::regular(c2());
            Some(match acc {
                None => r,
                Some(a) => a.direct_sum(&r).unwrap(),
            })
        })
        .unwrap();
    assert!(find_isomorphism(&m, &three_regular).unwrap().is_some());
}

#[test]
fn restriction_along_sign() {
    let h = sign_s3_to_c2();
    let sign = GroupAlgebraModule::from_character(&Character::new(c2(), vec![1, -1]).unwrap());
    let m = restrict_group_module(&h, &sign).unwrap();
    assert_eq!(m.dim(), 1);
    for (x, expected) in [(1, -1), (2, -1), (3, -1), (4, 1), (5, 1)] {
        assert_eq!(m.action(x)[(0, 0)], q(expected));
    }
}

#[test]
fn identity_hom_changes_nothing() {
    let h = GroupHom::identity(s3());
    let n = GroupAlgebraModule::regular(s3());
    assert_eq!(restrict_group_module(&h, &n).unwrap(), n);
    let ind = induce_group_module(&h, &n).unwrap();
    assert!(find_isomorphism(&ind.module, &n).unwrap().is_some());
    let coind = coinduce_group_module(&h, &n).unwrap();
    assert!(find_isomorphism(&coind.module, &n).unwrap().is_some());
}

#[test]
fn induced_trivial_is_coset_permutation_module() {
    let h = c2_into_s3();
    let ind = induce_group_module(&h, &GroupAlgebraModule::trivial(c2(), 1)).unwrap();
    assert_eq!(ind.module.dim(), 3);
    // Brute-force: permutation module on S3/<(12)>.
    let cosets: Vec<Vec<usize>> = {
        let g = s3();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for a in g.elements() {
            let mut c = vec![a, g.mul(a, 1)];
            c.sort();
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    };
    let g = s3();
    let action = g
        .elements()
        .map(|x| {
            let mut m = Matrix::zeros(3, 3);
            for (j, c) in cosets.iter().enumerate() {
                let mut img = vec![g.mul(x, c[0]), g.mul(x, c[1])];
                img.sort();
                let i = cosets.iter().position(|d| *d == img).unwrap();
                m[(i, j)] = q(1);
            }
            m
        })
        .collect();
    let perm = GroupAlgebraModule::new(g, 3, action).unwrap();
    assert!(find_isomorphism(&ind.module, &perm).unwrap().is_some());
    let coind = coinduce_group_module(&h, &GroupAlgebraModule::trivial(c2(), 1)).unwrap();
    assert!(find_isomorphism(&coind.module, &perm).unwrap().is_some());
}

#[test]
fn injective_dimensions_scale_by_index() {
    let h = c2_into_s3();
    let n = GroupAlgebraModule::regular(c2());
    assert_eq!(induce_group_module(&h, &n).unwrap().module.dim(), 6);
    assert_eq!(coinduce_group_module(&h, &n).unwrap().module.dim(), 6);
}

#[test]
fn invariants_and_coinvariants() {
    let triv = GroupAlgebraModule::trivial(s3(), 2);
    assert_eq!(invariants(&triv).cols(), 2);
    assert_eq!(invariants(&GroupAlgebraModule::regular(s3())).cols(), 1);
    let sign = GroupAlgebraModule::from_character(&Character::new(c2(), vec![1, -1]).unwrap());
    assert!(sign.averaging_idempotent().is_zero());
    assert_eq!(invariants(&sign).cols(), 0);
    assert_eq!(coinvariants(&sign).dim(), 0);
}

#[test]
fn averaging_is_idempotent() {
    let m = GroupAlgebraModule::regular(s3());
    let e = m.averaging_idempotent();
    assert_eq!(e.mul(&e), e);
}

#[test]
fn twisting_is_an_involution() {
    let chi = Character::new(c2(), vec![1, -1]).unwrap();
    let sign = GroupAlgebraModule::from_character(&chi);
    assert_eq!(
        twist_by_character(&chi, &sign).unwrap(),
        GroupAlgebraModule::trivial(c2(), 1)
    );
    let reg = GroupAlgebraModule::regular(c2());
    let twice = twist_by_character(&chi, &twist_by_character(&chi, &reg).unwrap()).unwrap();
    assert_eq!(twice, reg);
    assert_eq!(
        twist_by_character(&Character::trivial(c2()), &reg).unwrap(),
        reg
    );
}
