use std::sync::Arc;

use adjstring::catalog::{self, CatalogEntry};
use adjstring::graded::{GradedRing, PresentedModule, Window};
use adjstring::groups::{Character, FiniteGroup, GroupHom};
use adjstring::linalg::{q, Q};
use adjstring::poly::{free_add, free_scale};
use adjstring::twisted::*;

const W: Window = Window { lo: -16, hi: 4 };

fn qc() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap())
}

/// `W = C2` acting on `Q[c]` by `c -> -c`.
fn sign_action() -> RingAction {
    let r = qc();
    let g = Arc::new(FiniteGroup::weyl_c2());
    RingAction::new(g, r.clone(), vec![vec![r.var(0)], vec![-&r.var(0)]]).unwrap()
}

fn trace(m: &PresentedModule, a: usize, n: i64) -> Q {
    let mat = m.group_matrix(a, n);
    (0..mat.rows()).map(|i| mat[(i, i)].clone()).sum()
}

/// Same Hilbert function and same group character in every degree.
fn assert_same(m1: &PresentedModule, m2: &PresentedModule) {
    assert_eq!(m1.hilbert_function(W), m2.hilbert_function(W));
    if let Some(g) = m1.group() {
        for a in g.elements() {
            for n in W.degrees() {
                assert_eq!(trace(m1, a, n), trace(m2, a, n), "element {a}, degree {n}");
            }
        }
    }
}

fn entry(name: &str) -> CatalogEntry {
    catalog::load_entry(name).unwrap()
}

fn quotient(entry: &CatalogEntry, target: bool, power: u32) -> PresentedModule {
    let (ring, action) = if target {
        (entry.target_ring(), &entry.change.target_twist.action)
    } else {
        (entry.source_ring(), &entry.change.source_twist.action)
    };
    PresentedModule::new(ring.clone(), vec![0], vec![vec![ring.var(0).pow(power)]])
        .unwrap()
        .with_trivial_twist(action.clone())
        .unwrap()
}

#[test]
fn hom_of_free_rank_one_over_trivial_group() {
    let r = qc();
    let a = RingAction::trivial(Arc::new(FiniteGroup::trivial()), r);
    let m = TwistedRing::new(a).free_rank_one();
    assert_eq!(twisted_hom(&m, &m, 0, W).unwrap().dim(), 1);
    // Hom(R, M)_t = M_t.
    for t in [-6, -4, -2, 0] {
        assert_eq!(twisted_hom(&m, &m, t, W).unwrap().dim(), m.dim(t));
    }
}

#[test]
fn endomorphisms_of_the_regular_twisted_module() {
    // End(R[A]) = R[A]: in degree 0 this is Q[A].
    let m = TwistedRing::new(sign_action()).free_rank_one();
    assert_eq!(twisted_hom(&m, &m, 0, W).unwrap().dim(), 2);
}

#[test]
fn anti_invariant_generator_gives_no_equivariant_maps() {
    let m = PresentedModule::free(qc(), vec![0])
        .with_trivial_twist(sign_action())
        .unwrap();
    // g -> c g is not equivariant since w c = -c; g -> c^2 g is.
    assert_eq!(twisted_hom(&m, &m, -2, W).unwrap().dim(), 0);
    assert_eq!(twisted_hom(&m, &m, -4, W).unwrap().dim(), 1);
    assert_eq!(twisted_hom(&m, &m, 0, W).unwrap().dim(), 1);
    let g = m.group().unwrap().clone();
    let twisted = m
        .twist_by_character(&Character::first_sign(g).unwrap())
        .unwrap();
    assert_eq!(twisted_hom(&m, &twisted, 0, W).unwrap().dim(), 0);
    assert_eq!(twisted_hom(&m, &twisted, -2, W).unwrap().dim(), 1);
}

#[test]
fn disjoint_supports_have_no_maps() {
    let r = qc();
    let m = PresentedModule::new(r.clone(), vec![0], vec![vec![r.var(0)]]).unwrap();
    let far = m.shift(-10);
    assert_eq!(twisted_hom(&m, &far, 0, W).unwrap().dim(), 0);
}

#[test]
fn induction_along_identity() {
    let a = sign_action();
    let h = GroupHom::identity(a.group().clone());
    let n = PresentedModule::new(qc(), vec![0], vec![vec![qc().var(0).pow(3)]])
        .unwrap()
        .with_trivial_twist(a.clone())
        .unwrap();
    assert_same(&induce_twisted(&h, &a, &n).unwrap(), &n);
    assert_same(&coinduce_twisted(&h, &a, &n).unwrap(), &n);
}

#[test]
fn induction_from_the_trivial_group_is_semilinear() {
    let a = sign_action();
    let one = Arc::new(FiniteGroup::trivial());
    let h = GroupHom::new(one.clone(), a.group().clone(), vec![0]).unwrap();
    let n = PresentedModule::free(qc(), vec![0])
        .with_trivial_twist(a.pullback(&h))
        .unwrap();
    let ind = induce_twisted(&h, &a, &n).unwrap();
    assert_eq!(ind.ngens(), 2);
    for k in W.degrees() {
        assert_eq!(ind.dim(k), 2 * n.dim(k), "degree {k}");
    }
    // w swaps the two summands.
    let w = 1;
    assert_eq!(trace(&ind, w, 0), q(0));
    let gw = ind.act(w, &ind.generator(0));
    assert_eq!(
        ind.coords(&gw, 0).unwrap(),
        ind.coords(&ind.generator(1), 0).unwrap()
    );
    // w (c x) = (w c)(w x) = -c (w x).
    let c = qc().var(0);
    let x = free_scale(&ind.generator(0), &c);
    let lhs = ind.act(w, &x);
    let rhs = free_scale(&ind.act(w, &ind.generator(0)), &-&c);
    let diff = free_add(&lhs, &free_scale(&rhs, &-&qc().one()));
    assert!(ind.is_zero_element(&diff, -2).unwrap());
    let coind = coinduce_twisted(&h, &a, &n).unwrap();
    assert_same(&coind, &ind);
    assert!(verify_induction_lemma(&h, &a, &n, W).unwrap().pass);
    assert!(verify_coinduction_lemma(&h, &a, &n, W).unwrap().pass);
}

#[test]
fn coinduction_dimensions_scale_by_index() {
    let e = entry("s3_c2");
    let h = &e.change.group_hom;
    let a = &e.change.source_twist.action;
    let n = TwistedRing::new(e.change.restricted_action()).free_rank_one();
    let coind = coinduce_twisted(h, a, &n).unwrap();
    assert_eq!(coind.dim(0), 3 * n.dim(0));
    assert_eq!(coind.dim(0), 6);
}

#[test]
fn theta_lower_star_identity() {
    let e = entry("g_g");
    for m in [
        quotient(&e, false, 3),
        e.change.source_twist.free_rank_one(),
    ] {
        assert_same(&theta_lower_star(&e.change, &m).unwrap(), &m);
    }
}

#[test]
fn theta_lower_star_on_truncated_d() {
    let e = entry("so3_o2");
    let m = quotient(&e, false, 2);
    let out = theta_lower_star(&e.change, &m).unwrap();
    let c = e.target_ring().var(0);
    assert_eq!(out.relations(), &[vec![c.pow(4)]]);
    // Trivial on the generator, c -> -c on coefficients.
    for (n, t) in [(0, 1), (-2, -1), (-4, 1), (-6, -1), (-8, 0)] {
        assert_eq!(out.dim(n), usize::from(t != 0), "degree {n}");
        assert_eq!(trace(&out, 1, n), q(t), "degree {n}");
    }
}

#[test]
fn theta_lower_star_of_free_module() {
    for name in ["so3_o2", "s3_c2", "s3_quotient_c2"] {
        let e = entry(name);
        let m = e.change.source_twist.free_rank_one();
        let out = theta_lower_star(&e.change, &m).unwrap();
        let order = e.change.source_twist.group.order();
        for n in W.degrees() {
            assert_eq!(
                out.dim(n),
                order * e.target_ring().dim(n),
                "{name} degree {n}"
            );
        }
    }
}

#[test]
fn theta_upper_star_identity() {
    let e = entry("g_g");
    let vb = e.verified.as_ref();
    for n in [quotient(&e, true, 4), e.change.target_twist.free_rank_one()] {
        assert_same(&theta_upper_star(&e.change, Some(vb), &n).unwrap(), &n);
    }
}

#[test]
fn theta_upper_star_takes_invariants() {
    let e = entry("so3_o2");
    let vb = e.verified.as_ref();
    let n = quotient(&e, true, 4);
    let up = theta_upper_star(&e.change, Some(vb), &n).unwrap();
    // Q[c]/(c^4)^W = span{1, c^2}.
    let support: Vec<i64> = W.degrees().filter(|&k| up.dim(k) > 0).collect();
    assert_eq!(support, vec![-4, 0]);
    let free = e.change.target_twist.free_rank_one();
    let up = theta_upper_star(&e.change, Some(vb), &free).unwrap();
    for k in W.degrees() {
        assert_eq!(up.dim(k), e.target_ring().dim(k), "degree {k}");
    }
}

#[test]
fn theta_upper_star_needs_a_certificate() {
    let e = entry("so3_o2");
    let n = quotient(&e, true, 4);
    let err = theta_upper_star(&e.change, None, &n)
        .unwrap_err()
        .to_string();
    assert!(err.contains("basis"), "{err}");
    assert!(theta_dagger(&e.change, None, &n).is_err());
}

#[test]
fn theta_dagger_identity() {
    let e = entry("g_g");
    let vb = e.verified.as_ref();
    assert_eq!(e.change.shift.shift, 0);
    assert!(e.change.shift.character.is_trivial());
    for n in [quotient(&e, true, 4), e.change.target_twist.free_rank_one()] {
        assert_same(&theta_dagger(&e.change, Some(vb), &n).unwrap(), &n);
    }
}

#[test]
fn theta_dagger_on_sign_torsion_is_q_in_degree_two() {
    let e = entry("so3_o2");
    let vb = e.verified.as_ref();
    let s = e.target_ring();
    let g = e.change.target_twist.group.clone();
    let n = PresentedModule::new(s.clone(), vec![0], vec![vec![s.var(0)]])
        .unwrap()
        .with_trivial_twist(e.change.target_twist.action.clone())
        .unwrap()
        .twist_by_character(&Character::first_sign(g).unwrap())
        .unwrap();
    let dag = theta_dagger(&e.change, Some(vb), &n).unwrap();
    for k in W.degrees() {
        assert_eq!(dag.dim(k), usize::from(k == 2), "degree {k}");
    }
    // The untwisted version has no sign-isotypic part.
    let plain = n.twist_by_character(&e.change.shift.character).unwrap();
    let dag = theta_dagger(&e.change, Some(vb), &plain).unwrap();
    assert!(W.degrees().all(|k| dag.dim(k) == 0));
}

#[test]
fn inverse_order_is_exact() {
    assert_eq!(
        inverse_order(&FiniteGroup::symmetric3()),
        Q::new(1.into(), 6.into())
    );
}
