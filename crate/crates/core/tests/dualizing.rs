use std::collections::BTreeMap;
use std::sync::Arc;

use adjstring::functors::*;
use adjstring::graded::{verify_basis_certificate, GradedRing, RingMap, Window};
use adjstring::groups::{Character, FiniteGroup};
use adjstring::twisted::ShiftCharacter;

#[test]
fn identity_dualizing_is_the_ring() {
    let r = Arc::new(GradedRing::new("Q[d]", vec![("d".into(), -4)]).unwrap());
    let id = RingMap::identity(r.clone());
    let vb = verify_basis_certificate(&id, vec![r.one()], Window::DEFAULT).unwrap();
    let sc = ShiftCharacter {
        shift: 0,
        character: Character::trivial(Arc::new(FiniteGroup::trivial())),
    };
    let d = dualizing_module(&vb, None, &sc, Window::DEFAULT).unwrap();
    let c = d.comparison().unwrap();
    assert_eq!(c.sigma, vec![r.one()]);
    assert_eq!(
        d.underlying.hilbert_function(Window::DEFAULT),
        r_hilbert(&r)
    );
}

fn r_hilbert(r: &GradedRing) -> BTreeMap<i64, usize> {
    Window::DEFAULT.degrees().map(|n| (n, r.dim(n))).collect()
}
