use std::sync::Arc;

use adjstring::graded::*;
use adjstring::graded::{GradedRing, Window};
use adjstring::linalg::q;

#[test]
fn composition_and_matrices() {
    let r = Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap());
    let free = PresentedModule::free(r.clone(), vec![0]);
    let quot = PresentedModule::new(r.clone(), vec![0], vec![vec![r.var(0).pow(3)]]).unwrap();
    // Multiplication by c: Q[c] -> Q[c]/(c^3), degree -2.
    let c = ModuleMorphism::new(free.clone(), quot.clone(), -2, vec![vec![r.var(0)]]).unwrap();
    assert_eq!(c.matrix_at(0)[(0, 0)], q(1));
    assert!(c.matrix_at(-4).is_zero());
    // Not well defined in the other direction: c^3 must go to zero.
    assert!(ModuleMorphism::new(quot.clone(), free.clone(), 0, vec![vec![r.one()]]).is_err());
    let twice = ModuleMorphism::new(free.clone(), free.clone(), -2, vec![vec![r.var(0)]]).unwrap();
    let comp = c.compose(&twice).unwrap();
    assert_eq!(comp.degree(), -4);
    assert_eq!(comp.matrix_at(0)[(0, 0)], q(1));
    for n in Window::new(-6, 0).unwrap().degrees() {
        let id = ModuleMorphism::identity(&quot).matrix_at(n);
        assert!(id.is_identity());
    }
}
