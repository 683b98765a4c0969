use std::sync::Arc;

use adjstring::graded::*;
use adjstring::poly::Poly;

fn qc() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap())
}

fn qd() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[d]", vec![("d".into(), -4)]).unwrap())
}

#[test]
fn window_parsing() {
    assert_eq!("-40:8".parse::<Window>().unwrap(), Window::DEFAULT);
    assert!("3:1".parse::<Window>().is_err());
    assert!("x".parse::<Window>().is_err());
}

#[test]
fn free_and_quotient_dims() {
    let w = Window::new(-12, 0).unwrap();
    let free = PresentedModule::free(qd(), vec![0]);
    let hf = hilbert_function(&free, w);
    for (n, d) in &hf {
        assert_eq!(*d, usize::from(n % 4 == 0), "degree {n}");
    }
    let quot = PresentedModule::new(qd(), vec![0], vec![vec![qd().var(0).pow(2)]]).unwrap();
    let hf = hilbert_function(&quot, w);
    let support: Vec<i64> = hf.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
    assert_eq!(support, vec![-4, 0]);
}

#[test]
fn brute_force_quotient_oracle() {
    // Q[c]/(c^4): a monomial c^k survives iff k < 4.
    let m = PresentedModule::new(qc(), vec![0], vec![vec![qc().var(0).pow(4)]]).unwrap();
    for n in -12..=2 {
        let expected = usize::from(n <= 0 && n % 2 == 0 && -n / 2 < 4);
        assert_eq!(m.dim(n), expected, "degree {n}");
    }
}

#[test]
fn csv_is_ascending() {
    let m = PresentedModule::free(qc(), vec![0]);
    let csv = hilbert_csv(&hilbert_function(&m, Window::new(-2, 0).unwrap()));
    assert_eq!(csv, "degree,dim\n-2,1\n-1,0\n0,1\n");
}

#[test]
fn torsion_detection() {
    let w = Window::new(-40, 0).unwrap();
    let tors = PresentedModule::new(qc(), vec![0], vec![vec![qc().var(0).pow(4)]]).unwrap();
    assert_eq!(
        is_torsion_on_window(&tors, w),
        TorsionStatus::TorsionCertifiedOnWindow
    );
    assert_eq!(
        is_torsion_on_window(&PresentedModule::free(qc(), vec![0]), w),
        TorsionStatus::NotTorsion
    );
    assert_eq!(
        is_torsion_on_window(&PresentedModule::zero(qc()), w),
        TorsionStatus::TorsionCertifiedOnWindow
    );
    // Generator below the window: nothing can be certified.
    let low = PresentedModule::new(qc(), vec![-50], vec![vec![qc().var(0)]]).unwrap();
    assert_eq!(is_torsion_on_window(&low, w), TorsionStatus::Inconclusive);
}

#[test]
fn evaluation_records_actions() {
    let m = PresentedModule::new(qc(), vec![0], vec![vec![Poly::var(0, 1).pow(3)]]).unwrap();
    let wm = evaluate(&m, Window::new(-6, 0).unwrap());
    assert_eq!(wm.total_dim(), 3);
    assert_eq!(wm.gen_maps[0][&-2].rows(), 1);
    assert!(wm.gen_maps[0][&-4].is_zero() || wm.dim(-6) == 0);
    wm.validate(None).unwrap();
}
