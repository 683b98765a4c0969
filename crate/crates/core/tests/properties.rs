mod common;

use adjstring::catalog::{self, CatalogEntry};
use adjstring::functors::{theta_shriek_lower, Side, StringFunctor};
use adjstring::graded::{extend_scalars, restrict_scalars, PresentedModule, Window};
use adjstring::schema::{module_from_json, module_to_json};
use adjstring::verify::{check_adjoint_pair, TestModule};
use proptest::prelude::*;

const W: Window = Window { lo: -20, hi: 4 };

fn entry(name: &str) -> CatalogEntry {
    catalog::load_entry(name).unwrap()
}

fn source_module(e: &CatalogEntry, raw: &common::RawSpec) -> PresentedModule {
    let r = e.source_ring();
    common::build(&common::spec_from_raw(r.degrees(), raw), r)
}

fn target_module(e: &CatalogEntry, raw: &common::RawSpec) -> PresentedModule {
    let s = e.target_ring();
    common::build(&common::spec_from_raw(s.degrees(), raw), s)
}

fn entry_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(catalog::NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_json_round_trip(name in entry_name(), raw in common::raw_spec()) {
        let e = entry(name);
        let m = source_module(&e, &raw);
        let text = module_to_json(&m).to_string();
        let back = module_from_json(&text, e.source_ring(), None).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn extension_is_a_sum_of_shifts(name in entry_name(), raw in common::raw_spec()) {
        // S = ⊕ R b with b in degree e_b, so (S ⊗ M)_n = ⊕ M_{n - e_b}.
        let e = entry(name);
        let m = source_module(&e, &raw);
        let ext = extend_scalars(&e.change.ring_map, &m).unwrap();
        let res = restrict_scalars(&e.verified, &ext).unwrap();
        for n in W.degrees() {
            let expected: usize = e.verified.degrees().iter().map(|b| m.dim(n - b)).sum();
            prop_assert_eq!(ext.dim(n), expected, "degree {}", n);
            prop_assert_eq!(res.dim(n), expected, "degree {}", n);
        }
    }

    #[test]
    fn coextension_is_a_sum_of_shifts(raw in common::raw_spec()) {
        // Hom_R(S, M)_t = ⊕ M_{t + e_b}.
        let e = entry("so3_so2");
        let m = source_module(&e, &raw);
        let out = theta_shriek_lower(e.verified.clone(), &m, Window::DEFAULT).unwrap();
        for t in W.degrees() {
            let expected: usize = e.verified.degrees().iter().map(|b| m.dim(t + b)).sum();
            prop_assert_eq!(out.dim(t), expected, "degree {}", t);
        }
    }

    #[test]
    fn restriction_preserves_hilbert_functions(name in entry_name(), raw in common::raw_spec()) {
        let e = entry(name);
        let n = target_module(&e, &raw);
        let res = restrict_scalars(&e.verified, &n).unwrap();
        prop_assert_eq!(res.hilbert_function(W), n.hilbert_function(W));
    }

    #[test]
    fn shifts_and_twists_are_involutions(k in -6i64..=6, power in 1u32..5) {
        let e = entry("su2_t");
        let s = e.target_ring();
        let chi = &e.change.shift.character;
        let n = PresentedModule::new(s.clone(), vec![0], vec![vec![s.var(0).pow(power)]])
            .unwrap()
            .with_trivial_twist(e.change.target_twist.action.clone())
            .unwrap();
        prop_assert_eq!(&n.shift(k).shift(-k), &n);
        let twice = n.twist_by_character(chi).unwrap().twist_by_character(chi).unwrap();
        prop_assert_eq!(&twice, &n);
        // θ^! θ^†: Σ^{-shift} χ Σ^{shift} χ N = N.
        let shift = e.change.shift.shift;
        let round = n
            .shift(shift)
            .twist_by_character(chi)
            .unwrap()
            .shift(-shift)
            .twist_by_character(chi)
            .unwrap();
        prop_assert_eq!(round, n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn triangle_identities_on_random_modules(raw in common::raw_spec(), power in 1u32..5) {
        let e = entry("so3_o2");
        let s = e.adjoint_string().unwrap();
        let left = TestModule {
            label: "random".into(),
            side: Side::Source,
            module: source_module(&e, &raw)
                .with_trivial_twist(e.change.source_twist.action.clone())
                .unwrap(),
        };
        let t = e.target_ring();
        let right = TestModule {
            label: "cyclic".into(),
            side: Side::Target,
            module: PresentedModule::new(t.clone(), vec![0], vec![vec![t.var(0).pow(power)]])
                .unwrap()
                .with_trivial_twist(e.change.target_twist.action.clone())
                .unwrap(),
        };
        let window = Window::new(-24, 8).unwrap();
        let lower = s.pair(StringFunctor::ThetaLowerStar).unwrap();
        let report = check_adjoint_pair(lower, &[left.clone()], &[right.clone()], window);
        prop_assert!(report.pass, "{:?}", report.diagnostic());
        let dagger = s.pair(StringFunctor::ThetaDagger).unwrap();
        let report = check_adjoint_pair(dagger, &[right], &[left], window);
        prop_assert!(report.pass, "{:?}", report.diagnostic());
    }
}
