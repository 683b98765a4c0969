use std::sync::Arc;

use adjstring::graded::GradedRing;
use adjstring::groups::FiniteGroup;
use adjstring::linalg::Q;
use adjstring::schema::*;
use serde_json::Value;

fn qc() -> Arc<GradedRing> {
    Arc::new(GradedRing::new("Q[c]", vec![("c".into(), -2)]).unwrap())
}

#[test]
fn poly_round_trip_with_big_and_string_coefficients() {
    let r = qc();
    let v: Value =
        serde_json::from_str(r#"[[[3, 4], {"c": 2}], [["-100000000000000000000", "1"], {}]]"#)
            .unwrap();
    let p = poly_from_json(&v, &r).unwrap();
    assert_eq!(p.num_terms(), 2);
    let back = poly_from_json(&poly_to_json(&p, &r), &r).unwrap();
    assert_eq!(back, p);
    assert!(poly_from_json(&serde_json::json!([[[1, 0], {}]]), &r).is_err());
    assert!(poly_from_json(&serde_json::json!([[[1, 1], {"x": 1}]]), &r).is_err());
}

#[test]
fn module_round_trip() {
    let r = qc();
    let text = r#"{"ring": "Q[c]", "generators": [0], "relations": [[[[[1,1], {"c": 4}]]]]}"#;
    let m = module_from_json(text, &r, None).unwrap();
    assert_eq!(m.dim(-6), 1);
    assert_eq!(m.dim(-8), 0);
    let again = module_from_json(&module_to_json(&m).to_string(), &r, None).unwrap();
    assert_eq!(again, m);
    assert!(module_from_json(&text.replace("Q[c]", "Q[d]"), &r, None).is_err());
}

#[test]
fn twisted_module_needs_every_element() {
    let r = qc();
    let g = Arc::new(FiniteGroup::weyl_c2());
    let act = action_from_json(
        &serde_json::from_str(r#"{"w": {"c": [[[-1, 1], {"c": 1}]]}}"#).unwrap(),
        &g,
        &r,
    )
    .unwrap();
    let text = r#"{"ring": "Q[c]", "generators": [0], "relations": [], "group_action": {"w": [[[[[-1,1], {}]]]]}}"#;
    let m = module_from_json(text, &r, Some(&act)).unwrap();
    assert_eq!(m.group_matrix(1, 0)[(0, 0)], Q::from_integer((-1).into()));
    let bad = r#"{"ring": "Q[c]", "generators": [0], "group_action": {}}"#;
    assert!(module_from_json(bad, &r, Some(&act)).is_err());
}
