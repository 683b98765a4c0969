use adjstring::catalog::*;

#[test]
fn all_builtins_validate() {
    for name in NAMES {
        let e = load_entry(name).unwrap_or_else(|err| panic!("{name}: {err}"));
        assert_eq!(e.change.shift.shift, e.dims.0 - e.dims.1);
        assert!(!e.describe().is_empty());
    }
}

#[test]
fn unknown_entry_lists_alternatives() {
    let err = load_entry("nope").unwrap_err().to_string();
    assert!(err.contains("so3_o2"), "{err}");
}

#[test]
fn json_round_trip() {
    for name in NAMES {
        let e = load_entry(name).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back = entry_from_json(&text).unwrap();
        assert_eq!(back.to_json(), e.to_json());
        assert_eq!(back.change.ring_map, e.change.ring_map);
        assert_eq!(back.basis, e.basis);
    }
}

#[test]
fn so3_o2_data() {
    let e = load_entry("so3_o2").unwrap();
    assert_eq!(e.source_ring().generators(), vec![("d".to_string(), -4)]);
    assert_eq!(e.target_ring().generators(), vec![("c".to_string(), -2)]);
    assert_eq!(e.change.ring_map.describe(), vec!["d ↦ c^2".to_string()]);
    assert!(e.change.source_twist.group.is_trivial());
    let w = &e.change.target_twist.group;
    assert_eq!(w.order(), 2);
    let c = e.target_ring().var(0);
    let wi = w.element("w").unwrap();
    assert_eq!(e.change.target_twist.action.apply(wi, &c), -&c);
    assert_eq!(e.basis, vec![e.target_ring().one(), c]);
    assert_eq!(e.change.shift.shift, 2);
    assert_eq!(e.change.shift.character.values(), &[1, -1]);
    assert!(e.describe().contains("d ↦ c^2"));
}

#[test]
fn so3_so2_is_the_connected_pair() {
    let e = load_entry("so3_so2").unwrap();
    assert!(e.change.source_twist.group.is_trivial());
    assert!(e.change.target_twist.group.is_trivial());
    assert_eq!(e.change.shift.shift, 2);
    assert!(e.change.shift.character.is_trivial());
    assert_eq!(e.change.ring_map.describe(), vec!["d ↦ c^2".to_string()]);
}

#[test]
fn su2_t_data() {
    let e = load_entry("su2_t").unwrap();
    assert_eq!(e.change.ring_map.describe(), vec!["c2 ↦ x^2".to_string()]);
    assert_eq!(e.change.shift.shift, 2);
    assert_eq!(e.change.shift.character.values(), &[1, -1]);
}

#[test]
fn identity_entry() {
    let e = load_entry("g_g").unwrap();
    assert!(e.change.ring_map.is_identity());
    assert_eq!(e.change.shift.shift, 0);
    assert!(e.change.shift.character.is_trivial());
    assert!(e.change.group_hom.is_injective());
}

#[test]
fn finite_entries_have_rational_rings() {
    for name in ["s3_c2", "s3_quotient_c2"] {
        let e = load_entry(name).unwrap();
        assert_eq!(e.source_ring().nvars(), 0);
        assert_eq!(e.target_ring().nvars(), 0);
        assert_eq!(e.change.shift.shift, 0);
    }
    assert!(load_entry("s3_c2").unwrap().change.group_hom.is_injective());
    assert!(!load_entry("s3_quotient_c2")
        .unwrap()
        .change
        .group_hom
        .is_injective());
}

#[test]
fn user_entry_files_load() {
    let dir = std::env::temp_dir().join(format!("adjstring-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("entry.json");
    std::fs::write(&path, builtin_json("so3_o2").unwrap().to_string()).unwrap();
    let e = load_entry_file(&path).unwrap();
    assert_eq!(e.name, "so3_o2");
    std::fs::write(&path, "{").unwrap();
    assert!(matches!(
        load_entry_file(&path),
        Err(adjstring::Error::Json(_))
    ));
    std::fs::remove_dir_all(&dir).unwrap();
}
