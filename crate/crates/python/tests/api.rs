use pcfheight::enumeration::EnumerationConfig;
use pcfheight::Error;
use pcfheight_py::api::{self, Target};

fn budget() -> pcfheight::heights::HeightBudget {
    api::budget(None, 64)
}

#[test]
fn heights_come_back_as_enclosures() {
    let h = api::canonical_height("z^2", "2", &budget()).unwrap();
    let v = api::interval_json(&h);
    let (lo, hi) = (v["lo"].as_f64().unwrap(), v["hi"].as_f64().unwrap());
    assert!(lo <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= hi);
    assert!(v["exact"].as_str().unwrap().starts_with('['));
}

#[test]
fn undecided_heights_keep_their_partial_enclosure() {
    let e = api::canonical_height("z^2 - 1", "1/3", &budget()).unwrap_err();
    assert!(matches!(e, Error::Undecided { partial: Some(_), .. }), "{e}");
    let report = api::height_report("z^2 - 1", "1/3", &budget()).unwrap();
    assert_eq!(report["complete"], false);
    assert_eq!(report["locals"][0]["status"], "bounded");
}

#[test]
fn bad_input_is_a_parse_error() {
    assert!(matches!(api::canonical_height("z^^2", "1", &budget()), Err(Error::Parse { .. })));
    assert!(matches!(api::certify(Target::Cubic("1", "x"), &budget()), Err(Error::Parse { .. })));
    assert!(api::family_scan("cubic", 3, &[], &budget()).is_err());
}

#[test]
fn certification_targets() {
    for (t, label) in [
        (Target::Cubic("-3", "0"), "pcf"),
        (Target::Cubic("1", "1"), "not_pcf"),
        (Target::Quadratic("-2"), "pcf"),
        (Target::Poly("z^3 - (3/4)z + 3/4"), "pcf"),
    ] {
        assert_eq!(api::certify(t, &budget()).unwrap()["label"], label);
    }
    assert_eq!(api::critical_height("z^2 - 2", &budget()).unwrap().lo().signum(), 0);
}

#[test]
fn searches() {
    let q = api::enumerate_quadratics(&EnumerationConfig::default()).unwrap();
    assert_eq!(q["pcf"], serde_json::json!(["-2", "-1", "0"]));
    let c = api::enumerate_cubics(&EnumerationConfig::default()).unwrap();
    assert_eq!(c["pcf"].as_array().unwrap().len(), 7);
    assert_eq!(c["records"].as_array().unwrap().len(), 3895);
}

#[test]
fn family_rows() {
    let rows = api::family_scan("unicritical", 2, &["10".into(), "1000".into()], &budget()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[1]["target"], "1/2");
    assert_eq!(api::canonical_poly("z^2 - 2").unwrap(), "2; 1/1, 0/1, -2/1");
}
