use exw::golden::{self, GoldenSpec};
use exw::qseries::Comparison;
use exw::virmod::module_sum_character;

fn through(order: i64) -> Comparison {
    Comparison::Equal { through: (order - 1).into() }
}

#[test]
fn every_reference_table_is_reproduced() {
    for t in golden::all().unwrap() {
        let order = t.series.order();
        let got = match &t.spec {
            GoldenSpec::Character(spec) => spec.compute(order).unwrap(),
            GoldenSpec::ModuleSum(ws) => module_sum_character(ws, order).unwrap(),
        };
        assert_eq!(got.compare(&t.series), through(order), "{}", t.name);
    }
}

#[test]
fn tables_cover_q25() {
    for name in golden::table_names() {
        let t = golden::embedded(name).unwrap();
        let min = if name.starts_with("universal") {
            14
        } else if name.starts_with("module") {
            18
        } else {
            26
        };
        assert_eq!(t.series.order(), min, "{name}");
    }
}

#[test]
fn single_coefficient_edits_are_caught() {
    let t = golden::embedded("principal_g2_9_7").unwrap();
    let GoldenSpec::Character(spec) = &t.spec else { panic!() };
    let text = golden::embedded("principal_g2_9_7").unwrap().series.to_string().replace("896*q^25", "897*q^25");
    let edited = exw::QSeries::parse(&text).unwrap();
    match spec.compute(26).unwrap().compare(&edited) {
        Comparison::Mismatch { exponent, .. } => assert_eq!(exponent, 25.into()),
        c => panic!("edit not detected: {c}"),
    }
}
