use exw::charengine::{near_boundary_character, universal_w_character};
use exw::golden;
use exw::grading::{orbit_grading, Orbit};
use exw::rootdata::Label;
use exw::virmod::{ses_report, GeneratorFate};

const E7_WEIGHTS: [i64; 9] = [2, 4, 6, 6, 8, 9, 10, 12, 14];

#[test]
fn case_two_reconstruction() {
    let chi = golden::embedded("boundary_g2_17").unwrap().series;
    let r = ses_report(&chi, &E7_WEIGHTS, 26).unwrap();
    assert_eq!(r.summands, vec![0, 6]);
    assert_eq!(r.events[0].weight, 4);
    assert_eq!(r.events[0].fate, GeneratorFate::Absorbed);
    assert_eq!(r.agreement_through, 11);
    let b = r.first_break.unwrap();
    assert_eq!((b.weight, b.defect.as_str()), (12, "1"));
}

#[test]
fn case_one_reconstruction() {
    let g = orbit_grading(Label::E7, Orbit::Subregular).unwrap();
    let chi = near_boundary_character(&g, 16, 26).unwrap();
    let r = ses_report(&chi, &g.generator_weights(), 26).unwrap();
    assert_eq!(r.summands, vec![0, 4, 6]);
    let b = r.first_break.unwrap();
    assert_eq!((b.weight, b.defect.as_str()), (8, "1"));
    assert_eq!(r.agreement_through, 7);
}

#[test]
fn universal_g2_breaks_without_defect() {
    let g = orbit_grading(Label::G2, Orbit::Principal).unwrap();
    let chi = universal_w_character(&g, 26).unwrap();
    let r = ses_report(&chi, &E7_WEIGHTS, 26).unwrap();
    assert_eq!(r.summands, vec![0, 6]);
    let b = r.first_break.unwrap();
    assert_eq!((b.weight, b.defect.as_str()), (12, "0"));
}
