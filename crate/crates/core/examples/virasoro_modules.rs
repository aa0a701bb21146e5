//! Virasoro linkage at c = −1420/17 and the reconstruction of the E7(a1)
//! character as vacuum plus Verma modules.

use exw::charengine::CharSpec;
use exw::grading::Orbit;
use exw::qseries::{rat, ratio};
use exw::rootdata::Label;
use exw::virmod::{linkage, ses_report};

fn main() -> exw::Result<()> {
    let c = ratio(-1420, 17);
    for h in [0, 6, 12] {
        let l = linkage(&c, &rat(h), 30)?;
        println!(
            "h = {h}: solutions {:?}, linked weights {:?}",
            l.solutions,
            l.linked_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>()
        );
    }
    println!("({})", linkage(&c, &rat(0), 30)?.certificate);

    let spec = CharSpec::boundary(Label::E7, Orbit::Subregular, 17);
    let chi = spec.compute(26)?;
    let r = ses_report(&chi, &spec.grading()?.generator_weights(), 26)?;
    println!("{spec}: summands {:?}, agreement through q^{}", r.summands, r.agreement_through);
    if let Some(b) = r.first_break {
        println!(
            "  first break at weight {}: character {}, module sum {}, defect {}",
            b.weight, b.character, b.module_sum, b.defect
        );
    }
    Ok(())
}
