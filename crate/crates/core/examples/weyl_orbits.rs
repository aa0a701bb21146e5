//! Weyl groups by closure under simple reflections, and the signed orbit
//! of the Weyl vector.

use exw::rootdata::{build_root_system, weyl_group, weyl_orbit_signed, Label};

fn main() -> exw::Result<()> {
    for label in [Label::G2, Label::B3, Label::F4] {
        let rs = build_root_system(label)?;
        println!("|W({label})| = {}", weyl_group(&rs)?.len());
    }
    let g2 = build_root_system(Label::G2)?;
    for (v, sign) in weyl_orbit_signed(&g2, &g2.weyl_vector)? {
        let s = if sign > 0 { '+' } else { '-' };
        println!("  {s}({}, {})", v[0], v[1]);
    }
    Ok(())
}
