//! Registered nilpotent orbits: generator weights and graded dimensions.

use exw::grading::all_gradings;

fn main() -> exw::Result<()> {
    for g in all_gradings() {
        let rs = g.root_system()?;
        println!(
            "{} {}: {} generators of weight {:?}",
            g.algebra,
            g.orbit.name(g.algebra),
            g.degrees.len(),
            g.generator_weights()
        );
        let dims: Vec<String> = g.dim_g.iter().map(|(j, d)| format!("g_{j}={d}")).collect();
        println!("    {}   (h∨ = {})", dims.join(" "), rs.dual_coxeter);
    }
    Ok(())
}
