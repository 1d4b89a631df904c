//! Writes the built-in families to `data/` as JSON.

use binomial_ci::fixtures;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    std::fs::create_dir_all(&dir)?;
    for (name, fam) in [
        ("ternary_cyclic", fixtures::ternary_cyclic()),
        ("ternary_chain", fixtures::ternary_chain()),
        ("binary_loop", fixtures::binary_loop()),
        ("quintic_ring_a", fixtures::quintic_ring_a()),
        ("quintic_ring_b", fixtures::quintic_ring_b()),
    ] {
        std::fs::write(format!("{dir}/{name}.json"), fam.to_json() + "\n")?;
    }
    std::fs::write(format!("{dir}/non_ci_form.txt"), "X1*X3^3*X4 + X2*X3*X4^3 + X2^2*X5^3\n")?;
    Ok(())
}
