//! The Cartan frame {L, N, W} along a curve: Gram conditions, the Frenet
//! equations and det[L, N, W] = ε, for both orientations.

use nullcurve::{frame_at, frenet_residuals, linspace, make_generator, GeneratorKind, Orientation};

fn main() -> nullcurve::Result<()> {
    let gen = make_generator(GeneratorKind::TanLog { b: 2.0 })?;
    for eps in [Orientation::Positive, Orientation::Negative] {
        println!("epsilon = {eps}");
        println!(
            "{:>5} {:>10} {:>10} {:>10} {:>12}",
            "s", "gram", "frenet", "det", "tau mismatch"
        );
        for s in linspace(0.5, 2.0, 4) {
            let frame = frame_at(&gen, eps, s)?;
            let d = frenet_residuals(&gen, eps, s, 1e-3)?;
            println!(
                "{s:>5} {:>10.1e} {:>10.1e} {:>+10.6} {:>12.1e}",
                frame.gram_residual(),
                d.frenet_residual,
                d.det_value,
                d.torsion_mismatch
            );
        }
    }
    Ok(())
}
