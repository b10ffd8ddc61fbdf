//! Airy functions and the curve with torsion −2λs.

use nullcurve::airy::{airy_curve_closed_form, airy_eval, AirySpec};
use nullcurve::{airy_generator, linspace, synthesize, torsion_schwarzian, CurveSpec, Orientation};

fn main() -> nullcurve::Result<()> {
    println!("{:>6} {:>20} {:>20} {:>12}", "x", "Ai", "Bi", "W - 1/pi");
    for x in [-8.0, -2.0, 0.0, 1.0, 4.0] {
        let e = airy_eval(x)?;
        println!(
            "{x:>6} {:>20.15e} {:>20.15e} {:>12.1e}",
            e.ai,
            e.bi,
            e.wronskian() - std::f64::consts::FRAC_1_PI
        );
    }

    let spec = AirySpec::new(1.0)?;
    let gen = airy_generator(&spec)?;
    let curve = synthesize(
        &CurveSpec::new(gen.clone(), Orientation::Positive, 0.0, spec.anchor())?,
        &linspace(0.0, 2.0, 9),
        1e-12,
    )?;
    println!("\n{:>5} {:>14} {:>10}", "s", "tau + 2s", "gap");
    for p in &curve.samples {
        let gap = (p.pos - airy_curve_closed_form(&spec, p.s)?).euclid_norm();
        let tau = torsion_schwarzian(&gen, p.s)?;
        println!("{:>5.2} {:>14.2e} {gap:>10.1e}", p.s, tau + 2.0 * p.s);
    }
    Ok(())
}
