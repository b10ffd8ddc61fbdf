//! A user-defined generator, first with an analytic jet and then from
//! values alone; composing with a Möbius map leaves the torsion unchanged.

use nullcurve::generator::{CustomGenerator, Interval};
use nullcurve::{
    make_generator, mobius_jet, schwarzian_of_jet, torsion_schwarzian, validate_generator, GeneratorKind, Jet3,
    MobiusMap,
};

fn main() -> nullcurve::Result<()> {
    // f(s) = s + s³/3 on s > 0: f′ = 1 + s², S(f) = 2(1 − 2s²)/(1 + s²)²
    let analytic = make_generator(GeneratorKind::Custom(CustomGenerator::analytic(
        "cubic",
        Interval::positive(),
        |s| Jet3::new(s + s.powi(3) / 3.0, 1.0 + s * s, 2.0 * s, 2.0),
    )))?;
    let sampled = make_generator(GeneratorKind::Custom(CustomGenerator::from_values(
        "cubic-values",
        Interval::positive(),
        |s| s + s.powi(3) / 3.0,
    )))?;
    let report = validate_generator(&sampled, 256);
    println!("validation: passed={} notes={:?}", report.passed, report.notes);

    let t = MobiusMap::new(2.0, -1.0, 1.0, 3.0)?;
    println!("{:>5} {:>18} {:>18} {:>18}", "s", "S(f)", "S(f), values", "S(T o f)");
    for s in [0.25, 0.5, 1.0, 2.0] {
        let exact = torsion_schwarzian(&analytic, s)?;
        let fd = torsion_schwarzian(&sampled, s)?;
        let pushed = schwarzian_of_jet(&mobius_jet(&t, &analytic.eval(s)?)?)?;
        println!("{s:>5} {exact:>18.12} {fd:>18.12} {pushed:>18.12}");
    }
    Ok(())
}
