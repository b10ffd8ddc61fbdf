//! Synthesizes a curve and writes it as CSV and JSON; the JSON form reads
//! back bit-identical.

use nullcurve::io::{from_json, to_csv, to_json, write_atomic};
use nullcurve::{linspace, make_generator, synthesize, CurveSpec, GeneratorKind, Orientation, Vec3};

fn main() -> nullcurve::Result<()> {
    let gen = make_generator(GeneratorKind::Exp { c: 0.8 })?;
    let spec = CurveSpec::new(gen, Orientation::Negative, 0.0, Vec3::new(1.0, 0.0, 0.0))?;
    let curve = synthesize(&spec, &linspace(-2.0, 2.0, 21), 1e-12)?;

    let dir = std::env::temp_dir().join("nullcurve-export");
    std::fs::create_dir_all(&dir).map_err(|source| nullcurve::Error::Io {
        path: dir.clone(),
        source,
    })?;
    let csv = dir.join("exp.csv");
    let json = dir.join("exp.json");
    write_atomic(&csv, to_csv(&curve).as_bytes())?;
    let text = to_json(&curve)?;
    write_atomic(&json, text.as_bytes())?;

    let back = from_json(&text)?.into_curve()?;
    let identical = back
        .samples
        .iter()
        .zip(&curve.samples)
        .all(|(a, b)| a.pos.x.to_bits() == b.pos.x.to_bits() && a.err.to_bits() == b.err.to_bits());
    println!("wrote {} and {}", csv.display(), json.display());
    println!("{} samples, JSON round trip bit-identical: {identical}", back.len());
    Ok(())
}
