//! Slant helices have torsion a/(2s²) and a constant axis V with
//! g(W, V) = 1. Walks the four slant families and prints the axis drift.

use nullcurve::{frame_at, mink_inner, slant_axis, torsion_schwarzian, CatalogEntry, EntryKind};

fn main() -> nullcurve::Result<()> {
    let kinds = [
        EntryKind::SlantA,
        EntryKind::SlantB { a: 2.0 },
        EntryKind::SlantC { a: 0.5 },
        EntryKind::SlantD,
    ];
    for kind in kinds {
        let entry = CatalogEntry::new(kind)?;
        let a = kind.slant_a().expect("slant entry");
        let grid = entry.default_grid();
        let v0 = slant_axis(&entry.gen, entry.epsilon, a, grid[0])?;
        let (mut drift, mut law, mut gram) = (0.0f64, 0.0f64, 0.0f64);
        for &s in &grid {
            let v = slant_axis(&entry.gen, entry.epsilon, a, s)?;
            let w = frame_at(&entry.gen, entry.epsilon, s)?.w;
            drift = drift.max((v - v0).euclid_norm());
            gram = gram.max((mink_inner(&w, &v) - 1.0).abs());
            law = law.max((2.0 * s * s * torsion_schwarzian(&entry.gen, s)? - a).abs());
        }
        println!(
            "{:<18} a = {a:+}  axis = ({:+.6}, {:+.6}, {:+.6})  drift {drift:.1e}  |g(W,V)-1| {gram:.1e}  |2s^2 tau - a| {law:.1e}",
            entry.label, v0.x, v0.y, v0.z
        );
    }
    Ok(())
}
