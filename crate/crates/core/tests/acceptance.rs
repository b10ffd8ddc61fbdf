//! Acceptance gate: runs each acceptance criterion, prints one PASS/FAIL
//! line per criterion, and exits non-zero if any criterion fails.
//!
//! Runs without the libtest harness so the report lines always show.

use std::f64::consts::PI;
use std::time::Instant;

use nullcurve::airy::{airy_eval, airy_ode_residual, AirySpec};
use nullcurve::catalog::{
    catalog_entries, check_torsion_identity, default_catalog, slant_axis, verify_entry, CatalogEntry, EntryKind,
    TORSION_FD_STEP,
};
use nullcurve::{
    frame_at, frenet_residuals, linspace, mink_inner, mobius_jet, schwarzian_of_jet, synthesize, torsion_schwarzian,
    Jet3, MobiusMap, Orientation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Tolerances, one per clause of the criteria.
const TORSION_IDENTITY_TOL: f64 = 1e-3;
const TORSION_IDENTITY_POLY_TOL: f64 = 1e-5;
const TORSION_POINTS: usize = 50;
const SYNTH_TOL_FOR_FD: f64 = 1e-13;
const EXACT_JET_TOL: f64 = 1e-9;
const AXIS_TOL: f64 = 1e-8;
const WRONSKIAN_TOL: f64 = 1e-12;
const ODE_RESIDUAL_TOL: f64 = 1e-6;
const ODE_RESIDUAL_STEP: f64 = 1e-3;
const AIRY_CURVE_TOL: f64 = 1e-7;
const ANCHOR_TOL: f64 = 1e-12;
const GRAM_TOL: f64 = 1e-10;
const FRENET_TOL: f64 = 1e-6;
const FRENET_STEP: f64 = 1e-4;
const DET_TOL: f64 = 1e-9;
const SYNTHESIS_TOL: f64 = 1e-7;
const QUAD_TOL: f64 = 1e-10;
const MOBIUS_PAIRS: usize = 1000;
const MOBIUS_POLE_GAP: f64 = 1e-3;
const MOBIUS_TOL: f64 = 1e-9;
const MOBIUS_STRESS_PAIRS: usize = 20_000;
const NULLITY_TOL: f64 = 1e-6;
const PSEUDO_ARC_TOL: f64 = 1e-5;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn sci(v: f64) -> String {
    format!("{v:.2e}")
}

/// 1. τ = S(f) against τ = ½ g(α‴, α‴) from synthesized positions.
fn torsion_identity() -> Outcome {
    let mut worst = Vec::new();
    let mut ok = true;
    for e in default_catalog() {
        let r = check_torsion_identity(&e, TORSION_FD_STEP, SYNTH_TOL_FOR_FD).expect("torsion identity check");
        let tol = if e.kind == EntryKind::HelixZero {
            TORSION_IDENTITY_POLY_TOL
        } else {
            TORSION_IDENTITY_TOL
        };
        ok &= r.points == TORSION_POINTS && r.step == 1e-2 && r.max_abs_error <= tol;
        worst.push(format!("{} {}", e.kind.name(), sci(r.max_abs_error)));
    }
    outcome(
        ok,
        format!("h=1e-2, {TORSION_POINTS} points each; {}", worst.join(", ")),
    )
}

/// 2. Constant torsion of the three helix generators, c ∈ {0.5, 1, 2}.
fn helix_torsions() -> Outcome {
    let mut worst = 0.0f64;
    for c in [0.5, 1.0, 2.0] {
        for kind in [
            EntryKind::HelixZero,
            EntryKind::HelixPos { c },
            EntryKind::HelixNeg { c },
        ] {
            let e = CatalogEntry::new(kind).unwrap();
            let want = match kind {
                EntryKind::HelixZero => 0.0,
                EntryKind::HelixPos { .. } => c * c / 2.0,
                _ => -c * c / 2.0,
            };
            for s in e.default_grid() {
                worst = worst.max((torsion_schwarzian(&e.gen, s).unwrap() - want).abs());
            }
        }
    }
    outcome(
        worst <= EXACT_JET_TOL,
        format!("max |tau - tau_helix| = {}", sci(worst)),
    )
}

/// 3. τ·2s² = a for the slant families; axis V constant with g(W, V) = 1.
fn slant_law() -> Outcome {
    let entries = [
        (EntryKind::SlantA, 1.0),
        (EntryKind::SlantB { a: 2.0 }, 2.0),
        (EntryKind::SlantC { a: 0.5 }, 0.5),
        (EntryKind::SlantD, -3.0),
    ];
    let (mut law, mut axis, mut gram) = (0.0f64, 0.0f64, 0.0f64);
    let mut points_ok = true;
    for (kind, a) in entries {
        let e = CatalogEntry::new(kind).unwrap();
        let grid = e.default_grid();
        points_ok &= grid.len() == 51;
        let v_mid = slant_axis(&e.gen, e.epsilon, a, grid[25]).unwrap();
        for &s in &grid {
            let tau = torsion_schwarzian(&e.gen, s).unwrap();
            law = law.max((tau * 2.0 * s * s - a).abs());
            let v = slant_axis(&e.gen, e.epsilon, a, s).unwrap();
            axis = axis.max((v - v_mid).euclid_norm());
            let w = frame_at(&e.gen, e.epsilon, s).unwrap().w;
            gram = gram.max((mink_inner(&w, &v) - 1.0).abs());
        }
    }
    outcome(
        points_ok && law <= EXACT_JET_TOL && axis <= AXIS_TOL && gram <= AXIS_TOL,
        format!(
            "a in {{1, 2, 0.5, -3}}: |2s^2 tau - a| {}, |V - V_mid| {}, |g(W,V) - 1| {}",
            sci(law),
            sci(axis),
            sci(gram)
        ),
    )
}

/// 4. Airy functions and the τ = −2λs curve.
fn airy_family() -> Outcome {
    let mut wronskian = 0.0f64;
    let mut ode = 0.0f64;
    for x in linspace(-8.0, 8.0, 1601) {
        let e = airy_eval(x).unwrap();
        wronskian = wronskian.max((e.wronskian() - 1.0 / PI).abs());
        ode = ode.max(airy_ode_residual(x, ODE_RESIDUAL_STEP).unwrap());
    }
    let mut law = 0.0f64;
    for lambda in [1.0, -1.0, 8.0, -8.0] {
        let e = CatalogEntry::new(EntryKind::Airy { lambda }).unwrap();
        for s in e.default_grid() {
            let tau = torsion_schwarzian(&e.gen, s).unwrap();
            law = law.max((tau + 2.0 * lambda * s).abs() / (1.0 + (2.0 * lambda * s).abs()));
        }
    }
    let e = CatalogEntry::new(EntryKind::Airy { lambda: 1.0 }).unwrap();
    let anchor = AirySpec::new(1.0).unwrap().anchor();
    let anchor_err = (e.closed_form(0.0).unwrap() - anchor).max_abs();
    // the synthesized curve starts from the Γ(1/3) anchor at s = 0
    let grid = linspace(0.05, 2.0, 51);
    let curve = synthesize(&e.curve_spec(), &grid, QUAD_TOL).unwrap();
    let curve_err = curve
        .samples
        .iter()
        .map(|p| (p.pos - e.closed_form(p.s).unwrap()).euclid_norm())
        .fold(0.0f64, f64::max);
    outcome(
        wronskian <= WRONSKIAN_TOL
            && ode <= ODE_RESIDUAL_TOL
            && law <= EXACT_JET_TOL
            && curve_err <= AIRY_CURVE_TOL
            && anchor_err <= ANCHOR_TOL,
        format!(
            "Wronskian {} on [-8,8], ODE residual {}, tau law {} (lambda = +-1, +-8), curve {} on [0.05,2], anchor {}",
            sci(wronskian),
            sci(ode),
            sci(law),
            sci(curve_err),
            sci(anchor_err)
        ),
    )
}

/// 5. Gram conditions, Frenet equations and det[L, N, W] = ε.
fn structural() -> Outcome {
    let (mut gram, mut frenet, mut det) = (0.0f64, 0.0f64, 0.0f64);
    for e in default_catalog() {
        for eps in [Orientation::Positive, Orientation::Negative] {
            let grid = e.default_grid();
            for &s in &grid {
                gram = gram.max(frame_at(&e.gen, eps, s).unwrap().gram_residual());
            }
            for &s in grid.iter().step_by(5) {
                let d = frenet_residuals(&e.gen, eps, s, FRENET_STEP).unwrap();
                frenet = frenet.max(d.frenet_residual);
                det = det.max((d.det_value - eps.sign()).abs());
            }
        }
    }
    outcome(
        gram <= GRAM_TOL && frenet <= FRENET_TOL && det <= DET_TOL,
        format!(
            "Gram {}, Frenet {} at h=1e-4, |det - eps| {} (eps = +-1)",
            sci(gram),
            sci(frenet),
            sci(det)
        ),
    )
}

/// 6. Quadrature against closed forms for every catalog entry.
fn synthesis_oracle(reports: &[nullcurve::VerificationReport]) -> Outcome {
    let worst = reports.iter().map(|r| r.synthesis_vs_closed_max).fold(0.0f64, f64::max);
    outcome(
        reports.len() == 8 && worst <= SYNTHESIS_TOL,
        format!(
            "{} entries, max |alpha_quad - alpha_closed| = {}",
            reports.len(),
            sci(worst)
        ),
    )
}

fn random_pair(rng: &mut ChaCha8Rng) -> Option<(MobiusMap, Jet3)> {
    let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
    let t = MobiusMap::new(a, b, c, d).ok()?;
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let j = Jet3::new(
        rng.gen_range(-5.0..5.0),
        sign * rng.gen_range(0.1..5.0),
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
    );
    ((c * j.f0 + d).abs() > MOBIUS_POLE_GAP).then_some((t, j))
}

/// 7. S(T∘f) = S(f) on random maps and jets.
///
/// The seeded run uses the fixed relative bound. The stress run adds the
/// rounding floor of the pushed jet: its f″/f′ term enters S squared, so
/// near the pole the comparison cannot beat u·(f₂′/f₁′)².
fn mobius_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut n, mut worst) = (0, 0.0f64);
    let (mut stress_worst, mut stress_raw) = (0.0f64, 0.0f64);
    while n < MOBIUS_PAIRS + MOBIUS_STRESS_PAIRS {
        let Some((t, j)) = random_pair(&mut rng) else { continue };
        let s = schwarzian_of_jet(&j).unwrap();
        let pushed = mobius_jet(&t, &j).unwrap();
        let st = schwarzian_of_jet(&pushed).unwrap();
        let rel = (st - s).abs() / (1.0 + s.abs());
        if n < MOBIUS_PAIRS {
            worst = worst.max(rel);
        } else {
            let k = pushed.f2 / pushed.f1;
            let bound = MOBIUS_TOL * (1.0 + s.abs()) + 16.0 * f64::EPSILON * k * k;
            stress_worst = stress_worst.max((st - s).abs() / bound);
            stress_raw = stress_raw.max(rel);
        }
        n += 1;
    }
    outcome(
        worst <= MOBIUS_TOL && stress_worst <= 1.0,
        format!(
            "{MOBIUS_PAIRS} pairs (seed 0), max |dS|/(1+|S|) = {}; {MOBIUS_STRESS_PAIRS} more with rounding floor: \
             worst error/bound {}, raw {}",
            sci(worst),
            sci(stress_worst),
            sci(stress_raw)
        ),
    )
}

/// 8. Nullity and unit acceleration of every closed form.
fn nullity_pseudo_arc(reports: &[nullcurve::VerificationReport]) -> Outcome {
    let null = reports.iter().map(|r| r.nullity_max).fold(0.0f64, f64::max);
    let pa = reports.iter().map(|r| r.pseudo_arc_max).fold(0.0f64, f64::max);
    outcome(
        reports.len() == 8 && null <= NULLITY_TOL && pa <= PSEUDO_ARC_TOL,
        format!("|g(a',a')| {}, |g(a'',a'') - 1| {}", sci(null), sci(pa)),
    )
}

fn main() {
    // `cargo test -- --list` and filters pass arguments; this target has a
    // single check and ignores them, except for listing.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let start = Instant::now();
    let catalog = catalog_entries(1.0, 2.0, 0.5, 1.0).unwrap();
    let reports: Vec<_> = catalog
        .iter()
        .map(|e| verify_entry(e, &e.default_grid(), QUAD_TOL).expect("verify entry"))
        .collect();
    let results = [
        ("torsion identity", torsion_identity()),
        ("helix torsions", helix_torsions()),
        ("slant-helix law and axis", slant_law()),
        ("Airy family", airy_family()),
        ("structural invariants", structural()),
        ("synthesis oracle", synthesis_oracle(&reports)),
        ("Mobius invariance", mobius_invariance()),
        ("nullity and pseudo-arc", nullity_pseudo_arc(&reports)),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name}: {}", i + 1, r.detail);
        failed += usize::from(!r.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.2?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
