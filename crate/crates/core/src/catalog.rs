//! Reference curves with known closed forms: the three null Cartan helices
//! (constant torsion), four slant-helix families (τ = a/2s²), and the Airy
//! curve (τ = −2λs). Each entry carries its generator, anchor, closed form
//! and torsion law, and [`verify_entry`] checks all of them against each
//! other.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::airy::{airy_curve_closed_form, AirySpec};
use crate::error::{Error, Result};
use crate::fd;
use crate::frenet::{frame_at, torsion_from_acceleration, torsion_schwarzian};
use crate::generator::{make_generator, Generator, GeneratorKind, Interval};
use crate::minkowski::{mink_inner, Vec3};
use crate::synthesis::{linspace, synthesize, CurveSpec, Orientation, SampledCurve};

/// Which family an entry belongs to, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum EntryKind {
    /// f = s, τ = 0
    HelixZero,
    /// f = −cot(cs/2), τ = c²/2
    HelixPos { c: f64 },
    /// f = e^{cs}, τ = −c²/2
    HelixNeg { c: f64 },
    /// f = ln s, τ = 1/2s²
    SlantA,
    /// f = tan(½ ln s^b), b = √(a − 1), a > 1
    SlantB { a: f64 },
    /// f = s^{−b}, b = √(1 − a), 0 ≠ a < 1, a ≠ −3
    SlantC { a: f64 },
    /// f = 1/s², τ = −3/2s²
    SlantD,
    /// f = (π/μ)Bi(μs)/Ai(μs), τ = −2λs
    Airy { lambda: f64 },
}

/// Default parameters used by `verify --all`.
pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_A_TANLOG: f64 = 2.0;
pub const DEFAULT_A_POWER: f64 = 0.5;
pub const DEFAULT_LAMBDA: f64 = 1.0;

/// Names accepted by [`EntryKind::from_name`], in catalog order.
pub const ENTRY_NAMES: [&str; 8] = [
    "helix-zero",
    "helix-pos",
    "helix-neg",
    "slant-a",
    "slant-b",
    "slant-c",
    "slant-d",
    "airy",
];

impl EntryKind {
    pub fn name(&self) -> &'static str {
        match self {
            EntryKind::HelixZero => "helix-zero",
            EntryKind::HelixPos { .. } => "helix-pos",
            EntryKind::HelixNeg { .. } => "helix-neg",
            EntryKind::SlantA => "slant-a",
            EntryKind::SlantB { .. } => "slant-b",
            EntryKind::SlantC { .. } => "slant-c",
            EntryKind::SlantD => "slant-d",
            EntryKind::Airy { .. } => "airy",
        }
    }

    /// The entry of the given name with its default parameter.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "helix-zero" => EntryKind::HelixZero,
            "helix-pos" => EntryKind::HelixPos { c: DEFAULT_C },
            "helix-neg" => EntryKind::HelixNeg { c: DEFAULT_C },
            "slant-a" => EntryKind::SlantA,
            "slant-b" => EntryKind::SlantB { a: DEFAULT_A_TANLOG },
            "slant-c" => EntryKind::SlantC { a: DEFAULT_A_POWER },
            "slant-d" => EntryKind::SlantD,
            "airy" => EntryKind::Airy { lambda: DEFAULT_LAMBDA },
            other => {
                return Err(Error::Parse(format!(
                    "unknown catalog entry {other:?} (expected one of {})",
                    ENTRY_NAMES.join(", ")
                )))
            }
        })
    }

    /// Replaces the family parameter, if the family has one.
    pub fn with_param(self, value: f64) -> Self {
        match self {
            EntryKind::HelixPos { .. } => EntryKind::HelixPos { c: value },
            EntryKind::HelixNeg { .. } => EntryKind::HelixNeg { c: value },
            EntryKind::SlantB { .. } => EntryKind::SlantB { a: value },
            EntryKind::SlantC { .. } => EntryKind::SlantC { a: value },
            EntryKind::Airy { .. } => EntryKind::Airy { lambda: value },
            k => k,
        }
    }

    /// The slant constant a for τ = a/2s², if this is a slant entry.
    pub fn slant_a(&self) -> Option<f64> {
        match *self {
            EntryKind::SlantA => Some(1.0),
            EntryKind::SlantB { a } | EntryKind::SlantC { a } => Some(a),
            EntryKind::SlantD => Some(-3.0),
            _ => None,
        }
    }
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EntryKind::HelixPos { c } | EntryKind::HelixNeg { c } => write!(f, "{}(c={c})", self.name()),
            EntryKind::SlantB { a } | EntryKind::SlantC { a } => write!(f, "{}(a={a})", self.name()),
            EntryKind::Airy { lambda } => write!(f, "{}(lambda={lambda})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for EntryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EntryKind::from_name(s)
    }
}

/// Case parameters fixed at construction.
#[derive(Debug, Clone, Copy)]
enum Form {
    HelixZero,
    HelixPos { c: f64 },
    HelixNeg { c: f64 },
    SlantA,
    SlantB { b: f64 },
    SlantC { b: f64 },
    SlantD,
    Airy(AirySpec),
}

/// A catalog curve.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub kind: EntryKind,
    pub label: String,
    pub gen: Generator,
    pub epsilon: Orientation,
    pub s0: f64,
    pub alpha0: Vec3,
    form: Form,
}

fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("helix", format!("c must be > 0, got {c}")))
    }
}

impl CatalogEntry {
    pub fn new(kind: EntryKind) -> Result<Self> {
        let (form, gen_kind, s0, alpha0) = match kind {
            EntryKind::HelixZero => (Form::HelixZero, GeneratorKind::Identity, 0.0, Vec3::ZERO),
            EntryKind::HelixPos { c } => {
                check_c(c)?;
                (
                    Form::HelixPos { c },
                    GeneratorKind::Cot { c },
                    0.0,
                    Vec3::new(1.0 / (c * c), 0.0, 0.0),
                )
            }
            EntryKind::HelixNeg { c } => {
                check_c(c)?;
                (
                    Form::HelixNeg { c },
                    GeneratorKind::Exp { c },
                    0.0,
                    Vec3::new(0.0, 1.0 / (c * c), 0.0),
                )
            }
            EntryKind::SlantA => (
                Form::SlantA,
                GeneratorKind::Log,
                1.0,
                Vec3::new(-2.0, -1.0, 3.0) * 0.125,
            ),
            EntryKind::SlantB { a } => {
                if !(a.is_finite() && a > 1.0) {
                    return Err(Error::invalid("slant-b", format!("a must be > 1, got {a}")));
                }
                let b = (a - 1.0).sqrt();
                let d = b * b + 4.0;
                let alpha0 = Vec3::new(-b / d, -2.0 / d, 0.5) * (1.0 / b);
                (Form::SlantB { b }, GeneratorKind::TanLog { b }, 1.0, alpha0)
            }
            EntryKind::SlantC { a } => {
                if !(a.is_finite() && a < 1.0 && a != 0.0 && a != -3.0) {
                    return Err(Error::invalid(
                        "slant-c",
                        format!("a must satisfy 0 != a < 1, a != -3, got {a}"),
                    ));
                }
                let b = (1.0 - a).sqrt();
                let d = b * b - 4.0;
                let alpha0 = Vec3::new(-1.0, 2.0 * b / d, 4.0 / d) * (0.5 / b);
                (Form::SlantC { b }, GeneratorKind::Power { b }, 1.0, alpha0)
            }
            EntryKind::SlantD => (
                Form::SlantD,
                GeneratorKind::InverseSquare,
                1.0,
                Vec3::new(-4.0, 1.0, -1.0) * 0.0625,
            ),
            EntryKind::Airy { lambda } => {
                let spec = AirySpec::new(lambda)?;
                (
                    Form::Airy(spec),
                    GeneratorKind::AiryRatio { lambda },
                    0.0,
                    spec.anchor(),
                )
            }
        };
        Ok(CatalogEntry {
            kind,
            label: kind.to_string(),
            gen: make_generator(gen_kind)?,
            epsilon: Orientation::Positive,
            s0,
            alpha0,
            form,
        })
    }

    pub fn curve_spec(&self) -> CurveSpec {
        CurveSpec::new(self.gen.clone(), self.epsilon, self.s0, self.alpha0).expect("catalog anchors are admissible")
    }

    /// The closed-form position α(s).
    pub fn closed_form(&self, s: f64) -> Result<Vec3> {
        if !self.gen.support().contains_closed(s) {
            return Err(Error::domain(format!("closed form of {}", self.label), s));
        }
        Ok(match self.form {
            Form::HelixZero => Vec3::new(3.0 * s * s, s * s * s - 3.0 * s, s * s * s + 3.0 * s) * (1.0 / 6.0),
            Form::HelixPos { c } => {
                let (sn, cs) = (c * s).sin_cos();
                Vec3::new(cs, sn, c * s) * (1.0 / (c * c))
            }
            Form::HelixNeg { c } => Vec3::new(c * s, (c * s).cosh(), (c * s).sinh()) * (1.0 / (c * c)),
            Form::SlantA => {
                let l = s.ln();
                let q = 2.0 * l * l - 2.0 * l;
                Vec3::new(2.0 * (2.0 * l - 1.0), q - 1.0, q + 3.0) * (s * s / 8.0)
            }
            Form::SlantB { b } => {
                let (sn, cs) = (b * s.ln()).sin_cos();
                let d = b * b + 4.0;
                Vec3::new((2.0 * sn - b * cs) / d, -(2.0 * cs + b * sn) / d, 0.5) * (s * s / b)
            }
            Form::SlantC { b } => {
                let (m, p) = (s.powf(-b) / (b - 2.0), s.powf(b) / (b + 2.0));
                Vec3::new(-1.0, m + p, m - p) * (s * s / (2.0 * b))
            }
            Form::SlantD => {
                let (s4, l4) = (s.powi(4), 4.0 * s.ln());
                Vec3::new(-4.0 * s * s, s4 - l4, -s4 - l4) * 0.0625
            }
            Form::Airy(spec) => airy_curve_closed_form(&spec, s)?,
        })
    }

    /// The torsion the family is meant to have.
    pub fn expected_torsion(&self, s: f64) -> f64 {
        match self.form {
            Form::HelixZero => 0.0,
            Form::HelixPos { c } => 0.5 * c * c,
            Form::HelixNeg { c } => -0.5 * c * c,
            Form::Airy(spec) => -2.0 * spec.lambda() * s,
            _ => self.kind.slant_a().expect("slant entry") / (2.0 * s * s),
        }
    }

    /// The grid `verify` uses when none is given.
    pub fn default_grid(&self) -> Vec<f64> {
        match self.form {
            Form::HelixZero => linspace(-2.0, 2.0, 101),
            Form::HelixPos { c } => linspace(1.1 * std::f64::consts::PI / c, 1.9 * std::f64::consts::PI / c, 101),
            Form::HelixNeg { c } => linspace(-2.0 / c, 2.0 / c, 101),
            Form::SlantB { b } => {
                // keep clear of the poles of tan(½ ln s^b)
                let edge = (std::f64::consts::PI / b).exp();
                linspace(0.1f64.max(1.5 / edge), 3f64.min(edge / 1.5), 51)
            }
            Form::SlantA | Form::SlantC { .. } | Form::SlantD => linspace(0.1, 3.0, 51),
            Form::Airy(spec) => airy_grid(&spec, 0.05, 2.0, 51),
        }
    }

    /// Where the position-based torsion check samples: a window of the
    /// default grid on which the 7-point stencil at step 1e-2 is accurate.
    pub fn torsion_window(&self) -> (f64, f64) {
        match self.form {
            // s² ln s terms have large seventh derivatives near 0
            Form::SlantA | Form::SlantB { .. } | Form::SlantC { .. } | Form::SlantD => (0.5, 3.0),
            _ => {
                let g = self.default_grid();
                (g[0], g[g.len() - 1])
            }
        }
    }
}

/// Grid over x = μs ∈ [x_lo, x_hi] expressed in s.
fn airy_grid(spec: &AirySpec, x_lo: f64, x_hi: f64, n: usize) -> Vec<f64> {
    let mut g: Vec<f64> = linspace(x_lo, x_hi, n).into_iter().map(|x| x / spec.mu()).collect();
    if spec.mu() < 0.0 {
        g.reverse();
    }
    g
}

/// Every catalog entry with the given family parameters.
pub fn catalog_entries(c: f64, a_tanlog: f64, a_power: f64, lambda: f64) -> Result<Vec<CatalogEntry>> {
    [
        EntryKind::HelixZero,
        EntryKind::HelixPos { c },
        EntryKind::HelixNeg { c },
        EntryKind::SlantA,
        EntryKind::SlantB { a: a_tanlog },
        EntryKind::SlantC { a: a_power },
        EntryKind::SlantD,
        EntryKind::Airy { lambda },
    ]
    .into_iter()
    .map(CatalogEntry::new)
    .collect()
}

/// The catalog with default parameters.
pub fn default_catalog() -> Vec<CatalogEntry> {
    catalog_entries(DEFAULT_C, DEFAULT_A_TANLOG, DEFAULT_A_POWER, DEFAULT_LAMBDA).expect("defaults are valid")
}

/// V = −(a/2s)L + sN + W, constant along a curve with τ = a/2s².
pub fn slant_axis(gen: &Generator, epsilon: Orientation, a: f64, s: f64) -> Result<Vec3> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("slant axis of {}", gen.label()), s));
    }
    let f = frame_at(gen, epsilon, s)?;
    Ok(f.l * (-a / (2.0 * s)) + f.n * s + f.w)
}

/// Thresholds applied by [`VerificationReport::passed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub nullity: f64,
    pub pseudo_arc: f64,
    pub torsion_law: f64,
    pub synthesis_vs_closed: f64,
    pub axis: f64,
}

pub const THRESHOLDS: Thresholds = Thresholds {
    nullity: 1e-6,
    pseudo_arc: 1e-5,
    torsion_law: 1e-9,
    synthesis_vs_closed: 1e-7,
    axis: 1e-8,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleDiagnostics {
    pub s: f64,
    pub nullity: f64,
    pub pseudo_arc: f64,
    pub torsion_schwarzian: f64,
    pub torsion_expected: f64,
    pub synthesis_error: f64,
    pub gram_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub entry: String,
    pub grid_points: usize,
    pub tol: f64,
    /// max |g(α′, α′)| with α′ from differences of the closed form.
    pub nullity_max: f64,
    /// max |g(α″, α″) − 1|.
    pub pseudo_arc_max: f64,
    /// max |S(f) − τ_expected| / (1 + |τ_expected|).
    pub torsion_law_max: f64,
    /// max Euclidean distance between synthesized and closed-form positions.
    pub synthesis_vs_closed_max: f64,
    /// max ‖V(s) − V(s_mid)‖ for slant entries.
    pub axis_residual: Option<f64>,
    /// max |g(W, V) − 1| for slant entries.
    pub axis_gram_max: Option<f64>,
    pub thresholds: Thresholds,
    pub samples: Vec<SampleDiagnostics>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        let t = &self.thresholds;
        self.nullity_max <= t.nullity
            && self.pseudo_arc_max <= t.pseudo_arc
            && self.torsion_law_max <= t.torsion_law
            && self.synthesis_vs_closed_max <= t.synthesis_vs_closed
            && self.axis_residual.is_none_or(|r| r <= t.axis)
            && self.axis_gram_max.is_none_or(|r| r <= t.axis)
    }

    /// Names of the checks that exceed their thresholds.
    pub fn failures(&self) -> Vec<&'static str> {
        let t = &self.thresholds;
        let mut out = Vec::new();
        if !(self.nullity_max <= t.nullity) {
            out.push("nullity");
        }
        if !(self.pseudo_arc_max <= t.pseudo_arc) {
            out.push("pseudo-arc");
        }
        if !(self.torsion_law_max <= t.torsion_law) {
            out.push("torsion-law");
        }
        if !(self.synthesis_vs_closed_max <= t.synthesis_vs_closed) {
            out.push("synthesis");
        }
        if !self.axis_residual.is_none_or(|r| r <= t.axis) {
            out.push("axis");
        }
        if !self.axis_gram_max.is_none_or(|r| r <= t.axis) {
            out.push("axis-gram");
        }
        out
    }
}

/// Step for differencing the closed forms: O(h⁶) stencils at
/// h = 1e−2·clamp(|s|, 0.1, 1), shrunk so the 7-point stencil stays a
/// quarter of the distance to the edge of the support away from it.
fn fd_step(s: f64) -> f64 {
    1e-2 * s.abs().clamp(0.1, 1.0)
}

fn fd_step_in(support: Interval, s: f64) -> f64 {
    let gap = (s - support.lo).min(support.hi - s);
    fd_step(s).min(gap / 4.0)
}

/// Runs every check for `entry` on `grid`.
pub fn verify_entry(entry: &CatalogEntry, grid: &[f64], tol: f64) -> Result<VerificationReport> {
    if grid.len() < 9 {
        return Err(Error::invalid(
            "verify",
            format!("grid needs at least 9 points, got {}", grid.len()),
        ));
    }
    let curve = synthesize(&entry.curve_spec(), grid, tol)?;
    let closed = |t: f64| entry.closed_form(t);
    let slant = entry.kind.slant_a();
    let v_mid = match slant {
        Some(a) => Some(slant_axis(&entry.gen, entry.epsilon, a, grid[grid.len() / 2])?),
        None => None,
    };
    let mut samples = Vec::with_capacity(grid.len());
    let (mut axis_res, mut axis_gram) = (0.0f64, 0.0f64);
    for sample in &curve.samples {
        let s = sample.s;
        let h = fd_step_in(entry.gen.support(), s);
        let v = fd::d1_o6(closed, s, h)?;
        let acc = fd::d2_o6(closed, s, h)?;
        let tau = torsion_schwarzian(&entry.gen, s)?;
        let frame = frame_at(&entry.gen, entry.epsilon, s)?;
        if let (Some(a), Some(vm)) = (slant, v_mid) {
            let axis = slant_axis(&entry.gen, entry.epsilon, a, s)?;
            axis_res = axis_res.max((axis - vm).euclid_norm());
            axis_gram = axis_gram.max((mink_inner(&frame.w, &axis) - 1.0).abs());
        }
        samples.push(SampleDiagnostics {
            s,
            nullity: mink_inner(&v, &v).abs(),
            pseudo_arc: (mink_inner(&acc, &acc) - 1.0).abs(),
            torsion_schwarzian: tau,
            torsion_expected: entry.expected_torsion(s),
            synthesis_error: (sample.pos - closed(s)?).euclid_norm(),
            gram_residual: frame.gram_residual(),
        });
    }
    let max = |f: fn(&SampleDiagnostics) -> f64| samples.iter().map(f).fold(0.0f64, f64::max);
    Ok(VerificationReport {
        entry: entry.label.clone(),
        grid_points: grid.len(),
        tol,
        nullity_max: max(|d| d.nullity),
        pseudo_arc_max: max(|d| d.pseudo_arc),
        torsion_law_max: max(|d| (d.torsion_schwarzian - d.torsion_expected).abs() / (1.0 + d.torsion_expected.abs())),
        synthesis_vs_closed_max: max(|d| d.synthesis_error),
        axis_residual: slant.map(|_| axis_res),
        axis_gram_max: slant.map(|_| axis_gram),
        thresholds: THRESHOLDS,
        samples,
    })
}

/// Step of the position stencils in [`check_torsion_identity`].
pub const TORSION_FD_STEP: f64 = 1e-2;
/// Number of stencil centres in [`check_torsion_identity`].
pub const TORSION_POINTS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionIdentityReport {
    pub entry: String,
    pub points: usize,
    pub step: f64,
    /// max |S(f) − ½g(α‴, α‴)| with α‴ from synthesized positions.
    pub max_abs_error: f64,
    pub worst_s: f64,
    pub threshold: f64,
}

impl TorsionIdentityReport {
    pub fn passed(&self) -> bool {
        self.max_abs_error <= self.threshold
    }
}

/// Allowed |S(f) − ½g(α‴, α‴)|: the cubic helix-zero curve has an exact
/// third difference, so only roundoff remains.
pub fn torsion_identity_threshold(kind: &EntryKind) -> f64 {
    match kind {
        EntryKind::HelixZero => 1e-5,
        _ => 1e-3,
    }
}

/// Compares τ = S(f) with τ = ½ g(α‴, α‴) evaluated from positions
/// synthesized around [`TORSION_POINTS`] centres of the torsion window.
pub fn check_torsion_identity(entry: &CatalogEntry, step: f64, tol: f64) -> Result<TorsionIdentityReport> {
    let (lo, hi) = entry.torsion_window();
    let (lo, hi) = (lo + 3.0 * step, hi - 3.0 * step);
    let spec = entry.curve_spec();
    let mut worst = (0.0f64, lo);
    for centre in linspace(lo, hi, TORSION_POINTS) {
        let grid: Vec<f64> = (-3..=3).map(|k| centre + f64::from(k) * step).collect();
        let curve: SampledCurve = synthesize(&spec, &grid, tol)?;
        let tau_fd = torsion_from_acceleration(&curve, 3)?;
        let err = (torsion_schwarzian(&entry.gen, centre)? - tau_fd).abs();
        if !(err <= worst.0) {
            worst = (err, centre);
        }
    }
    Ok(TorsionIdentityReport {
        entry: entry.label.clone(),
        points: TORSION_POINTS,
        step,
        max_abs_error: worst.0,
        worst_s: worst.1,
        threshold: torsion_identity_threshold(&entry.kind),
    })
}
