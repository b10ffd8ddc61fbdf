//! Globally adaptive 15-point Gauss–Kronrod quadrature for vector-valued
//! integrands.
//!
//! All components use one set of subintervals, and the interval with the
//! largest component error is split next. An interval counts as done
//! when its error estimate drops under the roundoff floor of its own
//! integral, so tight tolerances on small integrals never spin forever.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae on [-1, 1] (non-negative half, descending). Even
/// indices 1, 3, 5 are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Maximum number of subintervals alive at once.
pub const MAX_INTERVALS: usize = 2000;
/// Maximum bisection depth of any subinterval.
pub const MAX_DEPTH: u32 = 40;

/// Result of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<const N: usize> {
    pub value: [f64; N],
    /// Component-wise sum of interval error estimates.
    pub error: [f64; N],
    pub evaluations: usize,
}

impl<const N: usize> Quadrature<N> {
    pub fn max_error(&self) -> f64 {
        self.error.iter().fold(0.0, |m, &e| m.max(e))
    }
}

#[derive(Debug, Clone)]
struct Piece<const N: usize> {
    a: f64,
    b: f64,
    depth: u32,
    value: [f64; N],
    error: [f64; N],
    /// Largest component error, or zero once below the roundoff floor.
    priority: f64,
}

impl<const N: usize> PartialEq for Piece<N> {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl<const N: usize> Eq for Piece<N> {}
impl<const N: usize> PartialOrd for Piece<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Piece<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

/// One GK15 panel: (Kronrod value, |Kronrod − Gauss|, Kronrod ∫|f|).
fn gk15<const N: usize>(
    f: &mut impl FnMut(f64) -> Result<[f64; N]>,
    a: f64,
    b: f64,
) -> Result<([f64; N], [f64; N], [f64; N])> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    let mut abs = [0.0; N];
    let centre = f(c)?;
    for i in 0..N {
        k[i] = WGK[7] * centre[i];
        g[i] = WG[3] * centre[i];
        abs[i] = WGK[7] * centre[i].abs();
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let lo = f(c - dx)?;
        let hi = f(c + dx)?;
        for i in 0..N {
            k[i] += WGK[j] * (lo[i] + hi[i]);
            abs[i] += WGK[j] * (lo[i].abs() + hi[i].abs());
            if j % 2 == 1 {
                g[i] += WG[j / 2] * (lo[i] + hi[i]);
            }
        }
    }
    let mut err = [0.0; N];
    for i in 0..N {
        k[i] *= h;
        abs[i] *= h.abs();
        err[i] = (k[i] - g[i] * h).abs();
    }
    Ok((k, err, abs))
}

fn make_piece<const N: usize>(
    f: &mut impl FnMut(f64) -> Result<[f64; N]>,
    a: f64,
    b: f64,
    depth: u32,
) -> Result<Piece<N>> {
    let (value, error, abs) = gk15(f, a, b)?;
    let mut priority: f64 = 0.0;
    for i in 0..N {
        // differences this small are rounding noise in the panel sum
        if error[i] > 50.0 * f64::EPSILON * abs[i] {
            priority = priority.max(error[i]);
        }
        if !value[i].is_finite() {
            priority = f64::INFINITY;
        }
    }
    Ok(Piece {
        a,
        b,
        depth,
        value,
        error,
        priority,
    })
}

/// Integrates `f` over [a, b] (either orientation) until the total error
/// estimate of every component is at most `target(value)`.
///
/// The target is re-evaluated against the running value, which lets callers
/// make it relative. Errors with `QuadratureFailure` when the interval budget
/// or depth cap is exhausted, and propagates errors from `f`.
pub fn integrate<const N: usize>(
    mut f: impl FnMut(f64) -> Result<[f64; N]>,
    a: f64,
    b: f64,
    target: impl Fn(&[f64; N]) -> f64,
) -> Result<Quadrature<N>> {
    if a == b {
        return Ok(Quadrature {
            value: [0.0; N],
            error: [0.0; N],
            evaluations: 0,
        });
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid(
            "integrate",
            format!("limits must be finite, got [{a}, {b}]"),
        ));
    }
    let mut heap = BinaryHeap::new();
    heap.push(make_piece(&mut f, a, b, 0)?);
    let mut evaluations = 15;
    loop {
        let (value, error) = totals(&heap);
        let goal = target(&value);
        let worst = heap.peek().expect("heap is never empty");
        let done = error.iter().all(|&e| e <= goal) || worst.priority == 0.0;
        if done && value.iter().all(|v| v.is_finite()) {
            return Ok(Quadrature {
                value,
                error,
                evaluations,
            });
        }
        let max_err = error.iter().fold(0.0f64, |m, &e| m.max(e));
        if heap.len() >= MAX_INTERVALS || worst.depth >= MAX_DEPTH {
            return Err(Error::QuadratureFailure {
                a,
                b,
                target: goal,
                estimate: max_err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(make_piece(&mut f, worst.a, mid, worst.depth + 1)?);
        heap.push(make_piece(&mut f, mid, worst.b, worst.depth + 1)?);
        evaluations += 30;
    }
}

fn totals<const N: usize>(heap: &BinaryHeap<Piece<N>>) -> ([f64; N], [f64; N]) {
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for p in heap.iter() {
        for i in 0..N {
            value[i] += p.value[i];
            error[i] += p.error[i];
        }
    }
    (value, error)
}
