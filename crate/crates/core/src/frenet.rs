//! Cartan frame (L, N, W) of a generator curve and torsion checks.
//!
//! The frame satisfies g(L, N) = g(W, W) = 1 with the other products zero,
//! and L′ = W, N′ = τW, W′ = −τL − N.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fd;
use crate::generator::Generator;
use crate::minkowski::{det3, mink_inner, Vec3};
use crate::schwarzian::schwarzian_of_jet;
use crate::synthesis::{Orientation, SampledCurve};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub l: Vec3,
    pub n: Vec3,
    pub w: Vec3,
}

impl FrenetFrame {
    /// Largest deviation over the six Gram conditions.
    pub fn gram_residual(&self) -> f64 {
        let g = mink_inner;
        [
            g(&self.l, &self.l),
            g(&self.l, &self.w),
            g(&self.n, &self.n),
            g(&self.n, &self.w),
            g(&self.l, &self.n) - 1.0,
            g(&self.w, &self.w) - 1.0,
        ]
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()))
    }

    pub fn det(&self) -> f64 {
        det3(&self.l, &self.n, &self.w)
    }
}

/// The frame from the 3-jet of f at `s`, with P = (2f, f² − 1, f² + 1),
/// Q = (1, f, f) and R = (0, 1, 1):
///
///   L = (ε/2f′) P
///   W = −(εf″/2f′²) P + ε Q
///   N = −(εf″²/4f′³) P + (εf″/f′) Q − εf′ R
pub fn frame_at(gen: &Generator, epsilon: Orientation, s: f64) -> Result<FrenetFrame> {
    let j = gen.eval(s)?;
    let e = epsilon.sign();
    let (f, f1, f2) = (j.f0, j.f1, j.f2);
    let p = Vec3::new(2.0 * f, f * f - 1.0, f * f + 1.0);
    let q = Vec3::new(1.0, f, f);
    let r = Vec3::new(0.0, 1.0, 1.0);
    let k = f2 / f1;
    let frame = FrenetFrame {
        l: p * (0.5 * e / f1),
        w: p * (-0.5 * e * k / f1) + q * e,
        n: p * (-0.25 * e * k * k / f1) + q * (e * k) - r * (e * f1),
    };
    if !(frame.l.is_finite() && frame.n.is_finite() && frame.w.is_finite()) {
        return Err(Error::domain(format!("frame of {}", gen.label()), s));
    }
    Ok(frame)
}

/// τ = S(f)(s).
pub fn torsion_schwarzian(gen: &Generator, s: f64) -> Result<f64> {
    schwarzian_of_jet(&gen.eval(s)?)
}

/// Relative spacing mismatch tolerated inside one stencil.
pub const SPACING_TOL: f64 = 1e-8;

/// τ = ½ g(α‴, α‴) with α‴ from the 7-point O(h⁴) central difference of the
/// sampled positions around `index`.
///
/// Error model: O(h⁴ |α⁽⁷⁾|) truncation plus O(δ/h³), where δ is the
/// position noise between neighbouring samples. Only segment-local
/// quadrature error enters δ; the error accumulated from s₀ is common to
/// the whole stencil and cancels.
pub fn torsion_from_acceleration(curve: &SampledCurve, index: usize) -> Result<f64> {
    let n = curve.samples.len();
    if index < 3 || index + 3 >= n {
        return Err(Error::InsufficientStencil {
            index,
            reason: format!("need 3 samples on each side, curve has {n}"),
        });
    }
    let win = &curve.samples[index - 3..=index + 3];
    let h = (win[6].s - win[0].s) / 6.0;
    for (k, w) in win.windows(2).enumerate() {
        let d = w[1].s - w[0].s;
        if (d - h).abs() > SPACING_TOL * h {
            return Err(Error::InsufficientStencil {
                index,
                reason: format!("spacing {d} at offset {} differs from {h}", k as i64 - 3),
            });
        }
    }
    let pts: [Vec3; 7] = std::array::from_fn(|k| win[k].pos);
    let a3 = fd::third_from_samples_o4(&pts, h);
    Ok(0.5 * mink_inner(&a3, &a3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameDiagnostics {
    pub gram_residual: f64,
    /// Largest component residual of the three Frenet equations.
    pub frenet_residual: f64,
    pub det_value: f64,
    /// |S(f) − ½ g(L″, L″)|, with L″ = α‴ from differences of the frame.
    pub torsion_mismatch: f64,
}

/// Checks the frame at `s` against the Frenet equations using O(h⁴)
/// differences of the closed-form frame at step h/2, so every evaluation
/// stays in [s − h, s + h].
pub fn frenet_residuals(gen: &Generator, epsilon: Orientation, s: f64, h: f64) -> Result<FrameDiagnostics> {
    if !(h > 0.0) {
        return Err(Error::invalid(
            "frenet_residuals",
            format!("step must be positive, got {h}"),
        ));
    }
    let support = gen.support();
    if !support.contains_closed(s - h) || !support.contains_closed(s + h) {
        return Err(Error::domain(format!("frenet residual window of {}", gen.label()), s));
    }
    let frame = frame_at(gen, epsilon, s)?;
    let tau = torsion_schwarzian(gen, s)?;
    let hh = 0.5 * h;
    let dl = fd::d1_o4(|t| frame_at(gen, epsilon, t).map(|f| f.l), s, hh)?;
    let dn = fd::d1_o4(|t| frame_at(gen, epsilon, t).map(|f| f.n), s, hh)?;
    let dw = fd::d1_o4(|t| frame_at(gen, epsilon, t).map(|f| f.w), s, hh)?;
    let frenet_residual = (dl - frame.w)
        .max_abs()
        .max((dn - frame.w * tau).max_abs())
        .max((dw + frame.l * tau + frame.n).max_abs());
    let ddl = fd::d2_o4(|t| frame_at(gen, epsilon, t).map(|f| f.l), s, hh)?;
    let tau_accel = 0.5 * mink_inner(&ddl, &ddl);
    Ok(FrameDiagnostics {
        gram_residual: frame.gram_residual(),
        frenet_residual,
        det_value: frame.det(),
        torsion_mismatch: (tau - tau_accel).abs(),
    })
}
