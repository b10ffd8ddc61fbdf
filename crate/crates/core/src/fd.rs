//! Central finite-difference stencils on uniformly spaced points.
//!
//! Every stencil is written for any value type that forms a real vector
//! space, so the same code differentiates scalars and [`Vec3`] fields.
//!
//! Error model, with `u` the unit roundoff and `M` a bound on the relevant
//! higher derivative: an order-`p` stencil for the `k`-th derivative has
//! truncation error `O(h^p M)` and roundoff `O(u |f| / h^k)`.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::minkowski::Vec3;

/// Values that finite differences can be taken of.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl Linear for f64 {}
impl Linear for Vec3 {}

/// Samples `f` at `x + k h` for `k = -m..=m`.
fn sample<T, F, const N: usize>(mut f: F, x: f64, h: f64) -> Result<[T; N]>
where
    T: Linear + Default,
    F: FnMut(f64) -> Result<T>,
{
    if h == 0.0 || !h.is_finite() {
        return Err(Error::invalid(
            "finite-difference step",
            format!("must be finite and non-zero, got {h}"),
        ));
    }
    let m = (N / 2) as i32;
    let mut out = [T::default(); N];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f(x + f64::from(i as i32 - m) * h)?;
    }
    Ok(out)
}

/// First derivative, 3 points, O(h²).
pub fn d1_o2<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m1, _, p1] = sample::<T, _, 3>(f, x, h)?;
    Ok((p1 - m1) * (0.5 / h))
}

/// First derivative, 5 points, O(h⁴).
pub fn d1_o4<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m2, m1, _, p1, p2] = sample::<T, _, 5>(f, x, h)?;
    Ok(((p1 - m1) * 8.0 - (p2 - m2)) * (1.0 / (12.0 * h)))
}

/// First derivative, 7 points, O(h⁶).
pub fn d1_o6<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m3, m2, m1, _, p1, p2, p3] = sample::<T, _, 7>(f, x, h)?;
    Ok(((p1 - m1) * 45.0 - (p2 - m2) * 9.0 + (p3 - m3)) * (1.0 / (60.0 * h)))
}

/// Second derivative, 3 points, O(h²).
pub fn d2_o2<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m1, c, p1] = sample::<T, _, 3>(f, x, h)?;
    Ok((p1 + m1 - c * 2.0) * (1.0 / (h * h)))
}

/// Second derivative, 5 points, O(h⁴).
pub fn d2_o4<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m2, m1, c, p1, p2] = sample::<T, _, 5>(f, x, h)?;
    Ok(((p1 + m1) * 16.0 - (p2 + m2) - c * 30.0) * (1.0 / (12.0 * h * h)))
}

/// Second derivative, 7 points, O(h⁶).
pub fn d2_o6<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m3, m2, m1, c, p1, p2, p3] = sample::<T, _, 7>(f, x, h)?;
    Ok((((p1 + m1) * 270.0 - (p2 + m2) * 27.0 + (p3 + m3) * 2.0) - c * 490.0) * (1.0 / (180.0 * h * h)))
}

/// Third derivative, 5 points, O(h²).
pub fn d3_o2<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let [m2, m1, _, p1, p2] = sample::<T, _, 5>(f, x, h)?;
    Ok(third_from_samples_o2([m2, m1, p1, p2], h))
}

/// Third derivative from the four off-centre samples of a 5-point stencil.
pub fn third_from_samples_o2<T: Linear>(v: [T; 4], h: f64) -> T {
    let [m2, m1, p1, p2] = v;
    ((p2 - m2) - (p1 - m1) * 2.0) * (0.5 / (h * h * h))
}

/// Third derivative, 7 points, O(h⁴).
pub fn d3_o4<T: Linear + Default>(f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    let v = sample::<T, _, 7>(f, x, h)?;
    Ok(third_from_samples_o4(&v, h))
}

/// Third derivative from seven equally spaced samples centred on the point
/// of interest (the centre sample carries zero weight).
pub fn third_from_samples_o4<T: Linear>(v: &[T; 7], h: f64) -> T {
    let [m3, m2, m1, _, p1, p2, p3] = *v;
    ((p1 - m1) * (-13.0) + (p2 - m2) * 8.0 - (p3 - m3)) * (1.0 / (8.0 * h * h * h))
}
