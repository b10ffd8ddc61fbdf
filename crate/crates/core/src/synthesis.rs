//! Sampled null curves α(s) = α(s₀) + ∫_{s₀}^{s} L(t) dt, where
//! L = (ε/2f′)(2f, f² − 1, f² + 1) is built from a generator f.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::minkowski::Vec3;
use crate::quadrature::integrate;

/// Default absolute tolerance per unit of path length.
pub const DEFAULT_TOL: f64 = 1e-10;

/// The orientation sign ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl From<Orientation> for i8 {
    fn from(o: Orientation) -> i8 {
        match o {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

impl TryFrom<i8> for Orientation {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Negative),
            _ => Err(Error::invalid("epsilon", format!("must be +1 or -1, got {v}"))),
        }
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" => Ok(Orientation::Positive),
            "-1" => Ok(Orientation::Negative),
            other => Err(Error::invalid("epsilon", format!("must be +1 or -1, got {other:?}"))),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", i8::from(*self))
    }
}

/// Everything needed to integrate one curve.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub gen: Generator,
    pub epsilon: Orientation,
    pub s0: f64,
    pub alpha0: Vec3,
}

impl CurveSpec {
    pub fn new(gen: Generator, epsilon: Orientation, s0: f64, alpha0: Vec3) -> Result<Self> {
        if !gen.support().contains_closed(s0) || !s0.is_finite() {
            return Err(Error::domain(format!("anchor s0 for {}", gen.label()), s0));
        }
        if !alpha0.is_finite() {
            return Err(Error::invalid("alpha0", "components must be finite"));
        }
        Ok(CurveSpec {
            gen,
            epsilon,
            s0,
            alpha0,
        })
    }
}

/// One sample of a synthesized curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub s: f64,
    pub pos: Vec3,
    /// Accumulated quadrature error estimate (max over components).
    pub err: f64,
}

#[derive(Debug, Clone)]
pub struct SampledCurve {
    pub spec: CurveSpec,
    pub samples: Vec<Sample>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec3> + '_ {
        self.samples.iter().map(|p| p.pos)
    }

    /// The sample at exactly `s`, if the grid contains it.
    pub fn at(&self, s: f64) -> Option<&Sample> {
        self.samples
            .binary_search_by(|p| p.s.total_cmp(&s))
            .ok()
            .map(|i| &self.samples[i])
    }
}

/// The velocity α′(s) = L(s).
///
/// Evaluated as (ε/2)(2q, fq − 1/f′, fq + 1/f′) with q = f/f′, which stays
/// finite where f grows like a pole while f² / f′ stays bounded.
pub fn integrand(gen: &Generator, epsilon: Orientation, s: f64) -> Result<Vec3> {
    let j = gen.eval(s)?;
    let q = j.f0 / j.f1;
    let w = 1.0 / j.f1;
    let fq = j.f0 * q;
    let v = Vec3::new(2.0 * q, fq - w, fq + w) * (0.5 * epsilon.sign());
    if !v.is_finite() {
        return Err(Error::domain(format!("integrand of {}", gen.label()), s));
    }
    Ok(v)
}

/// Evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Integrates the curve of `spec` onto `grid`.
///
/// The grid must be strictly increasing and lie in the closed support of
/// the generator; it need not contain `s0`. Integration walks outwards from
/// `s0` in both directions, one segment per pair of consecutive points. Each
/// segment aims for an absolute error of `tol·(Δs/span + ℓ)`, with `ℓ` the
/// Euclidean length of the segment and `span` the largest |s − s0|, so the
/// accumulated error stays under `tol·(1 + path length)`.
pub fn synthesize(spec: &CurveSpec, grid: &[f64], tol: f64) -> Result<SampledCurve> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("synthesize", format!("tol must be positive, got {tol}")));
    }
    if grid.is_empty() {
        return Err(Error::invalid("synthesize", "grid is empty"));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(
            "synthesize",
            format!("grid must be strictly increasing ({} then {})", w[0], w[1]),
        ));
    }
    let support = spec.gen.support();
    if let Some(&s) = grid.iter().find(|&&s| !support.contains_closed(s)) {
        return Err(Error::domain(spec.gen.label().to_string(), s));
    }

    let s0 = spec.s0;
    let span = grid.iter().fold(0.0f64, |m, &s| m.max((s - s0).abs()));
    let split = grid.partition_point(|&s| s < s0);
    let mut samples = vec![
        Sample {
            s: 0.0,
            pos: Vec3::ZERO,
            err: 0.0
        };
        grid.len()
    ];

    let walk = |indices: &mut dyn Iterator<Item = usize>, samples: &mut [Sample]| -> Result<()> {
        let (mut s_prev, mut pos, mut err) = (s0, spec.alpha0, 0.0);
        for i in indices {
            let s = grid[i];
            if s != s_prev {
                let q = integrate(
                    |t| {
                        let v = integrand(&spec.gen, spec.epsilon, t)?;
                        Ok([v.x, v.y, v.z, v.euclid_norm()])
                    },
                    s_prev,
                    s,
                    |v| tol * ((s - s_prev).abs() / span + v[3].abs()),
                )?;
                pos += Vec3::new(q.value[0], q.value[1], q.value[2]);
                err += q.error[..3].iter().fold(0.0f64, |m, &e| m.max(e));
            }
            samples[i] = Sample { s, pos, err };
            s_prev = s;
        }
        Ok(())
    };
    walk(&mut (split..grid.len()), &mut samples)?;
    walk(&mut (0..split).rev(), &mut samples)?;
    Ok(SampledCurve {
        spec: spec.clone(),
        samples,
    })
}
