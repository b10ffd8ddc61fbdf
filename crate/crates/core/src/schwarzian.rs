//! The Schwarzian derivative S(f) = (f″/f′)′ − ½(f″/f′)² and the
//! fractional-linear maps that leave it unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd;

/// Value and first three derivatives of a scalar function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet3 {
    pub f0: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl Jet3 {
    pub const fn new(f0: f64, f1: f64, f2: f64, f3: f64) -> Self {
        Jet3 { f0, f1, f2, f3 }
    }

    pub fn is_finite(&self) -> bool {
        self.f0.is_finite() && self.f1.is_finite() && self.f2.is_finite() && self.f3.is_finite()
    }

    /// The jet of −f.
    pub fn negated(&self) -> Jet3 {
        Jet3::new(-self.f0, -self.f1, -self.f2, -self.f3)
    }
}

/// S(f) from a 3-jet, evaluated as f‴/f′ − (3/2)(f″/f′)².
pub fn schwarzian_of_jet(j: &Jet3) -> Result<f64> {
    if j.f1 == 0.0 || !j.f1.is_finite() {
        return Err(Error::domain("Schwarzian (f' must be nonzero)", j.f0));
    }
    let r = j.f2 / j.f1;
    Ok(j.f3 / j.f1 - 1.5 * r * r)
}

/// S(f) in the single-fraction form (2f′f‴ − 3f″²)/(2f′²).
pub fn schwarzian_rational(j: &Jet3) -> Result<f64> {
    if j.f1 == 0.0 || !j.f1.is_finite() {
        return Err(Error::domain("Schwarzian (f' must be nonzero)", j.f0));
    }
    Ok((2.0 * j.f1 * j.f3 - 3.0 * j.f2 * j.f2) / (2.0 * j.f1 * j.f1))
}

/// Default step for [`schwarzian_fd`]: u^{1/5}·max(1, |s|), which balances
/// the O(h²) truncation of the third-difference stencil against its
/// O(u/h³) roundoff.
pub fn default_fd_step(s: f64) -> f64 {
    f64::EPSILON.powf(0.2) * s.abs().max(1.0)
}

/// Estimates S(f) at `s` from central differences of `f` with step `h`.
///
/// All three derivatives use O(h²) stencils reaching `s ± 2h`. The error is
/// O(h²) plus roundoff O(u |f| / (h³ |f′|)).
pub fn schwarzian_fd(f: impl Fn(f64) -> f64, s: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::invalid(
            "schwarzian_fd",
            format!("step must be positive, got {h}"),
        ));
    }
    let g = |t: f64| Ok(f(t));
    let f1 = fd::d1_o2(g, s, h)?;
    let f2 = fd::d2_o2(g, s, h)?;
    let f3 = fd::d3_o2(g, s, h)?;
    let scale = f(s - h).abs().max(f(s + h).abs()).max(f(s).abs());
    let noise = f64::EPSILON * scale / h;
    if !(f1.abs() > 10.0 * noise) {
        return Err(Error::domain("schwarzian_fd (f' indistinguishable from roundoff)", s));
    }
    schwarzian_of_jet(&Jet3::new(f(s), f1, f2, f3))
}

/// A fractional-linear map r ↦ (ar + b)/(cr + d) with ad − bc ≠ 0.
///
/// Coefficients are kept as given; no normalization of the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || det.abs() <= 4.0 * f64::EPSILON * (a * d).abs().max((b * c).abs()) {
            return Err(Error::InvalidMap { det });
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub const IDENTITY: MobiusMap = MobiusMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    fn denominator(&self, r: f64) -> Result<f64> {
        let q = self.c * r + self.d;
        if q == 0.0 || !q.is_finite() {
            Err(Error::Pole { r })
        } else {
            Ok(q)
        }
    }

    pub fn apply(&self, r: f64) -> Result<f64> {
        mobius_apply(self, r)
    }
}

/// T(r) = (ar + b)/(cr + d); points mapped to ∞ are errors.
pub fn mobius_apply(t: &MobiusMap, r: f64) -> Result<f64> {
    let q = t.denominator(r)?;
    Ok((t.a * r + t.b) / q)
}

/// Pushes a 3-jet of f through T, giving the 3-jet of T∘f.
pub fn mobius_jet(t: &MobiusMap, j: &Jet3) -> Result<Jet3> {
    let q = t.denominator(j.f0)?;
    let det = t.determinant();
    // T', T'', T''' at r = f0
    let t1 = det / (q * q);
    let k = -2.0 * t.c / q;
    let t2 = k * t1;
    let t3 = 1.5 * k * t2;
    Ok(Jet3 {
        f0: (t.a * j.f0 + t.b) / q,
        f1: t1 * j.f1,
        f2: t2 * j.f1 * j.f1 + t1 * j.f2,
        f3: t3 * j.f1 * j.f1 * j.f1 + 3.0 * t2 * j.f1 * j.f2 + t1 * j.f3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jet_examples() {
        assert_eq!(schwarzian_of_jet(&Jet3::new(3.0, 1.0, 0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(schwarzian_of_jet(&Jet3::new(1.0, 2.0, 4.0, 8.0)).unwrap(), -2.0);
        let s: f64 = 2.0;
        let log_jet = Jet3::new(s.ln(), 1.0 / s, -1.0 / (s * s), 2.0 / (s * s * s));
        assert!((schwarzian_of_jet(&log_jet).unwrap() - 0.125).abs() < 1e-15);
        assert!(schwarzian_of_jet(&Jet3::new(1.0, 0.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn affine_jets_have_zero_schwarzian() {
        for f1 in [-3.0, -1e-3, 0.5, 7.0] {
            assert_eq!(schwarzian_of_jet(&Jet3::new(1.3, f1, 0.0, 0.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn fd_examples() {
        let v = schwarzian_fd(|s| s, 1.0, 1e-3).unwrap();
        assert!(v.abs() < 1e-6, "{v}");
        let v = schwarzian_fd(f64::exp, 0.0, 1e-3).unwrap();
        assert!((v + 0.5).abs() < 1e-5, "{v}");
        assert!(schwarzian_fd(|_| 4.0, 0.0, 1e-3).is_err());
    }

    #[test]
    fn fd_matches_tan_log_jet() {
        // f = tan(½ ln s): analytic jet via u = ½ ln s, f = tan u
        let s: f64 = 2.0;
        let u = 0.5 * s.ln();
        let (t, sec2) = (u.tan(), 1.0 / u.cos().powi(2));
        let du = [0.5 / s, -0.5 / (s * s), 1.0 / (s * s * s)];
        let (g1, g2, g3) = (sec2, 2.0 * sec2 * t, 2.0 * sec2 * (sec2 + 2.0 * t * t));
        let jet = Jet3::new(
            t,
            g1 * du[0],
            g2 * du[0] * du[0] + g1 * du[1],
            g3 * du[0].powi(3) + 3.0 * g2 * du[0] * du[1] + g1 * du[2],
        );
        let exact = schwarzian_of_jet(&jet).unwrap();
        // a = 1 + b² with b = 1, τ = a / (2 s²)
        assert!((exact - 2.0 / (2.0 * s * s)).abs() < 1e-14);
        let f = |s: f64| (0.5 * s.ln()).tan();
        let est = schwarzian_fd(f, s, default_fd_step(s)).unwrap();
        assert!((est - exact).abs() < 1e-5, "{est} vs {exact}");
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_apply(&MobiusMap::IDENTITY, 7.0).unwrap(), 7.0);
        let inv = MobiusMap::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(mobius_apply(&inv, 2.0).unwrap(), 0.5);
        let t = MobiusMap::new(1.0, 1.0, 1.0, -1.0).unwrap();
        assert!(matches!(mobius_apply(&t, 1.0), Err(Error::Pole { .. })));
        assert!(matches!(
            MobiusMap::new(1.0, 1.0, 1.0, 1.0),
            Err(Error::InvalidMap { .. })
        ));
    }

    #[test]
    fn mobius_jet_examples() {
        let j = Jet3::new(0.3, -1.2, 2.5, 0.7);
        assert_eq!(mobius_jet(&MobiusMap::IDENTITY, &j).unwrap(), j);
        let scale = MobiusMap::new(2.0, 0.0, 0.0, 1.0).unwrap();
        let s0 = schwarzian_of_jet(&j).unwrap();
        let s1 = schwarzian_of_jet(&mobius_jet(&scale, &j).unwrap()).unwrap();
        assert!((s0 - s1).abs() < 1e-12);
    }

    #[test]
    fn mobius_jet_matches_composition_by_fd() {
        // T∘exp differentiated numerically
        let t = MobiusMap::new(1.5, -0.5, 0.8, 2.0).unwrap();
        let s = 0.2f64;
        let e = s.exp();
        let pushed = mobius_jet(&t, &Jet3::new(e, e, e, e)).unwrap();
        let comp = |x: f64| Ok(t.apply(x.exp()).unwrap());
        assert!((pushed.f0 - comp(s).unwrap()).abs() < 1e-15);
        assert!((pushed.f1 - fd::d1_o4(comp, s, 1e-3).unwrap()).abs() < 1e-10);
        assert!((pushed.f2 - fd::d2_o4(comp, s, 1e-3).unwrap()).abs() < 1e-8);
        assert!((pushed.f3 - fd::d3_o4(comp, s, 1e-2).unwrap()).abs() < 1e-6);
    }

    fn random_jet(rng: &mut ChaCha8Rng) -> Jet3 {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Jet3::new(
            rng.gen_range(-5.0..5.0),
            sign * rng.gen_range(0.1..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        )
    }

    #[test]
    fn two_forms_agree_to_a_few_ulps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let j = random_jet(&mut rng);
            let a = schwarzian_of_jet(&j).unwrap();
            let b = schwarzian_rational(&j).unwrap();
            // ulps counted at the magnitude of the larger of the two terms
            let r = j.f2 / j.f1;
            let scale = (j.f3 / j.f1).abs().max(1.5 * r * r).max(a.abs());
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * scale, "{j:?}: {a} vs {b}");
        }
    }

    #[test]
    fn sign_flip_leaves_schwarzian_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let j = random_jet(&mut rng);
            assert_eq!(schwarzian_of_jet(&j).unwrap(), schwarzian_of_jet(&j.negated()).unwrap());
        }
    }
}
