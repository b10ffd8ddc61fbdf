//! Generator functions f from which null curves are built.
//!
//! A [`Generator`] evaluates the 3-jet of f and carries two intervals:
//!
//! * `domain`: the open interval on which f ≠ 0 and f′ ≠ 0, the
//!   admissibility conditions of the parametrization;
//! * `support`: the (possibly larger) interval on which the closed-form
//!   jet is finite with f′ ≠ 0. The curve integrand stays finite
//!   wherever f′ ≠ 0, so curves may be synthesized across points where only
//!   f = 0 fails. The catalog anchors several curves at such points
//!   (f = ln s and f = tan(½ ln s^b) at s = 1).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::airy::{airy_jet, AirySpec};
use crate::error::{Error, Result};
use crate::fd;
use crate::schwarzian::Jet3;

/// Sampling window used for validation when an end of the domain is infinite.
pub const INFINITE_WINDOW: f64 = 10.0;

/// Number of points used to spot-check admissibility at construction.
pub const CONSTRUCTION_SAMPLES: usize = 1024;

/// An interval of the real line; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn positive() -> Self {
        Interval::new(0.0, f64::INFINITY)
    }

    pub fn contains_open(&self, s: f64) -> bool {
        s > self.lo && s < self.hi
    }

    pub fn contains_closed(&self, s: f64) -> bool {
        s >= self.lo && s <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    /// A finite window inside the interval for sampling.
    pub fn sampling_window(&self) -> Interval {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => *self,
            (true, false) => Interval::new(self.lo, self.lo + INFINITE_WINDOW),
            (false, true) => Interval::new(self.hi - INFINITE_WINDOW, self.hi),
            (false, false) => Interval::new(-INFINITE_WINDOW, INFINITE_WINDOW),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

type JetFn = dyn Fn(f64) -> Jet3 + Send + Sync;

/// A user-defined generator.
#[derive(Clone)]
pub struct CustomGenerator {
    label: String,
    domain: Interval,
    support: Interval,
    jet: Arc<JetFn>,
    fd_jet: bool,
}

impl CustomGenerator {
    /// A generator with an analytic jet.
    pub fn analytic(
        label: impl Into<String>,
        domain: Interval,
        jet: impl Fn(f64) -> Jet3 + Send + Sync + 'static,
    ) -> Self {
        CustomGenerator {
            label: label.into(),
            domain,
            support: domain,
            jet: Arc::new(jet),
            fd_jet: false,
        }
    }

    /// A generator given only by its values; derivatives come from O(h⁴)
    /// central differences and reports flag it as `fd-jet`.
    pub fn from_values(
        label: impl Into<String>,
        domain: Interval,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let jet = move |s: f64| {
            let scale = s.abs().max(1.0);
            let g = |t: f64| Ok(f(t));
            // steps near the optimum for each derivative order
            let d1 = fd::d1_o4(g, s, 1e-3 * scale).unwrap_or(f64::NAN);
            let d2 = fd::d2_o4(g, s, 3e-3 * scale).unwrap_or(f64::NAN);
            let d3 = fd::d3_o4(g, s, 1e-2 * scale).unwrap_or(f64::NAN);
            Jet3::new(f(s), d1, d2, d3)
        };
        CustomGenerator {
            label: label.into(),
            domain,
            support: domain,
            jet: Arc::new(jet),
            fd_jet: true,
        }
    }

    /// Widens the interval on which the jet may be evaluated.
    pub fn with_support(mut self, support: Interval) -> Self {
        self.support = support;
        self
    }
}

impl fmt::Debug for CustomGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGenerator")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("support", &self.support)
            .field("fd_jet", &self.fd_jet)
            .finish()
    }
}

/// The closed-form generator families, plus user-defined ones.
#[derive(Debug, Clone)]
pub enum GeneratorKind {
    /// f(s) = s
    Identity,
    /// f(s) = −cot(cs/2), c > 0
    Cot {
        c: f64,
    },
    /// f(s) = e^{cs}, c > 0
    Exp {
        c: f64,
    },
    /// f(s) = ln s
    Log,
    /// f(s) = tan(½ ln s^b), b > 0
    TanLog {
        b: f64,
    },
    /// f(s) = s^{-b}, b > 0, b ≠ 2
    Power {
        b: f64,
    },
    /// f(s) = 1/s²
    InverseSquare,
    /// f(s) = (π/μ)·Bi(μs)/Ai(μs), μ = ∛λ, λ ≠ 0
    AiryRatio {
        lambda: f64,
    },
    Custom(CustomGenerator),
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Identity => "identity",
            GeneratorKind::Cot { .. } => "cot",
            GeneratorKind::Exp { .. } => "exp",
            GeneratorKind::Log => "log",
            GeneratorKind::TanLog { .. } => "tanlog",
            GeneratorKind::Power { .. } => "power",
            GeneratorKind::InverseSquare => "inverse-square",
            GeneratorKind::AiryRatio { .. } => "airy",
            GeneratorKind::Custom(_) => "custom",
        }
    }

    fn check_params(&self) -> Result<()> {
        let positive = |name: &str, key: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("{key} must be finite and > 0, got {v}")))
            }
        };
        match *self {
            GeneratorKind::Cot { c } | GeneratorKind::Exp { c } => positive(self.name(), "c", c),
            GeneratorKind::TanLog { b } => positive("tanlog", "b", b),
            GeneratorKind::Power { b } => {
                positive("power", "b", b)?;
                if b == 2.0 {
                    Err(Error::invalid("power", "b = 2 is the inverse-square generator"))
                } else {
                    Ok(())
                }
            }
            GeneratorKind::AiryRatio { lambda } => AirySpec::new(lambda).map(|_| ()),
            GeneratorKind::Custom(ref g) => {
                if g.domain.is_empty() {
                    Err(Error::EmptyDomain { what: g.label.clone() })
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// (domain, support) for the kind.
    fn intervals(&self) -> (Interval, Interval) {
        match *self {
            GeneratorKind::Identity => (Interval::positive(), Interval::REAL_LINE),
            // f > 0 and f' > 0 on (π/c, 2π/c); the jet is finite on (0, 2π/c)
            GeneratorKind::Cot { c } => (Interval::new(PI / c, 2.0 * PI / c), Interval::new(0.0, 2.0 * PI / c)),
            GeneratorKind::Exp { .. } => (Interval::REAL_LINE, Interval::REAL_LINE),
            GeneratorKind::Log => (Interval::new(1.0, f64::INFINITY), Interval::positive()),
            GeneratorKind::TanLog { b } => {
                let edge = (PI / b).exp();
                (Interval::new(1.0, edge), Interval::new(1.0 / edge, edge))
            }
            GeneratorKind::Power { .. } | GeneratorKind::InverseSquare => (Interval::positive(), Interval::positive()),
            GeneratorKind::AiryRatio { lambda } => {
                let spec = AirySpec::new(lambda).expect("checked");
                (spec.domain(), spec.support())
            }
            GeneratorKind::Custom(ref g) => (g.domain, g.support),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind={}", self.name())?;
        match *self {
            GeneratorKind::Cot { c } | GeneratorKind::Exp { c } => write!(f, " c={c}"),
            GeneratorKind::TanLog { b } | GeneratorKind::Power { b } => write!(f, " b={b}"),
            GeneratorKind::AiryRatio { lambda } => write!(f, " lambda={lambda}"),
            GeneratorKind::Custom(ref g) => write!(f, " label={}", g.label),
            _ => Ok(()),
        }
    }
}

/// Parses the `kind=NAME key=value ...` form used in configuration files;
/// the leading `kind=` may be omitted.
impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut name = None;
        let mut params: Vec<(String, f64)> = Vec::new();
        for tok in text.split_whitespace() {
            match tok.split_once('=') {
                Some(("kind", v)) => name = Some(v.to_string()),
                Some((k, v)) => {
                    let val: f64 = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("generator parameter {k}={v} is not a number")))?;
                    params.push((k.to_string(), val));
                }
                None if name.is_none() => name = Some(tok.to_string()),
                None => return Err(Error::Parse(format!("unexpected token {tok:?} in generator spec"))),
            }
        }
        let name = name.ok_or_else(|| Error::Parse(format!("generator spec {text:?} has no kind")))?;
        let get = |key: &str| {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::Parse(format!("generator {name} requires {key}=<value>")))
        };
        let kind = match name.as_str() {
            "identity" => GeneratorKind::Identity,
            "cot" => GeneratorKind::Cot { c: get("c")? },
            "exp" => GeneratorKind::Exp { c: get("c")? },
            "log" => GeneratorKind::Log,
            "tanlog" => GeneratorKind::TanLog { b: get("b")? },
            "power" => GeneratorKind::Power { b: get("b")? },
            "inverse-square" => GeneratorKind::InverseSquare,
            "airy" => GeneratorKind::AiryRatio { lambda: get("lambda")? },
            other => return Err(Error::Parse(format!("unknown generator kind {other:?}"))),
        };
        Ok(kind)
    }
}

/// A generator function with its admissible domain.
#[derive(Debug, Clone)]
pub struct Generator {
    kind: GeneratorKind,
    domain: Interval,
    support: Interval,
    label: String,
}

impl Generator {
    /// Builds a generator without the admissibility spot-check; only the
    /// parameter constraints are enforced.
    pub fn unchecked(kind: GeneratorKind) -> Result<Self> {
        kind.check_params()?;
        let (domain, support) = kind.intervals();
        let label = match &kind {
            GeneratorKind::Custom(g) => g.label.clone(),
            k => k.to_string(),
        };
        Ok(Generator {
            kind,
            domain,
            support,
            label,
        })
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_fd_jet(&self) -> bool {
        matches!(&self.kind, GeneratorKind::Custom(g) if g.fd_jet)
    }

    /// The 3-jet of f at `s`. Points of the closed support are accepted as
    /// long as the jet there is finite with f′ ≠ 0.
    pub fn eval(&self, s: f64) -> Result<Jet3> {
        if !self.support.contains_closed(s) {
            return Err(Error::domain(self.label.clone(), s));
        }
        let j = self.raw_jet(s)?;
        if !j.is_finite() || j.f1 == 0.0 {
            return Err(Error::domain(self.label.clone(), s));
        }
        Ok(j)
    }

    fn raw_jet(&self, s: f64) -> Result<Jet3> {
        Ok(match self.kind {
            GeneratorKind::Identity => Jet3::new(s, 1.0, 0.0, 0.0),
            GeneratorKind::Cot { c } => {
                let (sn, cs) = (0.5 * c * s).sin_cos();
                let s2 = sn * sn;
                Jet3::new(
                    -cs / sn,
                    0.5 * c / s2,
                    -0.5 * c * c * cs / (s2 * sn),
                    0.25 * c * c * c * (s2 + 3.0 * cs * cs) / (s2 * s2),
                )
            }
            GeneratorKind::Exp { c } => {
                let e = (c * s).exp();
                Jet3::new(e, c * e, c * c * e, c * c * c * e)
            }
            GeneratorKind::Log => Jet3::new(s.ln(), 1.0 / s, -1.0 / (s * s), 2.0 / (s * s * s)),
            GeneratorKind::TanLog { b } => {
                let u = 0.5 * b * s.ln();
                let t = u.tan();
                let sec2 = 1.0 + t * t;
                let (u1, u2, u3) = (0.5 * b / s, -0.5 * b / (s * s), b / (s * s * s));
                let (g1, g2, g3) = (sec2, 2.0 * sec2 * t, 2.0 * sec2 * (sec2 + 2.0 * t * t));
                Jet3::new(
                    t,
                    g1 * u1,
                    g2 * u1 * u1 + g1 * u2,
                    g3 * u1 * u1 * u1 + 3.0 * g2 * u1 * u2 + g1 * u3,
                )
            }
            GeneratorKind::Power { b } => {
                let p = s.powf(-b);
                Jet3::new(
                    p,
                    -b * p / s,
                    b * (b + 1.0) * p / (s * s),
                    -b * (b + 1.0) * (b + 2.0) * p / (s * s * s),
                )
            }
            GeneratorKind::InverseSquare => {
                let p = 1.0 / (s * s);
                Jet3::new(p, -2.0 * p / s, 6.0 * p * p, -24.0 * p * p / s)
            }
            GeneratorKind::AiryRatio { lambda } => airy_jet(&AirySpec::new(lambda)?, s)?,
            GeneratorKind::Custom(ref g) => (g.jet)(s),
        })
    }
}

/// Builds a generator and spot-checks admissibility on a
/// [`CONSTRUCTION_SAMPLES`]-point grid of its domain.
pub fn make_generator(kind: GeneratorKind) -> Result<Generator> {
    let g = Generator::unchecked(kind)?;
    if g.domain.is_empty() {
        return Err(Error::EmptyDomain { what: g.label.clone() });
    }
    let report = validate_generator(&g, CONSTRUCTION_SAMPLES);
    if !report.passed {
        return Err(Error::EmptyDomain {
            what: format!("{} on {} ({})", g.label, g.domain, report.notes.join("; ")),
        });
    }
    Ok(g)
}

/// Outcome of [`validate_generator`].
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub label: String,
    pub samples: usize,
    pub window: Interval,
    pub min_abs_f: f64,
    pub min_abs_f1: f64,
    /// +1 or −1 when f′ keeps one sign over the samples, 0 otherwise.
    pub f1_sign: i8,
    pub f_sign: i8,
    pub fd_jet: bool,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Threshold below which |f| or |f′| counts as vanishing.
pub const ADMISSIBILITY_TOL: f64 = f64::MIN_POSITIVE;

/// Samples `n` interior points of the domain (a finite window of it when
/// unbounded) and checks f ≠ 0, f′ ≠ 0 and constant signs.
pub fn validate_generator(g: &Generator, n: usize) -> ValidationReport {
    let window = g.domain.sampling_window();
    let mut report = ValidationReport {
        label: g.label.clone(),
        samples: n,
        window,
        min_abs_f: f64::INFINITY,
        min_abs_f1: f64::INFINITY,
        f1_sign: 0,
        f_sign: 0,
        fd_jet: g.is_fd_jet(),
        passed: false,
        notes: Vec::new(),
    };
    if n < 2 {
        report.notes.push(format!("need at least 2 samples, got {n}"));
        return report;
    }
    if report.fd_jet {
        report.notes.push("fd-jet".into());
    }
    let sign = |v: f64| {
        if v > 0.0 {
            1i8
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let (mut f1_sign, mut f_sign) = (None::<i8>, None::<i8>);
    let (mut f1_const, mut f_const) = (true, true);
    let width = window.hi - window.lo;
    for i in 0..n {
        let s = window.lo + width * (i as f64 + 0.5) / n as f64;
        let j = match g.eval(s) {
            Ok(j) => j,
            Err(_) => match g.raw_jet(s) {
                Ok(j) => j,
                Err(e) => {
                    report.notes.push(format!("evaluation failed at s = {s}: {e}"));
                    return report;
                }
            },
        };
        if !j.is_finite() {
            report.notes.push(format!("non-finite jet at s = {s}"));
            return report;
        }
        report.min_abs_f = report.min_abs_f.min(j.f0.abs());
        report.min_abs_f1 = report.min_abs_f1.min(j.f1.abs());
        match f1_sign {
            None => f1_sign = Some(sign(j.f1)),
            Some(sg) if sg != sign(j.f1) => f1_const = false,
            _ => {}
        }
        match f_sign {
            None => f_sign = Some(sign(j.f0)),
            Some(sg) if sg != sign(j.f0) => f_const = false,
            _ => {}
        }
    }
    report.f1_sign = if f1_const { f1_sign.unwrap_or(0) } else { 0 };
    report.f_sign = if f_const { f_sign.unwrap_or(0) } else { 0 };
    if report.min_abs_f <= ADMISSIBILITY_TOL {
        report.notes.push("f vanishes on the domain".into());
    }
    if report.min_abs_f1 <= ADMISSIBILITY_TOL {
        report.notes.push("f' vanishes on the domain".into());
    }
    if report.f1_sign == 0 {
        report.notes.push("f' changes sign".into());
    }
    if report.f_sign == 0 {
        report.notes.push("f changes sign".into());
    }
    if g.support.contains_closed(g.domain.lo) && g.domain.lo.is_finite() && g.support != g.domain {
        if let Ok(j) = g.eval(g.domain.lo) {
            if j.f0 == 0.0 {
                report.notes.push(format!(
                    "f = 0 at the domain endpoint s = {}; removable for the curve integrand",
                    g.domain.lo
                ));
            }
        }
    }
    report.passed = report.min_abs_f > ADMISSIBILITY_TOL
        && report.min_abs_f1 > ADMISSIBILITY_TOL
        && report.f1_sign != 0
        && report.f_sign != 0;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwarzian::schwarzian_of_jet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn catalog_kinds() -> Vec<GeneratorKind> {
        vec![
            GeneratorKind::Identity,
            GeneratorKind::Cot { c: 1.0 },
            GeneratorKind::Cot { c: 2.0 },
            GeneratorKind::Exp { c: 1.0 },
            GeneratorKind::Log,
            GeneratorKind::TanLog { b: 1.0 },
            GeneratorKind::TanLog { b: 3.0 },
            GeneratorKind::Power { b: 0.5f64.sqrt() },
            GeneratorKind::Power { b: 3.0 },
            GeneratorKind::InverseSquare,
            GeneratorKind::AiryRatio { lambda: 1.0 },
            GeneratorKind::AiryRatio { lambda: -8.0 },
        ]
    }

    #[test]
    fn jet_examples() {
        let g = make_generator(GeneratorKind::Identity).unwrap();
        assert_eq!(g.eval(3.0).unwrap(), Jet3::new(3.0, 1.0, 0.0, 0.0));
        let g = make_generator(GeneratorKind::Exp { c: 1.0 }).unwrap();
        assert_eq!(g.eval(0.0).unwrap(), Jet3::new(1.0, 1.0, 1.0, 1.0));
        let g = make_generator(GeneratorKind::InverseSquare).unwrap();
        assert_eq!(g.eval(1.0).unwrap(), Jet3::new(1.0, -2.0, 6.0, -24.0));
    }

    #[test]
    fn default_domains() {
        let d = |k| make_generator(k).unwrap().domain();
        assert_eq!(d(GeneratorKind::Identity), Interval::positive());
        assert_eq!(d(GeneratorKind::Cot { c: 2.0 }), Interval::new(PI / 2.0, PI));
        assert_eq!(d(GeneratorKind::Exp { c: 1.0 }), Interval::REAL_LINE);
        assert_eq!(d(GeneratorKind::Log), Interval::new(1.0, f64::INFINITY));
        assert_eq!(d(GeneratorKind::TanLog { b: 1.0 }), Interval::new(1.0, PI.exp()));
        let airy = d(GeneratorKind::AiryRatio { lambda: 1.0 });
        assert!(airy.contains_open(0.0));
        assert!((airy.lo - BI_ZERO).abs() < 1e-15);
        let neg = d(GeneratorKind::AiryRatio { lambda: -8.0 });
        assert!(neg.contains_open(0.0));
        assert!((neg.hi - BI_ZERO / -2.0).abs() < 1e-15);
    }

    const BI_ZERO: f64 = crate::airy::BI_FIRST_ZERO;

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            make_generator(GeneratorKind::Cot { c: 0.0 }),
            Err(Error::InvalidParam { .. })
        ));
        assert!(make_generator(GeneratorKind::Exp { c: -1.0 }).is_err());
        assert!(make_generator(GeneratorKind::TanLog { b: f64::NAN }).is_err());
        assert!(make_generator(GeneratorKind::Power { b: 2.0 }).is_err());
        assert!(make_generator(GeneratorKind::AiryRatio { lambda: 0.0 }).is_err());
        let empty = CustomGenerator::analytic("empty", Interval::new(1.0, 1.0), |s| Jet3::new(s, 1.0, 0.0, 0.0));
        assert!(matches!(
            make_generator(GeneratorKind::Custom(empty)),
            Err(Error::EmptyDomain { .. })
        ));
    }

    #[test]
    fn eval_outside_support_is_a_domain_error() {
        let g = make_generator(GeneratorKind::Log).unwrap();
        assert!(matches!(g.eval(-1.0), Err(Error::Domain { .. })));
        // the s0 = 1 anchor where f = 0 is still evaluable
        assert_eq!(g.eval(1.0).unwrap().f0, 0.0);
        let cot = make_generator(GeneratorKind::Cot { c: 1.0 }).unwrap();
        assert!(cot.eval(0.0).is_err());
    }

    #[test]
    fn validation_examples() {
        let id = CustomGenerator::analytic("s", Interval::new(0.0, 10.0), |s| Jet3::new(s, 1.0, 0.0, 0.0));
        let r = validate_generator(&Generator::unchecked(GeneratorKind::Custom(id)).unwrap(), 100);
        assert!(r.passed);
        assert_eq!(r.f1_sign, 1);

        let sq = CustomGenerator::analytic("s^2", Interval::new(-1.0, 1.0), |s| Jet3::new(s * s, 2.0 * s, 2.0, 0.0));
        let sq = Generator::unchecked(GeneratorKind::Custom(sq)).unwrap();
        let r = validate_generator(&sq, 100);
        assert!(!r.passed);
        assert_eq!(r.f1_sign, 0);
        assert!(make_generator(sq.kind().clone()).is_err());

        let cot = make_generator(GeneratorKind::Cot { c: 1.0 }).unwrap();
        let r = validate_generator(&cot, 1024);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.f1_sign, 1);
        assert_eq!(r.f_sign, 1);
    }

    #[test]
    fn cot_grid_oracle() {
        // independent evaluation of −cot(s/2) and its derivative on the default domain
        let cot = make_generator(GeneratorKind::Cot { c: 1.0 }).unwrap();
        for i in 0..1024 {
            let s = PI + PI * (i as f64 + 0.5) / 1024.0;
            let f = -1.0 / (0.5 * s).tan();
            let fp = 0.5 / (0.5 * s).sin().powi(2);
            let j = cot.eval(s).unwrap();
            assert!(f > 0.0 && fp > 0.0);
            assert!((j.f0 - f).abs() < 1e-12 * f.abs().max(1.0));
            assert!((j.f1 - fp).abs() < 1e-12 * fp);
        }
    }

    #[test]
    fn tanlog_notes_removable_endpoint() {
        let g = make_generator(GeneratorKind::TanLog { b: 1.0 }).unwrap();
        let r = validate_generator(&g, 1024);
        assert!(r.passed);
        assert!(r.notes.iter().any(|n| n.contains("removable")), "{:?}", r.notes);
    }

    #[test]
    fn admissible_on_defaults() {
        for k in catalog_kinds() {
            let g = make_generator(k).unwrap();
            let r = validate_generator(&g, 1024);
            assert!(r.passed, "{}: {:?}", g.label(), r.notes);
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in catalog_kinds() {
            let g = make_generator(k).unwrap();
            let w = g.domain().sampling_window();
            // stay away from the ends where f or f' blow up
            let (lo, hi) = (w.lo + 0.1 * (w.hi - w.lo), w.hi - 0.1 * (w.hi - w.lo));
            let hi = if matches!(g.kind(), GeneratorKind::AiryRatio { .. }) {
                hi.min(lo + 4.0)
            } else {
                hi
            };
            for _ in 0..100 {
                let s = rng.gen_range(lo..hi);
                let j = g.eval(s).unwrap();
                let f = |t: f64| g.eval(t).map(|j| j.f0);
                let h = 1e-3 * s.abs().clamp(0.1, 1.0);
                let d1 = fd::d1_o4(f, s, h).unwrap();
                let d2 = fd::d2_o4(f, s, 4.0 * h).unwrap();
                let d3 = fd::d3_o4(f, s, 8.0 * h).unwrap();
                let scale = j.f0.abs() + j.f1.abs() + j.f2.abs() + j.f3.abs();
                assert!(
                    (d1 - j.f1).abs() < 1e-7 * scale,
                    "{} s={s}: f1 {d1} vs {}",
                    g.label(),
                    j.f1
                );
                assert!(
                    (d2 - j.f2).abs() < 1e-5 * scale,
                    "{} s={s}: f2 {d2} vs {}",
                    g.label(),
                    j.f2
                );
                assert!(
                    (d3 - j.f3).abs() < 1e-3 * scale,
                    "{} s={s}: f3 {d3} vs {}",
                    g.label(),
                    j.f3
                );
            }
        }
    }

    #[test]
    fn fd_jet_custom_is_flagged() {
        let g = make_generator(GeneratorKind::Custom(CustomGenerator::from_values(
            "sinh",
            Interval::new(0.5, 3.0),
            f64::sinh,
        )))
        .unwrap();
        assert!(g.is_fd_jet());
        let r = validate_generator(&g, 64);
        assert!(r.notes.iter().any(|n| n == "fd-jet"));
        let j = g.eval(1.0).unwrap();
        assert!((j.f1 - 1f64.cosh()).abs() < 1e-10);
        assert!((j.f3 - 1f64.cosh()).abs() < 1e-4);
        // sanity: the Schwarzian of the fd jet is close to the analytic one
        let exact = 1.0 - 1.5 * 1f64.tanh().powi(2);
        assert!((schwarzian_of_jet(&j).unwrap() - exact).abs() < 1e-4);
    }

    #[test]
    fn config_text_round_trip() {
        for k in catalog_kinds() {
            let text = k.to_string();
            let back: GeneratorKind = text.parse().unwrap();
            assert_eq!(back.to_string(), text);
        }
        let k: GeneratorKind = "kind=exp c=1.5".parse().unwrap();
        assert!(matches!(k, GeneratorKind::Exp { c } if c == 1.5));
        let k: GeneratorKind = "tanlog b=2".parse().unwrap();
        assert!(matches!(k, GeneratorKind::TanLog { b } if b == 2.0));
        assert!("exp".parse::<GeneratorKind>().is_err());
        assert!("wobble c=1".parse::<GeneratorKind>().is_err());
        assert!("exp c=abc".parse::<GeneratorKind>().is_err());
    }
}
