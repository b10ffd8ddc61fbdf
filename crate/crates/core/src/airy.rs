//! Real Airy functions Ai, Bi and their derivatives, and the null curve
//! whose torsion is proportional to the pseudo-arc parameter.
//!
//! Evaluation strategy:
//!
//! * `|x| >= 10`: the standard asymptotic expansions (exponential on the
//!   right, oscillatory on the left). At `|x| = 10` the smallest term of
//!   the expansion is below 1e-17 relative.
//! * `|x| < 10`: Taylor expansion of the solution of `y'' = x y` about the
//!   nearest node of a table spaced 0.5 apart. Node values come from the
//!   exact constants at the origin, continued along the table with the same
//!   Taylor step. Every continuation runs in the numerically stable
//!   direction: Ai for `x > 0` is carried from the asymptotic value at
//!   `x = 10` toward the origin, Bi for `x > 0` away from it, and both
//!   functions for `x < 0` leftward from the origin through the
//!   oscillatory region.
//!
//! The plain Maclaurin series would lose the subdominant Ai to
//! cancellation for positive arguments already around `x ≈ 3`.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fd;
use crate::generator::{make_generator, Generator, GeneratorKind, Interval};
use crate::minkowski::Vec3;
use crate::schwarzian::Jet3;
use crate::special::{GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};

/// Largest |x| accepted; Bi(25) ≈ 1e33 and Ai(25) ≈ 1e-37 keep every
/// derived quantity of the generator inside double range.
pub const AIRY_LIMIT: f64 = 25.0;

/// Largest (least negative) zero of Ai.
pub const AI_FIRST_ZERO: f64 = -2.338_107_410_459_767;
/// Largest (least negative) zero of Bi.
pub const BI_FIRST_ZERO: f64 = -1.173_713_222_709_128;

const ASYMPTOTIC_FROM: f64 = 10.0;
const NODE_SPACING: f64 = 0.5;
const NODES_PER_SIDE: usize = 20;

/// Ai(0) = 3^{-2/3}/Γ(2/3).
pub fn ai_at_zero() -> f64 {
    3f64.powf(-2.0 / 3.0) / GAMMA_TWO_THIRDS
}

/// Ai′(0) = −3^{-1/3}/Γ(1/3).
pub fn aip_at_zero() -> f64 {
    -(3f64.powf(-1.0 / 3.0)) / GAMMA_ONE_THIRD
}

/// Ai, Bi, Ai′, Bi′ at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryEval {
    pub ai: f64,
    pub bi: f64,
    pub aip: f64,
    pub bip: f64,
}

impl AiryEval {
    /// Ai·Bi′ − Ai′·Bi, identically 1/π.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bip - self.aip * self.bi
    }
}

/// Evaluates Ai, Bi and their derivatives at `x`, `|x| <= 25`.
pub fn airy_eval(x: f64) -> Result<AiryEval> {
    if !x.is_finite() || x.abs() > AIRY_LIMIT {
        return Err(Error::OverflowRange { x, limit: AIRY_LIMIT });
    }
    if x >= ASYMPTOTIC_FROM {
        return Ok(asymptotic_positive(x));
    }
    if x <= -ASYMPTOTIC_FROM {
        return Ok(asymptotic_negative(-x));
    }
    let k = (x / NODE_SPACING).round();
    let x0 = k * NODE_SPACING;
    let node = &node_table()[(k as i64 + NODES_PER_SIDE as i64) as usize];
    let t = x - x0;
    let (ai, aip) = taylor_step(x0, node.ai, node.aip, t);
    let (bi, bip) = taylor_step(x0, node.bi, node.bip, t);
    Ok(AiryEval { ai, bi, aip, bip })
}

/// Advances a solution of y″ = x y from `x0` by `t`, returning (y, y′).
fn taylor_step(x0: f64, y0: f64, y1: f64, t: f64) -> (f64, f64) {
    if t == 0.0 {
        return (y0, y1);
    }
    // a_{n+2} = (x0 a_n + a_{n-1}) / ((n+1)(n+2))
    let (mut a_prev, mut a_cur, mut a_next) = (0.0, y0, y1);
    let mut y = y0 + y1 * t;
    let mut dy = y1;
    let mut tn = t; // t^{n} for the coefficient a_{n+1}... kept in step below
    let mut quiet = 0;
    for n in 1..120usize {
        // a_cur = a_{n-1}, a_next = a_n; compute a_{n+1}
        let nf = n as f64;
        let a_new = (x0 * a_cur + a_prev) / (nf * (nf + 1.0));
        // term for a_{n+1}: t^{n+1}, derivative term (n+1) a_{n+1} t^n
        let dterm = (nf + 1.0) * a_new * tn;
        tn *= t;
        let term = a_new * tn;
        y += term;
        dy += dterm;
        if term.abs() <= 1e-18 * y.abs() && dterm.abs() <= 1e-18 * dy.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        a_prev = a_cur;
        a_cur = a_next;
        a_next = a_new;
    }
    (y, dy)
}

fn node_table() -> &'static [AiryEval] {
    static TABLE: OnceLock<Vec<AiryEval>> = OnceLock::new();
    TABLE.get_or_init(build_node_table)
}

fn build_node_table() -> Vec<AiryEval> {
    let m = NODES_PER_SIDE;
    let mut nodes = vec![
        AiryEval {
            ai: 0.0,
            bi: 0.0,
            aip: 0.0,
            bip: 0.0
        };
        2 * m + 1
    ];
    let ai0 = ai_at_zero();
    let aip0 = aip_at_zero();
    let sqrt3 = 3f64.sqrt();
    nodes[m] = AiryEval {
        ai: ai0,
        aip: aip0,
        bi: sqrt3 * ai0,
        bip: -sqrt3 * aip0,
    };
    let h = NODE_SPACING;
    // leftward through the oscillatory region
    for i in (0..m).rev() {
        let x0 = (i as f64 + 1.0 - m as f64) * h;
        let prev = nodes[i + 1];
        let (ai, aip) = taylor_step(x0, prev.ai, prev.aip, -h);
        let (bi, bip) = taylor_step(x0, prev.bi, prev.bip, -h);
        nodes[i] = AiryEval { ai, bi, aip, bip };
    }
    // Bi grows to the right
    for i in m + 1..=2 * m {
        let x0 = (i as f64 - 1.0 - m as f64) * h;
        let prev = nodes[i - 1];
        let (bi, bip) = taylor_step(x0, prev.bi, prev.bip, h);
        nodes[i].bi = bi;
        nodes[i].bip = bip;
    }
    // Ai decays to the right, so carry it inward from the asymptotic end
    let far = asymptotic_positive(m as f64 * h);
    nodes[2 * m].ai = far.ai;
    nodes[2 * m].aip = far.aip;
    for i in (m + 1..2 * m).rev() {
        let x0 = (i as f64 + 1.0 - m as f64) * h;
        let next = nodes[i + 1];
        let (ai, aip) = taylor_step(x0, next.ai, next.aip, -h);
        nodes[i].ai = ai;
        nodes[i].aip = aip;
    }
    nodes
}

/// Coefficients u_k, v_k of the asymptotic expansions.
fn asymptotic_coeffs() -> &'static ([f64; 40], [f64; 40]) {
    static COEFFS: OnceLock<([f64; 40], [f64; 40])> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut u = [0.0; 40];
        let mut v = [0.0; 40];
        u[0] = 1.0;
        v[0] = 1.0;
        for k in 1..40 {
            let kf = k as f64;
            u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
        }
        (u, v)
    })
}

/// Sums Σ sign^k c_k ζ^{-k} over the indices `start, start+step, ...`,
/// stopping at the smallest term.
fn asymptotic_sum(c: &[f64; 40], zeta: f64, start: usize, step: usize, alternate: bool) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for (j, k) in (start..40).step_by(step).enumerate() {
        let sign = if alternate && j % 2 == 1 { -1.0 } else { 1.0 };
        let term = c[k] * zeta.powi(-(k as i32));
        if term.abs() > last {
            break;
        }
        sum += sign * term;
        last = term.abs();
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn asymptotic_positive(x: f64) -> AiryEval {
    let (u, v) = asymptotic_coeffs();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let q = x.powf(0.25);
    let sp = PI.sqrt();
    // alternating sums for Ai, plain sums for Bi
    let ua = asymptotic_sum(u, zeta, 0, 1, true);
    let va = asymptotic_sum(v, zeta, 0, 1, true);
    let ub = asymptotic_sum(u, zeta, 0, 1, false);
    let vb = asymptotic_sum(v, zeta, 0, 1, false);
    let decay = (-zeta).exp();
    let growth = zeta.exp();
    AiryEval {
        ai: decay / (2.0 * sp * q) * ua,
        aip: -q * decay / (2.0 * sp) * va,
        bi: growth / (sp * q) * ub,
        bip: q * growth / sp * vb,
    }
}

fn asymptotic_negative(z: f64) -> AiryEval {
    let (u, v) = asymptotic_coeffs();
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let q = z.powf(0.25);
    let sp = PI.sqrt();
    let u_even = asymptotic_sum(u, zeta, 0, 2, true);
    let u_odd = asymptotic_sum(u, zeta, 1, 2, true);
    let v_even = asymptotic_sum(v, zeta, 0, 2, true);
    let v_odd = asymptotic_sum(v, zeta, 1, 2, true);
    let (sn, cs) = (zeta - FRAC_PI_4).sin_cos();
    AiryEval {
        ai: (cs * u_even + sn * u_odd) / (sp * q),
        aip: q / sp * (sn * v_even - cs * v_odd),
        bi: (-sn * u_even + cs * u_odd) / (sp * q),
        bip: q / sp * (cs * v_even + sn * v_odd),
    }
}

/// Residual of y″ = x y for Ai and Bi, with y″ taken by a 5-point O(h⁴)
/// central difference of the evaluated values (the ODE itself is not used).
/// Each residual is divided by max(1, |y|) and the larger one is returned;
/// for Ai, which never exceeds 0.54 in magnitude, this is the absolute
/// residual. Roundoff is about 5u·max(1,|y|)/h².
pub fn airy_ode_residual(x: f64, h: f64) -> Result<f64> {
    let ai = |t: f64| airy_eval(t).map(|e| e.ai);
    let bi = |t: f64| airy_eval(t).map(|e| e.bi);
    let e = airy_eval(x)?;
    let ai2 = fd::d2_o4(ai, x, h)?;
    let bi2 = fd::d2_o4(bi, x, h)?;
    let ra = (ai2 - x * e.ai).abs() / e.ai.abs().max(1.0);
    let rb = (bi2 - x * e.bi).abs() / e.bi.abs().max(1.0);
    Ok(ra.max(rb))
}

/// The parameter λ ≠ 0 together with its real cube root μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AirySpec {
    lambda: f64,
    mu: f64,
}

impl AirySpec {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda == 0.0 {
            return Err(Error::invalid(
                "airy",
                format!("lambda must be finite and nonzero, got {lambda}"),
            ));
        }
        Ok(AirySpec {
            lambda,
            mu: lambda.cbrt(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Maps an interval of the Airy argument x = μs to the s-line.
    pub(crate) fn s_interval(&self, x_lo: f64, x_hi: f64) -> Interval {
        let (a, b) = (x_lo / self.mu, x_hi / self.mu);
        Interval::new(a.min(b), a.max(b))
    }

    /// Zero-free component of Ai(μs)·Bi(μs) containing s = 0, capped at the
    /// evaluation limit.
    pub fn domain(&self) -> Interval {
        self.s_interval(BI_FIRST_ZERO, AIRY_LIMIT)
    }

    /// Interval containing s = 0 on which Ai(μs) ≠ 0, i.e. where the jet is
    /// finite even though f itself may vanish.
    pub fn support(&self) -> Interval {
        self.s_interval(AI_FIRST_ZERO, AIRY_LIMIT)
    }

    /// The anchor α(0) that makes the closed-form curve start where the
    /// antiderivatives vanish.
    pub fn anchor(&self) -> Vec3 {
        let mu = self.mu;
        let k = 1.0 / (2.0 * 9f64.cbrt() * mu.powi(3) * GAMMA_ONE_THIRD * GAMMA_ONE_THIRD);
        let pi2 = PI * PI;
        Vec3::new(
            k * 2.0 * 3f64.sqrt() * mu * PI,
            k * (mu * mu - 3.0 * pi2),
            k * (-mu * mu - 3.0 * pi2),
        )
    }
}

/// 3-jet of f(s) = (π/μ)·Bi(μs)/Ai(μs), using f′ = 1/Ai², f″ = −2μAi′/Ai³
/// and f‴ = (6μ²Ai′² − 2μ²(μs)Ai²)/Ai⁴.
pub fn airy_jet(spec: &AirySpec, s: f64) -> Result<Jet3> {
    let mu = spec.mu;
    let x = mu * s;
    let e = airy_eval(x)?;
    if e.ai == 0.0 {
        return Err(Error::domain("airy generator (Ai(mu s) = 0)", s));
    }
    let inv = 1.0 / e.ai;
    let inv2 = inv * inv;
    let mu2 = mu * mu;
    Ok(Jet3 {
        f0: PI / mu * e.bi * inv,
        f1: inv2,
        f2: -2.0 * mu * e.aip * inv2 * inv,
        f3: (6.0 * mu2 * e.aip * e.aip - 2.0 * mu2 * x * e.ai * e.ai) * inv2 * inv2,
    })
}

/// The generator f = (π/μ)·Bi(μs)/Ai(μs) whose curve has τ = −2λs.
pub fn airy_generator(spec: &AirySpec) -> Result<Generator> {
    make_generator(GeneratorKind::AiryRatio { lambda: spec.lambda })
}

/// Closed-form position of the curve generated by [`airy_generator`] with
/// ε = 1, anchored at [`AirySpec::anchor`].
pub fn airy_curve_closed_form(spec: &AirySpec, s: f64) -> Result<Vec3> {
    if !spec.support().contains_closed(s) {
        return Err(Error::domain("airy closed form", s));
    }
    let mu = spec.mu;
    let x = mu * s;
    let e = airy_eval(x)?;
    let pi2 = PI * PI;
    let mu2 = mu * mu;
    let mu3 = mu2 * mu;
    let bi_part = pi2 * (x * e.bi * e.bi - e.bip * e.bip);
    let ai_part = mu3 * s * e.ai * e.ai - mu2 * e.aip * e.aip;
    Ok(Vec3::new(
        PI / mu2 * (x * e.ai * e.bi - e.aip * e.bip),
        (bi_part - ai_part) / (2.0 * mu3),
        (bi_part + ai_part) / (2.0 * mu3),
    ))
}
