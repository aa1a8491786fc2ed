//! Forced damped harmonic oscillator: `m x'' + c x' + k x = q cos(omega t)`.
//!
//! `x` is the deviation of a rating from its long-run mean, `q cos(omega t)`
//! models periodic demand. Closed-form solutions are exact per regime; the
//! RK4 integrator is the numerical cross-check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for regime boundaries (`c^2 = 4mk`, `omega = sqrt(k/m)`).
/// Exact float equality is meaningless there; a relative band keeps the
/// classification total and deterministic.
pub const REGIME_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum OscillatorError {
    #[error("invalid oscillator parameters: {0}")]
    InvalidParams(String),
    #[error("closed form is undefined at resonance (q != 0, c = 0, omega = sqrt(k/m))")]
    ResonantParams,
    #[error("resonant_form requires resonant parameters, got {0}")]
    NotResonant(Regime),
    #[error("invalid simulation request: {0}")]
    InvalidSimulation(String),
    #[error("non-finite state at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },
}

/// Full parameter set of the model, including initial conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    /// Inertia (mass-like), > 0.
    pub m: f64,
    /// Damping coefficient, >= 0.
    pub c: f64,
    /// Stiffness (restoring strength), > 0.
    pub k: f64,
    /// Forcing amplitude.
    pub q: f64,
    /// Forcing angular frequency, >= 0.
    pub omega: f64,
    /// Initial deviation x(0).
    pub x0: f64,
    /// Initial rate of change x'(0).
    pub v0: f64,
}

impl OscillatorParams {
    pub fn new(m: f64, c: f64, k: f64, q: f64, omega: f64, x0: f64, v0: f64) -> Result<Self, OscillatorError> {
        let p = Self { m, c, k, q, omega, x0, v0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), OscillatorError> {
        let bad = |msg: &str| Err(OscillatorError::InvalidParams(msg.to_string()));
        if !(self.m.is_finite() && self.m > 0.0) {
            return bad("m must be finite and > 0");
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return bad("k must be finite and > 0");
        }
        if !(self.c.is_finite() && self.c >= 0.0) {
            return bad("c must be finite and >= 0");
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return bad("omega must be finite and >= 0");
        }
        if !(self.q.is_finite() && self.x0.is_finite() && self.v0.is_finite()) {
            return bad("q, x0, v0 must be finite");
        }
        Ok(())
    }

    /// Natural angular frequency `sqrt(k/m)`.
    pub fn natural_frequency(&self) -> f64 {
        (self.k / self.m).sqrt()
    }
}

/// Homogeneous-solution regime. Exactly one per parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Undamped,
    Underdamped,
    CriticallyDamped,
    Overdamped,
    Resonant,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Undamped => "Undamped",
            Regime::Underdamped => "Underdamped",
            Regime::CriticallyDamped => "CriticallyDamped",
            Regime::Overdamped => "Overdamped",
            Regime::Resonant => "Resonant",
        };
        f.write_str(s)
    }
}

fn rel_close(a: f64, b: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= REGIME_REL_TOL * scale
}

/// Classify the regime of a parameter set.
///
/// Resonant means undamped forcing at the natural frequency; it shadows
/// Undamped because the particular solution changes form there.
pub fn classify(p: &OscillatorParams) -> Regime {
    let omega0 = p.natural_frequency();
    if p.c == 0.0 {
        if p.q != 0.0 && rel_close(p.omega, omega0) {
            return Regime::Resonant;
        }
        return Regime::Undamped;
    }
    let c2 = p.c * p.c;
    let four_mk = 4.0 * p.m * p.k;
    if rel_close(c2, four_mk) {
        Regime::CriticallyDamped
    } else if c2 < four_mk {
        Regime::Underdamped
    } else {
        Regime::Overdamped
    }
}

/// Particular solution `A cos(omega t) + B sin(omega t)` coefficients.
///
/// `A = q(k - m omega^2)/D`, `B = q c omega / D`,
/// `D = (k - m omega^2)^2 + (c omega)^2`.
fn particular_coefficients(p: &OscillatorParams) -> Option<(f64, f64)> {
    if p.q == 0.0 {
        return Some((0.0, 0.0));
    }
    let km = p.k - p.m * p.omega * p.omega;
    let co = p.c * p.omega;
    let d = km * km + co * co;
    if d == 0.0 {
        return None; // resonance: denominator vanishes
    }
    Some((p.q * km / d, p.q * co / d))
}

/// Exact solution `(x, v)` at time `t` for any non-resonant parameter set.
pub fn closed_form(p: &OscillatorParams, t: f64) -> Result<(f64, f64), OscillatorError> {
    p.validate()?;
    if classify(p) == Regime::Resonant {
        return Err(OscillatorError::ResonantParams);
    }
    let (a, b) = particular_coefficients(p).ok_or(OscillatorError::ResonantParams)?;
    let w = p.omega;
    // particular part and its derivative at 0 and at t
    let xp = a * (w * t).cos() + b * (w * t).sin();
    let vp = -a * w * (w * t).sin() + b * w * (w * t).cos();
    let xh0 = p.x0 - a;
    let vh0 = p.v0 - b * w;

    let gamma = p.c / (2.0 * p.m);
    let disc = p.c * p.c - 4.0 * p.m * p.k;
    let (xh, vh) = match classify(p) {
        Regime::Undamped => {
            let w0 = p.natural_frequency();
            let c1 = xh0;
            let c2 = vh0 / w0;
            let (s, co) = (w0 * t).sin_cos();
            (c1 * co + c2 * s, w0 * (-c1 * s + c2 * co))
        }
        Regime::Underdamped => {
            let wd = (-disc).sqrt() / (2.0 * p.m);
            let c1 = xh0;
            let c2 = (vh0 + gamma * c1) / wd;
            let e = (-gamma * t).exp();
            let (s, co) = (wd * t).sin_cos();
            let x = e * (c1 * co + c2 * s);
            let v = e * ((-gamma * c1 + wd * c2) * co + (-gamma * c2 - wd * c1) * s);
            (x, v)
        }
        Regime::CriticallyDamped => {
            let c1 = xh0;
            let c2 = vh0 + gamma * c1;
            let e = (-gamma * t).exp();
            let x = e * (c1 + c2 * t);
            let v = e * (c2 - gamma * (c1 + c2 * t));
            (x, v)
        }
        Regime::Overdamped => {
            let s = disc.sqrt();
            let r1 = (-p.c + s) / (2.0 * p.m);
            let r2 = (-p.c - s) / (2.0 * p.m);
            let c1 = (vh0 - r2 * xh0) / (r1 - r2);
            let c2 = xh0 - c1;
            let e1 = (r1 * t).exp();
            let e2 = (r2 * t).exp();
            (c1 * e1 + c2 * e2, c1 * r1 * e1 + c2 * r2 * e2)
        }
        Regime::Resonant => unreachable!("rejected above"),
    };
    Ok((xh + xp, vh + vp))
}

/// Exact solution at resonance: the particular part is
/// `(q / (2 sqrt(mk))) t sin(omega t)`, whose envelope grows linearly.
pub fn resonant_form(p: &OscillatorParams, t: f64) -> Result<(f64, f64), OscillatorError> {
    p.validate()?;
    let regime = classify(p);
    if regime != Regime::Resonant {
        return Err(OscillatorError::NotResonant(regime));
    }
    let w0 = p.natural_frequency();
    let amp = p.q / (2.0 * (p.m * p.k).sqrt());
    let (s, co) = (w0 * t).sin_cos();
    let xp = amp * t * s;
    let vp = amp * (s + w0 * t * co);
    // x_p(0) = 0 and v_p(0) = 0, so the homogeneous constants come straight
    // from the initial conditions.
    let c1 = p.x0;
    let c2 = p.v0 / w0;
    let xh = c1 * co + c2 * s;
    let vh = w0 * (-c1 * s + c2 * co);
    Ok((xh + xp, vh + vp))
}

/// Exact solution dispatching on the regime.
pub fn solution(p: &OscillatorParams, t: f64) -> Result<(f64, f64), OscillatorError> {
    if classify(p) == Regime::Resonant {
        resonant_form(p, t)
    } else {
        closed_form(p, t)
    }
}

/// Long-run oscillation amplitude `q / sqrt((k - m omega^2)^2 + (c omega)^2)`.
pub fn steady_state_amplitude(p: &OscillatorParams) -> Result<f64, OscillatorError> {
    p.validate()?;
    let km = p.k - p.m * p.omega * p.omega;
    let co = p.c * p.omega;
    let d = km * km + co * co;
    if d == 0.0 {
        return Err(OscillatorError::ResonantParams);
    }
    Ok(p.q.abs() / d.sqrt())
}

/// One `(t, x, v)` sample of a simulated trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub v: f64,
}

/// Fixed-step trajectory; `samples[i].t == i * step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step: f64,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    /// CSV with full double precision so trajectories round-trip exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 64);
        out.push_str("t,x,v\n");
        for s in &self.samples {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.t, s.x, s.v));
        }
        out
    }

    pub fn max_abs_x(&self) -> f64 {
        self.samples.iter().map(|s| s.x.abs()).fold(0.0, f64::max)
    }
}

/// Classical fourth-order Runge-Kutta on the first-order system
/// `x' = v`, `v' = (q cos(omega t) - c v - k x) / m`.
///
/// Emits a warning when `h * sqrt(k/m) >= 0.5`; accuracy degrades well
/// before stability is lost.
pub fn simulate_rk4(p: &OscillatorParams, t_end: f64, h: f64) -> Result<Trajectory, OscillatorError> {
    p.validate()?;
    if !(h.is_finite() && h > 0.0) {
        return Err(OscillatorError::InvalidSimulation("step must be > 0".into()));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(OscillatorError::InvalidSimulation("t_end must be > 0".into()));
    }
    if h > t_end {
        return Err(OscillatorError::InvalidSimulation("step must not exceed t_end".into()));
    }
    if h * p.natural_frequency() >= 0.5 {
        log::warn!(
            "step {h} is coarse for natural frequency {:.3}; results may be inaccurate",
            p.natural_frequency()
        );
    }

    let n_steps = (t_end / h).round().max(1.0) as usize;
    let accel = |t: f64, x: f64, v: f64| (p.q * (p.omega * t).cos() - p.c * v - p.k * x) / p.m;

    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut x = p.x0;
    let mut v = p.v0;
    samples.push(TrajectorySample { t: 0.0, x, v });
    for i in 0..n_steps {
        let t = i as f64 * h;
        let k1x = v;
        let k1v = accel(t, x, v);
        let k2x = v + 0.5 * h * k1v;
        let k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
        let k3x = v + 0.5 * h * k2v;
        let k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
        let k4x = v + h * k3v;
        let k4v = accel(t + h, x + h * k3x, v + h * k3v);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        let t_next = (i + 1) as f64 * h;
        if !x.is_finite() || !v.is_finite() {
            return Err(OscillatorError::NonFinite { step: i + 1, t: t_next });
        }
        samples.push(TrajectorySample { t: t_next, x, v });
    }
    Ok(Trajectory { step: h, samples })
}
