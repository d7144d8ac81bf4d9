//! Small numeric utilities: composite quadrature and a seedable generator
//! for deterministic probe points.

use crate::error::{numeric, Result};

/// Default panel count for composite Simpson quadrature.
pub const SIMPSON_PANELS: usize = 2048;

/// Composite Simpson rule with `n` panels (`n` is rounded up to even).
/// Returns an error when the integrand produces a non-finite value.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(numeric("quadrature endpoints must be finite and ordered"));
    }
    if hi == lo {
        return Ok(0.0);
    }
    let n = n.max(2) + n % 2;
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let x = lo + h * i as f64;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(x);
    }
    let value = acc * h / 3.0;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(numeric("quadrature produced a non-finite value"))
    }
}

/// Double-exponential (tanh-sinh) quadrature over `[lo, hi]`.
///
/// Nodes cluster toward the endpoints without ever touching them, so
/// integrands with integrable endpoint growth are handled as long as the
/// mass within one epsilon of an endpoint is negligible. Smooth integrands
/// converge to machine precision. Non-finite integrand values are errors.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(numeric("quadrature endpoints must be finite and ordered"));
    }
    if hi == lo {
        return Ok(0.0);
    }
    const STEP: f64 = 1.0 / 64.0;
    const U_MAX: f64 = 3.9;
    let kmax = (U_MAX / STEP) as i64;
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    let half_pi = core::f64::consts::FRAC_PI_2;
    let mut acc = 0.0;
    for k in -kmax..=kmax {
        let u = k as f64 * STEP;
        let t = half_pi * libm::sinh(u);
        let x = c + r * libm::tanh(t);
        let ch = libm::cosh(t);
        let w = STEP * r * half_pi * libm::cosh(u) / (ch * ch);
        // nodes that round onto an endpoint carry negligible weight
        if x <= lo || x >= hi || w == 0.0 {
            continue;
        }
        let v = f(x);
        if !v.is_finite() {
            return Err(numeric("quadrature produced a non-finite value"));
        }
        acc += w * v;
    }
    Ok(acc)
}

/// SplitMix64: tiny deterministic generator used for probe points and
/// synthetic tables. Not a statistical-quality source; stability across
/// runs and platforms is the point.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}
