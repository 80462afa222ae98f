//! The bilateral series `f(x) = Σ_{n∈Z} aⁿ x^(aⁿ)` and its smooth part
//! `g(x) = 1 / (log a · log(1/x))`, both on real `0 < x < 1`.

use crate::complexfn::DEFAULT_K_MAX;
use crate::error::{domain, Error, Result};

pub const DEFAULT_EPS_TERM: f64 = 1e-18;

/// Hard cap on the number of terms summed in either direction.
const MAX_TERMS: i32 = 1_000_000;

/// Base of the series together with its truncation controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    pub a: f64,
    /// Relative truncation threshold for series terms and the absolute
    /// cutoff for gamma character moduli.
    pub eps_term: f64,
    /// Maximum harmonic index in the gamma-character sums.
    pub k_max: usize,
}

impl SeriesParams {
    pub fn new(a: f64) -> Result<Self> {
        Self::with_limits(a, DEFAULT_EPS_TERM, DEFAULT_K_MAX)
    }

    pub fn with_limits(a: f64, eps_term: f64, k_max: usize) -> Result<Self> {
        let p = SeriesParams { a, eps_term, k_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 1.0) || !self.a.is_finite() {
            return domain(format!("base a must be finite and > 1, got {}", self.a));
        }
        if !(self.eps_term > 0.0 && self.eps_term < 1e-6) {
            return domain(format!(
                "eps_term must lie in (0, 1e-6), got {}",
                self.eps_term
            ));
        }
        if self.k_max < 1 {
            return domain("k_max must be >= 1");
        }
        Ok(())
    }

    pub fn ln_a(&self) -> f64 {
        self.a.ln()
    }
}

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("x must lie in (0, 1), got {x}"));
    }
    Ok(())
}

/// Neumaier's compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `Σ aⁿ exp(−aⁿ u)` for `u = log(1/x) > 0`.
pub(crate) fn f_of_u(u: f64, params: &SeriesParams) -> Result<f64> {
    let a = params.a;
    let eps = params.eps_term;
    let mut terms: Vec<f64> = Vec::with_capacity(128);
    let mut acc = 0.0;

    // n >= 0: terms rise to a peak near aⁿu ≈ 1, then collapse. Stop once
    // the successive ratio a·exp(−(a−1)aⁿu) is at most 1/2 (the ratios only
    // shrink from there) and the geometric tail bound is negligible.
    let mut n = 0;
    loop {
        if n > MAX_TERMS {
            return Err(Error::NonConvergence {
                iterations: n as usize,
            });
        }
        let p = a.powi(n);
        let t = p * (-p * u).exp();
        terms.push(t);
        acc += t;
        let ratio = a * (-(a - 1.0) * p * u).exp();
        if ratio <= 0.5 && t / (1.0 - ratio) <= eps * acc {
            break;
        }
        n += 1;
    }

    // n < 0: term n is at most aⁿ and the rest of the tail at most aⁿ/(a−1).
    let mut n = -1;
    loop {
        if -n > MAX_TERMS {
            return Err(Error::NonConvergence {
                iterations: (-n) as usize,
            });
        }
        let p = a.powi(n);
        let t = p * (-p * u).exp();
        terms.push(t);
        acc += t;
        if p / (a - 1.0) <= eps * acc {
            break;
        }
        n -= 1;
    }

    terms.sort_by(f64::total_cmp);
    Ok(compensated_sum(terms))
}

/// The bilateral series `Σ_{n∈Z} aⁿ x^(aⁿ)`.
pub fn f_bilateral(x: f64, params: &SeriesParams) -> Result<f64> {
    params.validate()?;
    check_unit_interval(x)?;
    f_of_u(-x.ln(), params)
}

/// `1 / (log a · log(1/x))`.
pub fn g_ref(x: f64, a: f64) -> Result<f64> {
    if !(a > 1.0) || !a.is_finite() {
        return domain(format!("base a must be finite and > 1, got {a}"));
    }
    check_unit_interval(x)?;
    Ok(1.0 / (a.ln() * -x.ln()))
}
