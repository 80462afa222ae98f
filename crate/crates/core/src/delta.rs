//! The oscillatory remainder `Δ(x) = f(x) − g(x)`.
//!
//! Three evaluation routes are provided:
//!
//! * `delta_oracle`: the literal difference `f − g`. It loses digits to
//!   cancellation as `x → 1`.
//! * `delta_of_x`: the harmonic expansion
//!   `Δ(x) = (1 / (log a · u)) Σ_{k≠0} Γ(1 + iθ_k) u^{−iθ_k}`, `u = log(1/x)`,
//!   `θ_k = 2πk / log a`. It has no cancellation.
//! * `delta0`: the same expansion with `u` replaced by `w = 1 − x`. Since the
//!   expansion only depends on `x` through `u`, `delta_of_x(x)` is literally
//!   `delta0(log(1/x))`.
//!
//! The `k` and `−k` terms are complex conjugates, so the sum is accumulated as
//! twice the real part over `k ≥ 1`.

use std::f64::consts::PI;

use crate::complexfn::{characters, GammaCharacter};
use crate::error::{domain, Result};
use crate::series::{check_unit_interval, f_bilateral, g_ref, SeriesParams};

/// Sign of the harmonic sum relative to `f − g`. Fixed by comparison with the
/// oracle at `x = 0.5`, `a = 2` (see `sign_matches_oracle`).
const GAMMA_SUM_SIGN: f64 = 1.0;

/// Below this distance to 1 the oracle has fewer than ~8 correct digits
/// relative to the oscillation amplitude.
pub const ORACLE_MIN_W: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Oracle,
    GammaSum,
    Delta0AtW,
    Dominant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderSample {
    pub x: f64,
    /// `log(1/x)`
    pub u: f64,
    /// `1 − x`
    pub w: f64,
    pub delta: f64,
    pub route: Route,
}

impl RemainderSample {
    /// True when an oracle sample sits inside the cancellation zone.
    pub fn is_degraded(&self) -> bool {
        self.route == Route::Oracle && self.w < ORACLE_MIN_W
    }
}

/// Coefficients of the dominant sinusoid `(b / w)·cos(θ₁ ln w + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominantParams {
    pub b: f64,
    pub phi: f64,
    pub theta_1: f64,
}

fn character_set(params: &SeriesParams) -> Result<std::sync::Arc<[GammaCharacter]>> {
    params.validate()?;
    characters(params.a, params.eps_term, params.k_max)
}

fn harmonic_sum(log_u: f64, chars: &[GammaCharacter]) -> f64 {
    let sum: f64 = chars
        .iter()
        .map(|c| c.modulus * (c.phase - c.theta_k * log_u).cos())
        .sum();
    2.0 * sum
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return domain(format!("{name} must be finite and > 0, got {v}"));
    }
    Ok(())
}

/// `2 Σ_{k≥1} Re[Γ(1 + iθ_k) e^{−iθ_k ln u}]`.
pub fn r_sum(u: f64, params: &SeriesParams) -> Result<f64> {
    check_positive("u", u)?;
    let chars = character_set(params)?;
    Ok(harmonic_sum(u.ln(), &chars))
}

/// `r_sum` at `u = e^{log_u}` without leaving log coordinates.
pub(crate) fn r_sum_at_log(log_u: f64, params: &SeriesParams) -> Result<f64> {
    if !log_u.is_finite() {
        return domain(format!("log u must be finite, got {log_u}"));
    }
    let chars = character_set(params)?;
    Ok(harmonic_sum(log_u, &chars))
}

pub(crate) fn delta0_partial(w: f64, params: &SeriesParams, harmonics: usize) -> Result<f64> {
    check_positive("w", w)?;
    let chars = character_set(params)?;
    let n = harmonics.min(chars.len());
    Ok(GAMMA_SUM_SIGN * harmonic_sum(w.ln(), &chars[..n]) / (params.ln_a() * w))
}

/// Self-similar approximant `Δ₀` at `w = 1 − x`. Any `w > 0` is accepted.
pub fn delta0(w: f64, params: &SeriesParams) -> Result<f64> {
    delta0_partial(w, params, usize::MAX)
}

/// `Δ(x)` through the harmonic expansion, i.e. `delta0(log(1/x))`.
pub fn delta_of_x(x: f64, params: &SeriesParams) -> Result<f64> {
    check_unit_interval(x)?;
    delta0(-x.ln(), params)
}

/// `Δ(x)` as the literal difference `f(x) − g(x)`.
pub fn delta_oracle(x: f64, params: &SeriesParams) -> Result<f64> {
    let f = f_bilateral(x, params)?;
    let g = g_ref(x, params.a)?;
    Ok(f - g)
}

/// Rough absolute rounding noise of `delta_oracle` at `x`.
pub fn oracle_noise_floor(x: f64, params: &SeriesParams) -> Result<f64> {
    Ok(16.0 * f64::EPSILON * g_ref(x, params.a)?)
}

/// `2 Σ |Γ(1 + iθ_k)| / (log a · w)`, a bound on `|delta0(w)|`.
pub fn harmonic_envelope(w: f64, params: &SeriesParams) -> Result<f64> {
    check_positive("w", w)?;
    let chars = character_set(params)?;
    let total: f64 = chars.iter().map(|c| c.modulus).sum();
    Ok(2.0 * total / (params.ln_a() * w))
}

/// Bound on `|delta0 − delta0_dominant|` at `w`, from the `k ≥ 2` moduli.
pub fn dominant_tail_bound(w: f64, params: &SeriesParams) -> Result<f64> {
    check_positive("w", w)?;
    let chars = character_set(params)?;
    let tail: f64 = chars.iter().skip(1).map(|c| c.modulus).sum();
    Ok(2.0 * tail / (params.ln_a() * w))
}

pub fn dominant_params(a: f64) -> Result<DominantParams> {
    let ch = crate::complexfn::gamma_character(a, 1)?;
    Ok(DominantParams {
        b: 2.0 * ch.modulus / a.ln(),
        phi: -ch.phase,
        theta_1: 2.0 * PI / a.ln(),
    })
}

/// The `k = ±1` truncation of `delta0`, written as a single cosine.
pub fn delta0_dominant(w: f64, params: &SeriesParams) -> Result<f64> {
    check_positive("w", w)?;
    params.validate()?;
    let d = dominant_params(params.a)?;
    Ok(GAMMA_SUM_SIGN * d.b / w * (d.theta_1 * w.ln() + d.phi).cos())
}

/// Evaluate `Δ` at `x` by one of the routes.
pub fn sample(x: f64, route: Route, params: &SeriesParams) -> Result<RemainderSample> {
    check_unit_interval(x)?;
    let u = -x.ln();
    let w = 1.0 - x;
    let delta = match route {
        Route::Oracle => delta_oracle(x, params)?,
        Route::GammaSum => delta0(u, params)?,
        Route::Delta0AtW => delta0(w, params)?,
        Route::Dominant => delta0_dominant(w, params)?,
    };
    Ok(RemainderSample {
        x,
        u,
        w,
        delta,
        route,
    })
}
