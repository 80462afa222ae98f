//! Complex log-gamma on the half plane `Re z >= 1/2` and the gamma
//! characters `Γ(1 + 2kπi / log a)` that weight each harmonic of the
//! oscillatory remainder.
//!
//! `log_gamma` shifts the argument to `|z| >= 15` with the recurrence
//! `Γ(z + 1) = z Γ(z)` and then sums the Stirling series with ten
//! Bernoulli terms. Summing principal logarithms of the shift factors keeps
//! the result on the branch that is continuous along `Re z = 1` and vanishes
//! at `z = 1`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

pub type ComplexValue = Complex64;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Radius beyond which the Stirling series is summed directly.
const STIRLING_RADIUS: f64 = 15.0;

/// `B_{2m} / (2m (2m - 1))` for m = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Harmonic cap used when no explicit cap is supplied.
pub const DEFAULT_K_MAX: usize = 1024;

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series * inv
}

/// Natural logarithm of Γ(z) for `Re z >= 0.5`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return domain(format!("log_gamma argument must be finite, got {z}"));
    }
    if z.re < 0.5 {
        return domain(format!("log_gamma needs Re z >= 0.5, got {z}"));
    }

    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.norm() < STIRLING_RADIUS {
        correction += shifted.ln();
        shifted += 1.0;
    }
    let value = stirling(shifted) - correction;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow(format!("log_gamma({z}) is not finite")));
    }
    Ok(value)
}

/// Exact modulus `|Γ(1 + iy)| = sqrt(πy / sinh(πy))`.
pub fn gamma_modulus_exact(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return domain(format!("gamma_modulus_exact needs y > 0, got {y}"));
    }
    let py = PI * y;
    let sh = py.sinh();
    if !sh.is_finite() {
        return Err(Error::Overflow(format!("sinh(pi * {y}) overflows")));
    }
    Ok((py / sh).sqrt())
}

/// Reduce an angle to the principal interval (−π, π].
pub fn principal_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = theta - two_pi * (theta / two_pi).round();
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

/// The value `Γ(1 + i θ_k)` with `θ_k = 2kπ / log a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaCharacter {
    pub k: u32,
    pub theta_k: f64,
    pub value: ComplexValue,
    pub modulus: f64,
    /// Principal argument in (−π, π].
    pub phase: f64,
    /// `log Γ(1 + i θ_k)` on the continuous branch; its imaginary part is
    /// the unreduced argument.
    pub log_value: ComplexValue,
}

fn check_base(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return domain(format!("base a must be finite and > 1, got {a}"));
    }
    Ok(())
}

pub fn gamma_character(a: f64, k: u32) -> Result<GammaCharacter> {
    check_base(a)?;
    if k < 1 {
        return domain("harmonic index k must be >= 1");
    }
    let theta_k = 2.0 * PI * f64::from(k) / a.ln();
    let log_value = log_gamma(Complex64::new(1.0, theta_k))?;
    let modulus = log_value.re.exp();
    let phase = principal_angle(log_value.im);
    Ok(GammaCharacter {
        k,
        theta_k,
        value: Complex64::from_polar(modulus, phase),
        modulus,
        phase,
        log_value,
    })
}

type CacheKey = (u64, u64, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<[GammaCharacter]>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<[GammaCharacter]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Characters `k = 1, 2, ...` for base `a`, stopping before the first `k >= 2`
/// whose modulus is below `cutoff` or once `k > k_max`. The `k = 1` character
/// is always present. Results are memoized per `(a, cutoff, k_max)`.
pub fn characters(a: f64, cutoff: f64, k_max: usize) -> Result<Arc<[GammaCharacter]>> {
    check_base(a)?;
    let key = (a.to_bits(), cutoff.to_bits(), k_max);
    if let Some(set) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(set));
    }

    let mut set = Vec::new();
    for k in 1..=k_max.max(1) {
        let k = u32::try_from(k).map_err(|_| Error::Domain("k_max too large".into()))?;
        let c = gamma_character(a, k)?;
        if k > 1 && c.modulus < cutoff {
            break;
        }
        set.push(c);
    }
    let set: Arc<[GammaCharacter]> = set.into();
    let mut map = cache().write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(map.entry(key).or_insert(set)))
}
