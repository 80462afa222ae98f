//! Zeroes of `Δ₀` and `Δ`.
//!
//! Root finding runs in `s = ln(1 − x)`, where the dominant harmonic has
//! zeroes spaced exactly `(log a)/2` apart. A zero of `Δ₀` at `w₀` is mapped
//! to the zero of `Δ` at `x = e^{−w₀}` because `Δ(x) = Δ₀(log(1/x))`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::complexfn::gamma_character;
use crate::delta::{delta_oracle, oracle_noise_floor, r_sum_at_log};
use crate::error::{domain, Error, Result};
use crate::roots::brent;
use crate::series::{check_unit_interval, SeriesParams};

/// Bracket width target in `s` for `Δ₀` zeroes.
const S_TOL: f64 = 0.5e-14;

/// Bracket width target in `x` for the oracle route.
const X_TOL: f64 = 1e-12;

/// Smallest `1 − x` the oracle route accepts.
pub const DIRECT_MIN_W: f64 = 1e-5;

/// Below this `w` a zero is only meaningful in `w`/`s` form.
pub const DISPLAY_MIN_W: f64 = 1e-12;

/// Grid cells used when scanning the fundamental window.
const SCAN_CELLS: usize = 256;

/// Seed half-width as a fraction of the zero spacing.
const SEED_HALF_WIDTH: f64 = 0.2;

pub const MAX_TABLE_ROWS: usize = 200;

/// A point near `x = 1` stored as its distance `w = 1 − x` and `s = ln w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLocation {
    pub w: f64,
    pub s: f64,
}

impl ZeroLocation {
    pub fn from_w(w: f64) -> Result<Self> {
        if !(w > 0.0) || !w.is_finite() {
            return domain(format!("w must be finite and > 0, got {w}"));
        }
        Ok(ZeroLocation { w, s: w.ln() })
    }

    pub fn from_s(s: f64) -> Result<Self> {
        let w = s.exp();
        if !s.is_finite() || w == 0.0 || !w.is_finite() {
            return domain(format!("s = {s} does not give a representable w"));
        }
        Ok(ZeroLocation { w, s })
    }

    /// `1 − w`; for display only.
    pub fn x(&self) -> f64 {
        1.0 - self.w
    }
}

/// One row of the zero table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTableRow {
    pub n: usize,
    /// Zero of `Δ`.
    pub delta: ZeroLocation,
    /// Zero of `Δ₀`, refined against the full harmonic sum.
    pub delta0: ZeroLocation,
    /// The unrefined ladder value `w₀·a^{−n/2}`.
    pub delta0_ladder: ZeroLocation,
    /// `|(x_delta − x_delta0) / (1 − x_delta)|`
    pub rel_err: f64,
}

impl ZeroTableRow {
    pub fn x_delta(&self) -> Option<f64> {
        (self.delta.w >= DISPLAY_MIN_W).then(|| self.delta.x())
    }

    pub fn x_delta0(&self) -> Option<f64> {
        (self.delta0.w >= DISPLAY_MIN_W).then(|| self.delta0.x())
    }

    pub fn x_delta0_ladder(&self) -> Option<f64> {
        (self.delta0_ladder.w >= DISPLAY_MIN_W).then(|| self.delta0_ladder.x())
    }
}

fn half_period(a: f64) -> f64 {
    0.5 * a.ln()
}

fn check_base(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return domain(format!("base a must be finite and > 1, got {a}"));
    }
    Ok(())
}

/// Zero of `Δ₀` inside the sign-change bracket `[s_lo, s_hi]`, `s = ln w`.
pub fn refine_zero_delta0(s_lo: f64, s_hi: f64, params: &SeriesParams) -> Result<ZeroLocation> {
    params.validate()?;
    if !s_lo.is_finite() || !s_hi.is_finite() {
        return domain("bracket ends must be finite");
    }
    // Δ₀(e^s) = r(e^s)/(log a · e^s) has the sign of r, which stays O(1).
    let s = brent(|s| r_sum_at_log(s, params), s_lo, s_hi, S_TOL)?;
    ZeroLocation::from_s(s)
}

/// Map `s` into the window `(−(log a)/2, 0]` by whole half-periods.
pub fn reduce_to_fundamental_window(s: f64, a: f64) -> f64 {
    let half = half_period(a);
    let reduced = s - (s / half).ceil() * half;
    if reduced <= -half {
        reduced + half
    } else if reduced > 0.0 {
        reduced - half
    } else {
        reduced
    }
}

/// Zero estimate from the `k = ±1` harmonics alone, moved into the
/// fundamental window `w ∈ (a^{−1/2}, 1]`.
pub fn closed_form_first_zero(a: f64) -> Result<ZeroLocation> {
    check_base(a)?;
    let ch = gamma_character(a, 1)?;
    // continuous-branch argument of Γ(1 + 2πi/log a)
    let arg = ch.log_value.im;
    let raw = (FRAC_PI_2 - arg) * a.ln() / (-2.0 * PI);
    ZeroLocation::from_s(reduce_to_fundamental_window(raw, a))
}

/// The unique zero of `Δ₀` with `w ∈ (a^{−1/2}, 1)`.
pub fn fundamental_zero_delta0(params: &SeriesParams) -> Result<ZeroLocation> {
    params.validate()?;
    let half = half_period(params.a);
    let step = half / SCAN_CELLS as f64;

    let grid: Vec<f64> = (0..=SCAN_CELLS)
        .map(|i| {
            if i == SCAN_CELLS {
                0.0
            } else {
                -half + step * i as f64
            }
        })
        .collect();
    let values = grid
        .iter()
        .map(|&s| r_sum_at_log(s, params))
        .collect::<Result<Vec<_>>>()?;

    let mut found: Vec<ZeroLocation> = Vec::new();
    for i in 0..SCAN_CELLS {
        let (v0, v1) = (values[i], values[i + 1]);
        if v0 == 0.0 && i > 0 {
            continue; // already counted as the right end of the previous cell
        }
        if v0 * v1 <= 0.0 && !(v0 == 0.0 && v1 == 0.0) {
            let z = refine_zero_delta0(grid[i], grid[i + 1], params)?;
            if z.s > -half && z.s <= 0.0 && !found.iter().any(|f| f.s == z.s) {
                found.push(z);
            }
        }
    }

    match found.as_slice() {
        [z] => Ok(*z),
        [] => Err(Error::ZeroSearch(format!(
            "no zero of delta0 in the fundamental window for a = {}",
            params.a
        ))),
        many => Err(Error::ZeroSearch(format!(
            "{} zeroes of delta0 in the fundamental window for a = {}",
            many.len(),
            params.a
        ))),
    }
}

/// `w₀·a^{−n/2}`, computed as `s₀ − n·(log a)/2`.
pub fn zero_ladder(w0: &ZeroLocation, n: u32, a: f64) -> Result<ZeroLocation> {
    check_base(a)?;
    if n == 0 {
        return Ok(*w0);
    }
    ZeroLocation::from_s(w0.s - f64::from(n) * half_period(a))
}

/// Zero of `Δ` corresponding to the zero of `Δ₀` at `w₀`: `w = 1 − e^{−w₀}`.
pub fn map_zero_to_delta(w0: &ZeroLocation) -> Result<ZeroLocation> {
    ZeroLocation::from_w(-(-w0.w).exp_m1())
}

fn check_open_unit(name: &str, w: f64) -> Result<()> {
    if !(w > 0.0 && w < 1.0) {
        return domain(format!("{name} must lie in (0, 1), got {w}"));
    }
    Ok(())
}

/// `w + w²/2 + w³/3`, the cubic truncation of `−ln(1 − w)`.
pub fn taylor_map_z_to_z0(wz: f64) -> Result<f64> {
    check_open_unit("wz", wz)?;
    Ok(wz + wz * wz / 2.0 + wz * wz * wz / 3.0)
}

/// `w − w²/2 + w³/6`, the cubic truncation of `1 − e^{−w}`.
pub fn taylor_map_z0_to_z(wz0: f64) -> Result<f64> {
    check_open_unit("wz0", wz0)?;
    Ok(wz0 - wz0 * wz0 / 2.0 + wz0 * wz0 * wz0 / 6.0)
}

/// Zero of the oracle `f − g` inside `[x_lo, x_hi]`.
pub fn find_zero_delta_direct(x_lo: f64, x_hi: f64, params: &SeriesParams) -> Result<ZeroLocation> {
    params.validate()?;
    check_unit_interval(x_lo)?;
    check_unit_interval(x_hi)?;
    let (lo, hi) = if x_lo <= x_hi {
        (x_lo, x_hi)
    } else {
        (x_hi, x_lo)
    };
    if 1.0 - hi < DIRECT_MIN_W {
        return domain(format!(
            "oracle route needs 1 - x >= {DIRECT_MIN_W:e}, got x = {hi}"
        ));
    }

    let d_lo = delta_oracle(lo, params)?;
    let d_hi = delta_oracle(hi, params)?;
    let noise = oracle_noise_floor(lo, params)?.max(oracle_noise_floor(hi, params)?);
    if d_lo.abs().max(d_hi.abs()) < noise {
        return Err(Error::NoiseFloor {
            lo: d_lo,
            hi: d_hi,
            noise,
        });
    }
    let x = brent(|x| delta_oracle(x, params), lo, hi, X_TOL)?;
    ZeroLocation::from_w(1.0 - x)
}

/// `w − (1 − e^{−w})` without cancellation for small `w`.
fn gap_to_delta_zero(w: f64) -> f64 {
    if w < 0.1 {
        // Σ_{j≥2} (−1)^j w^j / j!
        let mut term = w * w / 2.0;
        let mut sum = 0.0_f64;
        let mut j = 2.0;
        while term.abs() > f64::EPSILON * 1e-3 * sum.abs().max(f64::MIN_POSITIVE) {
            sum += term;
            j += 1.0;
            term *= -w / j;
        }
        sum
    } else {
        w + (-w).exp_m1()
    }
}

fn seeded_zero(seed: &ZeroLocation, params: &SeriesParams) -> Result<ZeroLocation> {
    let width = SEED_HALF_WIDTH * half_period(params.a);
    refine_zero_delta0(seed.s - width, seed.s + width, params)
}

/// Zeroes of `Δ₀` for `n = 0, 1, ...`: ladder-seeded and refined.
pub fn delta0_zeros(count: usize, params: &SeriesParams) -> Result<Vec<ZeroLocation>> {
    let fundamental = fundamental_zero_delta0(params)?;
    (0..count)
        .map(|n| {
            if n == 0 {
                return Ok(fundamental);
            }
            let n = u32::try_from(n).map_err(|_| Error::Domain("count too large".into()))?;
            seeded_zero(&zero_ladder(&fundamental, n, params.a)?, params)
        })
        .collect()
}

/// Paired zeroes of `Δ` and `Δ₀` with their relative discrepancy.
pub fn build_table(count: usize, params: &SeriesParams) -> Result<Vec<ZeroTableRow>> {
    if !(1..=MAX_TABLE_ROWS).contains(&count) {
        return domain(format!(
            "count must lie in [1, {MAX_TABLE_ROWS}], got {count}"
        ));
    }
    let fundamental = fundamental_zero_delta0(params)?;
    let mut rows = Vec::with_capacity(count);
    for n in 0..count {
        let ladder = zero_ladder(&fundamental, n as u32, params.a)?;
        let delta0 = if n == 0 {
            fundamental
        } else {
            seeded_zero(&ladder, params)?
        };
        let delta = map_zero_to_delta(&delta0)?;
        let rel_err = gap_to_delta_zero(delta0.w).abs() / delta.w;
        rows.push(ZeroTableRow {
            n,
            delta,
            delta0,
            delta0_ladder: ladder,
            rel_err,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta0, harmonic_envelope};

    fn p(a: f64) -> SeriesParams {
        SeriesParams::new(a).unwrap()
    }

    // 50-digit roots of the full harmonic sum
    const W0_BASE2: f64 = 0.763_713_714_402_884_8;
    const W0_BASE3: f64 = 0.609_790_286_640_644_2;
    const W0_BASE5: f64 = 0.522_389_320_636_931_1;

    #[test]
    fn refine_first_zero() {
        let params = p(2.0);
        let s = W0_BASE2.ln();
        let z = refine_zero_delta0(s - 0.05, s + 0.05, &params).unwrap();
        assert!((z.w - 0.763_713_71).abs() < 1e-8);
        assert!((z.w - W0_BASE2).abs() < 1e-14);
        assert!(delta0(z.w, &params).unwrap().abs() < 1e-18);
    }

    #[test]
    fn refine_is_deterministic_and_self_similar() {
        let params = p(2.0);
        let s = W0_BASE2.ln();
        let a = refine_zero_delta0(s - 0.05, s + 0.05, &params).unwrap();
        let b = refine_zero_delta0(s - 0.05, s + 0.05, &params).unwrap();
        assert_eq!(a.w.to_bits(), b.w.to_bits());
        let l = 2f64.ln();
        let shifted = refine_zero_delta0(s - 0.05 - l, s + 0.05 - l, &params).unwrap();
        assert!((shifted.w / (a.w / 2.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn refine_half_step() {
        let params = p(2.0);
        let s = (W0_BASE2 / 2f64.sqrt()).ln();
        let z = refine_zero_delta0(s - 0.05, s + 0.05, &params).unwrap();
        assert!((z.w - 0.540_027_143_2).abs() < 1e-7);
        // refinement moves the half-step seed by far less than 10·|Γ₂|/|Γ₁|
        assert!((z.s - s).abs() < 10.0 * 9.3e-7);
        assert!((z.s - s).abs() > 1e-8);
    }

    #[test]
    fn refine_errors() {
        let params = p(2.0);
        let s = W0_BASE2.ln();
        assert!(matches!(
            refine_zero_delta0(s + 0.01, s + 0.02, &params),
            Err(Error::NoSignChange { .. })
        ));
        assert!(refine_zero_delta0(f64::NAN, 0.0, &params).is_err());
    }

    #[test]
    fn fundamental_zeroes() {
        let z2 = fundamental_zero_delta0(&p(2.0)).unwrap();
        assert!((z2.x() - 0.236_286_29).abs() < 1e-8);
        assert!((z2.w - W0_BASE2).abs() < 1e-14);
        let z3 = fundamental_zero_delta0(&p(3.0)).unwrap();
        assert!((z3.w - W0_BASE3).abs() < 1e-14);
        let z5 = fundamental_zero_delta0(&p(5.0)).unwrap();
        assert!((z5.w - W0_BASE5).abs() < 1e-14);
        for (z, a) in [(z2, 2.0f64), (z3, 3.0), (z5, 5.0)] {
            assert!(z.w > a.powf(-0.5) && z.w < 1.0);
        }
    }

    #[test]
    fn exactly_one_sign_change_in_window() {
        for a in [2.0f64, 3.0] {
            let params = p(a);
            let half = 0.5 * a.ln();
            let n = 10_000;
            let vals: Vec<f64> = (1..=n)
                .map(|i| -half + half * f64::from(i) / f64::from(n))
                .map(|s| r_sum_at_log(s, &params).unwrap())
                .collect();
            let changes = vals.windows(2).filter(|v| v[0] * v[1] < 0.0).count();
            assert_eq!(changes, 1, "a = {a}");
        }
    }

    #[test]
    fn closed_form_estimates() {
        let z2 = closed_form_first_zero(2.0).unwrap();
        assert!((z2.w / 0.763_713_71 - 1.0).abs() < 1e-3);
        // 50-digit value of the dominant-term estimate
        assert!((z2.w - 0.763_713_658_473_433_5).abs() < 1e-13);
        let z3 = closed_form_first_zero(3.0).unwrap();
        assert!((z3.w - 0.609_778_255_578_181_6).abs() < 1e-13);
        let f3 = fundamental_zero_delta0(&p(3.0)).unwrap();
        assert!((z3.w / f3.w - 1.0).abs() < 1e-3);
        assert!(closed_form_first_zero(1.0).is_err());
    }

    #[test]
    fn window_reduction_is_idempotent() {
        for a in [1.5, 2.0, 3.0, 10.0] {
            let half = 0.5 * f64::ln(a);
            for i in -50..50 {
                let s = 0.173 * f64::from(i);
                let once = reduce_to_fundamental_window(s, a);
                assert!(once > -half && once <= 0.0);
                assert_eq!(reduce_to_fundamental_window(once, a), once);
                let k = ((s - once) / half).round();
                assert!((s - once - k * half).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ladder_values() {
        let w0 = ZeroLocation::from_w(0.763_713_71).unwrap();
        let z2 = zero_ladder(&w0, 2, 2.0).unwrap();
        assert!((z2.x() - 0.618_143_145_0).abs() < 1e-10);
        let z7 = zero_ladder(&w0, 7, 2.0).unwrap();
        assert!((z7.x() - 0.932_496_607_1).abs() < 1e-10);
        assert_eq!(zero_ladder(&w0, 0, 2.0).unwrap(), w0);
        let deep = zero_ladder(&w0, 2000, 2.0).unwrap();
        assert!(deep.w > 0.0 && (deep.s - (w0.s - 1000.0 * 2f64.ln())).abs() < 1e-9);
        assert!(zero_ladder(&w0, 5000, 2.0).is_err());
    }

    #[test]
    fn map_to_delta() {
        let z = map_zero_to_delta(&ZeroLocation::from_w(0.763_713_71).unwrap()).unwrap();
        assert!((z.x() - 0.465_932_866_5).abs() < 1e-8);
        // refined sixth zero of Δ₀ (the ladder value 0.1350067858 is 2e-8 off)
        let z = map_zero_to_delta(&ZeroLocation::from_w(0.135_006_766_811).unwrap()).unwrap();
        assert!((z.x() - 0.873_709_999_5).abs() < 1e-8);
        let z = map_zero_to_delta(&ZeroLocation::from_w(1e-9).unwrap()).unwrap();
        let want = 1e-9 * (1.0 - 5e-10);
        assert!((z.w - want).abs() <= f64::EPSILON * want);
    }

    #[test]
    fn taylor_maps() {
        let w = 1.0 - 0.953_389_159_0;
        let z0 = taylor_map_z_to_z0(w).unwrap();
        assert!((z0 - (1.0 - 0.952_267_893_1)).abs() < 2e-6);
        let back = taylor_map_z0_to_z(1.0 - 0.952_267_893_1).unwrap();
        assert!((back - w).abs() < 2e-6);

        for i in 1..=300 {
            let w = 0.001 * f64::from(i);
            let exact = -(-w).ln_1p();
            assert!((taylor_map_z_to_z0(w).unwrap() - exact).abs() <= w.powi(4) / 2.0);
        }
        for i in 1..=20 {
            let w = 0.01 * f64::from(i);
            let rt = taylor_map_z0_to_z(taylor_map_z_to_z0(w).unwrap()).unwrap();
            assert!((rt - w).abs() <= w.powi(4));
        }
        for bad in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(taylor_map_z_to_z0(bad).is_err());
            assert!(taylor_map_z0_to_z(bad).is_err());
        }
    }

    #[test]
    fn direct_route() {
        let params = p(2.0);
        let z = find_zero_delta_direct(0.46, 0.47, &params).unwrap();
        assert!((z.x() - 0.465_932_866_5).abs() < 1e-8);
        let z = find_zero_delta_direct(0.57, 0.59, &params).unwrap();
        assert!((z.x() - 0.582_732_480_4).abs() < 1e-8);
        assert!(matches!(
            find_zero_delta_direct(0.47, 0.48, &params),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            find_zero_delta_direct(0.99, 0.999_999_9, &params),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn direct_route_noise_floor() {
        // a near 1 gives an oscillation far below rounding noise
        let params = p(1.3);
        let err = find_zero_delta_direct(0.4, 0.5, &params).unwrap_err();
        assert!(matches!(err, Error::NoiseFloor { .. }));
    }

    #[test]
    fn table_base_two() {
        let rows = build_table(33, &p(2.0)).unwrap();
        assert_eq!(rows.len(), 33);
        let r0 = rows[0];
        assert!((r0.x_delta().unwrap() - 0.465_932_866_5).abs() < 1e-8);
        assert!((r0.x_delta0().unwrap() - 0.236_286_290_0).abs() < 1e-8);
        assert!((r0.rel_err - 0.429_995_7).abs() < 2e-6);
        let r10 = rows[10];
        assert!((r10.x_delta().unwrap() - 0.976_416_488_5).abs() < 1e-8);
        assert!((r10.x_delta0().unwrap() - 0.976_133_946_6).abs() < 1e-8);
        assert!((r10.rel_err - 0.011_980_5).abs() < 2e-6);

        for pair in rows.windows(2) {
            assert!(pair[1].rel_err < pair[0].rel_err);
        }
        for r in &rows {
            assert!(r.delta.w < r.delta0.w);
            let x0 = r.x_delta0().unwrap();
            assert!(0.0 < x0 && x0 < r.x_delta().unwrap());
        }
        let tail: Vec<f64> = rows[20..]
            .windows(2)
            .map(|p| p[1].rel_err / p[0].rel_err)
            .collect();
        for q in tail {
            assert!((q - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
        }
    }

    #[test]
    fn table_full_steps_are_exact() {
        for a in [2.0, 3.0] {
            let zs = delta0_zeros(40, &p(a)).unwrap();
            for n in 0..38 {
                assert!((zs[n + 2].w / (zs[n].w / a) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ladder_seeds_bracket_exactly_one_zero() {
        for a in [2.0f64, 3.0] {
            let params = p(a);
            let w0 = fundamental_zero_delta0(&params).unwrap();
            let width = SEED_HALF_WIDTH * 0.5 * a.ln();
            for n in (0..=120).step_by(7) {
                let seed = zero_ladder(&w0, n, a).unwrap();
                let m = 400;
                let vals: Vec<f64> = (0..=m)
                    .map(|i| seed.s - width + 2.0 * width * f64::from(i) / f64::from(m))
                    .map(|s| r_sum_at_log(s, &params).unwrap())
                    .collect();
                let changes = vals.windows(2).filter(|v| v[0] * v[1] < 0.0).count();
                assert_eq!(changes, 1, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn deep_rows_report_w_only() {
        let rows = build_table(200, &p(2.0)).unwrap();
        let last = rows.last().unwrap();
        assert!(last.delta.w < DISPLAY_MIN_W);
        assert!(last.x_delta().is_none() && last.x_delta0().is_none());
        assert!(last.rel_err > 0.0 && (last.rel_err / (0.5 * last.delta0.w) - 1.0).abs() < 1e-9);
        assert!(build_table(0, &p(2.0)).is_err());
        assert!(build_table(201, &p(2.0)).is_err());
    }

    #[test]
    fn rows_follow_envelope_scaling() {
        // Δ₀ at the refined zero is tiny compared with its envelope
        let params = p(3.0);
        for r in build_table(20, &params).unwrap() {
            let v = delta0(r.delta0.w, &params).unwrap();
            assert!(v.abs() < 1e-12 * harmonic_envelope(r.delta0.w, &params).unwrap());
        }
    }

    #[test]
    fn gap_series_matches_direct_form() {
        for w in [0.099_f64, 0.05, 1e-3, 1e-8] {
            let direct = w + (-w).exp_m1();
            let series = gap_to_delta_zero(w);
            let tol = if w > 1e-2 { 1e-13 } else { 1e-6 };
            assert!((series / direct - 1.0).abs() < tol, "w = {w}");
        }
        assert!((gap_to_delta_zero(1e-20) / 5e-41 - 1.0).abs() < 1e-15);
    }
}
