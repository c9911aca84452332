//! Distortion coefficients, Brunn–Minkowski evaluators and the Jacobian
//! computations showing that curvature-dimension bounds fail on the group.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geodesic::{exp_jacobian_det, geodesic_inversion, midpoint_map, GeoParam};
use crate::group::Event;
use crate::measure::growth_ratio_scan;
use crate::special::{ln_sinhc, ln_xcosh_minus_sinh_over_cube};

/// Dimension parameter of a curvature-dimension bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dim {
    Finite(f64),
    Infinite,
}

impl Dim {
    fn check(self) -> Result<()> {
        match self {
            Dim::Finite(n) if !(n.is_finite() && n >= 1.0) => {
                Err(invalid(format!("dimension must be at least 1, got {n}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortionArgs {
    pub k: f64,
    pub n: Dim,
    pub t: f64,
    /// Nonnegative, possibly infinite.
    pub theta: f64,
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `τ_{K,N}^{(t)}(θ)` for finite `N`; returns `+∞` on the positive-curvature cutoff.
pub fn distortion_tau(args: DistortionArgs) -> Result<f64> {
    let DistortionArgs { k, n, t, theta } = args;
    let n = match n {
        Dim::Finite(n) => n,
        Dim::Infinite => return Err(invalid("distortion coefficients need a finite dimension")),
    };
    Dim::Finite(n).check()?;
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("t must lie in [0, 1], got {t}")));
    }
    if theta.is_nan() || theta < 0.0 || !k.is_finite() {
        return Err(invalid(format!(
            "need theta >= 0 and finite K, got theta = {theta}, K = {k}"
        )));
    }
    if k == 0.0 || theta == 0.0 || (k < 0.0 && n == 1.0) {
        return Ok(t);
    }
    let k_theta2 = k * theta * theta;
    if k > 0.0 {
        if k_theta2 >= (n - 1.0) * PI * PI {
            return Ok(f64::INFINITY);
        }
        let x = theta * (k / (n - 1.0)).sqrt();
        return Ok(t * (sinc(t * x) / sinc(x)).powf(1.0 - 1.0 / n));
    }
    if theta.is_infinite() {
        return Ok(if t == 1.0 { 1.0 } else { 0.0 });
    }
    let x = theta * (-k / (n - 1.0)).sqrt();
    Ok((t.ln() + (1.0 - 1.0 / n) * (ln_sinhc(t * x) - ln_sinhc(x))).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BMReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub vol0: f64,
    pub vol1: f64,
    pub volt: f64,
    pub k: f64,
    pub n: Dim,
    pub t: f64,
    pub theta: f64,
}

const BM_TOLERANCE: f64 = 1e-12;

/// Evaluates both sides of the timelike Brunn–Minkowski inequality.
///
/// For finite `N` the sides are `m(A_t)^{1/N}` and the distortion-weighted sum.
/// For `N = ∞` the entropic form is rewritten as
/// `ln m(A_t) ≥ (1−t) ln m(A_0) + t ln m(A_1) + K t (1−t) Θ² / 2`.
pub fn bm_inequality_eval(vol0: f64, vol1: f64, volt: f64, k: f64, n: Dim, t: f64, theta: f64) -> Result<BMReport> {
    if !(vol0 > 0.0 && vol1 > 0.0 && volt > 0.0) {
        return Err(invalid(format!("volumes must be positive, got {vol0}, {vol1}, {volt}")));
    }
    n.check()?;
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("t must lie in [0, 1], got {t}")));
    }
    let (lhs, rhs) = match n {
        Dim::Finite(nn) => {
            let tau0 = distortion_tau(DistortionArgs {
                k,
                n,
                t: 1.0 - t,
                theta,
            })?;
            let tau1 = distortion_tau(DistortionArgs { k, n, t, theta })?;
            let e = 1.0 / nn;
            (volt.powf(e), tau0 * vol0.powf(e) + tau1 * vol1.powf(e))
        }
        Dim::Infinite => {
            if !(theta.is_finite() && theta >= 0.0) {
                return Err(invalid(format!("theta must be finite and nonnegative, got {theta}")));
            }
            let rhs = (1.0 - t) * vol0.ln() + t * vol1.ln() + 0.5 * k * t * (1.0 - t) * theta * theta;
            (volt.ln(), rhs)
        }
    };
    let satisfied = lhs >= rhs - BM_TOLERANCE * rhs.abs().max(1.0);
    Ok(BMReport {
        lhs,
        rhs,
        satisfied,
        vol0,
        vol1,
        volt,
        k,
        n,
        t,
        theta,
    })
}

/// `ln |J(s)| − ln |s|⁵ + const` for the exp-map Jacobian at curvature `w`:
/// the `w`-dependent factor `ln[sinhc(σ) · (σ cosh σ − sinh σ)/σ³]`, `σ = ws/2`.
fn ln_jacobian_shape(sigma: f64) -> f64 {
    ln_sinhc(sigma) + ln_xcosh_minus_sinh_over_cube(sigma)
}

fn check_open_unit(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("t must lie in (0, 1), got {t}")))
    }
}

/// `ln |det D exp^{(t−1)} / det D exp^{(−1)}|` at curvature `w`.
pub fn tmcp_log_ratio(t: f64, w: f64) -> Result<f64> {
    check_open_unit(t)?;
    if !w.is_finite() {
        return Err(invalid(format!("w must be finite, got {w}")));
    }
    let s = 1.0 - t;
    Ok(5.0 * s.ln() + ln_jacobian_shape(0.5 * w * s) - ln_jacobian_shape(0.5 * w))
}

/// Ratio of the Jacobian determinants of `exp^{(t−1)}` and `exp^{(−1)}`,
/// the volume contraction from a past point towards the origin.
///
/// It equals `(1−t)⁵` at `w = 0`, is even in `w` and tends to 0 as `|w| → ∞`.
pub fn tmcp_jacobian_ratio(t: f64, w: f64) -> Result<f64> {
    tmcp_log_ratio(t, w).map(f64::exp)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TmcpReport {
    pub t: f64,
    pub n: f64,
    pub w_max: f64,
    /// `t^N`.
    pub bound_t: f64,
    /// `(1−t)^N`, the half Brunn–Minkowski weight.
    pub bound_one_minus_t: f64,
    /// Smaller of the two bounds; a witness must beat it.
    pub threshold: f64,
    pub witness: Option<f64>,
    pub ratio: Option<f64>,
    pub conclusive: bool,
    pub note: String,
}

const TMCP_SCAN_STEP: f64 = 0.25;

/// Searches `w ∈ [−w_max, 0]` for a Jacobian ratio below both `t^N` and `(1−t)^N`.
pub fn tmcp_violation_report(t: f64, n: f64, w_max: f64) -> Result<TmcpReport> {
    check_open_unit(t)?;
    Dim::Finite(n).check()?;
    if !(w_max.is_finite() && w_max > 0.0) {
        return Err(invalid(format!("w_max must be positive, got {w_max}")));
    }
    let bound_t = t.powf(n);
    let bound_one_minus_t = (1.0 - t).powf(n);
    let threshold = bound_t.min(bound_one_minus_t);
    let ln_threshold = n * t.ln().min((1.0 - t).ln());
    let steps = (w_max / TMCP_SCAN_STEP).ceil() as usize;
    let mut witness = None;
    for i in 1..=steps {
        let w = -(i as f64 * TMCP_SCAN_STEP).min(w_max);
        let lr = tmcp_log_ratio(t, w)?;
        if lr < ln_threshold {
            witness = Some((w, lr.exp()));
            break;
        }
    }
    let note = match witness {
        Some((w, _)) => format!(
            "ratio at w = {w} is below t^N and (1-t)^N, so the half Brunn-Minkowski inequality fails; larger N needs larger |w|"
        ),
        None => format!("no witness in [-{w_max}, 0]; the ratio tends to 0, so a larger w_max will find one"),
    };
    Ok(TmcpReport {
        t,
        n,
        w_max,
        bound_t,
        bound_one_minus_t,
        threshold,
        witness: witness.map(|x| x.0),
        ratio: witness.map(|x| x.1),
        conclusive: witness.is_some(),
        note,
    })
}

/// `|det|` of the central-difference Jacobian of `f` at `at`.
pub fn fd_jacobian_det<F>(f: F, at: Event, step: f64) -> Result<f64>
where
    F: Fn(Event) -> Result<Event>,
{
    if step.is_nan() || step <= 0.0 {
        return Err(invalid(format!("step must be positive, got {step}")));
    }
    let base = at.to_array();
    let mut cols = [[0.0; 3]; 3];
    for (j, col) in cols.iter_mut().enumerate() {
        let mut plus = base;
        let mut minus = base;
        plus[j] += step;
        minus[j] -= step;
        let fp = f(Event::from_array(plus))?.to_array();
        let fm = f(Event::from_array(minus))?.to_array();
        for i in 0..3 {
            col[i] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    Ok(det3(cols).abs())
}

fn det3(c: [[f64; 3]; 3]) -> f64 {
    c[0][0] * (c[1][1] * c[2][2] - c[2][1] * c[1][2]) - c[1][0] * (c[0][1] * c[2][2] - c[2][1] * c[0][2])
        + c[2][0] * (c[0][1] * c[1][2] - c[1][1] * c[0][2])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MidpointDetReport {
    pub step: f64,
    /// Finite-difference `|det D M_{q₁}|` at `q₋₁`.
    pub numeric: f64,
    /// `|det D exp^{(−1/2)} / det D exp^{(−1)}|` at `(2, 0, 0)`.
    pub analytic: f64,
    /// `2³ |det D M_{q₁}|`, the limit bound on the midpoint-set volume ratio.
    pub juillet_bound: f64,
    /// Finite-difference `|det D I_{q₀}|`, equal to 1.
    pub inversion_det: f64,
    /// Right-hand side of the geometric-mean inequality, `√(m(I(A)) / m(A))`.
    pub bm_rhs: f64,
    /// `juillet_bound < bm_rhs`: the inequality is violated.
    pub contradiction: bool,
    pub step_warning: bool,
}

/// Midpoint-map determinant for `q₋₁ = (−1, 0, 0)`, `q₁ = (1, 0, 0)`.
pub fn midpoint_det_check(step: f64) -> Result<MidpointDetReport> {
    let q_minus = Event::new(-1.0, 0.0, 0.0);
    let q_plus = Event::new(1.0, 0.0, 0.0);
    let numeric = fd_jacobian_det(|p| midpoint_map(q_plus, p), q_minus, step)?;
    let pivot = GeoParam::new(2.0, 0.0, 0.0);
    let analytic = (exp_jacobian_det(pivot, -0.5) / exp_jacobian_det(pivot, -1.0)).abs();
    let inversion_det = fd_jacobian_det(|p| geodesic_inversion(Event::ORIGIN, p), q_minus, step)?;
    let juillet_bound = 8.0 * analytic;
    let bm_rhs = inversion_det.sqrt();
    Ok(MidpointDetReport {
        step,
        numeric,
        analytic,
        juillet_bound,
        inversion_det,
        bm_rhs,
        contradiction: juillet_bound < bm_rhs,
        step_warning: step > 1e-2,
    })
}

/// Unit-diamond volume along the unit-τ family, `(w, volume)`.
pub fn appendix_limit_scan(w_values: &[f64]) -> Vec<(f64, f64)> {
    growth_ratio_scan(w_values)
}
