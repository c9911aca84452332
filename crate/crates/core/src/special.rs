//! Cancellation-safe elementary functions.
//!
//! Each helper switches to a Taylor series below a threshold where the
//! direct formula starts losing digits, and sums the series until the next
//! term no longer changes the result.

const SERIES_LIMIT: f64 = 1.0;

/// Sums `first · Π ratio(k)` terms until they drop below machine precision.
fn series(first: f64, mut ratio: impl FnMut(u32) -> f64) -> f64 {
    let mut term = first;
    let mut sum = first;
    for k in 1..60 {
        term *= ratio(k);
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    sum
}

/// `sinh(x) / x`, equal to 1 at the origin.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        let x2 = x * x;
        series(1.0, |k| x2 / ((2 * k) as f64 * (2 * k + 1) as f64))
    } else {
        x.sinh() / x
    }
}

/// `expm1(x) / x`, equal to 1 at the origin.
pub fn expm1c(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.exp_m1() / x
    }
}

/// `(cosh(x) − 1) / x²`, equal to 1/2 at the origin.
pub fn coshm1_over_sq(x: f64) -> f64 {
    let h = sinhc(0.5 * x);
    0.5 * h * h
}

/// `(sinh(x) − x) / x³`, equal to 1/6 at the origin.
pub fn sinh_minus_id_over_cube(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        let x2 = x * x;
        series(1.0 / 6.0, |k| x2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64))
    } else {
        (x.sinh() - x) / (x * x * x)
    }
}

/// `(x cosh(x) − sinh(x)) / x³`, equal to 1/3 at the origin.
pub fn xcosh_minus_sinh_over_cube(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        // Coefficient of x^(2k) is (2k+2) / (2k+3)!.
        let x2 = x * x;
        series(1.0 / 3.0, |k| {
            let k = k as f64;
            x2 * (2.0 * k + 2.0) / ((2.0 * k) * (2.0 * k + 2.0) * (2.0 * k + 3.0))
        })
    } else {
        (x * x.cosh() - x.sinh()) / (x * x * x)
    }
}

/// `ln(sinh|x| / |x|)`, usable far beyond the overflow point of `sinh`.
pub fn ln_sinhc(x: f64) -> f64 {
    let a = x.abs();
    if a < 20.0 {
        sinhc(a).ln()
    } else {
        a - std::f64::consts::LN_2 + (-(-2.0 * a).exp()).ln_1p() - a.ln()
    }
}

/// `ln((|x| cosh x − sinh|x|) / |x|³)`, usable for large arguments.
pub fn ln_xcosh_minus_sinh_over_cube(x: f64) -> f64 {
    let a = x.abs();
    if a < 20.0 {
        xcosh_minus_sinh_over_cube(a).ln()
    } else {
        let e = (-2.0 * a).exp();
        a - std::f64::consts::LN_2 + (a - 1.0 + (a + 1.0) * e).ln() - 3.0 * a.ln()
    }
}

/// `(2β − sin 2β) / β³`, equal to 4/3 at the origin.
pub fn two_beta_minus_sin_over_cube(beta: f64) -> f64 {
    if beta.abs() < SERIES_LIMIT {
        // 2β − sin 2β = Σ_{k≥1} (−1)^{k+1} (2β)^{2k+1} / (2k+1)!
        let b2 = 4.0 * beta * beta;
        8.0 * series(1.0 / 6.0, |k| -b2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64))
    } else {
        (2.0 * beta - (2.0 * beta).sin()) / (beta * beta * beta)
    }
}

/// `x² ln x`, extended by continuity to 0 at the origin.
pub fn xsq_ln(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x * x.ln()
    }
}

/// Bisection for an increasing function on `[lo, hi]` with `f(lo) ≤ 0 ≤ f(hi)`.
pub(crate) fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, max_iter: usize) -> f64 {
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
