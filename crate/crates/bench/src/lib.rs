//! Deterministic inputs shared by the benchmarks.

use heis_slor::{exp_point, Event, GeoParam, IsoProblem};

/// Evenly spread exponential-map parameters with `|w| ≤ w_max`.
pub fn params(n: usize, w_max: f64) -> Vec<GeoParam> {
    (0..n)
        .map(|i| {
            let s = (i as f64 + 0.5) / n as f64;
            let u = 0.1 + 9.9 * s;
            let v = 0.9 * u * (7.0 * s).sin();
            let w = w_max * (2.0 * ((5.0 * s).fract()) - 1.0);
            GeoParam::new(u, v, w)
        })
        .collect()
}

/// Points of the chronological future of the origin.
pub fn future_points(n: usize, w_max: f64) -> Vec<Event> {
    params(n, w_max).into_iter().map(|p| exp_point(p, 1.0)).collect()
}

/// Feasible isoperimetric problems in the hyperbola regime.
pub fn iso_problems(n: usize) -> Vec<IsoProblem> {
    (0..n)
        .map(|i| {
            let s = (i as f64 + 0.5) / n as f64;
            let a = 1.0 + 4.0 * s;
            let b = 0.8 * a * (3.0 * s).cos();
            let c = 0.24 * (a - b) * (a + b) * (11.0 * s).sin();
            IsoProblem::new(a, b, c)
        })
        .collect()
}
