//! The Lorentzian isoperimetric problem in the Minkowski plane.
//!
//! Given an endpoint `(a, b)` and a signed area `c`, find the future-directed
//! causal curve from the origin to `(a, b)` that encloses area `c` with its
//! chord and has maximal Lorentzian length. After a boost the endpoint lies
//! on the time axis at `(T, 0)` and the maximizer is the graph of a function
//! over `[0, T]`: a straight line, a broken null line or an arc of a
//! hyperbola with vertex ordinate `y_C`.
//!
//! Areas are lift areas throughout, i.e. the `z` gained by the horizontal
//! lift. For a graph `y = f(x)` from `(0,0)` to `(T,0)` this is `-∫f`, so a
//! positive `c` bends the curve below the axis. The graph integral `∫f` is
//! what [`hyperbola_area`] and [`solve_vertex`] work with.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{PlanarPoint, SampledCurve, NULL_TOLERANCE};
use crate::special::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoProblem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl IsoProblem {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        IsoProblem { a, b, c }
    }
}

/// The Lorentz boost taking `(a, b)` to `(T, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boost {
    /// Row-major entries `[[m00, m01], [m10, m11]]`.
    pub matrix: [[f64; 2]; 2],
}

impl Boost {
    pub const IDENTITY: Boost = Boost {
        matrix: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub fn apply(&self, p: PlanarPoint) -> PlanarPoint {
        let m = &self.matrix;
        PlanarPoint::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
    }

    pub fn inverse(&self) -> Boost {
        let m = &self.matrix;
        let det = self.det();
        Boost {
            matrix: [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]],
        }
    }

    pub fn det(&self) -> f64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoCase {
    Empty,
    TimelikeLine,
    BrokenNull,
    Hyperbola,
}

impl IsoCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            IsoCase::Empty => "empty",
            IsoCase::TimelikeLine => "timelike_line",
            IsoCase::BrokenNull => "broken_null",
            IsoCase::Hyperbola => "hyperbola",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoSolution {
    pub case: IsoCase,
    #[serde(rename = "T")]
    pub t: f64,
    /// Vertex ordinate of the hyperbola in axis coordinates.
    pub y_c: Option<f64>,
    /// `None` when `(a, b)` is not timelike.
    pub boost: Option<Boost>,
    pub max_length: f64,
}

/// `√(a² − b²)` computed without cancellation; 0 outside the cone.
fn minkowski_norm(a: f64, b: f64) -> f64 {
    ((a - b) * (a + b)).max(0.0).sqrt()
}

fn on_null_ray(a: f64, b: f64) -> bool {
    a - b.abs() <= NULL_TOLERANCE * a.abs().max(1.0)
}

pub fn classify(prob: IsoProblem) -> IsoCase {
    let IsoProblem { a, b, c } = prob;
    if !(a.is_finite() && a > 0.0) || !b.is_finite() || !c.is_finite() {
        return IsoCase::Empty;
    }
    let tol = NULL_TOLERANCE * a * a.max(1.0);
    let form = -(a - b) * (a + b) + 4.0 * c.abs();
    if form > tol {
        return IsoCase::Empty;
    }
    if on_null_ray(a, b) {
        // The straight null segment is the only causal curve there.
        return if c.abs() <= tol {
            IsoCase::BrokenNull
        } else {
            IsoCase::Empty
        };
    }
    if c == 0.0 {
        IsoCase::TimelikeLine
    } else if form >= -tol {
        IsoCase::BrokenNull
    } else {
        IsoCase::Hyperbola
    }
}

pub fn boost_to_axis(a: f64, b: f64) -> Result<(Boost, f64)> {
    if !(a.is_finite() && a > b.abs()) {
        return Err(invalid(format!("({a}, {b}) is not future timelike")));
    }
    let t = minkowski_norm(a, b);
    let boost = Boost {
        matrix: [[a / t, -b / t], [-b / t, a / t]],
    };
    Ok((boost, t))
}

fn check_vertex(y_c: f64, t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) || !y_c.is_finite() || y_c.abs() < 0.5 * t {
        return Err(invalid(format!("vertex ordinate {y_c} is not admissible for T = {t}")));
    }
    Ok(())
}

/// `k = √(y_C² − T²/4)`, the semi-axis of the hyperbola.
fn semi_axis(y_c: f64, t: f64) -> f64 {
    let y = y_c.abs();
    ((y - 0.5 * t) * (y + 0.5 * t)).max(0.0).sqrt()
}

pub fn hyperbola_ordinate(y_c: f64, t: f64, x: f64) -> Result<f64> {
    check_vertex(y_c, t)?;
    let slack = 1e-12 * t;
    if !(x >= -slack && x <= t + slack) {
        return Err(invalid(format!("abscissa {x} outside [0, {t}]")));
    }
    Ok(ordinate_unchecked(y_c, t, x))
}

/// `y_C − sgn(y_C)·√((x − T/2)² + k²)`, rewritten as a quotient that stays
/// accurate when `|y_C|` is large.
fn ordinate_unchecked(y_c: f64, t: f64, x: f64) -> f64 {
    let k = semi_axis(y_c, t);
    let r = (x - 0.5 * t).hypot(k);
    y_c.signum() * x * (t - x) / (y_c.abs() + r)
}

/// `r − asinh(r)` without cancellation at small `r`.
fn r_minus_asinh(r: f64) -> f64 {
    if r < 0.5 {
        // asinh r = Σ (−1)^n (2n)! / (4^n (n!)² (2n+1)) r^(2n+1)
        let r2 = r * r;
        let mut coef = 1.0;
        let mut pow = r;
        let mut sum = 0.0;
        for n in 1..80 {
            let nf = n as f64;
            coef *= -(2.0 * nf - 1.0) * (2.0 * nf - 1.0) / (2.0 * nf * (2.0 * nf + 1.0));
            pow *= r2;
            let term = -coef * pow;
            sum += term;
            if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        r - r.asinh()
    }
}

/// Graph area `∫₀ᵀ f` as a function of the semi-axis `k ≥ 0`, for `y_C > 0`.
fn area_of_semi_axis(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        return 0.25 * t * t;
    }
    let y = k.hypot(0.5 * t);
    let y_minus_k = 0.25 * t * t / (y + k);
    let r = 0.5 * t / k;
    0.5 * t * y_minus_k + k * k * r_minus_asinh(r)
}

/// The graph area `∫₀ᵀ f_{y_C}` under the hyperbola arc with vertex `y_C`.
pub fn hyperbola_area(y_c: f64, t: f64) -> Result<f64> {
    check_vertex(y_c, t)?;
    Ok(y_c.signum() * area_of_semi_axis(semi_axis(y_c, t), t))
}

/// Lorentzian length of the arc with semi-axis `k` over `[0, T]`.
fn arc_length(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        2.0 * k * (0.5 * t / k).asinh()
    }
}

fn solve_semi_axis(t: f64, c: f64) -> f64 {
    let target = c.abs();
    let mut hi = t;
    while area_of_semi_axis(hi, t) >= target {
        hi *= 2.0;
    }
    let k = bisect(|k| target - area_of_semi_axis(k, t), 0.0, hi, 400);
    debug_assert!((area_of_semi_axis(k, t) - target).abs() <= 1e-12 * t * t);
    k
}

/// The vertex ordinate whose arc has graph area `c`, for `0 < |c| < T²/4`.
pub fn solve_vertex(t: f64, c: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(invalid(format!("T must be positive, got {t}")));
    }
    if !(c != 0.0 && c.abs() < 0.25 * t * t) {
        return Err(invalid(format!("area {c} outside (0, T²/4) in absolute value")));
    }
    let k = solve_semi_axis(t, c);
    Ok(c.signum() * k.hypot(0.5 * t))
}

pub fn solve(prob: IsoProblem) -> IsoSolution {
    let case = classify(prob);
    let t = minkowski_norm(prob.a, prob.b);
    let boost = boost_to_axis(prob.a, prob.b).ok().map(|(m, _)| m);
    let (y_c, max_length) = match case {
        IsoCase::Empty | IsoCase::BrokenNull => (None, 0.0),
        IsoCase::TimelikeLine => (None, t),
        IsoCase::Hyperbola => {
            let graph_area = -prob.c;
            let k = solve_semi_axis(t, graph_area);
            (Some(graph_area.signum() * k.hypot(0.5 * t)), arc_length(k, t))
        }
    };
    IsoSolution {
        case,
        t,
        y_c,
        boost,
        max_length,
    }
}

/// Samples the maximizer from `(0, 0)` to `(a, b)`.
///
/// Hyperbolic arcs are sampled uniformly in proper time, broken lines
/// always include their break point.
pub fn sample_solution(sol: &IsoSolution, prob: IsoProblem, n: usize) -> Result<SampledCurve<PlanarPoint>> {
    if n < 2 {
        return Err(invalid("need at least two samples"));
    }
    let back = |p: PlanarPoint| match sol.boost {
        Some(m) => m.inverse().apply(p),
        None => p,
    };
    let uniform = |i: usize| i as f64 / (n - 1) as f64;
    let t = sol.t;
    let points: Vec<PlanarPoint> = match sol.case {
        IsoCase::Empty => return Err(Error::NoSolution),
        IsoCase::TimelikeLine => (0..n)
            .map(|i| PlanarPoint::new(prob.a * uniform(i), prob.b * uniform(i)))
            .collect(),
        IsoCase::BrokenNull if sol.boost.is_none() => (0..n)
            .map(|i| PlanarPoint::new(prob.a * uniform(i), prob.b * uniform(i)))
            .collect(),
        IsoCase::BrokenNull => {
            let s = -prob.c.signum();
            let mut xs: Vec<f64> = (0..n).map(|i| t * uniform(i)).collect();
            if n.is_multiple_of(2) {
                xs.insert(n / 2, 0.5 * t);
            }
            xs.into_iter()
                .map(|x| back(PlanarPoint::new(x, s * x.min(t - x))))
                .collect()
        }
        IsoCase::Hyperbola => {
            let y_c = sol.y_c.ok_or(Error::NoSolution)?;
            let k = semi_axis(y_c, t);
            let sigma0 = (0.5 * t / k).asinh();
            (0..n)
                .map(|i| {
                    let sigma = sigma0 * (2.0 * uniform(i) - 1.0);
                    let x = 0.5 * t + k * sigma.sinh();
                    back(PlanarPoint::new(x, ordinate_unchecked(y_c, t, x)))
                })
                .collect()
        }
    };
    // Pin the endpoints so rounding in the boost cannot move them.
    let mut points = points;
    points[0] = PlanarPoint::new(0.0, 0.0);
    let last = points.len() - 1;
    points[last] = PlanarPoint::new(prob.a, prob.b);
    SampledCurve::uniform(points)
}
