//! The exponential map from the origin, its inverse and the time separation.
//!
//! A parameter `(u, v, w)` with `u > |v|` describes the maximizing geodesic
//! with initial horizontal velocity `u X + v Y` whose planar projection is a
//! hyperbola of curvature `w` (a straight line when `w = 0`). Along the
//! light-cone coordinates `x ± y` the map factorises:
//!
//! ```text
//! x + y = (u + v) · (e^{wt} − 1) / w
//! x − y = (u − v) · (1 − e^{−wt}) / w
//! z     = (u² − v²) · (sinh(wt) − wt) / (2 w²)
//! ```
//!
//! which is what both directions of the map are built on.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{in_causal_future, Event, PlanarPoint, SampledCurve};
use crate::iso::{classify, sample_solution, solve, IsoCase, IsoProblem};
use crate::special::{bisect, expm1c, sinh_minus_id_over_cube, sinhc, xcosh_minus_sinh_over_cube};

/// Coordinates `(u, v, w)` of the exponential map.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GeoParam {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl GeoParam {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        GeoParam { u, v, w }
    }

    /// `u > |v|`: the initial velocity is future timelike.
    pub fn is_timelike(&self) -> bool {
        self.u > self.v.abs()
    }

    /// `u = |v| > 0`, admitted only by boundary utilities.
    pub fn is_null(&self) -> bool {
        self.u > 0.0 && self.u == self.v.abs()
    }

    /// Proper-time speed `√(u² − v²)`.
    pub fn speed(&self) -> f64 {
        ((self.u - self.v) * (self.u + self.v)).max(0.0).sqrt()
    }

    /// The hyperbolic rotation with `exp(p, −1) = −exp(R p, 1)`.
    pub fn rotate_past(&self) -> GeoParam {
        let (c, s) = (self.w.cosh(), self.w.sinh());
        GeoParam::new(self.u * c - self.v * s, self.v * c - self.u * s, self.w)
    }

    /// Inverse of [`GeoParam::rotate_past`].
    pub fn rotate_future(&self) -> GeoParam {
        let (c, s) = (self.w.cosh(), self.w.sinh());
        GeoParam::new(self.u * c + self.v * s, self.v * c + self.u * s, self.w)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }
}

fn require_timelike(param: GeoParam) -> Result<()> {
    if param.is_timelike() && param.w.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "parameter ({}, {}, {}) is not in u > |v|",
            param.u, param.v, param.w
        )))
    }
}

/// A left-translated geodesic `t ↦ base ∗ exp(param, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    pub base: Event,
    pub param: GeoParam,
    pub t_max: f64,
}

impl Geodesic {
    pub fn point(&self, t: f64) -> Event {
        self.base * exp_point(self.param, t)
    }

    pub fn length(&self) -> f64 {
        self.t_max * self.param.speed()
    }

    pub fn sample(&self, n: usize) -> Result<SampledCurve<Event>> {
        if n < 2 {
            return Err(invalid("need at least two samples"));
        }
        let times: Vec<f64> = (0..n).map(|i| self.t_max * i as f64 / (n - 1) as f64).collect();
        let points = times.iter().map(|&t| self.point(t)).collect();
        SampledCurve::new(times, points)
    }
}

/// A maximizing geodesic between two causally related events.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeodesicPath {
    Timelike(Geodesic),
    /// Lift of a null segment or a broken null line; the vertices of the
    /// polyline are exact.
    Null {
        base: Event,
        problem: IsoProblem,
        vertices: SampledCurve<Event>,
    },
}

impl GeodesicPath {
    pub fn length(&self) -> f64 {
        match self {
            GeodesicPath::Timelike(g) => g.length(),
            GeodesicPath::Null { .. } => 0.0,
        }
    }

    pub fn endpoint(&self) -> Event {
        match self {
            GeodesicPath::Timelike(g) => g.point(g.t_max),
            GeodesicPath::Null { vertices, .. } => *vertices.last(),
        }
    }

    pub fn sample(&self, n: usize) -> Result<SampledCurve<Event>> {
        match self {
            GeodesicPath::Timelike(g) => g.sample(n),
            GeodesicPath::Null { base, problem, .. } => null_lift(*base, *problem, n),
        }
    }
}

fn null_lift(base: Event, problem: IsoProblem, n: usize) -> Result<SampledCurve<Event>> {
    let planar = sample_solution(&solve(problem), problem, n)?;
    let points = planar
        .points()
        .iter()
        .map(|p| base * Event::new(p.x, p.y, 0.0))
        .map(|e| PlanarPoint::new(e.x, e.y))
        .collect();
    let shifted = SampledCurve::new(planar.times().to_vec(), points)?;
    crate::group::lift(&shifted, base)
}

pub fn exp_point(param: GeoParam, t: f64) -> Event {
    let GeoParam { u, v, w } = param;
    let s = w * t;
    let plus = (u + v) * t * expm1c(s);
    let minus = (u - v) * t * expm1c(-s);
    let z = 0.5 * (u - v) * (u + v) * t * t * s * sinh_minus_id_over_cube(s);
    Event::new(0.5 * (plus + minus), 0.5 * (plus - minus), z)
}

/// Jacobian determinant of `(u, v, w) ↦ exp_point((u, v, w), t)`.
pub fn exp_jacobian_det(param: GeoParam, t: f64) -> f64 {
    let GeoParam { u, v, w } = param;
    let sigma = 0.5 * w * t;
    0.25 * t.powi(5) * (u - v) * (u + v) * sinhc(sigma) * xcosh_minus_sinh_over_cube(sigma)
}

/// `(sinh w − w) / (8 sinh²(w/2))` for `w ≥ 0`: the normalised height `z/T²`
/// reached at time 1 by the geodesic of curvature `w`.
fn normalized_height(w: f64) -> f64 {
    if w < 20.0 {
        let half = sinhc(0.5 * w);
        w * sinh_minus_id_over_cube(w) / (2.0 * half * half)
    } else {
        let e = (-w).exp();
        (1.0 - e * e - 2.0 * w * e) / (4.0 * (1.0 - e) * (1.0 - e))
    }
}

const MAX_CURVATURE: f64 = 700.0;

/// Solves `normalized_height(w) = h` for `|h| < 1/4`.
fn curvature_for_height(h: f64) -> f64 {
    let target = h.abs();
    if target == 0.0 {
        return 0.0;
    }
    let mut hi = 2.0;
    while normalized_height(hi) < target && hi < MAX_CURVATURE {
        hi = (2.0 * hi).min(MAX_CURVATURE);
    }
    let w = bisect(|w| normalized_height(w) - target, 0.0, hi, 200);
    h.signum() * w
}

/// Inverse of `exp_point(·, 1)` on the chronological future of the origin.
pub fn log(q: Event) -> Result<GeoParam> {
    let plus = q.x + q.y;
    let minus = q.x - q.y;
    let t2 = plus * minus;
    if !q.is_finite() || plus <= 0.0 || minus <= 0.0 || 4.0 * q.z.abs() >= t2 {
        return Err(Error::NotChronological);
    }
    let w = curvature_for_height(q.z / t2);
    let a = plus / expm1c(w);
    let b = minus / expm1c(-w);
    Ok(GeoParam::new(0.5 * (a + b), 0.5 * (a - b), w))
}

/// Time separation of `p` and `q`, zero unless `q` lies in the causal future of `p`.
pub fn tau(p: Event, q: Event) -> f64 {
    if !in_causal_future(p, q) {
        return 0.0;
    }
    let r = (-p) * q;
    match log(r) {
        Ok(param) => {
            let t = ((r.x - r.y) * (r.x + r.y)).sqrt();
            t / sinhc(0.5 * param.w)
        }
        Err(_) => 0.0,
    }
}

pub fn geodesic_between(p: Event, q: Event) -> Result<GeodesicPath> {
    if p == q {
        return Err(invalid("endpoints coincide"));
    }
    if !in_causal_future(p, q) {
        return Err(Error::NotCausal);
    }
    let r = (-p) * q;
    if let Ok(param) = log(r) {
        return Ok(GeodesicPath::Timelike(Geodesic {
            base: p,
            param,
            t_max: 1.0,
        }));
    }
    let problem = IsoProblem::new(r.x, r.y, r.z);
    if classify(problem) != IsoCase::BrokenNull {
        return Err(Error::NotCausal);
    }
    let vertices = null_lift(p, problem, 3)?;
    Ok(GeodesicPath::Null {
        base: p,
        problem,
        vertices,
    })
}

/// The exponential map at negative times, ending in the chronological past.
pub fn past_exp(param: GeoParam, t: f64) -> Result<Event> {
    require_timelike(param)?;
    if !(-1.0..=0.0).contains(&t) {
        return Err(invalid(format!("past time {t} outside [-1, 0]")));
    }
    Ok(exp_point(param, t))
}

/// The midpoint of the geodesic from `p` to `anchor`.
pub fn midpoint_map(anchor: Event, p: Event) -> Result<Event> {
    let param = log((-p) * anchor)?;
    Ok(p * exp_point(param, 0.5))
}

fn invert_about_origin(r: Event) -> Result<Event> {
    if let Ok(param) = log(r) {
        return Ok(exp_point(param, -1.0));
    }
    let back = log(-r)?;
    Ok(exp_point(back.rotate_future(), 1.0))
}

/// Reflection through `center` along the geodesic joining it to `p`.
pub fn geodesic_inversion(center: Event, p: Event) -> Result<Event> {
    let image = invert_about_origin((-center) * p)?;
    Ok(center * image)
}

/// Checks `τ(γ(t1), γ(t3)) = τ(γ(t1), γ(t2)) + τ(γ(t2), γ(t3))` along the
/// geodesic `γ(t) = exp_point(param, t)`.
pub fn cut_additivity_check(param: GeoParam, t1: f64, t2: f64, t3: f64) -> Result<bool> {
    require_timelike(param)?;
    if !(0.0 <= t1 && t1 < t2 && t2 < t3) {
        return Err(invalid(format!(
            "times must satisfy 0 <= t1 < t2 < t3, got {t1}, {t2}, {t3}"
        )));
    }
    let (g1, g2, g3) = (exp_point(param, t1), exp_point(param, t2), exp_point(param, t3));
    let whole = tau(g1, g3);
    let parts = tau(g1, g2) + tau(g2, g3);
    Ok((whole - parts).abs() <= 1e-8 * whole)
}
