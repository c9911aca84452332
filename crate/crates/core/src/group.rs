//! The Heisenberg group, its causal structure and curve-level primitives.

use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Absolute tolerance used when a quantity sits on the null boundary.
pub const NULL_TOLERANCE: f64 = 1e-12;

/// A point `(x, y, z)` of the Heisenberg group. `x` is the time coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Event {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub const ORIGIN: Event = Event { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Event { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn planar(&self) -> PlanarPoint {
        PlanarPoint::new(self.x, self.y)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn dist_inf(&self, other: &Event) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Event::new(a[0], a[1], a[2])
    }
}

impl Mul for Event {
    type Output = Event;

    fn mul(self, rhs: Event) -> Event {
        group_mul(self, rhs)
    }
}

impl Neg for Event {
    type Output = Event;

    fn neg(self) -> Event {
        group_inv(self)
    }
}

/// A point of the Minkowski plane with metric `-dx² + dy²`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }
}

/// Coefficients of a horizontal vector `u X + v Y`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HorizontalVector {
    pub u: f64,
    pub v: f64,
}

impl HorizontalVector {
    pub const fn new(u: f64, v: f64) -> Self {
        HorizontalVector { u, v }
    }

    /// The Lorentzian square `-u² + v²`.
    pub fn lorentz_square(&self) -> f64 {
        -(self.u - self.v) * (self.u + self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalKind {
    Timelike,
    Null,
    Spacelike,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CausalClass {
    pub kind: CausalKind,
    /// Only meaningful for timelike and null vectors.
    pub future_directed: bool,
}

/// Anything with a planar projection.
pub trait Planar {
    fn xy(&self) -> (f64, f64);
}

impl Planar for PlanarPoint {
    fn xy(&self) -> (f64, f64) {
        (self.x, self.y)
    }
}

impl Planar for Event {
    fn xy(&self) -> (f64, f64) {
        (self.x, self.y)
    }
}

/// A polyline sampled at strictly increasing times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve<P> {
    times: Vec<f64>,
    points: Vec<P>,
}

impl<P> SampledCurve<P> {
    pub fn new(times: Vec<f64>, points: Vec<P>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(invalid("times and points differ in length"));
        }
        if times.len() < 2 {
            return Err(invalid("a sampled curve needs at least two samples"));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("sample times must be strictly increasing"));
        }
        Ok(SampledCurve { times, points })
    }

    /// Samples at the uniform times `0, 1/(n-1), ..., 1`.
    pub fn uniform(points: Vec<P>) -> Result<Self> {
        let n = points.len();
        let denom = n.saturating_sub(1).max(1) as f64;
        let times = (0..n).map(|i| i as f64 / denom).collect();
        Self::new(times, points)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> &P {
        &self.points[0]
    }

    pub fn last(&self) -> &P {
        &self.points[self.points.len() - 1]
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<P>) {
        (self.times, self.points)
    }
}

impl<P: Clone> SampledCurve<P> {
    /// The same trace run backwards, on the mirrored time axis.
    pub fn reversed(&self) -> Self {
        let times = self.times.iter().rev().map(|t| -t).collect();
        let points = self.points.iter().rev().cloned().collect();
        SampledCurve { times, points }
    }

    /// Joins `other` after `self`. The junction sample is shared and
    /// `other`'s clock is shifted to start where `self` ends.
    pub fn concat(&self, other: &Self) -> Self {
        let shift = self.times[self.times.len() - 1] - other.times[0];
        let mut times = self.times.clone();
        let mut points = self.points.clone();
        times.extend(other.times[1..].iter().map(|t| t + shift));
        points.extend(other.points[1..].iter().cloned());
        SampledCurve { times, points }
    }
}

impl<P: Planar> SampledCurve<P> {
    pub fn project(&self) -> SampledCurve<PlanarPoint> {
        SampledCurve {
            times: self.times.clone(),
            points: self
                .points
                .iter()
                .map(|p| {
                    let (x, y) = p.xy();
                    PlanarPoint::new(x, y)
                })
                .collect(),
        }
    }
}

pub fn group_mul(p: Event, q: Event) -> Event {
    Event {
        x: p.x + q.x,
        y: p.y + q.y,
        z: p.z + q.z + 0.5 * (p.x * q.y - q.x * p.y),
    }
}

pub fn group_inv(p: Event) -> Event {
    Event::new(-p.x, -p.y, -p.z)
}

pub fn dilate(lambda: f64, p: Event) -> Result<Event> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(invalid(format!("dilation factor must be positive, got {lambda}")));
    }
    Ok(Event::new(lambda * p.x, lambda * p.y, lambda * lambda * p.z))
}

pub fn causal_class(w: HorizontalVector) -> CausalClass {
    let kind = if w.u == 0.0 && w.v == 0.0 {
        CausalKind::Zero
    } else {
        let q = w.lorentz_square();
        if q < 0.0 {
            CausalKind::Timelike
        } else if q == 0.0 {
            CausalKind::Null
        } else {
            CausalKind::Spacelike
        }
    };
    CausalClass {
        kind,
        future_directed: w.u > 0.0,
    }
}

/// The quadratic form `-x² + y² + 4|z|` cutting out the light cone at the origin.
pub fn cone_form(r: Event) -> f64 {
    -(r.x - r.y) * (r.x + r.y) + 4.0 * r.z.abs()
}

/// `p ≤ q`: there is a future-directed causal curve from `p` to `q`.
pub fn in_causal_future(p: Event, q: Event) -> bool {
    let r = (-p) * q;
    r.x >= -NULL_TOLERANCE && cone_form(r) <= NULL_TOLERANCE
}

/// `p ≪ q`: there is a future-directed timelike curve from `p` to `q`.
pub fn in_chronological_future(p: Event, q: Event) -> bool {
    let r = (-p) * q;
    r.x > 0.0 && cone_form(r) < -NULL_TOLERANCE
}

fn segment_area(a: (f64, f64), b: (f64, f64)) -> f64 {
    0.5 * (a.0 * b.1 - b.0 * a.1)
}

/// Signed area swept by the polyline together with the chord closing it.
///
/// Positive for counterclockwise loops. Along a horizontal curve from the
/// origin this is exactly the `z` gained by the lift.
pub fn signed_area(curve: &SampledCurve<PlanarPoint>) -> f64 {
    let pts = curve.points();
    let open: f64 = pts.windows(2).map(|w| segment_area(w[0].xy(), w[1].xy())).sum();
    open + segment_area(curve.last().xy(), curve.first().xy())
}

/// Horizontal lift starting at `base`. Each linear piece contributes its
/// exact area increment, so the lift of a polyline is exact.
pub fn lift(curve: &SampledCurve<PlanarPoint>, base: Event) -> Result<SampledCurve<Event>> {
    let start = curve.first();
    let scale = 1.0 + base.x.abs().max(base.y.abs());
    if (start.x - base.x).abs() > 1e-12 * scale || (start.y - base.y).abs() > 1e-12 * scale {
        return Err(invalid("curve does not start at the projection of the base point"));
    }
    let mut z = base.z;
    let mut out = Vec::with_capacity(curve.len());
    out.push(Event::new(start.x, start.y, z));
    for w in curve.points().windows(2) {
        z += segment_area(w[0].xy(), w[1].xy());
        out.push(Event::new(w[1].x, w[1].y, z));
    }
    SampledCurve::new(curve.times().to_vec(), out)
}

/// Sum of `√(Δx² − Δy²)` over the segments of the planar projection.
pub fn lorentzian_length<P: Planar>(curve: &SampledCurve<P>) -> Result<f64> {
    let mut total = 0.0;
    for w in curve.points().windows(2) {
        let (x0, y0) = w[0].xy();
        let (x1, y1) = w[1].xy();
        let dx = x1 - x0;
        let dy = (y1 - y0).abs();
        let slack = 1e-12 * dx.abs().max(dy);
        if dx < dy - slack {
            return Err(Error::NotCausal);
        }
        total += ((dx - dy) * (dx + dy)).max(0.0).sqrt();
    }
    Ok(total)
}
