//! Sub-Riemannian distance on the Heisenberg group and the ball-box picture.
//!
//! A length minimizer from the origin projects to a circular arc which,
//! together with its chord, encloses the prescribed `z`. For chord length `c`
//! and half-angle `β ∈ (0, π)` the arc encloses `c² g(β)` with
//! `g(β) = (2β − sin 2β) / (8 sin²β)` and has length `c β / sin β`. The map
//! `g` increases from 0 to infinity, so the distance is a scalar root solve.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{in_causal_future, Event, PlanarPoint};
use crate::iso::boost_to_axis;
use crate::mc::run_streams;
use crate::measure::Diamond;
use crate::special::{bisect, two_beta_minus_sin_over_cube};

/// Area-to-chord² ratio of the arc with half-angle `β ≤ π/2`.
fn arc_height(beta: f64) -> f64 {
    let sinc = if beta == 0.0 { 1.0 } else { beta.sin() / beta };
    beta * two_beta_minus_sin_over_cube(beta) / (8.0 * sinc * sinc)
}

/// Area-to-chord² ratio for the half-angle `π − ε`, i.e. more than a semicircle.
fn arc_height_reflex(eps: f64) -> f64 {
    let s = eps.sin();
    (2.0 * PI - eps.powi(3) * two_beta_minus_sin_over_cube(eps)) / (8.0 * s * s)
}

/// `d(0, r)`.
pub fn sr_norm(r: Event) -> f64 {
    let chord = r.x.hypot(r.y);
    let area = r.z.abs();
    if area == 0.0 {
        return chord;
    }
    if chord == 0.0 {
        return 2.0 * (PI * area).sqrt();
    }
    let h = area / (chord * chord);
    if h <= PI / 8.0 {
        let beta = bisect(|b| arc_height(b) - h, 0.0, 0.5 * PI, 200);
        let sinc = if beta == 0.0 { 1.0 } else { beta.sin() / beta };
        chord / sinc
    } else {
        // Large enclosed area: the arc is nearly a full circle.
        let mut lo = 0.5 * (PI / (4.0 * h)).sqrt();
        while arc_height_reflex(lo) < h {
            lo *= 0.5;
        }
        let eps = bisect(|e| h - arc_height_reflex(e), lo, 0.5 * PI, 200);
        chord * (PI - eps) / eps.sin()
    }
}

/// The Carnot–Carathéodory distance.
pub fn sr_distance(p: Event, q: Event) -> f64 {
    sr_norm((-p) * q)
}

/// `[−r, r] × [−r, r] × [−r², r²]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub r: f64,
}

impl BoxSpec {
    pub fn new(r: f64) -> Result<Self> {
        if r >= 0.0 && r.is_finite() {
            Ok(BoxSpec { r })
        } else {
            Err(invalid(format!("box radius must be nonnegative, got {r}")))
        }
    }
}

pub fn box_contains(spec: BoxSpec, p: Event) -> bool {
    let r = spec.r;
    p.x.abs() <= r && p.y.abs() <= r && p.z.abs() <= r * r
}

/// Largest `|z|` in the sub-Riemannian ball of radius `r`: a half disc.
pub fn ball_height(r: f64) -> f64 {
    r * r / (2.0 * PI)
}

/// Uniform point of `B(0, r)` by rejection from its bounding box.
pub fn sample_ball<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Event {
    let h = ball_height(r);
    loop {
        let e = Event::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-h..=h));
        if e.x.hypot(e.y) <= r && sr_norm(e) <= r {
            return e;
        }
    }
}

/// Lebesgue volume of the unit sub-Riemannian ball.
///
/// The ball is the region `|z| ≤ Z(ρ)` over the unit disc, where the arc of
/// length 1 and chord `ρ = sin β / β` bounds the height
/// `Z = (2β − sin 2β) / (8β²)`. Integrating in `β` gives a smooth 1-d integral.
pub fn unit_ball_volume() -> f64 {
    static VOLUME: OnceLock<f64> = OnceLock::new();
    *VOLUME.get_or_init(|| {
        let integrand = |b: f64| {
            if b == 0.0 {
                return 0.0;
            }
            let rho = b.sin() / b;
            let height = b * two_beta_minus_sin_over_cube(b) / 8.0;
            let drho = (b.sin() - b * b.cos()) / (b * b);
            rho * height * drho
        };
        let n = 20_000;
        let h = PI / n as f64;
        let mut s = integrand(0.0) + integrand(PI);
        for i in 1..n {
            s += integrand(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        4.0 * PI * s * h / 3.0
    })
}

/// Boundary scan of `J((−1,0,0), (1,0,0))` for the largest inscribed ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerRadius {
    pub rho: f64,
    /// Points per axis of the `(x, y)` grid.
    pub grid: usize,
    /// Boundary point realising the minimum.
    pub argmin: Event,
}

impl InnerRadius {
    /// The constant `D = 1/ρ`.
    pub fn d(&self) -> f64 {
        1.0 / self.rho
    }
}

/// The `z`-interval of the unit diamond above `(x, y)`, if any.
pub fn unit_diamond_fibre(x: f64, y: f64) -> Option<(f64, f64)> {
    let a = ((1.0 + x).powi(2) - y * y) / 4.0;
    let b = ((1.0 - x).powi(2) - y * y) / 4.0;
    if a < 0.0 || b < 0.0 || x.abs() > 1.0 {
        return None;
    }
    let lo = (-0.5 * y - a).max(0.5 * y - b);
    let hi = (-0.5 * y + a).min(0.5 * y + b);
    (lo <= hi).then_some((lo, hi))
}

pub fn unit_diamond_inner_radius(grid: usize) -> Result<InnerRadius> {
    if grid < 2 {
        return Err(invalid("grid needs at least two points per axis"));
    }
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (grid - 1) as f64;
    let best = (0..grid)
        .into_par_iter()
        .map(|i| {
            let x = coord(i);
            let mut best = (f64::INFINITY, Event::ORIGIN);
            for j in 0..grid {
                let y = coord(j);
                if let Some((lo, hi)) = unit_diamond_fibre(x, y) {
                    for z in [lo, hi] {
                        let e = Event::new(x, y, z);
                        let d = sr_norm(e);
                        if d < best.0 {
                            best = (d, e);
                        }
                    }
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, Event::ORIGIN), |a, b| if b.0 < a.0 { b } else { a });
    Ok(InnerRadius {
        rho: best.0,
        grid,
        argmin: best.1,
    })
}

/// Default inner-radius estimate on a 1000 × 1000 grid, computed once.
pub fn inner_radius() -> InnerRadius {
    static CACHE: OnceLock<InnerRadius> = OnceLock::new();
    *CACHE.get_or_init(|| unit_diamond_inner_radius(1000).expect("grid is valid"))
}

/// `max d(0, ·)` over the faces of `Box(1)`, so that `Box(r) ⊆ B(0, C r)`.
pub fn ball_box_constant(grid: usize) -> f64 {
    let g = grid.max(2);
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (g - 1) as f64;
    (0..g)
        .into_par_iter()
        .map(|i| {
            let a = coord(i);
            let mut best = 0.0f64;
            for j in 0..g {
                let b = coord(j);
                for s in [-1.0, 1.0] {
                    for e in [Event::new(s, a, b), Event::new(a, s, b), Event::new(a, b, s)] {
                        best = best.max(sr_norm(e));
                    }
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// Extreme values of `d(0, q) / √(x² + y² + |z|)` over a random sample.
pub fn ball_box_ratios(n: usize, seed: u64) -> (f64, f64) {
    let parts = run_streams(seed, n, |rng, k| {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for _ in 0..k {
            let e = Event::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let gauge = (e.x * e.x + e.y * e.y + e.z.abs()).sqrt();
            if gauge > 0.0 {
                let r = sr_norm(e) / gauge;
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
        (lo, hi)
    });
    parts
        .into_iter()
        .fold((f64::INFINITY, 0.0), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)))
}

/// A diamond containing `B(p, r)`, with `τ` between its vertices `2Dr`.
pub fn ball_in_diamond(p: Event, r: f64) -> Result<Diamond> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid(format!("radius must be positive, got {r}")));
    }
    let h = inner_radius().d() * r;
    Ok(Diamond::new(p * Event::new(-h, 0.0, 0.0), p * Event::new(h, 0.0, 0.0)))
}

/// Uniform sample of `J(0, r)`, drawn in the boosted frame where `r` sits
/// on the time axis and mapped back by the boost.
pub(crate) struct DiamondSampler {
    t: f64,
    c: f64,
    back: Option<crate::iso::Boost>,
}

impl DiamondSampler {
    pub(crate) fn new(r: Event) -> Option<Self> {
        let (boost, t) = boost_to_axis(r.x, r.y).ok()?;
        Some(DiamondSampler {
            t,
            c: r.z,
            back: Some(boost.inverse()),
        })
    }

    /// Volume of the proposal envelope: the planar square `0 ≤ x ± y ≤ T`
    /// times the largest fibre length `T²/8`.
    pub(crate) fn envelope_volume(&self) -> f64 {
        self.t.powi(4) / 16.0
    }

    /// One proposal in the boosted frame with its acceptance flag.
    ///
    /// The `z`-fibre above `(x, y)` is the intersection of the past-cone
    /// interval `|z| ≤ (x² − y²)/4` and the future-cone interval around
    /// `c + Ty/2`. The proposal is accepted with probability proportional to
    /// the fibre length and placed uniformly on it.
    pub(crate) fn propose<R: Rng + ?Sized>(&self, rng: &mut R) -> (Event, bool) {
        let t = self.t;
        let plus = rng.gen::<f64>() * t;
        let minus = rng.gen::<f64>() * t;
        let (x, y) = (0.5 * (plus + minus), 0.5 * (plus - minus));
        let a = 0.25 * plus * minus;
        let b = 0.25 * (t - plus) * (t - minus);
        let mid = self.c + 0.5 * t * y;
        let lo = (-a).max(mid - b);
        let hi = a.min(mid + b);
        let z = lo + rng.gen::<f64>() * (hi - lo);
        let accept = hi > lo && rng.gen::<f64>() * 0.125 * t * t < hi - lo;
        (Event::new(x, y, z), accept)
    }

    pub(crate) fn unboost(&self, e: Event) -> Event {
        match self.back {
            Some(m) => {
                let p = m.apply(PlanarPoint::new(e.x, e.y));
                Event::new(p.x, p.y, e.z)
            }
            None => e,
        }
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (Event, usize) {
        let mut draws = 0;
        loop {
            draws += 1;
            let (e, ok) = self.propose(rng);
            if ok {
                return (self.unboost(e), draws);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiamondBoxReport {
    pub samples: usize,
    pub draws: usize,
    /// `q.x` after translating `p` to the origin.
    pub axis_box: f64,
    /// `d(p, q)`.
    pub sr_box: f64,
    pub axis_violations: usize,
    pub sr_violations: usize,
    pub counterexample: Option<Event>,
    pub inclusion_pass: bool,
}

/// Samples `J(p, q)` and checks it against `p ∗ Box(q′.x)` and `p ∗ Box(d(p, q))`.
pub fn diamond_in_box_check(p: Event, q: Event, n: usize, seed: u64) -> Result<DiamondBoxReport> {
    if !in_causal_future(p, q) {
        return Err(Error::NotCausal);
    }
    let r = (-p) * q;
    let axis = BoxSpec::new(r.x.max(0.0))?;
    let sr = BoxSpec::new(sr_norm(r))?;
    let sampler = match DiamondSampler::new(r) {
        Some(s) if n > 0 => s,
        // Null or degenerate diamonds have no interior to sample.
        _ => {
            return Ok(DiamondBoxReport {
                samples: 0,
                draws: 0,
                axis_box: axis.r,
                sr_box: sr.r,
                axis_violations: 0,
                sr_violations: 0,
                counterexample: None,
                inclusion_pass: true,
            })
        }
    };
    let parts = run_streams(seed, n, |rng, k| {
        let (mut draws, mut bad_axis, mut bad_sr) = (0, 0, 0);
        let mut witness = None;
        for _ in 0..k {
            let (s, d) = sampler.sample(rng);
            draws += d;
            let in_axis = box_contains(axis, s);
            let in_sr = box_contains(sr, s);
            bad_axis += usize::from(!in_axis);
            bad_sr += usize::from(!in_sr);
            if (!in_axis || !in_sr) && witness.is_none() {
                witness = Some(p * s);
            }
        }
        (draws, bad_axis, bad_sr, witness)
    });
    let draws = parts.iter().map(|x| x.0).sum();
    let axis_violations = parts.iter().map(|x| x.1).sum();
    let sr_violations = parts.iter().map(|x| x.2).sum();
    let counterexample = parts.iter().find_map(|x| x.3);
    Ok(DiamondBoxReport {
        samples: n,
        draws,
        axis_box: axis.r,
        sr_box: sr.r,
        axis_violations,
        sr_violations,
        counterexample,
        inclusion_pass: axis_violations == 0 && sr_violations == 0,
    })
}
