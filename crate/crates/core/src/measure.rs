//! Diamond volumes and Lorentzian Hausdorff measure bounds.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::group::{in_causal_future, Event};
use crate::mc::run_streams;
use crate::special::{sinhc, xsq_ln};
use crate::sr::{ball_height, inner_radius, sample_ball, sr_norm, unit_ball_volume, DiamondSampler};

/// The causal diamond `J(p, q) = J⁺(p) ∩ J⁻(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diamond {
    pub p: Event,
    pub q: Event,
}

impl Diamond {
    pub fn new(p: Event, q: Event) -> Self {
        Diamond { p, q }
    }

    pub fn is_empty(&self) -> bool {
        !in_causal_future(self.p, self.q)
    }

    pub fn contains(&self, s: Event) -> bool {
        in_causal_future(self.p, s) && in_causal_future(s, self.q)
    }

    pub fn volume(&self) -> f64 {
        diamond_volume_closed(self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// `mM + m² ln m` with `m = 1 − M`, accurate for small `M`.
fn bracket_head(m_small: f64) -> f64 {
    let s = m_small;
    if s < 0.1 {
        // 0.5 s² − Σ_{n≥3} 2 sⁿ / (n (n−1) (n−2))
        let mut sum = 0.5 * s * s;
        let mut pow = s * s;
        for n in 3..200 {
            pow *= s;
            let nf = n as f64;
            let term = 2.0 * pow / (nf * (nf - 1.0) * (nf - 2.0));
            sum -= term;
            if term <= f64::EPSILON * 0.25 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        let m = 1.0 - s;
        m * s + m * m * m.ln()
    }
}

/// `−(T⁴/8)(mM + m² ln m + M² ln M)` in terms of `T²` and the smaller of
/// `m`, `M` (they sum to 1).
fn volume_from_split(t2: f64, small: f64) -> f64 {
    if small <= 0.0 {
        return 0.0;
    }
    -(t2 * t2 / 8.0) * (bracket_head(small) + xsq_ln(small))
}

/// Lebesgue volume of `J(p, q)` in closed form.
pub fn diamond_volume_closed(p: Event, q: Event) -> f64 {
    if !in_causal_future(p, q) {
        return 0.0;
    }
    let r = (-p) * q;
    let t2 = (r.x - r.y) * (r.x + r.y);
    if t2.is_nan() || t2 <= 0.0 {
        return 0.0;
    }
    let small = 0.5 * (t2 - 4.0 * r.z.abs()) / t2;
    volume_from_split(t2, small.max(0.0))
}

/// Rejection-sampling estimate of the volume of `J(p, q)`.
pub fn diamond_volume_mc(p: Event, q: Event, n: usize, seed: u64) -> Result<VolumeEstimate> {
    if n == 0 {
        return Err(invalid("need at least one sample"));
    }
    let zero = VolumeEstimate {
        value: 0.0,
        stderr: 0.0,
        samples: n,
        seed,
    };
    if !in_causal_future(p, q) {
        return Ok(zero);
    }
    let Some(sampler) = DiamondSampler::new((-p) * q) else {
        return Ok(zero);
    };
    let hits: usize = run_streams(seed, n, |rng, k| (0..k).filter(|_| sampler.propose(rng).1).count())
        .into_iter()
        .sum();
    let frac = hits as f64 / n as f64;
    let v = sampler.envelope_volume();
    Ok(VolumeEstimate {
        value: v * frac,
        stderr: v * (frac * (1.0 - frac) / n as f64).sqrt(),
        samples: n,
        seed,
    })
}

/// The endpoint at unit time separation reached with curvature `w` and no
/// transverse velocity.
pub fn unit_tau_endpoint(w: f64) -> Event {
    let x = sinhc(0.5 * w);
    let z = 0.5 * w * crate::special::sinh_minus_id_over_cube(w);
    Event::new(x, 0.0, z)
}

/// Volume of `J(0, q̃(w))`, the diamond at unit time separation and curvature `w`.
pub fn unit_tau_diamond_volume(w: f64) -> f64 {
    let a = w.abs();
    let t2 = sinhc(0.5 * a).powi(2);
    // M = ½(1 − 4z/T²) = (w − 1 + e^{−w}) / (4 sinh²(w/2)), formed without cancellation.
    let small = if a == 0.0 {
        0.5
    } else {
        let num = if a < 0.5 {
            w_minus_1_plus_exp(a)
        } else {
            a + (-a).exp_m1()
        };
        num / (a * a * t2)
    };
    volume_from_split(t2, small)
}

/// `w − 1 + e^{−w} = Σ_{k≥2} (−w)^k / k!` for small `w`.
fn w_minus_1_plus_exp(w: f64) -> f64 {
    let mut term = 0.5 * w * w;
    let mut sum = term;
    for k in 3..40 {
        term *= -w / k as f64;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    sum
}

/// `(w, volume of J(0, q̃(w)))` for each `w`.
pub fn growth_ratio_scan(w_values: &[f64]) -> Vec<(f64, f64)> {
    w_values.iter().map(|&w| (w, unit_tau_diamond_volume(w))).collect()
}

/// The growth constant `K = max_w L³(J(0, q̃(w)))` over a symmetric grid.
pub fn growth_constant() -> f64 {
    let grid: Vec<f64> = (-500..=500).map(|i| 0.1 * i as f64).collect();
    growth_ratio_scan(&grid).into_iter().map(|(_, v)| v).fold(0.0, f64::max)
}

/// Volume of the unit diamond in `d`-dimensional Minkowski space: two
/// cones of height ½ over a `(d−1)`-ball of radius ½.
pub fn omega(d: u32) -> f64 {
    fn ball(n: u32) -> f64 {
        match n {
            0 => 1.0,
            1 => 2.0,
            _ => 2.0 * PI / n as f64 * ball(n - 2),
        }
    }
    2.0 * ball(d - 1) * 0.5f64.powi(d as i32 - 1) * 0.5 / d as f64
}

/// Number of uniform samples the greedy nets are built from.
pub const NET_SAMPLES: usize = 100_000;

/// Uniform sample of `B(0, 1/2)`, in normalised coordinates.
pub fn net_sample(n: usize, seed: u64) -> Vec<Event> {
    run_streams(seed, n, |rng, k| {
        (0..k)
            .map(|_| crate::group::dilate(0.5, sample_ball(rng, 1.0)).unwrap())
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Size of a maximal `δ`-separated subset of `points`, built greedily.
///
/// Neighbours are found through a hash on planar cells of side `δ`, which
/// suffices because `d ≥` planar distance.
pub fn greedy_net_size(points: &[Event], delta: f64) -> usize {
    let cell = |e: &Event| ((e.x / delta).floor() as i64, (e.y / delta).floor() as i64);
    let zmax = ball_height(delta);
    let mut grid: HashMap<(i64, i64), Vec<Event>> = HashMap::new();
    let mut count = 0;
    for s in points {
        let (cx, cy) = cell(s);
        let mut covered = false;
        'scan: for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = grid.get(&(cx + dx, cy + dy)) {
                    for c in bucket {
                        let r = (-*c) * *s;
                        if r.x.hypot(r.y) > delta || r.z.abs() > zmax {
                            continue;
                        }
                        if sr_norm(r) <= delta {
                            covered = true;
                            break 'scan;
                        }
                    }
                }
            }
        }
        if !covered {
            grid.entry((cx, cy)).or_default().push(*s);
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HausdorffBounds {
    pub radius: f64,
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
    /// Size of the `δ`-net of `B(center, radius/2)`.
    pub net_size: usize,
}

fn check_ball(radius: f64, delta: f64) -> Result<()> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(invalid(format!("radius must be positive, got {radius}")));
    }
    if !(delta > 0.0 && delta < 0.5 * radius) {
        return Err(invalid(format!("delta must lie in (0, radius/2), got {delta}")));
    }
    Ok(())
}

/// Volume lower bound `ω₄ L³(B) / K`, valid at every scale.
pub fn hausdorff_lower(radius: f64) -> f64 {
    omega(4) * unit_ball_volume() * radius.powi(4) / growth_constant()
}

/// Cover sum `Σ ω_d τ^d` of the diamond cover of `B(·, radius)` built from
/// a net of `net_size` points at scale `delta`, dilated by 2.
pub fn cover_sum(d: u32, net_size: usize, delta: f64) -> f64 {
    let tau = 2.0 * inner_radius().d() * delta;
    2f64.powi(d as i32) * net_size as f64 * omega(d) * tau.powi(d as i32)
}

/// Lower and upper bounds for the `δ`-pre-measure `H⁴_δ(B(center, radius))`.
///
/// Left translations preserve both the distance and Lebesgue measure, so
/// the net is built around the origin in coordinates normalised by `radius`
/// and the result does not depend on `center`.
pub fn hausdorff_bounds(center: Event, radius: f64, delta: f64, seed: u64) -> Result<HausdorffBounds> {
    let _ = center;
    check_ball(radius, delta)?;
    let sample = net_sample(NET_SAMPLES, seed);
    let m = greedy_net_size(&sample, delta / radius);
    Ok(HausdorffBounds {
        radius,
        delta,
        lower: hausdorff_lower(radius),
        upper: cover_sum(4, m, delta),
        net_size: m,
    })
}

/// Default coarsest scale of the dimension probe, relative to the radius.
pub const PROBE_START: f64 = 0.4;
/// Number of halvings in the dimension probe.
pub const PROBE_HALVINGS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Grows,
    Shrinks,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub d: u32,
    pub sums: Vec<f64>,
    /// `sums[k+1] / sums[k]`.
    pub ratios: Vec<f64>,
    pub trend: Trend,
    /// Every ratio lies in `[1/2, 2]`.
    pub within_factor_two: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub radius: f64,
    pub deltas: Vec<f64>,
    pub net_sizes: Vec<usize>,
    pub lower: f64,
    pub uppers: Vec<f64>,
    pub rows: Vec<DimensionRow>,
}

fn classify_trend(ratios: &[f64]) -> Trend {
    if ratios.iter().all(|&r| r > 1.0) {
        Trend::Grows
    } else if ratios.iter().all(|&r| r < 1.0) {
        Trend::Shrinks
    } else {
        Trend::Mixed
    }
}

/// Cover sums `Σ ω_d τ^d` as `δ` halves from `PROBE_START · radius`.
pub fn dimension_probe(center: Event, radius: f64, d_values: &[u32], seed: u64) -> Result<DimensionReport> {
    let _ = center;
    let deltas: Vec<f64> = (0..=PROBE_HALVINGS)
        .map(|k| PROBE_START * radius / 2f64.powi(k as i32))
        .collect();
    check_ball(radius, deltas[0])?;
    if d_values.contains(&0) {
        return Err(invalid("trial dimensions must be positive"));
    }
    let sample = net_sample(NET_SAMPLES, seed);
    let net_sizes: Vec<usize> = deltas.iter().map(|&d| greedy_net_size(&sample, d / radius)).collect();
    let rows = d_values
        .iter()
        .map(|&d| {
            let sums: Vec<f64> = deltas
                .iter()
                .zip(&net_sizes)
                .map(|(&dl, &m)| cover_sum(d, m, dl))
                .collect();
            let ratios: Vec<f64> = sums.windows(2).map(|w| w[1] / w[0]).collect();
            let trend = classify_trend(&ratios);
            let within_factor_two = ratios.iter().all(|&r| (0.5..=2.0).contains(&r));
            DimensionRow {
                d,
                sums,
                ratios,
                trend,
                within_factor_two,
            }
        })
        .collect();
    Ok(DimensionReport {
        radius,
        uppers: deltas
            .iter()
            .zip(&net_sizes)
            .map(|(&dl, &m)| cover_sum(4, m, dl))
            .collect(),
        deltas,
        net_sizes,
        lower: hausdorff_lower(radius),
        rows,
    })
}
