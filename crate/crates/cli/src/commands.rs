use heis_slor::{
    ball_box_constant, bm_inequality_eval, diamond_in_box_check, diamond_volume_closed, diamond_volume_mc,
    dimension_probe, geodesic_between, hausdorff_bounds, in_causal_future, in_chronological_future, inner_radius,
    midpoint_det_check, sample_solution, solve, tmcp_violation_report, unit_tau_diamond_volume, Dim, Error, Event,
    GeodesicPath, IsoCase, IsoProblem, NET_SAMPLES,
};

use crate::report::{
    num, opt, BmSummary, CurvatureReport, DiamondBoxReport, DiamondVolumeReport, GeodesicReport, HausdorffReport,
    IsoSolveReport, Output, ProbeRow, Report, ScanPoint, Table, TauReport, TmcpWitness,
};
use crate::{CliError, Format};

/// Trial dimensions of the probe; `upper` is the `d = 4` cover sum.
const PROBE_DIMENSIONS: [u32; 3] = [3, 4, 5];
const BALL_BOX_GRID: usize = 200;
const DEFAULT_CURVE_SAMPLES: usize = 101;
const TMCP_T: [f64; 3] = [0.25, 0.5, 0.75];
const TMCP_N: [f64; 4] = [1.0, 2.0, 5.0, 10.0];
const SCAN_W: [f64; 11] = [-50.0, -30.0, -20.0, -10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0, 50.0];

fn arr(e: Event) -> [f64; 3] {
    e.to_array()
}

fn json_only(format: Option<Format>, command: &str) -> Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage(format!("{command} only produces JSON"))),
        _ => Ok(()),
    }
}

pub fn iso_solve(a: f64, b: f64, c: f64, samples: Option<usize>, format: Option<Format>) -> Result<Output, CliError> {
    let prob = IsoProblem::new(a, b, c);
    let sol = solve(prob);
    if sol.case == IsoCase::Empty {
        return Err(Error::NoSolution.into());
    }
    let want_curve = samples.is_some() || format == Some(Format::Csv);
    let curve = if want_curve {
        let curve = sample_solution(&sol, prob, samples.unwrap_or(DEFAULT_CURVE_SAMPLES))?;
        Some(
            curve
                .times()
                .iter()
                .zip(curve.points())
                .map(|(&t, p)| [t, p.x, p.y])
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    if format == Some(Format::Csv) {
        let mut table = Table::new(vec!["t", "x", "y"]);
        for row in curve.unwrap_or_default() {
            table.push(row.iter().map(|&v| num(v)).collect());
        }
        return Ok(Output::Csv(table));
    }
    Ok(Output::Json(Report::IsoSolve(IsoSolveReport {
        a,
        b,
        c,
        case: sol.case.as_str(),
        t: sol.t,
        y_c: sol.y_c,
        max_length: sol.max_length,
        curve,
    })))
}

pub fn tau((p, q): (Event, Event), format: Option<Format>) -> Result<Output, CliError> {
    let value = heis_slor::tau(p, q);
    Ok(match format {
        None => Output::Text(num(value)),
        Some(Format::Csv) => {
            let mut table = Table::new(vec!["tau"]);
            table.push(vec![num(value)]);
            Output::Csv(table)
        }
        Some(Format::Json) => Output::Json(Report::Tau(TauReport {
            p: arr(p),
            q: arr(q),
            tau: value,
            causal: in_causal_future(p, q),
            chronological: in_chronological_future(p, q),
        })),
    })
}

pub fn geodesic((p, q): (Event, Event), samples: usize, format: Option<Format>) -> Result<Output, CliError> {
    let path = geodesic_between(p, q)?;
    let curve = path.sample(samples)?;
    let points: Vec<[f64; 4]> = curve
        .times()
        .iter()
        .zip(curve.points())
        .map(|(&t, e)| [t, e.x, e.y, e.z])
        .collect();
    if format == Some(Format::Json) {
        let (case, param) = match &path {
            GeodesicPath::Timelike(g) => ("timelike", Some(g.param.to_array())),
            GeodesicPath::Null { .. } => ("null", None),
        };
        return Ok(Output::Json(Report::Geodesic(GeodesicReport {
            p: arr(p),
            q: arr(q),
            case,
            length: path.length(),
            param,
            points,
        })));
    }
    let mut table = Table::new(vec!["t", "x", "y", "z"]);
    for row in points {
        table.push(row.iter().map(|&v| num(v)).collect());
    }
    Ok(Output::Csv(table))
}

pub fn diamond_volume(
    (p, q): (Event, Event),
    mc: Option<usize>,
    seed: u64,
    format: Option<Format>,
) -> Result<Output, CliError> {
    let closed = diamond_volume_closed(p, q);
    let estimate = mc.map(|n| diamond_volume_mc(p, q, n, seed)).transpose()?;
    let report = DiamondVolumeReport {
        p: arr(p),
        q: arr(q),
        closed,
        mc: estimate.map(|e| e.value),
        stderr: estimate.map(|e| e.stderr),
        samples: estimate.map(|e| e.samples),
        seed,
    };
    if format == Some(Format::Csv) {
        let mut table = Table::new(vec!["closed", "mc", "stderr", "samples", "seed"]);
        table.push(vec![
            num(report.closed),
            opt(report.mc),
            opt(report.stderr),
            report.samples.map(|n| n.to_string()).unwrap_or_default(),
            seed.to_string(),
        ]);
        return Ok(Output::Csv(table));
    }
    Ok(Output::Json(Report::DiamondVolume(report)))
}

pub fn hausdorff(
    center: Event,
    radius: f64,
    delta: f64,
    seed: u64,
    format: Option<Format>,
) -> Result<Output, CliError> {
    let bounds = hausdorff_bounds(center, radius, delta, seed)?;
    let probe = dimension_probe(center, radius, &PROBE_DIMENSIONS, seed)?;
    if format == Some(Format::Json) {
        return Ok(Output::Json(Report::Hausdorff(HausdorffReport {
            center: arr(center),
            radius,
            delta,
            seed,
            net_samples: NET_SAMPLES,
            net_size: bounds.net_size,
            lower: bounds.lower,
            upper: bounds.upper,
            probe_deltas: probe.deltas.clone(),
            probe_net_sizes: probe.net_sizes.clone(),
            probe_uppers: probe.uppers.clone(),
            probe: probe
                .rows
                .iter()
                .map(|r| ProbeRow {
                    d: r.d,
                    sums: r.sums.clone(),
                    ratios: r.ratios.clone(),
                    trend: r.trend,
                    within_factor_two: r.within_factor_two,
                })
                .collect(),
        })));
    }
    let trend = |i: usize| format!("{:?}", probe.rows[i].trend).to_lowercase();
    let mut table = Table::new(vec![
        "delta", "role", "net_size", "lower", "upper", "cover_d3", "cover_d5", "trend_d3", "trend_d4", "trend_d5",
    ]);
    let mut push = |delta: f64, role: &str, m: usize| {
        let mut row = vec![num(delta), role.to_string(), m.to_string(), num(bounds.lower)];
        row.push(num(heis_slor::cover_sum(4, m, delta)));
        row.extend([3, 5].map(|d| num(heis_slor::cover_sum(d, m, delta))));
        row.extend((0..PROBE_DIMENSIONS.len()).map(trend));
        table.push(row);
    };
    push(delta, "requested", bounds.net_size);
    for (&d, &m) in probe.deltas.iter().zip(&probe.net_sizes) {
        push(d, "probe", m);
    }
    Ok(Output::Csv(table))
}

pub fn diamond_box(
    (p, q): (Event, Event),
    samples: usize,
    seed: u64,
    format: Option<Format>,
) -> Result<Output, CliError> {
    json_only(format, "diamond-box")?;
    let r = diamond_in_box_check(p, q, samples, seed)?;
    let rho = inner_radius();
    Ok(Output::Json(Report::DiamondBox(DiamondBoxReport {
        p: arr(p),
        q: arr(q),
        seed,
        inclusion_pass: r.inclusion_pass,
        samples: r.samples,
        draws: r.draws,
        axis_box: r.axis_box,
        sr_box: r.sr_box,
        axis_violations: r.axis_violations,
        sr_violations: r.sr_violations,
        counterexample: r.counterexample.map(arr),
        rho: rho.rho,
        d: rho.d(),
        c_estimate: ball_box_constant(BALL_BOX_GRID),
    })))
}

pub fn curvature_check(
    t: Option<f64>,
    n: Option<f64>,
    wmax: f64,
    step: f64,
    format: Option<Format>,
) -> Result<Output, CliError> {
    json_only(format, "curvature-check")?;
    let mid = midpoint_det_check(step)?;
    let theta = heis_slor::tau(Event::new(-1.0, 0.0, 0.0), Event::new(1.0, 0.0, 0.0));
    let bm = bm_inequality_eval(
        1.0,
        mid.inversion_det,
        mid.juillet_bound,
        0.0,
        Dim::Infinite,
        0.5,
        theta,
    )?;
    let ts: Vec<f64> = t.map_or_else(|| TMCP_T.to_vec(), |t| vec![t]);
    let ns: Vec<f64> = n.map_or_else(|| TMCP_N.to_vec(), |n| vec![n]);
    let mut witnesses = Vec::new();
    for &t in &ts {
        for &n in &ns {
            let r = tmcp_violation_report(t, n, wmax)?;
            witnesses.push(TmcpWitness {
                t,
                n,
                w_max: r.w_max,
                witness: r.witness,
                ratio: r.ratio,
                bound_t: r.bound_t,
                bound_one_minus_t: r.bound_one_minus_t,
                conclusive: r.conclusive,
                note: r.note,
            });
        }
    }
    Ok(Output::Json(Report::CurvatureCheck(CurvatureReport {
        step,
        step_warning: mid.step_warning,
        midpoint_det: mid.numeric,
        midpoint_analytic: mid.analytic,
        juillet_bound: mid.juillet_bound,
        inversion_det: mid.inversion_det,
        bm_rhs: mid.bm_rhs,
        contradiction: mid.contradiction,
        bm_infinity: BmSummary {
            lhs: bm.lhs,
            rhs: bm.rhs,
            satisfied: bm.satisfied,
        },
        tmcp_witnesses: witnesses,
        appendix_scan: SCAN_W
            .iter()
            .map(|&w| ScanPoint {
                w,
                volume: unit_tau_diamond_volume(w),
            })
            .collect(),
    })))
}
