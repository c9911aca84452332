//! Machine-readable outputs. Every JSON document carries a `kind` tag and the
//! schema version; its layout is described by `schemas/report.json`.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct IsoSolveReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub case: &'static str,
    #[serde(rename = "T")]
    pub t: f64,
    pub y_c: Option<f64>,
    pub max_length: f64,
    /// Rows `[t, x, y]`.
    pub curve: Option<Vec<[f64; 3]>>,
}

#[derive(Debug, Serialize)]
pub struct TauReport {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub tau: f64,
    pub causal: bool,
    pub chronological: bool,
}

#[derive(Debug, Serialize)]
pub struct GeodesicReport {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub case: &'static str,
    pub length: f64,
    /// `(u, v, w)` of the timelike geodesic.
    pub param: Option<[f64; 3]>,
    /// Rows `[t, x, y, z]`.
    pub points: Vec<[f64; 4]>,
}

#[derive(Debug, Serialize)]
pub struct DiamondVolumeReport {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub closed: f64,
    pub mc: Option<f64>,
    pub stderr: Option<f64>,
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct ProbeRow {
    pub d: u32,
    pub sums: Vec<f64>,
    pub ratios: Vec<f64>,
    pub trend: heis_slor::Trend,
    pub within_factor_two: bool,
}

#[derive(Debug, Serialize)]
pub struct HausdorffReport {
    pub center: [f64; 3],
    pub radius: f64,
    pub delta: f64,
    pub seed: u64,
    pub net_samples: usize,
    pub net_size: usize,
    pub lower: f64,
    pub upper: f64,
    pub probe_deltas: Vec<f64>,
    pub probe_net_sizes: Vec<usize>,
    pub probe_uppers: Vec<f64>,
    pub probe: Vec<ProbeRow>,
}

#[derive(Debug, Serialize)]
pub struct DiamondBoxReport {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub seed: u64,
    pub inclusion_pass: bool,
    pub samples: usize,
    pub draws: usize,
    pub axis_box: f64,
    pub sr_box: f64,
    pub axis_violations: usize,
    pub sr_violations: usize,
    pub counterexample: Option<[f64; 3]>,
    pub rho: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "C_estimate")]
    pub c_estimate: f64,
}

#[derive(Debug, Serialize)]
pub struct TmcpWitness {
    pub t: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub w_max: f64,
    pub witness: Option<f64>,
    pub ratio: Option<f64>,
    pub bound_t: f64,
    pub bound_one_minus_t: f64,
    pub conclusive: bool,
    pub note: String,
}

#[derive(Debug, Serialize)]
pub struct ScanPoint {
    pub w: f64,
    pub volume: f64,
}

#[derive(Debug, Serialize)]
pub struct BmSummary {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Serialize)]
pub struct CurvatureReport {
    pub step: f64,
    pub step_warning: bool,
    pub midpoint_det: f64,
    pub midpoint_analytic: f64,
    pub juillet_bound: f64,
    pub inversion_det: f64,
    pub bm_rhs: f64,
    pub contradiction: bool,
    /// Entropic Brunn–Minkowski inequality at `K = 0`, `t = 1/2`.
    pub bm_infinity: BmSummary,
    pub tmcp_witnesses: Vec<TmcpWitness>,
    pub appendix_scan: Vec<ScanPoint>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    IsoSolve(IsoSolveReport),
    Tau(TauReport),
    Geodesic(GeodesicReport),
    DiamondVolume(DiamondVolumeReport),
    Hausdorff(HausdorffReport),
    DiamondBox(DiamondBoxReport),
    CurvatureCheck(CurvatureReport),
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    version: u32,
    #[serde(flatten)]
    report: &'a Report,
}

/// Header plus rows of already formatted cells.
#[derive(Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip rendering, with an exponent for very small or large values.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub enum Output {
    Json(Report),
    Csv(Table),
    Text(String),
}

impl Output {
    pub fn render(&self) -> serde_json::Result<String> {
        Ok(match self {
            Output::Json(report) => {
                let mut s = serde_json::to_string_pretty(&Envelope {
                    version: SCHEMA_VERSION,
                    report,
                })?;
                s.push('\n');
                s
            }
            Output::Csv(table) => {
                let mut s = table.header.join(",");
                s.push('\n');
                for row in &table.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Output::Text(text) => format!("{text}\n"),
        })
    }
}
