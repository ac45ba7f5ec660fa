//! CSV and JSON emission.

use serde::Serialize;

use crate::spectrum::{AsymptoticsReport, SweepEntry};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub const EIGS_HEADER: &str = "n,rho,lambda,delta,delta_tilde,counting_residual,chain_residual,ratio,status";
pub const ASYMPTOTICS_HEADER: &str = "n,ratio,lower,upper,in_bounds";

#[derive(Debug, Serialize)]
pub struct EigsRow {
    pub n: usize,
    pub rho: Option<f64>,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub delta_tilde: Option<f64>,
    pub counting_residual: Option<f64>,
    pub chain_residual: Option<f64>,
    pub ratio: Option<f64>,
    pub status: &'static str,
}

impl From<&SweepEntry> for EigsRow {
    fn from(e: &SweepEntry) -> Self {
        let r = e.record();
        EigsRow {
            n: e.n,
            rho: r.map(|r| r.rho_n),
            lambda: r.map(|r| r.lambda_n),
            delta: r.map(|r| r.delta),
            delta_tilde: r.map(|r| r.delta_tilde),
            counting_residual: r.map(|r| r.counting_residual),
            chain_residual: r.map(|r| r.chain_residual),
            ratio: r.map(|r| r.ratio),
            status: e.status().as_str(),
        }
    }
}

fn opt(x: Option<f64>) -> String {
    num(x.unwrap_or(f64::NAN))
}

pub fn eigs_csv(rows: &[EigsRow]) -> String {
    let mut out = format!("{EIGS_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            opt(r.rho),
            opt(r.lambda),
            opt(r.delta),
            opt(r.delta_tilde),
            opt(r.counting_residual),
            opt(r.chain_residual),
            opt(r.ratio),
            r.status
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
    pub in_bounds: bool,
}

pub fn asymptotics_rows(rep: &AsymptoticsReport) -> Vec<AsymptoticsRow> {
    rep.ratios
        .iter()
        .map(|&(n, ratio)| AsymptoticsRow {
            n,
            ratio,
            lower: rep.lower_bound,
            upper: rep.upper_bound,
            in_bounds: rep.in_bounds(ratio),
        })
        .collect()
}

pub fn asymptotics_csv(rows: &[AsymptoticsRow]) -> String {
    let mut out = format!("{ASYMPTOTICS_HEADER}\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.n, num(r.ratio), num(r.lower), num(r.upper), r.in_bounds));
    }
    out
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}
