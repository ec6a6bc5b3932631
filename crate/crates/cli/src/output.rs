use std::fmt::Write as _;

use serde::Serialize;
use wgrate_core::OracleReport;

use crate::commands::{OutputRecord, RateReport, SingleDirectionReport, CSV_HEADER};

/// 17 significant digits, enough to round-trip any f64.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn records_csv(records: &[OutputRecord]) -> String {
    let mut out = String::with_capacity(64 + records.len() * 170);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let row = [r.gamma, r.beta0, r.w, r.rate, r.rate_asym, r.ratio, r.residual].map(num);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn records_table(records: &[OutputRecord]) -> String {
    let mut out = format!(
        "{:>12} {:>12} {:>14} {:>14} {:>14} {:>12} {:>10}\n",
        "gamma", "beta0", "w", "rate", "rate_asym", "ratio", "residual"
    );
    for r in records {
        let _ = writeln!(
            out,
            "{:>12.4e} {:>12.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.10} {:>10.2e}",
            r.gamma, r.beta0, r.w, r.rate, r.rate_asym, r.ratio, r.residual
        );
    }
    out
}

pub fn rate_table(r: &RateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gamma            {}", num(r.gamma));
    let _ = writeln!(out, "method           {}", r.method);
    let _ = writeln!(out, "species          {}", r.species);
    let _ = writeln!(out, "rate_bits_per_s  {}", num(r.rate_bits_per_s));
    out
}

pub fn rate_csv(r: &RateReport) -> String {
    format!(
        "gamma,method,species,rate_bits_per_s\n{},{},{},{}\n",
        num(r.gamma),
        r.method,
        r.species,
        num(r.rate_bits_per_s)
    )
}

pub fn single_direction_table(r: &SingleDirectionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "power_w          {}", num(r.power));
    let _ = writeln!(out, "theta_rad        {}", num(r.theta));
    let _ = writeln!(out, "species          {}", r.species);
    let _ = writeln!(out, "rate_bits_per_s  {}", num(r.rate_bits_per_s));
    out
}

pub fn single_direction_csv(r: &SingleDirectionReport) -> String {
    format!(
        "power,theta,species,rate_bits_per_s\n{},{},{},{}\n",
        num(r.power),
        num(r.theta),
        r.species,
        num(r.rate_bits_per_s)
    )
}

pub fn oracle_table(reports: &[OracleReport]) -> String {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(6);
    let mut out = format!(
        "{:<width$}  {:>22}  {:>22}  {:>10}  {:>10}  status\n",
        "oracle", "computed", "expected", "abs_error", "bound"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>22.15e}  {:>22.15e}  {:>10.3e}  {:>10.3e}  {}",
            r.name,
            r.computed,
            r.expected,
            r.abs_error,
            r.bound,
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    out
}

pub fn oracle_csv(reports: &[OracleReport]) -> String {
    let mut out = String::from("name,computed,expected,abs_error,bound,passed\n");
    for r in reports {
        let _ = writeln!(
            out,
            "\"{}\",{},{},{},{},{}",
            r.name,
            num(r.computed),
            num(r.expected),
            num(r.abs_error),
            num(r.bound),
            r.passed()
        );
    }
    out
}

#[derive(Serialize)]
pub struct OracleJson<'a> {
    #[serde(flatten)]
    pub report: &'a OracleReport,
    pub passed: bool,
}

pub fn oracle_json(reports: &[OracleReport]) -> String {
    let rows: Vec<OracleJson> = reports
        .iter()
        .map(|r| OracleJson {
            report: r,
            passed: r.passed(),
        })
        .collect();
    to_json(&rows)
}
