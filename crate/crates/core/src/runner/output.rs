//! Fixed-format CSV and JSON writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::entanglement::EntanglementEvents;
use crate::error::Result;
use crate::lindblad::StateTrajectory;
use crate::spectral::RateCoefficients;

pub const TRAJECTORY_HEADER: &str =
    "tau,rho_GG,rho_EE,rho_AA,rho_SS,re_rho_AS,im_rho_AS,re_rho_GE,im_rho_GE,concurrence";
pub const SWEEP_HEADER: &str = "axis_value,max_concurrence,arg_max_tau,entangled";
pub const SUMMARY_HEADER: &str = "family,a,L,pol1,pol2,initial,max_concurrence,arg_max_tau,death_time,birth_time,n_revivals,enhanced,status";
pub const RATES_HEADER: &str = "family,a,L,pol1,pol2,A1,A2,A3,A4,B1,B2,B3,B4";

/// Twelve significant digits in scientific notation.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        // Avoid a signed zero changing the bytes.
        format!("{:.11e}", 0.0)
    } else {
        format!("{x:.11e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Quote a field if it contains a separator.
pub fn field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn trajectory_csv(traj: &StateTrajectory, concurrence: &[f64]) -> String {
    let mut out = String::with_capacity(160 * (traj.len() + 1));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for ((t, s), c) in traj.taus.iter().zip(&traj.states).zip(concurrence) {
        let cols = [
            *t,
            s.rho_gg,
            s.rho_ee,
            s.rho_aa,
            s.rho_ss,
            s.rho_as.re,
            s.rho_as.im,
            s.rho_ge.re,
            s.rho_ge.im,
            *c,
        ];
        let line: Vec<String> = cols.iter().map(|&x| num(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn rates_row(family: &str, a: f64, l: f64, pol: (&str, &str), r: &RateCoefficients) -> String {
    let mut s = format!(
        "{},{},{},{},{}",
        family,
        num(a),
        num(l),
        field(pol.0),
        field(pol.1)
    );
    for x in r.a().iter().chain(r.b().iter()) {
        let _ = write!(s, ",{}", num(*x));
    }
    s
}

pub fn events_json(ev: &EntanglementEvents) -> Result<String> {
    let mut s = serde_json::to_string_pretty(ev)?;
    s.push('\n');
    Ok(s)
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(num(-0.0), num(0.0));
        assert_eq!(num(12345.0), "1.23450000000e4");
    }

    #[test]
    fn quoting() {
        assert_eq!(field("z"), "z");
        assert_eq!(field("[1,0,0]"), "\"[1,0,0]\"");
    }
}
