//! One-variable scans on `v ∈ [0, 1)`.
//!
//! Most scans substitute `z = 1/(1 - v)`. A scan multiplied by `λ(v) = α β^v` has α and β
//! chosen so that its value is 1 at `v = 0` and its limit is 1 as `v → 1`. Limits at
//! `v → 1` are obtained by Aitken extrapolation from `z = 10³, 10⁴, 10⁵`.

use super::{cal_g_dd, script_z3_inverse};
use crate::closed::Closed;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::eta_jet;
use crate::liouville::{frame, z_of_zeta_dd};
use crate::optim::golden_min;
use crate::series::Series;
use crate::zero_engine::chi;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Minimum number of grid points accepted by [`scan`].
pub const MIN_SAMPLES: usize = 1000;

/// Golden-section tolerance in `v` used to refine extrema.
pub const REFINE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanId {
    P(u8),
    Zeta4,
    BMinus,
    BPlus,
    G1,
    Chi1,
    CalG1,
    CalG2,
}

impl ScanId {
    /// Every scan that [`scan`] evaluates.
    pub fn supported() -> Vec<ScanId> {
        let mut ids: Vec<ScanId> = (2..=16).map(ScanId::P).collect();
        ids.extend([
            ScanId::Zeta4,
            ScanId::BMinus,
            ScanId::BPlus,
            ScanId::G1,
            ScanId::Chi1,
            ScanId::CalG1,
            ScanId::CalG2,
        ]);
        ids
    }
}

impl fmt::Display for ScanId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanId::P(j) => write!(f, "p{j}"),
            ScanId::Zeta4 => f.write_str("zeta4"),
            ScanId::BMinus => f.write_str("B_minus"),
            ScanId::BPlus => f.write_str("B_plus"),
            ScanId::G1 => f.write_str("g1"),
            ScanId::Chi1 => f.write_str("chi1"),
            ScanId::CalG1 => f.write_str("calG1"),
            ScanId::CalG2 => f.write_str("calG2"),
        }
    }
}

impl FromStr for ScanId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ScanId> {
        let id = match s {
            "zeta4" => ScanId::Zeta4,
            "B_minus" => ScanId::BMinus,
            "B_plus" => ScanId::BPlus,
            "g1" => ScanId::G1,
            "chi1" => ScanId::Chi1,
            "calG1" => ScanId::CalG1,
            "calG2" => ScanId::CalG2,
            _ => match s.strip_prefix('p').and_then(|j| j.parse::<u8>().ok()) {
                Some(j) if (1..=16).contains(&j) => ScanId::P(j),
                _ => return Err(Error::Domain(format!("unknown scan id {s:?}"))),
            },
        };
        Ok(id)
    }
}

/// Extrema and shape of one scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub scan_id: ScanId,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Extrema over the grid, refined locally, and the `v → 1` limit.
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
    pub all_positive: bool,
    pub limit: f64,
    pub increasing: bool,
    pub decreasing: bool,
    /// `(α, β)` of the factor `α β^v`, when the scan is normalized.
    pub scale: Option<(f64, f64)>,
}

fn z_of_v(v: f64) -> Dd {
    Dd::ONE / (1.0 - v)
}

fn one_minus_v_pow(z: Dd, p: f64) -> Dd {
    z.powf(Dd::from_f64(p))
}

fn upsilon_jets(z: Dd) -> [Series<4>; 3] {
    [Closed::Ups1.jet::<4>(z), Closed::Ups2.jet::<4>(z), Closed::Ups3.jet::<4>(z)]
}

/// The unnormalized signed expression of a scan as a function of `z`.
fn raw(id: ScanId, z: Dd) -> Dd {
    match id {
        ScanId::P(2) => one_minus_v_pow(z, 16.0 / 3.0) * super::cal_f_dd(1, z),
        ScanId::P(3) => -(z.sqr() * Closed::Zhat1.derivative(z, 1)),
        ScanId::P(4) => z.sqr().sqr() * Closed::Zhat2.derivative(z, 1),
        ScanId::P(5) => -(z.powi(6) * Closed::Zhat3.derivative(z, 1)),
        ScanId::P(6) => z * (Closed::Zhat1.value(z) + Closed::Zhat2.value(z) * 2.0),
        ScanId::P(7) => (Closed::Zhat1.value(z) + Closed::Zhat2.value(z)) * 76.0,
        ScanId::P(8) => -(one_minus_v_pow(z, 13.0 / 3.0) * Closed::Ups1.derivative(z, 3)),
        ScanId::P(9) => -(one_minus_v_pow(z, 16.0 / 3.0) * Closed::Ups2.derivative(z, 2)),
        ScanId::P(10) => one_minus_v_pow(z, 22.0 / 3.0) * Closed::Ups3.derivative(z, 2),
        ScanId::P(11) => {
            let [u1, u2, _] = upsilon_jets(z);
            one_minus_v_pow(z, 10.0 / 3.0) * (u1.derivative(2) + u2.derivative(2))
        }
        ScanId::P(12) => {
            let [u1, u2, u3] = upsilon_jets(z).map(|u| u.c[0]);
            -(one_minus_v_pow(z, 20.0 / 3.0) * (u2.sqr() - u1 * u3 * Dd::ratio(64.0, 25.0)))
        }
        ScanId::P(13) => {
            let [u1, u2, u3] = upsilon_jets(z).map(|u| u.c[1]);
            -(one_minus_v_pow(z, 26.0 / 3.0) * (u2.sqr() - u1 * u3 * 3.0))
        }
        ScanId::P(14) => {
            let e = eta_jet::<3>(Dd::ONE, z);
            one_minus_v_pow(z, 7.0 / 3.0) * (e.derivative(1) + z * e.derivative(2))
        }
        ScanId::P(15) => {
            let f = frame::<2>(z);
            let g = f.z * f.sigma * eta_jet::<2>(Dd::ONE, z);
            -(z.sqr() * g.derivative(1))
        }
        ScanId::P(16) => {
            let shrunk = if z.hi * 0.9835 > 1.0 { z * 0.9835 } else { Dd::ONE };
            Closed::Zhat3.value(shrunk) / Closed::Zhat3.value(z)
        }
        ScanId::Zeta4 => one_minus_v_pow(z, 10.0 / 3.0) * Closed::Zeta4.value(z),
        ScanId::G1 => {
            let f = frame::<2>(z);
            let zs = (f.z * f.sigma).c[0];
            upsilon_jets(z).iter().fold(Dd::ZERO, |acc, u| acc + (zs * u.c[1]).abs())
        }
        ScanId::CalG1 => cal_g_dd(1, z),
        ScanId::CalG2 => cal_g_dd(2, z),
        ScanId::P(_) | ScanId::BMinus | ScanId::BPlus | ScanId::Chi1 => unreachable!("not a z-scan"),
    }
}

/// Whether the scan carries the factor `α β^v`.
fn normalized(id: ScanId) -> bool {
    matches!(id, ScanId::P(3..=6) | ScanId::P(8..=15))
}

fn b_ratio(v: f64, plus: bool) -> Result<Dd> {
    let zeta = Dd::from_f64(v) / (v - 1.0);
    let z = z_of_zeta_dd(zeta)?;
    let num = if plus {
        script_z3_inverse(Dd::ONE, zeta * 1.0056)?
    } else {
        z_of_zeta_dd(zeta * 0.989)?
    };
    Ok(num / z)
}

/// The value before normalization at `0 <= v < 1`.
fn raw_at(id: ScanId, v: f64) -> Result<f64> {
    let value = match id {
        ScanId::BMinus => b_ratio(v, false)?,
        ScanId::BPlus => b_ratio(v, true)?,
        ScanId::Chi1 => {
            let nu = 10f64.powf(4.0 * v);
            return Ok(chi(nu, 1)? * nu.powf(-5.0 / 3.0));
        }
        _ => raw(id, z_of_v(v)),
    };
    Ok(value.to_f64())
}

/// Aitken extrapolation from three values with geometrically shrinking error.
fn aitken(a: f64, b: f64, c: f64) -> f64 {
    let den = (c - b) - (b - a);
    if den == 0.0 || !den.is_finite() {
        return c;
    }
    c - (c - b).powi(2) / den
}

fn raw_limit(id: ScanId) -> Result<f64> {
    if id == ScanId::Chi1 {
        return raw_at(id, 1.0);
    }
    let at = |z: f64| raw_at(id, 1.0 - 1.0 / z);
    Ok(aitken(at(1e3)?, at(1e4)?, at(1e5)?))
}

/// The scan evaluator after normalization, with its `(α, β)` and `v → 1` limit.
struct Scan {
    id: ScanId,
    scale: Option<(f64, f64)>,
    limit: f64,
}

impl Scan {
    fn new(id: ScanId) -> Result<Scan> {
        let limit = raw_limit(id)?;
        if !normalized(id) {
            return Ok(Scan { id, scale: None, limit });
        }
        let alpha = 1.0 / raw_at(id, 0.0)?.abs();
        let beta = 1.0 / (alpha * limit.abs());
        Ok(Scan { id, scale: Some((alpha, beta)), limit: limit * alpha * beta })
    }

    fn eval(&self, v: f64) -> Result<f64> {
        let r = raw_at(self.id, v)?;
        Ok(match self.scale {
            Some((alpha, beta)) => alpha * beta.powf(v) * r,
            None => r,
        })
    }
}

/// Evaluates scan `id` on `samples` equally spaced points `v = i/samples`.
pub fn scan(id: ScanId, samples: usize) -> Result<ScanReport> {
    if id == ScanId::P(1) {
        return Err(Error::Unsupported("requires unpublished q-coefficients".into()));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!("samples must be >= {MIN_SAMPLES}, got {samples}")));
    }
    let s = Scan::new(id)?;
    let grid: Vec<f64> = (0..samples).map(|i| i as f64 / samples as f64).collect();
    let values = grid.par_iter().map(|&v| s.eval(v)).collect::<Result<Vec<f64>>>()?;

    let n = values.len();
    let imin = (0..n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    let imax = (0..n).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    let refine = |i: usize, sign: f64| -> (f64, f64) {
        let best = (grid[i], values[i]);
        if i == 0 || i + 1 == n {
            return best;
        }
        let (x, fx) = golden_min(|v| sign * s.eval(v).unwrap_or(f64::NAN), grid[i - 1], grid[i + 1], REFINE_TOL);
        if sign * fx < sign * best.1 {
            (x, fx)
        } else {
            best
        }
    };
    let (mut argmin, mut min) = refine(imin, 1.0);
    let (mut argmax, mut max) = refine(imax, -1.0);
    if s.limit < min {
        (argmin, min) = (1.0, s.limit);
    }
    if s.limit > max {
        (argmax, max) = (1.0, s.limit);
    }
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    Ok(ScanReport {
        scan_id: id,
        all_positive: values.iter().all(|&x| x > 0.0) && s.limit > 0.0,
        grid,
        values,
        min,
        max,
        argmin,
        argmax,
        limit: s.limit,
        increasing,
        decreasing,
        scale: s.scale,
    })
}

/// A single normalized scan value at `0 <= v < 1`.
pub fn scan_value(id: ScanId, v: f64) -> Result<f64> {
    if id == ScanId::P(1) {
        return Err(Error::Unsupported("requires unpublished q-coefficients".into()));
    }
    if !(0.0..1.0).contains(&v) {
        return Err(Error::Domain(format!("v must lie in [0, 1), got {v}")));
    }
    Scan::new(id)?.eval(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ScanId::supported() {
            assert_eq!(id.to_string().parse::<ScanId>().unwrap(), id);
        }
        assert!("p17".parse::<ScanId>().is_err());
        assert!(matches!(scan(ScanId::P(1), 1000), Err(Error::Unsupported(_))));
    }

    #[test]
    fn p3_scale_factors() {
        let s = Scan::new(ScanId::P(3)).unwrap();
        let (alpha, beta) = s.scale.unwrap();
        assert!((alpha - 3150.0).abs() < 1e-9);
        assert!((beta - 1.0 / 175.0).abs() < 1e-9);
    }
}
