//! The Liouville variable ζ(z) and the scale factor σ(z) on z ≥ 1.
//!
//! ζ is defined by `(2/3)(-ζ)^{3/2} = sqrt(z²-1) - arcsec z` and σ by `σ² = ζ/(1-z²)`.
//! Both are analytic through the turning point z = 1. Within [`SEAM`] of it values come
//! from a long Taylor series in `t = z - 1`; beyond it from the closed form. Derivatives
//! are carried as truncated Taylor jets, obtained from `dζ/dz = -1/(zσ)`.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::series::{shift, Series};
use std::sync::OnceLock;

/// Half-width of the turning-point neighbourhood that uses series in `z - 1`.
pub const SEAM: f64 = 1.0 / 16.0;

/// Number of terms kept in the global series about z = 1.
pub(crate) const NG: usize = 48;

pub(crate) struct SeamSeries {
    pub zeta: [Dd; NG],
    pub sigma: [Dd; NG],
}

pub(crate) fn seam_series() -> &'static SeamSeries {
    static CELL: OnceLock<SeamSeries> = OnceLock::new();
    CELL.get_or_init(|| {
        // sqrt(s²-1)/s with s = 1 + u equals sqrt(2u) g(u)
        let t = Series::<NG>::variable(Dd::ZERO);
        let g = (t * 0.5 + 1.0).sqrt() / (t + 1.0);
        let mut h = [Dd::ZERO; NG];
        for (k, hk) in h.iter_mut().enumerate() {
            *hk = g.c[k] / (k as f64 + 1.5);
        }
        let k = (Series { c: h } * 1.5).powf(Dd::ratio(2.0, 3.0));
        let cbrt2 = Dd::from_f64(2.0).cbrt();
        let mut zeta = [Dd::ZERO; NG];
        for j in 1..NG {
            zeta[j] = -(cbrt2 * k.c[j - 1]);
        }
        let sigma = (k / (t * 0.5 + 1.0)).sqrt() * cbrt2.recip();
        SeamSeries { zeta, sigma: sigma.c }
    })
}

fn horner(a: &[Dd], t: Dd) -> Dd {
    a.iter().rev().fold(Dd::ZERO, |acc, &c| acc * t + c)
}

/// ζ and σ at a point, in double-double precision. Requires `z >= 1`.
pub(crate) fn zeta_sigma_dd(z: Dd) -> (Dd, Dd) {
    let t = z - 1.0;
    if t.hi <= SEAM {
        let s = seam_series();
        return (horner(&s.zeta, t), horner(&s.sigma, t));
    }
    let w = (z.sqr() - 1.0).sqrt();
    let zeta = -((w - w.atan()) * 1.5).cbrt().sqr();
    let sigma = (zeta / (1.0 - z.sqr())).sqrt();
    (zeta, sigma)
}

/// Taylor jets of z, ζ and σ in `h = z - z0`.
#[derive(Clone, Copy, Debug)]
pub struct Frame<const N: usize> {
    pub z: Series<N>,
    pub zeta: Series<N>,
    pub sigma: Series<N>,
}

pub(crate) fn frame<const N: usize>(z0: Dd) -> Frame<N> {
    let z = Series::variable(z0);
    let t0 = z0 - 1.0;
    if t0.hi <= SEAM {
        let s = seam_series();
        return Frame { z, zeta: shift(&s.zeta, t0), sigma: shift(&s.sigma, t0) };
    }
    let (zeta0, _) = zeta_sigma_dd(z0);
    let one_minus_z2 = -(z * z) + 1.0;
    let mut zeta = Series::constant(zeta0);
    // each pass fixes one more Taylor coefficient
    for _ in 1..N {
        let sigma = (zeta / one_minus_z2).sqrt();
        zeta = (-(z * sigma).recip()).integrate(zeta0);
    }
    let sigma = (zeta / one_minus_z2).sqrt();
    Frame { z, zeta, sigma }
}

pub(crate) fn check_z(z: f64) -> Result<Dd> {
    if !z.is_finite() || z < 1.0 {
        return Err(Error::Domain(format!("z must be finite and >= 1, got {z}")));
    }
    Ok(Dd::from_f64(z))
}

pub fn zeta_of_z(z: f64) -> Result<f64> {
    Ok(zeta_sigma_dd(check_z(z)?).0.to_f64())
}

pub fn sigma_of_z(z: f64) -> Result<f64> {
    Ok(zeta_sigma_dd(check_z(z)?).1.to_f64())
}

/// `d^k ζ / dz^k` for `k` in 1..=4.
pub fn zeta_derivatives(z: f64, order: u32) -> Result<f64> {
    if !(1..=4).contains(&order) {
        return Err(Error::Order(format!("zeta derivative order must be 1..=4, got {order}")));
    }
    let f = frame::<5>(check_z(z)?);
    Ok(f.zeta.derivative(order as usize).to_f64())
}

/// The unique `z >= 1` with `ζ(z) = zeta`.
pub fn z_of_zeta(zeta: f64) -> Result<f64> {
    if !zeta.is_finite() {
        return Err(Error::Domain(format!("zeta must be finite, got {zeta}")));
    }
    Ok(z_of_zeta_dd(Dd::from_f64(zeta))?.to_f64())
}

/// Safeguarded Newton iteration for the inverse map.
pub(crate) fn z_of_zeta_dd(target: Dd) -> Result<Dd> {
    if !target.is_finite() || target.hi > 0.0 {
        return Err(Error::Domain(format!("zeta must be finite and <= 0, got {}", target.hi)));
    }
    if target.hi == 0.0 {
        return Ok(Dd::ONE);
    }
    let a = -target.hi;
    let mut lo = Dd::ONE;
    let mut hi = Dd::from_f64(2.0 / 3.0 * a.powf(1.5) + 4.0);
    let mut z = if a < 1.0 {
        Dd::from_f64(1.0 + a / 2f64.cbrt())
    } else {
        Dd::from_f64(2.0 / 3.0 * a.powf(1.5) + std::f64::consts::FRAC_PI_2)
    };
    for _ in 0..200 {
        let (zeta, sigma) = zeta_sigma_dd(z);
        let f = zeta - target;
        if f.hi == 0.0 {
            return Ok(z);
        }
        if f.hi > 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let step = f * z * sigma;
        let mut next = z + step;
        if !(next > lo && next < hi) {
            next = (lo + hi) * 0.5;
        }
        let moved = (next - z).abs();
        z = next;
        if moved.hi <= 1e-28 * z.hi || (hi - lo).hi <= 1e-30 * z.hi {
            return Ok(z);
        }
    }
    Err(Error::Convergence { iterations: 200, last: z.to_f64() })
}

/// A point of the Liouville frame with its derivative stack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MappedPoint {
    pub z: f64,
    pub zeta: f64,
    pub sigma: f64,
    /// dζ/dz through d⁴ζ/dz⁴.
    pub dzeta: [f64; 4],
    pub dsigma: f64,
}

impl MappedPoint {
    pub fn at(z: f64) -> Result<MappedPoint> {
        let f = frame::<5>(check_z(z)?);
        let mut dzeta = [0.0; 4];
        for (k, d) in dzeta.iter_mut().enumerate() {
            *d = f.zeta.derivative(k + 1).to_f64();
        }
        Ok(MappedPoint {
            z,
            zeta: f.zeta.value().to_f64(),
            sigma: f.sigma.value().to_f64(),
            dzeta,
            dsigma: f.sigma.derivative(1).to_f64(),
        })
    }
}
