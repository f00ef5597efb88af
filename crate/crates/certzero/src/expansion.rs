//! Coefficient functions ẑ₁..ẑ₃ and Υ₁..Υ₃, the correction η(ν, z), and 𝒵₃ = ζ + η.
//!
//! Derivatives in z come from Taylor jets. Derivatives in ζ (written with dots) use
//! `d/dζ = -zσ d/dz`.

use crate::closed::Closed;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::liouville::{check_z, frame};
use crate::series::Series;

fn zhat_form(j: u32) -> Result<Closed> {
    match j {
        1 => Ok(Closed::Zhat1),
        2 => Ok(Closed::Zhat2),
        3 => Ok(Closed::Zhat3),
        _ => Err(Error::Order(format!("coefficient index must be 1..=3, got {j}"))),
    }
}

fn upsilon_form(j: u32) -> Result<Closed> {
    match j {
        1 => Ok(Closed::Ups1),
        2 => Ok(Closed::Ups2),
        3 => Ok(Closed::Ups3),
        _ => Err(Error::Order(format!("upsilon index must be 1..=3, got {j}"))),
    }
}

fn check_order(order: u32, max: u32) -> Result<usize> {
    if order > max {
        return Err(Error::Order(format!("derivative order must be <= {max}, got {order}")));
    }
    Ok(order as usize)
}

pub(crate) fn check_nu(nu: f64) -> Result<Dd> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!("nu must be finite, got {nu}")));
    }
    if nu < 1.0 {
        return Err(Error::Hypothesis(format!("the error bounds require nu >= 1, got {nu}")));
    }
    Ok(Dd::from_f64(nu))
}

pub fn zhat(j: u32, z: f64) -> Result<f64> {
    Ok(zhat_form(j)?.value(check_z(z)?).to_f64())
}

/// `d^order ẑ_j / dz^order`, order 0..=3.
pub fn zhat_derivative(j: u32, z: f64, order: u32) -> Result<f64> {
    let k = check_order(order, 3)?;
    Ok(zhat_form(j)?.derivative(check_z(z)?, k).to_f64())
}

pub fn upsilon(j: u32, z: f64) -> Result<f64> {
    Ok(upsilon_form(j)?.value(check_z(z)?).to_f64())
}

/// `d^order Υ_j / dz^order`, order 1..=3.
pub fn upsilon_derivatives(j: u32, z: f64, order: u32) -> Result<f64> {
    if order == 0 {
        return Err(Error::Order("derivative order must be 1..=3, got 0".into()));
    }
    let k = check_order(order, 3)?;
    Ok(upsilon_form(j)?.derivative(check_z(z)?, k).to_f64())
}

/// Υ₁..Υ₃ and their first three z-derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpsilonSet {
    pub values: [f64; 3],
    pub d1: [f64; 3],
    pub d2: [f64; 3],
    pub d3: [f64; 3],
}

impl UpsilonSet {
    pub fn at(z: f64) -> Result<UpsilonSet> {
        let z0 = check_z(z)?;
        let mut out = UpsilonSet { values: [0.0; 3], d1: [0.0; 3], d2: [0.0; 3], d3: [0.0; 3] };
        for (i, c) in [Closed::Ups1, Closed::Ups2, Closed::Ups3].into_iter().enumerate() {
            let s = c.jet::<4>(z0);
            out.values[i] = s.derivative(0).to_f64();
            out.d1[i] = s.derivative(1).to_f64();
            out.d2[i] = s.derivative(2).to_f64();
            out.d3[i] = s.derivative(3).to_f64();
        }
        Ok(out)
    }
}

/// ẑ₁..ẑ₃ and their first z-derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientSet {
    pub zhat: [f64; 3],
    pub d1: [f64; 3],
}

impl CoefficientSet {
    pub fn at(z: f64) -> Result<CoefficientSet> {
        let z0 = check_z(z)?;
        let mut out = CoefficientSet { zhat: [0.0; 3], d1: [0.0; 3] };
        for (i, c) in [Closed::Zhat1, Closed::Zhat2, Closed::Zhat3].into_iter().enumerate() {
            let s = c.jet::<2>(z0);
            out.zhat[i] = s.c[0].to_f64();
            out.d1[i] = s.c[1].to_f64();
        }
        Ok(out)
    }
}

/// Jet of η(ν, ·) about `z0`.
pub(crate) fn eta_jet<const N: usize>(nu: Dd, z0: Dd) -> Series<N> {
    let inv = nu.sqr().recip();
    let u1 = Closed::Ups1.jet::<N>(z0);
    let u2 = Closed::Ups2.jet::<N>(z0);
    let u3 = Closed::Ups3.jet::<N>(z0);
    ((u3 * inv + u2) * inv + u1) * inv
}

/// Applies `d/dζ = -zσ d/dz` to a jet.
pub(crate) fn dot<const N: usize>(f: Series<N>, z_sigma: Series<N>) -> Series<N> {
    -(z_sigma * f.diff())
}

/// Jet of 𝒵₃(ν, ·) about `z0`.
pub(crate) fn script_z3_jet<const N: usize>(nu: Dd, z0: Dd) -> Series<N> {
    frame::<N>(z0).zeta + eta_jet::<N>(nu, z0)
}

pub fn eta(nu: f64, z: f64) -> Result<f64> {
    Ok(eta_jet::<1>(check_nu(nu)?, check_z(z)?).c[0].to_f64())
}

/// η(ν, z) in double-double.
pub fn eta_dd(nu: f64, z: f64) -> Result<Dd> {
    Ok(eta_jet::<1>(check_nu(nu)?, check_z(z)?).c[0])
}

/// `d^order η / dz^order`, order 0..=3.
pub fn eta_z_derivative(nu: f64, z: f64, order: u32) -> Result<f64> {
    let k = check_order(order, 3)?;
    Ok(eta_jet::<4>(check_nu(nu)?, check_z(z)?).derivative(k).to_f64())
}

/// η̇, η̈, η⃛ as `order` = 1, 2, 3.
pub fn eta_zeta_derivatives(nu: f64, z: f64, order: u32) -> Result<f64> {
    if order == 0 {
        return Err(Error::Order("derivative order must be 1..=3, got 0".into()));
    }
    let k = check_order(order, 3)?;
    let z0 = check_z(z)?;
    let f = frame::<4>(z0);
    let zs = f.z * f.sigma;
    let mut e = eta_jet::<4>(check_nu(nu)?, z0);
    for _ in 0..k {
        e = dot(e, zs);
    }
    Ok(e.c[0].to_f64())
}

pub fn script_z3(nu: f64, z: f64) -> Result<f64> {
    Ok(script_z3_jet::<1>(check_nu(nu)?, check_z(z)?).c[0].to_f64())
}
