//! Numerically established constants and positivity claims, recomputed.
//!
//! [`constants`] recomputes individual constants, [`scans`] evaluates the scaled
//! one-variable functions on `v ∈ [0, 1)` and reports their extrema. The functions
//! in this module are the shared building blocks.

pub mod constants;
pub mod quad;
pub mod scans;

use crate::closed::Closed;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::{check_nu, dot, eta_jet, script_z3_jet};
use crate::liouville::{check_z, frame, z_of_zeta_dd, zeta_sigma_dd};

/// ψ(ζ) for ζ < 0.
pub fn psi_of_zeta(zeta: f64) -> Result<f64> {
    if !zeta.is_finite() || zeta >= 0.0 {
        return Err(Error::Domain(format!("psi requires zeta < 0, got {zeta}")));
    }
    let z = z_of_zeta_dd(Dd::from_f64(zeta))?;
    Ok(Closed::Psi.value(z).to_f64())
}

/// ψ as a function of z ≥ 1, finite at the turning point.
pub fn psi_of_z(z: f64) -> Result<f64> {
    Ok(Closed::Psi.value(check_z(z)?).to_f64())
}

/// c₁ = 1 + σ(1)|η′(1,1)|.
pub(crate) fn c1_dd() -> Dd {
    let (_, sigma) = zeta_sigma_dd(Dd::ONE);
    let e = eta_jet::<2>(Dd::ONE, Dd::ONE);
    sigma * e.c[1].abs() + 1.0
}

/// ζ″, ζ‴, Υ₁, Υ₁′, Υ₁″, Υ₂′, Υ₃ at one point.
struct Pieces {
    d2zeta: Dd,
    d3zeta: Dd,
    u1p: Dd,
    u1pp: Dd,
    u2p: Dd,
    u3: Dd,
}

fn pieces(z: Dd) -> Pieces {
    let f = frame::<4>(z);
    let u1 = Closed::Ups1.jet::<3>(z);
    let u2 = Closed::Ups2.jet::<2>(z);
    Pieces {
        d2zeta: f.zeta.derivative(2),
        d3zeta: f.zeta.derivative(3),
        u1p: u1.derivative(1),
        u1pp: u1.derivative(2),
        u2p: u2.derivative(1),
        u3: Closed::Ups3.value(z),
    }
}

/// ℱ₁ or ℱ₂ at z_{m,0} = `zm0`, in double-double.
pub(crate) fn cal_f_dd(variant: u8, zm0: Dd) -> Dd {
    let z1 = Closed::Zhat1.value(zm0);
    let z2 = Closed::Zhat2.value(zm0);
    let s = z1 + z2 * 2.0;
    let here = pieces(zm0);
    let there = pieces(zm0 + Dd::ratio(1.0, 76.0));
    match variant {
        1 => {
            z1.powi(3) * here.d3zeta
                + z1 * z2 * here.d2zeta * 6.0
                + s.sqr() * there.u1pp * 3.0
                + z2 * there.u1p * 6.0
                + s * there.u2p * 6.0
                + there.u3 * 6.0
        }
        _ => {
            s.powi(3) * there.d3zeta
                + s * z2 * there.d2zeta * 6.0
                + z1.sqr() * here.u1pp * 3.0
                + z2 * here.u1p * 6.0
                + z1 * here.u2p * 6.0
                + here.u3 * 6.0
        }
    }
}

/// ℱ₁ (`variant` 1) or ℱ₂ (`variant` 2) at z_{m,0}.
pub fn cal_f(variant: u8, zm0: f64) -> Result<f64> {
    if variant != 1 && variant != 2 {
        return Err(Error::Domain(format!("variant must be 1 or 2, got {variant}")));
    }
    Ok(cal_f_dd(variant, check_z(zm0)?).to_f64())
}

/// 𝒢₁ or 𝒢₂ at z_{m,0}, in double-double.
pub(crate) fn cal_g_dd(variant: u8, zm0: Dd) -> Dd {
    let z3 = Closed::Zhat3.value(zm0);
    let f = cal_f_dd(variant, zm0);
    if variant == 1 {
        let (_, sigma) = zeta_sigma_dd(zm0);
        zm0 * sigma * f / (z3 * c1_dd() * 6.0)
    } else {
        let x = zm0 + Dd::ratio(1.0, 73.0);
        let (_, sigma) = zeta_sigma_dd(x);
        x * sigma * f / (z3 * 6.0)
    }
}

/// 𝒢₁ (`variant` 1) or 𝒢₂ (`variant` 2) at z_{m,0}.
pub fn cal_g(variant: u8, zm0: f64) -> Result<f64> {
    if variant != 1 && variant != 2 {
        return Err(Error::Domain(format!("variant must be 1 or 2, got {variant}")));
    }
    Ok(cal_g_dd(variant, check_z(zm0)?).to_f64())
}

pub(crate) fn gamma_dd(nu: Dd, z: Dd) -> Dd {
    let f = frame::<4>(z);
    let zs = f.z * f.sigma;
    let e0 = eta_jet::<4>(nu, z);
    let e1 = dot(e0, zs);
    let e2 = dot(e1, zs);
    let e3 = dot(e2, zs);
    let (eta, d1, d2, d3) = (e0.c[0], e1.c[0], e2.c[0], e3.c[0]);
    let zeta = f.zeta.c[0];
    let psi = Closed::Psi.value(z);
    let one_d1 = d1 + 1.0;
    let bracket = eta + (zeta + eta) * (d1 + 2.0) * d1;
    let tail = (d2.sqr() * 3.0 - one_d1 * d3 * 2.0) / (one_d1.sqr() * 4.0);
    psi - nu.sqr() * bracket - tail
}

/// γ(ν, ζ(z)) for fixed ν.
pub fn gamma_fixed_nu(nu: f64, z: f64) -> Result<f64> {
    let nu = check_nu(nu)?;
    let z = check_z(z)?;
    Ok(gamma_dd(nu, z).to_f64())
}

/// The `z ≥ 1` where 𝒵₃(ν, z) equals `target ≤ 𝒵₃(ν, 1)`.
pub(crate) fn script_z3_inverse(nu: Dd, target: Dd) -> Result<Dd> {
    let g = |z: Dd| {
        let mut s = script_z3_jet::<2>(nu, z);
        s.c[0] -= target;
        s
    };
    let mut lo = Dd::ONE;
    if g(lo).c[0].hi < 0.0 {
        return Err(Error::Domain(format!("target {} lies above the value at z = 1", target.hi)));
    }
    // η(ν, ·) is positive and at most η(1, 1) < 0.02
    let mut hi = z_of_zeta_dd(target - 0.02)?;
    let mut z = (lo + hi) * 0.5;
    for _ in 0..300 {
        let s = g(z);
        if s.c[0].hi > 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z - s.c[0] / s.c[1];
        if !(next > lo && next < hi) {
            next = (lo + hi) * 0.5;
        }
        let moved = (next - z).abs().hi;
        z = next;
        if moved <= 1e-30 * z.hi || (hi - lo).hi <= 1e-30 * z.hi {
            return Ok(z);
        }
    }
    Err(Error::Convergence { iterations: 300, last: z.to_f64() })
}

/// The point x₁ = 1/(1 − v₁) with v₁ = 0.05151 and the value ẑ₃(x₁).
pub fn x1_landmark() -> (f64, f64) {
    let x1 = 1.0 / (1.0 - 0.05151);
    (x1, Closed::Zhat3.value(Dd::from_f64(x1)).to_f64())
}
