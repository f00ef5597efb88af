//! Point estimates and certified enclosures for j_{ν,m}.

use crate::airy::{airy_zero_dd, mcmahon};
use crate::bessel_oracle::{reference_zero_certified, CertifiedZero, PrecisionPolicy};
use crate::closed::Closed;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::expansion::{check_nu, script_z3_jet};
use crate::liouville::{sigma_of_z, z_of_zeta_dd, zeta_sigma_dd};

/// Lower constant of the error window.
pub const WINDOW_LOWER: f64 = 0.969746;
/// Upper constant of the error window.
pub const WINDOW_UPPER: f64 = 1.013023;
/// Prefactor of χ_m.
pub const CHI_SCALE: f64 = 2.297225;
/// Stretch applied to z_{m,0} inside σ in χ_m.
pub const CHI_STRETCH: f64 = 1.01354;

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("zero index m must be >= 1".into()));
    }
    Ok(())
}

/// `a_m ν^{-2/3}`.
fn scaled_airy_zero(nu: Dd, m: u64) -> Dd {
    let c = nu.cbrt();
    airy_zero_dd(m) / c.sqr()
}

pub(crate) fn zm0_dd(nu: Dd, m: u64) -> Result<Dd> {
    z_of_zeta_dd(scaled_airy_zero(nu, m))
}

/// z_{m,0}: the point where ζ(z) = a_m ν^{-2/3}.
pub fn solve_zm0(nu: f64, m: u64) -> Result<f64> {
    check_m(m)?;
    Ok(zm0_dd(check_nu(nu)?, m)?.to_f64())
}

/// Expansion coefficients at z_{m,0}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionCoefficients {
    pub nu: f64,
    pub m: u64,
    pub zm0: f64,
    pub zm1: f64,
    pub zm2: f64,
    pub zm3: f64,
    pub zeta_m0: f64,
    pub sigma_m0: f64,
}

/// The same coefficients kept in double-double.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CoefficientsDd {
    pub nu: Dd,
    pub zm0: Dd,
    pub zm: [Dd; 3],
}

impl CoefficientsDd {
    pub fn new(nu: f64, m: u64) -> Result<CoefficientsDd> {
        check_m(m)?;
        let nu = check_nu(nu)?;
        let zm0 = zm0_dd(nu, m)?;
        let zm = [Closed::Zhat1.value(zm0), Closed::Zhat2.value(zm0), Closed::Zhat3.value(zm0)];
        Ok(CoefficientsDd { nu, zm0, zm })
    }

    /// z_{m,0} + z_{m,1}/ν² + z_{m,2}/ν⁴.
    pub fn point(&self) -> Dd {
        let inv = self.nu.sqr().recip();
        self.zm0 + (self.zm[0] + self.zm[1] * inv) * inv
    }

    /// z_{m,3}/ν⁶.
    pub fn unit(&self) -> Dd {
        self.zm[2] / self.nu.sqr().powi(3)
    }
}

impl ExpansionCoefficients {
    pub fn new(nu: f64, m: u64) -> Result<ExpansionCoefficients> {
        let c = CoefficientsDd::new(nu, m)?;
        let (zeta, sigma) = zeta_sigma_dd(c.zm0);
        Ok(ExpansionCoefficients {
            nu,
            m,
            zm0: c.zm0.to_f64(),
            zm1: c.zm[0].to_f64(),
            zm2: c.zm[1].to_f64(),
            zm3: c.zm[2].to_f64(),
            zeta_m0: zeta.to_f64(),
            sigma_m0: sigma.to_f64(),
        })
    }
}

/// 𝐳_{ν,m} = z_{m,0} + z_{m,1}/ν² + z_{m,2}/ν⁴.
pub fn point_estimate(nu: f64, m: u64) -> Result<f64> {
    Ok(CoefficientsDd::new(nu, m)?.point().to_f64())
}

pub(crate) fn chi_from_zm0(zm0: f64, m: u64) -> Result<f64> {
    Ok(CHI_SCALE * sigma_of_z(CHI_STRETCH * zm0)? / mcmahon(m).abs().sqrt())
}

/// χ_m.
pub fn chi(nu: f64, m: u64) -> Result<f64> {
    chi_from_zm0(solve_zm0(nu, m)?, m)
}

/// An interval `(point + lower_offset, point + upper_offset)` containing j_{ν,m}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroEnclosure {
    pub nu: f64,
    pub m: u64,
    /// ν𝐳_{ν,m}.
    pub point: Dd,
    pub lower_offset: f64,
    pub upper_offset: f64,
    pub chi: f64,
}

impl ZeroEnclosure {
    pub fn lower(&self) -> Dd {
        self.point + self.lower_offset
    }

    pub fn upper(&self) -> Dd {
        self.point + self.upper_offset
    }

    pub fn width(&self) -> f64 {
        self.upper_offset - self.lower_offset
    }

    /// Strict containment.
    pub fn contains(&self, j: Dd) -> bool {
        self.lower() < j && j < self.upper()
    }

    /// Distance from `j` to the nearer endpoint, as a fraction of the width.
    /// Negative when `j` lies outside.
    pub fn margin(&self, j: Dd) -> f64 {
        let d = (j - self.point).to_f64();
        (d - self.lower_offset).min(self.upper_offset - d) / self.width()
    }

    /// The same interval divided by ν, i.e. around 𝐳_{ν,m}.
    pub fn z_scale(&self) -> (Dd, f64, f64) {
        (self.point / self.nu, self.lower_offset / self.nu, self.upper_offset / self.nu)
    }
}

/// The certified enclosure of j_{ν,m}.
pub fn enclosure(nu: f64, m: u64) -> Result<ZeroEnclosure> {
    let c = CoefficientsDd::new(nu, m)?;
    let chi = chi_from_zm0(c.zm0.to_f64(), m)?;
    let slack = chi / nu.powf(5.0 / 3.0);
    let unit = (c.unit() * nu).to_f64();
    Ok(ZeroEnclosure {
        nu,
        m,
        point: c.point() * nu,
        lower_offset: unit * (WINDOW_LOWER - slack),
        upper_offset: unit * (WINDOW_UPPER + slack),
        chi,
    })
}

/// F_m(ν, z) = 𝒵₃(ν, z) − a_m ν^{-2/3}.
pub fn f_m(nu: f64, m: u64, z: f64) -> Result<f64> {
    check_m(m)?;
    let nu = check_nu(nu)?;
    let z = crate::liouville::check_z(z)?;
    Ok((script_z3_jet::<1>(nu, z).c[0] - scaled_airy_zero(nu, m)).to_f64())
}

pub(crate) fn zhat_root_dd(nu: Dd, m: u64, zm0: Dd) -> Result<Dd> {
    let target = scaled_airy_zero(nu, m);
    let f = |z: Dd| {
        let mut s = script_z3_jet::<2>(nu, z);
        s.c[0] -= target;
        s
    };
    let mut lo = zm0;
    let mut hi = zm0 + Dd::ratio(1.0, 73.0);
    let (f_lo, f_hi) = (f(lo).c[0], f(hi).c[0]);
    if !(f_lo.hi > 0.0 && f_hi.hi < 0.0) {
        return Err(Error::BracketNotFound { lo: lo.to_f64(), hi: hi.to_f64() });
    }
    let mut z = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    for _ in 0..200 {
        let jet = f(z);
        let v = jet.c[0];
        if v.hi == 0.0 {
            return Ok(z);
        }
        if v.hi > 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z - v / jet.c[1];
        if !(next > lo && next < hi) {
            next = (lo + hi) * 0.5;
        }
        let moved = (next - z).abs().hi;
        z = next;
        if moved <= 1e-30 * z.hi {
            return Ok(z);
        }
    }
    Err(Error::Convergence { iterations: 200, last: z.to_f64() })
}

/// ẑ_{ν,m}: the root of F_m(ν, ·) in (z_{m,0}, z_{m,0} + 1/73).
pub fn zhat_root(nu: f64, m: u64) -> Result<f64> {
    let c = CoefficientsDd::new(nu, m)?;
    Ok(zhat_root_dd(c.nu, m, c.zm0)?.to_f64())
}

/// `(ẑ_{ν,m} − 𝐳_{ν,m}) ν⁶ / z_{m,3}`.
pub fn normalized_zhat_error(nu: f64, m: u64) -> Result<f64> {
    let c = CoefficientsDd::new(nu, m)?;
    let zhat = zhat_root_dd(c.nu, m, c.zm0)?;
    Ok(((zhat - c.point()) / c.unit()).to_f64())
}

/// `(j/ν − 𝐳_{ν,m}) ν⁶ / z_{m,3}` for a zero `j` computed elsewhere.
pub fn normalized_error(nu: f64, m: u64, j: Dd) -> Result<f64> {
    let c = CoefficientsDd::new(nu, m)?;
    Ok(((j / c.nu - c.point()) / c.unit()).to_f64())
}

/// Comparison of the enclosure and the ẑ window against an oracle zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verification {
    pub enclosure: ZeroEnclosure,
    pub oracle: CertifiedZero,
    /// [`ZeroEnclosure::margin`] of the oracle root.
    pub margin: f64,
    /// `(j/ν − 𝐳_{ν,m}) ν⁶ / z_{m,3}` for the oracle root.
    pub normalized_error: f64,
    /// `[0.969746 − χ_m/ν^{5/3}, 1.013023 + χ_m/ν^{5/3}]`.
    pub window: (f64, f64),
    /// `(ẑ_{ν,m} − 𝐳_{ν,m}) ν⁶ / z_{m,3}`.
    pub zhat_error: f64,
    /// The oracle's certified bracket lies strictly inside the enclosure.
    pub contained: bool,
    pub in_window: bool,
    /// `zhat_error` lies in `(0.969746, 1.013023)`.
    pub zhat_in_window: bool,
}

impl Verification {
    pub fn pass(&self) -> bool {
        self.contained && self.in_window && self.zhat_in_window
    }
}

pub fn verify_zero(nu: f64, m: u64, policy: PrecisionPolicy) -> Result<Verification> {
    let enclosure = enclosure(nu, m)?;
    let oracle = reference_zero_certified(nu, m, policy)?;
    let c = CoefficientsDd::new(nu, m)?;
    let normalized_error = ((oracle.root / c.nu - c.point()) / c.unit()).to_f64();
    let zhat_error = ((zhat_root_dd(c.nu, m, c.zm0)? - c.point()) / c.unit()).to_f64();
    let slack = enclosure.chi / nu.powf(5.0 / 3.0);
    let window = (WINDOW_LOWER - slack, WINDOW_UPPER + slack);
    Ok(Verification {
        enclosure,
        oracle,
        margin: enclosure.margin(oracle.root),
        normalized_error,
        window,
        zhat_error,
        contained: enclosure.lower() < oracle.lower && oracle.upper < enclosure.upper(),
        in_window: window.0 <= normalized_error && normalized_error <= window.1,
        zhat_in_window: WINDOW_LOWER < zhat_error && zhat_error < WINDOW_UPPER,
    })
}
