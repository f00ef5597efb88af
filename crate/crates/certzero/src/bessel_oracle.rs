//! Independent evaluation of J_ν and its zeros.
//!
//! Nothing here depends on the Liouville frame or the expansion coefficients. Values
//! come from the power series near the origin and from Taylor marching of
//! `x²y'' + xy' + (x² - ν²)y = 0` beyond it. Every zero is located by a sign change
//! over one marching step and refined on that step's local polynomial.
//!
//! The same code runs in binary64 ([`Mode::Standard`]) or double-double
//! ([`Mode::Extended`]) arithmetic through the private [`Real`] trait.

use crate::dd::Dd;
use crate::error::{Error, Result};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Largest order accepted.
pub const MAX_NU: f64 = 1e4;
/// Largest argument accepted.
pub const MAX_X: f64 = 2e4;

const MAX_STEP: f64 = 0.5;
const MIN_TERMS: usize = 20;
const MAX_TERMS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Standard,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionPolicy {
    pub mode: Mode,
    /// Bound certified for `|J_ν(root)|`.
    pub target_residual: f64,
}

impl PrecisionPolicy {
    pub const STANDARD: PrecisionPolicy = PrecisionPolicy { mode: Mode::Standard, target_residual: 1e-10 };
    pub const EXTENDED: PrecisionPolicy = PrecisionPolicy { mode: Mode::Extended, target_residual: 1e-22 };

    /// Half-width of the certified bracket around each root.
    fn half_width(self) -> f64 {
        match self.mode {
            Mode::Standard => 4e-12,
            Mode::Extended => 4e-21,
        }
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::EXTENDED
    }
}

impl FromStr for PrecisionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(PrecisionPolicy::STANDARD),
            "extended" => Ok(PrecisionPolicy::EXTENDED),
            _ => Err(Error::Domain(format!("policy must be 'standard' or 'extended', got '{s}'"))),
        }
    }
}

/// A zero of J_ν with a verified sign change across `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedZero {
    pub m: u64,
    pub root: Dd,
    pub lower: Dd,
    pub upper: Dd,
    /// `|J_ν(root)|`.
    pub residual: f64,
}

trait Real:
    Copy
    + PartialOrd
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    const EPS: f64;
    fn of(x: f64) -> Self;
    fn head(self) -> f64;
    fn into_dd(self) -> Dd;
    fn scale2(self, k: i32) -> Self;
    fn from_dd(x: Dd) -> Self;
    fn abs_(self) -> Self {
        if self.head() < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Real for f64 {
    const EPS: f64 = 1.2e-16;
    fn of(x: f64) -> Self {
        x
    }
    fn head(self) -> f64 {
        self
    }
    fn into_dd(self) -> Dd {
        Dd::from_f64(self)
    }
    fn scale2(self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
    fn from_dd(x: Dd) -> Self {
        x.to_f64()
    }
}

impl Real for Dd {
    const EPS: f64 = 1e-33;
    fn of(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn head(self) -> f64 {
        self.hi
    }
    fn into_dd(self) -> Dd {
        self
    }
    fn scale2(self, k: i32) -> Self {
        self.ldexp(k)
    }
    fn from_dd(x: Dd) -> Self {
        x
    }
}

/// Solution state `J = y · 2^e2 · exp(s0)`, `J' = yp · 2^e2 · exp(s0)`.
#[derive(Clone, Copy)]
struct State<T> {
    x: T,
    y: T,
    yp: T,
    e2: i32,
}

impl<T: Real> State<T> {
    fn renormalize(&mut self) {
        let m = self.y.head().abs().max(self.yp.head().abs());
        if m == 0.0 || !m.is_finite() {
            return;
        }
        let e = m.log2().floor() as i32;
        if e.abs() > 64 {
            self.y = self.y.scale2(-e);
            self.yp = self.yp.scale2(-e);
            self.e2 += e;
        }
    }
}

struct Oracle<T> {
    nu: T,
    /// log of the series prefactor `(x/2)^ν / Γ(ν+1)` at the starting point.
    s0: Dd,
}

/// Where the power series hands over to marching.
fn series_limit(nu: f64) -> f64 {
    (8.0 * (nu + 1.0)).sqrt()
}

fn march_start(nu: f64) -> f64 {
    series_limit(nu).min(nu)
}

fn check_nu(nu: f64) -> Result<()> {
    if !nu.is_finite() || nu <= 0.0 || nu > MAX_NU {
        return Err(Error::Domain(format!("nu must lie in (0, {MAX_NU}], got {nu}")));
    }
    Ok(())
}

impl<T: Real> Oracle<T> {
    /// Power series at `x > 0`, normalized by `exp(s0)` with `s0` taken at this `x`.
    fn series_at(nu: f64, x: f64) -> (Oracle<T>, State<T>) {
        let nu_t = T::of(nu);
        let xt = T::of(x);
        let nu_d = Dd::from_f64(nu);
        let s0 = nu_d * Dd::from_f64(x * 0.5).ln() - (nu_d + 1.0).ln_gamma();
        let q = -(xt * xt) * 0.25;
        let mut term = T::of(1.0);
        let mut sum = term;
        let mut dsum = nu_t / xt;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term = term * q / ((nu_t + k) * k);
            sum = sum + term;
            dsum = dsum + term * (nu_t + 2.0 * k) / xt;
            if term.head().abs() <= T::EPS * 1e-3 * sum.head().abs() && k > 2.0 {
                break;
            }
        }
        (Oracle { nu: nu_t, s0 }, State { x: xt, y: sum, yp: dsum, e2: 0 })
    }

    fn scale(&self, e2: i32) -> T {
        T::from_dd((self.s0 + Dd::LN_2 * (e2 as f64)).exp())
    }

    /// Scaled Taylor coefficients `a_k = c_k h^k` of the solution about `s.x`.
    fn local(&self, s: &State<T>, h: T) -> Vec<T> {
        let x0 = s.x;
        let x2 = x0 * x0;
        let shift = x2 - self.nu * self.nu;
        let h2 = h * h;
        let h3 = h2 * h;
        let h4 = h2 * h2;
        let mut a = Vec::with_capacity(64);
        a.push(s.y);
        a.push(s.yp * h);
        let mut peak = s.y.head().abs().max(a[1].head().abs());
        let mut small = 0;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let mut num = x0 * a[k + 1] * h * ((kf + 1.0) * (2.0 * kf + 1.0)) + (shift + kf * kf) * a[k] * h2;
            if k >= 1 {
                num = num + x0 * a[k - 1] * h3 * 2.0;
            }
            if k >= 2 {
                num = num + a[k - 2] * h4;
            }
            let next = -num / (x2 * ((kf + 1.0) * (kf + 2.0)));
            let mag = next.head().abs();
            peak = peak.max(mag);
            a.push(next);
            if mag <= T::EPS * 1e-2 * peak {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 3 && a.len() > MIN_TERMS {
                break;
            }
        }
        a
    }

    /// Next step, adjusted so that `x + h` is representable.
    fn step_len(&self, x: T) -> T {
        let x0 = x.head();
        let h = MAX_STEP.min(2.0 * x0 / self.nu.head()).min(x0 / 4.0);
        (x + h) - x
    }

    fn advance(&self, s: &State<T>, a: &[T], h: T) -> State<T> {
        let (y, dy) = poly(a, T::of(1.0));
        let mut next = State { x: s.x + h, y, yp: dy / h, e2: s.e2 };
        next.renormalize();
        next
    }
}

/// Value and u-derivative of `Σ a_k u^k`.
fn poly<T: Real>(a: &[T], u: T) -> (T, T) {
    let mut p = T::of(0.0);
    let mut dp = T::of(0.0);
    for &c in a.iter().rev() {
        dp = dp * u + p;
        p = p * u + c;
    }
    (p, dp)
}

fn sign<T: Real>(v: T) -> f64 {
    v.head().signum()
}

/// Root of the local polynomial in `u ∈ [0, 1]`, given a sign change.
fn local_root<T: Real>(a: &[T]) -> Result<T> {
    let mut lo = T::of(0.0);
    let mut hi = T::of(1.0);
    let f_lo = sign(poly(a, lo).0);
    let mut u = T::of(0.5);
    for _ in 0..300 {
        let (p, dp) = poly(a, u);
        if p.head() == 0.0 {
            return Ok(u);
        }
        if sign(p) == f_lo {
            lo = u;
        } else {
            hi = u;
        }
        let mut next = u - p / dp;
        if !(next > lo && next < hi) || !next.head().is_finite() {
            next = (lo + hi) * 0.5;
        }
        let moved = (next - u).abs_().head();
        u = next;
        if moved <= T::EPS * 4.0 || (hi - lo).head() <= T::EPS * 4.0 {
            return Ok(u);
        }
    }
    Err(Error::Convergence { iterations: 300, last: u.head() })
}

fn evaluate<T: Real>(nu: f64, x: f64) -> T {
    if x == 0.0 {
        return T::of(0.0);
    }
    if x <= series_limit(nu) {
        let (o, s) = Oracle::<T>::series_at(nu, x);
        return s.y * o.scale(0);
    }
    let (o, mut s) = Oracle::<T>::series_at(nu, march_start(nu));
    let target = T::of(x);
    loop {
        let h = o.step_len(s.x);
        if (target - s.x).head() <= h.head() {
            let h = target - s.x;
            let a = o.local(&s, h);
            let end = o.advance(&s, &a, h);
            return end.y * o.scale(end.e2);
        }
        let a = o.local(&s, h);
        s = o.advance(&s, &a, h);
    }
}

fn zeros<T: Real>(nu: f64, count: usize, policy: PrecisionPolicy) -> Result<Vec<CertifiedZero>> {
    let (o, mut s) = Oracle::<T>::series_at(nu, march_start(nu));
    let delta = policy.half_width();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if s.x.head() > MAX_X {
            return Err(Error::Domain(format!("zero {} of J_{nu} lies beyond x = {MAX_X}", out.len() + 1)));
        }
        let h = o.step_len(s.x);
        let a = o.local(&s, h);
        let next = o.advance(&s, &a, h);
        if sign(s.y) != 0.0 && sign(s.y) != sign(next.y) {
            let u = local_root(&a)?;
            let du = T::of(delta) / h;
            let p_lo = poly(&a, u - du).0;
            let p_hi = poly(&a, u + du).0;
            let x_lo = (s.x + h * (u - du)).head();
            let x_hi = (s.x + h * (u + du)).head();
            if sign(p_lo) == sign(p_hi) || sign(p_lo) == 0.0 {
                return Err(Error::BracketNotFound { lo: x_lo, hi: x_hi });
            }
            let residual = (poly(&a, u).0 * o.scale(s.e2)).abs_().head();
            if residual > policy.target_residual {
                return Err(Error::Convergence { iterations: out.len() + 1, last: residual });
            }
            out.push(CertifiedZero {
                m: out.len() as u64 + 1,
                root: (s.x + h * u).into_dd(),
                lower: (s.x + h * (u - du)).into_dd(),
                upper: (s.x + h * (u + du)).into_dd(),
                residual,
            });
        }
        s = next;
    }
    Ok(out)
}

/// J_ν(x) for `0 < ν ≤ MAX_NU`, `0 ≤ x ≤ MAX_X`.
pub fn bessel_j(nu: f64, x: f64, policy: PrecisionPolicy) -> Result<f64> {
    check_nu(nu)?;
    if !x.is_finite() || !(0.0..=MAX_X).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, {MAX_X}], got {x}")));
    }
    Ok(match policy.mode {
        Mode::Standard => evaluate::<f64>(nu, x),
        Mode::Extended => evaluate::<Dd>(nu, x).to_f64(),
    })
}

/// J_ν(x) in double-double arithmetic.
pub fn bessel_j_dd(nu: f64, x: f64) -> Result<Dd> {
    check_nu(nu)?;
    if !x.is_finite() || !(0.0..=MAX_X).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, {MAX_X}], got {x}")));
    }
    Ok(evaluate::<Dd>(nu, x))
}

/// The first `count` positive zeros of J_ν, in increasing order.
pub fn reference_zeros(nu: f64, count: usize, policy: PrecisionPolicy) -> Result<Vec<CertifiedZero>> {
    check_nu(nu)?;
    if nu < 1.0 {
        return Err(Error::Domain(format!("reference zeros require nu >= 1, got {nu}")));
    }
    match policy.mode {
        Mode::Standard => zeros::<f64>(nu, count, policy),
        Mode::Extended => zeros::<Dd>(nu, count, policy),
    }
}

pub fn reference_zero_certified(nu: f64, m: u64, policy: PrecisionPolicy) -> Result<CertifiedZero> {
    if m == 0 {
        return Err(Error::Domain("zero index m must be >= 1".into()));
    }
    Ok(*reference_zeros(nu, m as usize, policy)?.last().expect("m >= 1 zeros"))
}

/// j_{ν,m}.
pub fn reference_zero(nu: f64, m: u64, policy: PrecisionPolicy) -> Result<f64> {
    Ok(reference_zero_certified(nu, m, policy)?.root.to_f64())
}
