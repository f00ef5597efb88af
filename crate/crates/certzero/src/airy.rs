//! Airy functions on the real line, the modulus M(x), and the negative zeros of Ai.
//!
//! On [`TABLE_MIN`, `TABLE_MAX`] values come from a double-double table of
//! (Ai, Ai', Bi, Bi') at spacing 1/4, built once by Taylor-stepping `y'' = x y`
//! out from the origin, and a short Taylor expansion from the nearest node.
//! Outside that range the modulus/phase and exponential asymptotic forms are used.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::optim::golden_min;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

pub const TABLE_MIN: f64 = -512.0;
pub const TABLE_MAX: f64 = 8.0;
const STEP: f64 = 0.25;

/// Zeros `a_1..=a_ZERO_CAP` are memoised; beyond that the asymptotic series is exact to DD.
pub const ZERO_CAP: usize = 2048;

#[derive(Clone, Copy, Debug)]
pub struct AiryValues {
    pub ai: Dd,
    pub aip: Dd,
    pub bi: Dd,
    pub bip: Dd,
}

/// Advances `(y, y')` of `y'' = x y` from `x0` to `x0 + h`.
fn taylor_step(x0: Dd, h: Dd, y: Dd, yp: Dd) -> (Dd, Dd) {
    if h.hi == 0.0 {
        return (y, yp);
    }
    // d[k] = c[k] h^k, with (k+2)(k+1) c[k+2] = x0 c[k] + c[k-1]
    let h2x = x0 * h.sqr();
    let h3 = h.sqr() * h;
    let scale = y.abs().hi.max(yp.abs().hi * h.abs().hi).max(1e-300);
    let (mut dm1, mut d0, mut d1) = (Dd::ZERO, y, yp * h);
    let mut val = d0 + d1;
    let mut der = d1;
    let mut small = 0;
    for k in 0..400usize {
        let d2 = (h2x * d0 + h3 * dm1) / ((k + 2) as f64 * (k + 1) as f64);
        val += d2;
        der += d2 * (k + 2) as f64;
        if d2.abs().hi < 1e-35 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        dm1 = d0;
        d0 = d1;
        d1 = d2;
    }
    (val, der / h)
}

struct Table {
    nodes: Vec<AiryValues>,
}

fn table() -> &'static Table {
    static CELL: OnceLock<Table> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = ((TABLE_MAX - TABLE_MIN) / STEP) as usize + 1;
        let origin = (-TABLE_MIN / STEP) as usize;
        let three = Dd::from_f64(3.0);
        let c13 = three.cbrt();
        let start = AiryValues {
            ai: (c13.sqr() * Dd::GAMMA_2_3).recip(),
            aip: -(c13 * Dd::GAMMA_1_3).recip(),
            bi: (c13.sqrt() * Dd::GAMMA_2_3).recip(),
            bip: c13.sqrt() / Dd::GAMMA_1_3,
        };
        let mut nodes = vec![start; n];
        let h = Dd::from_f64(STEP);
        for i in origin + 1..n {
            let x0 = Dd::from_f64(TABLE_MIN + STEP * (i - 1) as f64);
            let p = nodes[i - 1];
            let (ai, aip) = taylor_step(x0, h, p.ai, p.aip);
            let (bi, bip) = taylor_step(x0, h, p.bi, p.bip);
            nodes[i] = AiryValues { ai, aip, bi, bip };
        }
        for i in (0..origin).rev() {
            let x0 = Dd::from_f64(TABLE_MIN + STEP * (i + 1) as f64);
            let p = nodes[i + 1];
            let (ai, aip) = taylor_step(x0, -h, p.ai, p.aip);
            let (bi, bip) = taylor_step(x0, -h, p.bi, p.bip);
            nodes[i] = AiryValues { ai, aip, bi, bip };
        }
        Table { nodes }
    })
}

fn from_table(x: Dd) -> AiryValues {
    let t = table();
    let i = ((x.hi - TABLE_MIN) / STEP).round() as usize;
    let x0 = Dd::from_f64(TABLE_MIN + STEP * i as f64);
    let h = x - x0;
    let p = t.nodes[i];
    let (ai, aip) = taylor_step(x0, h, p.ai, p.aip);
    let (bi, bip) = taylor_step(x0, h, p.bi, p.bip);
    AiryValues { ai, aip, bi, bip }
}

/// Modulus/phase forms for `x < TABLE_MIN`.
fn oscillatory_asymptotic(x: Dd) -> AiryValues {
    let r = -x;
    let rf = r.hi;
    let s = rf.powi(-3);
    let xi = r.sqrt() * r * Dd::ratio(2.0, 3.0);
    let two_pi = Dd::PI * 2.0;
    let reduce = |a: Dd| {
        let k = (a.hi / two_pi.hi).floor();
        (a - two_pi * k).to_f64()
    };
    let m2 = (1.0 - s * (5.0 / 32.0 - s * (1155.0 / 2048.0))) / (PI * rf.sqrt());
    let n2 = rf.sqrt() * (1.0 + s * (7.0 / 32.0 - s * (1365.0 / 2048.0))) / PI;
    let xif = xi.hi;
    let theta = reduce(Dd::PI * 0.25 - xi) + xif * s * (5.0 / 32.0 - s * (1105.0 / 6144.0));
    let phi = reduce(Dd::PI * 0.75 - xi) - xif * s * (7.0 / 32.0 - s * (1463.0 / 6144.0));
    let (m, n) = (m2.sqrt(), n2.sqrt());
    AiryValues {
        ai: Dd::from_f64(m * theta.cos()),
        bi: Dd::from_f64(m * theta.sin()),
        aip: Dd::from_f64(n * phi.cos()),
        bip: Dd::from_f64(n * phi.sin()),
    }
}

/// Exponential forms for `x > TABLE_MAX`.
fn growing_asymptotic(x: f64) -> AiryValues {
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let q = x.powf(0.25);
    // u_k and v_k of the standard expansions
    let mut u = 1.0;
    let (mut su, mut sv, mut au, mut av) = (1.0, 1.0, 1.0, 1.0);
    for k in 1..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        let t = u / xi.powi(k);
        let tv = v / xi.powi(k);
        if t.abs() < 1e-17 {
            break;
        }
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        su += sign * t;
        au += t;
        sv += sign * tv;
        av += tv;
    }
    let e = (-xi).exp();
    let sp = PI.sqrt();
    AiryValues {
        ai: Dd::from_f64(e / (2.0 * sp * q) * su),
        aip: Dd::from_f64(-q * e / (2.0 * sp) * sv),
        bi: Dd::from_f64(au / (e * sp * q)),
        bip: Dd::from_f64(q * av / (e * sp)),
    }
}

pub fn airy_all_dd(x: Dd) -> AiryValues {
    if x.hi < TABLE_MIN {
        oscillatory_asymptotic(x)
    } else if x.hi > TABLE_MAX {
        growing_asymptotic(x.hi)
    } else {
        from_table(x)
    }
}

pub fn airy_all(x: f64) -> AiryValues {
    airy_all_dd(Dd::from_f64(x))
}

pub fn airy_ai(x: f64) -> f64 {
    airy_all(x).ai.to_f64()
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy_all(x).aip.to_f64()
}

pub fn airy_bi(x: f64) -> f64 {
    airy_all(x).bi.to_f64()
}

pub fn airy_bi_prime(x: f64) -> f64 {
    airy_all(x).bip.to_f64()
}

/// Airy modulus `(Ai² + Bi²)^{1/2}`.
pub fn modulus_m_dd(x: Dd) -> Dd {
    let v = airy_all_dd(x);
    (v.ai.sqr() + v.bi.sqr()).sqrt()
}

pub fn modulus_m(x: f64) -> f64 {
    modulus_m_dd(Dd::from_f64(x)).to_f64()
}

/// `-{(3/8) π (4m - 1)}^{2/3}`.
pub fn mcmahon_dd(m: u64) -> Dd {
    -(Dd::PI * (0.375 * (4 * m - 1) as f64)).cbrt().sqr()
}

pub fn mcmahon(m: u64) -> f64 {
    mcmahon_dd(m).to_f64()
}

/// `-T(t)` at `t = (3/8) π (4m - 1)`, from the standard large-t series.
fn zero_asymptotic(m: u64) -> Dd {
    let t = Dd::PI * (0.375 * (4 * m - 1) as f64);
    let u = t.sqr().recip();
    let coeffs = [
        (162375596875.0, 334430208.0),
        (-108056875.0, 6967296.0),
        (77125.0, 82944.0),
        (-5.0, 36.0),
        (5.0, 48.0),
        (1.0, 1.0),
    ];
    let mut acc = Dd::ZERO;
    for (p, q) in coeffs {
        acc = acc * u + Dd::ratio(p, q);
    }
    -(t.cbrt().sqr() * acc)
}

fn newton_zero(m: u64) -> Dd {
    let mut x = zero_asymptotic(m);
    for _ in 0..60 {
        let v = airy_all_dd(x);
        let step = v.ai / v.aip;
        x -= step;
        if step.abs().hi <= 1e-30 * x.abs().hi {
            break;
        }
    }
    x
}

fn zero_table() -> &'static [Dd] {
    static CELL: OnceLock<Vec<Dd>> = OnceLock::new();
    CELL.get_or_init(|| (1..=ZERO_CAP as u64).into_par_iter().map(newton_zero).collect())
}

/// The m-th negative zero of Ai, `m >= 1`.
pub fn airy_zero_dd(m: u64) -> Dd {
    assert!(m >= 1, "Airy zeros are indexed from 1");
    if m as usize <= ZERO_CAP {
        zero_table()[m as usize - 1]
    } else {
        zero_asymptotic(m)
    }
}

fn delta(m: u64) -> f64 {
    if m <= 2 {
        1.0
    } else {
        0.0
    }
}

/// Lower end `a_m - r_m^-` of the interval around the m-th zero.
pub fn interval_lower_dd(m: u64) -> Dd {
    mcmahon_dd(m) * (1.0 + (0.01 + 0.03 * delta(m)) / (4 * m - 1) as f64)
}

/// Upper end `a_m + r_m^+`.
pub fn interval_upper_dd(m: u64) -> Dd {
    mcmahon_dd(m) * (1.0 - 0.01 / (4 * m - 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryZeroRecord {
    pub m: u64,
    pub a_m: f64,
    pub a_m0: f64,
    pub r_minus: f64,
    pub r_plus: f64,
}

pub fn airy_zero(m: u64) -> Result<AiryZeroRecord> {
    if m == 0 || m > 1_000_000 {
        return Err(Error::Domain(format!("Airy zero index must be in 1..=1000000, got {m}")));
    }
    let a = airy_zero_dd(m);
    Ok(AiryZeroRecord {
        m,
        a_m: a.to_f64(),
        a_m0: mcmahon(m),
        r_minus: (a - interval_lower_dd(m)).to_f64(),
        r_plus: (interval_upper_dd(m) - a).to_f64(),
    })
}

/// `(min |Ai| at the interval ends, min |Ai'| over the interval)`.
pub fn quwong_minima(m: u64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::Domain("Airy zero index must be >= 1".into()));
    }
    let lo = interval_lower_dd(m).to_f64();
    let hi = interval_upper_dd(m).to_f64();
    let endpoint = airy_ai(lo).abs().min(airy_ai(hi).abs());
    let f = |x: f64| airy_ai_prime(x).abs();
    let n = 512;
    let step = (hi - lo) / (n - 1) as f64;
    let (mut best, mut best_val) = (0usize, f(lo));
    for i in 1..n {
        let v = f(lo + step * i as f64);
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    let a = lo + step * best.saturating_sub(1) as f64;
    let b = (lo + step * (best + 1) as f64).min(hi);
    let (_, refined) = golden_min(f, a, b, 1e-12 * hi.abs());
    Ok((endpoint, best_val.min(refined)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(s: &str) -> Dd {
        s.parse().unwrap()
    }

    #[test]
    fn origin_values() {
        let v = airy_all_dd(Dd::ZERO);
        assert!((v.ai - dd("0.35502805388781723926006318600418318")).abs().hi < 1e-32);
        assert!((v.bi / v.ai - Dd::from_f64(3.0).sqrt()).abs().hi < 1e-31);
    }

    #[test]
    fn marched_values_match_reference() {
        let cases = [
            ("-10", "0.04024123848644319068943031402993459"),
            ("-100.3", "-0.17154021742619231144403927285328612"),
            ("-500.125", "-0.10041583249891424846339136481218444"),
            ("3.7", "0.0017455720006099791367597282324454204"),
        ];
        for (x, ai) in cases {
            let v = airy_all_dd(dd(x));
            assert!((v.ai - dd(ai)).abs().hi < 1e-29, "x = {x}: {}", v.ai);
        }
    }

    #[test]
    fn wronskian() {
        for x in [-600.0, -200.0, -10.0, -0.3, 0.0, 1.0, 7.9, 9.0] {
            let v = airy_all(x);
            let w = (v.ai * v.bip - v.aip * v.bi).to_f64();
            assert!((w - 1.0 / PI).abs() < 1e-12, "x = {x}: {w}");
        }
    }

    #[test]
    fn asymptotic_branch_matches_reference() {
        let v = airy_all(-600.5);
        assert!((v.ai.to_f64() - 0.022586262431426263).abs() < 1e-14);
        assert!((v.aip.to_f64() - 2.7375041442265179).abs() < 1e-12);
        assert!((v.bip.to_f64() - 0.55343214642152651).abs() < 1e-12);
    }

    #[test]
    fn first_zero() {
        let a1 = airy_zero_dd(1);
        assert!((a1 - dd("-2.3381074104597670384891972524467354")).abs().hi < 1e-30);
        assert!((airy_ai_prime(a1.to_f64()).abs() - 0.7012108227206914).abs() < 1e-13);
    }

    #[test]
    fn zero_record() {
        let r = airy_zero(1).unwrap();
        assert!((r.a_m0 + (9.0 * PI / 8.0).powf(2.0 / 3.0)).abs() < 1e-14);
        let upper = -(299.0 / 800.0) * (24.0 * PI * PI).cbrt();
        assert!((r.a_m + r.r_plus - upper).abs() < 1e-14);
        assert!(r.r_minus > 0.0 && r.r_plus > 0.0);
        assert!(airy_zero(0).is_err());
    }

    #[test]
    fn zeros_across_memo_cap_are_continuous() {
        let a = airy_zero_dd(ZERO_CAP as u64);
        let b = zero_asymptotic(ZERO_CAP as u64);
        assert!((a - b).abs().hi < 1e-28);
    }
}
