//! Double-double arithmetic.
//!
//! A [`Dd`] holds an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 32 significant decimal digits. Addition and multiplication
//! are built from the error-free transformations `two_sum` and `two_prod`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    (s, (a - (s - v)) + (b - v))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const FRAC_PI_2: Dd = Dd { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
    pub const LN_2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    pub const GAMMA_1_3: Dd = Dd { hi: 2.6789385347077475, lo: 1.7947798648225244e-16 };
    pub const GAMMA_2_3: Dd = Dd { hi: 1.3541179394264005, lo: -4.6231203911366416e-17 };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact quotient `p / q` of two integers representable in `f64`, rounded once.
    pub fn ratio(p: f64, q: f64) -> Dd {
        Dd::from_f64(p) / q
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        let s = 2f64.powi(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut k = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            k >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::from_f64(f64::NAN) };
        }
        let x = 1.0 / self.hi.sqrt();
        let y = self.hi * x;
        let r = self - Dd::from_f64(y).sqr();
        Dd::from_f64(y) + Dd::from_f64(r.hi * x * 0.5)
    }

    pub fn cbrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::from_f64(self.hi.cbrt());
        y - (y * y * y - self) / (y.sqr() * 3.0)
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = (self - Dd::LN_2 * k).ldexp(-10);
        // expm1 of the reduced argument, then (1+s)^2 - 1 = s(2+s) ten times
        let mut term = r;
        let mut s = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / n;
            s += term;
            if term.hi == 0.0 || term.hi.abs() < 1e-36 * s.hi.abs() {
                break;
            }
        }
        for _ in 0..10 {
            s = s * (s + 2.0);
        }
        (s + 1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        let y = Dd::from_f64(self.hi.ln());
        let y = y + self * (-y).exp() - 1.0;
        y + self * (-y).exp() - 1.0
    }

    pub fn powf(self, p: Dd) -> Dd {
        (p * self.ln()).exp()
    }

    pub fn atan(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return -(-self).atan();
        }
        if self.hi > 1.0 {
            return Dd::FRAC_PI_2 - self.recip().atan();
        }
        let mut x = self;
        let mut halvings = 0;
        while x.hi > 0.03 {
            x = x / ((x.sqr() + 1.0).sqrt() + 1.0);
            halvings += 1;
        }
        let x2 = x.sqr();
        let mut pow = x;
        let mut sum = x;
        let mut k = 1.0;
        loop {
            pow = -(pow * x2);
            k += 2.0;
            let term = pow / k;
            sum += term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(halvings)
    }

    /// `ln Γ(x)` for `x > 0` via upward shift and the Stirling series.
    pub fn ln_gamma(self) -> Dd {
        assert!(self.hi > 0.0, "ln_gamma requires a positive argument");
        let mut x = self;
        let mut shift = Dd::ONE;
        let mut shift_log = Dd::ZERO;
        while x.hi < 30.0 {
            shift *= x;
            if shift.hi > 1e250 {
                shift_log += shift.ln();
                shift = Dd::ONE;
            }
            x += 1.0;
        }
        shift_log += shift.ln();
        const BERNOULLI: [(f64, f64); 15] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
        ];
        let inv = x.recip();
        let inv2 = inv.sqr();
        let mut pow = inv;
        let mut series = Dd::ZERO;
        for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
            let n2 = 2.0 * (k as f64 + 1.0);
            series += pow * Dd::from_f64(num) / (den * n2 * (n2 - 1.0));
            pow *= inv2;
        }
        let half_ln_2pi = (Dd::PI * 2.0).ln() * 0.5;
        (x - 0.5) * x.ln() - x + half_ln_2pi + series - shift_log
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let q2 = (s + (f - e + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

impl Add<Dd> for f64 {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        b + self
    }
}

impl Sub<Dd> for f64 {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        -b + self
    }
}

impl Mul<Dd> for f64 {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        b * self
    }
}

impl Div<Dd> for f64 {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        Dd::from_f64(self) / b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) { *self = *self $op b; }
        }
        impl $tr<f64> for Dd {
            #[inline]
            fn $m(&mut self, b: f64) { *self = *self $op b; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal literal: {0:?}")]
pub struct ParseDdError(String);

impl FromStr for Dd {
    type Err = ParseDdError;

    /// Parses a decimal literal such as `-1.0181048885671160200809461210162`
    /// or `3.2e-5` without intermediate rounding to `f64`.
    fn from_str(s: &str) -> Result<Dd, ParseDdError> {
        let err = || ParseDdError(s.to_string());
        let t = s.trim();
        let (neg, t) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mant, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
            None => (t, 0),
        };
        let mut value = Dd::ZERO;
        let mut scale = exp;
        let mut seen_dot = false;
        let mut digits = 0;
        for c in mant.chars() {
            match c {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    value = value * 10.0 + f64::from(c as u8 - b'0');
                    digits += 1;
                    if seen_dot {
                        scale -= 1;
                    }
                }
                _ => return Err(err()),
            }
        }
        if digits == 0 {
            return Err(err());
        }
        let p = Dd::from_f64(10.0).powi(scale.abs());
        let v = if scale >= 0 { value * p } else { value / p };
        Ok(if neg { -v } else { v })
    }
}

impl fmt::Display for Dd {
    /// Scientific notation with 32 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return write!(f, "0.0");
        }
        let mut x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        x = if e >= 0 { x / Dd::from_f64(10.0).powi(e) } else { x * Dd::from_f64(10.0).powi(-e) };
        if x.hi >= 10.0 {
            x /= 10.0;
            e += 1;
        } else if x.hi < 1.0 {
            x *= 10.0;
            e -= 1;
        }
        let mut digits = String::new();
        for i in 0..32 {
            let d = x.hi.floor().clamp(0.0, 9.0);
            digits.push(char::from(b'0' + d as u8));
            if i == 0 {
                digits.push('.');
            }
            x = (x - d) * 10.0;
        }
        let sign = if self.hi < 0.0 { "-" } else { "" };
        write!(f, "{sign}{digits}e{e}")
    }
}
