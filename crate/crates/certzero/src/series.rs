//! Truncated power series over [`Dd`] and the scalar abstraction shared with plain values.

use crate::dd::Dd;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic closed under the four operations, with `f64` scalars on the right.
///
/// Implemented by [`Dd`] (point values) and [`Series`] (Taylor jets), so a closed-form
/// expression written once yields values or derivatives.
pub trait Field:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;

    fn sq(self) -> Self {
        self * self
    }

    fn pow_u(self, n: u32) -> Self {
        let mut acc = Self::cst(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Field for Dd {
    fn cst(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

/// Coefficients `c[k]` of `sum c[k] h^k`, truncated after `h^(N-1)`.
#[derive(Clone, Copy, Debug)]
pub struct Series<const N: usize> {
    pub c: [Dd; N],
}

impl<const N: usize> Series<N> {
    pub fn constant(x: Dd) -> Self {
        let mut c = [Dd::ZERO; N];
        c[0] = x;
        Series { c }
    }

    /// The identity jet `x0 + h`.
    pub fn variable(x0: Dd) -> Self {
        let mut s = Self::constant(x0);
        if N > 1 {
            s.c[1] = Dd::ONE;
        }
        s
    }

    pub fn from_slice(xs: &[Dd]) -> Self {
        let mut c = [Dd::ZERO; N];
        for (dst, src) in c.iter_mut().zip(xs) {
            *dst = *src;
        }
        Series { c }
    }

    pub fn value(&self) -> Dd {
        self.c[0]
    }

    /// k-th derivative at the expansion point: `k! c[k]`.
    pub fn derivative(&self, k: usize) -> Dd {
        let mut f = 1.0;
        for j in 2..=k {
            f *= j as f64;
        }
        self.c[k] * f
    }

    /// Term-by-term derivative; the top coefficient becomes zero.
    pub fn diff(&self) -> Self {
        let mut c = [Dd::ZERO; N];
        for k in 1..N {
            c[k - 1] = self.c[k] * k as f64;
        }
        Series { c }
    }

    /// Antiderivative with constant term `c0`; the top input coefficient is dropped.
    pub fn integrate(&self, c0: Dd) -> Self {
        let mut c = [Dd::ZERO; N];
        c[0] = c0;
        for k in 1..N {
            c[k] = self.c[k - 1] / k as f64;
        }
        Series { c }
    }

    pub fn eval(&self, h: Dd) -> Dd {
        self.c.iter().rev().fold(Dd::ZERO, |acc, &a| acc * h + a)
    }

    /// `self^alpha` for `c[0] > 0`, by the J.C.P. Miller recurrence.
    pub fn powf(&self, alpha: Dd) -> Self {
        self.pow_seeded(alpha, self.c[0].powf(alpha))
    }

    fn pow_seeded(&self, alpha: Dd, p0: Dd) -> Self {
        let a0 = self.c[0];
        let mut p = [Dd::ZERO; N];
        p[0] = p0;
        for n in 1..N {
            let mut acc = Dd::ZERO;
            for k in 1..=n {
                acc += (alpha * k as f64 - (n - k) as f64) * self.c[k] * p[n - k];
            }
            p[n] = acc / (a0 * n as f64);
        }
        Series { c: p }
    }

    pub fn sqrt(&self) -> Self {
        self.pow_seeded(Dd::from_f64(0.5), self.c[0].sqrt())
    }

    pub fn recip(&self) -> Self {
        Self::constant(Dd::ONE) / *self
    }
}

impl<const N: usize> Field for Series<N> {
    fn cst(x: f64) -> Self {
        Self::constant(Dd::from_f64(x))
    }
}

impl<const N: usize> Neg for Series<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Series { c: self.c.map(|x| -x) }
    }
}

impl<const N: usize> Add for Series<N> {
    type Output = Self;
    fn add(mut self, b: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(b.c) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Series<N> {
    type Output = Self;
    fn sub(mut self, b: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(b.c) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Mul for Series<N> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let mut c = [Dd::ZERO; N];
        for i in 0..N {
            if self.c[i].hi == 0.0 {
                continue;
            }
            for j in 0..N - i {
                c[i + j] += self.c[i] * b.c[j];
            }
        }
        Series { c }
    }
}

impl<const N: usize> Div for Series<N> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let mut c = [Dd::ZERO; N];
        for k in 0..N {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= b.c[j] * c[k - j];
            }
            c[k] = acc / b.c[0];
        }
        Series { c }
    }
}

impl<const N: usize> Add<f64> for Series<N> {
    type Output = Self;
    fn add(mut self, b: f64) -> Self {
        self.c[0] += b;
        self
    }
}

impl<const N: usize> Sub<f64> for Series<N> {
    type Output = Self;
    fn sub(mut self, b: f64) -> Self {
        self.c[0] -= b;
        self
    }
}

impl<const N: usize> Mul<f64> for Series<N> {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        Series { c: self.c.map(|x| x * b) }
    }
}

impl<const N: usize> Div<f64> for Series<N> {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        Series { c: self.c.map(|x| x / b) }
    }
}

impl<const N: usize> Mul<Dd> for Series<N> {
    type Output = Self;
    fn mul(self, b: Dd) -> Self {
        Series { c: self.c.map(|x| x * b) }
    }
}

/// Divides two series whose denominators vanish to order `val` at the origin.
///
/// The leading `val` coefficients of `num` are cancellation residue and are discarded.
/// Returns `len - val` coefficients.
pub fn divide_stripped(num: &[Dd], den: &[Dd], val: usize) -> Vec<Dd> {
    let n = num.len().min(den.len()) - val;
    let a = &num[val..val + n];
    let b = &den[val..val + n];
    let mut c = vec![Dd::ZERO; n];
    for k in 0..n {
        let mut acc = a[k];
        for j in 1..=k {
            acc -= b[j] * c[k - j];
        }
        c[k] = acc / b[0];
    }
    c
}

/// Re-expands `sum a[n] t^n` about `t0`: returns the first `N` Taylor coefficients in `h = t - t0`.
pub fn shift<const N: usize>(a: &[Dd], t0: Dd) -> Series<N> {
    let mut work: Vec<Dd> = a.to_vec();
    let mut out = [Dd::ZERO; N];
    // repeated synthetic division by (t - t0)
    for slot in out.iter_mut() {
        let mut acc = Dd::ZERO;
        for x in work.iter_mut().rev() {
            acc = acc * t0 + *x;
            *x = acc;
        }
        *slot = work[0];
        work.remove(0);
        if work.is_empty() {
            break;
        }
    }
    Series { c: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_inverts_multiplication() {
        let a = Series::<6>::from_slice(&[1.0, 2.0, -1.0, 0.5, 0.25, 3.0].map(Dd::from_f64));
        let b = Series::<6>::from_slice(&[2.0, -1.0, 0.0, 4.0, 1.0, 1.0].map(Dd::from_f64));
        let q = (a * b) / b;
        for k in 0..6 {
            assert!((q.c[k] - a.c[k]).abs().hi < 1e-28);
        }
    }

    #[test]
    fn power_of_geometric_series() {
        // (1 - h)^(-1/2) has coefficients binom(2k,k)/4^k
        let s = Series::<8>::from_slice(&[Dd::ONE, -Dd::ONE]);
        let p = s.powf(Dd::from_f64(-0.5));
        let expect = [1.0, 0.5, 0.375, 0.3125, 0.2734375, 0.24609375, 0.2255859375, 0.20947265625];
        for (k, e) in expect.iter().enumerate() {
            assert!((p.c[k] - *e).abs().hi < 1e-30);
        }
    }

    #[test]
    fn taylor_shift_matches_derivatives() {
        // t^3 about t0 = 2: 8 + 12 h + 6 h^2 + h^3
        let a = [0.0, 0.0, 0.0, 1.0].map(Dd::from_f64);
        let s: Series<5> = shift(&a, Dd::from_f64(2.0));
        let expect = [8.0, 12.0, 6.0, 1.0, 0.0];
        for k in 0..5 {
            assert_eq!(s.c[k].to_f64(), expect[k]);
        }
    }

    #[test]
    fn stripped_division() {
        // (t^2 + t^3) / (2 t^2) = 1/2 + t/2
        let num = [0.0, 0.0, 1.0, 1.0, 0.0].map(Dd::from_f64);
        let den = [0.0, 0.0, 2.0, 0.0, 0.0].map(Dd::from_f64);
        let q = divide_stripped(&num, &den, 2);
        assert_eq!(q.len(), 3);
        assert_eq!(q[0].to_f64(), 0.5);
        assert_eq!(q[1].to_f64(), 0.5);
    }
}
