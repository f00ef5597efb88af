//! Rational expressions in (z, σ, ζ) that are 0/0 at the turning point.
//!
//! Each [`Closed`] form is written once as a numerator/denominator pair over any
//! [`Field`]. Away from z = 1 the pair is evaluated on Taylor jets of the Liouville
//! frame. Near z = 1 both are expanded about t = 0, the common zero of order
//! [`Closed::valuation`] is divided out, and the resulting series is re-centred.

use crate::dd::Dd;
use crate::liouville::{frame, seam_series, NG};

/// Series reach in `z - 1`; closed forms carry ζ⁸ denominators that cancel badly closer in.
pub const SERIES_REACH: f64 = 0.25;
use crate::series::{divide_stripped, shift, Field, Series};
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closed {
    Zhat1,
    Zhat2,
    Zhat3,
    Ups1,
    Ups2,
    Ups3,
    /// ψ as a function of z.
    Psi,
    /// d⁴ζ/dz⁴ written out explicitly.
    Zeta4,
}

const ALL: [Closed; 8] = [
    Closed::Zhat1,
    Closed::Zhat2,
    Closed::Zhat3,
    Closed::Ups1,
    Closed::Ups2,
    Closed::Ups3,
    Closed::Psi,
    Closed::Zeta4,
];

fn zhat2_braces<T: Field>(z: T, s: T, q: T) -> T {
    let z2 = z.sq();
    s.pow_u(9) * (z2 * 35.0 + 221.0) * 200.0 - s.pow_u(7) * q * (z2 * 75.0 + 982.0) * 80.0
        - s.pow_u(6) * z2 * 4000.0
        + s.pow_u(5) * q.sq() * (z2 * 45.0 + 1543.0) * 24.0
        + s.pow_u(4) * q * (z2 * 6.0 - 5.0) * 200.0
        + s.sq() * q.sq() * 600.0
        + s.pow_u(3) * (z2 * 25.0 - q.pow_u(3) * 264.0) * 10.0
        + s * q * 250.0
        - 5525.0
}

fn zhat3_braces<T: Field>(z: T, s: T, q: T) -> T {
    let z2 = z.sq();
    let z4 = z2.sq();
    let q2 = q.sq();
    let q3 = q2 * q;
    s.pow_u(15) * (z4 * 650.0 + z2 * 8619.0 + 89451.0) * 28000.0
        - s.pow_u(13) * q * (z4 * 3960.0 + z2 * 86491.0 + 1338450.0) * 5600.0
        - z2 * s.pow_u(12) * (z2 * 35.0 + 221.0) * 420000.0
        + s.pow_u(11) * q2 * (z4 * 7290.0 + z2 * 282717.0 + 7233983.0) * 1120.0
        + s.pow_u(10) * q * (z4 * 1200.0 + z2 * 15187.0 - 1105.0) * 8400.0
        - s.pow_u(9) * (z4 * q3 * 1260.0 + z2 * q3 * 107859.0 - z4 * 4375.0 + q3 * 5551275.0) * 672.0
        - s.pow_u(8) * q2 * (z4 * 405.0 + z2 * 12762.0 - 4910.0) * 3360.0
        + s.pow_u(7) * q * (z2 * q3 * 136080.0 - z4 * 26250.0 + q3 * 26578824.0 + z2 * 74375.0) * 24.0
        + s.pow_u(6) * (z2 * q3 * 2745.0 - z4 * 125.0 - q3 * 13887.0 - z2 * 16575.0) * 560.0
        - s.pow_u(5) * q2 * (q3 * 111564.0 + z2 * 3375.0 - 625.0) * 168.0
        + s.pow_u(4) * q * (q3 * 792.0 + z2 * 3853.0 - 3315.0) * 700.0
        - s.pow_u(3) * (q3 * 12.0 - z2 * 221.0) * 5250.0
        + s.sq() * q2 * 1374800.0
        + s * q * 1160250.0
        - 78269625.0
}

fn ups2_braces<T: Field>(s: T, q: T) -> T {
    let q2 = q.sq();
    s.pow_u(9) * 11050.0 - s.pow_u(7) * q * 19890.0 + s.pow_u(5) * q2 * 9558.0 - s.pow_u(6) * 125.0
        + s.pow_u(4) * q * 150.0
        - s.sq() * q2 * 45.0
        - (q.pow_u(3) * 3.0 - 2.0) * s.pow_u(3) * 250.0
        - s * q * 300.0
        - 1600.0
}

fn ups3_braces<T: Field>(s: T, q: T) -> T {
    let q2 = q.sq();
    let q3 = q2 * q;
    s.pow_u(15) * 156539250.0 - s.pow_u(13) * q * 469617750.0 + s.pow_u(11) * q2 * 509154660.0
        - s.pow_u(12) * 580125.0
        + s.pow_u(10) * q * 1392300.0
        - s.pow_u(8) * q2 * 1128330.0
        - (q3 * 1681389.0 - 8350.0) * s.pow_u(9) * 140.0
        + (q3 * 450441.0 - 23380.0) * s.pow_u(7) * q * 90.0
        - (q3 * 3219.0 - 2680.0) * s.pow_u(5) * q2 * 378.0
        + (q3 * 2316.0 - 625.0) * s.pow_u(6) * 147.0
        - (q3 * 3.0 - 14.0) * s.pow_u(4) * q * 7875.0
        - s.sq() * q2 * 33075.0
        - (q3 * 12.0 - 125.0) * s.pow_u(3) * 6720.0
        - s * q * 504000.0
        - 5398750.0
}

impl Closed {
    /// Order of the zero of the denominator at z = 1.
    pub fn valuation(self) -> usize {
        match self {
            Closed::Zhat1 | Closed::Ups1 => 2,
            Closed::Zhat2 | Closed::Ups2 | Closed::Psi => 5,
            Closed::Zhat3 | Closed::Ups3 => 8,
            Closed::Zeta4 => 3,
        }
    }

    /// Numerator and denominator at (z, σ, ζ).
    pub fn nd<T: Field>(self, z: T, s: T, q: T) -> (T, T) {
        let u1 = s.pow_u(3) * 10.0 - s * q * 6.0 - 5.0;
        match self {
            Closed::Zhat1 => (z * s * u1, q.sq() * 48.0),
            Closed::Zhat2 => (z * s * zhat2_braces(z, s, q), q.pow_u(5) * 46080.0),
            Closed::Zhat3 => (z * s * zhat3_braces(z, s, q), q.pow_u(8) * 92897280.0),
            Closed::Ups1 => (u1, q.sq() * 48.0),
            Closed::Ups2 => (ups2_braces(s, q), q.pow_u(5) * 11520.0),
            Closed::Ups3 => (ups3_braces(s, q), q.pow_u(8) * 5806080.0),
            Closed::Psi => {
                let z2 = z.sq();
                let w3 = (z2 - 1.0).pow_u(3);
                (w3 * 20.0 + q.pow_u(3) * z2 * (z2 + 4.0) * 16.0, q.sq() * w3 * 64.0)
            }
            Closed::Zeta4 => {
                let z2 = z.sq();
                let s3 = s.pow_u(3);
                let a = z2 * s3;
                let num = s3 * q.pow_u(3) * 12.0
                    + s.sq() * q.sq() * (a * 6.0 - 11.0)
                    + s * q * (-(a * 5.0) + 6.0) * 2.0
                    + (a * 2.0 - 1.0) * (a.sq() * 3.0 + a * 2.0 + 7.0);
                (num, z2.sq() * s.pow_u(4) * q.pow_u(3) * 2.0)
            }
        }
    }

    /// Taylor series in `t = z - 1` about the turning point.
    pub(crate) fn seam_series(self) -> &'static [Dd] {
        static CELL: OnceLock<Vec<Vec<Dd>>> = OnceLock::new();
        let all = CELL.get_or_init(|| {
            let s = seam_series();
            let z = Series::<NG>::variable(Dd::ONE);
            let sigma = Series { c: s.sigma };
            let zeta = Series { c: s.zeta };
            ALL.iter()
                .map(|c| {
                    let (n, d) = c.nd(z, sigma, zeta);
                    divide_stripped(&n.c, &d.c, c.valuation())
                })
                .collect()
        });
        &all[self as usize]
    }

    /// Taylor jet in `h = z - z0`.
    pub fn jet<const N: usize>(self, z0: Dd) -> Series<N> {
        let t0 = z0 - 1.0;
        if t0.hi <= SERIES_REACH {
            return shift(self.seam_series(), t0);
        }
        let f = frame::<N>(z0);
        let (n, d) = self.nd(f.z, f.sigma, f.zeta);
        n / d
    }

    pub fn value(self, z0: Dd) -> Dd {
        self.jet::<1>(z0).c[0]
    }

    /// `d^k/dz^k` at `z0`.
    pub fn derivative(self, z0: Dd, k: usize) -> Dd {
        match k {
            0 => self.value(z0),
            1 => self.jet::<2>(z0).derivative(1),
            2 => self.jet::<3>(z0).derivative(2),
            3 => self.jet::<4>(z0).derivative(3),
            _ => self.jet::<6>(z0).derivative(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(s: &str) -> Dd {
        s.parse().unwrap()
    }

    fn rel(a: Dd, b: Dd) -> f64 {
        ((a - b) / b).abs().hi
    }

    #[test]
    fn turning_point_values() {
        assert!(rel(Closed::Zhat1.value(Dd::ONE), Dd::ratio(1.0, 70.0)) < 1e-28);
        assert!(rel(Closed::Zhat2.value(Dd::ONE), Dd::ratio(-3781.0, 3185000.0)) < 1e-26);
        let z3 = Dd::from_f64(722735647.0) / 1630879250000.0;
        assert!(rel(Closed::Zhat3.value(Dd::ONE), z3) < 1e-24);
        assert!(rel(Closed::Zhat1.derivative(Dd::ONE, 1), Dd::ratio(-1.0, 3150.0)) < 1e-26);
    }

    #[test]
    fn values_at_two() {
        let z = Dd::from_f64(2.0);
        let expect = [
            (Closed::Zhat1, "0.012542448337380856275171095261217928"),
            (Closed::Zhat2, "-0.00061362112153556694771730455430083064"),
            (Closed::Zhat3, "0.00013875672879054501561409937621760968"),
            (Closed::Ups1, "0.010765065859743238968990259966777001"),
            (Closed::Ups2, "-0.00048602548287980006860454976644437237"),
            (Closed::Ups3, "0.00011199090262800570983707184626093606"),
        ];
        for (c, v) in expect {
            assert!(rel(c.value(z), dd(v)) < 1e-26, "{c:?}");
        }
    }

    #[test]
    fn seam_and_closed_paths_agree() {
        let edge = Dd::from_f64(1.0 + SERIES_REACH);
        for c in ALL {
            let inside: Series<4> = shift(c.seam_series(), edge - 1.0);
            let f = frame::<4>(edge);
            let (n, d) = c.nd(f.z, f.sigma, f.zeta);
            let outside = n / d;
            for k in 0..4 {
                let r = rel(inside.c[k], outside.c[k]);
                assert!(r < 1e-17, "{c:?} order {k}: {r}");
            }
        }
    }
}
