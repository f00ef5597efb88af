//! Acceptance criteria 1 to 6. Each criterion prints one PASS/FAIL line with its details;
//! the test fails if any criterion fails.

use certzero::airy::{airy_all, airy_zero, airy_zero_dd, mcmahon, quwong_minima};
use certzero::bessel_oracle::{bessel_j, reference_zero, PrecisionPolicy};
use certzero::closed::{Closed, SERIES_REACH};
use certzero::expansion::{eta_dd, eta_z_derivative, upsilon, upsilon_derivatives, zhat, zhat_derivative};
use certzero::lemma_lab::constants::{alpha_landmarks, structural_constants};
use certzero::lemma_lab::scans::{scan, ScanId};
use certzero::lemma_lab::{gamma_fixed_nu, x1_landmark};
use certzero::liouville::{sigma_of_z, z_of_zeta, zeta_derivatives, zeta_of_z, SEAM};
use certzero::zero_engine::{verify_zero, Verification};
use certzero::Dd;
use rayon::prelude::*;
use std::io::Write;
use std::time::{Duration, Instant};

const NUS: [f64; 8] = [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0];
const M_MAX: u64 = 50;
const SCAN_SAMPLES: usize = 10_000;

/// Collects failed checks for one criterion.
#[derive(Default)]
struct Ledger {
    checks: usize,
    failures: Vec<String>,
}

impl Ledger {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol, || format!("{name} = {got:.12} vs {want} (tol {tol:e})"));
    }

    fn report(&self, n: u32, elapsed: Duration, summary: &str) -> bool {
        let ok = self.failures.is_empty();
        let mut out = std::io::stdout().lock();
        let status = if ok { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {n}: {status} ({} checks, {:.2?}) {summary}", self.checks, elapsed).unwrap();
        for f in &self.failures {
            writeln!(out, "    failed: {f}").unwrap();
        }
        ok
    }
}

fn sweep() -> Vec<Verification> {
    let pairs: Vec<(f64, u64)> = NUS.iter().flat_map(|&nu| (1..=M_MAX).map(move |m| (nu, m))).collect();
    pairs
        .par_iter()
        .map(|&(nu, m)| verify_zero(nu, m, PrecisionPolicy::EXTENDED).expect("verification runs"))
        .collect()
}

fn criterion_1(results: &[Verification], elapsed: Duration) -> bool {
    let mut l = Ledger::default();
    let mut worst = f64::INFINITY;
    for v in results {
        let (nu, m) = (v.enclosure.nu, v.enclosure.m);
        worst = worst.min(v.margin);
        l.check(v.contained, || format!("nu={nu} m={m}: oracle bracket not strictly inside"));
        l.check(v.margin >= 1e-3, || format!("nu={nu} m={m}: margin {:.3e} of width", v.margin));
    }
    l.check(elapsed <= Duration::from_secs(60), || format!("runtime {elapsed:?} > 60 s"));
    l.report(1, elapsed, &format!("containment on {} pairs, smallest margin {worst:.4} of width", results.len()))
}

fn criterion_2(results: &[Verification]) -> bool {
    let t = Instant::now();
    let mut l = Ledger::default();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in results {
        let (nu, m) = (v.enclosure.nu, v.enclosure.m);
        lo = lo.min(v.zhat_error);
        hi = hi.max(v.zhat_error);
        l.check(v.in_window, || {
            format!("nu={nu} m={m}: normalized error {} outside [{}, {}]", v.normalized_error, v.window.0, v.window.1)
        });
        l.check(v.zhat_in_window, || format!("nu={nu} m={m}: zhat error {} outside window", v.zhat_error));
    }
    l.report(2, t.elapsed(), &format!("normalized errors in window; zhat errors span [{lo:.6}, {hi:.6}]"))
}

/// The last continued-fraction convergent of `x > 0` whose denominator stays within `q_max`.
fn best_rational(mut x: Dd, q_max: f64) -> (u128, u128) {
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let mut a = x.hi.floor();
        if (x - a).hi < 0.0 {
            a -= 1.0;
        }
        let (p2, q2) = (a as u128 * p1 + p0, a as u128 * q1 + q0);
        if q2 as f64 > q_max {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac.hi.abs() < 1e-30 {
            break;
        }
        x = frac.recip();
    }
    (p1, q1)
}

fn criterion_3() -> bool {
    let t = Instant::now();
    let mut l = Ledger::default();
    let s = structural_constants().expect("constants");
    l.within("psi0", s.psi0, 0.0434514175, 1e-9);
    l.within("exp psi0", s.exp_psi0, 1.0444092531, 1e-9);
    l.within("kappa2", s.kappa2, 1.000273093257, 1e-9);
    l.within("kappa2 arg", s.kappa2_arg, -10.44187, 1e-3);
    l.check(s.composite <= 1.0446944743, || format!("composite {} > 1.0446944743", s.composite));
    l.within("c1", s.c1, 1.0082524557, 1e-9);
    l.within("c2", s.c2, 0.99176, 1e-4);
    l.within("kappa'", s.kappa_prime, 1.0000277286, 1e-9);
    l.check(s.kappa_prime_m == 12, || format!("kappa' attained at m = {}", s.kappa_prime_m));
    let eta = eta_dd(1.0, 1.0).unwrap() / Dd::from_f64(2.0).cbrt();
    let recovered = best_rational(eta, 1e13);
    l.check(recovered == (44873962351, 3302530481250), || format!("eta(1,1)/2^(1/3) recovers as {recovered:?}"));
    l.within("(1 + eta dot)^(1/2)", s.eta_dot_root, 1.00411, 1e-5);
    let exact_root = (2611707229667.0f64 / 2590330640625.0).sqrt();
    l.within("(1 + eta dot)^(1/2) exact", s.eta_dot_root, exact_root, 1e-15);
    l.within("chi sup", s.chi_sup, 0.62034, 1e-4);
    l.within("z tilde", s.z_tilde, 3.87444, 1e-4);
    l.report(3, t.elapsed(), &format!("psi0 {:.12}, kappa2 {:.12}, composite {:.10}", s.psi0, s.kappa2, s.composite))
}

fn criterion_4() -> bool {
    let t = Instant::now();
    let mut l = Ledger::default();
    let mut ids: Vec<ScanId> = (2..=16).map(ScanId::P).collect();
    ids.extend([ScanId::Zeta4, ScanId::BMinus, ScanId::BPlus, ScanId::G1, ScanId::CalG1, ScanId::CalG2]);
    let reports: Vec<_> = ids.par_iter().map(|&id| (id, scan(id, SCAN_SAMPLES).expect("scan runs"))).collect();
    let get = |id: ScanId| &reports.iter().find(|(i, _)| *i == id).unwrap().1;

    let p7 = get(ScanId::P(7));
    l.within("p7 max", p7.max, 0.99615, 1e-4);
    l.within("p7 argmax", p7.argmax, 0.05288, 1e-4);

    let g1 = get(ScanId::CalG1);
    l.within("calG1 min", g1.min, 0.9697464085, 1e-7);
    l.within("calG1 argmin", g1.argmin, 0.2307692292, 1e-5);

    let g2 = get(ScanId::CalG2);
    l.within("calG2(1)", g2.values[0], 1.0130228266, 1e-8);
    l.check(g2.decreasing, || "calG2 not decreasing".into());
    l.within("calG2 limit", g2.limit, 1.0, 1e-8);

    let bp = get(ScanId::BPlus);
    l.within("B+ max", bp.max, 1.0135313599, 1e-8);
    l.check(bp.argmax == 0.0, || format!("B+ max attained at v = {}", bp.argmax));
    l.within("B- limit", get(ScanId::BMinus).limit, 0.98354, 1e-4);

    let g = get(ScanId::G1);
    l.within("g1 max", g.max, 0.0158, 1e-3);
    l.check(g.argmax == 0.0, || format!("g1 max attained at v = {}", g.argmax));

    let (x1, z3) = x1_landmark();
    l.within("x1", x1, 1.05430, 1e-4);
    l.within("zhat3(x1)", z3, 0.00041, 5e-5);

    for (id, r) in &reports {
        if matches!(id, ScanId::P(7) | ScanId::BMinus | ScanId::BPlus | ScanId::G1 | ScanId::CalG1 | ScanId::CalG2) {
            continue;
        }
        l.check(r.all_positive, || format!("{id} not positive (min {})", r.min));
    }
    let elapsed = t.elapsed();
    l.check(elapsed <= Duration::from_secs(120), || format!("runtime {elapsed:?} > 120 s"));
    l.report(4, elapsed, &format!("{} scans of {SCAN_SAMPLES} points", reports.len()))
}

fn criterion_5() -> bool {
    let t = Instant::now();
    let mut l = Ledger::default();
    l.within("a1", airy_zero(1).unwrap().a_m, -2.338107410, 1e-8);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for m in 1..=200u64 {
        let (endpoint, slope) = quwong_minima(m).unwrap();
        let q = mcmahon(m).abs().powf(0.25);
        let bound = match m {
            1 => 9.171267504e-3,
            2 => 9.612776459e-3,
            _ => 3.230051079e-3 / (sqrt_pi * q),
        };
        l.check(endpoint > bound, || format!("m={m}: endpoint min {endpoint:e} <= {bound:e}"));
        let slope_bound = 0.987836345 / sqrt_pi * q;
        l.check(slope > slope_bound, || format!("m={m}: |Ai'| min {slope} <= {slope_bound}"));
    }
    for m in 1..=500u64 {
        let (a, a0) = (airy_zero_dd(m), mcmahon(m));
        l.check(a.abs().to_f64() > a0.abs(), || format!("m={m}: |a_m| <= |a_m0|"));
    }
    let a = alpha_landmarks();
    l.within("(A.42) at m=1", a.lower_ratio_m1, 0.98905, 1e-4);
    l.within("(A.43) min", a.lower_rhs_min, 0.99663, 1e-4);
    l.check(a.lower_rhs_argmin == 2, || format!("(A.43) min at m = {}", a.lower_rhs_argmin));
    l.within("(A.47a) at m=1", a.upper_ratio_m1, 1.00559, 1e-4);
    l.within("(A.48) max", a.upper_rhs_max, 1.00169, 1e-4);
    l.check(a.upper_rhs_argmax == 3, || format!("(A.48) max at m = {}", a.upper_rhs_argmax));
    l.report(5, t.elapsed(), "Airy zero, interval bounds for m <= 200, ratio landmarks")
}

/// Fourth-order Richardson central difference.
fn richardson(f: impl Fn(f64) -> f64, z: f64, h: f64) -> f64 {
    let d = |h: f64| (f(z + h) - f(z - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn criterion_6() -> bool {
    let t = Instant::now();
    let mut l = Ledger::default();

    // round trip ζ ↔ z
    for i in 0..200 {
        let zeta = -(10f64.powf(-6.0 + 9.0 * i as f64 / 199.0));
        let back = zeta_of_z(z_of_zeta(zeta).unwrap()).unwrap();
        l.check((back - zeta).abs() <= 1e-12 * zeta.abs().max(1.0), || format!("round trip at zeta={zeta}: {back}"));
    }

    // derivative engine against finite differences of the next lower order
    let points: Vec<f64> = (0..20).map(|i| 1.1 * 1.2f64.powi(i)).collect();
    type Family = (&'static str, Box<dyn Fn(f64, u32) -> f64>, u32);
    let families: Vec<Family> = vec![
        ("zeta", Box::new(|z, k| if k == 0 { zeta_of_z(z).unwrap() } else { zeta_derivatives(z, k).unwrap() }), 4),
        ("zhat1", Box::new(|z, k| zhat_derivative(1, z, k).unwrap()), 3),
        ("zhat2", Box::new(|z, k| zhat_derivative(2, z, k).unwrap()), 3),
        ("zhat3", Box::new(|z, k| zhat_derivative(3, z, k).unwrap()), 3),
        ("ups1", Box::new(|z, k| if k == 0 { upsilon(1, z).unwrap() } else { upsilon_derivatives(1, z, k).unwrap() }), 3),
        ("ups2", Box::new(|z, k| if k == 0 { upsilon(2, z).unwrap() } else { upsilon_derivatives(2, z, k).unwrap() }), 3),
        ("ups3", Box::new(|z, k| if k == 0 { upsilon(3, z).unwrap() } else { upsilon_derivatives(3, z, k).unwrap() }), 3),
        ("eta", Box::new(|z, k| eta_z_derivative(2.0, z, k).unwrap()), 3),
    ];
    let mut worst_fd = 0.0f64;
    for (name, f, max_order) in &families {
        for k in 1..=*max_order {
            for &z in &points {
                let h = 0.02 * (z - 1.0).min(1.0);
                let fd = richardson(|x| f(x, k - 1), z, h);
                let exact = f(z, k);
                let rel = (fd - exact).abs() / exact.abs();
                worst_fd = worst_fd.max(rel);
                l.check(rel <= 1e-6, || format!("{name}^({k}) at z={z}: {exact} vs fd {fd}"));
            }
        }
    }

    // explicit fourth derivative of ζ against the jet assembly
    for &z in points.iter().chain([1.0, 1.03, 1.0625, 1.07].iter()) {
        let closed = Closed::Zeta4.value(Dd::from_f64(z)).to_f64();
        let chain = zeta_derivatives(z, 4).unwrap();
        l.check((closed - chain).abs() <= 1e-10 * chain.abs(), || format!("zeta4 at z={z}: {closed} vs {chain}"));
    }

    // continuity across the seam between series and closed forms
    let seam_fns: Vec<(&str, Box<dyn Fn(f64) -> f64>)> = vec![
        ("zeta", Box::new(|z| zeta_of_z(z).unwrap())),
        ("sigma", Box::new(|z| sigma_of_z(z).unwrap())),
        ("zeta4", Box::new(|z| zeta_derivatives(z, 4).unwrap())),
        ("zhat1", Box::new(|z| zhat(1, z).unwrap())),
        ("zhat2", Box::new(|z| zhat(2, z).unwrap())),
        ("zhat3", Box::new(|z| zhat(3, z).unwrap())),
        ("ups1", Box::new(|z| upsilon(1, z).unwrap())),
        ("ups2", Box::new(|z| upsilon(2, z).unwrap())),
        ("ups3", Box::new(|z| upsilon(3, z).unwrap())),
        ("ups3''", Box::new(|z| upsilon_derivatives(3, z, 2).unwrap())),
        ("ups3'''", Box::new(|z| upsilon_derivatives(3, z, 3).unwrap())),
        ("zhat3'", Box::new(|z| zhat_derivative(3, z, 1).unwrap())),
        ("gamma", Box::new(|z| gamma_fixed_nu(4.0, z).unwrap())),
    ];
    for s in [1.0 + SEAM, 1.0 + SERIES_REACH] {
        let (below, above) = (s * (1.0 - f64::EPSILON), s * (1.0 + f64::EPSILON));
        for (name, f) in &seam_fns {
            let (a, b) = (f(below), f(above));
            l.check((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), || format!("{name} jumps at z={s}: {a} vs {b}"));
        }
    }

    // γ = O(ν⁻⁶) uniformly
    let sups: Vec<f64> = [8.0, 16.0, 32.0]
        .iter()
        .map(|&nu: &f64| {
            let sup = (0..4000)
                .map(|i| gamma_fixed_nu(nu, 1.0 / (1.0 - i as f64 / 4000.0)).unwrap().abs())
                .fold(0.0, f64::max);
            sup * nu.powi(6)
        })
        .collect();
    let spread = sups.iter().cloned().fold(f64::MIN, f64::max) / sups.iter().cloned().fold(f64::MAX, f64::min) - 1.0;
    l.check(spread <= 0.10, || format!("nu^6 sup|gamma| varies by {spread}"));

    // Airy Wronskian
    for i in 0..=400 {
        let x = -500.0 + 508.0 * i as f64 / 400.0;
        let v = airy_all(x);
        let w = (v.ai * v.bip - v.aip * v.bi).to_f64() * std::f64::consts::PI;
        l.check((w - 1.0).abs() <= 1e-12, || format!("Airy Wronskian at x={x}: pi W = {w}"));
    }

    // three-term recurrence of the oracle
    let ext = PrecisionPolicy::EXTENDED;
    for &(nu, x) in &[(3.0, 7.5), (1.5, 0.8), (10.0, 3.0), (20.0, 40.0), (50.0, 51.0), (2.25, 300.0), (100.0, 1500.0)] {
        let (a, b, c) = (bessel_j(nu - 1.0, x, ext).unwrap(), bessel_j(nu, x, ext).unwrap(), bessel_j(nu + 1.0, x, ext).unwrap());
        let lhs = a + c;
        let rhs = 2.0 * nu / x * b;
        let scale = a.abs().max(b.abs()).max(c.abs());
        l.check((lhs - rhs).abs() <= 1e-12 * scale, || format!("recurrence at nu={nu}, x={x}: {lhs} vs {rhs}"));
    }

    // standard against extended oracle
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst_policy = 0.0f64;
    for _ in 0..20 {
        let nu = 1.0 + 99.0 * next();
        let m = 1 + (next() * 60.0) as u64;
        let s = reference_zero(nu, m, PrecisionPolicy::STANDARD).unwrap();
        let e = reference_zero(nu, m, PrecisionPolicy::EXTENDED).unwrap();
        let rel = (s - e).abs() / e;
        worst_policy = worst_policy.max(rel);
        l.check(rel <= 1e-11, || format!("nu={nu} m={m}: standard {s} vs extended {e}"));
    }

    l.report(
        6,
        t.elapsed(),
        &format!("worst fd error {worst_fd:.1e}, gamma spread {spread:.1e}, policy gap {worst_policy:.1e}"),
    )
}

#[test]
fn acceptance() {
    let t = Instant::now();
    let results = sweep();
    let elapsed = t.elapsed();
    let outcomes = [
        criterion_1(&results, elapsed),
        criterion_2(&results),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
    ];
    let failed: Vec<usize> = outcomes.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
