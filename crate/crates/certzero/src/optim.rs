//! One-dimensional extremum search.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local minimum of `f` on `[a, b]`.
///
/// Returns `(x, f(x))` once the bracket is narrower than `tol`.
pub fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Golden-section search for a local maximum.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, fx) = golden_min(|x| -f(x), a, b, tol);
    (x, -fx)
}

/// Grid search followed by golden-section refinement around the best grid point.
///
/// `better(u, v)` is true when `u` should be preferred over `v`.
pub fn grid_then_golden(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
    maximize: bool,
) -> (f64, f64) {
    let step = (b - a) / (points - 1) as f64;
    let mut best = 0;
    let mut best_val = f(a);
    for i in 1..points {
        let v = f(a + step * i as f64);
        if (maximize && v > best_val) || (!maximize && v < best_val) {
            best = i;
            best_val = v;
        }
    }
    let lo = a + step * best.saturating_sub(1) as f64;
    let hi = (a + step * (best + 1) as f64).min(b);
    let (x, v) = if maximize { golden_max(&f, lo, hi, tol) } else { golden_min(&f, lo, hi, tol) };
    let keep_grid = if maximize { best_val > v } else { best_val < v };
    if keep_grid {
        (a + step * best as f64, best_val)
    } else {
        (x, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        let (x, fx) = golden_min(|x| (x - 0.3).powi(2) + 2.0, -1.0, 2.0, 1e-10);
        // a quadratic minimum is only resolvable to about sqrt(eps)
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn grid_handles_endpoint_extremum() {
        let (x, fx) = grid_then_golden(|x| x.exp(), 0.0, 1.0, 101, 1e-12, true);
        assert!((x - 1.0).abs() < 1e-9);
        assert!((fx - std::f64::consts::E).abs() < 1e-8);
    }
}
