//! Golden-section search for unimodal scalar objectives.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimiser of `f` on `[lo, hi]` to absolute tolerance `tol`.
///
/// If the minimum sits on a boundary the search collapses onto it, and the
/// boundary value is returned when it beats the interior candidate.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
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
    let mut best = (x, f(x));
    for edge in [lo, hi] {
        let fe = f(edge);
        if fe < best.1 {
            best = (edge, fe);
        }
    }
    best
}

/// Root of a bracketed sign change by bisection.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo * f(hi) > 0.0 {
        return None;
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
