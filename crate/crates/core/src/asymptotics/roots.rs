//! Bracketed scalar root finding and a golden-section minimizer.

/// Root of `f` in `[lo, hi]` given `f(lo)` and `f(hi)` of opposite signs.
/// Secant steps are taken while they land inside the bracket and shrink it
/// by at least half; otherwise the bracket is bisected. Stops when the
/// bracket is narrower than `xtol` or `f` vanishes.
pub fn bracketed_root<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64, f64) {
    let (mut flo, mut fhi) = (f(lo), f(hi));
    assert!(flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0, "root not bracketed");
    if flo == 0.0 {
        return (lo, lo, lo);
    }
    if fhi == 0.0 {
        return (hi, hi, hi);
    }
    let mut use_secant = true;
    for _ in 0..400 {
        if hi - lo <= xtol {
            break;
        }
        let width = hi - lo;
        let mut x = 0.5 * (lo + hi);
        if use_secant {
            let s = hi - fhi * (hi - lo) / (fhi - flo);
            if s > lo && s < hi {
                x = s;
            }
        }
        let fx = f(x);
        if fx == 0.0 {
            return (x, x, x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        // fall back to bisection for one step when the secant stalls
        use_secant = hi - lo <= 0.5 * width;
    }
    let best = if flo.abs() <= fhi.abs() { lo } else { hi };
    (best, lo, hi)
}

/// Minimum of a unimodal `f` on `[a, b]`: returns `(argmin, min)`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > xtol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
