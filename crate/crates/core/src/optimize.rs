//! Bracketed golden-section search for scalar minimization.

/// `(3 − √5)/2`, the fraction of the bracket at which interior points sit.
const INV_GOLDEN_SQ: f64 = 0.381_966_011_250_105_1;

/// Result of a golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for a local minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `x_tol` (absolute) or after
/// `max_iter` contractions. The best point seen is returned, so a
/// monotone `f` yields the better endpoint of the final bracket.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, x_tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = a + INV_GOLDEN_SQ * (b - a);
    let mut d = b - INV_GOLDEN_SQ * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;

    while (b - a) > x_tol && iterations < max_iter {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = a + INV_GOLDEN_SQ * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = b - INV_GOLDEN_SQ * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }

    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Minimum { x, value, iterations }
}
