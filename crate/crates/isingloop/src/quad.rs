//! Periodic trapezoid quadrature with grid doubling.
//!
//! On a 2pi-periodic integrand the trapezoid rule over a uniform grid is the
//! plain mean of the samples, and converges spectrally for analytic
//! integrands. Doubling reuses all previous evaluations; the error estimate
//! is the change produced by the last doubling.

pub(crate) const QUAD_START: usize = 64;
pub(crate) const QUAD_MAX: usize = 1 << 22;

#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadOutcome {
    /// Mean of the integrand over one period.
    pub value: f64,
    /// |change| produced by the final doubling.
    pub error_estimate: f64,
    /// Number of sample points in the final grid.
    #[cfg_attr(not(test), allow(dead_code))]
    pub points: usize,
}

/// Mean of `f` over [-pi, pi), refined by doubling until the change is
/// below `tol` or the grid reaches `QUAD_MAX` points.
pub(crate) fn periodic_mean<F: Fn(f64) -> f64>(f: F, tol: f64) -> QuadOutcome {
    let mut n = QUAD_START;
    let mut sum = 0.0;
    for i in 0..n {
        sum += f(grid_point(i, n));
    }
    let mut value = sum / n as f64;
    let mut err = f64::INFINITY;
    while n < QUAD_MAX {
        // midpoints of the current grid
        let mut mid = 0.0;
        for i in 0..n {
            mid += f(grid_point(2 * i + 1, 2 * n));
        }
        sum += mid;
        n *= 2;
        let next = sum / n as f64;
        err = (next - value).abs();
        value = next;
        if err < tol {
            break;
        }
    }
    QuadOutcome { value, error_estimate: err, points: n }
}

#[inline]
fn grid_point(i: usize, n: usize) -> f64 {
    -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / n as f64
}
