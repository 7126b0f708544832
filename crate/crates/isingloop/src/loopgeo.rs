//! Geometry of the auxiliary-space loop.
//!
//! A parameter point maps to the closed plane curve
//!
//! ```text
//! x(k) = a*gamma*sin(k) + b*delta*sin(2k)
//! y(k) = a*cos(k) + b*cos(2k) - g
//! ```
//!
//! traced over k in [-pi, pi]. The number of signed turns the curve makes
//! around the origin is the topological invariant of the model; the sign
//! convention counts clockwise traversal as positive. A loop through the
//! origin is degenerate and marks a quantum critical point.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::quad::periodic_mean;

use std::f64::consts::PI;

/// Relative tolerance below which the loop counts as touching the origin.
pub const DEGENERACY_REL_TOL: f64 = 1e-9;

const WINDING_START_SAMPLES: usize = 512;
const WINDING_MAX_SAMPLES: usize = 1 << 21;
const MIN_RADIUS_SCAN: usize = 2048;
const MIN_RADIUS_K_TOL: f64 = 1e-12;

/// One sample of the auxiliary-space curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPoint {
    pub x: f64,
    pub y: f64,
}

impl LoopPoint {
    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A discretized closed curve over k in [-pi, pi], endpoints included.
#[derive(Debug, Clone)]
pub struct LoopSamples {
    pub k_values: Vec<f64>,
    pub points: Vec<LoopPoint>,
}

/// Winding number plus degeneracy diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct WindingResult {
    /// Signed turn count, clockwise positive.
    pub number: i64,
    /// Global minimum of |r(k)|, refined by golden-section search.
    pub min_radius: f64,
    /// True when the loop approaches the origin within
    /// `DEGENERACY_REL_TOL` of its own scale.
    pub degenerate: bool,
    /// Grid doublings performed beyond the initial sampling.
    pub refinement_depth: u32,
    /// |accumulated angle - 2*pi*number| / (2*pi); certifies integrality.
    pub integer_defect: f64,
}

/// Evaluate the loop at one momentum.
pub fn loop_point(params: &ModelParams, k: f64) -> LoopPoint {
    LoopPoint {
        x: params.a * params.gamma * k.sin() + params.b * params.delta * (2.0 * k).sin(),
        y: params.a * k.cos() + params.b * (2.0 * k).cos() - params.g,
    }
}

/// Tangent of the loop at one momentum (derivative with respect to k).
#[cfg(any(debug_assertions, test))]
fn loop_tangent(params: &ModelParams, k: f64) -> (f64, f64) {
    let dx = params.a * params.gamma * k.cos() + 2.0 * params.b * params.delta * (2.0 * k).cos();
    let dy = -params.a * k.sin() - 2.0 * params.b * (2.0 * k).sin();
    (dx, dy)
}

/// Sample the loop on a uniform grid over [-pi, pi], both endpoints included.
pub fn sample_loop(params: &ModelParams, num_points: usize) -> Result<LoopSamples> {
    if num_points < 8 {
        return Err(Error::TooFewPoints { got: num_points, min: 8 });
    }
    let mut k_values = Vec::with_capacity(num_points);
    let mut points = Vec::with_capacity(num_points);
    for i in 0..num_points {
        let k = -PI + 2.0 * PI * (i as f64 / (num_points - 1) as f64);
        k_values.push(k);
        points.push(loop_point(params, k));
    }
    Ok(LoopSamples { k_values, points })
}

/// Winding number of the loop around the origin, clockwise positive.
///
/// The signed angle swept by (x, y) is accumulated over an
/// endpoint-identified grid, refined by doubling until the grid is provably
/// fine enough: with speed bound S = |a*gamma| + 2|b*delta| + |a| + 2|b| the
/// true angle swept between adjacent samples is at most 2*pi*S/(n*min_r),
/// and keeping that below pi makes every principal-value step exact. The
/// per-step and integer-defect checks are asserted on top. When the refined
/// minimum radius falls within `DEGENERACY_REL_TOL` of the loop scale the
/// result carries `degenerate = true`; samples inside the degeneracy
/// neighborhood are skipped in the accumulation. A loop that is identically
/// the origin has no direction at all and is an error.
pub fn winding_number(params: &ModelParams) -> Result<WindingResult> {
    if !params.is_finite() {
        return Err(Error::NonFiniteParams);
    }
    let scale = loop_scale(params);
    if scale == 0.0 {
        return Err(Error::DegenerateLoop { min_radius: 0.0 });
    }
    let tol_r = DEGENERACY_REL_TOL * scale;
    let min_r = min_radius(params);

    if min_r <= tol_r {
        // Critical loop. Accumulate over the samples that stay clear of the
        // origin and report the count with the degenerate flag set.
        let (radii, angles) = sample_polar(params, WINDING_START_SAMPLES);
        let total = accumulate_angle(&radii, &angles, tol_r);
        let turns = total / (2.0 * PI);
        return Ok(WindingResult {
            number: -turns.round() as i64,
            min_radius: min_r,
            degenerate: true,
            refinement_depth: 0,
            integer_defect: (turns - turns.round()).abs(),
        });
    }

    let speed_bound = params.a.abs() * params.gamma.abs()
        + 2.0 * params.b.abs() * params.delta.abs()
        + params.a.abs()
        + 2.0 * params.b.abs();
    let mut n = WINDING_START_SAMPLES;
    let mut depth = 0u32;
    loop {
        let fine_enough = n as f64 * min_r > 2.0 * speed_bound;
        if fine_enough {
            let (radii, angles) = sample_polar(params, n);
            let total = accumulate_angle(&radii, &angles, -1.0);
            let max_step = max_angle_step(&angles);
            let turns = total / (2.0 * PI);
            let defect = (turns - turns.round()).abs();
            if max_step < PI / 2.0 && defect < 1e-6 {
                let number = -turns.round() as i64;
                // The 1/r^2 integrand needs a finer grid than the angle
                // accumulation; 16x the accepted grid keeps its trapezoid
                // error negligible even at the acceptance boundary.
                #[cfg(debug_assertions)]
                {
                    let q = winding_by_quadrature(params, 16 * n);
                    debug_assert!(
                        (q - number as f64).abs() < 0.01,
                        "angle accumulation and curve-integral winding disagree at {params}: \
                         quadrature {q} vs count {number} (n = {n})"
                    );
                }
                return Ok(WindingResult {
                    number,
                    min_radius: min_r,
                    degenerate: false,
                    refinement_depth: depth,
                    integer_defect: defect,
                });
            }
        }
        if n >= WINDING_MAX_SAMPLES {
            return Err(Error::NoConvergence(format!(
                "winding refinement exceeded {WINDING_MAX_SAMPLES} samples"
            )));
        }
        n *= 2;
        depth += 1;
    }
}

fn sample_polar(params: &ModelParams, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut radii = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let k = -PI + 2.0 * PI * i as f64 / n as f64;
        let p = loop_point(params, k);
        radii.push(p.radius());
        angles.push(p.y.atan2(p.x));
    }
    (radii, angles)
}

/// Sum of principal-value angle increments around the closed grid, skipping
/// samples with radius <= `skip_below`.
fn accumulate_angle(radii: &[f64], angles: &[f64], skip_below: f64) -> f64 {
    let n = radii.len();
    let valid: Vec<usize> = (0..n).filter(|&i| radii[i] > skip_below).collect();
    if valid.len() < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for w in 0..valid.len() {
        let cur = angles[valid[w]];
        let next = angles[valid[(w + 1) % valid.len()]];
        total += principal(next - cur);
    }
    total
}

fn max_angle_step(angles: &[f64]) -> f64 {
    let n = angles.len();
    (0..n)
        .map(|i| principal(angles[(i + 1) % n] - angles[i]).abs())
        .fold(0.0, f64::max)
}

#[inline]
fn principal(da: f64) -> f64 {
    let mut d = da;
    while d > PI {
        d -= 2.0 * PI;
    }
    while d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// Clockwise winding via the curve integral (1/2pi) * closed-integral of
/// (y dx - x dy) / r^2, evaluated by the periodic trapezoid rule. Used as an
/// independent cross-check of the angle accumulation.
#[cfg(any(debug_assertions, test))]
pub(crate) fn winding_by_quadrature(params: &ModelParams, n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        let k = -PI + 2.0 * PI * i as f64 / n as f64;
        let p = loop_point(params, k);
        let (dx, dy) = loop_tangent(params, k);
        let r2 = p.x * p.x + p.y * p.y;
        sum += (p.y * dx - p.x * dy) / r2;
    }
    sum / n as f64
}

/// Global minimum of |r(k)|, via a dense scan with every sampled local
/// minimum refined by golden-section search to a k-interval of width 1e-12.
pub fn min_radius(params: &ModelParams) -> f64 {
    let r2 = |k: f64| {
        let p = loop_point(params, k);
        p.x * p.x + p.y * p.y
    };
    let n = MIN_RADIUS_SCAN;
    let h = 2.0 * PI / n as f64;
    let samples: Vec<f64> = (0..n).map(|i| r2(-PI + h * i as f64)).collect();
    let mut best = f64::INFINITY;
    for i in 0..n {
        best = best.min(samples[i]);
        let prev = samples[(i + n - 1) % n];
        let next = samples[(i + 1) % n];
        if samples[i] <= prev && samples[i] <= next {
            let center = -PI + h * i as f64;
            best = best.min(golden_min(&r2, center - h, center + h, MIN_RADIUS_K_TOL));
        }
    }
    best.sqrt()
}

/// Golden-section minimization of `f` on [lo, hi]; returns the minimum value.
fn golden_min<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, k_tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > k_tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    fc.min(fd)
}

/// Golden-section refinement returning the arg-min location.
fn golden_argmin<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, k_tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > k_tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// All momenta in (-pi, pi] where the loop passes through the origin.
///
/// Candidate brackets come from a dense scan of |r|^2; each is polished by
/// golden-section search and accepted when the refined radius is below the
/// degeneracy tolerance. A loop bounded away from the origin yields an empty
/// list, as does the identically-zero loop (no isolated crossings).
pub fn origin_crossings(params: &ModelParams) -> Vec<f64> {
    let r2 = |k: f64| {
        let p = loop_point(params, k);
        p.x * p.x + p.y * p.y
    };
    let n = 4096;
    let h = 2.0 * PI / n as f64;
    let samples: Vec<f64> = (0..n).map(|i| r2(-PI + h * i as f64)).collect();
    let scale2 = samples.iter().cloned().fold(0.0f64, f64::max);
    if scale2 == 0.0 {
        return Vec::new();
    }
    let accept_r = DEGENERACY_REL_TOL * scale2.sqrt();
    let candidate2 = (1e-6 * scale2.sqrt()).powi(2);

    let mut roots: Vec<f64> = Vec::new();
    for i in 0..n {
        let prev = samples[(i + n - 1) % n];
        let next = samples[(i + 1) % n];
        if samples[i] <= candidate2 && samples[i] <= prev && samples[i] <= next {
            let center = -PI + h * i as f64;
            let k = golden_argmin(&r2, center - h, center + h, MIN_RADIUS_K_TOL);
            if r2(k).sqrt() <= accept_r {
                // map into (-pi, pi]; a crossing at the wrap point is +pi
                let mut k = k;
                if k <= -PI {
                    k += 2.0 * PI;
                } else if k > PI {
                    k -= 2.0 * PI;
                }
                if k < -PI + 1e-9 {
                    k += 2.0 * PI;
                }
                if k > PI {
                    k = PI;
                }
                let duplicate = roots.iter().any(|&r| {
                    let d = (r - k).abs();
                    d < 1e-6 || (2.0 * PI - d) < 1e-6
                });
                if !duplicate {
                    roots.push(k);
                }
            }
        }
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots
}

/// First variation of the energy density under a parameter increment.
///
/// Evaluates -(1/2pi) * integral of (x*dx + y*dy)/|r| dk where the increment
/// curve (dx, dy) is assembled from (da, db, dgamma, ddelta, dg):
///
/// ```text
/// dx(k) = (da*gamma + a*dgamma) sin k + (db*delta + b*ddelta) sin 2k
/// dy(k) = da cos k + db cos 2k - dg
/// ```
///
/// A degenerate loop has no well-defined unit vector at the origin crossing;
/// the error this raises is exactly the critical-point signature.
pub fn first_variation(params: &ModelParams, dparams: &ModelParams, quad_tol: f64) -> Result<f64> {
    if !(quad_tol > 0.0 && quad_tol.is_finite()) {
        return Err(Error::InvalidTolerance(quad_tol));
    }
    if !params.is_finite() || !dparams.is_finite() {
        return Err(Error::NonFiniteParams);
    }
    let mr = min_radius(params);
    let scale = loop_scale(params);
    if scale == 0.0 || mr <= DEGENERACY_REL_TOL * scale {
        return Err(Error::DegenerateLoop { min_radius: mr });
    }
    let p = *params;
    let d = *dparams;
    let integrand = move |k: f64| {
        let pt = loop_point(&p, k);
        let dx = (d.a * p.gamma + p.a * d.gamma) * k.sin()
            + (d.b * p.delta + p.b * d.delta) * (2.0 * k).sin();
        let dy = d.a * k.cos() + d.b * (2.0 * k).cos() - d.g;
        (pt.x * dx + pt.y * dy) / pt.radius()
    };
    Ok(-periodic_mean(integrand, quad_tol).value)
}

/// Largest |r(k)| over a fixed sampling; the natural scale of the loop.
pub(crate) fn loop_scale(params: &ModelParams) -> f64 {
    let n = 512;
    (0..n)
        .map(|i| loop_point(params, -PI + 2.0 * PI * i as f64 / n as f64).radius())
        .fold(0.0, f64::max)
}
