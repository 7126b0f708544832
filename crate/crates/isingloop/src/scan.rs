//! One- and two-parameter scans: energy density with grid derivatives,
//! winding number, and minimum loop radius per point, plus transition
//! detection from the combined signals.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freefermion;
use crate::loopgeo;
use crate::model::{ModelParams, ParamName};

/// A uniform scan of one coupling over [start, end].
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub varied: ParamName,
    pub start: f64,
    pub end: f64,
    /// Number of grid points including both endpoints.
    pub steps: usize,
    /// Remaining couplings; the varied field is overwritten per row.
    pub fixed: ModelParams,
    /// Quadrature tolerance for the energy density.
    pub quad_tol: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.end.is_finite() || self.start >= self.end {
            return Err(Error::InvalidSweep(format!(
                "range [{}, {}] must be finite with start < end",
                self.start, self.end
            )));
        }
        if self.steps < 3 {
            return Err(Error::InvalidSweep(format!(
                "need at least 3 steps, got {}",
                self.steps
            )));
        }
        if !self.fixed.is_finite() {
            return Err(Error::NonFiniteParams);
        }
        if !(self.quad_tol.is_finite() && self.quad_tol > 0.0) {
            return Err(Error::InvalidTolerance(self.quad_tol));
        }
        Ok(())
    }

    pub fn grid_step(&self) -> f64 {
        (self.end - self.start) / (self.steps - 1) as f64
    }

    pub fn value_at(&self, index: usize) -> f64 {
        if index == self.steps - 1 {
            self.end
        } else {
            self.start + self.grid_step() * index as f64
        }
    }

    pub fn params_at(&self, alpha: f64) -> ModelParams {
        self.fixed.with(self.varied, alpha)
    }
}

/// One scan point. `winding` is None on rows whose loop passes through the
/// origin (a degenerate loop has no well-defined winding); `d1` and `d2` are
/// None on the two endpoint rows where no central difference exists.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub eps_g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<f64>,
    pub winding: Option<i64>,
    pub degenerate: bool,
    pub min_radius: f64,
}

/// Loop classification of one parameter point: the winding number (absent
/// for loops through the origin) and the refined minimum radius.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoopClass {
    pub winding: Option<i64>,
    pub min_radius: f64,
    pub degenerate: bool,
}

/// Winding number and refined minimum radius of one parameter point, with
/// the degenerate-loop outcomes folded into an Option instead of an error.
pub fn classify_loop(params: &ModelParams) -> Result<LoopClass> {
    match loopgeo::winding_number(params) {
        Ok(w) => Ok(LoopClass {
            winding: if w.degenerate { None } else { Some(w.number) },
            min_radius: w.min_radius,
            degenerate: w.degenerate,
        }),
        Err(Error::DegenerateLoop { min_radius }) => {
            Ok(LoopClass { winding: None, min_radius, degenerate: true })
        }
        Err(e) => Err(e),
    }
}

/// Scans the varied coupling over its grid. Rows are computed in parallel
/// and returned in ascending alpha order; derivatives are central differences
/// on the grid itself.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows: Vec<SweepRow> = (0..spec.steps)
        .into_par_iter()
        .map(|i| {
            let alpha = spec.value_at(i);
            let params = spec.params_at(alpha);
            let eps_g = freefermion::energy_density(&params, spec.quad_tol)?.value;
            let c = classify_loop(&params)?;
            Ok(SweepRow {
                alpha,
                eps_g,
                d1: None,
                d2: None,
                winding: c.winding,
                degenerate: c.degenerate,
                min_radius: c.min_radius,
            })
        })
        .collect::<Result<_>>()?;
    let h = spec.grid_step();
    for i in 1..rows.len() - 1 {
        let (prev, cur, next) = (rows[i - 1].eps_g, rows[i].eps_g, rows[i + 1].eps_g);
        rows[i].d1 = Some((next - prev) / (2.0 * h));
        rows[i].d2 = Some((next - 2.0 * cur + prev) / (h * h));
    }
    Ok(rows)
}

/// A winding flip between two scan rows. The interval spans any degenerate
/// rows sitting between the two well-defined values.
#[derive(Debug, Clone, Serialize)]
pub struct WindingChange {
    pub alpha_before: f64,
    pub alpha_after: f64,
    pub from: i64,
    pub to: i64,
    /// True when a |d2| local maximum lies within one grid step.
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitionReport {
    pub winding_changes: Vec<WindingChange>,
    /// Alphas of the interior local maxima of |d2|.
    pub d2_peaks: Vec<f64>,
}

/// Locates winding flips and |d2| peaks in a scan and pairs them up.
pub fn detect_transitions(rows: &[SweepRow]) -> Result<TransitionReport> {
    if rows.len() < 3 {
        return Err(Error::TooFewPoints { got: rows.len(), min: 3 });
    }
    let h = (rows[rows.len() - 1].alpha - rows[0].alpha) / (rows.len() - 1) as f64;

    let mut d2_peaks = Vec::new();
    let defined: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.d2.map(|d| (r.alpha, d.abs())))
        .collect();
    for w in defined.windows(3) {
        if w[1].1 > w[0].1 && w[1].1 >= w[2].1 {
            d2_peaks.push(w[1].0);
        }
    }

    let mut winding_changes = Vec::new();
    let known: Vec<(f64, i64)> = rows.iter().filter_map(|r| r.winding.map(|w| (r.alpha, w))).collect();
    for pair in known.windows(2) {
        let ((alpha_before, from), (alpha_after, to)) = (pair[0], pair[1]);
        if from != to {
            let slack = h * (1.0 + 1e-9);
            let matched = d2_peaks
                .iter()
                .any(|&p| p >= alpha_before - slack && p <= alpha_after + slack);
            winding_changes.push(WindingChange { alpha_before, alpha_after, from, to, matched });
        }
    }
    Ok(TransitionReport { winding_changes, d2_peaks })
}

/// Winding number over a Cartesian grid of two couplings. Cells are indexed
/// `winding[iy][ix]`; degenerate cells hold None.
#[derive(Debug, Clone)]
pub struct PhaseDiagram {
    pub x_name: ParamName,
    pub x_values: Vec<f64>,
    pub y_name: ParamName,
    pub y_values: Vec<f64>,
    pub fixed: ModelParams,
    pub winding: Vec<Vec<Option<i64>>>,
    pub min_radius: Vec<Vec<f64>>,
}

/// Maps the winding number over the grid spanned by two sweep axes. The
/// fixed couplings are taken from `spec_x`; both varied fields are
/// overwritten per cell.
pub fn phase_diagram(spec_x: &SweepSpec, spec_y: &SweepSpec) -> Result<PhaseDiagram> {
    spec_x.validate()?;
    spec_y.validate()?;
    if spec_x.varied == spec_y.varied {
        return Err(Error::SameAxis(spec_x.varied.as_str()));
    }
    let x_values: Vec<f64> = (0..spec_x.steps).map(|i| spec_x.value_at(i)).collect();
    let y_values: Vec<f64> = (0..spec_y.steps).map(|i| spec_y.value_at(i)).collect();
    let cells: Vec<(Option<i64>, f64)> = (0..spec_x.steps * spec_y.steps)
        .into_par_iter()
        .map(|idx| {
            let (iy, ix) = (idx / spec_x.steps, idx % spec_x.steps);
            let params = spec_x
                .fixed
                .with(spec_x.varied, x_values[ix])
                .with(spec_y.varied, y_values[iy]);
            let c = classify_loop(&params)?;
            Ok((c.winding, c.min_radius))
        })
        .collect::<Result<_>>()?;
    let winding = cells
        .chunks(spec_x.steps)
        .map(|row| row.iter().map(|c| c.0).collect())
        .collect();
    let min_radius = cells
        .chunks(spec_x.steps)
        .map(|row| row.iter().map(|c| c.1).collect())
        .collect();
    Ok(PhaseDiagram {
        x_name: spec_x.varied,
        x_values,
        y_name: spec_y.varied,
        y_values,
        fixed: spec_x.fixed,
        winding,
        min_radius,
    })
}
