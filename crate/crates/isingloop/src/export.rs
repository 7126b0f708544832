//! Text artifact emission: CSV tables, JSON records, and hand-built SVG
//! figures. All floats print through Display, whose shortest-round-trip
//! form parses back to the identical binary value.

use std::fmt::Write as _;

use serde_json::json;

use crate::error::{Error, Result};
use crate::freefermion::EnergyResult;
use crate::loopgeo::LoopSamples;
use crate::model::ModelParams;
use crate::scan::{PhaseDiagram, SweepRow};

/// Marker used in CSV cells for loops whose winding is undefined.
pub const DEGENERATE_MARKER: &str = "degenerate";

/// `k,x,y` table of loop samples.
pub fn loop_csv(samples: &LoopSamples) -> String {
    let mut out = String::from("k,x,y\n");
    for (k, p) in samples.k_values.iter().zip(samples.points.iter()) {
        let _ = writeln!(out, "{k},{},{}", p.x, p.y);
    }
    out
}

/// `alpha,eps_g,d1,d2,winding,min_radius` table; endpoint derivative cells
/// are left empty, degenerate winding cells carry the marker word.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("alpha,eps_g,d1,d2,winding,min_radius\n");
    for r in rows {
        let d1 = r.d1.map(|v| v.to_string()).unwrap_or_default();
        let d2 = r.d2.map(|v| v.to_string()).unwrap_or_default();
        let w = match r.winding {
            Some(w) => w.to_string(),
            None => DEGENERATE_MARKER.to_string(),
        };
        let _ = writeln!(out, "{},{},{d1},{d2},{w},{}", r.alpha, r.eps_g, r.min_radius);
    }
    out
}

pub fn sweep_json(rows: &[SweepRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}

/// Winding matrix, one CSV row per y grid value (ascending), one column per
/// x grid value; axis values live in the JSON sidecar, not here.
pub fn phase_csv(pd: &PhaseDiagram) -> String {
    let mut out = String::new();
    for row in &pd.winding {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Some(w) => w.to_string(),
                None => DEGENERATE_MARKER.to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// Axis metadata companion for [`phase_csv`].
pub fn phase_sidecar_json(pd: &PhaseDiagram) -> Result<String> {
    let v = json!({
        "x": { "name": pd.x_name.as_str(), "values": pd.x_values },
        "y": { "name": pd.y_name.as_str(), "values": pd.y_values },
        "fixed": pd.fixed,
    });
    Ok(serde_json::to_string_pretty(&v)?)
}

/// Whole phase diagram as one JSON document: axes, fixed couplings, the
/// winding grid (null in degenerate cells), and the min-radius grid.
pub fn phase_json(pd: &PhaseDiagram) -> Result<String> {
    let v = json!({
        "x": { "name": pd.x_name.as_str(), "values": pd.x_values },
        "y": { "name": pd.y_name.as_str(), "values": pd.y_values },
        "fixed": pd.fixed,
        "winding": pd.winding,
        "min_radius": pd.min_radius,
    });
    Ok(serde_json::to_string_pretty(&v)?)
}

/// Energy or gap record: {params, N?, value, error_estimate}.
pub fn energy_json(params: &ModelParams, n: Option<usize>, result: &EnergyResult) -> Result<String> {
    let mut v = json!({
        "params": params,
        "value": result.value,
        "error_estimate": result.quadrature_error_estimate,
    });
    if let Some(n) = n {
        v["N"] = json!(n);
    }
    Ok(serde_json::to_string_pretty(&v)?)
}

const VIEW: f64 = 640.0;
const MARGIN: f64 = 48.0;

/// Maps data points into the SVG viewport with equal aspect and flipped y.
struct Frame {
    scale: f64,
    x0: f64,
    y0: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Frame {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for x in xs {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
        }
        for y in ys {
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let span = (xmax - xmin).max(ymax - ymin).max(1e-9);
        let scale = (VIEW - 2.0 * MARGIN) / span;
        // center both axes inside the square viewport
        let x0 = (xmin + xmax) / 2.0 - span / 2.0;
        let y0 = (ymin + ymax) / 2.0 - span / 2.0;
        Frame { scale, x0, y0 }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        VIEW - MARGIN - (y - self.y0) * self.scale
    }
}

/// Closed loop drawing: equal-aspect path, origin crosshair, an arrowhead at
/// the k = 0 sample showing traversal direction, and a winding label.
pub fn render_loop_svg(samples: &LoopSamples, label: &str) -> Result<String> {
    if samples.points.is_empty() {
        return Err(Error::TooFewPoints { got: 0, min: 1 });
    }
    let frame = Frame::fit(
        samples.points.iter().map(|p| p.x).chain([0.0]),
        samples.points.iter().map(|p| p.y).chain([0.0]),
    );
    let mut path = String::new();
    for (i, p) in samples.points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(path, "{cmd}{:.3} {:.3} ", frame.x(p.x), frame.y(p.y));
    }
    path.push('Z');

    // arrowhead at the sample closest to k = 0, pointing along traversal
    let i0 = samples
        .k_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap();
    let i1 = (i0 + 1) % samples.points.len();
    let (ax, ay) = (frame.x(samples.points[i0].x), frame.y(samples.points[i0].y));
    let (bx, by) = (frame.x(samples.points[i1].x), frame.y(samples.points[i1].y));
    let angle = (by - ay).atan2(bx - ax).to_degrees();

    let ox = frame.x(0.0);
    let oy = frame.y(0.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">"#
    );
    let _ = writeln!(svg, r#"  <rect width="{VIEW}" height="{VIEW}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="1"/>"##,
        ox - 12.0,
        oy,
        ox + 12.0,
        oy
    );
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="1"/>"##,
        ox,
        oy - 12.0,
        ox,
        oy + 12.0
    );
    let _ = writeln!(
        svg,
        r##"  <path d="{path}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##
    );
    let _ = writeln!(
        svg,
        r##"  <polygon points="0,-5 10,0 0,5" fill="#1f5fa8" transform="translate({ax:.3} {ay:.3}) rotate({angle:.2})"/>"##
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{MARGIN}" y="{:.1}" font-family="monospace" font-size="18">winding {label}</text>"#,
        MARGIN - 16.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn winding_color(w: Option<i64>) -> &'static str {
    match w {
        Some(-2) => "#2c4ea0",
        Some(-1) => "#7da7e0",
        Some(0) => "#e8e8e8",
        Some(1) => "#e79a74",
        Some(2) => "#a82a2a",
        Some(_) => "#5e3c99",
        None => "#3d3d3d",
    }
}

/// Heat map of the winding grid; degenerate cells are dark.
pub fn render_phase_svg(pd: &PhaseDiagram) -> String {
    let (nx, ny) = (pd.x_values.len(), pd.y_values.len());
    let cell = ((VIEW - 2.0 * MARGIN) / nx.max(ny) as f64).min(48.0);
    let w = MARGIN * 2.0 + cell * nx as f64;
    let h = MARGIN * 2.0 + cell * ny as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(svg, r#"  <rect width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    for (iy, row) in pd.winding.iter().enumerate() {
        for (ix, &cellw) in row.iter().enumerate() {
            // y axis ascends upward: last row at the top edge
            let px = MARGIN + cell * ix as f64;
            let py = h - MARGIN - cell * (iy + 1) as f64;
            let _ = writeln!(
                svg,
                r#"  <rect x="{px:.2}" y="{py:.2}" width="{cell:.2}" height="{cell:.2}" fill="{}"/>"#,
                winding_color(cellw)
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"  <text x="{:.1}" y="{:.1}" font-family="monospace" font-size="14">{}: {} .. {}</text>"#,
        MARGIN,
        h - MARGIN + 20.0,
        pd.x_name.as_str(),
        pd.x_values[0],
        pd.x_values[nx - 1]
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{:.1}" y="{:.1}" font-family="monospace" font-size="14" transform="rotate(-90 {:.1} {:.1})">{}: {} .. {}</text>"#,
        MARGIN - 20.0,
        h - MARGIN,
        MARGIN - 20.0,
        h - MARGIN,
        pd.y_name.as_str(),
        pd.y_values[0],
        pd.y_values[ny - 1]
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopgeo::sample_loop;
    use crate::model::{preset_lookup, ParamName};
    use crate::scan::{phase_diagram, sweep, SweepSpec};

    fn tfim() -> ModelParams {
        preset_lookup("tfim").unwrap().params
    }

    #[test]
    fn loop_csv_round_trips_exactly() {
        let samples = sample_loop(&tfim(), 64).unwrap();
        let csv = loop_csv(&samples);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,x,y"));
        for (line, (k, p)) in lines.zip(samples.k_values.iter().zip(samples.points.iter())) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cells[0], *k);
            assert_eq!(cells[1], p.x);
            assert_eq!(cells[2], p.y);
        }
    }

    #[test]
    fn sweep_csv_cells() {
        let spec = SweepSpec {
            varied: ParamName::G,
            start: 0.0,
            end: 2.0,
            steps: 5,
            fixed: tfim(),
            quad_tol: 1e-8,
        };
        let rows = sweep(&spec).unwrap();
        let csv = sweep_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,eps_g,d1,d2,winding,min_radius");
        assert_eq!(lines.len(), 6);
        // endpoint rows have empty derivative cells
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[2], "");
        assert_eq!(first[3], "");
        assert_eq!(first[4], "1");
        // g = 1 row is the degenerate marker
        let mid: Vec<&str> = lines[3].split(',').collect();
        assert_eq!(mid[4], DEGENERATE_MARKER);
        // interior rows carry both derivatives
        let second: Vec<&str> = lines[2].split(',').collect();
        assert!(second[2].parse::<f64>().is_ok());
        assert!(second[3].parse::<f64>().is_ok());
    }

    #[test]
    fn sweep_json_omits_endpoint_derivatives() {
        let spec = SweepSpec {
            varied: ParamName::G,
            start: 0.0,
            end: 0.5,
            steps: 3,
            fixed: tfim(),
            quad_tol: 1e-8,
        };
        let rows = sweep(&spec).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&sweep_json(&rows).unwrap()).unwrap();
        let arr = parsed.as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert!(arr[0].get("d1").is_none());
        assert!(arr[1].get("d1").is_some());
        assert_eq!(arr[0]["winding"], 1);
        assert_eq!(arr[0]["degenerate"], false);
    }

    #[test]
    fn phase_outputs_are_consistent() {
        let spec_g = SweepSpec {
            varied: ParamName::G,
            start: -1.5,
            end: 1.5,
            steps: 4,
            fixed: ModelParams { a: 1.0, b: 0.0, gamma: 0.0, delta: 0.0, g: 0.0 },
            quad_tol: 1e-8,
        };
        let spec_gamma = SweepSpec {
            varied: ParamName::Gamma,
            start: -0.8,
            end: 0.8,
            steps: 3,
            ..spec_g.clone()
        };
        let pd = phase_diagram(&spec_g, &spec_gamma).unwrap();
        let csv = phase_csv(&pd);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "0,-1,-1,0");
        assert_eq!(lines[1], format!("0,{DEGENERATE_MARKER},{DEGENERATE_MARKER},0"));
        assert_eq!(lines[2], "0,1,1,0");
        let sidecar: serde_json::Value =
            serde_json::from_str(&phase_sidecar_json(&pd).unwrap()).unwrap();
        assert_eq!(sidecar["x"]["name"], "g");
        assert_eq!(sidecar["y"]["name"], "gamma");
        assert_eq!(sidecar["x"]["values"].as_array().unwrap().len(), 4);
        assert_eq!(sidecar["fixed"]["a"], 1.0);
        let single: serde_json::Value = serde_json::from_str(&phase_json(&pd).unwrap()).unwrap();
        assert_eq!(single["winding"][2][1], 1);
        assert!(single["winding"][1][1].is_null());
        assert!(single["min_radius"][0][0].as_f64().unwrap() > 0.0);
        let svg = render_phase_svg(&pd);
        assert!(svg.starts_with("<svg"));
        assert!(svg.matches("<rect").count() >= 13);
    }

    #[test]
    fn energy_json_schema() {
        let p = tfim();
        let r = EnergyResult { value: -4.0, quadrature_error_estimate: 0.0 };
        let with_n: serde_json::Value =
            serde_json::from_str(&energy_json(&p, Some(4), &r).unwrap()).unwrap();
        assert_eq!(with_n["N"], 4);
        assert_eq!(with_n["value"], -4.0);
        assert_eq!(with_n["params"]["a"], 1.0);
        assert!(with_n.get("error_estimate").is_some());
        let without: serde_json::Value =
            serde_json::from_str(&energy_json(&p, None, &r).unwrap()).unwrap();
        assert!(without.get("N").is_none());
    }

    #[test]
    fn loop_svg_structure() {
        let samples = sample_loop(&tfim(), 128).unwrap();
        let svg = render_loop_svg(&samples, "+1").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("winding +1"));
        assert!(svg.contains("<path"));
        assert!(svg.contains("<polygon"));
        // origin crosshair present
        assert_eq!(svg.matches("<line").count(), 2);
        let empty = LoopSamples { k_values: vec![], points: vec![] };
        assert!(render_loop_svg(&empty, "+1").is_err());
    }
}
