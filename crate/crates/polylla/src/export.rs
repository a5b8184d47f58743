//! Serializers: OFF, legacy VTK polydata, SVG, a plain mesh-array text dump,
//! and a stats JSON report.
//!
//! All writers are pure functions of the mesh and options, producing
//! byte-stable text: coordinates are printed with a fixed number of decimal
//! digits (default 17, enough to round-trip `f64` coordinates of unit-scale
//! meshes) and polygons appear in mesh-array order.

use crate::error::{PolyllaError, Result};
use crate::polymesh::{MeshStats, PolyMesh};
use crate::scalar::Scalar;
use serde::Serialize;
use std::fmt::Write as _;

/// Fill colors cycled over polygons in SVG output.
const SVG_PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

#[derive(Debug, Clone, Copy)]
pub struct ExportOptions {
    /// Decimal digits for coordinates, within `[6, 17]`.
    pub precision: usize,
    /// Output width in pixels of the SVG canvas; height follows the aspect.
    pub svg_size: f64,
    /// SVG stroke width in output pixels.
    pub svg_stroke: f64,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions {
            precision: 17,
            svg_size: 800.0,
            svg_stroke: 1.0,
        }
    }
}

impl ExportOptions {
    pub fn with_precision(mut self, precision: usize) -> Result<Self> {
        if !(6..=17).contains(&precision) {
            return Err(PolyllaError::Geometry(format!(
                "precision must lie in [6, 17], got {precision}"
            )));
        }
        self.precision = precision;
        Ok(self)
    }
}

/// Wall-clock phase durations in seconds.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct PhaseTimings {
    pub label_seconds: f64,
    pub traversal_seconds: f64,
    pub repair_seconds: f64,
    pub total_seconds: f64,
}

fn coord<S: Scalar>(v: S, precision: usize) -> String {
    format!("{:.*}", precision, v.as_f64())
}

/// Object File Format: counts line `V F 0`, vertex lines with z = 0, then
/// per-face vertex count and indices straight from the mesh array.
pub fn write_off<S: Scalar>(mesh: &PolyMesh<S>, opts: &ExportOptions) -> String {
    let nv = mesh.vertices.len() / 2;
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(out, "{} {} 0", nv, mesh.num_polygons());
    for v in 0..nv {
        let p = mesh.point(v);
        let _ = writeln!(
            out,
            "{} {} 0",
            coord(p[0], opts.precision),
            coord(p[1], opts.precision)
        );
    }
    for p in 0..mesh.num_polygons() {
        let ids = mesh.polygon(p);
        let _ = write!(out, "{}", ids.len());
        for id in ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

/// Legacy VTK 2.0 ASCII, `DATASET POLYDATA` with a `POLYGONS` section.
pub fn write_vtk<S: Scalar>(mesh: &PolyMesh<S>, opts: &ExportOptions) -> String {
    let nv = mesh.vertices.len() / 2;
    let np = mesh.num_polygons();
    let mut out = String::new();
    out.push_str("# vtk DataFile Version 2.0\npolylla polygonal mesh\nASCII\nDATASET POLYDATA\n");
    let _ = writeln!(out, "POINTS {nv} double");
    for v in 0..nv {
        let p = mesh.point(v);
        let _ = writeln!(
            out,
            "{} {} 0",
            coord(p[0], opts.precision),
            coord(p[1], opts.precision)
        );
    }
    let cell_ints: usize = (0..np).map(|p| mesh.polygon(p).len() + 1).sum();
    let _ = writeln!(out, "POLYGONS {np} {cell_ints}");
    for p in 0..np {
        let ids = mesh.polygon(p);
        let _ = write!(out, "{}", ids.len());
        for id in ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

/// SVG 1.1 with one closed path per polygon. The y axis is flipped so the
/// mathematical orientation of the mesh renders upright; the viewBox pads
/// the bounding box by 2%.
pub fn write_svg<S: Scalar>(
    mesh: &PolyMesh<S>,
    opts: &ExportOptions,
    palette: Option<&[String]>,
) -> String {
    let nv = mesh.vertices.len() / 2;
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in 0..nv {
        let p = mesh.point(v);
        min_x = min_x.min(p[0].as_f64());
        min_y = min_y.min(p[1].as_f64());
        max_x = max_x.max(p[0].as_f64());
        max_y = max_y.max(p[1].as_f64());
    }
    let w = (max_x - min_x).max(f64::MIN_POSITIVE);
    let h = (max_y - min_y).max(f64::MIN_POSITIVE);
    let margin = 0.02 * w.max(h);
    // Flipped coordinates: y' = max_y - y, so y' spans [0, h].
    let flip = |p: [S; 2]| (p[0].as_f64(), max_y - p[1].as_f64());
    let vb = (
        min_x - margin,
        -margin,
        w + 2.0 * margin,
        h + 2.0 * margin,
    );
    let height_px = opts.svg_size * vb.3 / vb.2;
    let stroke = opts.svg_stroke * vb.2 / opts.svg_size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1}\" height=\"{:.1}\" viewBox=\"{} {} {} {}\">",
        opts.svg_size, height_px, vb.0, vb.1, vb.2, vb.3
    );
    for p in 0..mesh.num_polygons() {
        let ids = mesh.polygon(p);
        let fill = match palette {
            Some(colors) if !colors.is_empty() => colors[p % colors.len()].as_str(),
            _ => SVG_PALETTE[p % SVG_PALETTE.len()],
        };
        let mut d = String::new();
        for (i, &id) in ids.iter().enumerate() {
            let (x, y) = flip(mesh.point(id));
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, x, y);
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            "<path d=\"{d}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"{stroke}\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Plain text dump: a `V P` header, `V` coordinate lines, then the mesh
/// array one polygon per line (count followed by ccw indices).
pub fn write_meshtxt<S: Scalar>(mesh: &PolyMesh<S>, opts: &ExportOptions) -> String {
    let nv = mesh.vertices.len() / 2;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", nv, mesh.num_polygons());
    for v in 0..nv {
        let p = mesh.point(v);
        let _ = writeln!(
            out,
            "{} {}",
            coord(p[0], opts.precision),
            coord(p[1], opts.precision)
        );
    }
    for p in 0..mesh.num_polygons() {
        let ids = mesh.polygon(p);
        let _ = write!(out, "{}", ids.len());
        for id in ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

/// Flat JSON object with every statistics field plus per-phase wall times.
pub fn write_stats_json<S: Scalar + Serialize>(
    stats: &MeshStats<S>,
    timings: &PhaseTimings,
) -> Result<String> {
    let mut obj = match serde_json::to_value(stats).map_err(|e| PolyllaError::Internal(e.to_string()))? {
        serde_json::Value::Object(map) => map,
        _ => unreachable!("stats serialize to an object"),
    };
    obj.insert("time_label".into(), timings.label_seconds.into());
    obj.insert("time_traversal".into(), timings.traversal_seconds.into());
    obj.insert("time_repair".into(), timings.repair_seconds.into());
    obj.insert("time_total".into(), timings.total_seconds.into());
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
        .map_err(|e| PolyllaError::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
