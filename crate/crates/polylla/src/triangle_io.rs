//! Triangle-format (`.node` / `.ele` / `.neigh`) ingestion and serialization,
//! following Shewchuk's conventions: `#` starts a comment, the `.node` header
//! is `<#points> <dim> <#attrs> <#markers>`, the `.ele` header is
//! `<#triangles> <nodes per tri> <#attrs>` and the `.neigh` header is
//! `<#triangles> <3>` with `-1` marking boundary slots. Files may be 0- or
//! 1-based; the base is detected from the first index appearing and the
//! internal representation is always 0-based.

use crate::error::{PolyllaError, Result};
use crate::scalar::Scalar;
use crate::triangulation::{Triangulation, BOUNDARY};
use std::fmt::Write as _;

/// Data rows with their 1-based line numbers, comments and blanks stripped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| PolyllaError::parse(line, format!("invalid {what}: {tok:?}")))
}

fn parse_isize(tok: &str, line: usize, what: &str) -> Result<isize> {
    tok.parse()
        .map_err(|_| PolyllaError::parse(line, format!("invalid {what}: {tok:?}")))
}

fn parse_coord<S: Scalar>(tok: &str, line: usize) -> Result<S> {
    let v: f64 = tok
        .parse()
        .map_err(|_| PolyllaError::parse(line, format!("invalid coordinate: {tok:?}")))?;
    S::from_f64(v).ok_or_else(|| PolyllaError::parse(line, format!("unrepresentable coordinate: {tok:?}")))
}

struct NodeFile<S> {
    vertices: Vec<S>,
    markers: Option<Vec<bool>>,
    base: usize,
}

fn parse_node<S: Scalar>(text: &str) -> Result<NodeFile<S>> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| PolyllaError::parse(0, "empty .node file"))?;
    if header.len() < 2 {
        return Err(PolyllaError::parse(hline, ".node header needs at least <#points> <dim>"));
    }
    let count = parse_usize(header[0], hline, "point count")?;
    let dim = parse_usize(header[1], hline, "dimension")?;
    if dim != 2 {
        return Err(PolyllaError::parse(hline, format!("expected dimension 2, got {dim}")));
    }
    let n_attrs = header
        .get(2)
        .map(|t| parse_usize(t, hline, "attribute count"))
        .transpose()?
        .unwrap_or(0);
    let n_markers = header
        .get(3)
        .map(|t| parse_usize(t, hline, "marker count"))
        .transpose()?
        .unwrap_or(0);

    let mut vertices = vec![S::zero(); 2 * count];
    let mut markers = if n_markers > 0 {
        Some(vec![false; count])
    } else {
        None
    };
    let mut base: Option<usize> = None;
    let mut seen = 0usize;
    for (lno, toks) in lines {
        if seen == count {
            return Err(PolyllaError::parse(lno, "more point rows than declared"));
        }
        if toks.len() < 3 + n_attrs {
            return Err(PolyllaError::parse(lno, "point row too short"));
        }
        let raw = parse_usize(toks[0], lno, "point index")?;
        let b = *base.get_or_insert(if raw == 0 { 0 } else { 1 });
        let idx = raw
            .checked_sub(b)
            .ok_or_else(|| PolyllaError::parse(lno, "point index below detected base"))?;
        if idx >= count {
            return Err(PolyllaError::parse(lno, format!("point index {raw} out of range")));
        }
        vertices[2 * idx] = parse_coord(toks[1], lno)?;
        vertices[2 * idx + 1] = parse_coord(toks[2], lno)?;
        if let Some(m) = markers.as_mut() {
            let tok = toks.get(3 + n_attrs).copied().unwrap_or("0");
            m[idx] = parse_isize(tok, lno, "boundary marker")? != 0;
        }
        seen += 1;
    }
    if seen != count {
        return Err(PolyllaError::parse(0, format!("expected {count} point rows, found {seen}")));
    }
    Ok(NodeFile {
        vertices,
        markers,
        base: base.unwrap_or(0),
    })
}

fn parse_ele(text: &str, base: usize) -> Result<Vec<usize>> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| PolyllaError::parse(0, "empty .ele file"))?;
    if header.len() < 2 {
        return Err(PolyllaError::parse(hline, ".ele header needs <#triangles> <nodes per tri>"));
    }
    let count = parse_usize(header[0], hline, "triangle count")?;
    let per = parse_usize(header[1], hline, "nodes per triangle")?;
    if per != 3 {
        return Err(PolyllaError::parse(hline, format!("expected 3 nodes per triangle, got {per}")));
    }
    let mut triangles = vec![0usize; 3 * count];
    let mut seen = 0usize;
    for (lno, toks) in lines {
        if seen == count {
            return Err(PolyllaError::parse(lno, "more triangle rows than declared"));
        }
        if toks.len() < 4 {
            return Err(PolyllaError::parse(lno, "triangle row too short"));
        }
        let raw = parse_usize(toks[0], lno, "triangle index")?;
        let idx = raw
            .checked_sub(base)
            .ok_or_else(|| PolyllaError::parse(lno, "triangle index below detected base"))?;
        if idx >= count {
            return Err(PolyllaError::parse(lno, format!("triangle index {raw} out of range")));
        }
        for k in 0..3 {
            let v = parse_usize(toks[1 + k], lno, "vertex index")?;
            triangles[3 * idx + k] = v
                .checked_sub(base)
                .ok_or_else(|| PolyllaError::parse(lno, "vertex index below detected base"))?;
        }
        seen += 1;
    }
    if seen != count {
        return Err(PolyllaError::parse(0, format!("expected {count} triangle rows, found {seen}")));
    }
    Ok(triangles)
}

fn parse_neigh(text: &str, base: usize, num_triangles: usize) -> Result<Vec<usize>> {
    let mut lines = data_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| PolyllaError::parse(0, "empty .neigh file"))?;
    let count = parse_usize(header[0], hline, "triangle count")?;
    if count != num_triangles {
        return Err(PolyllaError::parse(
            hline,
            format!(".neigh declares {count} triangles but .ele has {num_triangles}"),
        ));
    }
    let mut neighbors = vec![BOUNDARY; 3 * count];
    let mut seen = 0usize;
    for (lno, toks) in lines {
        if seen == count {
            return Err(PolyllaError::parse(lno, "more neighbor rows than declared"));
        }
        if toks.len() < 4 {
            return Err(PolyllaError::parse(lno, "neighbor row too short"));
        }
        let raw = parse_usize(toks[0], lno, "triangle index")?;
        let idx = raw
            .checked_sub(base)
            .ok_or_else(|| PolyllaError::parse(lno, "triangle index below detected base"))?;
        if idx >= count {
            return Err(PolyllaError::parse(lno, format!("triangle index {raw} out of range")));
        }
        for k in 0..3 {
            let v = parse_isize(toks[1 + k], lno, "neighbor index")?;
            neighbors[3 * idx + k] = if v < 0 {
                BOUNDARY
            } else {
                (v as usize)
                    .checked_sub(base)
                    .ok_or_else(|| PolyllaError::parse(lno, "neighbor index below detected base"))?
            };
        }
        seen += 1;
    }
    if seen != count {
        return Err(PolyllaError::parse(0, format!("expected {count} neighbor rows, found {seen}")));
    }
    Ok(neighbors)
}

/// Loads a triangulation from Triangle-format text. When `neigh_text` is
/// absent, neighbors are reconstructed from the triangle list. Orientation is
/// normalized to ccw and the result is fully validated.
pub fn load_triangle_files<S: Scalar>(
    node_text: &str,
    ele_text: &str,
    neigh_text: Option<&str>,
) -> Result<Triangulation<S>> {
    let node = parse_node::<S>(node_text)?;
    let triangles = parse_ele(ele_text, node.base)?;
    let neighbors = neigh_text
        .map(|t| parse_neigh(t, node.base, triangles.len() / 3))
        .transpose()?;
    Triangulation::from_parts(node.vertices, triangles, neighbors, node.markers)
}

/// Serializes a triangulation back to 0-based `.node`, `.ele` and `.neigh`
/// texts. Coordinates use `precision` significant digits.
pub fn write_triangle_files<S: Scalar>(
    tri: &Triangulation<S>,
    precision: usize,
) -> (String, String, String) {
    let n = tri.num_vertices();
    let m = tri.num_triangles();
    let markers = tri.constrained_flags();

    let mut node = String::new();
    let _ = writeln!(node, "{} 2 0 {}", n, if markers.is_some() { 1 } else { 0 });
    for v in 0..n {
        let p = tri.point(v);
        // Scientific notation so `precision` counts significant digits;
        // 17 of them round-trips any f64 exactly.
        let digits = precision.saturating_sub(1);
        let _ = write!(
            node,
            "{} {:.*e} {:.*e}",
            v,
            digits,
            p[0].as_f64(),
            digits,
            p[1].as_f64()
        );
        if let Some(m) = markers {
            let _ = write!(node, " {}", if m[v] { 1 } else { 0 });
        }
        node.push('\n');
    }

    let mut ele = String::new();
    let _ = writeln!(ele, "{m} 3 0");
    for t in 0..m {
        let [a, b, c] = tri.tri(t);
        let _ = writeln!(ele, "{t} {a} {b} {c}");
    }

    let mut neigh = String::new();
    let _ = writeln!(neigh, "{m} 3");
    for t in 0..m {
        let row: Vec<String> = (0..3)
            .map(|k| {
                let nb = tri.neighbor(t, k);
                if nb == BOUNDARY {
                    "-1".to_string()
                } else {
                    nb.to_string()
                }
            })
            .collect();
        let _ = writeln!(neigh, "{t} {}", row.join(" "));
    }

    (node, ele, neigh)
}
