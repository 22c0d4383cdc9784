use super::{SmoothnessReport, Status};
use crate::curvature::{smoothness, VertexAnalysis};
use crate::geom::{fmt_g17, tangent_basis, Vec2, Vec3};
use crate::mesh::Mesh;
use crate::planar;
use crate::sphere::{hemisphere_pole, GreatArc};
use std::f64::consts::PI;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex {0}: {1}")]
    Vertex(usize, String),
}

const ARC_SAMPLES: usize = 32;

pub fn to_json(report: &SmoothnessReport) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<SmoothnessReport, ReportError> {
    Ok(serde_json::from_str(text)?)
}

fn face_color(report: &SmoothnessReport, f: usize) -> ([f64; 3], String, String) {
    let e = &report.faces[f];
    match (&e.status, &e.report) {
        (Status::Analyzed, Some(r)) => {
            let sign = match (r.n_plus > 0, r.n_minus > 0) {
                (true, false) => "+",
                (false, true) => "-",
                _ => "mixed",
            };
            let rgb = if !e.smooth {
                [0.95, 0.75, 0.1]
            } else {
                match sign {
                    "+" => [0.85, 0.25, 0.2],
                    "-" => [0.2, 0.35, 0.85],
                    _ => [0.6, 0.3, 0.7],
                }
            };
            (rgb, sign.to_string(), r.class.name().to_string())
        }
        (Status::Failed, _) => ([0.1, 0.1, 0.1], "?".into(), "Failed".into()),
        _ => ([0.7, 0.7, 0.7], "?".into(), "Skipped".into()),
    }
}

/// OBJ export with per-vertex colors (`v x y z r g b`) by curvature sign and
/// a color comment before every face line.
pub fn colored_obj(mesh: &Mesh, report: &SmoothnessReport) -> String {
    let mut out = String::from("# polysmooth colored mesh\n# face colors: red K>0, blue K<0, purple mixed, orange violating, gray skipped\n");
    for (v, p) in mesh.positions().iter().enumerate() {
        let rgb = match report.vertices[v].k {
            Some(k) if k > 0.0 => [0.85, 0.25, 0.2],
            Some(k) if k < 0.0 => [0.2, 0.35, 0.85],
            _ => [0.7, 0.7, 0.7],
        };
        let _ = writeln!(
            out,
            "v {} {} {} {} {} {}",
            fmt_g17(p.x),
            fmt_g17(p.y),
            fmt_g17(p.z),
            rgb[0],
            rgb[1],
            rgb[2]
        );
    }
    for (f, face) in mesh.faces().iter().enumerate() {
        let (rgb, sign, class) = face_color(report, f);
        let _ = writeln!(out, "# face {f} color {} {} {} sign {sign} class {class}", rgb[0], rgb[1], rgb[2]);
        let idx: Vec<String> = face.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
    }
    out
}

const PANEL: f64 = 260.0;
const RADIUS: f64 = 110.0;

/// SVG with one panel per vertex: the Gauss image in orthographic projection
/// from its discrete normal, arcs sampled at 32 points, corners filled and
/// the traversal direction marked.
pub fn gauss_svg(mesh: &Mesh, vertices: &[usize]) -> Result<String, ReportError> {
    let width = PANEL * vertices.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{h}" viewBox="0 0 {width} {h}">"#,
        h = PANEL + 20.0
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (slot, &v) in vertices.iter().enumerate() {
        let star = mesh.vertex_star(v).map_err(|e| ReportError::Vertex(v, e.to_string()))?;
        let a = VertexAnalysis::new(star).map_err(|e| ReportError::Vertex(v, e.to_string()))?;
        let poly = &a.image.polygon;
        let sm = smoothness(&a);
        let pole = sm
            .frame
            .map(|f| f.n_prime.into_inner())
            .or_else(|| hemisphere_pole(poly.vertices()).map(|p| p.into_inner()))
            .unwrap_or_else(|| {
                let s = poly.vertices().iter().fold(Vec3::zeros(), |s, p| s + p);
                if s.norm() > 1e-12 {
                    s.normalize()
                } else {
                    Vec3::z()
                }
            });
        let (e1, e2) = tangent_basis(&pole);
        let cx = slot as f64 * PANEL + PANEL / 2.0;
        let cy = PANEL / 2.0 + 10.0;
        let proj = |p: &Vec3| (cx + RADIUS * p.dot(&e1), cy - RADIUS * p.dot(&e2));
        let _ = writeln!(out, r#"<g id="vertex-{v}">"#);
        let _ = writeln!(
            out,
            r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##
        );
        let n = poly.len();
        let mut pts: Vec<Vec3> = Vec::with_capacity(n * ARC_SAMPLES);
        for i in 0..n {
            let (p, q) = (poly.vertex(i), poly.vertex((i + 1) % n));
            match GreatArc::new(p, q) {
                Some(arc) => pts.extend((0..ARC_SAMPLES).map(|k| arc.point_at(k as f64 / ARC_SAMPLES as f64))),
                None => pts.push(p),
            }
        }
        let plane: Vec<Vec2> = pts.iter().map(|p| Vec2::new(p.dot(&e1), p.dot(&e2))).collect();
        let mut path = String::new();
        for p in &pts {
            let (x, y) = proj(p);
            let _ = write!(path, "{}{x:.3},{y:.3} ", if path.is_empty() { "M" } else { "L" });
        }
        path.push('Z');
        let color = if a.k > 0.0 { "#c0392b" } else { "#2c4fc0" };
        let _ = writeln!(out, r#"<path d="{path}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-width="1.5"/>"#);
        for i in 0..n {
            let (x, y) = proj(&poly.vertex(i));
            let corner = poly.interior_angle(i, a.sign()) < PI;
            let fill = if corner { color } else { "white" };
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{fill}" stroke="{color}"><title>face {}</title></circle>"#,
                a.image.faces[i]
            );
        }
        if let Some(arc) = GreatArc::new(poly.vertex(0), poly.vertex(1 % n)) {
            let (x0, y0) = proj(&arc.point_at(0.45));
            let (x1, y1) = proj(&arc.point_at(0.55));
            let (dx, dy) = (x1 - x0, y1 - y0);
            let l = (dx * dx + dy * dy).sqrt().max(1e-9);
            let (ux, uy) = (dx / l * 7.0, dy / l * 7.0);
            let _ = writeln!(
                out,
                r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="{color}"/>"#,
                x1 + ux,
                y1 + uy,
                x1 - uy * 0.6,
                y1 + ux * 0.6,
                x1 + uy * 0.6,
                y1 - ux * 0.6
            );
        }
        let orientation = if planar::signed_area(&plane) > 0.0 { "CCW" } else { "CW" };
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" text-anchor="middle">v{v} K={:.6} {orientation}</text>"#,
            cx,
            PANEL + 10.0,
            a.k
        );
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::analyze;
    use super::*;
    use crate::fixtures;

    #[test]
    fn json_round_trip() {
        let m = fixtures::saddle_star(1.0);
        let r = analyze(&m);
        let text = to_json(&r).unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert!(text.contains("\"K\": -2.0943951"));
        assert_eq!(from_json(&text).unwrap(), r);
    }

    #[test]
    fn saddle_svg_is_clockwise() {
        let m = fixtures::saddle_star(1.0);
        let svg = gauss_svg(&m, &[0]).unwrap();
        assert!(svg.contains(" CW</text>"));
        assert_eq!(svg.matches("<title>").count(), 4);
        let d = svg.split("<path d=\"").nth(1).unwrap();
        assert_eq!(d.split_whitespace().filter(|t| t.starts_with('L')).count(), 4 * 32 - 1);
    }

    #[test]
    fn colored_obj_has_face_comments() {
        let m = fixtures::cube_corner();
        let obj = colored_obj(&m, &analyze(&m));
        assert_eq!(obj.matches("class ConvexPositive").count(), 6);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 8);
    }
}
