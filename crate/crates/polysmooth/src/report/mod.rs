//! Global smoothness verdict over all interior vertices and faces, with
//! machine-readable violations and exports.

mod export;

pub use export::{colored_obj, from_json, gauss_svg, to_json, ReportError};

use crate::curvature::{classify, smoothness, CurvatureError, VertexAnalysis, VertexClass};
use crate::faces::{classify_face_with, FaceClass, FaceReport, FaceViolation};
use crate::geom::Vec3;
use crate::indicatrix::{asymptotic_directions_vertex, AsymptoticDirection};
use crate::mesh::Mesh;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Analyzed,
    /// Touches the boundary; never a violation.
    Skipped,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: usize,
    pub status: Status,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub class: Option<VertexClass>,
    pub inflection_faces: Vec<usize>,
    pub reflex_faces: Vec<usize>,
    pub simple: Option<bool>,
    pub degenerate: bool,
    pub smooth: bool,
    pub failed_conditions: Vec<u8>,
    /// Tangent-plane normal (kernel point of the Gauss image).
    pub n: Option<Vec3>,
    /// Discrete normal (hemisphere pole).
    pub n_prime: Option<Vec3>,
    pub n_prime_inside: Option<bool>,
    pub asymptotic_directions: Vec<AsymptoticDirection>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceEntry {
    pub face: usize,
    pub status: Status,
    pub smooth: bool,
    pub failed_conditions: Vec<u8>,
    pub report: Option<FaceReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: u8,
    pub code: String,
    pub vertex: Option<usize>,
    pub face: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub vertices: usize,
    pub faces: usize,
    pub analyzed_vertices: usize,
    pub analyzed_faces: usize,
    pub skipped_vertices: usize,
    pub skipped_faces: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub schema: u32,
    pub smooth: bool,
    pub summary: Summary,
    pub vertices: Vec<VertexReport>,
    pub faces: Vec<FaceEntry>,
    /// Ordered by vertex id, then by face id.
    pub violations: Vec<Violation>,
    /// Observations that do not affect the verdict.
    pub caveats: Vec<Violation>,
}

impl SmoothnessReport {
    pub fn vertex(&self, v: usize) -> &VertexReport {
        &self.vertices[v]
    }

    pub fn face(&self, f: usize) -> &FaceEntry {
        &self.faces[f]
    }

    pub fn violations_for_condition(&self, c: u8) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition == c)
    }
}

fn violation(condition: u8, code: &str, vertex: Option<usize>, face: Option<usize>, detail: String) -> Violation {
    Violation { condition, code: code.to_string(), vertex, face, detail }
}

fn skipped_vertex(v: usize) -> VertexReport {
    VertexReport {
        vertex: v,
        status: Status::Skipped,
        k: None,
        class: None,
        inflection_faces: Vec::new(),
        reflex_faces: Vec::new(),
        simple: None,
        degenerate: false,
        smooth: true,
        failed_conditions: Vec::new(),
        n: None,
        n_prime: None,
        n_prime_inside: None,
        asymptotic_directions: Vec::new(),
        error: None,
    }
}

fn analyze_vertex(mesh: &Mesh, v: usize, out: &mut Vec<Violation>) -> (VertexReport, Option<VertexAnalysis>) {
    let mut r = skipped_vertex(v);
    if !mesh.is_interior_vertex(v) {
        return (r, None);
    }
    let fail = |r: &mut VertexReport, out: &mut Vec<Violation>, c: u8, code: &str, detail: String| {
        if !r.failed_conditions.contains(&c) {
            r.failed_conditions.push(c);
        }
        out.push(violation(c, code, Some(v), None, detail));
    };
    let star = match mesh.vertex_star(v) {
        Ok(s) => s,
        Err(e) => {
            r.status = Status::Failed;
            r.smooth = false;
            r.error = Some(e.to_string());
            fail(&mut r, out, 2, "STAR_UNAVAILABLE", e.to_string());
            return (r, None);
        }
    };
    let a = match VertexAnalysis::new(star) {
        Ok(a) => a,
        Err(e) => {
            r.status = Status::Failed;
            r.smooth = false;
            r.error = Some(e.to_string());
            let c = if matches!(e, CurvatureError::ZeroCurvature { .. }) { 1 } else { 2 };
            fail(&mut r, out, c, "ANALYSIS_FAILED", e.to_string());
            return (r, None);
        }
    };
    r.status = Status::Analyzed;
    r.k = Some(a.k);
    r.simple = Some(a.simple);
    r.degenerate = a.degenerate;
    r.inflection_faces = a.inflection_faces();
    r.reflex_faces = a.reflex_faces();
    if a.is_zero_curvature() {
        fail(&mut r, out, 1, "ZERO_CURVATURE", format!("K = {:e}", a.k));
    } else {
        match classify(&a) {
            Ok(c) => r.class = Some(c.class),
            Err(e) => {
                r.error = Some(e.to_string());
                fail(&mut r, out, 2, "CLASSIFICATION_FAILED", e.to_string());
            }
        }
    }
    let sm = smoothness(&a);
    if !sm.simple {
        fail(&mut r, out, 2, "GAUSS_IMAGE_SELF_INTERSECTING", "Gauss image is not simple".into());
    }
    if !sm.hemispherical {
        fail(&mut r, out, 2, "NOT_HEMISPHERICAL", "Gauss image is not in an open hemisphere".into());
    }
    if sm.simple && !sm.star_shaped {
        fail(&mut r, out, 2, "NOT_STAR_SHAPED", "Gauss image kernel is empty".into());
    }
    if let Some(frame) = sm.frame {
        r.n = Some(frame.n.into_inner());
        r.n_prime = Some(frame.n_prime.into_inner());
        r.n_prime_inside = Some(sm.n_prime_inside);
        if a.k < 0.0 && !a.is_zero_curvature() {
            if let Ok(d) = asymptotic_directions_vertex(&a.star, &frame) {
                r.asymptotic_directions = d.directions;
            }
        }
    }
    r.smooth = r.failed_conditions.is_empty();
    (r, Some(a))
}

fn face_condition(v: &FaceViolation) -> Option<(u8, &'static str)> {
    use FaceViolation::*;
    match v {
        ZeroCurvatureVertex { .. } | NonSimpleGaussImage { .. } => None,
        TooManySignChanges { .. } => Some((3, "SIGN_CHANGES")),
        AngleSumNot2Pi { .. } => Some((4, "ANGLE_SUM_NOT_2PI")),
        UnbalancedAngleSum { .. } => Some((4, "ANGLE_SUM_NOT_ZERO")),
        PartialSumTooLarge { .. } => Some((4, "PARTIAL_SUM_TOO_LARGE")),
        NotConvex => Some((4, "NOT_CONVEX")),
        InflectionAtPositiveVertex { .. } => Some((4, "INFLECTION_AT_POSITIVE_VERTEX")),
        CountingIdentity { .. } => Some((4, "COUNTING_IDENTITY")),
        NotStarShaped => Some((4, "NOT_STAR_SHAPED")),
        HullViolation { .. } => Some((4, "HULL_VIOLATION")),
        NoInteriorSegment => None,
    }
}

fn analyze_face(
    mesh: &Mesh,
    f: usize,
    table: &[Option<VertexAnalysis>],
    out: &mut Vec<Violation>,
    caveats: &mut Vec<Violation>,
) -> FaceEntry {
    let mut e = FaceEntry { face: f, status: Status::Skipped, smooth: true, failed_conditions: Vec::new(), report: None, error: None };
    if !mesh.is_interior_face(f) {
        return e;
    }
    if mesh.face(f).iter().any(|&v| table[v].is_none()) {
        e.status = Status::Failed;
        e.smooth = false;
        e.error = Some("a vertex of the face could not be analysed".into());
        return e;
    }
    let r = match classify_face_with(mesh, f, table) {
        Ok(r) => r,
        Err(err) => {
            e.status = Status::Failed;
            e.smooth = false;
            e.error = Some(err.to_string());
            e.failed_conditions.push(4);
            out.push(violation(4, "FACE_ANALYSIS_FAILED", None, Some(f), err.to_string()));
            return e;
        }
    };
    e.status = Status::Analyzed;
    let mut push = |c: u8, code: &str, detail: String| {
        if !e.failed_conditions.contains(&c) {
            e.failed_conditions.push(c);
        }
        out.push(violation(c, code, None, Some(f), detail));
    };
    match &r.class {
        FaceClass::MonkeySaddle(k) => push(
            4,
            "MONKEY_SADDLE",
            format!("angle sum {} = {}π at the face normal", r.oriented_angle_sum, 2 * k),
        ),
        FaceClass::Violating(vs) => {
            for v in vs {
                if let Some((c, code)) = face_condition(v) {
                    push(c, code, format!("{v:?}"));
                } else if matches!(v, FaceViolation::NoInteriorSegment) {
                    caveats.push(violation(4, "NO_INTERIOR_PARABOLIC_SEGMENT", None, Some(f), String::new()));
                }
            }
        }
        _ => {}
    }
    e.failed_conditions.sort_unstable();
    e.smooth = r.class.is_ok();
    e.report = Some(r);
    e
}

/// Runs the full pipeline. Problems found in vertices and faces become
/// violations; only invalid meshes are rejected earlier, at load time.
pub fn analyze(mesh: &Mesh) -> SmoothnessReport {
    let mut vertex_violations = Vec::new();
    let mut table = Vec::with_capacity(mesh.num_vertices());
    let mut vertices = Vec::with_capacity(mesh.num_vertices());
    for v in 0..mesh.num_vertices() {
        let (r, a) = analyze_vertex(mesh, v, &mut vertex_violations);
        vertices.push(r);
        table.push(a);
    }
    let mut face_violations = Vec::new();
    let mut caveats = Vec::new();
    let faces: Vec<FaceEntry> = (0..mesh.num_faces())
        .map(|f| analyze_face(mesh, f, &table, &mut face_violations, &mut caveats))
        .collect();
    for r in &vertices {
        if r.status == Status::Analyzed && r.n_prime_inside == Some(false) {
            caveats.push(violation(2, "DISCRETE_NORMAL_OUTSIDE", Some(r.vertex), None, String::new()));
        }
    }
    if mesh.is_closed() && vertices.iter().all(|r| r.class == Some(VertexClass::ConvexCorner)) {
        caveats.push(violation(
            0,
            "CLOSED_CONVEX",
            None,
            None,
            "closed convex polyhedron: smooth although face planes are not transverse".into(),
        ));
    }
    let mut violations = vertex_violations;
    violations.extend(face_violations);
    let summary = Summary {
        vertices: vertices.len(),
        faces: faces.len(),
        analyzed_vertices: vertices.iter().filter(|r| r.status != Status::Skipped).count(),
        analyzed_faces: faces.iter().filter(|r| r.status != Status::Skipped).count(),
        skipped_vertices: vertices.iter().filter(|r| r.status == Status::Skipped).count(),
        skipped_faces: faces.iter().filter(|r| r.status == Status::Skipped).count(),
        violations: violations.len(),
    };
    let smooth = violations.is_empty()
        && vertices.iter().all(|r| r.smooth)
        && faces.iter().all(|e| e.smooth);
    SmoothnessReport { schema: SCHEMA_VERSION, smooth, summary, vertices, faces, violations, caveats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Surface, Tiling};

    #[test]
    fn triangulated_saddle_is_smooth() {
        let m = fixtures::graph_mesh(Surface::Saddle, Tiling::C, 8).unwrap();
        let r = analyze(&m);
        assert!(r.smooth, "{:?}", r.violations);
        assert_eq!(r.summary.analyzed_vertices, 49);
    }

    #[test]
    fn tiling_b_fails_condition_two() {
        let m = fixtures::graph_mesh(Surface::Saddle, Tiling::B, 8).unwrap();
        let r = analyze(&m);
        assert!(!r.smooth);
        assert!(r.violations_for_condition(2).count() > 0);
        assert!(r.violations.iter().any(|v| v.code == "GAUSS_IMAGE_SELF_INTERSECTING"));
    }

    #[test]
    fn monkey_patch_fails_condition_four() {
        let r = analyze(&fixtures::monkey_star());
        assert!(!r.smooth);
        let v: Vec<_> = r.violations_for_condition(4).collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].code, "MONKEY_SADDLE");
        assert_eq!(v[0].face, Some(0));
    }

    #[test]
    fn cube_is_smooth_with_caveat() {
        let r = analyze(&fixtures::cube_corner());
        assert!(r.smooth);
        assert_eq!(r.vertices.iter().filter(|v| v.class == Some(VertexClass::ConvexCorner)).count(), 8);
        assert!(r.caveats.iter().any(|c| c.code == "CLOSED_CONVEX"));
    }

    #[test]
    fn fold_mixed_faces_are_blocks() {
        let m = fixtures::graph_mesh(Surface::Fold, Tiling::C, 8).unwrap();
        let r = analyze(&m);
        // the column just left of the fold has a folded Gauss image
        assert!(!r.violations.is_empty());
        for v in &r.violations {
            assert_eq!((v.condition, v.code.as_str()), (2, "NOT_STAR_SHAPED"));
            assert!(m.position(v.vertex.unwrap()).x.abs() < 0.05);
        }
        let blocks = r
            .faces
            .iter()
            .filter_map(|e| e.report.as_ref())
            .filter(|f| f.class == FaceClass::MixedBlockOK)
            .count();
        assert_eq!(blocks, 12);
    }

    #[test]
    fn violations_are_ordered() {
        let m = fixtures::torus(2.0, 1.0, 12, 12).unwrap();
        let r = analyze(&m);
        let key = |v: &Violation| (v.vertex.is_none(), v.vertex.unwrap_or(0), v.face.unwrap_or(0));
        assert!(r.violations.windows(2).all(|w| key(&w[0]) <= key(&w[1])));
    }
}
