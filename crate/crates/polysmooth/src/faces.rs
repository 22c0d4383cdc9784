//! Per-face analysis: angle sums of neighbouring Gauss images at the face
//! normal, corner/inflection counting, face shapes, points of contact,
//! face asymptotic directions, parabolic segments and the splitting of
//! mixed faces into building blocks.

use crate::curvature::{oriented_angle, CurvatureError, VertexAnalysis};
use crate::geom::{tol, Vec2, Vec3, TAU};
use crate::mesh::{FacePlane, Mesh};
use crate::planar::{self, Containment};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FaceError {
    #[error("face {0} touches the boundary")]
    BoundaryFace(usize),
    #[error("face {0} has vertices of both curvature signs")]
    MixedSigns(usize),
    #[error("face {0} has vertices of a single curvature sign")]
    UniformSigns(usize),
    #[error("face {0}: operation needs negative curvature")]
    WrongSign(usize),
    #[error("vertex {vertex} could not be analysed: {source}")]
    Vertex { vertex: usize, source: CurvatureError },
    #[error("face {0}: no segment between the sign-change edges stays inside the face")]
    NoInteriorSegment(usize),
    #[error("face {0} cannot be split into building blocks")]
    NotDecomposable(usize),
}

/// Reasons a face fails the smoothness conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code")]
pub enum FaceViolation {
    ZeroCurvatureVertex { vertex: usize },
    NonSimpleGaussImage { vertex: usize },
    AngleSumNot2Pi { sum: f64 },
    NotConvex,
    InflectionAtPositiveVertex { vertex: usize },
    CountingIdentity { c: [usize; 4] },
    NotStarShaped,
    TooManySignChanges { count: usize },
    UnbalancedAngleSum { sum: f64 },
    PartialSumTooLarge { positive: bool, sum: f64 },
    HullViolation { vertex: usize },
    NoInteriorSegment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FaceClass {
    ConvexPositive,
    PseudoQuadNegative,
    PseudoTriangleNegative4,
    PseudoTriangleNegative2,
    MixedBlockOK,
    /// Angle sum `2kπ` with `k ≥ 2` around a negatively curved face.
    MonkeySaddle(u32),
    Violating(Vec<FaceViolation>),
}

impl FaceClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ConvexPositive => "ConvexPositive",
            Self::PseudoQuadNegative => "PseudoQuadNegative",
            Self::PseudoTriangleNegative4 => "PseudoTriangleNegative4",
            Self::PseudoTriangleNegative2 => "PseudoTriangleNegative2",
            Self::MixedBlockOK => "MixedBlockOK",
            Self::MonkeySaddle(_) => "MonkeySaddle",
            Self::Violating(_) => "Violating",
        }
    }

    pub fn is_ok(&self) -> bool {
        !matches!(self, Self::MonkeySaddle(_) | Self::Violating(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSegment {
    pub from: Vec3,
    pub to: Vec3,
    pub vertex: usize,
    /// The segment stands for two asymptotic directions.
    pub counts_twice: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceReport {
    pub face: usize,
    pub vertices: Vec<usize>,
    /// Sign of K per face vertex (+1 / -1, 0 when numerically zero).
    pub signs: Vec<i8>,
    pub sign_change_edges: usize,
    /// Σ of Gauss-image angles at the face normal, negative-curvature
    /// contributions positive and positive ones negative for mixed faces.
    pub oriented_angle_sum: f64,
    /// Same sum from angles measured on the sphere, when all images are simple.
    pub geometric_angle_sum: Option<f64>,
    pub c_counts: [usize; 4],
    pub n_plus: usize,
    pub n_minus: usize,
    pub class: FaceClass,
    pub point_of_contact: Option<Vec3>,
    pub parabolic_segment: Option<(Vec3, Vec3)>,
    pub asymptotic_segments: Vec<AsymptoticSegment>,
}

/// Data of one face corner taken from the vertex star.
#[derive(Debug, Clone, Copy)]
struct Corner {
    vertex: usize,
    alpha: f64,
    inflection: bool,
    k: f64,
    simple: bool,
    geometric: f64,
}

impl Corner {
    fn sign(&self) -> i8 {
        if self.k.abs() < tol::ZERO_K {
            0
        } else if self.k > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Row of the four-case corner list for a negatively curved vertex.
    fn case(&self) -> usize {
        match (self.alpha < PI, self.inflection) {
            (true, false) => 0,
            (true, true) => 1,
            (false, false) => 2,
            (false, true) => 3,
        }
    }

    fn angle(&self) -> f64 {
        oriented_angle(self.alpha, self.inflection, self.k).expect("straight angles rejected")
    }
}

/// Vertex analyses indexed by vertex id; `None` for vertices not analysed.
pub type AnalysisTable = [Option<VertexAnalysis>];

/// Analyses of every vertex of `f`; other entries stay `None`.
pub fn face_vertex_analyses(mesh: &Mesh, f: usize) -> Result<Vec<Option<VertexAnalysis>>, FaceError> {
    if !mesh.is_interior_face(f) {
        return Err(FaceError::BoundaryFace(f));
    }
    let mut table = vec![None; mesh.num_vertices()];
    for &v in mesh.face(f) {
        let star = mesh.vertex_star(v).map_err(|_| FaceError::BoundaryFace(f))?;
        let a = VertexAnalysis::new(star).map_err(|source| FaceError::Vertex { vertex: v, source })?;
        table[v] = Some(a);
    }
    Ok(table)
}

fn corners(mesh: &Mesh, f: usize, table: &AnalysisTable) -> Result<Vec<Corner>, FaceError> {
    if !mesh.is_interior_face(f) {
        return Err(FaceError::BoundaryFace(f));
    }
    mesh.face(f)
        .iter()
        .map(|&v| {
            let a = table
                .get(v)
                .and_then(|a| a.as_ref())
                .ok_or(FaceError::BoundaryFace(f))?;
            let i = a.star.position_of(f).ok_or(FaceError::BoundaryFace(f))?;
            let s = a.sign();
            Ok(Corner {
                vertex: v,
                alpha: a.star.ring()[i].alpha,
                inflection: a.inflection[i],
                k: a.k,
                simple: a.simple,
                geometric: a.image.polygon.interior_angle(i, s),
            })
        })
        .collect()
}

fn sign_changes(cs: &[Corner]) -> usize {
    let n = cs.len();
    (0..n).filter(|&i| cs[i].sign() * cs[(i + 1) % n].sign() < 0).count()
}

fn base_report(f: usize, cs: &[Corner]) -> FaceReport {
    let mut c = [0usize; 4];
    for x in cs.iter().filter(|x| x.sign() < 0) {
        c[x.case()] += 1;
    }
    let n_plus = cs.iter().filter(|x| x.sign() > 0).count();
    let n_minus = cs.iter().filter(|x| x.sign() < 0).count();
    let mixed = n_plus > 0 && n_minus > 0;
    let weight = |x: &Corner| if mixed && x.sign() > 0 { -1.0 } else { 1.0 };
    let sum = cs.iter().filter(|x| x.sign() != 0).map(|x| weight(x) * x.angle()).sum();
    let geometric = cs
        .iter()
        .all(|x| x.simple && x.sign() != 0)
        .then(|| cs.iter().map(|x| weight(x) * x.geometric).sum());
    FaceReport {
        face: f,
        vertices: cs.iter().map(|x| x.vertex).collect(),
        signs: cs.iter().map(Corner::sign).collect(),
        sign_change_edges: sign_changes(cs),
        oriented_angle_sum: sum,
        geometric_angle_sum: geometric,
        c_counts: c,
        n_plus,
        n_minus,
        class: FaceClass::Violating(Vec::new()),
        point_of_contact: None,
        parabolic_segment: None,
        asymptotic_segments: Vec::new(),
    }
}

fn common_violations(cs: &[Corner]) -> Vec<FaceViolation> {
    let mut out = Vec::new();
    for x in cs {
        if x.sign() == 0 {
            out.push(FaceViolation::ZeroCurvatureVertex { vertex: x.vertex });
        } else if !x.simple {
            out.push(FaceViolation::NonSimpleGaussImage { vertex: x.vertex });
        }
    }
    out
}

/// Classifies a face whose vertices all have the same curvature sign.
pub fn classify_face_uniform(mesh: &Mesh, f: usize) -> Result<FaceReport, FaceError> {
    classify_face_uniform_with(mesh, f, &face_vertex_analyses(mesh, f)?)
}

pub fn classify_face_uniform_with(mesh: &Mesh, f: usize, table: &AnalysisTable) -> Result<FaceReport, FaceError> {
    let cs = corners(mesh, f, table)?;
    let mut r = base_report(f, &cs);
    if r.n_plus > 0 && r.n_minus > 0 {
        return Err(FaceError::MixedSigns(f));
    }
    let mut bad = common_violations(&cs);
    let plane = mesh.face_plane(f);
    if r.n_minus == 0 {
        if !planar::is_convex(&plane.outline) {
            bad.push(FaceViolation::NotConvex);
        }
        for x in cs.iter().filter(|x| x.inflection) {
            bad.push(FaceViolation::InflectionAtPositiveVertex { vertex: x.vertex });
        }
        if (r.oriented_angle_sum - TAU).abs() > 1e-9 {
            bad.push(FaceViolation::AngleSumNot2Pi { sum: r.oriented_angle_sum });
        }
        r.point_of_contact = contact_point(&plane, false);
        r.class = if bad.is_empty() { FaceClass::ConvexPositive } else { FaceClass::Violating(bad) };
        return Ok(r);
    }
    let n = cs.len();
    let [c1, c2, c3, c4] = r.c_counts;
    // angle sum 2kπ  ⇔  2c₁ + c₂ + c₄ = 2k + 2
    let turns = 2 * c1 + c2 + c4;
    r.point_of_contact = contact_point(&plane, true);
    if r.point_of_contact.is_none() {
        bad.push(FaceViolation::NotStarShaped);
    }
    let shape = match (c1, c2, c4) {
        _ if c1 as i64 - c3 as i64 != 4 - n as i64 => None,
        (0, 4, 0) => Some(FaceClass::PseudoQuadNegative),
        (0, 3, 1) => Some(FaceClass::PseudoTriangleNegative4),
        (1, 2, 0) => Some(FaceClass::PseudoTriangleNegative2),
        _ => None,
    };
    r.class = if turns % 2 == 0 && turns >= 6 && bad.iter().all(|b| matches!(b, FaceViolation::NotStarShaped)) {
        FaceClass::MonkeySaddle(((turns - 2) / 2) as u32)
    } else {
        if (r.oriented_angle_sum - TAU).abs() > 1e-9 {
            bad.push(FaceViolation::AngleSumNot2Pi { sum: r.oriented_angle_sum });
        } else if shape.is_none() {
            bad.push(FaceViolation::CountingIdentity { c: r.c_counts });
        }
        match shape {
            Some(s) if bad.is_empty() => s,
            _ => FaceClass::Violating(bad),
        }
    };
    if let (Some(a), true) = (r.point_of_contact, r.class.is_ok()) {
        r.asymptotic_segments = segments_from(a, &cs, mesh.positions());
    }
    Ok(r)
}

/// Classifies a face with vertices of both curvature signs.
pub fn classify_face_mixed(mesh: &Mesh, f: usize) -> Result<FaceReport, FaceError> {
    classify_face_mixed_with(mesh, f, &face_vertex_analyses(mesh, f)?)
}

pub fn classify_face_mixed_with(mesh: &Mesh, f: usize, table: &AnalysisTable) -> Result<FaceReport, FaceError> {
    let cs = corners(mesh, f, table)?;
    let mut r = base_report(f, &cs);
    if r.n_plus == 0 || r.n_minus == 0 {
        return Err(FaceError::UniformSigns(f));
    }
    let mut bad = common_violations(&cs);
    if r.sign_change_edges != 2 {
        bad.push(FaceViolation::TooManySignChanges { count: r.sign_change_edges });
    }
    if r.oriented_angle_sum.abs() > 1e-9 {
        bad.push(FaceViolation::UnbalancedAngleSum { sum: r.oriented_angle_sum });
    }
    for positive in [true, false] {
        let s: f64 = cs
            .iter()
            .filter(|x| (x.sign() > 0) == positive && x.sign() != 0)
            .map(Corner::angle)
            .sum();
        if s >= TAU - 1e-9 {
            bad.push(FaceViolation::PartialSumTooLarge { positive, sum: s });
        }
    }
    let [c1, _, c3, _] = r.c_counts;
    if c1 > 1 || r.n_minus as i64 - 2 != c3 as i64 - c1 as i64 {
        bad.push(FaceViolation::CountingIdentity { c: r.c_counts });
    }
    let plane = mesh.face_plane(f);
    bad.extend(hull_violations(&plane, &cs));
    if r.sign_change_edges == 2 {
        r.parabolic_segment = parabolic_in_plane(&plane, &cs);
        if r.parabolic_segment.is_none() {
            bad.push(FaceViolation::NoInteriorSegment);
        }
    }
    r.class = if bad.is_empty() { FaceClass::MixedBlockOK } else { FaceClass::Violating(bad) };
    Ok(r)
}

/// Dispatches to the uniform or the mixed classification.
pub fn classify_face_with(mesh: &Mesh, f: usize, table: &AnalysisTable) -> Result<FaceReport, FaceError> {
    match classify_face_uniform_with(mesh, f, table) {
        Err(FaceError::MixedSigns(_)) => classify_face_mixed_with(mesh, f, table),
        r => r,
    }
}

pub fn classify_face(mesh: &Mesh, f: usize) -> Result<FaceReport, FaceError> {
    classify_face_with(mesh, f, &face_vertex_analyses(mesh, f)?)
}

fn hull_violations(plane: &FacePlane, cs: &[Corner]) -> Vec<FaceViolation> {
    let pos: Vec<Vec2> = cs.iter().zip(&plane.outline).filter(|(x, _)| x.sign() > 0).map(|(_, p)| *p).collect();
    let hull = planar::convex_hull(&pos);
    let eps = 1e-12 * planar::diameter(&plane.outline).max(1e-300);
    cs.iter()
        .zip(&plane.outline)
        .filter(|(x, _)| x.sign() < 0)
        .filter(|(_, p)| match hull.len() {
            0 => false,
            1 => (*p - hull[0]).norm() <= eps,
            2 => planar::segments_intersect(p, p, &hull[0], &hull[1], eps),
            _ => planar::locate(p, &hull, eps) != Containment::Outside,
        })
        .map(|(x, _)| FaceViolation::HullViolation { vertex: x.vertex })
        .collect()
}

/// Centroid of the face (convex case) or of its kernel.
fn contact_point(plane: &FacePlane, use_kernel: bool) -> Option<Vec3> {
    let poly = if use_kernel { planar::kernel(&plane.outline) } else { plane.outline.clone() };
    (poly.len() >= 3).then(|| plane.to_3d(&planar::centroid(&poly)))
}

/// Point of contact of the face tangent plane; `None` when the face is not
/// star-shaped or has vertices of both signs.
pub fn point_of_contact(mesh: &Mesh, f: usize) -> Result<Option<Vec3>, FaceError> {
    let table = face_vertex_analyses(mesh, f)?;
    let cs = corners(mesh, f, &table)?;
    let r = base_report(f, &cs);
    if r.n_plus > 0 && r.n_minus > 0 {
        return Err(FaceError::MixedSigns(f));
    }
    Ok(contact_point(&mesh.face_plane(f), r.n_minus > 0))
}

fn segments_from(a: Vec3, cs: &[Corner], pos: &[Vec3]) -> Vec<AsymptoticSegment> {
    let infl = cs.iter().filter(|x| x.inflection).count();
    cs.iter()
        .filter(|x| x.inflection || (infl == 2 && x.case() == 0))
        .map(|x| AsymptoticSegment {
            from: a,
            to: pos[x.vertex],
            vertex: x.vertex,
            counts_twice: !x.inflection,
        })
        .collect()
}

/// Segments from the point of contact `a` to the vertices where the face
/// inflects, plus the doubled segment to the remaining corner when only two
/// inflections occur.
pub fn face_asymptotic_directions(mesh: &Mesh, f: usize, a: &Vec3) -> Result<Vec<AsymptoticSegment>, FaceError> {
    let table = face_vertex_analyses(mesh, f)?;
    let cs = corners(mesh, f, &table)?;
    if cs.iter().any(|x| x.sign() >= 0) {
        return Err(FaceError::WrongSign(f));
    }
    Ok(segments_from(*a, &cs, mesh.positions()))
}

fn segment_inside(poly: &[Vec2], a: &Vec2, b: &Vec2) -> bool {
    let eps = 1e-12 * planar::diameter(poly).max(1e-300);
    let n = poly.len();
    for k in 1..32 {
        let p = a + (b - a) * (k as f64 / 32.0);
        if planar::locate(&p, poly, eps) != Containment::Inside {
            return false;
        }
    }
    // no edge may cross the open segment
    let shrink = |t: f64| a + (b - a) * t;
    let (a2, b2) = (shrink(1e-9), shrink(1.0 - 1e-9));
    (0..n).all(|i| !planar::segments_intersect(&a2, &b2, &poly[i], &poly[(i + 1) % n], -eps))
}

fn parabolic_in_plane(plane: &FacePlane, cs: &[Corner]) -> Option<(Vec3, Vec3)> {
    let n = cs.len();
    let edges: Vec<usize> = (0..n).filter(|&i| cs[i].sign() * cs[(i + 1) % n].sign() < 0).collect();
    if edges.len() != 2 {
        return None;
    }
    let at = |e: usize, t: f64| plane.outline[e] + (plane.outline[(e + 1) % n] - plane.outline[e]) * t;
    for (s, t) in [(0.5, 0.5), (0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)] {
        let (p, q) = (at(edges[0], s), at(edges[1], t));
        if segment_inside(&plane.outline, &p, &q) {
            return Some((plane.to_3d(&p), plane.to_3d(&q)));
        }
    }
    None
}

/// Discrete parabolic segment of a mixed face joining its two sign-change edges.
pub fn parabolic_segment(mesh: &Mesh, f: usize) -> Result<Option<(Vec3, Vec3)>, FaceError> {
    let r = classify_face_mixed(mesh, f)?;
    if r.sign_change_edges != 2 {
        return Ok(None);
    }
    r.parabolic_segment.map(Some).ok_or(FaceError::NoInteriorSegment(f))
}

/// Corner of a mixed face or of one of its parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockVertex {
    /// Mesh vertex id; `None` for inserted split vertices.
    pub vertex: Option<usize>,
    pub point: Vec2,
    /// +1 / -1, 0 for inserted vertices.
    pub sign: i8,
    pub inflection: bool,
    pub synthetic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildingBlock {
    pub vertices: Vec<BlockVertex>,
}

impl BuildingBlock {
    /// Maximal runs of reflex vertices.
    pub fn nontrivial_pseudo_edges(&self) -> usize {
        let poly: Vec<Vec2> = self.vertices.iter().map(|v| v.point).collect();
        let n = poly.len();
        let s = planar::signed_area(&poly).signum();
        let eps = 1e-12 * planar::diameter(&poly).max(1e-300).powi(2);
        let reflex: Vec<bool> = (0..n)
            .map(|i| s * planar::orient(&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]) < -eps)
            .collect();
        (0..n).filter(|&i| reflex[i] && !reflex[(i + n - 1) % n]).count()
            + usize::from(reflex.iter().all(|&r| r))
    }

    pub fn inflections(&self) -> usize {
        self.vertices.iter().filter(|v| v.inflection).count()
    }
}

/// Splits a mixed face, given by its counter-clockwise outline, curvature
/// signs and inflection flags, at every convex negative vertex whose
/// neighbours are both negative. Split segments run into the face to the
/// first boundary point, inserting a vertex there when it lies inside an
/// edge. The inflection of a split vertex goes to whichever of its two
/// parts needs it for an even count.
pub fn decompose_polygon(
    outline: &[Vec2],
    signs: &[i8],
    inflection: &[bool],
) -> Option<Vec<BuildingBlock>> {
    let n = outline.len();
    let verts: Vec<BlockVertex> = (0..n)
        .map(|i| BlockVertex {
            vertex: Some(i),
            point: outline[i],
            sign: signs[i],
            inflection: inflection[i],
            synthetic: false,
        })
        .collect();
    let convex = |i: usize| planar::orient(&outline[(i + n - 1) % n], &outline[i], &outline[(i + 1) % n]) > 0.0;
    let splits: Vec<usize> = (0..n)
        .filter(|&i| signs[i] < 0 && convex(i) && signs[(i + n - 1) % n] < 0 && signs[(i + 1) % n] < 0)
        .collect();
    let mut parts = vec![verts];
    for &s in &splits {
        let idx = parts.iter().position(|p| p.iter().any(|v| v.vertex == Some(s)))?;
        let part = parts.remove(idx);
        let (a, b) = split_part(&part, s)?;
        parts.insert(idx, b);
        parts.insert(idx, a);
    }
    // each inflecting split vertex hands its inflection to one of its two
    // parts; peel parts with a single open choice until all are fixed
    let shared: Vec<usize> = splits.iter().copied().filter(|&s| inflection[s]).collect();
    let holds = |p: &[BlockVertex], s: usize| p.iter().any(|v| v.vertex == Some(s));
    let mut owner: Vec<Option<usize>> = vec![None; shared.len()];
    for p in parts.iter_mut() {
        for v in p.iter_mut() {
            if v.vertex.is_some_and(|id| splits.contains(&id)) {
                v.inflection = false;
            }
        }
    }
    while owner.iter().any(Option::is_none) {
        let mut progressed = false;
        for (pi, p) in parts.iter().enumerate() {
            let open: Vec<usize> = (0..shared.len()).filter(|&k| owner[k].is_none() && holds(p, shared[k])).collect();
            if open.len() != 1 {
                continue;
            }
            let k = open[0];
            let count = p.iter().filter(|v| v.inflection).count()
                + (0..shared.len()).filter(|&j| owner[j] == Some(pi)).count();
            owner[k] = Some(if count % 2 == 1 {
                pi
            } else {
                (0..parts.len()).find(|&o| o != pi && holds(&parts[o], shared[k]))?
            });
            progressed = true;
            break;
        }
        if !progressed {
            return None;
        }
    }
    for (k, o) in owner.iter().enumerate() {
        let o = o.expect("all assigned");
        for v in parts[o].iter_mut().filter(|v| v.vertex == Some(shared[k])) {
            v.inflection = true;
        }
    }
    let blocks: Vec<BuildingBlock> = parts.into_iter().map(|vertices| BuildingBlock { vertices }).collect();
    blocks
        .iter()
        .all(|b| b.nontrivial_pseudo_edges() <= 1 && matches!(b.inflections(), 0 | 2))
        .then_some(blocks)
}

/// Splits `part` along the interior bisector ray of vertex `s`.
fn split_part(part: &[BlockVertex], s: usize) -> Option<(Vec<BlockVertex>, Vec<BlockVertex>)> {
    let n = part.len();
    let i = part.iter().position(|v| v.vertex == Some(s))?;
    let (p, c, q) = (part[(i + n - 1) % n].point, part[i].point, part[(i + 1) % n].point);
    let d = ((p - c).normalize() + (q - c).normalize()).normalize();
    let mut best: Option<(f64, usize, f64)> = None;
    for e in 0..n {
        let (a, b) = (part[e].point, part[(e + 1) % n].point);
        if e == i || (e + 1) % n == i {
            continue;
        }
        let ab = b - a;
        let den = planar::cross2(&d, &ab);
        if den.abs() < 1e-15 {
            continue;
        }
        let t = planar::cross2(&(a - c), &ab) / den;
        let u = planar::cross2(&(a - c), &d) / den;
        if t > 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&u) && best.is_none_or(|(bt, _, _)| t < bt) {
            best = Some((t, e, u));
        }
    }
    let (_, e, u) = best?;
    // the target edge must touch the positive chain
    if part[e].sign <= 0 && part[(e + 1) % n].sign <= 0 {
        return None;
    }
    let mut cycle: Vec<BlockVertex> = part.to_vec();
    let j = if u < 1e-9 {
        e
    } else if u > 1.0 - 1e-9 {
        (e + 1) % n
    } else {
        let a = part[e].point;
        let point = a + (part[(e + 1) % n].point - a) * u;
        cycle.insert(
            e + 1,
            BlockVertex { vertex: None, point, sign: 0, inflection: false, synthetic: true },
        );
        e + 1
    };
    let i = cycle.iter().position(|v| v.vertex == Some(s))?;
    let m = cycle.len();
    let walk = |from: usize, to: usize| {
        let mut out = vec![cycle[from].clone()];
        let mut k = from;
        while k != to {
            k = (k + 1) % m;
            out.push(cycle[k].clone());
        }
        out
    };
    // part containing the earlier boundary positions first
    let (a, b) = (walk(j, i), walk(i, j));
    Some(if j < i { (a, b) } else { (b, a) })
}

/// Splits a mixed mesh face into building blocks.
pub fn decompose_mixed_face(mesh: &Mesh, f: usize) -> Result<Vec<BuildingBlock>, FaceError> {
    let table = face_vertex_analyses(mesh, f)?;
    let cs = corners(mesh, f, &table)?;
    let r = base_report(f, &cs);
    if r.n_plus == 0 || r.n_minus == 0 {
        return Err(FaceError::UniformSigns(f));
    }
    let [c1, _, c3, _] = r.c_counts;
    if r.sign_change_edges != 2 || r.n_minus as i64 - 2 != c3 as i64 - c1 as i64 {
        return Err(FaceError::NotDecomposable(f));
    }
    let plane = mesh.face_plane(f);
    let signs: Vec<i8> = cs.iter().map(Corner::sign).collect();
    let infl: Vec<bool> = cs.iter().map(|x| x.inflection).collect();
    let mut blocks = decompose_polygon(&plane.outline, &signs, &infl).ok_or(FaceError::NotDecomposable(f))?;
    for b in &mut blocks {
        for v in &mut b.vertices {
            v.vertex = v.vertex.map(|k| cs[k].vertex);
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Surface, Tiling};

    #[test]
    fn cube_face_is_convex_positive() {
        let m = fixtures::cube_corner();
        for f in 0..m.num_faces() {
            let r = classify_face_uniform(&m, f).unwrap();
            assert_eq!(r.class, FaceClass::ConvexPositive);
            assert!((r.oriented_angle_sum - TAU).abs() < 1e-12);
            assert!((r.geometric_angle_sum.unwrap() - TAU).abs() < 1e-9);
            assert_eq!(r.n_plus, 4);
        }
    }

    #[test]
    fn triangulated_saddle_faces() {
        let m = fixtures::graph_mesh(Surface::Saddle, Tiling::C, 8).unwrap();
        let mut seen = 0;
        for f in (0..m.num_faces()).filter(|&f| m.is_interior_face(f)) {
            let r = classify_face(&m, f).unwrap();
            if r.n_minus == 3 {
                assert_eq!(r.class, FaceClass::PseudoTriangleNegative2, "face {f}: {r:?}");
                assert_eq!(r.c_counts, [1, 2, 0, 0]);
                let segs = &r.asymptotic_segments;
                assert_eq!(segs.len(), 3);
                assert_eq!(segs.iter().filter(|s| s.counts_twice).count(), 1);
                seen += 1;
            }
        }
        assert!(seen > 20);
    }

    #[test]
    fn hexagonal_saddle_faces() {
        let m = fixtures::hex_graph_mesh(Surface::Saddle, 6).unwrap();
        let mut seen = 0;
        for f in (0..m.num_faces()).filter(|&f| m.is_interior_face(f)) {
            let r = classify_face(&m, f).unwrap();
            let n = r.vertices.len() as i64;
            let [c1, c2, c3, c4] = r.c_counts.map(|c| c as i64);
            assert_eq!(c1 - c3, 4 - n);
            assert_eq!(2 * c1 + c2 + c4, 4);
            assert_eq!(r.class, FaceClass::PseudoQuadNegative, "face {f}");
            assert_eq!(r.asymptotic_segments.len(), 4);
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn monkey_face() {
        let m = fixtures::monkey_star();
        let r = classify_face(&m, 0).unwrap();
        assert_eq!(r.class, FaceClass::MonkeySaddle(2));
        assert!((r.oriented_angle_sum - 2.0 * TAU).abs() < 1e-9);
    }

    #[test]
    fn boundary_face_rejected() {
        let m = fixtures::saddle_star(1.0);
        assert_eq!(classify_face(&m, 0), Err(FaceError::BoundaryFace(0)));
    }

    #[test]
    fn contact_point_of_spiral_is_none() {
        let plane = crate::mesh::fit_plane(&[
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(4.0, 0.0, 0.0),
            Vec3::new(4.0, 4.0, 0.0),
            Vec3::new(0.0, 4.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(3.0, 1.0, 0.0),
            Vec3::new(3.0, 3.0, 0.0),
            Vec3::new(1.0, 3.0, 0.0),
            Vec3::new(1.0, 2.0, 0.0),
            Vec3::new(2.0, 2.0, 0.0),
            Vec3::new(2.0, 1.5, 0.0),
            Vec3::new(0.0, 1.5, 0.0),
        ]);
        assert!(contact_point(&plane, true).is_none());
    }

    fn v2(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn block_is_returned_whole() {
        let outline = [v2(0.0, 0.0), v2(4.0, 0.0), v2(4.0, 3.0), v2(2.0, 2.0), v2(0.0, 3.0)];
        let blocks = decompose_polygon(&outline, &[1, 1, -1, -1, -1], &[false; 5]).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].nontrivial_pseudo_edges(), 1);
    }

    #[test]
    fn one_interior_corner_gives_two_blocks() {
        // positive base, negative top with a convex corner between two dents
        let outline = [
            v2(0.0, 0.0),
            v2(6.0, 0.0),
            v2(6.0, 4.0),
            v2(4.5, 3.0),
            v2(3.0, 4.0),
            v2(1.5, 3.0),
            v2(0.0, 4.0),
        ];
        let signs = [1, 1, -1, -1, -1, -1, -1];
        let blocks = decompose_polygon(&outline, &signs, &[false; 7]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.nontrivial_pseudo_edges() == 1));
        assert_eq!(blocks.iter().flat_map(|b| &b.vertices).filter(|v| v.synthetic).count(), 2);
    }

    #[test]
    fn two_interior_corners_give_three_blocks() {
        let outline = [
            v2(0.0, 0.0),
            v2(8.0, 0.0),
            v2(8.0, 4.0),
            v2(7.0, 3.0),
            v2(6.0, 4.0),
            v2(4.0, 3.0),
            v2(2.0, 4.0),
            v2(1.0, 3.0),
            v2(0.0, 4.0),
        ];
        let signs = [1, 1, -1, -1, -1, -1, -1, -1, -1];
        let mut infl = [false; 9];
        infl[4] = true;
        infl[6] = true;
        let blocks = decompose_polygon(&outline, &signs, &infl).unwrap();
        assert_eq!(blocks.len(), 3);
        let counts: Vec<usize> = blocks.iter().map(BuildingBlock::inflections).collect();
        assert_eq!(counts.iter().sum::<usize>(), 2);
        assert!(counts.iter().all(|c| c % 2 == 0));
    }
}
