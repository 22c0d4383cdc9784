//! Collineations of meshes and polar duals about an admissible center.
//!
//! A [`ProjectiveMap`] acts on homogeneous points `(x, y, z, 1)`. The polar
//! dual with respect to the unit sphere about `O` sends each face plane
//! `⟨m, x − O⟩ = 1` to the dual vertex `O + m`; the dual faces are the
//! cyclically ordered stars of the interior vertices.

use crate::curvature::{gaussian_curvature, inflection_flags};
use crate::geom::{tol, Vec3};
use crate::mesh::{Mesh, MeshError};
use crate::report::analyze;
use crate::sphere::{hemisphere_pole, GreatArc};
use nalgebra::{Matrix3, Matrix4, Vector4};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectiveError {
    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),
    #[error("expected 16 matrix entries, got {0}")]
    BadLength(usize),
    #[error("vertex {0} is mapped to (or across) the plane at infinity")]
    PointAtInfinity(usize),
    #[error("image mesh is degenerate: {0}")]
    DegenerateImage(MeshError),
    #[error("Gauss images do not fit in an open hemisphere")]
    NoHemisphere,
    #[error("no admissible center found along the search ray")]
    NoAdmissibleCenter,
    #[error("center lies on the plane of face {0}")]
    CenterOnFacePlane(usize),
    #[error("mesh has no interior vertex")]
    EmptyInterior,
    #[error("dual mesh does not correspond to the primal: {0}")]
    CorrespondenceMismatch(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Nondegenerate 4×4 collineation, serialized as 16 row-major reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProjectiveMap {
    m: Matrix4<f64>,
}

impl TryFrom<Vec<f64>> for ProjectiveMap {
    type Error = ProjectiveError;
    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Self::from_row_major(&v)
    }
}

impl From<ProjectiveMap> for Vec<f64> {
    fn from(p: ProjectiveMap) -> Self {
        p.to_row_major().to_vec()
    }
}

impl ProjectiveMap {
    pub fn new(m: Matrix4<f64>) -> Result<Self, ProjectiveError> {
        let d = m.determinant();
        if !d.is_finite() || d.abs() <= 1e-12 {
            return Err(ProjectiveError::Singular(d.abs()));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: Matrix4::identity() }
    }

    /// Affine map `x ↦ A x + b`.
    pub fn affine(a: Matrix3<f64>, b: Vec3) -> Result<Self, ProjectiveError> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&a);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&b);
        Self::new(m)
    }

    pub fn from_row_major(v: &[f64]) -> Result<Self, ProjectiveError> {
        if v.len() != 16 {
            return Err(ProjectiveError::BadLength(v.len()));
        }
        Self::new(Matrix4::from_row_slice(v))
    }

    pub fn to_row_major(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = self.m[(r, c)];
            }
        }
        out
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, ProjectiveError> {
        Self::new(self.m * other.m)
    }

    pub fn inverse(&self) -> Result<Self, ProjectiveError> {
        let inv = self.m.try_inverse().ok_or(ProjectiveError::Singular(0.0))?;
        Self::new(inv)
    }

    /// Homogeneous weight of the image of `p`.
    pub fn weight(&self, p: &Vec3) -> f64 {
        self.m[(3, 0)] * p.x + self.m[(3, 1)] * p.y + self.m[(3, 2)] * p.z + self.m[(3, 3)]
    }

    /// Image of a point; `None` on the plane at infinity.
    pub fn apply_point(&self, p: &Vec3) -> Option<Vec3> {
        let h = self.m * Vector4::new(p.x, p.y, p.z, 1.0);
        (h.w != 0.0).then(|| Vec3::new(h.x / h.w, h.y / h.w, h.z / h.w))
    }

    /// Differential of the map at `p` applied to `d`.
    pub fn map_direction(&self, p: &Vec3, d: &Vec3) -> Option<Vec3> {
        let w = self.weight(p);
        let y = self.apply_point(p)?;
        let a = self.m.fixed_view::<3, 3>(0, 0);
        let c = Vec3::new(self.m[(3, 0)], self.m[(3, 1)], self.m[(3, 2)]);
        Some((a * d - y * c.dot(d)) / w)
    }

    /// Image of the plane `n·x = c`, returned as a unit normal and offset.
    pub fn map_plane(&self, n: &Vec3, c: f64) -> Option<(Vec3, f64)> {
        let inv_t = self.m.try_inverse()?.transpose();
        let h = inv_t * Vector4::new(n.x, n.y, n.z, -c);
        let n2 = Vec3::new(h.x, h.y, h.z);
        let len = n2.norm();
        (len > 0.0).then(|| (n2 / len, -h.w / len))
    }

    /// Whether every vertex of `mesh` keeps a weight of one sign and
    /// magnitude above `1e-10 × scale`.
    pub fn keeps_finite(&self, mesh: &Mesh) -> bool {
        self.first_at_infinity(mesh).is_none()
    }

    fn first_at_infinity(&self, mesh: &Mesh) -> Option<usize> {
        let eps = tol::AT_INFINITY * mesh.scale();
        let mut sign = 0.0;
        for (v, p) in mesh.positions().iter().enumerate() {
            let w = self.weight(p);
            if !w.is_finite() || w.abs() <= eps || (sign != 0.0 && w.signum() != sign) {
                return Some(v);
            }
            sign = w.signum();
        }
        None
    }
}

/// `I + strength·U`, entries of `U` uniform in `[−1, 1]`.
pub fn random_collineation<R: Rng + ?Sized>(rng: &mut R, strength: f64) -> ProjectiveMap {
    loop {
        let u = Matrix4::from_fn(|_, _| rng.gen_range(-1.0..=1.0));
        if let Ok(p) = ProjectiveMap::new(Matrix4::identity() + u * strength) {
            return p;
        }
    }
}

/// Random collineation keeping every vertex of `mesh` finite, with all
/// weights at least `min_weight` in magnitude.
pub fn random_finite_collineation<R: Rng + ?Sized>(
    rng: &mut R,
    strength: f64,
    mesh: &Mesh,
    min_weight: f64,
) -> ProjectiveMap {
    loop {
        let p = random_collineation(rng, strength);
        let ws: Vec<f64> = mesh.positions().iter().map(|x| p.weight(x)).collect();
        let uniform = ws.iter().all(|w| *w >= min_weight) || ws.iter().all(|w| *w <= -min_weight);
        if uniform {
            return p;
        }
    }
}

/// Applies `map` to every vertex. Faces are reversed when the map reverses
/// orientation.
pub fn apply_projective(mesh: &Mesh, map: &ProjectiveMap) -> Result<Mesh, ProjectiveError> {
    if let Some(v) = map.first_at_infinity(mesh) {
        return Err(ProjectiveError::PointAtInfinity(v));
    }
    let positions: Vec<Vec3> = mesh
        .positions()
        .iter()
        .enumerate()
        .map(|(v, p)| map.apply_point(p).ok_or(ProjectiveError::PointAtInfinity(v)))
        .collect::<Result<_, _>>()?;
    let faces: Vec<Vec<usize>> = if map.determinant() < 0.0 {
        mesh.faces()
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.reverse();
                g.rotate_right(1);
                g
            })
            .collect()
    } else {
        mesh.faces().to_vec()
    };
    Mesh::new(positions, faces).map_err(ProjectiveError::DegenerateImage)
}

/// Unit Gauss-image samples of every interior vertex: face normals plus
/// [`tol::ARC_SAMPLES`] points per arc.
fn gauss_samples(mesh: &Mesh) -> Vec<(usize, Vec3)> {
    let mut out = Vec::new();
    for v in mesh.interior_vertices() {
        let Ok(star) = mesh.vertex_star(v) else { continue };
        let normals: Vec<Vec3> = star.ring().iter().map(|r| r.normal).collect();
        let n = normals.len();
        for i in 0..n {
            let (a, b) = (normals[i], normals[(i + 1) % n]);
            out.push((v, a));
            if let Some(arc) = GreatArc::new(a, b) {
                for k in 1..tol::ARC_SAMPLES {
                    out.push((v, arc.point_at(k as f64 / tol::ARC_SAMPLES as f64)));
                }
            }
        }
    }
    out
}

fn dualized_faces(mesh: &Mesh) -> Vec<usize> {
    (0..mesh.num_faces())
        .filter(|&f| mesh.face(f).iter().any(|&v| mesh.is_interior_vertex(v)))
        .collect()
}

fn face_anchor(mesh: &Mesh, f: usize) -> Vec3 {
    let pts = mesh.face_points(f);
    pts.iter().sum::<Vec3>() / pts.len() as f64
}

/// Whether `o` is strictly off every tangent-candidate plane (sampled) and
/// every dualized face plane, all on the same side.
pub fn is_admissible_center(mesh: &Mesh, o: &Vec3) -> bool {
    let m = tol::ADMISSIBLE_MARGIN;
    let samples = gauss_samples(mesh);
    let above = |p: &Vec3, n: &Vec3| {
        let d = p - o;
        let len = d.norm();
        len > 0.0 && d.dot(n) / len > m
    };
    samples.iter().all(|(v, n)| above(&mesh.position(*v), n))
        && dualized_faces(mesh).into_iter().all(|f| above(&face_anchor(mesh, f), &mesh.face_normal(f)))
}

/// Searches along the ray from a central interior face point in direction
/// `−n`, `n` the pole of a hemisphere holding every interior Gauss image,
/// doubling the distance from the mesh scale.
pub fn find_admissible_center(mesh: &Mesh) -> Result<Vec3, ProjectiveError> {
    let interior = mesh.interior_vertices();
    if interior.is_empty() {
        return Err(ProjectiveError::EmptyInterior);
    }
    let samples = gauss_samples(mesh);
    let pts: Vec<Vec3> = samples.iter().map(|(_, n)| *n).collect();
    let pole = hemisphere_pole(&pts).ok_or(ProjectiveError::NoHemisphere)?.into_inner();
    let centroid = interior.iter().map(|&v| mesh.position(v)).sum::<Vec3>() / interior.len() as f64;
    let faces = dualized_faces(mesh);
    let base = faces
        .iter()
        .map(|&f| face_anchor(mesh, f))
        .min_by(|a, b| (a - centroid).norm().total_cmp(&(b - centroid).norm()))
        .unwrap_or(centroid);
    let mut d = mesh.scale().max(1e-12);
    for _ in 0..64 {
        let o = base - pole * d;
        if is_admissible_center(mesh, &o) {
            return Ok(o);
        }
        d *= 2.0;
    }
    Err(ProjectiveError::NoAdmissibleCenter)
}

/// Polar dual of the interior patch with its index correspondences.
#[derive(Debug, Clone)]
pub struct DualMesh {
    pub mesh: Mesh,
    pub center: Vec3,
    /// Primal face of each dual vertex.
    pub face_of_dual_vertex: Vec<usize>,
    /// Primal interior vertex of each dual face.
    pub vertex_of_dual_face: Vec<usize>,
}

impl DualMesh {
    pub fn dual_vertex_of_face(&self, f: usize) -> Option<usize> {
        self.face_of_dual_vertex.iter().position(|&g| g == f)
    }

    pub fn dual_face_of_vertex(&self, v: usize) -> Option<usize> {
        self.vertex_of_dual_face.iter().position(|&u| u == v)
    }
}

fn polar_parts(mesh: &Mesh, o: &Vec3) -> Result<(Vec<Vec3>, Vec<Vec<usize>>, Vec<usize>, Vec<usize>), ProjectiveError> {
    let interior = mesh.interior_vertices();
    if interior.is_empty() {
        return Err(ProjectiveError::EmptyInterior);
    }
    let faces = dualized_faces(mesh);
    let eps = 1e-12 * mesh.scale().max(1.0);
    let mut index = HashMap::with_capacity(faces.len());
    let mut positions = Vec::with_capacity(faces.len());
    for (i, &f) in faces.iter().enumerate() {
        let n = mesh.face_normal(f);
        let d = n.dot(&(face_anchor(mesh, f) - o));
        if d.abs() <= eps {
            return Err(ProjectiveError::CenterOnFacePlane(f));
        }
        positions.push(o + n / d);
        index.insert(f, i);
    }
    let mut dual_faces = Vec::with_capacity(interior.len());
    for &v in &interior {
        let star = mesh.vertex_star(v)?;
        dual_faces.push(star.ring().iter().map(|r| index[&r.face]).collect());
    }
    Ok((positions, dual_faces, faces, interior))
}

/// Polar dual about `o`. Dual faces keep the ring order of their primal
/// vertex stars, so adjacent dual faces stay consistently oriented.
pub fn polar_dual(mesh: &Mesh, o: &Vec3) -> Result<DualMesh, ProjectiveError> {
    let (positions, faces, fv, vf) = polar_parts(mesh, o)?;
    let dual = Mesh::new(positions, faces).map_err(ProjectiveError::DegenerateImage)?;
    Ok(DualMesh { mesh: dual, center: *o, face_of_dual_vertex: fv, vertex_of_dual_face: vf })
}

/// Like [`polar_dual`] but without geometric validation.
pub fn polar_dual_unvalidated(mesh: &Mesh, o: &Vec3) -> Result<DualMesh, ProjectiveError> {
    let (positions, faces, fv, vf) = polar_parts(mesh, o)?;
    let dual = Mesh::unvalidated(positions, faces)?;
    Ok(DualMesh { mesh: dual, center: *o, face_of_dual_vertex: fv, vertex_of_dual_face: vf })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignMatch {
    /// Primal face, uniform in sign.
    pub face: usize,
    pub dual_vertex: usize,
    pub primal: i8,
    pub dual: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflectionMatch {
    pub vertex: usize,
    pub face: usize,
    pub primal: bool,
    pub dual: bool,
}

impl InflectionMatch {
    pub fn agrees(&self) -> bool {
        self.primal == self.dual
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub signs: Vec<SignMatch>,
    pub inflections: Vec<InflectionMatch>,
    /// Largest angle (radians) between a dual face normal and the central
    /// projection `±(v − O)/|v − O|` of its primal vertex.
    pub gauss_deviation: f64,
    /// Largest distance between a primal interior vertex and its double dual.
    pub double_dual_deviation: Option<f64>,
    pub primal_smooth: bool,
    pub dual_smooth: bool,
}

impl DualityReport {
    pub fn signs_match(&self) -> bool {
        self.signs.iter().all(|s| s.primal == s.dual)
    }

    pub fn inflections_match(&self) -> bool {
        self.inflections.iter().all(InflectionMatch::agrees)
    }

    pub fn mismatches(&self) -> usize {
        self.signs.iter().filter(|s| s.primal != s.dual).count()
            + self.inflections.iter().filter(|i| !i.agrees()).count()
    }

    /// All checks pass with deviations below `eps`.
    pub fn is_consistent(&self, eps: f64) -> bool {
        self.signs_match()
            && self.inflections_match()
            && self.gauss_deviation < eps
            && self.double_dual_deviation.is_none_or(|d| d < eps)
            && self.primal_smooth == self.dual_smooth
    }
}

fn k_sign(k: f64) -> i8 {
    if k.abs() <= tol::ZERO_K {
        0
    } else if k > 0.0 {
        1
    } else {
        -1
    }
}

pub fn check_duality(primal: &Mesh, dual: &DualMesh) -> Result<DualityReport, ProjectiveError> {
    let dm = &dual.mesh;
    let o = dual.center;
    if dm.num_vertices() != dual.face_of_dual_vertex.len() || dm.num_faces() != dual.vertex_of_dual_face.len() {
        return Err(ProjectiveError::CorrespondenceMismatch("index tables do not match the dual mesh".into()));
    }
    let mut primal_k: HashMap<usize, f64> = HashMap::new();
    for v in primal.interior_vertices() {
        primal_k.insert(v, gaussian_curvature(&primal.vertex_star(v)?));
    }

    let mut signs = Vec::new();
    let mut inflections = Vec::new();
    for (dv, &f) in dual.face_of_dual_vertex.iter().enumerate() {
        if !dm.is_interior_vertex(dv) {
            continue;
        }
        let dstar = dm.vertex_star(dv)?;
        let face_signs: Vec<i8> = primal.face(f).iter().map(|v| primal_k.get(v).map_or(0, |k| k_sign(*k))).collect();
        if face_signs.iter().all(|s| *s == face_signs[0]) && face_signs[0] != 0 {
            signs.push(SignMatch { face: f, dual_vertex: dv, primal: face_signs[0], dual: k_sign(gaussian_curvature(&dstar)) });
        }
        let dflags = inflection_flags(&dstar).map_err(|e| ProjectiveError::CorrespondenceMismatch(e.to_string()))?;
        for &v in primal.face(f) {
            let pstar = primal.vertex_star(v)?;
            let pflags = inflection_flags(&pstar).map_err(|e| ProjectiveError::CorrespondenceMismatch(e.to_string()))?;
            let pi = pstar
                .position_of(f)
                .ok_or_else(|| ProjectiveError::CorrespondenceMismatch(format!("face {f} not in star of {v}")))?;
            let df = dual
                .dual_face_of_vertex(v)
                .ok_or_else(|| ProjectiveError::CorrespondenceMismatch(format!("no dual face for vertex {v}")))?;
            let di = dstar
                .position_of(df)
                .ok_or_else(|| ProjectiveError::CorrespondenceMismatch(format!("dual face {df} not at dual vertex {dv}")))?;
            inflections.push(InflectionMatch { vertex: v, face: f, primal: pflags[pi], dual: dflags[di] });
        }
    }

    let mut gauss_deviation: f64 = 0.0;
    for (df, &v) in dual.vertex_of_dual_face.iter().enumerate() {
        let expect = (primal.position(v) - o).normalize();
        let n = dm.face_normal(df);
        let c = n.dot(&expect).abs().min(1.0);
        gauss_deviation = gauss_deviation.max(n.cross(&expect).norm().atan2(c));
    }

    let double_dual_deviation = match polar_dual_unvalidated(dm, &o) {
        Ok(dd) => {
            let mut worst: f64 = 0.0;
            for (i, &df) in dd.face_of_dual_vertex.iter().enumerate() {
                if dd.mesh.is_interior_vertex(i) || dm.is_interior_face(df) {
                    let v = dual.vertex_of_dual_face[df];
                    worst = worst.max((dd.mesh.position(i) - primal.position(v)).norm());
                }
            }
            Some(worst)
        }
        Err(ProjectiveError::EmptyInterior) => None,
        Err(e) => return Err(e),
    };

    Ok(DualityReport {
        signs,
        inflections,
        gauss_deviation,
        double_dual_deviation,
        primal_smooth: analyze(primal).smooth,
        dual_smooth: analyze(dm).smooth,
    })
}
