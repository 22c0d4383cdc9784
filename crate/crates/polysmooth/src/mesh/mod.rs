//! Oriented polygonal surfaces with halfedge connectivity.
//!
//! Faces are stored as index cycles whose winding defines the orientation.
//! Construction validates the manifold structure and the geometric
//! assumptions of the theory: planar faces, no coplanar neighbours and no
//! straight corner angles.

mod io;
mod star;

pub use io::{export_mesh, load_mesh, load_mesh_file, load_mesh_with, save_mesh_file, MeshFormat};
pub use star::{RingFace, VertexStar};

use crate::geom::{bbox_diagonal, ccw_angle, reject, tol, Vec2, Vec3};
use crate::planar;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum TopologyIssue {
    FaceTooSmall { face: usize },
    RepeatedVertex { face: usize, vertex: usize },
    IndexOutOfRange { face: usize, index: usize },
    NonManifoldEdge { a: usize, b: usize },
    InconsistentWinding { a: usize, b: usize },
    NonManifoldVertex { vertex: usize },
}

impl fmt::Display for TopologyIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FaceTooSmall { face } => write!(f, "face {face} has fewer than 3 vertices"),
            Self::RepeatedVertex { face, vertex } => {
                write!(f, "face {face} visits vertex {vertex} twice")
            }
            Self::IndexOutOfRange { face, index } => {
                write!(f, "face {face} references missing vertex {index}")
            }
            Self::NonManifoldEdge { a, b } => write!(f, "edge ({a},{b}) has more than two faces"),
            Self::InconsistentWinding { a, b } => {
                write!(f, "edge ({a},{b}) is traversed twice in the same direction")
            }
            Self::NonManifoldVertex { vertex } => {
                write!(f, "faces around vertex {vertex} do not form a single fan")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryIssue {
    DegenerateFace { face: usize },
    NonPlanarFace { face: usize, residual: f64 },
    NonSimpleFace { face: usize },
    StraightAngle { face: usize, vertex: usize },
    CoplanarAdjacent { f: usize, g: usize },
    Straddle { face: usize, neighbor: usize },
}

impl fmt::Display for GeometryIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DegenerateFace { face } => write!(f, "face {face} has zero area or a zero-length edge"),
            Self::NonPlanarFace { face, residual } => {
                write!(f, "face {face} is not planar (residual {residual:e})")
            }
            Self::NonSimpleFace { face } => write!(f, "face {face} is a self-intersecting polygon"),
            Self::StraightAngle { face, vertex } => {
                write!(f, "face {face} has a straight angle at vertex {vertex}")
            }
            Self::CoplanarAdjacent { f: a, g } => write!(f, "adjacent faces {a} and {g} are coplanar"),
            Self::Straddle { face, neighbor } => {
                write!(f, "face {neighbor} has no definite side of the plane of face {face}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("topology error: {0}")]
    Topology(TopologyIssue),
    #[error("geometry error: {0}")]
    Geometry(GeometryIssue),
    #[error("vertex {0} lies on the boundary")]
    BoundaryVertex(usize),
    #[error("vertex {0} does not have a manifold star")]
    NonManifoldStar(usize),
    #[error("no vertex {0}")]
    NoSuchVertex(usize),
    #[error("no face {0}")]
    NoSuchFace(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Validation thresholds. The defaults follow [`crate::geom::tol`].
#[derive(Debug, Clone, Copy)]
pub struct MeshOptions {
    /// Planarity tolerance relative to the bounding-box diagonal.
    pub planar_rel: f64,
    pub coplanar: f64,
    pub angle: f64,
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self { planar_rel: tol::PLANAR_REL, coplanar: tol::COPLANAR, angle: tol::ANGLE }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub face: usize,
    pub next: usize,
    pub prev: usize,
    pub twin: Option<usize>,
}

/// Plane fitted to a face together with the face's 2D outline in that plane.
#[derive(Debug, Clone)]
pub struct FacePlane {
    pub point: Vec3,
    pub normal: Vec3,
    /// Orthonormal in-plane axes with `u × v = normal`.
    pub u: Vec3,
    pub v: Vec3,
    /// Counter-clockwise 2D outline (same vertex order as the face).
    pub outline: Vec<Vec2>,
    pub residual: f64,
}

impl FacePlane {
    pub fn to_2d(&self, p: &Vec3) -> Vec2 {
        let d = p - self.point;
        Vec2::new(d.dot(&self.u), d.dot(&self.v))
    }

    pub fn to_3d(&self, q: &Vec2) -> Vec3 {
        self.point + self.u * q.x + self.v * q.y
    }
}

#[derive(Debug, Clone)]
pub struct Mesh {
    positions: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    halfedges: Vec<HalfEdge>,
    face_start: Vec<usize>,
    vertex_out: Vec<Option<usize>>,
    boundary: Vec<bool>,
    normals: Vec<Vec3>,
    scale: f64,
}

impl Mesh {
    /// Builds and fully validates a mesh with default tolerances.
    pub fn new(positions: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        Self::with_options(positions, faces, &MeshOptions::default())
    }

    pub fn with_options(
        positions: Vec<Vec3>,
        faces: Vec<Vec<usize>>,
        opts: &MeshOptions,
    ) -> Result<Self, MeshError> {
        let m = Self::unvalidated(positions, faces)?;
        m.validate_geometry(opts)?;
        Ok(m)
    }

    /// Builds connectivity and checks topology only. Geometry may violate the
    /// usual assumptions; useful for perturbation experiments.
    pub fn unvalidated(positions: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        let nv = positions.len();
        let mut halfedges = Vec::new();
        let mut face_start = Vec::with_capacity(faces.len());
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(MeshError::Topology(TopologyIssue::FaceTooSmall { face: fi }));
            }
            for (k, &v) in face.iter().enumerate() {
                if v >= nv {
                    return Err(MeshError::Topology(TopologyIssue::IndexOutOfRange { face: fi, index: v }));
                }
                if face[..k].contains(&v) {
                    return Err(MeshError::Topology(TopologyIssue::RepeatedVertex { face: fi, vertex: v }));
                }
            }
            let start = halfedges.len();
            face_start.push(start);
            let n = face.len();
            for k in 0..n {
                halfedges.push(HalfEdge {
                    origin: face[k],
                    face: fi,
                    next: start + (k + 1) % n,
                    prev: start + (k + n - 1) % n,
                    twin: None,
                });
            }
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        let mut undirected: HashMap<(usize, usize), usize> = HashMap::new();
        for (h, he) in halfedges.iter().enumerate() {
            let a = he.origin;
            let b = halfedges[he.next].origin;
            let key = (a.min(b), a.max(b));
            let c = undirected.entry(key).or_insert(0);
            *c += 1;
            if *c > 2 {
                return Err(MeshError::Topology(TopologyIssue::NonManifoldEdge { a: key.0, b: key.1 }));
            }
            if directed.insert((a, b), h).is_some() {
                return Err(MeshError::Topology(TopologyIssue::InconsistentWinding { a, b }));
            }
        }
        for h in 0..halfedges.len() {
            let a = halfedges[h].origin;
            let b = halfedges[halfedges[h].next].origin;
            halfedges[h].twin = directed.get(&(b, a)).copied();
        }
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (h, he) in halfedges.iter().enumerate() {
            outgoing[he.origin].push(h);
        }
        let mut vertex_out = vec![None; nv];
        let mut boundary = vec![false; nv];
        for v in 0..nv {
            let outs = &outgoing[v];
            if outs.is_empty() {
                continue;
            }
            // a boundary fan starts at the outgoing halfedge without a twin
            let first = outs.iter().copied().find(|&h| halfedges[h].twin.is_none());
            let is_boundary = first.is_some()
                || outs.iter().any(|&h| halfedges[halfedges[h].prev].twin.is_none());
            let start = first.unwrap_or(outs[0]);
            let mut count = 0;
            let mut h = start;
            loop {
                count += 1;
                match halfedges[halfedges[h].prev].twin {
                    Some(t) if t != start => h = t,
                    _ => break,
                }
                if count > outs.len() {
                    break;
                }
            }
            if count != outs.len() {
                return Err(MeshError::Topology(TopologyIssue::NonManifoldVertex { vertex: v }));
            }
            vertex_out[v] = Some(start);
            boundary[v] = is_boundary;
        }
        let normals = faces
            .iter()
            .map(|f| {
                let n = newell(&f.iter().map(|&i| positions[i]).collect::<Vec<_>>());
                let len = n.norm();
                if len > 0.0 {
                    n / len
                } else {
                    n
                }
            })
            .collect();
        let scale = bbox_diagonal(&positions);
        Ok(Self { positions, faces, halfedges, face_start, vertex_out, boundary, normals, scale })
    }

    fn validate_geometry(&self, opts: &MeshOptions) -> Result<(), MeshError> {
        let eps_planar = opts.planar_rel * self.scale;
        let eps_len = 1e-14 * self.scale.max(1e-300);
        for f in 0..self.faces.len() {
            let pts = self.face_points(f);
            let n = pts.len();
            let raw = newell(&pts);
            if raw.norm() <= eps_len * eps_len || (0..n).any(|k| (pts[(k + 1) % n] - pts[k]).norm() <= eps_len) {
                return Err(MeshError::Geometry(GeometryIssue::DegenerateFace { face: f }));
            }
            let plane = self.face_plane(f);
            if plane.residual > eps_planar {
                return Err(MeshError::Geometry(GeometryIssue::NonPlanarFace {
                    face: f,
                    residual: plane.residual,
                }));
            }
            if n > 3 && !planar::is_simple(&plane.outline, 1e-12 * self.scale) {
                return Err(MeshError::Geometry(GeometryIssue::NonSimpleFace { face: f }));
            }
            for k in 0..n {
                let a = self.corner_angle(f, k);
                if (a - std::f64::consts::PI).abs() < opts.angle {
                    return Err(MeshError::Geometry(GeometryIssue::StraightAngle {
                        face: f,
                        vertex: self.faces[f][k],
                    }));
                }
            }
        }
        for he in &self.halfedges {
            if let Some(t) = he.twin {
                let g = self.halfedges[t].face;
                if he.face < g {
                    let ang = crate::geom::angle_between(&self.normals[he.face], &self.normals[g]);
                    if ang < opts.coplanar || ang > std::f64::consts::PI - opts.coplanar {
                        return Err(MeshError::Geometry(GeometryIssue::CoplanarAdjacent { f: he.face, g }));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.positions[v]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn halfedges(&self) -> &[HalfEdge] {
        &self.halfedges
    }

    /// Bounding-box diagonal.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Unit face normal (Newell), oriented by the face winding.
    pub fn face_normal(&self, f: usize) -> Vec3 {
        self.normals[f]
    }

    pub fn face_points(&self, f: usize) -> Vec<Vec3> {
        self.faces[f].iter().map(|&i| self.positions[i]).collect()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary[v]
    }

    /// Interior vertices have a closed fan of faces.
    pub fn is_interior_vertex(&self, v: usize) -> bool {
        self.vertex_out[v].is_some() && !self.boundary[v]
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.is_interior_vertex(v)).collect()
    }

    /// Faces all of whose vertices are interior.
    pub fn is_interior_face(&self, f: usize) -> bool {
        self.faces[f].iter().all(|&v| self.is_interior_vertex(v))
    }

    pub fn is_closed(&self) -> bool {
        self.halfedges.iter().all(|h| h.twin.is_some())
    }

    pub fn edge_count(&self) -> usize {
        let twins = self.halfedges.iter().filter(|h| h.twin.is_some()).count();
        twins / 2 + (self.halfedges.len() - twins)
    }

    /// Halfedge of face `f` leaving its `k`-th vertex.
    pub fn face_halfedge(&self, f: usize, k: usize) -> usize {
        self.face_start[f] + k
    }

    /// Face across the edge from the `k`-th to the `(k+1)`-th vertex of `f`.
    pub fn adjacent_face(&self, f: usize, k: usize) -> Option<usize> {
        self.halfedges[self.face_halfedge(f, k)].twin.map(|t| self.halfedges[t].face)
    }

    /// Interior angle of face `f` at its `k`-th vertex, in `(0, 2π)`.
    pub fn corner_angle(&self, f: usize, k: usize) -> f64 {
        let face = &self.faces[f];
        let n = face.len();
        let p = self.positions[face[k]];
        let next = self.positions[face[(k + 1) % n]];
        let prev = self.positions[face[(k + n - 1) % n]];
        let nf = self.normals[f];
        ccw_angle(&reject(&(next - p), &nf), &reject(&(prev - p), &nf), &nf)
    }

    /// Local index of vertex `v` in face `f`.
    pub fn local_index(&self, f: usize, v: usize) -> Option<usize> {
        self.faces[f].iter().position(|&w| w == v)
    }

    /// Least-squares plane through the face vertices with the normal oriented
    /// by the face winding, and the face outline in that plane.
    pub fn face_plane(&self, f: usize) -> FacePlane {
        fit_plane(&self.face_points(f))
    }

    /// Outgoing halfedges of `v` in counter-clockwise order. For boundary
    /// vertices the fan starts at the boundary edge.
    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(start) = self.vertex_out[v] else {
            return out;
        };
        let mut h = start;
        loop {
            out.push(h);
            match self.halfedges[self.halfedges[h].prev].twin {
                Some(t) if t != start => h = t,
                _ => break,
            }
        }
        out
    }

    /// Faces incident to `v`, counter-clockwise.
    pub fn vertex_faces(&self, v: usize) -> Vec<usize> {
        self.outgoing(v).into_iter().map(|h| self.halfedges[h].face).collect()
    }

    pub fn vertex_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for h in self.outgoing(v) {
            let he = self.halfedges[h];
            let q = self.halfedges[he.next].origin;
            let p = self.halfedges[he.prev].origin;
            for w in [q, p] {
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Oriented vertex star of an interior vertex.
    pub fn vertex_star(&self, v: usize) -> Result<VertexStar, MeshError> {
        if v >= self.num_vertices() {
            return Err(MeshError::NoSuchVertex(v));
        }
        if self.vertex_out[v].is_none() {
            return Err(MeshError::NonManifoldStar(v));
        }
        if self.boundary[v] {
            return Err(MeshError::BoundaryVertex(v));
        }
        let ring = self
            .outgoing(v)
            .into_iter()
            .map(|h| {
                let he = self.halfedges[h];
                let f = he.face;
                let k = h - self.face_start[f];
                let face = &self.faces[f];
                let n = face.len();
                let ids: Vec<usize> = (0..n).map(|j| face[(k + j) % n]).collect();
                RingFace::new(f, ids.iter().map(|&i| self.positions[i]).collect(), ids, self.normals[f])
            })
            .collect();
        Ok(VertexStar::new(v, self.positions[v], ring))
    }

    /// Returns a copy with every face cycle reversed.
    pub fn flipped(&self) -> Result<Mesh, MeshError> {
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.reverse();
                // keep the first vertex first
                g.rotate_right(1);
                g
            })
            .collect();
        Mesh::unvalidated(self.positions.clone(), faces)
    }

    /// Applies `map` to all positions and revalidates.
    pub fn map_positions(&self, map: impl Fn(&Vec3) -> Vec3) -> Result<Mesh, MeshError> {
        Mesh::new(self.positions.iter().map(map).collect(), self.faces.clone())
    }
}

/// Newell's area vector of a polygon (twice the vector area).
pub fn newell(pts: &[Vec3]) -> Vec3 {
    let n = pts.len();
    let c = pts.iter().fold(Vec3::zeros(), |s, p| s + p) / n.max(1) as f64;
    let mut acc = Vec3::zeros();
    for i in 0..n {
        acc += (pts[i] - c).cross(&(pts[(i + 1) % n] - c));
    }
    acc
}

/// Least-squares plane of a point cycle; the normal follows the cycle's winding.
pub fn fit_plane(pts: &[Vec3]) -> FacePlane {
    let n = pts.len() as f64;
    let c = pts.iter().fold(Vec3::zeros(), |s, p| s + p) / n;
    let oriented = newell(pts);
    let normal = if pts.len() == 3 {
        oriented.normalize()
    } else {
        let mut cov = nalgebra::Matrix3::<f64>::zeros();
        for p in pts {
            let d = p - c;
            cov += d * d.transpose();
        }
        let eig = nalgebra::SymmetricEigen::new(cov);
        let (imin, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("3 eigenvalues");
        let mut nrm: Vec3 = eig.eigenvectors.column(imin).into_owned();
        nrm.normalize_mut();
        if nrm.dot(&oriented) < 0.0 {
            nrm = -nrm;
        }
        // snap to the exact normal when the face is planar to roundoff
        let exact = oriented.normalize();
        if (nrm - exact).norm() < 1e-9 {
            exact
        } else {
            nrm
        }
    };
    let (u, v) = crate::geom::tangent_basis(&normal);
    let residual = pts.iter().map(|p| (p - c).dot(&normal).abs()).fold(0.0, f64::max);
    let outline = pts
        .iter()
        .map(|p| {
            let d = p - c;
            Vec2::new(d.dot(&u), d.dot(&v))
        })
        .collect();
    FacePlane { point: c, normal, u, v, outline, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cube() -> Mesh {
        let p = (0..8)
            .map(|i| Vec3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
            .collect();
        let f = vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ];
        Mesh::new(p, f).unwrap()
    }

    #[test]
    fn cube_is_closed_with_right_angles() {
        let m = cube();
        assert!(m.is_closed());
        assert_eq!(m.edge_count(), 12);
        for v in 0..8 {
            let s = m.vertex_star(v).unwrap();
            assert_eq!(s.valence(), 3);
            for r in s.ring() {
                assert!((r.alpha - PI / 2.0).abs() < 1e-15);
            }
        }
        // outward normals
        for f in 0..6 {
            let c = m.face_points(f).iter().fold(Vec3::zeros(), |s, p| s + p) / 4.0;
            assert!(m.face_normal(f).dot(&(c - Vec3::repeat(0.5))) > 0.0);
        }
    }

    #[test]
    fn single_triangle_is_all_boundary() {
        let m = Mesh::new(vec![Vec3::zeros(), Vec3::x(), Vec3::y()], vec![vec![0, 1, 2]]).unwrap();
        assert!((0..3).all(|v| m.is_boundary_vertex(v)));
        assert_eq!(m.vertex_star(0).unwrap_err(), MeshError::BoundaryVertex(0));
    }

    #[test]
    fn three_faces_on_an_edge_rejected() {
        let p = vec![Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::z(), -Vec3::y()];
        let f = vec![vec![0, 1, 2], vec![1, 0, 3], vec![0, 1, 4]];
        assert!(matches!(Mesh::new(p, f), Err(MeshError::Topology(_))));
    }

    #[test]
    fn inconsistent_winding_rejected() {
        let p = vec![Vec3::zeros(), Vec3::x(), Vec3::y(), -Vec3::y() + Vec3::z()];
        let f = vec![vec![0, 1, 2], vec![0, 1, 3]];
        assert!(matches!(
            Mesh::new(p, f),
            Err(MeshError::Topology(TopologyIssue::InconsistentWinding { .. }))
        ));
    }

    #[test]
    fn nonplanar_face_rejected_but_tolerance_adjustable() {
        let p = vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.31, 0.95, 1e-6),
            Vec3::new(-0.81, 0.59, 0.0),
            Vec3::new(-0.81, -0.59, 0.0),
            Vec3::new(0.31, -0.95, 0.0),
        ];
        let f = vec![vec![0, 1, 2, 3, 4]];
        assert!(matches!(
            Mesh::new(p.clone(), f.clone()),
            Err(MeshError::Geometry(GeometryIssue::NonPlanarFace { .. }))
        ));
        let opts = MeshOptions { planar_rel: 1e-4, ..Default::default() };
        let m = Mesh::with_options(p, f, &opts).unwrap();
        let r = m.face_plane(0).residual;
        assert!(r > 1e-8 && r < 1e-6);
    }

    #[test]
    fn straight_angle_rejected() {
        let p = vec![Vec3::zeros(), Vec3::x(), Vec3::new(2.0, 0.0, 0.0), Vec3::y()];
        let f = vec![vec![0, 1, 2, 3]];
        assert!(matches!(
            Mesh::new(p, f),
            Err(MeshError::Geometry(GeometryIssue::StraightAngle { .. }))
        ));
    }

    #[test]
    fn coplanar_neighbours_rejected() {
        let p = vec![Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::new(1.0, 1.0, 0.0)];
        let f = vec![vec![0, 1, 2], vec![1, 3, 2]];
        assert!(matches!(
            Mesh::new(p, f),
            Err(MeshError::Geometry(GeometryIssue::CoplanarAdjacent { .. }))
        ));
    }

    #[test]
    fn face_plane_of_square() {
        let m = cube();
        let fp = m.face_plane(0);
        assert!((fp.normal + Vec3::z()).norm() < 1e-15);
        assert!(crate::planar::signed_area(&fp.outline) > 0.0);
        assert!(fp.residual < 1e-15);
    }
}
