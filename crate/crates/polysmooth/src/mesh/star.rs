use crate::geom::{ccw_angle, reject, Vec3};

/// One face of a vertex star, seen from the star's center.
///
/// `polygon` and `ids` list the face cycle starting at the center, so
/// `polygon[1]` is the next vertex and `polygon[n-1]` the previous one.
#[derive(Debug, Clone)]
pub struct RingFace {
    pub face: usize,
    pub ids: Vec<usize>,
    pub polygon: Vec<Vec3>,
    pub normal: Vec3,
    /// Interior angle at the center, in `(0, 2π)`.
    pub alpha: f64,
    /// Unit edge direction toward the next face vertex (shared with the previous ring face).
    pub to_next: Vec3,
    /// Unit edge direction toward the previous face vertex (shared with the next ring face).
    pub to_prev: Vec3,
}

impl RingFace {
    pub fn new(face: usize, polygon: Vec<Vec3>, ids: Vec<usize>, normal: Vec3) -> Self {
        let n = polygon.len();
        let c = polygon[0];
        let to_next = reject(&(polygon[1] - c), &normal).normalize();
        let to_prev = reject(&(polygon[n - 1] - c), &normal).normalize();
        let alpha = ccw_angle(&to_next, &to_prev, &normal);
        Self { face, ids, polygon, normal, alpha, to_next, to_prev }
    }

    pub fn is_reflex(&self) -> bool {
        self.alpha > std::f64::consts::PI
    }
}

/// Interior vertex together with its incident faces in counter-clockwise order.
#[derive(Debug, Clone)]
pub struct VertexStar {
    vertex: usize,
    center: Vec3,
    ring: Vec<RingFace>,
}

impl VertexStar {
    pub fn new(vertex: usize, center: Vec3, ring: Vec<RingFace>) -> Self {
        Self { vertex, center, ring }
    }

    pub fn vertex(&self) -> usize {
        self.vertex
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn ring(&self) -> &[RingFace] {
        &self.ring
    }

    pub fn valence(&self) -> usize {
        self.ring.len()
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.ring.len() - 1) % self.ring.len()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.ring.len()
    }

    /// Ring position of a mesh face id.
    pub fn position_of(&self, face: usize) -> Option<usize> {
        self.ring.iter().position(|r| r.face == face)
    }

    pub fn normals(&self) -> Vec<Vec3> {
        self.ring.iter().map(|r| r.normal).collect()
    }

    /// Length of the shortest edge incident to the center.
    pub fn min_edge_length(&self) -> f64 {
        self.ring
            .iter()
            .map(|r| (r.polygon[1] - self.center).norm())
            .fold(f64::INFINITY, f64::min)
    }
}
