//! Spherical polygons: great arcs, interior angles, signed areas, winding
//! numbers, simplicity, hemisphere containment and star-shape kernels.
//!
//! Polygon vertices are unit vectors joined by the shorter great-circle arc.
//! The "left" angle at a vertex is the counter-clockwise angle from the arc
//! leaving the vertex to the arc arriving at it, i.e. the interior angle of a
//! counter-clockwise polygon.

mod cap;
mod kernel;

pub use cap::{hemisphere_pole, min_enclosing_cap, Cap};
pub use kernel::{star_shape_kernel, SphericalRegionKernel};

use crate::geom::{ccw_angle, reject, tangent_basis, tol, wrap_pi, UnitDir3, Vec2, Vec3, TAU};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("polygon needs at least {0} vertices")]
    TooFewVertices(usize),
    #[error("arc {0} joins equal or antipodal points")]
    DegenerateArc(usize),
    #[error("polygon is not simple (arcs {0} and {1} cross)")]
    NotSimple(usize, usize),
    #[error("vertex {0} has a zero or full angle")]
    DegenerateAngle(usize),
    #[error("query point lies on the polygon")]
    PointOnBoundary,
    #[error("polygon is not contained in an open hemisphere")]
    NotHemispherical,
}

/// Shorter great-circle arc between two non-antipodal, distinct unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatArc {
    pub a: Vec3,
    pub b: Vec3,
}

impl GreatArc {
    pub fn new(a: Vec3, b: Vec3) -> Option<Self> {
        if a.cross(&b).norm() <= tol::ARC {
            None
        } else {
            Some(Self { a, b })
        }
    }

    /// Unit normal of the carrying great circle, oriented `a → b`.
    pub fn pole(&self) -> Vec3 {
        self.a.cross(&self.b).normalize()
    }

    pub fn length(&self) -> f64 {
        crate::geom::angle_between(&self.a, &self.b)
    }

    /// Point at parameter `t ∈ [0,1]` (slerp).
    pub fn point_at(&self, t: f64) -> Vec3 {
        let th = self.length();
        let s = th.sin();
        (self.a * ((1.0 - t) * th).sin() / s + self.b * (t * th).sin() / s).normalize()
    }

    /// Sine parameters of `x` measured from the endpoints along the arc. Both
    /// positive means `x` lies strictly inside (when `x` is on the circle).
    fn params(&self, x: &Vec3, c: &Vec3) -> (f64, f64) {
        (c.dot(&self.a.cross(x)), c.dot(&x.cross(&self.b)))
    }

    /// Angular distance of a unit vector from the arc.
    pub fn distance(&self, x: &Vec3) -> f64 {
        let c = self.pole();
        let (s1, s2) = self.params(x, &c);
        let off = c.dot(x).clamp(-1.0, 1.0).asin().abs();
        let foot = reject(x, &c);
        if s1 >= 0.0 && s2 >= 0.0 && foot.norm() > 0.0 && foot.dot(&(self.a + self.b)) > 0.0 {
            off
        } else {
            crate::geom::angle_between(x, &self.a).min(crate::geom::angle_between(x, &self.b))
        }
    }
}

/// Relation between two arcs found by [`arc_intersection`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcRelation {
    Disjoint,
    /// Interiors cross (or overlap along a common great circle).
    Cross,
    /// The arcs meet within tolerance at an endpoint only.
    Touch,
}

/// Intersects two shorter arcs via the cross product of their circle poles.
pub fn arc_intersection(p: &GreatArc, q: &GreatArc) -> ArcRelation {
    let c1 = p.pole();
    let c2 = q.pole();
    let line = c1.cross(&c2);
    if line.norm() <= tol::ARC {
        return collinear_relation(p, q, &c1);
    }
    let x = line.normalize();
    let mut rel = ArcRelation::Disjoint;
    for cand in [x, -x] {
        let (s1, s2) = p.params(&cand, &c1);
        let (t1, t2) = q.params(&cand, &c2);
        let all = [s1, s2, t1, t2];
        if all.iter().all(|&s| s > tol::ARC) {
            return ArcRelation::Cross;
        }
        if all.iter().all(|&s| s >= -tol::ARC) {
            rel = ArcRelation::Touch;
        }
    }
    rel
}

fn collinear_relation(p: &GreatArc, q: &GreatArc, c: &Vec3) -> ArcRelation {
    let ang = |x: &Vec3| c.dot(&p.a.cross(x)).atan2(p.a.dot(x));
    let pb = ang(&p.b);
    let qa = ang(&q.a);
    let qb = qa + wrap_pi(ang(&q.b) - qa);
    let (lo, hi) = if qa <= qb { (qa, qb) } else { (qb, qa) };
    let mut best = f64::NEG_INFINITY;
    for shift in [-TAU, 0.0, TAU] {
        let overlap = pb.min(hi + shift) - 0f64.max(lo + shift);
        best = best.max(overlap);
    }
    if best > tol::ARC {
        ArcRelation::Cross
    } else if best >= -tol::ARC {
        ArcRelation::Touch
    } else {
        ArcRelation::Disjoint
    }
}

/// Outcome of the pairwise simplicity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// First crossing arc pair `(i, j)` found, arcs indexed by their start vertex.
    pub crossing: Option<(usize, usize)>,
    /// Some pair of arcs touches within tolerance; treated as non-crossing.
    pub degenerate: bool,
}

/// Closed polygon on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<Vec3>,
}

impl SphericalPolygon {
    /// Normalizes the given directions; consecutive vertices must be distinct
    /// and non-antipodal.
    pub fn new(dirs: Vec<Vec3>) -> Result<Self, SphereError> {
        if dirs.len() < 2 {
            return Err(SphereError::TooFewVertices(2));
        }
        let vertices: Vec<Vec3> = dirs.into_iter().map(|d| d.normalize()).collect();
        let n = vertices.len();
        for i in 0..n {
            if GreatArc::new(vertices[i], vertices[(i + 1) % n]).is_none() {
                return Err(SphereError::DegenerateArc(i));
            }
        }
        Ok(Self { vertices })
    }

    pub fn from_units(dirs: &[UnitDir3]) -> Result<Self, SphereError> {
        Self::new(dirs.iter().map(|u| u.into_inner()).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Vec3 {
        self.vertices[i % self.len()]
    }

    pub fn arc(&self, i: usize) -> GreatArc {
        let n = self.len();
        GreatArc { a: self.vertices[i % n], b: self.vertices[(i + 1) % n] }
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Tangent at vertex `i` of the arc toward vertex `j`.
    fn tangent(&self, i: usize, j: usize) -> Vec3 {
        let p = self.vertex(i);
        reject(&self.vertex(j), &p).normalize()
    }

    /// Counter-clockwise angle at vertex `i` from the outgoing arc to the
    /// incoming arc, in `[0, 2π)`.
    pub fn left_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let p = self.vertex(i);
        ccw_angle(&self.tangent(i, i + 1), &self.tangent(i, i + n - 1), &p)
    }

    /// Interior angle for the given traversal sense: the left angle for
    /// `orientation > 0` and its complement otherwise.
    pub fn interior_angle(&self, i: usize, orientation: f64) -> f64 {
        let l = self.left_angle(i);
        if orientation > 0.0 {
            l
        } else {
            TAU - l
        }
    }

    /// `s · (Σ α̂_i − (n−2)π)` with interior angles taken for orientation `s`.
    pub fn signed_area(&self, orientation: f64) -> Result<f64, SphereError> {
        let n = self.len();
        if n < 3 {
            return Err(SphereError::TooFewVertices(3));
        }
        let simp = self.is_simple();
        if let Some((i, j)) = simp.crossing {
            return Err(SphereError::NotSimple(i, j));
        }
        let s = if orientation > 0.0 { 1.0 } else { -1.0 };
        let mut sum = 0.0;
        for i in 0..n {
            let a = self.interior_angle(i, s);
            if !(tol::ARC..=TAU - tol::ARC).contains(&a) {
                return Err(SphereError::DegenerateAngle(i));
            }
            sum += a;
        }
        Ok(s * (sum - (n as f64 - 2.0) * PI))
    }

    /// Pairwise arc intersection test, O(n²).
    pub fn is_simple(&self) -> Simplicity {
        let n = self.len();
        let mut degenerate = false;
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // shared vertex; only a fold-back along one circle overlaps
                    let (s, a, b) = if j == i + 1 { (j, i, j + 1) } else { (i, i + 1, j) };
                    let ta = self.tangent(s, a);
                    let tb = self.tangent(s, b);
                    if ta.cross(&tb).norm() <= tol::ARC && ta.dot(&tb) > 0.0 {
                        return Simplicity { simple: false, crossing: Some((i, j)), degenerate };
                    }
                    continue;
                }
                match arc_intersection(&self.arc(i), &self.arc(j)) {
                    ArcRelation::Cross => {
                        return Simplicity { simple: false, crossing: Some((i, j)), degenerate }
                    }
                    ArcRelation::Touch => degenerate = true,
                    ArcRelation::Disjoint => {}
                }
            }
        }
        Simplicity { simple: true, crossing: None, degenerate }
    }

    fn on_boundary(&self, x: &Vec3) -> bool {
        (0..self.len()).any(|i| self.arc(i).distance(x) <= tol::ARC)
    }

    /// Winding number of the polygon about `ξ`.
    ///
    /// For polygons inside an open hemisphere with pole `h` this is the planar
    /// winding number in the gnomonic chart at `h` (zero for `ξ` outside that
    /// hemisphere). Other polygons are measured relative to the antipode of
    /// their vertex centroid by signed crossings of the arc from `ξ`.
    pub fn winding_number(&self, xi: &Vec3) -> Result<i32, SphereError> {
        let xi = xi.normalize();
        if self.on_boundary(&xi) || self.on_boundary(&-xi) {
            return Err(SphereError::PointOnBoundary);
        }
        if let Some(h) = hemisphere_pole(&self.vertices) {
            let h = h.into_inner();
            if xi.dot(&h) <= 0.0 {
                return Ok(0);
            }
            let chart = Gnomonic::new(h);
            let q = chart.forward(&xi);
            let pts: Vec<Vec2> = self.vertices.iter().map(|p| chart.forward(p)).collect();
            let mut total = 0.0;
            let n = pts.len();
            for i in 0..n {
                let a = pts[i] - q;
                let b = pts[(i + 1) % n] - q;
                total += crate::planar::cross2(&a, &b).atan2(a.dot(&b));
            }
            return Ok((total / TAU).round() as i32);
        }
        let c = self.vertices.iter().fold(Vec3::zeros(), |s, p| s + p);
        let mut bases = vec![];
        if c.norm() > 1e-9 {
            bases.push(-c.normalize());
        }
        bases.extend([Vec3::z(), -Vec3::z(), Vec3::x(), Vec3::new(0.3, -0.5, 0.81).normalize()]);
        for b in bases {
            if let Some(w) = crossing_winding(self, &xi, &b) {
                return Ok(w);
            }
        }
        Err(SphereError::PointOnBoundary)
    }

    /// True when `x` is enclosed (non-zero winding number).
    pub fn contains(&self, x: &Vec3) -> bool {
        matches!(self.winding_number(x), Ok(w) if w != 0)
    }
}

/// Signed count of polygon arcs crossing a path from `xi` to `base`, which is
/// the planar winding number about `xi` in a chart sending `base` to infinity.
/// Returns `None` when the path passes too close to a polygon vertex.
pub(crate) fn crossing_winding(poly: &SphericalPolygon, xi: &Vec3, base: &Vec3) -> Option<i32> {
    if (xi + base).norm() < 1e-6 || (xi - base).norm() < 1e-9 {
        return None;
    }
    let path = GreatArc::new(*xi, *base)?;
    if poly.vertices().iter().any(|v| path.distance(v) < 1e-9) || poly.on_boundary(base) {
        return None;
    }
    let cp = path.pole();
    let mut w = 0;
    for i in 0..poly.len() {
        let arc = poly.arc(i);
        if let ArcRelation::Cross = arc_intersection(&path, &arc) {
            let ca = arc.pole();
            let x = cp.cross(&ca).normalize();
            let x = if path.params(&x, &cp).0 > 0.0 && path.params(&x, &cp).1 > 0.0 { x } else { -x };
            let t_path = cp.cross(&x);
            let t_arc = ca.cross(&x);
            w += if x.dot(&t_path.cross(&t_arc)) > 0.0 { 1 } else { -1 };
        }
    }
    Some(w)
}

/// Gnomonic (central) projection onto the tangent plane at a pole.
#[derive(Debug, Clone, Copy)]
pub struct Gnomonic {
    pub pole: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
}

impl Gnomonic {
    pub fn new(pole: Vec3) -> Self {
        let pole = pole.normalize();
        let (e1, e2) = tangent_basis(&pole);
        Self { pole, e1, e2 }
    }

    /// Chart coordinates of `p`; requires `p · pole > 0`.
    pub fn forward(&self, p: &Vec3) -> Vec2 {
        let w = p.dot(&self.pole);
        Vec2::new(p.dot(&self.e1) / w, p.dot(&self.e2) / w)
    }

    pub fn inverse(&self, q: &Vec2) -> Vec3 {
        (self.pole + self.e1 * q.x + self.e2 * q.y).normalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octant() -> SphericalPolygon {
        SphericalPolygon::new(vec![Vec3::x(), Vec3::y(), Vec3::z()]).unwrap()
    }

    fn saddle_image() -> SphericalPolygon {
        // face normals of the saddle star, in ring order
        SphericalPolygon::new(vec![
            Vec3::new(-1.0, 1.0, 1.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, 1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn octant_area_and_winding() {
        let o = octant();
        assert!((o.signed_area(1.0).unwrap() - PI / 2.0).abs() < 1e-14);
        for i in 0..3 {
            assert!((o.left_angle(i) - PI / 2.0).abs() < 1e-14);
        }
        let c = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert_eq!(o.winding_number(&c).unwrap(), 1);
        assert_eq!(o.winding_number(&-c).unwrap(), 0);
    }

    #[test]
    fn saddle_image_is_clockwise() {
        let g = saddle_image();
        assert!((g.signed_area(-1.0).unwrap() + 2.0 * PI / 3.0).abs() < 1e-14);
        assert_eq!(g.winding_number(&Vec3::z()).unwrap(), -1);
        assert!(g.is_simple().simple);
    }

    #[test]
    fn reversal_negates_area() {
        let g = saddle_image();
        let a = g.signed_area(-1.0).unwrap();
        let b = g.reversed().signed_area(1.0).unwrap();
        assert!((a + b).abs() < 1e-14);
    }

    #[test]
    fn bow_tie_is_not_simple() {
        let b = SphericalPolygon::new(vec![
            Vec3::new(0.3, 0.3, 1.0),
            Vec3::new(-0.3, -0.3, 1.0),
            Vec3::new(0.3, -0.3, 1.0),
            Vec3::new(-0.3, 0.3, 1.0),
        ])
        .unwrap();
        let s = b.is_simple();
        assert!(!s.simple);
        assert_eq!(s.crossing, Some((0, 2)));
        assert!(matches!(b.signed_area(1.0), Err(SphereError::NotSimple(0, 2))));
    }

    #[test]
    fn touching_arcs_are_degenerate_not_crossing() {
        // vertex 3 touches arc 0..1 at its midpoint from outside
        let p = SphericalPolygon::new(vec![
            Vec3::new(1.0, 0.0, 1.0),
            Vec3::new(-1.0, 0.0, 1.0),
            Vec3::new(-1.0, 1.0, 1.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(1.0, 1.0, 1.0),
        ])
        .unwrap();
        let s = p.is_simple();
        assert!(s.simple && s.degenerate);
    }

    #[test]
    fn fold_back_detected() {
        let p = SphericalPolygon::new(vec![
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.2, 0.0, 1.0),
            Vec3::new(0.1, 0.0, 1.0),
            Vec3::new(0.1, 0.3, 1.0),
        ])
        .unwrap();
        assert!(!p.is_simple().simple);
    }

    #[test]
    fn antipodal_arc_rejected() {
        assert_eq!(
            SphericalPolygon::new(vec![Vec3::x(), -Vec3::x(), Vec3::y()]),
            Err(SphereError::DegenerateArc(0))
        );
    }

    #[test]
    fn gnomonic_roundtrip() {
        let g = Gnomonic::new(Vec3::new(0.2, -0.4, 0.9));
        let p = Vec3::new(0.5, 0.1, 0.7).normalize();
        assert!((g.inverse(&g.forward(&p)) - p).norm() < 1e-15);
    }

    #[test]
    fn winding_seen_from_the_antipode() {
        // counter-clockwise about e_z, so clockwise about -e_z
        let ring: Vec<Vec3> = (0..6)
            .map(|k| {
                let t = k as f64 * TAU / 6.0;
                Vec3::new(t.cos(), t.sin(), -0.2)
            })
            .collect();
        let p = SphericalPolygon::new(ring).unwrap();
        assert_eq!(p.winding_number(&Vec3::z()).unwrap(), 0);
        assert_eq!(p.winding_number(&-Vec3::z()).unwrap(), -1);
    }
}
