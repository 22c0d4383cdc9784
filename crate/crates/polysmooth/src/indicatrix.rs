//! Plane sections of the infinite vertex star (discrete Dupin indicatrix),
//! vertex asymptotic directions and their admissible cones.

use crate::curvature::{oriented_angle, TangentFrame, VertexAnalysis};
use crate::geom::{ccw_angle, reject, rotate_about, tangent_basis, tol, wrap_tau, Vec2, Vec3, TAU};
use crate::mesh::VertexStar;
use crate::planar;
use crate::sphere::SphericalRegionKernel;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndicatrixError {
    #[error("section plane passes through the apex")]
    PlaneThroughApex,
    #[error("asymptotic directions need negative curvature")]
    WrongCurvatureSign,
    #[error("the Gauss image has an empty kernel")]
    EmptyKernel,
}

/// Unbounded planar sector `apex + s·a + t·b` (`s, t ≥ 0`) of one face.
#[derive(Debug, Clone, PartialEq)]
pub struct Wedge {
    pub face: usize,
    pub a: Vec3,
    pub b: Vec3,
    pub normal: Vec3,
    /// Half of a reflex face split along its bisector; 0 or 1.
    pub half: Option<u8>,
}

/// The infinite vertex star: one wedge per face, two per reflex face.
#[derive(Debug, Clone)]
pub struct InfiniteStar {
    pub apex: Vec3,
    pub wedges: Vec<Wedge>,
}

impl InfiniteStar {
    /// Boundary ray directions in ring order; ray `k` starts wedge `k`.
    pub fn rays(&self) -> Vec<Vec3> {
        self.wedges.iter().map(|w| w.a).collect()
    }

    /// Whether ray `k` is the artificial bisector of a reflex face.
    pub fn is_split_ray(&self, k: usize) -> bool {
        self.wedges[k].half == Some(1)
    }
}

pub fn infinite_star(star: &VertexStar) -> InfiniteStar {
    let mut wedges = Vec::with_capacity(star.valence() + 2);
    for r in star.ring() {
        let a = r.to_next.normalize();
        let b = r.to_prev.normalize();
        if r.is_reflex() {
            let d = -(a + b).normalize();
            wedges.push(Wedge { face: r.face, a, b: d, normal: r.normal, half: Some(0) });
            wedges.push(Wedge { face: r.face, a: d, b, normal: r.normal, half: Some(1) });
        } else {
            wedges.push(Wedge { face: r.face, a, b, normal: r.normal, half: None });
        }
    }
    InfiniteStar { apex: star.center(), wedges }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub point: Vec3,
    pub normal: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionClass {
    Empty,
    DiscreteEllipse,
    DiscreteHyperbola,
    ThreeComponents,
    /// Hyperbola one of whose branches is a straight line.
    SingleSegmentBranch,
    /// Two convex branches, one enclosing the other.
    NestedConvex,
    Other,
}

impl SectionClass {
    pub fn is_discrete_hyperbola(&self) -> bool {
        matches!(self, Self::DiscreteHyperbola | Self::SingleSegmentBranch)
    }
}

/// One connected component of a section. Open polylines carry outgoing
/// ray directions at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec3>,
    /// Face containing each piece: the leading ray, each segment, the
    /// trailing ray (rays only for open polylines).
    pub faces: Vec<usize>,
    pub closed: bool,
    /// Direction of the unbounded piece before `points[0]`, pointing away.
    pub start_ray: Option<Vec3>,
    /// Direction of the unbounded piece after the last point.
    pub end_ray: Option<Vec3>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionResult {
    pub polylines: Vec<Polyline>,
    pub class: SectionClass,
    /// Faces containing an inflection edge.
    pub inflection_edges: Vec<usize>,
}

pub fn plane_section(star: &InfiniteStar, plane: &Plane) -> Result<SectionResult, IndicatrixError> {
    let n = plane.normal.normalize();
    let delta = n.dot(&(plane.point - star.apex));
    let reach = star.wedges.len() as f64;
    if delta.abs() <= 1e-12 * reach.max(1.0) * (plane.point - star.apex).norm().max(1e-300) {
        return Err(IndicatrixError::PlaneThroughApex);
    }
    let rays = star.rays();
    let m = rays.len();
    let hit: Vec<bool> = rays.iter().map(|r| n.dot(r) * delta.signum() > 1e-15).collect();
    let point = |k: usize| star.apex + rays[k] * (delta / n.dot(&rays[k]));
    // direction of the unbounded piece in wedge k leaving ray `from`
    let escape = |k: usize, from_a: bool| {
        let w = &star.wedges[k];
        let (p, q) = if from_a { (w.a, w.b) } else { (w.b, w.a) };
        (q - p * (n.dot(&q) / n.dot(&p))).normalize()
    };
    let mut polylines = Vec::new();
    if hit.iter().all(|&h| h) {
        let keep: Vec<usize> = (0..m).filter(|&k| !star.is_split_ray(k)).collect();
        polylines.push(Polyline {
            points: keep.iter().map(|&k| point(k)).collect(),
            faces: keep.iter().map(|&k| star.wedges[k].face).collect(),
            closed: true,
            start_ray: None,
            end_ray: None,
        });
    } else if hit.iter().any(|&h| h) {
        let first = (0..m).find(|&k| !hit[k] && hit[(k + 1) % m]).expect("some run starts");
        let mut k = (first + 1) % m;
        for _ in 0..m {
            if hit[k] && !hit[(k + m - 1) % m] {
                // run of hit rays k..=e
                let mut ids = vec![k];
                let mut e = k;
                while hit[(e + 1) % m] {
                    e = (e + 1) % m;
                    ids.push(e);
                }
                let before = (k + m - 1) % m;
                let mut points = Vec::new();
                let mut faces = vec![star.wedges[before].face];
                for (idx, &r) in ids.iter().enumerate() {
                    // split points lie inside a straight piece of the section
                    if !star.is_split_ray(r) {
                        points.push(point(r));
                    }
                    if idx + 1 < ids.len() {
                        faces.push(star.wedges[r].face);
                    }
                }
                faces.push(star.wedges[e].face);
                faces.dedup();
                let (start_ray, end_ray) = (escape(before, false), escape(e, true));
                if points.is_empty() {
                    // the whole component is a line through the split point
                    points.push(point(ids[0]));
                }
                polylines.push(Polyline {
                    points,
                    faces,
                    closed: false,
                    start_ray: Some(start_ray),
                    end_ray: Some(end_ray),
                });
            }
            k = (k + 1) % m;
        }
    }
    Ok(classify_section(polylines, &n))
}

/// Section by the plane orthogonal to `normal` at signed distance `offset`
/// from the apex.
pub fn section_at_offset(star: &InfiniteStar, normal: &Vec3, offset: f64) -> Result<SectionResult, IndicatrixError> {
    let n = normal.normalize();
    plane_section(star, &Plane { point: star.apex + n * offset, normal: n })
}

struct Planar {
    pts: Vec<Vec2>,
    start: Option<Vec2>,
    end: Option<Vec2>,
    closed: bool,
}

fn to_planar(p: &Polyline, origin: &Vec3, e1: &Vec3, e2: &Vec3) -> Planar {
    let f = |x: &Vec3| Vec2::new(x.dot(e1), x.dot(e2));
    Planar {
        pts: p.points.iter().map(|x| f(&(x - origin))).collect(),
        start: p.start_ray.map(|d| f(&d)),
        end: p.end_ray.map(|d| f(&d)),
        closed: p.closed,
    }
}

/// Turn signs at every vertex of a planar polyline, with their pieces.
fn turns(p: &Planar, eps: f64) -> Vec<f64> {
    let k = p.pts.len();
    let dir_in = |i: usize| -> Vec2 {
        if i == 0 {
            if p.closed {
                p.pts[0] - p.pts[k - 1]
            } else {
                -p.start.expect("open polyline")
            }
        } else {
            p.pts[i] - p.pts[i - 1]
        }
    };
    let dir_out = |i: usize| -> Vec2 {
        if i + 1 == k {
            if p.closed {
                p.pts[0] - p.pts[i]
            } else {
                p.end.expect("open polyline")
            }
        } else {
            p.pts[i + 1] - p.pts[i]
        }
    };
    (0..k)
        .map(|i| {
            let (a, b) = (dir_in(i).normalize(), dir_out(i).normalize());
            let c = planar::cross2(&a, &b);
            if c.abs() <= eps {
                0.0
            } else {
                c.signum()
            }
        })
        .collect()
}

fn truncated(p: &Planar, len: f64) -> Vec<Vec2> {
    let mut v = p.pts.clone();
    if let Some(s) = p.start {
        v.push(p.pts[0] + s * len);
    }
    if let Some(e) = p.end {
        v.push(p.pts[p.pts.len() - 1] + e * len);
    }
    v
}

fn classify_section(polylines: Vec<Polyline>, n: &Vec3) -> SectionResult {
    let (e1, e2) = tangent_basis(n);
    let origin = polylines.first().map(|p| p.points[0]).unwrap_or_default();
    let planars: Vec<Planar> = polylines.iter().map(|p| to_planar(p, &origin, &e1, &e2)).collect();
    let extent = planars
        .iter()
        .flat_map(|p| p.pts.iter())
        .map(|q| q.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let eps = tol::COLLINEAR;
    let mut inflection_edges = Vec::new();
    let mut turn_lists = Vec::new();
    for (pl, p) in polylines.iter().zip(&planars) {
        let t = turns(p, eps);
        let k = t.len();
        // segment i joins vertex i and i+1; it is an inflection edge when the
        // turns at both ends have opposite signs
        let segs = if p.closed { k } else { k.saturating_sub(1) };
        for i in 0..segs {
            let (a, b) = (t[i], t[(i + 1) % k]);
            if a * b < 0.0 {
                let face = if p.closed { pl.faces[i] } else { pl.faces[i + 1] };
                inflection_edges.push(face);
            }
        }
        turn_lists.push(t);
    }
    inflection_edges.sort_unstable();
    inflection_edges.dedup();
    let class = match polylines.len() {
        0 => SectionClass::Empty,
        1 if polylines[0].closed => {
            let t = &turn_lists[0];
            let convex = t.iter().all(|&s| s > 0.0) || t.iter().all(|&s| s < 0.0);
            if convex {
                SectionClass::DiscreteEllipse
            } else {
                SectionClass::Other
            }
        }
        2 => {
            if !inflection_edges.is_empty() {
                SectionClass::Other
            } else {
                let len = 1e4 * extent;
                let h: Vec<Vec<Vec2>> = planars.iter().map(|p| planar::convex_hull(&truncated(p, len))).collect();
                if planar::convex_sets_disjoint(&h[0], &h[1], 1e-12 * len) {
                    let straight = turn_lists.iter().any(|t| t.iter().all(|&s| s == 0.0));
                    if straight {
                        SectionClass::SingleSegmentBranch
                    } else {
                        SectionClass::DiscreteHyperbola
                    }
                } else {
                    let inside = |hull: &[Vec2], p: &Planar| {
                        p.pts.iter().all(|q| planar::locate(q, hull, 1e-12 * len) != planar::Containment::Outside)
                    };
                    if inside(&h[0], &planars[1]) || inside(&h[1], &planars[0]) {
                        SectionClass::NestedConvex
                    } else {
                        SectionClass::Other
                    }
                }
            }
        }
        3 => SectionClass::ThreeComponents,
        _ => SectionClass::Other,
    };
    SectionResult { polylines, class, inflection_edges }
}

/// Probe offset for sections near the apex.
pub fn probe_offset(star: &VertexStar) -> f64 {
    tol::PROBE * star.min_edge_length()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticDirection {
    pub face: usize,
    pub dir: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticDirections {
    pub directions: Vec<AsymptoticDirection>,
    /// Index pairs of opposite collinear directions.
    pub collinear: Vec<(usize, usize)>,
}

/// Rays of the tangent plane `⟨x − v, n⟩ = 0` inside the infinite star.
pub fn tangent_plane_rays(star: &InfiniteStar, n: &Vec3) -> Vec<AsymptoticDirection> {
    let mut out = Vec::new();
    for w in &star.wedges {
        let (da, db) = (n.dot(&w.a), n.dot(&w.b));
        if da * db < 0.0 {
            let d = (w.a * db.abs() + w.b * da.abs()).normalize();
            out.push(AsymptoticDirection { face: w.face, dir: d });
        }
    }
    out
}

fn collinear_pairs(dirs: &[AsymptoticDirection]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            let (a, b) = (dirs[i].dir, dirs[j].dir);
            if a.cross(&b).norm() < tol::COLLINEAR && a.dot(&b) < 0.0 {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn asymptotic_directions_vertex(
    star: &VertexStar,
    frame: &TangentFrame,
) -> Result<AsymptoticDirections, IndicatrixError> {
    if crate::curvature::gaussian_curvature(star) >= 0.0 {
        return Err(IndicatrixError::WrongCurvatureSign);
    }
    let directions = tangent_plane_rays(&infinite_star(star), &frame.n.into_inner());
    let collinear = collinear_pairs(&directions);
    Ok(AsymptoticDirections { directions, collinear })
}

/// Open cone of admissible asymptotic directions inside one face.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCone {
    pub face: usize,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Boundary rays at angles `α₁` and `α₁ + α₀` from the first edge.
    pub rays: [Vec3; 2],
    /// The cone is doubled through the apex (reflex non-inflection face).
    pub double: bool,
}

impl AsymptoticCone {
    /// Whether `d` lies strictly inside the cone (or its opposite when
    /// doubled), up to `eps` radians.
    pub fn contains(&self, d: &Vec3, first_edge: &Vec3, normal: &Vec3, eps: f64) -> bool {
        let t = ccw_angle(first_edge, &reject(d, normal), normal);
        let inside = |t: f64| t > self.alpha1 + eps && t < self.alpha1 + self.alpha0 - eps;
        inside(t) || (self.double && inside(t - PI))
    }
}

/// Admissible cones for every inflection face and every reflex
/// non-inflection face.
pub fn asymptotic_cones(a: &VertexAnalysis, kernel: &SphericalRegionKernel) -> Result<Vec<AsymptoticCone>, IndicatrixError> {
    if a.k >= 0.0 {
        return Err(IndicatrixError::WrongCurvatureSign);
    }
    if kernel.is_empty() {
        return Err(IndicatrixError::EmptyKernel);
    }
    let kv = kernel.vertices();
    let ring = a.star.ring();
    let mut out = Vec::new();
    for (i, r) in ring.iter().enumerate() {
        let reflex = r.is_reflex();
        let infl = a.inflection[i];
        if !(infl || reflex) {
            continue;
        }
        let nf = r.normal;
        let np = ring[a.star.prev_index(i)].normal;
        let nn = ring[a.star.next_index(i)].normal;
        let t_prev = reject(&np, &nf).normalize();
        let t_next = reject(&nn, &nf).normalize();
        let hat = oriented_angle(r.alpha, infl, a.k).map_err(|_| IndicatrixError::EmptyKernel)?;
        let ccw = ccw_angle(&t_prev, &t_next, &nf);
        let forward = (ccw - hat).abs() <= (TAU - ccw - hat).abs();
        let span = if forward { ccw } else { TAU - ccw };
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in &kv {
            let t = reject(k, &nf);
            if t.norm() < 1e-12 {
                continue;
            }
            let mut phi = ccw_angle(&t_prev, &t.normalize(), &nf);
            if !forward {
                phi = wrap_tau(TAU - phi);
            }
            // kernel corners on the arc toward n_prev can wrap to just below 2π
            if phi > TAU - 1e-9 {
                phi = 0.0;
            }
            lo = lo.min(phi);
            hi = hi.max(phi.min(span));
        }
        if !lo.is_finite() {
            lo = 0.0;
            hi = span;
        }
        let alpha1 = lo.max(0.0);
        let alpha2 = (span - hi).max(0.0);
        let alpha0 = (hi - lo).max(0.0);
        let e1 = r.to_next.normalize();
        let rays = [rotate_about(&e1, &nf, alpha1), rotate_about(&e1, &nf, alpha1 + alpha0)];
        out.push(AsymptoticCone { face: r.face, alpha0, alpha1, alpha2, rays, double: reflex && !infl });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{smoothness, VertexAnalysis};
    use crate::fixtures;

    fn star(m: &crate::mesh::Mesh, v: usize) -> VertexStar {
        m.vertex_star(v).unwrap()
    }

    #[test]
    fn wedge_counts() {
        assert_eq!(infinite_star(&star(&fixtures::saddle_star(1.0), 0)).wedges.len(), 4);
        assert_eq!(infinite_star(&star(&fixtures::cube_corner(), 0)).wedges.len(), 3);
        assert_eq!(infinite_star(&star(&fixtures::pseudo_triangle_b_star(), 0)).wedges.len(), 7);
    }

    #[test]
    fn saddle_sections_are_hyperbolas() {
        let v = infinite_star(&star(&fixtures::saddle_star(1.0), 0));
        for off in [0.1, -0.1] {
            let s = section_at_offset(&v, &Vec3::z(), off).unwrap();
            assert_eq!(s.class, SectionClass::DiscreteHyperbola);
            assert_eq!(s.polylines.len(), 2);
            assert!(s.polylines.iter().all(|p| p.points.len() == 1));
        }
        assert_eq!(section_at_offset(&v, &Vec3::z(), 0.0), Err(IndicatrixError::PlaneThroughApex));
    }

    #[test]
    fn cube_corner_sections() {
        let v = infinite_star(&star(&fixtures::cube_corner(), 0));
        let n = Vec3::new(1.0, 1.0, 1.0);
        assert_eq!(section_at_offset(&v, &n, -0.1).unwrap().class, SectionClass::Empty);
        let s = section_at_offset(&v, &n, 0.1).unwrap();
        assert_eq!(s.class, SectionClass::DiscreteEllipse);
        assert_eq!(s.polylines[0].points.len(), 3);
    }

    #[test]
    fn saddle_asymptotic_directions() {
        let s = star(&fixtures::saddle_star(1.0), 0);
        let a = VertexAnalysis::new(s.clone()).unwrap();
        let frame = smoothness(&a).frame.unwrap();
        let d = asymptotic_directions_vertex(&s, &frame).unwrap();
        assert_eq!(d.directions.len(), 4);
        let r = 0.5f64.sqrt();
        for x in &d.directions {
            assert!((x.dir.x.abs() - r).abs() < 1e-10 && (x.dir.y.abs() - r).abs() < 1e-10 && x.dir.z.abs() < 1e-10);
        }
        assert_eq!(d.collinear.len(), 2);
    }

    #[test]
    fn saddle_cones_fill_the_faces() {
        let s = star(&fixtures::saddle_star(1.0), 0);
        let a = VertexAnalysis::new(s).unwrap();
        let k = smoothness(&a).kernel.unwrap();
        let cones = asymptotic_cones(&a, &k).unwrap();
        assert_eq!(cones.len(), 4);
        for c in cones {
            assert!(c.alpha1.abs() < 1e-9 && c.alpha2.abs() < 1e-9);
            assert!((c.alpha0 - 2.0 * PI / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn positive_star_has_no_asymptotes() {
        let s = star(&fixtures::cube_corner(), 0);
        let a = VertexAnalysis::new(s.clone()).unwrap();
        let frame = smoothness(&a).frame.unwrap();
        assert_eq!(asymptotic_directions_vertex(&s, &frame), Err(IndicatrixError::WrongCurvatureSign));
    }

    #[test]
    fn antipodal_normal_cuts_three_components() {
        let v = infinite_star(&star(&fixtures::antipodal_star(), 0));
        let n = fixtures::antipodal_star_normal();
        for off in [0.05, -0.05] {
            let s = section_at_offset(&v, &n, off).unwrap();
            assert_eq!(s.class, SectionClass::ThreeComponents);
        }
    }

    #[test]
    fn non_star_shaped_pole_gives_inflection_edge() {
        let s = star(&fixtures::non_star_shaped_star(), 0);
        let a = VertexAnalysis::new(s.clone()).unwrap();
        let sm = smoothness(&a);
        let pole = sm.frame.unwrap().n_prime.into_inner();
        let v = infinite_star(&s);
        let up = section_at_offset(&v, &pole, 0.05).unwrap();
        assert_eq!(up.class, SectionClass::Other);
        assert!(!up.inflection_edges.is_empty());
        let down = section_at_offset(&v, &pole, -0.05).unwrap();
        assert!(down.class.is_discrete_hyperbola());
    }

    #[test]
    fn pseudo_triangle_b_has_one_collinear_pair() {
        let s = star(&fixtures::pseudo_triangle_b_star(), 0);
        let a = VertexAnalysis::new(s.clone()).unwrap();
        let frame = smoothness(&a).frame.unwrap();
        let d = asymptotic_directions_vertex(&s, &frame).unwrap();
        assert_eq!(d.collinear.len(), 1);
        let (i, j) = d.collinear[0];
        assert_eq!(d.directions[i].face, d.directions[j].face);
    }
}
