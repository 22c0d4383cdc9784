//! Per-vertex theory: angle defect, inflection faces, Gauss images, the
//! Banchoff index, shape classification and discrete tangent planes.

use crate::geom::{tol, unit, UnitDir3, Vec3, TAU};
use crate::mesh::{fit_plane, GeometryIssue, VertexStar};
use crate::planar;
use crate::sphere::{hemisphere_pole, star_shape_kernel, SphereError, SphericalPolygon, SphericalRegionKernel};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("vertex {vertex}: angle defect {k:e} is numerically zero")]
    ZeroCurvature { vertex: usize, k: f64 },
    #[error("vertex {vertex}: consecutive face normals are antipodal")]
    AntipodalNormals { vertex: usize },
    #[error("face {face} has a straight angle at the center")]
    StraightAngle { face: usize },
    #[error("vertex {vertex}: geometric corners disagree with predicted corners")]
    ClassificationMismatch { vertex: usize },
    #[error("direction is not generic for the star")]
    NonGenericDirection,
    #[error("{0}")]
    Geometry(GeometryIssue),
    #[error("{0}")]
    Sphere(#[from] SphereError),
}

/// Angle defect `2π − Σ α_f`.
pub fn gaussian_curvature(star: &VertexStar) -> f64 {
    TAU - star.ring().iter().map(|r| r.alpha).sum::<f64>()
}

/// Whether the two ring neighbours of ring face `i` lie on opposite sides of
/// its plane. Sidedness is read off next to the shared edges, so reflex
/// neighbours are handled locally.
pub fn is_inflection_face(star: &VertexStar, i: usize) -> Result<bool, CurvatureError> {
    let ring = star.ring();
    let f = &ring[i];
    let h = &ring[star.prev_index(i)];
    let g = &ring[star.next_index(i)];
    // interior directions of the neighbours, perpendicular to the shared edges
    let into_g = g.normal.cross(&f.to_prev);
    let into_h = h.normal.cross(&(-f.to_next));
    let sg = f.normal.dot(&into_g);
    let sh = f.normal.dot(&into_h);
    let eps = 1e-14;
    if sg.abs() <= eps {
        return Err(CurvatureError::Geometry(GeometryIssue::Straddle { face: f.face, neighbor: g.face }));
    }
    if sh.abs() <= eps {
        return Err(CurvatureError::Geometry(GeometryIssue::Straddle { face: f.face, neighbor: h.face }));
    }
    Ok((sg > 0.0) != (sh > 0.0))
}

pub fn inflection_flags(star: &VertexStar) -> Result<Vec<bool>, CurvatureError> {
    (0..star.valence()).map(|i| is_inflection_face(star, i)).collect()
}

/// Counter-clockwise (left) angle of the Gauss image at `n_f` predicted from
/// the corner angle and the inflection status.
pub fn lemma_angle(alpha: f64, inflection: bool) -> Result<f64, CurvatureError> {
    if (alpha - PI).abs() < tol::ANGLE {
        return Err(CurvatureError::StraightAngle { face: usize::MAX });
    }
    Ok(match (alpha < PI, inflection) {
        (true, false) => PI - alpha,
        (true, true) => TAU - alpha,
        (false, false) => 3.0 * PI - alpha,
        (false, true) => TAU - alpha,
    })
}

/// Interior angle of the Gauss image at `n_f`, i.e. the left angle for
/// positive curvature and its complement for negative curvature (the image
/// is traversed clockwise then).
pub fn oriented_angle(alpha: f64, inflection: bool, k: f64) -> Result<f64, CurvatureError> {
    let l = lemma_angle(alpha, inflection)?;
    Ok(if k > 0.0 { l } else { TAU - l })
}

/// Gauss image of a vertex star: face normals in ring order.
#[derive(Debug, Clone)]
pub struct GaussImage {
    pub polygon: SphericalPolygon,
    pub faces: Vec<usize>,
}

pub fn gauss_image(star: &VertexStar) -> Result<GaussImage, CurvatureError> {
    let polygon = SphericalPolygon::new(star.normals()).map_err(|e| match e {
        SphereError::DegenerateArc(_) => CurvatureError::AntipodalNormals { vertex: star.vertex() },
        other => CurvatureError::Sphere(other),
    })?;
    Ok(GaussImage { polygon, faces: star.ring().iter().map(|r| r.face).collect() })
}

/// Local triangles of each ring face that contain the center, as pairs of
/// the other two triangle corners. Convex faces are fanned from their lowest
/// vertex id; non-convex faces are ear-clipped from the same anchor.
fn center_triangles(star: &VertexStar) -> Vec<(Vec3, Vec3)> {
    let mut out = Vec::new();
    for r in star.ring() {
        let n = r.polygon.len();
        let anchor = (0..n).min_by_key(|&k| r.ids[k]).unwrap_or(0);
        let outline = fit_plane(&r.polygon).outline;
        let tris: Vec<[usize; 3]> = if planar::is_convex(&outline) {
            (1..n - 1).map(|k| [anchor, (anchor + k) % n, (anchor + k + 1) % n]).collect()
        } else {
            planar::ear_clip(&outline, anchor)
        };
        for t in tris {
            if let Some(p) = t.iter().position(|&k| k == 0) {
                out.push((r.polygon[t[(p + 1) % 3]], r.polygon[t[(p + 2) % 3]]));
            }
        }
    }
    out
}

/// Banchoff index `1 − ½·#{incident triangles where the center is the middle
/// height along ξ}`.
pub fn banchoff_index(star: &VertexStar, xi: &Vec3) -> Result<i32, CurvatureError> {
    let c = star.center();
    let hc = xi.dot(&c);
    let scale = star
        .ring()
        .iter()
        .flat_map(|r| r.polygon.iter())
        .map(|p| (p - c).norm())
        .fold(0.0, f64::max);
    let eps = 1e-12 * scale.max(1e-300) * xi.norm();
    for r in star.ring() {
        for p in &r.polygon[1..] {
            if (xi.dot(p) - hc).abs() <= eps {
                return Err(CurvatureError::NonGenericDirection);
            }
        }
    }
    let middle = center_triangles(star)
        .iter()
        .filter(|(a, b)| (xi.dot(a) - hc) * (xi.dot(b) - hc) < 0.0)
        .count() as i32;
    if middle % 2 != 0 {
        // cannot happen for a closed fan; guard anyway
        return Err(CurvatureError::NonGenericDirection);
    }
    Ok(1 - middle / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexClass {
    ConvexCorner,
    PseudoQuadrilateral,
    /// One reflex face which is an inflection face.
    PseudoTriangleA,
    /// One reflex face which is not an inflection face.
    PseudoTriangleB,
    PseudoDigon,
    SelfIntersecting,
}

impl VertexClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ConvexCorner => "ConvexCorner",
            Self::PseudoQuadrilateral => "PseudoQuadrilateral",
            Self::PseudoTriangleA => "PseudoTriangle_A",
            Self::PseudoTriangleB => "PseudoTriangle_B",
            Self::PseudoDigon => "PseudoDigon",
            Self::SelfIntersecting => "SelfIntersecting",
        }
    }
}

/// Per-vertex data shared by the classification and later stages.
#[derive(Debug, Clone)]
pub struct VertexAnalysis {
    pub star: VertexStar,
    pub k: f64,
    pub inflection: Vec<bool>,
    pub image: GaussImage,
    pub simple: bool,
    pub degenerate: bool,
}

impl VertexAnalysis {
    pub fn new(star: VertexStar) -> Result<Self, CurvatureError> {
        let k = gaussian_curvature(&star);
        for r in star.ring() {
            if (r.alpha - PI).abs() < tol::ANGLE {
                return Err(CurvatureError::StraightAngle { face: r.face });
            }
        }
        let inflection = inflection_flags(&star)?;
        let image = gauss_image(&star)?;
        let s = image.polygon.is_simple();
        Ok(Self { star, k, inflection, image, simple: s.simple, degenerate: s.degenerate })
    }

    pub fn vertex(&self) -> usize {
        self.star.vertex()
    }

    pub fn sign(&self) -> f64 {
        if self.k > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn is_zero_curvature(&self) -> bool {
        self.k.abs() < tol::ZERO_K
    }

    /// Interior angles of the Gauss image predicted from corner angles and
    /// inflections, in ring order.
    pub fn predicted_angles(&self) -> Vec<f64> {
        self.star
            .ring()
            .iter()
            .zip(&self.inflection)
            .map(|(r, &infl)| oriented_angle(r.alpha, infl, self.k).expect("straight angles rejected"))
            .collect()
    }

    /// Interior angles of the Gauss image measured on the sphere.
    pub fn geometric_angles(&self) -> Vec<f64> {
        let s = self.sign();
        (0..self.star.valence()).map(|i| self.image.polygon.interior_angle(i, s)).collect()
    }

    pub fn inflection_faces(&self) -> Vec<usize> {
        self.star
            .ring()
            .iter()
            .zip(&self.inflection)
            .filter(|(_, &i)| i)
            .map(|(r, _)| r.face)
            .collect()
    }

    pub fn reflex_faces(&self) -> Vec<usize> {
        self.star.ring().iter().filter(|r| r.is_reflex()).map(|r| r.face).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: VertexClass,
    pub k: f64,
    pub inflection_faces: Vec<usize>,
    pub reflex_faces: Vec<usize>,
    /// Faces whose normals are corners (interior angle < π) of the image.
    pub corner_faces: Vec<usize>,
    pub degenerate: bool,
}

/// Shape classification of the Gauss image.
pub fn classify_vertex(star: &VertexStar) -> Result<Classification, CurvatureError> {
    classify(&VertexAnalysis::new(star.clone())?)
}

pub fn classify(a: &VertexAnalysis) -> Result<Classification, CurvatureError> {
    let v = a.vertex();
    if a.is_zero_curvature() {
        return Err(CurvatureError::ZeroCurvature { vertex: v, k: a.k });
    }
    let infl = a.inflection_faces();
    let reflex = a.reflex_faces();
    let mut out = Classification {
        class: VertexClass::SelfIntersecting,
        k: a.k,
        inflection_faces: infl.clone(),
        reflex_faces: reflex.clone(),
        corner_faces: Vec::new(),
        degenerate: a.degenerate,
    };
    if !a.simple {
        return Ok(out);
    }
    let predicted = a.predicted_angles();
    let measured = a.geometric_angles();
    let faces = &a.image.faces;
    let corners = |angles: &[f64]| -> Vec<usize> {
        angles.iter().zip(faces).filter(|(&x, _)| x < PI).map(|(_, &f)| f).collect()
    };
    let predicted_corners = corners(&predicted);
    if predicted_corners != corners(&measured) {
        return Err(CurvatureError::ClassificationMismatch { vertex: v });
    }
    out.corner_faces = predicted_corners;
    let mismatch = || CurvatureError::ClassificationMismatch { vertex: v };
    out.class = if a.k > 0.0 {
        if !infl.is_empty() || !reflex.is_empty() {
            return Err(mismatch());
        }
        VertexClass::ConvexCorner
    } else {
        match reflex.len() {
            0 => {
                if infl.len() != 4 {
                    return Err(mismatch());
                }
                VertexClass::PseudoQuadrilateral
            }
            1 => {
                if infl.contains(&reflex[0]) {
                    if infl.len() != 4 {
                        return Err(mismatch());
                    }
                    VertexClass::PseudoTriangleA
                } else {
                    if infl.len() != 2 {
                        return Err(mismatch());
                    }
                    VertexClass::PseudoTriangleB
                }
            }
            _ => VertexClass::PseudoDigon,
        }
    };
    Ok(out)
}

/// Discrete tangent plane data: `n` spans the tangent plane's normal (a
/// kernel point of the Gauss image), `n_prime` is a hemisphere pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFrame {
    pub n: UnitDir3,
    pub n_prime: UnitDir3,
}

#[derive(Debug, Clone)]
pub struct Smoothness {
    pub simple: bool,
    pub hemispherical: bool,
    pub star_shaped: bool,
    /// The reported discrete normal lies inside the Gauss image.
    pub n_prime_inside: bool,
    pub frame: Option<TangentFrame>,
    pub kernel: Option<SphericalRegionKernel>,
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        self.simple && self.hemispherical && self.star_shaped && self.frame.is_some()
    }
}

pub fn vertex_smoothness(star: &VertexStar) -> Result<Smoothness, CurvatureError> {
    Ok(smoothness(&VertexAnalysis::new(star.clone())?))
}

pub fn smoothness(a: &VertexAnalysis) -> Smoothness {
    let poly = &a.image.polygon;
    let pole = hemisphere_pole(poly.vertices());
    let mut out = Smoothness {
        simple: a.simple,
        hemispherical: pole.is_some(),
        star_shaped: false,
        n_prime_inside: false,
        frame: None,
        kernel: None,
    };
    let Some(pole) = pole else { return out };
    if !a.simple {
        return out;
    }
    let Ok(kernel) = star_shape_kernel(poly) else { return out };
    out.star_shaped = !kernel.is_empty();
    if let Some(n) = kernel.center() {
        let is_pole = |x: &Vec3| poly.vertices().iter().all(|p| p.dot(x) > tol::LP_MARGIN);
        let pole_v = pole.into_inner();
        let n_prime = if poly.contains(&pole_v) {
            out.n_prime_inside = true;
            pole_v
        } else if is_pole(&n) {
            out.n_prime_inside = true;
            n
        } else {
            pole_v
        };
        out.frame = Some(TangentFrame { n: unit(n), n_prime: unit(n_prime) });
    }
    out.kernel = Some(kernel);
    out
}
