//! Shared vector types, tolerances and small angle helpers.

use nalgebra::{Unit, Vector2, Vector3};
use std::f64::consts::PI;

pub type Vec3 = Vector3<f64>;
pub type Point3 = Vector3<f64>;
pub type Vec2 = Vector2<f64>;
pub type UnitDir3 = Unit<Vector3<f64>>;

pub const TAU: f64 = 2.0 * PI;

/// Numerical thresholds used throughout the crate.
pub mod tol {
    /// Face planarity, relative to the bounding-box diagonal.
    pub const PLANAR_REL: f64 = 1e-8;
    /// Minimum dihedral deviation between adjacent faces (radians).
    pub const COPLANAR: f64 = 1e-9;
    /// Minimum distance of a corner angle from a straight angle (radians).
    pub const ANGLE: f64 = 1e-9;
    /// Arc containment tolerance on sine parameters.
    pub const ARC: f64 = 1e-12;
    /// Margin accepted by the hemisphere feasibility solver.
    pub const LP_MARGIN: f64 = 1e-10;
    /// Angle defects below this magnitude count as zero curvature.
    pub const ZERO_K: f64 = 1e-10;
    /// Collinearity threshold on |sin| between directions.
    pub const COLLINEAR: f64 = 1e-9;
    /// Section probe offset as a fraction of the shortest incident edge.
    pub const PROBE: f64 = 1e-2;
    /// Samples per Gauss-image arc in the admissibility test.
    pub const ARC_SAMPLES: usize = 16;
    /// Sign margin for the admissibility test.
    pub const ADMISSIBLE_MARGIN: f64 = 1e-6;
    /// Homogeneous coordinate threshold relative to the mesh scale.
    pub const AT_INFINITY: f64 = 1e-10;
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_tau(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = wrap_tau(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Angle measured counter-clockwise about `axis` from `a` to `b`, in `[0, 2π)`.
/// `a` and `b` should be (roughly) orthogonal to `axis`.
pub fn ccw_angle(a: &Vec3, b: &Vec3, axis: &Vec3) -> f64 {
    let s = axis.dot(&a.cross(b));
    let c = a.dot(b);
    wrap_tau(s.atan2(c))
}

/// Unsigned angle between two vectors, robust near 0 and π.
pub fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Component of `v` orthogonal to the unit vector `n`.
pub fn reject(v: &Vec3, n: &Vec3) -> Vec3 {
    v - n * n.dot(v)
}

/// Some unit vector orthogonal to `n`.
pub fn any_orthogonal(n: &Vec3) -> Vec3 {
    let pick = if n.x.abs() <= n.y.abs() && n.x.abs() <= n.z.abs() {
        Vec3::x()
    } else if n.y.abs() <= n.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    reject(&pick, n).normalize()
}

/// Right-handed orthonormal basis `(e1, e2)` of the plane orthogonal to `n`.
pub fn tangent_basis(n: &Vec3) -> (Vec3, Vec3) {
    let e1 = any_orthogonal(n);
    let e2 = n.cross(&e1);
    (e1, e2)
}

/// Rotates `v` by `angle` about the unit `axis` (Rodrigues).
pub fn rotate_about(v: &Vec3, axis: &Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    v * c + axis.cross(v) * s + axis * axis.dot(v) * (1.0 - c)
}

pub fn unit(v: Vec3) -> UnitDir3 {
    Unit::new_normalize(v)
}

/// Axis-aligned bounding-box diagonal of a point set.
pub fn bbox_diagonal(points: &[Vec3]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// Formats a float the way C's `%.17g` does.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..17).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let prec = (16 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", prec, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
