//! Strict hemisphere feasibility as a smallest-enclosing-cap problem.
//!
//! Maximizing `t` subject to `⟨n, p_i⟩ ≥ t`, `‖n‖ ≤ 1` has the same optimum
//! direction as the smallest spherical cap containing all `p_i`. The cap is
//! found with Welzl's randomized incremental algorithm under a fixed seed.

use crate::geom::{tol, unit, UnitDir3, Vec3};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Spherical cap `{x : ⟨x, center⟩ ≥ cos_radius}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cap {
    pub center: Vec3,
    pub cos_radius: f64,
}

impl Cap {
    fn contains(&self, p: &Vec3) -> bool {
        p.dot(&self.center) >= self.cos_radius - 1e-14
    }

    fn one(a: &Vec3) -> Self {
        Self { center: *a, cos_radius: 1.0 }
    }

    fn two(a: &Vec3, b: &Vec3) -> Option<Self> {
        let s = a + b;
        if s.norm() < 1e-15 {
            return None;
        }
        let c = s.normalize();
        Some(Self { center: c, cos_radius: c.dot(a).min(c.dot(b)) })
    }

    fn three(a: &Vec3, b: &Vec3, c: &Vec3) -> Option<Self> {
        let n = (b - a).cross(&(c - a));
        if n.norm() < 1e-15 {
            return [Self::two(a, b), Self::two(a, c), Self::two(b, c)]
                .into_iter()
                .flatten()
                .filter(|k| k.contains(a) && k.contains(b) && k.contains(c))
                .max_by(|x, y| x.cos_radius.total_cmp(&y.cos_radius));
        }
        let mut n = n.normalize();
        if n.dot(a) < 0.0 {
            n = -n;
        }
        Some(Self { center: n, cos_radius: n.dot(a).min(n.dot(b)).min(n.dot(c)) })
    }
}

/// Smallest cap containing all points, assuming they lie in an open
/// hemisphere. The result must be checked by the caller otherwise.
pub fn min_enclosing_cap(points: &[Vec3]) -> Option<Cap> {
    let mut pts: Vec<Vec3> = points.iter().map(|p| p.normalize()).collect();
    if pts.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    pts.shuffle(&mut rng);
    let mut cap = Cap::one(&pts[0]);
    for i in 1..pts.len() {
        if cap.contains(&pts[i]) {
            continue;
        }
        cap = Cap::one(&pts[i]);
        for j in 0..i {
            if cap.contains(&pts[j]) {
                continue;
            }
            cap = Cap::two(&pts[i], &pts[j])?;
            for k in 0..j {
                if cap.contains(&pts[k]) {
                    continue;
                }
                cap = Cap::three(&pts[i], &pts[j], &pts[k])?;
            }
        }
    }
    Some(cap)
}

/// Max-margin pole of an open hemisphere containing all points, if any.
/// Accepted only when every point has margin above [`tol::LP_MARGIN`].
pub fn hemisphere_pole(points: &[Vec3]) -> Option<UnitDir3> {
    let cap = min_enclosing_cap(points)?;
    let margin = points
        .iter()
        .map(|p| p.normalize().dot(&cap.center))
        .fold(f64::INFINITY, f64::min);
    if margin > tol::LP_MARGIN {
        Some(unit(cap.center))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octant_has_pole() {
        let p = hemisphere_pole(&[Vec3::x(), Vec3::y(), Vec3::z()]).unwrap();
        let d = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert!((p.into_inner() - d).norm() < 1e-12);
    }

    #[test]
    fn antipodal_pair_is_infeasible() {
        assert!(hemisphere_pole(&[Vec3::x(), -Vec3::x(), Vec3::y()]).is_none());
    }

    #[test]
    fn saddle_normals_have_pole_ez() {
        let pts: Vec<Vec3> = [(-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)]
            .iter()
            .map(|&(x, y)| Vec3::new(x, y, 1.0).normalize())
            .collect();
        let p = hemisphere_pole(&pts).unwrap();
        assert!((p.into_inner() - Vec3::z()).norm() < 1e-12);
    }

    #[test]
    fn great_circle_is_infeasible() {
        let pts: Vec<Vec3> = (0..7)
            .map(|k| {
                let t = k as f64 * std::f64::consts::TAU / 7.0;
                Vec3::new(t.cos(), t.sin(), 0.0)
            })
            .collect();
        assert!(hemisphere_pole(&pts).is_none());
    }
}
