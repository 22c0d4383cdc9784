use super::{hemisphere_pole, Gnomonic, SphereError, SphericalPolygon};
use crate::geom::{Vec2, Vec3};
use crate::planar;

/// Kernel of a simple hemispherical polygon: the open set of points from
/// which every polygon point is visible along an interior arc. Stored as a
/// convex polygon in the gnomonic chart at the polygon's hemisphere pole.
#[derive(Debug, Clone)]
pub struct SphericalRegionKernel {
    chart: Gnomonic,
    outline: Vec<Vec2>,
}

impl SphericalRegionKernel {
    pub fn is_empty(&self) -> bool {
        self.outline.len() < 3
    }

    pub fn pole(&self) -> Vec3 {
        self.chart.pole
    }

    pub fn chart(&self) -> &Gnomonic {
        &self.chart
    }

    /// Counter-clockwise chart outline of the kernel's closure.
    pub fn chart_outline(&self) -> &[Vec2] {
        &self.outline
    }

    /// Kernel corners as unit vectors.
    pub fn vertices(&self) -> Vec<Vec3> {
        self.outline.iter().map(|q| self.chart.inverse(q)).collect()
    }

    /// Signed distance (in chart units) of `x` from the kernel boundary,
    /// positive inside.
    pub fn chart_margin(&self, x: &Vec3) -> f64 {
        if self.is_empty() || x.dot(&self.chart.pole) <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let q = self.chart.forward(x);
        let n = self.outline.len();
        (0..n)
            .map(|i| {
                let a = self.outline[i];
                let b = self.outline[(i + 1) % n];
                planar::orient(&a, &b, &q) / (b - a).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Strict membership in the (open) kernel.
    pub fn contains(&self, x: &Vec3) -> bool {
        let scale = planar::diameter(&self.outline).max(1e-300);
        self.chart_margin(x) > 1e-12 * scale
    }

    /// Normalized vertex average; falls back to the chart area centroid when
    /// the average is not strictly inside.
    pub fn center(&self) -> Option<Vec3> {
        if self.is_empty() {
            return None;
        }
        let avg = self.vertices().iter().fold(Vec3::zeros(), |s, p| s + p).normalize();
        if self.contains(&avg) {
            return Some(avg);
        }
        let c = self.chart.inverse(&planar::centroid(&self.outline));
        self.contains(&c).then_some(c)
    }
}

/// Kernel of a simple polygon contained in an open hemisphere, computed as a
/// half-plane intersection in the gnomonic chart (great arcs map to segments).
pub fn star_shape_kernel(poly: &SphericalPolygon) -> Result<SphericalRegionKernel, SphereError> {
    let simp = poly.is_simple();
    if let Some((i, j)) = simp.crossing {
        return Err(SphereError::NotSimple(i, j));
    }
    let pole = hemisphere_pole(poly.vertices()).ok_or(SphereError::NotHemispherical)?;
    let chart = Gnomonic::new(pole.into_inner());
    let pts: Vec<Vec2> = poly.vertices().iter().map(|p| chart.forward(p)).collect();
    let outline = planar::kernel(&pts);
    Ok(SphericalRegionKernel { chart, outline })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_polygon_kernel_is_itself() {
        let tri = SphericalPolygon::new(vec![Vec3::x(), Vec3::y(), Vec3::z()]).unwrap();
        let k = star_shape_kernel(&tri).unwrap();
        assert!(!k.is_empty());
        assert_eq!(k.vertices().len(), 3);
        let c = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert!(k.contains(&c));
        assert!((k.center().unwrap() - c).norm() < 1e-12);
    }

    #[test]
    fn bow_tie_is_rejected() {
        let b = SphericalPolygon::new(vec![
            Vec3::new(0.3, 0.3, 1.0),
            Vec3::new(-0.3, -0.3, 1.0),
            Vec3::new(0.3, -0.3, 1.0),
            Vec3::new(-0.3, 0.3, 1.0),
        ])
        .unwrap();
        assert!(matches!(star_shape_kernel(&b), Err(SphereError::NotSimple(..))));
    }

    #[test]
    fn u_shape_has_empty_kernel() {
        let u: Vec<Vec3> = [
            (0., 0.),
            (3., 0.),
            (3., 3.),
            (2., 3.),
            (2., 1.),
            (1., 1.),
            (1., 3.),
            (0., 3.),
        ]
        .iter()
        .map(|&(x, y)| Vec3::new(0.1 * (x - 1.5), 0.1 * (y - 1.5), 1.0))
        .collect();
        let p = SphericalPolygon::new(u).unwrap();
        assert!(star_shape_kernel(&p).unwrap().is_empty());
    }
}
