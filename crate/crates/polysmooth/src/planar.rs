//! Planar polygon routines: orientation, containment, kernels, hulls and
//! ear-clipping. Polygons are vertex cycles without a repeated closing vertex.

use crate::geom::Vec2;

pub fn cross2(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Twice the signed area of triangle `abc` (positive when counter-clockwise).
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> f64 {
    cross2(&(b - a), &(c - a))
}

pub fn signed_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| cross2(&poly[i], &poly[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Area centroid; falls back to the vertex average for degenerate input.
pub fn centroid(poly: &[Vec2]) -> Vec2 {
    let n = poly.len();
    let a = signed_area(poly);
    let avg = poly.iter().fold(Vec2::zeros(), |s, p| s + p) / n.max(1) as f64;
    if a.abs() < 1e-300 {
        return avg;
    }
    // shift to the vertex average to limit cancellation
    let mut c = Vec2::zeros();
    for i in 0..n {
        let p = poly[i] - avg;
        let q = poly[(i + 1) % n] - avg;
        c += (p + q) * cross2(&p, &q);
    }
    avg + c / (6.0 * a)
}

pub fn diameter(poly: &[Vec2]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in poly.iter().enumerate() {
        for q in &poly[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Outside,
    Boundary,
}

fn dist_point_segment(p: &Vec2, a: &Vec2, b: &Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Point-in-polygon by winding number; points within `eps` of an edge are
/// reported as `Boundary`.
pub fn locate(p: &Vec2, poly: &[Vec2], eps: f64) -> Containment {
    let n = poly.len();
    let mut wn = 0i32;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if dist_point_segment(p, a, b) <= eps {
            return Containment::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Closed-segment intersection test with an absolute tolerance.
pub fn segments_intersect(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2, eps: f64) -> bool {
    let scale = (b - a).norm().max((d - c).norm()).max(1e-300);
    let o1 = orient(a, b, c) / scale;
    let o2 = orient(a, b, d) / scale;
    let o3 = orient(c, d, a) / scale;
    let o4 = orient(c, d, b) / scale;
    if ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps))
        && ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps))
    {
        return true;
    }
    dist_point_segment(c, a, b) <= eps
        || dist_point_segment(d, a, b) <= eps
        || dist_point_segment(a, c, d) <= eps
        || dist_point_segment(b, c, d) <= eps
}

/// True when no two non-adjacent edges touch and adjacent edges do not fold back.
pub fn is_simple(poly: &[Vec2], eps: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (b - a).norm() <= eps {
            return false;
        }
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let c = poly[j];
            let d = poly[(j + 1) % n];
            if adjacent {
                // shared vertex; reject overlap along a common line
                let (s, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let u = (p - s).normalize();
                let w = (q - s).normalize();
                if cross2(&u, &w).abs() <= 1e-12 && u.dot(&w) > 0.0 {
                    return false;
                }
                continue;
            }
            if segments_intersect(&a, &b, &c, &d, eps) {
                return false;
            }
        }
    }
    true
}

/// Keeps the part of a convex polygon on the left of the directed line `a → b`.
pub fn clip_left(poly: &[Vec2], a: &Vec2, b: &Vec2) -> Vec<Vec2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    let dir = b - a;
    let side = |p: &Vec2| cross2(&dir, &(p - a));
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let sp = side(&p);
        let sq = side(&q);
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            let t = sp / (sp - sq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Kernel of a simple polygon: the intersection of the inner half-planes of
/// its edges. Returned counter-clockwise; empty when it has no interior.
pub fn kernel(poly: &[Vec2]) -> Vec<Vec2> {
    let mut ccw: Vec<Vec2> = poly.to_vec();
    if signed_area(&ccw) < 0.0 {
        ccw.reverse();
    }
    let n = ccw.len();
    let (mut lo, mut hi) = (ccw[0], ccw[0]);
    for p in &ccw {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    let pad = (hi - lo).norm() + 1.0;
    lo -= Vec2::new(pad, pad);
    hi += Vec2::new(pad, pad);
    let mut k = vec![lo, Vec2::new(hi.x, lo.y), hi, Vec2::new(lo.x, hi.y)];
    for i in 0..n {
        k = clip_left(&k, &ccw[i], &ccw[(i + 1) % n]);
        if k.len() < 3 {
            return Vec::new();
        }
    }
    let scale = diameter(&ccw).max(1e-300);
    if signed_area(&k) <= 1e-14 * scale * scale {
        return Vec::new();
    }
    dedup_cycle(k, 1e-14 * scale)
}

fn dedup_cycle(mut pts: Vec<Vec2>, eps: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(pts.len());
    for p in pts.drain(..) {
        if out.last().is_none_or(|q| (p - q).norm() > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= eps {
        out.pop();
    }
    out
}

/// Counter-clockwise convex hull (Andrew's monotone chain); collinear points dropped.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Separating-axis test for two convex point sets given as hull cycles.
/// Sets that merely touch (within `eps`) count as intersecting.
pub fn convex_sets_disjoint(a: &[Vec2], b: &[Vec2], eps: f64) -> bool {
    let axes = |h: &[Vec2]| -> Vec<Vec2> {
        let n = h.len();
        match n {
            0 => vec![],
            1 => vec![],
            2 => {
                let d = h[1] - h[0];
                vec![Vec2::new(-d.y, d.x), d]
            }
            _ => (0..n)
                .map(|i| {
                    let d = h[(i + 1) % n] - h[i];
                    Vec2::new(-d.y, d.x)
                })
                .collect(),
        }
    };
    let mut candidates = axes(a);
    candidates.extend(axes(b));
    if a.len() == 1 && b.len() == 1 {
        return (a[0] - b[0]).norm() > eps;
    }
    if a.len() == 1 || b.len() == 1 {
        let d = if a.len() == 1 { b[0] - a[0] } else { a[0] - b[0] };
        candidates.push(d);
    }
    for ax in candidates {
        let len = ax.norm();
        if len == 0.0 {
            continue;
        }
        let ax = ax / len;
        let (amin, amax) = project(a, &ax);
        let (bmin, bmax) = project(b, &ax);
        if amax < bmin - eps || bmax < amin - eps {
            return true;
        }
    }
    false
}

fn project(h: &[Vec2], ax: &Vec2) -> (f64, f64) {
    h.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let t = p.dot(ax);
        (lo.min(t), hi.max(t))
    })
}

/// Ear-clipping triangulation of a simple polygon. The first ear is searched
/// starting from `start`, which makes the output deterministic for a given
/// anchor. Triangles are index triples into `poly`, counter-clockwise when the
/// polygon is.
pub fn ear_clip(poly: &[Vec2], start: usize) -> Vec<[usize; 3]> {
    let n = poly.len();
    let mut idx: Vec<usize> = (0..n).map(|k| (start + k) % n).collect();
    let sgn = if signed_area(poly) >= 0.0 { 1.0 } else { -1.0 };
    let mut tris = Vec::with_capacity(n.saturating_sub(2));
    let mut guard = 0;
    while idx.len() > 3 && guard < n * n {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, ic, inx) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (p, c, q) = (poly[ip], poly[ic], poly[inx]);
            if sgn * orient(&p, &c, &q) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                j != ip && j != ic && j != inx && {
                    let x = poly[j];
                    sgn * orient(&p, &c, &x) >= 0.0
                        && sgn * orient(&c, &q, &x) >= 0.0
                        && sgn * orient(&q, &p, &x) >= 0.0
                }
            });
            if blocked {
                continue;
            }
            tris.push([ip, ic, inx]);
            idx.remove(k);
            clipped = true;
            break;
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        tris.push([idx[0], idx[1], idx[2]]);
    }
    tris
}

pub fn is_convex(poly: &[Vec2]) -> bool {
    let n = poly.len();
    let s = signed_area(poly).signum();
    (0..n).all(|i| s * orient(&poly[i], &poly[(i + 1) % n], &poly[(i + 2) % n]) > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn kernel_of_square_is_square() {
        let sq = vec![v(0., 0.), v(1., 0.), v(1., 1.), v(0., 1.)];
        let k = kernel(&sq);
        assert!((signed_area(&k) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_of_two_spikes_is_empty() {
        // a "U" shape: the two prongs cannot see each other's tips
        let u = vec![
            v(0., 0.),
            v(3., 0.),
            v(3., 3.),
            v(2., 3.),
            v(2., 1.),
            v(1., 1.),
            v(1., 3.),
            v(0., 3.),
        ];
        assert!(kernel(&u).is_empty());
    }

    #[test]
    fn kernel_of_dart() {
        let dart = vec![v(0., 0.), v(2., -1.), v(0., 3.), v(-2., -1.)];
        let k = kernel(&dart);
        assert!(!k.is_empty());
        assert!(signed_area(&k) < signed_area(&dart));
    }

    #[test]
    fn ear_clip_covers_area() {
        let u = vec![
            v(0., 0.),
            v(3., 0.),
            v(3., 3.),
            v(2., 3.),
            v(2., 1.),
            v(1., 1.),
            v(1., 3.),
            v(0., 3.),
        ];
        let tris = ear_clip(&u, 5);
        assert_eq!(tris.len(), 6);
        let area: f64 = tris.iter().map(|t| orient(&u[t[0]], &u[t[1]], &u[t[2]]) * 0.5).sum();
        assert!((area - signed_area(&u)).abs() < 1e-12);
        assert!(tris.iter().all(|t| orient(&u[t[0]], &u[t[1]], &u[t[2]]) > 0.0));
    }

    #[test]
    fn hull_and_separation() {
        let h = convex_hull(&[v(0., 0.), v(1., 0.), v(0.5, 0.2), v(0., 1.), v(1., 1.)]);
        assert_eq!(h.len(), 4);
        let g: Vec<Vec2> = h.iter().map(|p| p + v(3., 0.)).collect();
        assert!(convex_sets_disjoint(&h, &g, 1e-12));
        let g: Vec<Vec2> = h.iter().map(|p| p + v(0.5, 0.)).collect();
        assert!(!convex_sets_disjoint(&h, &g, 1e-12));
    }

    #[test]
    fn locate_points() {
        let sq = vec![v(0., 0.), v(1., 0.), v(1., 1.), v(0., 1.)];
        assert_eq!(locate(&v(0.5, 0.5), &sq, 1e-12), Containment::Inside);
        assert_eq!(locate(&v(1.5, 0.5), &sq, 1e-12), Containment::Outside);
        assert_eq!(locate(&v(1.0, 0.5), &sq, 1e-12), Containment::Boundary);
    }

    #[test]
    fn simple_polygons() {
        let bow = vec![v(0., 0.), v(1., 1.), v(1., 0.), v(0., 1.)];
        assert!(!is_simple(&bow, 1e-12));
        let sq = vec![v(0., 0.), v(1., 0.), v(1., 1.), v(0., 1.)];
        assert!(is_simple(&sq, 1e-12));
    }
}
