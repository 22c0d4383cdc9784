use super::{bad, FixtureError};
use crate::geom::{Vec2, Vec3};
use crate::mesh::Mesh;
use nalgebra::Matrix3;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

/// Height functions for graph meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]

pub enum Surface {
    /// `z = x² − y²`
    Saddle,
    /// `z = x³ − 3xy²`
    Monkey,
    /// `z = −(x² + y²)`
    Dome,
    /// `z = x³ + y²`, parabolic along `x = 0` with a fold of the Gauss map;
    /// graph meshes keep their lattice columns off that line
    Fold,
}

impl Surface {
    pub fn height(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::Saddle => x * x - y * y,
            Self::Monkey => x * x * x - 3.0 * x * y * y,
            Self::Dome => -(x * x + y * y),
            Self::Fold => x * x * x + y * y,
        }
    }

    pub fn gradient(&self, x: f64, y: f64) -> Vec2 {
        match self {
            Self::Saddle => Vec2::new(2.0 * x, -2.0 * y),
            Self::Monkey => Vec2::new(3.0 * x * x - 3.0 * y * y, -6.0 * x * y),
            Self::Dome => Vec2::new(-2.0 * x, -2.0 * y),
            Self::Fold => Vec2::new(3.0 * x * x, 2.0 * y),
        }
    }

    fn lift(&self, p: Vec2) -> Vec3 {
        Vec3::new(p.x, p.y, self.height(p.x, p.y))
    }
}

impl FromStr for Surface {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "saddle" => Ok(Self::Saddle),
            "monkey" => Ok(Self::Monkey),
            "dome" => Ok(Self::Dome),
            "fold" => Ok(Self::Fold),
            _ => Err(format!("unknown surface `{s}`")),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Saddle => "saddle",
            Self::Monkey => "monkey",
            Self::Dome => "dome",
            Self::Fold => "fold",
        })
    }
}

/// Triangulations of the plane used for graph meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tiling {
    /// Edges along `x ± y = const` and the `x` axis.
    A,
    /// Sheared lattice spanned by `(1,0)` and `(0.5,0.3)`.
    B,
    /// Equilateral lattice.
    C,
}

impl Tiling {
    /// Lattice basis; triangles are `(p, p+a, p+a+b)` and `(p, p+a+b, p+b)`
    /// for tiling A and `(p, p+a, p+b)`, `(p+a, p+a+b, p+b)` otherwise.
    fn basis(&self) -> (Vec2, Vec2) {
        match self {
            Self::A => (Vec2::new(1.0, -1.0), Vec2::new(1.0, 1.0)),
            Self::B => (Vec2::new(1.0, 0.0), Vec2::new(0.5, 0.3)),
            Self::C => (Vec2::new(1.0, 0.0), Vec2::new(0.5, 3f64.sqrt() / 2.0)),
        }
    }
}

impl FromStr for Tiling {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            "c" | "C" => Ok(Self::C),
            _ => Err(format!("unknown tiling `{s}`")),
        }
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
        })
    }
}

/// Lattice points `i·a + j·b` for `0 ≤ i, j ≤ n`, centred at the origin and
/// scaled so that the patch has unit size.
fn lattice(a: Vec2, b: Vec2, n: usize) -> impl Fn(usize, usize) -> Vec2 {
    let h = 1.0 / n as f64;
    let c = (a + b) * (n as f64 / 2.0);
    move |i, j| (a * i as f64 + b * j as f64 - c) * h
}

/// Triangulated graph of `surface` over an `n × n` patch of `tiling`.
pub fn graph_mesh(surface: Surface, tiling: Tiling, n: usize) -> Result<Mesh, FixtureError> {
    if !(2..=200).contains(&n) {
        return Err(bad("grid size must be between 2 and 200"));
    }
    let (a, b) = tiling.basis();
    let at = lattice(a, b, n);
    let id = |i: usize, j: usize| i * (n + 1) + j;
    let mut grid = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            grid.push(at(i, j));
        }
    }
    if surface == Surface::Fold {
        // keep lattice columns off the parabolic line x = 0
        let mut xs: Vec<f64> = grid.iter().map(|p| p.x).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let k = xs.iter().rposition(|&x| x <= 1e-12).unwrap_or(0);
        let gap = xs.get(k + 1).map_or(1.0 / n as f64, |x| x - xs[k]);
        let dx = xs[k] + 0.2 * gap;
        grid.iter_mut().for_each(|p| p.x -= dx);
    }
    let positions: Vec<Vec3> = grid.into_iter().map(|p| surface.lift(p)).collect();
    let mut faces = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (p, pa, pb, pab) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            if tiling == Tiling::A {
                faces.push(vec![p, pa, pab]);
                faces.push(vec![p, pab, pb]);
            } else {
                faces.push(vec![p, pa, pb]);
                faces.push(vec![pa, pab, pb]);
            }
        }
    }
    Ok(Mesh::new(positions, faces)?)
}

/// Convex dome `z = −(x² + y²)` over the equilateral lattice.
pub fn convex_cap(n: usize) -> Result<Mesh, FixtureError> {
    graph_mesh(Surface::Dome, Tiling::C, n)
}

/// Hexagonal mesh with three faces per vertex: every face lies in the
/// tangent plane of `surface` at a lattice point and every vertex is the
/// common point of three neighbouring tangent planes.
pub fn hex_graph_mesh(surface: Surface, n: usize) -> Result<Mesh, FixtureError> {
    if !(3..=100).contains(&n) {
        return Err(bad("grid size must be between 3 and 100"));
    }
    let (a, b) = (Vec2::new(1.0, 0.0), Vec2::new(0.5, 3f64.sqrt() / 2.0));
    let at = lattice(a, b, n);
    let tangent = |p: Vec2| {
        let g = surface.gradient(p.x, p.y);
        // -gx·x − gy·y + z = f(p) − g·p
        ([-g.x, -g.y, 1.0], surface.height(p.x, p.y) - g.dot(&p))
    };
    let meet = |pts: [Vec2; 3]| -> Option<Vec3> {
        let rows: Vec<([f64; 3], f64)> = pts.iter().map(|&p| tangent(p)).collect();
        let m = Matrix3::from_fn(|r, c| rows[r].0[c]);
        let rhs = Vec3::new(rows[0].1, rows[1].1, rows[2].1);
        m.lu().solve(&rhs)
    };
    // triangle (i, j, up) has corners (i,j),(i+1,j),(i,j+1); down has
    // (i+1,j),(i+1,j+1),(i,j+1)
    let tri = |i: usize, j: usize, up: bool| -> [Vec2; 3] {
        if up {
            [at(i, j), at(i + 1, j), at(i, j + 1)]
        } else {
            [at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]
        }
    };
    let mut index = std::collections::BTreeMap::new();
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    for i in 1..n {
        for j in 1..n {
            // triangles around (i,j) in counter-clockwise order
            let around = [
                (i, j, true),
                (i - 1, j, false),
                (i - 1, j, true),
                (i - 1, j - 1, false),
                (i, j - 1, true),
                (i, j - 1, false),
            ];
            let mut face = Vec::with_capacity(6);
            for key in around {
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        let p = meet(tri(key.0, key.1, key.2))
                            .ok_or_else(|| bad("tangent planes do not meet in a point"))?;
                        positions.push(p);
                        index.insert(key, positions.len() - 1);
                        positions.len() - 1
                    }
                };
                face.push(v);
            }
            faces.push(face);
        }
    }
    Ok(Mesh::new(positions, faces)?)
}

/// Triangulated torus with major radius `major` and minor radius `minor`.
///
/// Vertex `(i, j)` sits at `u = 2πi/nu`, `v = 2π(j + off + i/2)/nv`, so the
/// `v` rings wind half a turn around the tube. Going once around `u` shifts
/// `j` by `nu/2`. This keeps ring edges off the asymptotic direction along
/// the parabolic circles. Best results when the `u` step is the longer one.
pub fn torus(major: f64, minor: f64, nu: usize, nv: usize) -> Result<Mesh, FixtureError> {
    torus_with(major, minor, nu, nv, 0.0)
}

pub fn torus_with(major: f64, minor: f64, nu: usize, nv: usize, off: f64) -> Result<Mesh, FixtureError> {
    if !(major.is_finite() && minor.is_finite() && minor > 0.0 && major > minor) {
        return Err(bad("torus needs 0 < r < R"));
    }
    if nu < 4 || nv < 4 || nu > 1000 || nv > 1000 || !nu.is_multiple_of(2) {
        return Err(bad("torus needs even 4 <= nu <= 1000 and 4 <= nv <= 1000"));
    }
    if !off.is_finite() {
        return Err(bad("torus offset must be finite"));
    }
    let twist = nu / 2;
    let id = |i: usize, j: usize| {
        if i >= nu {
            (i - nu) * nv + (j + twist) % nv
        } else {
            i * nv + j % nv
        }
    };
    let mut positions = vec![Vec3::zeros(); nu * nv];
    for i in 0..nu {
        for j in 0..nv {
            let u = TAU * i as f64 / nu as f64;
            let v = TAU * (j as f64 + off + (i * twist) as f64 / nu as f64) / nv as f64;
            let rho = major + minor * v.cos();
            positions[id(i, j)] = Vec3::new(rho * u.cos(), rho * u.sin(), minor * v.sin());
        }
    }
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            faces.push(vec![a, b, d]);
            faces.push(vec![b, c, d]);
        }
    }
    Ok(Mesh::new(positions, faces)?)
}

pub(super) fn monkey_patch() -> Mesh {
    monkey_patch_with(MONKEY.0, MONKEY.1, MONKEY.2)
}

const MONKEY: (f64, f64, f64) = (0.3, 0.8, 1.0);

/// Central triangle `A₀A₁A₂` at radius `rho` on `z = x³ − 3xy²` with a ring
/// of triangles through points `B_k` (radius `rb`, between the `A`) and
/// `C_k` (radius `rc`, beyond the `A`).
pub fn monkey_patch_with(rho: f64, rb: f64, rc: f64) -> Mesh {
    let s = Surface::Monkey;
    let polar = |r: f64, deg: f64| {
        let t = deg * PI / 180.0;
        s.lift(Vec2::new(r * t.cos(), r * t.sin()))
    };
    let mut positions = Vec::with_capacity(9);
    for k in 0..3 {
        let t = 120.0 * k as f64;
        positions.push(polar(rho, t));
        positions.push(polar(rb, t + 60.0));
        positions.push(polar(rc, t));
    }
    let a = |k: usize| 3 * (k % 3);
    let bb = |k: usize| 3 * (k % 3) + 1;
    let c = |k: usize| 3 * (k % 3) + 2;
    let mut faces = vec![vec![a(0), a(1), a(2)]];
    for k in 0..3 {
        faces.push(vec![a(k), bb(k), a(k + 1)]);
        faces.push(vec![a(k), c(k), bb(k)]);
        faces.push(vec![a(k), bb(k + 2), c(k)]);
    }
    Mesh::new(positions, faces).expect("monkey patch is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_meshes_build() {
        for t in [Tiling::A, Tiling::B, Tiling::C] {
            let m = graph_mesh(Surface::Saddle, t, 4).unwrap();
            assert_eq!(m.num_vertices(), 25);
            assert_eq!(m.num_faces(), 32);
            assert_eq!(m.interior_vertices().len(), 9);
        }
    }

    #[test]
    fn torus_is_closed() {
        let m = torus(2.0, 1.0, 12, 12).unwrap();
        assert!(m.is_closed());
        assert_eq!(m.num_faces(), 288);
        assert!(torus(1.0, 2.0, 12, 12).is_err());
    }

    #[test]
    fn hex_faces_lie_in_tangent_planes() {
        let m = hex_graph_mesh(Surface::Saddle, 5).unwrap();
        for f in 0..m.num_faces() {
            assert_eq!(m.face(f).len(), 6);
            assert!(m.face_plane(f).residual < 1e-9);
        }
    }
}
