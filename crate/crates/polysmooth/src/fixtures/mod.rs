//! Deterministic generators for analytic test surfaces.

mod surfaces;

use crate::geom::Vec3;
use crate::mesh::{Mesh, MeshError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub use surfaces::{convex_cap, graph_mesh, hex_graph_mesh, monkey_patch_with, torus, torus_with, Surface, Tiling};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("generated mesh is invalid: {0}")]
    Mesh(#[from] MeshError),
}

fn bad(msg: impl Into<String>) -> FixtureError {
    FixtureError::BadParameters(msg.into())
}

/// A named fixture with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FixtureSpec {
    CubeCorner,
    TetraApex,
    SaddleStar { h: f64 },
    HexSaddle,
    MonkeyStar,
    GraphMesh { surface: Surface, tiling: Tiling, n: usize },
    HexGraphMesh { surface: Surface, n: usize },
    Torus { major: f64, minor: f64, nu: usize, nv: usize },
    ConvexCap { n: usize },
    PseudoDigonStar,
    PseudoTriangleAStar,
    PseudoTriangleBStar,
    AntipodalStar,
    NonStarShapedStar,
    RandomStar { valence: usize, seed: u64 },
}

impl FixtureSpec {
    pub const NAMES: [&'static str; 15] = [
        "cube_corner",
        "tetra_apex",
        "saddle_star",
        "hex_saddle",
        "monkey_star",
        "graph_mesh",
        "hex_graph_mesh",
        "torus",
        "convex_cap",
        "pseudo_digon_star",
        "pseudo_triangle_a_star",
        "pseudo_triangle_b_star",
        "antipodal_star",
        "non_star_shaped_star",
        "random_star",
    ];

    /// Builds a spec from a fixture name and `key=value` parameters.
    /// Missing parameters take their defaults.
    pub fn parse<'a>(
        name: &str,
        params: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, FixtureError> {
        let mut kv = BTreeMap::new();
        for p in params {
            let (k, v) = p.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{p}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut take = |key: &str| kv.remove(key);
        fn num<T: FromStr>(key: &str, v: Option<String>, default: T) -> Result<T, FixtureError> {
            match v {
                None => Ok(default),
                Some(s) => s.parse().map_err(|_| bad(format!("invalid value `{s}` for `{key}`"))),
            }
        }
        let spec = match name {
            "cube_corner" | "cube" => Self::CubeCorner,
            "tetra_apex" | "tetrahedron" => Self::TetraApex,
            "saddle_star" => Self::SaddleStar { h: num("h", take("h"), 1.0)? },
            "hex_saddle" => Self::HexSaddle,
            "monkey_star" => Self::MonkeyStar,
            "graph_mesh" => Self::GraphMesh {
                surface: num("surface", take("surface"), Surface::Saddle)?,
                tiling: num("tiling", take("tiling"), Tiling::C)?,
                n: num("n", take("n"), 8)?,
            },
            "hex_graph_mesh" => Self::HexGraphMesh {
                surface: num("surface", take("surface"), Surface::Saddle)?,
                n: num("n", take("n"), 6)?,
            },
            "torus" => Self::Torus {
                major: num("R", take("R"), 2.0)?,
                minor: num("r", take("r"), 1.0)?,
                nu: num("nu", take("nu"), 12)?,
                nv: num("nv", take("nv"), 12)?,
            },
            "convex_cap" => Self::ConvexCap { n: num("n", take("n"), 4)? },
            "pseudo_digon_star" => Self::PseudoDigonStar,
            "pseudo_triangle_a_star" => Self::PseudoTriangleAStar,
            "pseudo_triangle_b_star" => Self::PseudoTriangleBStar,
            "antipodal_star" => Self::AntipodalStar,
            "non_star_shaped_star" => Self::NonStarShapedStar,
            "random_star" => Self::RandomStar {
                valence: num("valence", take("valence"), 6)?,
                seed: num("seed", take("seed"), 0)?,
            },
            other => return Err(bad(format!("unknown fixture `{other}`"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(bad(format!("unknown parameter `{k}` for `{name}`")));
        }
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::CubeCorner => "cube_corner",
            Self::TetraApex => "tetra_apex",
            Self::SaddleStar { .. } => "saddle_star",
            Self::HexSaddle => "hex_saddle",
            Self::MonkeyStar => "monkey_star",
            Self::GraphMesh { .. } => "graph_mesh",
            Self::HexGraphMesh { .. } => "hex_graph_mesh",
            Self::Torus { .. } => "torus",
            Self::ConvexCap { .. } => "convex_cap",
            Self::PseudoDigonStar => "pseudo_digon_star",
            Self::PseudoTriangleAStar => "pseudo_triangle_a_star",
            Self::PseudoTriangleBStar => "pseudo_triangle_b_star",
            Self::AntipodalStar => "antipodal_star",
            Self::NonStarShapedStar => "non_star_shaped_star",
            Self::RandomStar { .. } => "random_star",
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            Self::SaddleStar { h } => write!(f, " h={h}"),
            Self::GraphMesh { surface, tiling, n } => write!(f, " surface={surface} tiling={tiling} n={n}"),
            Self::HexGraphMesh { surface, n } => write!(f, " surface={surface} n={n}"),
            Self::Torus { major, minor, nu, nv } => write!(f, " R={major} r={minor} nu={nu} nv={nv}"),
            Self::ConvexCap { n } => write!(f, " n={n}"),
            Self::RandomStar { valence, seed } => write!(f, " valence={valence} seed={seed}"),
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &FixtureSpec) -> Result<Mesh, FixtureError> {
    match *spec {
        FixtureSpec::CubeCorner => Ok(cube_corner()),
        FixtureSpec::TetraApex => Ok(tetra_apex()),
        FixtureSpec::SaddleStar { h } => {
            if !(h.is_finite() && h > 0.0) {
                return Err(bad("saddle height must be positive"));
            }
            Ok(saddle_star(h))
        }
        FixtureSpec::HexSaddle => Ok(hex_saddle()),
        FixtureSpec::MonkeyStar => Ok(monkey_star()),
        FixtureSpec::GraphMesh { surface, tiling, n } => graph_mesh(surface, tiling, n),
        FixtureSpec::HexGraphMesh { surface, n } => hex_graph_mesh(surface, n),
        FixtureSpec::Torus { major, minor, nu, nv } => torus(major, minor, nu, nv),
        FixtureSpec::ConvexCap { n } => convex_cap(n),
        FixtureSpec::PseudoDigonStar => Ok(pseudo_digon_star()),
        FixtureSpec::PseudoTriangleAStar => Ok(pseudo_triangle_a_star()),
        FixtureSpec::PseudoTriangleBStar => Ok(pseudo_triangle_b_star()),
        FixtureSpec::AntipodalStar => Ok(antipodal_star()),
        FixtureSpec::NonStarShapedStar => Ok(non_star_shaped_star()),
        FixtureSpec::RandomStar { valence, seed } => {
            if !(3..=64).contains(&valence) {
                return Err(bad("valence must be between 3 and 64"));
            }
            Ok(random_star(valence, seed))
        }
    }
}

/// Vertex star around the origin (vertex 0). Face `i` spans rays `i` and
/// `i+1`; a `Some(c)` entry turns it into a quad with a reflex angle at the
/// center, closed by the point `−c·(r̂_i + r̂_{i+1})`.
pub fn star_mesh(rays: &[Vec3], reflex: &[Option<f64>]) -> Result<Mesh, MeshError> {
    let n = rays.len();
    let mut positions = vec![Vec3::zeros()];
    positions.extend_from_slice(rays);
    let mut faces = Vec::with_capacity(n);
    for i in 0..n {
        let a = i + 1;
        let b = (i + 1) % n + 1;
        match reflex.get(i).copied().flatten() {
            None => faces.push(vec![0, a, b]),
            Some(c) => {
                let x = -c * (rays[i].normalize() + rays[(i + 1) % n].normalize());
                positions.push(x);
                faces.push(vec![0, a, positions.len() - 1, b]);
            }
        }
    }
    Mesh::new(positions, faces)
}

fn triangle_star(rays: &[Vec3]) -> Mesh {
    star_mesh(rays, &[]).expect("fixture star is valid")
}

/// Closed axis-aligned unit cube; vertex 0 is the corner at the origin.
pub fn cube_corner() -> Mesh {
    let p = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
    let positions = vec![
        p(0., 0., 0.),
        p(1., 0., 0.),
        p(1., 1., 0.),
        p(0., 1., 0.),
        p(0., 0., 1.),
        p(1., 0., 1.),
        p(1., 1., 1.),
        p(0., 1., 1.),
    ];
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    Mesh::new(positions, faces).expect("cube is valid")
}

/// Closed regular tetrahedron; vertex 0 is the apex.
pub fn tetra_apex() -> Mesh {
    let s = 1.0 / 2f64.sqrt();
    let positions = vec![
        Vec3::new(1.0, 0.0, -s),
        Vec3::new(-1.0, 0.0, -s),
        Vec3::new(0.0, 1.0, s),
        Vec3::new(0.0, -1.0, s),
    ];
    let faces = vec![vec![0, 2, 1], vec![0, 1, 3], vec![0, 3, 2], vec![1, 2, 3]];
    Mesh::new(positions, faces).expect("tetrahedron is valid")
}

/// Four-valent saddle with neighbours `(±1,0,h)` and `(0,±1,−h)`.
pub fn saddle_star(h: f64) -> Mesh {
    triangle_star(&[
        Vec3::new(1.0, 0.0, h),
        Vec3::new(0.0, 1.0, -h),
        Vec3::new(-1.0, 0.0, h),
        Vec3::new(0.0, -1.0, -h),
    ])
}

/// Six-valent star sampled from `z = x² − y²`, rotated off the symmetric
/// position so that no edge is an asymptotic line.
pub fn hex_saddle() -> Mesh {
    let rays: Vec<Vec3> = (0..6)
        .map(|k| {
            let t = 0.2 + k as f64 * PI / 3.0;
            let (x, y) = (t.cos(), t.sin());
            Vec3::new(x, y, x * x - y * y)
        })
        .collect();
    triangle_star(&rays)
}

/// Face-centred patch of `z = x³ − 3xy²`: a central triangle whose three
/// vertices have negative curvature and whose Gauss images wind twice
/// around its normal.
pub fn monkey_star() -> Mesh {
    surfaces::monkey_patch()
}

fn reflex_star(rays: &[[f64; 3]], reflex: &[Option<f64>]) -> Mesh {
    let rays: Vec<Vec3> = rays.iter().map(|r| Vec3::new(r[0], r[1], r[2])).collect();
    star_mesh(&rays, reflex).expect("fixture star is valid")
}

/// Star with one reflex face that is not an inflection face; its Gauss
/// image is a pseudo-triangle with two inflection corners.
pub fn pseudo_triangle_b_star() -> Mesh {
    let (rays, reflex) = special::PT_B;
    reflex_star(rays, reflex)
}

/// Star with one reflex inflection face and four inflection faces.
pub fn pseudo_triangle_a_star() -> Mesh {
    let (rays, reflex) = special::PT_A;
    reflex_star(rays, reflex)
}

/// Star with two reflex faces; the Gauss image is a pseudo-digon.
pub fn pseudo_digon_star() -> Mesh {
    let (rays, reflex) = special::DIGON;
    reflex_star(rays, reflex)
}

/// Negatively curved star whose simple Gauss image contains a pair of
/// antipodal points.
pub fn antipodal_star() -> Mesh {
    let (rays, reflex) = special::ANTIPODAL;
    reflex_star(rays, reflex)
}

/// Negatively curved pseudo-quadrilateral star whose Gauss image lies in a
/// hemisphere but is not star-shaped with respect to its hemisphere pole.
pub fn non_star_shaped_star() -> Mesh {
    let (rays, reflex) = special::NON_STAR;
    reflex_star(rays, reflex)
}

/// A direction `n` such that both `n` and `−n` lie inside the Gauss image
/// of [`antipodal_star`].
pub fn antipodal_star_normal() -> Vec3 {
    Vec3::new(ANTIPODAL_NORMAL[0], ANTIPODAL_NORMAL[1], ANTIPODAL_NORMAL[2]).normalize()
}

const ANTIPODAL_NORMAL: [f64; 3] = [0.30, 0.85, -0.42];

/// Random triangulated star of the given valence: sorted random azimuths
/// with bounded gaps, random radii and heights.
pub fn random_star(valence: usize, seed: u64) -> Mesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut t: Vec<f64> = (0..valence).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let gaps_ok = (0..valence).all(|i| {
            let next = if i + 1 == valence { t[0] + 2.0 * PI } else { t[i + 1] };
            let g = next - t[i];
            g > 0.15 && g < PI - 0.15
        });
        if !gaps_ok {
            continue;
        }
        let rays: Vec<Vec3> = t
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.5..1.5);
                Vec3::new(r * a.cos(), r * a.sin(), rng.gen_range(-1.0..1.0))
            })
            .collect();
        if let Ok(m) = star_mesh(&rays, &[]) {
            return m;
        }
    }
}

/// Star geometries found by a seeded search over random rays and verified
/// by the tests below: simple Gauss image, embedded link, target class.
mod special {
    pub type Star = (&'static [[f64; 3]], &'static [Option<f64>]);

    pub const PT_B: Star = (
        &[
            [0.83, 0.56, -0.98],
            [-0.99, -0.17, -1.31],
            [-0.98, -0.17, 0.73],
            [-0.96, -0.27, 0.20],
            [-0.04, -1.00, -0.56],
            [0.15, -0.99, -0.43],
        ],
        &[None, None, None, None, None, Some(0.8)],
    );

    pub const PT_A: Star = (
        &[
            [0.89, 0.46, -0.31],
            [0.20, 0.98, 1.60],
            [-0.33, 0.95, -2.38],
            [-0.44, 0.90, -2.12],
            [-0.90, 0.44, -1.11],
            [-0.99, -0.17, -0.09],
        ],
        &[None, None, None, None, None, Some(0.39)],
    );

    pub const DIGON: Star = (
        &[
            [0.95, 0.30, -1.95],
            [-0.78, 0.63, 0.99],
            [-0.81, 0.59, -1.09],
            [-0.98, -0.19, -2.49],
            [0.90, -0.44, 2.35],
            [0.99, -0.14, 2.41],
        ],
        &[Some(1.39), None, None, Some(1.17), None, None],
    );

    pub const ANTIPODAL: Star = (
        &[
            [-0.99, -0.14, -1.25],
            [-0.85, -0.53, -1.41],
            [0.85, -0.52, -1.90],
            [0.96, -0.27, -0.09],
            [0.99, -0.15, 1.15],
        ],
        &[None, None, Some(1.41), None, None],
    );

    pub const NON_STAR: Star = (
        &[
            [0.37, 0.93, 1.57],
            [-0.21, 0.98, 0.18],
            [-0.63, -0.78, -1.04],
            [0.13, -0.99, 0.35],
            [0.48, -0.88, 0.79],
            [0.75, -0.66, -2.39],
        ],
        &[None, None, None, None, None, None],
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{export_mesh, MeshFormat};

    #[test]
    fn parse_specs() {
        assert_eq!(FixtureSpec::parse("saddle_star", ["h=2"]).unwrap(), FixtureSpec::SaddleStar { h: 2.0 });
        assert_eq!(
            FixtureSpec::parse("graph_mesh", ["tiling=b", "n=4"]).unwrap(),
            FixtureSpec::GraphMesh { surface: Surface::Saddle, tiling: Tiling::B, n: 4 }
        );
        assert!(FixtureSpec::parse("graph_mesh", ["tiling=q"]).is_err());
        assert!(FixtureSpec::parse("nope", []).is_err());
        assert!(FixtureSpec::parse("cube_corner", ["n=3"]).is_err());
    }

    #[test]
    fn display_round_trips() {
        let s = FixtureSpec::Torus { major: 2.0, minor: 1.0, nu: 12, nv: 10 };
        let text = s.to_string();
        let mut it = text.split_whitespace();
        let name = it.next().unwrap();
        assert_eq!(FixtureSpec::parse(name, it).unwrap(), s);
    }

    #[test]
    fn generation_is_deterministic() {
        for spec in [
            FixtureSpec::RandomStar { valence: 7, seed: 3 },
            FixtureSpec::GraphMesh { surface: Surface::Saddle, tiling: Tiling::B, n: 4 },
        ] {
            let a = export_mesh(&generate(&spec).unwrap(), MeshFormat::Obj);
            let b = export_mesh(&generate(&spec).unwrap(), MeshFormat::Obj);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn closed_solids() {
        assert!(cube_corner().is_closed());
        assert!(tetra_apex().is_closed());
    }

    fn analysis(m: &Mesh) -> crate::curvature::VertexAnalysis {
        crate::curvature::VertexAnalysis::new(m.vertex_star(0).unwrap()).unwrap()
    }

    #[test]
    fn special_stars_hit_their_classes() {
        use crate::curvature::{classify, smoothness, VertexClass};
        let cases = [
            (pseudo_triangle_b_star(), VertexClass::PseudoTriangleB, true),
            (pseudo_triangle_a_star(), VertexClass::PseudoTriangleA, true),
            (pseudo_digon_star(), VertexClass::PseudoDigon, false),
        ];
        for (m, class, smooth) in cases {
            let a = analysis(&m);
            assert_eq!(classify(&a).unwrap().class, class);
            assert_eq!(smoothness(&a).is_smooth(), smooth, "{class:?}");
        }
        let a = analysis(&non_star_shaped_star());
        assert_eq!(classify(&a).unwrap().class, VertexClass::PseudoQuadrilateral);
        let sm = smoothness(&a);
        assert!(sm.hemispherical && sm.n_prime_inside);
        let pole = crate::sphere::hemisphere_pole(a.image.polygon.vertices()).unwrap();
        assert!(!sm.kernel.unwrap().contains(&pole.into_inner()));
    }

    #[test]
    fn antipodal_star_image_holds_an_antipodal_pair() {
        let a = analysis(&antipodal_star());
        assert!(a.k < 0.0 && a.simple);
        let n = antipodal_star_normal();
        assert!(a.image.polygon.contains(&n) && a.image.polygon.contains(&-n));
    }
}
