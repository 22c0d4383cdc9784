//! Property tests for geometric invariants, checked against independent
//! oracles written here.

use nalgebra::{Matrix3, Rotation3};
use polysmooth::curvature::{banchoff_index, classify, smoothness, VertexAnalysis};
use polysmooth::faces::classify_face;
use polysmooth::fixtures::{self, Surface, Tiling};
use polysmooth::geom::{Vec2, Vec3};
use polysmooth::indicatrix::{infinite_star, section_at_offset, SectionClass};
use polysmooth::mesh::{export_mesh, load_mesh, Mesh, MeshFormat};
use polysmooth::projective::ProjectiveMap;
use polysmooth::sphere::{hemisphere_pole, star_shape_kernel, Gnomonic, SphericalPolygon};
use proptest::prelude::*;

fn rotation(axis: [f64; 3], angle: f64) -> Matrix3<f64> {
    let a = Vec3::new(axis[0], axis[1], axis[2]);
    let a = if a.norm() < 1e-3 { Vec3::z() } else { a.normalize() };
    *Rotation3::from_scaled_axis(a * angle).matrix()
}

fn transformed(m: &Mesh, a: &Matrix3<f64>, t: Vec3) -> Mesh {
    m.map_positions(|p| a * p + t).unwrap()
}

/// Star with a simple, non-degenerate Gauss image, searching seeds upward
/// from `seed`. `sign` restricts the curvature sign when given.
fn simple_star(valence: usize, seed: u64, sign: Option<f64>) -> (Mesh, VertexAnalysis) {
    for s in seed.. {
        let m = fixtures::random_star(valence, s);
        let Ok(a) = VertexAnalysis::new(m.vertex_star(0).unwrap()) else { continue };
        if !a.simple || a.degenerate || a.is_zero_curvature() {
            continue;
        }
        if sign.is_some_and(|x| x * a.k <= 0.0) {
            continue;
        }
        return (m, a);
    }
    unreachable!()
}

fn unit(v: [f64; 3]) -> Option<Vec3> {
    let v = Vec3::new(v[0], v[1], v[2]);
    (v.norm() > 1e-3).then(|| v.normalize())
}

fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> f64 {
    (b - a).perp(&(c - a))
}

fn proper_cross(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Even-odd ray cast to the right, signed by edge direction.
fn crossing_winding(poly: &[Vec2], q: &Vec2) -> i32 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > q.x {
                w += if b.y > a.y { 1 } else { -1 };
            }
        }
    }
    w
}

fn dist_to_segment(p: &Vec2, a: &Vec2, b: &Vec2) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Whether `q` sees the point at parameter `s` of edge `k` through the
/// interior of the counter-clockwise polygon `poly`.
fn sees(poly: &[Vec2], q: &Vec2, k: usize, s: f64) -> bool {
    let n = poly.len();
    let (a, b) = (poly[k], poly[(k + 1) % n]);
    let t = a + (b - a) * s;
    if orient(&a, &b, q) <= 0.0 {
        return false;
    }
    (0..n).filter(|&i| i != k).all(|i| !proper_cross(q, &t, &poly[i], &poly[(i + 1) % n]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corner_angles_survive_rigid_motions(
        valence in 3usize..10, seed in 0u64..10_000,
        axis in prop::array::uniform3(-1.0f64..1.0), angle in -3.0f64..3.0,
        t in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let m = fixtures::random_star(valence, seed);
        let moved = transformed(&m, &rotation(axis, angle), Vec3::new(t[0], t[1], t[2]));
        for f in 0..m.num_faces() {
            for k in 0..m.face(f).len() {
                prop_assert!((m.corner_angle(f, k) - moved.corner_angle(f, k)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mesh_files_round_trip(valence in 3usize..10, seed in 0u64..10_000, off in any::<bool>()) {
        let m = fixtures::random_star(valence, seed);
        let format = if off { MeshFormat::Off } else { MeshFormat::Obj };
        let back = load_mesh(export_mesh(&m, format).as_bytes(), format).unwrap();
        prop_assert_eq!(back.faces(), m.faces());
        for (p, q) in m.positions().iter().zip(back.positions()) {
            prop_assert!((p - q).norm() <= 1e-12 * p.norm().max(1.0));
        }
    }

    #[test]
    fn gnomonic_round_trip(
        pole in prop::array::uniform3(-1.0f64..1.0),
        p in prop::array::uniform3(-1.0f64..1.0),
    ) {
        let (Some(pole), Some(p)) = (unit(pole), unit(p)) else { return Ok(()) };
        prop_assume!(p.dot(&pole) > 0.1);
        let g = Gnomonic::new(pole);
        prop_assert!((g.inverse(&g.forward(&p)) - p).norm() < 1e-12);
    }

    #[test]
    fn spherical_area_under_rotation_and_reflection(
        valence in 3usize..10, seed in 0u64..10_000,
        axis in prop::array::uniform3(-1.0f64..1.0), angle in -3.0f64..3.0,
    ) {
        let (_, a) = simple_star(valence, seed, None);
        let poly = &a.image.polygon;
        let area = poly.signed_area(a.sign()).unwrap();
        let r = rotation(axis, angle);
        let rotated = SphericalPolygon::new(poly.vertices().iter().map(|v| r * v).collect()).unwrap();
        prop_assert!((rotated.signed_area(a.sign()).unwrap() - area).abs() < 1e-10);
        let mirrored = SphericalPolygon::new(poly.vertices().iter().map(|v| Vec3::new(-v.x, v.y, v.z)).collect()).unwrap();
        prop_assert!((mirrored.signed_area(-a.sign()).unwrap() + area).abs() < 1e-10);
    }

    #[test]
    fn winding_matches_crossing_count(valence in 3usize..10, seed in 0u64..10_000, probe_seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let (_, a) = simple_star(valence, seed, None);
        let poly = &a.image.polygon;
        let Some(h) = hemisphere_pole(poly.vertices()) else { return Ok(()) };
        let chart = Gnomonic::new(h.into_inner());
        let outline: Vec<Vec2> = poly.vertices().iter().map(|p| chart.forward(p)).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(probe_seed);
        let mut seen = [0usize; 3];
        for _ in 0..1000 {
            let Some(x) = unit([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]) else { continue };
            let want = if x.dot(&h) <= 1e-6 {
                if x.dot(&h) > -1e-6 { continue; }
                0
            } else {
                let q = chart.forward(&x);
                let n = outline.len();
                if (0..n).any(|i| dist_to_segment(&q, &outline[i], &outline[(i + 1) % n]) < 1e-9) {
                    continue;
                }
                crossing_winding(&outline, &q)
            };
            let Ok(got) = poly.winding_number(&x) else { continue };
            prop_assert_eq!(got, want);
            seen[(want + 1) as usize] += 1;
        }
        prop_assert!(seen[1] > 0);
    }

    #[test]
    fn kernel_points_see_the_whole_boundary(valence in 3usize..10, seed in 0u64..10_000, probe_seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let (_, a) = simple_star(valence, seed, None);
        let poly = &a.image.polygon;
        prop_assume!(hemisphere_pole(poly.vertices()).is_some());
        let kernel = star_shape_kernel(poly).unwrap();
        prop_assume!(!kernel.is_empty());
        let chart = kernel.chart();
        let mut outline: Vec<Vec2> = poly.vertices().iter().map(|p| chart.forward(p)).collect();
        let area: f64 = (0..outline.len()).map(|i| outline[i].perp(&outline[(i + 1) % outline.len()])).sum();
        if area < 0.0 {
            outline.reverse();
        }
        let diam = outline.iter().flat_map(|p| outline.iter().map(move |q| (p - q).norm())).fold(0.0, f64::max);
        let ko = kernel.chart_outline();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(probe_seed);
        let samples = |q: &Vec2| (0..outline.len()).flat_map(|k| (1..50).map(move |i| (k, i as f64 / 50.0))).all(|(k, s)| sees(&outline, q, k, s));
        for _ in 0..20 {
            // convex combination of kernel corners
            let w: Vec<f64> = ko.iter().map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = w.iter().sum();
            let q = ko.iter().zip(&w).fold(Vec2::zeros(), |s, (p, w)| s + p * (w / total));
            if kernel.chart_margin(&chart.inverse(&q)) < 1e-9 * diam {
                continue;
            }
            prop_assert!(samples(&q));
        }
        let lo = outline.iter().fold(Vec2::repeat(f64::INFINITY), |m, p| m.inf(p));
        let hi = outline.iter().fold(Vec2::repeat(f64::NEG_INFINITY), |m, p| m.sup(p));
        for _ in 0..200 {
            let q = Vec2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if crossing_winding(&outline, &q) == 0 || kernel.chart_margin(&chart.inverse(&q)) > -1e-2 * diam {
                continue;
            }
            prop_assert!(!samples(&q));
        }
    }

    #[test]
    fn banchoff_index_is_winding_sum(valence in 3usize..10, seed in 0u64..10_000, xi in prop::array::uniform3(-1.0f64..1.0)) {
        let (m, a) = simple_star(valence, seed, None);
        let Some(xi) = unit(xi) else { return Ok(()) };
        prop_assume!(hemisphere_pole(a.image.polygon.vertices()).is_some());
        let star = m.vertex_star(0).unwrap();
        let (Ok(i), Ok(w1), Ok(w2)) = (
            banchoff_index(&star, &xi),
            a.image.polygon.winding_number(&xi),
            a.image.polygon.winding_number(&-xi),
        ) else { return Ok(()) };
        prop_assert_eq!(i, w1 + w2);
    }

    #[test]
    fn classification_survives_linear_maps(
        valence in 3usize..10, seed in 0u64..10_000,
        r1 in prop::array::uniform3(-1.0f64..1.0), a1 in -3.0f64..3.0,
        r2 in prop::array::uniform3(-1.0f64..1.0), a2 in -3.0f64..3.0,
        s in prop::array::uniform3(1.0f64..7.0),
    ) {
        let (m, a) = simple_star(valence, seed, None);
        let before = classify(&a).unwrap();
        let lin = rotation(r1, a1) * Matrix3::from_diagonal(&Vec3::new(s[0], s[1], s[2])) * rotation(r2, a2);
        let moved = transformed(&m, &lin, Vec3::zeros());
        let after = classify(&VertexAnalysis::new(moved.vertex_star(0).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(before.class, after.class);
        prop_assert_eq!(before.inflection_faces, after.inflection_faces);
    }

    #[test]
    fn positive_sections_are_empty_then_ellipse(valence in 3usize..7, seed in 0u64..10_000, frac in 0.001f64..0.1) {
        let (m, a) = simple_star(valence, seed, Some(1.0));
        let Some(frame) = smoothness(&a).frame else { return Ok(()) };
        let n = frame.n.into_inner();
        let star = infinite_star(&m.vertex_star(0).unwrap());
        let d = frac * a.star.min_edge_length();
        let lo = section_at_offset(&star, &n, -d).unwrap().class;
        let hi = section_at_offset(&star, &n, d).unwrap().class;
        let mut pair = [lo, hi];
        pair.sort_by_key(|c| *c as u8);
        prop_assert_eq!(pair, [SectionClass::Empty, SectionClass::DiscreteEllipse]);
    }

    #[test]
    fn negative_sections_are_hyperbolas(
        valence in 4usize..10, seed in 0u64..10_000, frac in 0.001f64..0.1,
        axis in prop::array::uniform3(-1.0f64..1.0), angle in -3.0f64..3.0,
    ) {
        let (m, a) = simple_star(valence, seed, Some(-1.0));
        let sm = smoothness(&a);
        let Some(frame) = sm.frame else { return Ok(()) };
        let n = frame.n.into_inner();
        prop_assume!(!a.image.polygon.contains(&-n));
        let d = frac * a.star.min_edge_length();
        let r = rotation(axis, angle);
        let moved = transformed(&m, &r, Vec3::new(1.0, -2.0, 0.5));
        for (mesh, normal) in [(&m, n), (&moved, r * n)] {
            let star = infinite_star(&mesh.vertex_star(0).unwrap());
            for off in [d, -d] {
                let s = section_at_offset(&star, &normal, off).unwrap();
                prop_assert!(s.class.is_discrete_hyperbola(), "{:?}", s.class);
            }
        }
    }

    #[test]
    fn projective_map_serde_round_trip(entries in prop::array::uniform16(-1.0f64..1.0)) {
        let m = nalgebra::Matrix4::identity() + nalgebra::Matrix4::from_row_slice(&entries) * 0.3;
        let Ok(p) = ProjectiveMap::new(m) else { return Ok(()) };
        let back: ProjectiveMap = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(&back, &p);
        let q = ProjectiveMap::from_row_major(&p.to_row_major()).unwrap();
        prop_assert_eq!(q, p);
    }
}

#[test]
fn rings_have_vertex_valence() {
    for m in [
        fixtures::graph_mesh(Surface::Saddle, Tiling::C, 6).unwrap(),
        fixtures::hex_graph_mesh(Surface::Saddle, 5).unwrap(),
        fixtures::torus(2.0, 1.0, 12, 12).unwrap(),
    ] {
        for v in m.interior_vertices() {
            let s = m.vertex_star(v).unwrap();
            assert_eq!(s.valence(), m.vertex_neighbors(v).len());
            assert_eq!(s.valence(), m.vertex_faces(v).len());
        }
    }
}

#[test]
fn mixed_faces_satisfy_integer_identity() {
    let mut seen = 0;
    for m in [
        fixtures::torus(2.0, 1.0, 12, 12).unwrap(),
        fixtures::graph_mesh(Surface::Fold, Tiling::C, 8).unwrap(),
    ] {
        for f in (0..m.num_faces()).filter(|&f| m.is_interior_face(f)) {
            let r = classify_face(&m, f).unwrap();
            // the identity presumes simple Gauss images at every corner
            if r.n_plus == 0 || r.n_minus == 0 || r.geometric_angle_sum.is_none() {
                continue;
            }
            let [c1, _, c3, _] = r.c_counts.map(|c| c as i64);
            let balanced = r.oriented_angle_sum.abs() < 1e-9;
            assert_eq!(r.n_minus as i64 - 2 == c3 - c1, balanced, "face {f}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn face_classes_survive_rigid_motions() {
    let m = fixtures::graph_mesh(Surface::Saddle, Tiling::C, 6).unwrap();
    let moved = transformed(&m, &rotation([0.3, -0.7, 0.2], 1.1), Vec3::new(3.0, 1.0, -2.0));
    for f in (0..m.num_faces()).filter(|&f| m.is_interior_face(f)) {
        assert_eq!(classify_face(&m, f).unwrap().class, classify_face(&moved, f).unwrap().class);
    }
}

#[test]
fn asymptotic_segments_stay_in_their_faces() {
    let mut checked = 0;
    for m in [
        fixtures::graph_mesh(Surface::Saddle, Tiling::C, 8).unwrap(),
        fixtures::hex_graph_mesh(Surface::Saddle, 6).unwrap(),
    ] {
        for f in (0..m.num_faces()).filter(|&f| m.is_interior_face(f)) {
            let r = classify_face(&m, f).unwrap();
            let plane = m.face_plane(f);
            let outline = &plane.outline;
            let inside = |p: &Vec3| {
                let q = plane.to_2d(p);
                let n = outline.len();
                crossing_winding(outline, &q) != 0
                    || (0..n).any(|i| dist_to_segment(&q, &outline[i], &outline[(i + 1) % n]) < 1e-9)
            };
            for s in &r.asymptotic_segments {
                for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    assert!(inside(&(s.from + (s.to - s.from) * t)), "face {f}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
