//! Face classes of uniformly curved faces: convex positive faces, negative
//! pseudo-quadrilaterals and pseudo-triangles, and the monkey saddle.

use polysmooth::faces::classify_face;
use polysmooth::fixtures::{self, graph_mesh, hex_graph_mesh, Surface, Tiling};
use polysmooth::mesh::Mesh;
use std::collections::BTreeMap;

fn tally(name: &str, mesh: &Mesh) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for f in 0..mesh.num_faces() {
        let key = match classify_face(mesh, f) {
            Ok(r) => r.class.name(),
            Err(_) => "(not analyzed)",
        };
        *counts.entry(key).or_default() += 1;
    }
    println!("{name}: {counts:?}");
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cube = fixtures::cube_corner();
    let r = classify_face(&cube, 0)?;
    println!("cube face 0: {} with angle sum {:.15}", r.class.name(), r.oriented_angle_sum);

    tally("saddle graph (tiling c, n = 8)", &graph_mesh(Surface::Saddle, Tiling::C, 8)?);
    tally("hexagonal saddle graph", &hex_graph_mesh(Surface::Saddle, 6)?);

    let hex = hex_graph_mesh(Surface::Saddle, 6)?;
    if let Some(r) = (0..hex.num_faces()).filter_map(|f| classify_face(&hex, f).ok()).next() {
        let [c1, c2, c3, c4] = r.c_counts;
        let n = r.vertices.len() as i64;
        println!(
            "face {}: c = {:?}, c1 - c3 = {} = 4 - n = {}, 2c1 + c2 + c4 = {}",
            r.face,
            r.c_counts,
            c1 as i64 - c3 as i64,
            4 - n,
            2 * c1 + c2 + c4
        );
        println!("  point of contact {:?}", r.point_of_contact.map(|p| (p.x, p.y, p.z)));
        for s in &r.asymptotic_segments {
            println!("  asymptotic segment to vertex {}{}", s.vertex, if s.counts_twice { " (twice)" } else { "" });
        }
    }

    let monkey = fixtures::monkey_star();
    let r = classify_face(&monkey, 0)?;
    println!("monkey face 0: {} with sum {:.12} (4π = {:.12})", r.class.name(), r.oriented_angle_sum, 4.0 * std::f64::consts::PI);
    Ok(())
}
