//! Shape classes of vertex stars: convex corners, pseudo-quadrilaterals,
//! pseudo-triangles and pseudo-digons.

use polysmooth::curvature::classify_vertex;
use polysmooth::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stars = [
        ("cube corner", fixtures::cube_corner()),
        ("saddle star", fixtures::saddle_star(1.0)),
        ("hex saddle", fixtures::hex_saddle()),
        ("pseudo-triangle A", fixtures::pseudo_triangle_a_star()),
        ("pseudo-triangle B", fixtures::pseudo_triangle_b_star()),
        ("pseudo-digon", fixtures::pseudo_digon_star()),
        ("antipodal", fixtures::antipodal_star()),
    ];
    for (name, mesh) in stars {
        let c = classify_vertex(&mesh.vertex_star(0)?)?;
        println!(
            "{name:>18}: {:<20} K = {:+.4}  inflections {:?}  reflex {:?}  corners {:?}",
            c.class.name(),
            c.k,
            c.inflection_faces,
            c.reflex_faces,
            c.corner_faces
        );
    }
    Ok(())
}
