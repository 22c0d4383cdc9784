//! Asymptotic directions of negatively curved vertices and the admissible
//! cones they must lie in.

use polysmooth::curvature::{smoothness, VertexAnalysis};
use polysmooth::fixtures;
use polysmooth::indicatrix::{asymptotic_cones, asymptotic_directions_vertex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, mesh) in [
        ("saddle star", fixtures::saddle_star(1.0)),
        ("hex saddle", fixtures::hex_saddle()),
        ("pseudo-triangle B", fixtures::pseudo_triangle_b_star()),
    ] {
        let a = VertexAnalysis::new(mesh.vertex_star(0)?)?;
        let sm = smoothness(&a);
        let (Some(frame), Some(kernel)) = (sm.frame, sm.kernel.as_ref()) else {
            println!("{name}: no tangent plane");
            continue;
        };
        let dirs = asymptotic_directions_vertex(&a.star, &frame)?;
        println!("{name}: {} directions, collinear pairs {:?}", dirs.directions.len(), dirs.collinear);
        for d in &dirs.directions {
            println!("  face {}: ({:+.6}, {:+.6}, {:+.6})", d.face, d.dir.x, d.dir.y, d.dir.z);
        }
        for c in asymptotic_cones(&a, kernel)? {
            println!(
                "  cone at face {}: alpha0 {:.4} alpha1 {:.4} alpha2 {:.4}{}",
                c.face,
                c.alpha0,
                c.alpha1,
                c.alpha2,
                if c.double { " (double)" } else { "" }
            );
        }
    }
    Ok(())
}
