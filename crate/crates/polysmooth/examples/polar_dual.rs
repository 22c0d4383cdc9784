//! Polar dual about an admissible center, and the duality checks between
//! primal and dual.

use polysmooth::fixtures::{convex_cap, graph_mesh, Surface, Tiling};
use polysmooth::mesh::Mesh;
use polysmooth::projective::{check_duality, find_admissible_center, polar_dual};

fn run(name: &str, mesh: &Mesh) -> Result<(), Box<dyn std::error::Error>> {
    let o = find_admissible_center(mesh)?;
    let dual = polar_dual(mesh, &o)?;
    let r = check_duality(mesh, &dual)?;
    println!("{name}: center ({:+.3}, {:+.3}, {:+.3})", o.x, o.y, o.z);
    println!("  dual has {} vertices and {} faces", dual.mesh.num_vertices(), dual.mesh.num_faces());
    println!("  curvature signs match on {} faces: {}", r.signs.len(), r.signs_match());
    let infl = r.inflections.iter().filter(|i| i.primal).count();
    println!("  inflection pairs {} ({} inflecting), all dual: {}", r.inflections.len(), infl, r.inflections_match());
    println!("  Gauss image deviation {:.2e}, double dual deviation {:.2e}", r.gauss_deviation, r.double_dual_deviation.unwrap_or(0.0));
    println!("  smooth: primal {}, dual {}", r.primal_smooth, r.dual_smooth);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run("saddle patch", &graph_mesh(Surface::Saddle, Tiling::C, 4)?)?;
    run("convex cap", &convex_cap(4)?)?;
    Ok(())
}
