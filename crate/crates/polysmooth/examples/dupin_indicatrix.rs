//! Discrete Dupin indicatrix: sections of the infinite vertex star by planes
//! parallel to the tangent plane on both sides.

use polysmooth::curvature::vertex_smoothness;
use polysmooth::fixtures;
use polysmooth::geom::Vec3;
use polysmooth::indicatrix::{infinite_star, probe_offset, section_at_offset};
use polysmooth::mesh::Mesh;

fn sections(name: &str, mesh: &Mesh, normal: Vec3) -> Result<(), Box<dyn std::error::Error>> {
    let star = mesh.vertex_star(0)?;
    let inf = infinite_star(&star);
    let t = probe_offset(&star);
    for offset in [t, -t] {
        let s = section_at_offset(&inf, &normal, offset)?;
        let sizes: Vec<usize> = s.polylines.iter().map(|p| p.points.len()).collect();
        println!(
            "{name:>16} at {offset:+.4}: {:?}, polylines {sizes:?}, inflection edges {:?}",
            s.class, s.inflection_edges
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    sections("saddle", &fixtures::saddle_star(1.0), Vec3::z())?;
    sections("cube corner", &fixtures::cube_corner(), Vec3::new(1.0, 1.0, 1.0).normalize())?;
    sections("antipodal", &fixtures::antipodal_star(), fixtures::antipodal_star_normal())?;
    let m = fixtures::non_star_shaped_star();
    let pole = vertex_smoothness(&m.vertex_star(0)?)?.frame.map_or(Vec3::z(), |f| f.n_prime.into_inner());
    sections("pole-non-star", &m, pole)?;
    Ok(())
}
