//! Per-vertex smoothness: simple Gauss image, open hemisphere, star shape,
//! discrete tangent plane normal n and discrete normal n'.

use polysmooth::curvature::vertex_smoothness;
use polysmooth::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, mesh) in [
        ("saddle star", fixtures::saddle_star(1.0)),
        ("pseudo-triangle B", fixtures::pseudo_triangle_b_star()),
        ("pseudo-digon", fixtures::pseudo_digon_star()),
        ("not star-shaped about its pole", fixtures::non_star_shaped_star()),
    ] {
        let s = vertex_smoothness(&mesh.vertex_star(0)?)?;
        println!("{name}: smooth = {}", s.is_smooth());
        println!(
            "  simple {}  hemispherical {}  star-shaped {}  n' inside {}",
            s.simple, s.hemispherical, s.star_shaped, s.n_prime_inside
        );
        if let Some(f) = s.frame {
            let (n, np) = (f.n.into_inner(), f.n_prime.into_inner());
            println!("  n  = ({:+.4}, {:+.4}, {:+.4})", n.x, n.y, n.z);
            println!("  n' = ({:+.4}, {:+.4}, {:+.4})", np.x, np.y, np.z);
        }
    }
    Ok(())
}
