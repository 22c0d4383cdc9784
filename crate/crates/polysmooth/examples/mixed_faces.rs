//! Faces where the curvature sign changes: sign-change edges, the discrete
//! parabolic segment and the decomposition into building blocks.

use polysmooth::faces::{classify_face, decompose_mixed_face};
use polysmooth::fixtures::{graph_mesh, Surface, Tiling};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // z = x³ + y² is parabolic along x = 0
    let mesh = graph_mesh(Surface::Fold, Tiling::C, 8)?;
    let mut shown = 0;
    for f in 0..mesh.num_faces() {
        let Ok(r) = classify_face(&mesh, f) else { continue };
        if r.n_plus == 0 || r.n_minus == 0 {
            continue;
        }
        println!(
            "face {f}: signs {:?}, sign-change edges {:?}, oriented sum {:+.3e}, {}",
            r.signs,
            r.sign_change_edges,
            r.oriented_angle_sum,
            r.class.name()
        );
        if let Some((a, b)) = r.parabolic_segment {
            println!("  parabolic segment ({:+.4}, {:+.4}) -> ({:+.4}, {:+.4})", a.x, a.y, b.x, b.y);
        }
        let blocks = decompose_mixed_face(&mesh, f)?;
        println!("  {} building block(s)", blocks.len());
        shown += 1;
        if shown == 4 {
            break;
        }
    }
    Ok(())
}
