//! Random collineations leave every smoothness verdict, vertex class and
//! inflection set unchanged.

use polysmooth::fixtures::{graph_mesh, Surface, Tiling};
use polysmooth::projective::{apply_projective, random_finite_collineation};
use polysmooth::report::analyze;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mesh = graph_mesh(Surface::Saddle, Tiling::C, 6)?;
    let before = analyze(&mesh);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut same = 0;
    let trials = 10;
    for _ in 0..trials {
        let map = random_finite_collineation(&mut rng, 0.2, &mesh, 0.2);
        let image = apply_projective(&mesh, &map)?;
        let after = analyze(&image);
        let agree = before.smooth == after.smooth
            && before.vertices.iter().zip(&after.vertices).all(|(a, b)| a.class == b.class && a.inflection_faces == b.inflection_faces);
        same += agree as usize;
        println!("det {:+.4}: verdict {} -> {}, classes agree: {agree}", map.determinant(), before.smooth, after.smooth);
    }
    println!("{same}/{trials} maps preserved the full classification");
    Ok(())
}
