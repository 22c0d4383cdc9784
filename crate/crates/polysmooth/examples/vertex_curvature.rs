//! Angle defect, Gauss image area and the Banchoff index at a few vertex stars.

use polysmooth::curvature::{banchoff_index, gauss_image, gaussian_curvature};
use polysmooth::fixtures;
use polysmooth::geom::Vec3;
use polysmooth::mesh::Mesh;

fn report(name: &str, mesh: &Mesh) -> Result<(), Box<dyn std::error::Error>> {
    let star = mesh.vertex_star(0)?;
    let k = gaussian_curvature(&star);
    let image = gauss_image(&star)?;
    let xi = Vec3::new(0.01, 0.02, 1.0).normalize();
    println!(
        "{name:>14}: K = {k:+.12}  area(g) = {:+.12}  i(v, e_z) = {:+}",
        image.polygon.signed_area(k.signum())?,
        banchoff_index(&star, &xi)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("cube corner", &fixtures::cube_corner())?;
    report("tetra apex", &fixtures::tetra_apex())?;
    report("saddle star", &fixtures::saddle_star(1.0))?;
    report("hex saddle", &fixtures::hex_saddle())?;
    report("monkey star", &fixtures::monkey_star())?;
    Ok(())
}
