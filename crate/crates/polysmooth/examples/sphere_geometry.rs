//! Spherical polygons: signed area, winding numbers, open-hemisphere poles
//! and star-shape kernels.

use polysmooth::geom::Vec3;
use polysmooth::sphere::{hemisphere_pole, star_shape_kernel, SphericalPolygon};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let octant = SphericalPolygon::new(vec![Vec3::x(), Vec3::y(), Vec3::z()])?;
    println!("octant area {:.12} (π/2 = {:.12})", octant.signed_area(1.0)?, std::f64::consts::FRAC_PI_2);
    let c = Vec3::new(1.0, 1.0, 1.0).normalize();
    println!("winding number about its center: {}", octant.winding_number(&c)?);

    // a U-shaped polygon near the north pole
    let u: Vec<Vec3> = [(0., 0.), (3., 0.), (3., 3.), (2., 3.), (2., 1.), (1., 1.), (1., 3.), (0., 3.)]
        .iter()
        .map(|&(x, y)| Vec3::new(0.1 * x - 0.15, 0.1 * y - 0.15, 1.0).normalize())
        .collect();
    let poly = SphericalPolygon::new(u.clone())?;
    let pole = hemisphere_pole(&u).map(|p| p.into_inner());
    println!("U shape: area {:.6}, hemisphere pole {:?}", poly.signed_area(1.0)?, pole.map(|p| (p.x, p.y, p.z)));
    println!("U shape kernel empty: {}", star_shape_kernel(&poly)?.is_empty());
    println!("octant kernel empty: {}", star_shape_kernel(&octant)?.is_empty());

    let spread = [Vec3::x(), Vec3::y(), -Vec3::x(), -Vec3::y(), Vec3::z()];
    println!("points spanning a great circle fit a hemisphere: {}", hemisphere_pole(&spread).is_some());
    Ok(())
}
