//! Whole-mesh verdict for the three lattice tilings, with JSON, colored OBJ
//! and SVG exports written to a temporary directory.

use polysmooth::fixtures::{graph_mesh, Surface, Tiling};
use polysmooth::report::{analyze, colored_obj, gauss_svg, to_json};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("polysmooth-report");
    std::fs::create_dir_all(&out)?;
    for tiling in [Tiling::A, Tiling::B, Tiling::C] {
        let mesh = graph_mesh(Surface::Saddle, tiling, 8)?;
        let r = analyze(&mesh);
        let degenerate = r.vertices.iter().filter(|v| v.degenerate).count();
        println!(
            "tiling {tiling}: smooth = {}, {} violations, {} degenerate stars",
            r.smooth,
            r.violations.len(),
            degenerate
        );
        for v in r.violations.iter().take(3) {
            println!("  condition {} {}: {}", v.condition, v.code, v.detail);
        }
        std::fs::write(out.join(format!("saddle_{tiling}.json")), to_json(&r)?)?;
        std::fs::write(out.join(format!("saddle_{tiling}.obj")), colored_obj(&mesh, &r))?;
        let center = mesh.num_vertices() / 2;
        std::fs::write(out.join(format!("saddle_{tiling}.svg")), gauss_svg(&mesh, &[center])?)?;
    }
    println!("exports in {}", out.display());
    Ok(())
}
