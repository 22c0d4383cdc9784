//! Every built-in fixture with its default parameters, written as OBJ.

use polysmooth::fixtures::{generate, FixtureSpec};
use polysmooth::mesh::{export_mesh, MeshFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::temp_dir().join("polysmooth-fixtures");
    std::fs::create_dir_all(&out)?;
    for name in FixtureSpec::NAMES {
        let spec = FixtureSpec::parse(name, [])?;
        let mesh = generate(&spec)?;
        println!(
            "{:<40} {:>4} vertices {:>4} faces {:>4} interior",
            spec.to_string(),
            mesh.num_vertices(),
            mesh.num_faces(),
            mesh.interior_vertices().len()
        );
        std::fs::write(out.join(format!("{name}.obj")), export_mesh(&mesh, MeshFormat::Obj))?;
    }
    let custom = FixtureSpec::parse("graph_mesh", ["surface=fold", "tiling=c", "n=6"])?;
    println!("custom: {custom} -> {} faces", generate(&custom)?.num_faces());
    println!("written to {}", out.display());
    Ok(())
}
