//! Parse an OBJ string, inspect the half-edge topology, and re-export as OFF.

use polysmooth::mesh::{export_mesh, load_mesh, MeshFormat};

const PYRAMID: &str = "\
# square pyramid with its apex lifted
v 0 0 1
v 1 0 0
v 0 1 0
v -1 0 0
v 0 -1 0
f 1 2 3
f 1 3 4
f 1 4 5
f 1 5 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mesh = load_mesh(PYRAMID.as_bytes(), MeshFormat::Obj)?;
    println!("{} vertices, {} faces, {} edges", mesh.num_vertices(), mesh.num_faces(), mesh.edge_count());
    println!("interior vertices: {:?}", mesh.interior_vertices());
    println!("closed: {}", mesh.is_closed());

    let star = mesh.vertex_star(0)?;
    for face in star.ring() {
        println!("face {} around apex, corner angle {:.4}", face.face, face.alpha);
    }

    match mesh.vertex_star(1) {
        Ok(_) => println!("vertex 1 unexpectedly interior"),
        Err(e) => println!("vertex 1: {e}"),
    }

    print!("{}", export_mesh(&mesh, MeshFormat::Off));
    Ok(())
}
