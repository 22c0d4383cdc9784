use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polysmooth"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polysmooth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn generate(args: &[&str], file: &str) -> PathBuf {
    let out = scratch(file);
    let st = bin().arg("generate").args(args).arg("-o").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    out
}

#[test]
fn exit_codes_follow_the_verdict() {
    let smooth = generate(&["graph_mesh", "tiling=c", "n=6"], "c.obj");
    let rough = generate(&["graph_mesh", "tiling=b", "n=6"], "b.obj");
    assert_eq!(bin().arg("analyze").arg(&smooth).status().unwrap().code(), Some(0));
    assert_eq!(bin().arg("analyze").arg(&rough).status().unwrap().code(), Some(1));
    let missing = scratch("missing.obj");
    assert_eq!(bin().arg("analyze").arg(&missing).status().unwrap().code(), Some(2));
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(2));
}

#[test]
fn json_report_is_written() {
    let mesh = generate(&["saddle_star"], "s.obj");
    let json = scratch("s.json");
    let st = bin().arg("analyze").arg(&mesh).arg("--json").arg(&json).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"schema\": 1"));
}

#[test]
fn classify_boundary_vertex_is_an_error() {
    let mesh = generate(&["saddle_star"], "b.obj");
    let out = bin().args(["classify"]).arg(&mesh).args(["--vertex", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["classify"]).arg(&mesh).args(["--vertex", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PseudoQuadrilateral"));
}

#[test]
fn dual_and_transform_write_meshes() {
    let mesh = generate(&["graph_mesh", "n=4"], "g.obj");
    let dual = scratch("g_dual.obj");
    let st = bin().arg("dual").arg(&mesh).arg("-o").arg(&dual).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert!(std::fs::metadata(&dual).unwrap().len() > 0);

    let matrix = scratch("m.json");
    std::fs::write(&matrix, "[1,0,0,0, 0,1,0,0, 0,0,1,0, 0.1,0,0,1]").unwrap();
    let moved = scratch("g_moved.obj");
    let st = bin().arg("transform").arg(&mesh).arg("--matrix").arg(&matrix).arg("-o").arg(&moved).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert_eq!(bin().arg("analyze").arg(&moved).status().unwrap().code(), Some(0));
}

#[test]
fn gauss_image_svg() {
    let mesh = generate(&["hex_saddle"], "h.obj");
    let svg = scratch("h.svg");
    let st = bin().arg("gaussimage").arg(&mesh).args(["--vertex", "0", "--svg"]).arg(&svg).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg") || std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}
