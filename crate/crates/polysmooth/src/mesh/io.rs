//! OBJ and OFF reading and writing.

use super::{Mesh, MeshError, MeshOptions};
use crate::geom::{fmt_g17, Vec3};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Off,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "obj" => Some(Self::Obj),
            "off" => Some(Self::Off),
            _ => None,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> MeshError {
    MeshError::Parse { line, msg: msg.into() }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, MeshError> {
    let x: f64 = tok.parse().map_err(|_| perr(line, format!("bad number '{tok}'")))?;
    if !x.is_finite() {
        return Err(perr(line, format!("non-finite coordinate '{tok}'")));
    }
    Ok(x)
}

fn parse_obj(text: &str) -> Result<(Vec<Vec3>, Vec<Vec<usize>>), MeshError> {
    let mut verts = Vec::new();
    let mut faces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("v") => {
                let xs: Vec<&str> = toks.collect();
                if xs.len() < 3 {
                    return Err(perr(line, "vertex needs three coordinates"));
                }
                verts.push(Vec3::new(parse_f64(xs[0], line)?, parse_f64(xs[1], line)?, parse_f64(xs[2], line)?));
            }
            Some("f") => {
                let mut face = Vec::new();
                for t in toks {
                    let head = t.split('/').next().unwrap_or("");
                    let k: i64 = head.parse().map_err(|_| perr(line, format!("bad index '{t}'")))?;
                    let idx = if k > 0 {
                        k - 1
                    } else if k < 0 {
                        verts.len() as i64 + k
                    } else {
                        return Err(perr(line, "index 0 is invalid"));
                    };
                    if idx < 0 || idx as usize >= verts.len() {
                        return Err(perr(line, format!("index {k} out of range")));
                    }
                    face.push(idx as usize);
                }
                if face.len() < 3 {
                    return Err(perr(line, "face needs at least three vertices"));
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    Ok((verts, faces))
}

fn parse_off(text: &str) -> Result<(Vec<Vec3>, Vec<Vec<usize>>), MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let mut counts: Vec<&str> = Vec::new();
    if let Some(rest) = header.strip_prefix("OFF") {
        counts.extend(rest.split_whitespace());
    } else {
        return Err(perr(hl, "missing OFF header"));
    }
    let mut count_line = hl;
    if counts.is_empty() {
        let (l, c) = lines.next().ok_or_else(|| perr(hl, "missing counts"))?;
        count_line = l;
        counts.extend(c.split_whitespace());
    }
    if counts.len() < 2 {
        return Err(perr(count_line, "expected vertex and face counts"));
    }
    let nv: usize = counts[0].parse().map_err(|_| perr(count_line, "bad vertex count"))?;
    let nf: usize = counts[1].parse().map_err(|_| perr(count_line, "bad face count"))?;
    let mut verts = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, s) = lines.next().ok_or_else(|| perr(count_line, "missing vertex lines"))?;
        let xs: Vec<&str> = s.split_whitespace().collect();
        if xs.len() < 3 {
            return Err(perr(l, "vertex needs three coordinates"));
        }
        verts.push(Vec3::new(parse_f64(xs[0], l)?, parse_f64(xs[1], l)?, parse_f64(xs[2], l)?));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, s) = lines.next().ok_or_else(|| perr(count_line, "missing face lines"))?;
        let xs: Vec<&str> = s.split_whitespace().collect();
        let k: usize = xs.first().and_then(|t| t.parse().ok()).ok_or_else(|| perr(l, "bad face arity"))?;
        if k < 3 || xs.len() < k + 1 {
            return Err(perr(l, "face needs at least three indices"));
        }
        let mut face = Vec::with_capacity(k);
        for t in &xs[1..=k] {
            let i: usize = t.parse().map_err(|_| perr(l, format!("bad index '{t}'")))?;
            if i >= nv {
                return Err(perr(l, format!("index {i} out of range")));
            }
            face.push(i);
        }
        faces.push(face);
    }
    Ok((verts, faces))
}

/// Parses and validates a mesh with default tolerances.
pub fn load_mesh(data: &[u8], format: MeshFormat) -> Result<Mesh, MeshError> {
    load_mesh_with(data, format, &MeshOptions::default())
}

pub fn load_mesh_with(data: &[u8], format: MeshFormat, opts: &MeshOptions) -> Result<Mesh, MeshError> {
    let text = std::str::from_utf8(data).map_err(|_| perr(0, "input is not UTF-8"))?;
    let (v, f) = match format {
        MeshFormat::Obj => parse_obj(text)?,
        MeshFormat::Off => parse_off(text)?,
    };
    Mesh::with_options(v, f, opts)
}

pub fn export_mesh(mesh: &Mesh, format: MeshFormat) -> String {
    let mut out = String::new();
    let coords = |p: &Vec3| format!("{} {} {}", fmt_g17(p.x), fmt_g17(p.y), fmt_g17(p.z));
    match format {
        MeshFormat::Obj => {
            for p in mesh.positions() {
                out.push_str(&format!("v {}\n", coords(p)));
            }
            for f in mesh.faces() {
                let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
                out.push_str(&format!("f {}\n", idx.join(" ")));
            }
        }
        MeshFormat::Off => {
            out.push_str("OFF\n");
            out.push_str(&format!("{} {} {}\n", mesh.num_vertices(), mesh.num_faces(), mesh.edge_count()));
            for p in mesh.positions() {
                out.push_str(&coords(p));
                out.push('\n');
            }
            for f in mesh.faces() {
                let idx: Vec<String> = f.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("{} {}\n", f.len(), idx.join(" ")));
            }
        }
    }
    out
}

pub fn load_mesh_file(path: impl AsRef<Path>) -> Result<Mesh, MeshError> {
    let path = path.as_ref();
    let format = MeshFormat::from_path(path)
        .ok_or_else(|| MeshError::Io(format!("unknown mesh extension: {}", path.display())))?;
    let data = std::fs::read(path).map_err(|e| MeshError::Io(e.to_string()))?;
    load_mesh(&data, format)
}

pub fn save_mesh_file(mesh: &Mesh, path: impl AsRef<Path>) -> Result<(), MeshError> {
    let path = path.as_ref();
    let format = MeshFormat::from_path(path).unwrap_or(MeshFormat::Obj);
    std::fs::write(path, export_mesh(mesh, format)).map_err(|e| MeshError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUBE_OFF: &str = "OFF\n8 6 12\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n1 1 1\n\
        4 0 2 3 1\n4 4 5 7 6\n4 0 1 5 4\n4 2 6 7 3\n4 0 4 6 2\n4 1 3 7 5\n";

    #[test]
    fn off_cube() {
        let m = load_mesh(CUBE_OFF.as_bytes(), MeshFormat::Off).unwrap();
        assert_eq!((m.num_vertices(), m.num_faces()), (8, 6));
        assert!(m.is_closed());
        let again = load_mesh(export_mesh(&m, MeshFormat::Off).as_bytes(), MeshFormat::Off).unwrap();
        assert_eq!(again.faces(), m.faces());
    }

    #[test]
    fn obj_triangle_with_slashes() {
        let src = "# tri\nv 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 -1//1\n";
        let m = load_mesh(src.as_bytes(), MeshFormat::Obj).unwrap();
        assert_eq!(m.faces(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn obj_bad_index() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n";
        assert!(matches!(
            load_mesh(src.as_bytes(), MeshFormat::Obj),
            Err(MeshError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn off_three_faces_on_edge() {
        let src = "OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 -1 0\n3 0 1 2\n3 1 0 3\n3 0 1 4\n";
        assert!(matches!(load_mesh(src.as_bytes(), MeshFormat::Off), Err(MeshError::Topology(_))));
    }

    #[test]
    fn obj_roundtrip_exact() {
        let src = "v 0.1 0.2 0.30000000000000004\nv 1e-7 0 0\nv 0 3.14159 0\nf 1 2 3\n";
        let m = load_mesh(src.as_bytes(), MeshFormat::Obj).unwrap();
        let back = load_mesh(export_mesh(&m, MeshFormat::Obj).as_bytes(), MeshFormat::Obj).unwrap();
        assert_eq!(back.positions(), m.positions());
    }
}
