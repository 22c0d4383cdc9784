use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use polysmooth::fixtures::{generate, FixtureSpec};
use polysmooth::geom::Vec3;
use polysmooth::mesh::{load_mesh_file, save_mesh_file, Mesh};
use polysmooth::projective::{apply_projective, find_admissible_center, polar_dual, ProjectiveMap};
use polysmooth::report::{analyze, colored_obj, gauss_svg, to_json, Status};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Smoothness analysis of polyhedral surfaces.
///
/// Exit status: 0 smooth, 1 violations found, 2 error.
#[derive(Parser)]
#[command(name = "polysmooth", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis and print a summary.
    Analyze {
        mesh: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long = "colored-obj")]
        colored_obj: Option<PathBuf>,
    },
    /// Print the report entry of one vertex or face as JSON.
    Classify {
        mesh: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Draw the Gauss image of a vertex star.
    Gaussimage {
        mesh: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        vertex: Vec<usize>,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Polar dual about an admissible (or given) center.
    Dual {
        mesh: PathBuf,
        /// Center as `x,y,z`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Option<Vec3>,
        #[arg(short)]
        o: PathBuf,
    },
    /// Apply a 4x4 collineation given as 16 row-major reals in JSON.
    Transform {
        mesh: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Write a fixture mesh, e.g. `generate graph_mesh tiling=c n=8 -o g.obj`.
    Generate {
        fixture: String,
        /// `key=value` parameters.
        params: Vec<String>,
        #[arg(short)]
        o: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    vertex: Option<usize>,
    #[arg(long)]
    face: Option<usize>,
}

fn parse_point(s: &str) -> Result<Vec3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected x,y,z, got {} values", v.len())),
    }
}

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    };
}

fn load(path: &Path) -> Result<Mesh> {
    load_mesh_file(path).with_context(|| format!("loading {}", path.display()))
}

fn save(mesh: &Mesh, path: &Path) -> Result<()> {
    save_mesh_file(mesh, path).with_context(|| format!("writing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verdict(smooth: bool) -> ExitCode {
    ExitCode::from(if smooth { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { mesh, json, colored_obj: obj } => {
            let m = load(&mesh)?;
            let r = analyze(&m);
            let s = &r.summary;
            say!(
                "{}: {} ({} of {} vertices and {} of {} faces analyzed, {} violations)",
                mesh.display(),
                if r.smooth { "smooth" } else { "not smooth" },
                s.analyzed_vertices,
                s.vertices,
                s.analyzed_faces,
                s.faces,
                s.violations
            );
            for v in &r.violations {
                let at = match (v.vertex, v.face) {
                    (Some(v), _) => format!("vertex {v}"),
                    (_, Some(f)) => format!("face {f}"),
                    _ => "mesh".into(),
                };
                say!("  condition {} {} at {at}: {}", v.condition, v.code, v.detail);
            }
            for c in &r.caveats {
                say!("  note: {} {}", c.code, c.detail);
            }
            if let Some(p) = json {
                write(&p, &to_json(&r)?)?;
            }
            if let Some(p) = obj {
                write(&p, &colored_obj(&m, &r))?;
            }
            Ok(verdict(r.smooth))
        }
        Command::Classify { mesh, target } => {
            let m = load(&mesh)?;
            let r = analyze(&m);
            let (status, smooth, text) = match (target.vertex, target.face) {
                (Some(v), _) => {
                    let e = r.vertices.get(v).with_context(|| format!("no vertex {v}"))?;
                    (e.status, e.smooth, serde_json::to_string_pretty(e)?)
                }
                (_, Some(f)) => {
                    let e = r.faces.get(f).with_context(|| format!("no face {f}"))?;
                    (e.status, e.smooth, serde_json::to_string_pretty(e)?)
                }
                _ => unreachable!("clap enforces one target"),
            };
            say!("{text}");
            if status == Status::Skipped {
                bail!("target touches the boundary and was not analyzed");
            }
            Ok(verdict(smooth && status == Status::Analyzed))
        }
        Command::Gaussimage { mesh, vertex, svg } => {
            let m = load(&mesh)?;
            write(&svg, &gauss_svg(&m, &vertex)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { mesh, center, o } => {
            let m = load(&mesh)?;
            let c = match center {
                Some(c) => c,
                None => find_admissible_center(&m)?,
            };
            let d = polar_dual(&m, &c)?;
            save(&d.mesh, &o)?;
            say!("center {} {} {}", c.x, c.y, c.z);
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform { mesh, matrix, o } => {
            let m = load(&mesh)?;
            let text = std::fs::read_to_string(&matrix).with_context(|| format!("reading {}", matrix.display()))?;
            let p: ProjectiveMap = serde_json::from_str(&text).context("matrix must be 16 row-major reals")?;
            save(&apply_projective(&m, &p)?, &o)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { fixture, params, o } => {
            let spec = FixtureSpec::parse(&fixture, params.iter().map(String::as_str))?;
            save(&generate(&spec)?, &o)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
