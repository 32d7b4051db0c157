use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bciarm::cga::expr::{evaluate, format_terms};
use bciarm::config::KeyValues;
use bciarm::ik::{forward_kinematics, reachable, solve_ik, Branch, RobotGeometry};
use bciarm::vision::{locate_items, random_camera, render_scene, Noise, Palette, RasterImage, RenderOptions, Scene};
use bciarm::Vec3;
use clap::Subcommand;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Subcommand)]
pub enum CgaCommand {
    /// Evaluate an expression such as `(e1 + 2*einf) ^ e0` and print its blades.
    Eval { expr: String },
}

#[derive(Subcommand)]
pub enum IkCommand {
    /// Joint angles for an effector position.
    Solve {
        /// Geometry file; built-in dimensions when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// X,Y,Z in mm.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "up")]
        branch: Branch,
    },
    /// Whether a position can be reached, and if not, why.
    Check {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
}

#[derive(Subcommand)]
pub enum VisionCommand {
    /// Find the disk and both targets in a PPM image.
    Locate {
        #[arg(long)]
        image: PathBuf,
        /// Colour thresholds; defaults when omitted.
        #[arg(long)]
        colors: Option<PathBuf>,
    },
    /// Draw a scene through a random camera.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "none")]
        noise: Noise,
        #[arg(long, default_value_t = 640)]
        width: usize,
        #[arg(long, default_value_t = 480)]
        height: usize,
    },
}

pub fn load_geometry(path: Option<&Path>) -> Result<RobotGeometry> {
    match path {
        Some(p) => RobotGeometry::load(p).with_context(|| format!("geometry {}", p.display())),
        None => Ok(RobotGeometry::default()),
    }
}

pub fn load_scene(path: &Path) -> Result<Scene> {
    let kv = KeyValues::load(path).with_context(|| format!("scene {}", path.display()))?;
    Ok(Scene::from_config(&kv)?)
}

fn parse_target(s: &str) -> Result<Vec3> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("target `{s}`"))?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => anyhow::bail!("target `{s}` needs three comma-separated numbers"),
    }
}

pub fn cga(cmd: CgaCommand) -> Result<()> {
    match cmd {
        CgaCommand::Eval { expr } => {
            print!("{}", format_terms(&evaluate(&expr)?));
            Ok(())
        }
    }
}

pub fn ik(cmd: IkCommand) -> Result<()> {
    match cmd {
        IkCommand::Solve { config, target, branch } => {
            let geom = load_geometry(config.as_deref())?;
            let x_e = parse_target(&target)?;
            let sol = solve_ik(&geom, &x_e, branch)?;
            let a = sol.angles;
            println!("joint,rad,deg");
            for (name, v) in [("theta0", a.theta0), ("theta2", a.theta2), ("theta3", a.theta3)] {
                println!("{name},{v:.9},{:.6}", v.to_degrees());
            }
            let err = (forward_kinematics(&geom, &a) - x_e).norm();
            println!("round_trip_error_mm,{err:.3e}");
            Ok(())
        }
        IkCommand::Check { config, target } => {
            let geom = load_geometry(config.as_deref())?;
            let r = reachable(&geom, &parse_target(&target)?);
            match r.reason() {
                None => println!("reachable"),
                Some(why) => println!("unreachable: {why}"),
            }
            Ok(())
        }
    }
}

pub fn vision(cmd: VisionCommand) -> Result<()> {
    match cmd {
        VisionCommand::Locate { image, colors } => {
            let palette = match colors {
                Some(p) => Palette::from_config(&KeyValues::load(&p).with_context(|| format!("colors {}", p.display()))?)?,
                None => Palette::default(),
            };
            let img = RasterImage::load(&image)?;
            let scene = locate_items(&img, &palette)?.scene;
            println!("item,x_mm,y_mm");
            println!("disk,{:.3},{:.3}", scene.disk.x, scene.disk.y);
            let [lc, rc] = scene.target_colors;
            println!("target_{lc},{:.3},{:.3}", scene.target_left.x, scene.target_left.y);
            println!("target_{rc},{:.3},{:.3}", scene.target_right.x, scene.target_right.y);
            Ok(())
        }
        VisionCommand::Render {
            scene,
            out,
            seed,
            noise,
            width,
            height,
        } => {
            let scene = load_scene(&scene)?;
            let camera = random_camera(&mut ChaCha8Rng::seed_from_u64(seed), width, height);
            let opts = RenderOptions {
                width,
                height,
                noise,
                seed,
            };
            render_scene(&scene, &camera, &opts)?.save(&out)?;
            Ok(())
        }
    }
}
