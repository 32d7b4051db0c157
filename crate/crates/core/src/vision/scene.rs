use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::config::KeyValues;
use crate::Vec2;

use super::color::ColorName;
use super::frame::{plane_to_robot_frame, robot_to_plane_frame, PLANE_SIZE};
use super::homography::Homography;
use super::image::{RasterImage, DEFAULT_HEIGHT, DEFAULT_WIDTH};
use super::VisionError;

pub const MARKER_SIDE: f64 = 30.0;
pub const DISK_RADIUS: f64 = 13.0;
pub const TARGET_RADIUS: f64 = 42.0;
pub const BACKGROUND: [u8; 3] = [255, 255, 255];

/// Marker colours and their centres in the plane frame.
pub const MARKERS: [(ColorName, [f64; 2]); 4] = [
    (ColorName::Cyan, [15.0, 15.0]),
    (ColorName::Orange, [385.0, 15.0]),
    (ColorName::Magenta, [15.0, 385.0]),
    (ColorName::Yellow, [385.0, 385.0]),
];

pub fn marker_centers() -> [Vec2; 4] {
    MARKERS.map(|(_, p)| Vec2::new(p[0], p[1]))
}

/// Item positions in the robot frame; markers in the plane frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub disk: Vec2,
    pub target_left: Vec2,
    pub target_right: Vec2,
    /// Sticker colours of the left and right targets.
    pub target_colors: [ColorName; 2],
    pub markers: [Vec2; 4],
}

impl Scene {
    pub fn new(disk: Vec2, target_left: Vec2, target_right: Vec2) -> Self {
        Self {
            disk,
            target_left,
            target_right,
            target_colors: [ColorName::Green, ColorName::Red],
            markers: marker_centers(),
        }
    }

    fn circles(&self) -> [(Vec2, f64, &'static str); 3] {
        [
            (robot_to_plane_frame(&self.disk), DISK_RADIUS, "disk"),
            (robot_to_plane_frame(&self.target_left), TARGET_RADIUS, "left target"),
            (robot_to_plane_frame(&self.target_right), TARGET_RADIUS, "right target"),
        ]
    }

    /// Items fully inside the square, clear of the markers and of each other,
    /// left target strictly left of the right one.
    pub fn validate(&self) -> Result<(), VisionError> {
        let bad = |m: String| Err(VisionError::InvalidScene(m));
        let mut colors = self.target_colors;
        colors.sort();
        if colors != [ColorName::Green, ColorName::Red] {
            return bad("targets must be one green and one red".into());
        }
        let circles = self.circles();
        for (c, r, name) in circles {
            if !c.iter().all(|v| v.is_finite()) {
                return bad(format!("{name} position is not finite"));
            }
            if c.x - r < 0.0 || c.y - r < 0.0 || c.x + r > PLANE_SIZE || c.y + r > PLANE_SIZE {
                return bad(format!("{name} extends outside the square"));
            }
            for m in marker_centers() {
                let half = MARKER_SIDE / 2.0;
                let dx = ((c.x - m.x).abs() - half).max(0.0);
                let dy = ((c.y - m.y).abs() - half).max(0.0);
                if dx.hypot(dy) <= r {
                    return bad(format!("{name} overlaps a marker"));
                }
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, ra, na) = circles[i];
                let (b, rb, nb) = circles[j];
                if (a - b).norm() <= ra + rb {
                    return bad(format!("{na} overlaps {nb}"));
                }
            }
        }
        if self.target_left.x >= self.target_right.x {
            return bad("left target must have the smaller x".into());
        }
        Ok(())
    }

    /// Keys `disk`, `target_left`, `target_right` (robot frame, `x, y` in mm)
    /// and optional `left_color`.
    pub fn from_config(kv: &KeyValues) -> Result<Self, VisionError> {
        let point = |key: &str| -> Result<Vec2, VisionError> {
            let v = kv
                .f64_array::<2>(key)
                .map_err(|e| VisionError::Config(e.to_string()))?
                .ok_or_else(|| VisionError::Config(format!("missing key `{key}`")))?;
            Ok(Vec2::new(v[0], v[1]))
        };
        let mut scene = Scene::new(point("disk")?, point("target_left")?, point("target_right")?);
        if let Some(c) = kv.get("left_color") {
            let left: ColorName = c.parse()?;
            let right = if left == ColorName::Green { ColorName::Red } else { ColorName::Green };
            scene.target_colors = [left, right];
        }
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_config(&self) -> String {
        format!(
            "disk = {}, {}\ntarget_left = {}, {}\ntarget_right = {}, {}\nleft_color = {}\n",
            self.disk.x,
            self.disk.y,
            self.target_left.x,
            self.target_left.y,
            self.target_right.x,
            self.target_right.y,
            self.target_colors[0]
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Noise {
    #[default]
    None,
    /// Independent Gaussian noise with σ = 6 on every channel.
    Low,
}

impl std::str::FromStr for Noise {
    type Err = VisionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Noise::None),
            "low" => Ok(Noise::Low),
            other => Err(VisionError::Config(format!("unknown noise level `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub width: usize,
    pub height: usize,
    pub noise: Noise,
    pub seed: u64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            noise: Noise::None,
            seed: 0,
        }
    }
}

/// What a plane-frame point shows, front to back: disk, targets, markers.
pub fn paint_at(scene: &Scene, q: &Vec2) -> Option<ColorName> {
    if (q - robot_to_plane_frame(&scene.disk)).norm() <= DISK_RADIUS {
        return Some(ColorName::Blue);
    }
    if (q - robot_to_plane_frame(&scene.target_left)).norm() <= TARGET_RADIUS {
        return Some(scene.target_colors[0]);
    }
    if (q - robot_to_plane_frame(&scene.target_right)).norm() <= TARGET_RADIUS {
        return Some(scene.target_colors[1]);
    }
    let half = MARKER_SIDE / 2.0;
    MARKERS.iter().find_map(|&(color, [mx, my])| {
        let inside = q.x >= mx - half && q.x < mx + half && q.y >= my - half && q.y < my + half;
        inside.then_some(color)
    })
}

/// Checks that the whole plane square lands inside the frame, in front of
/// the camera.
pub fn check_camera(camera: &Homography, width: usize, height: usize) -> Result<(), VisionError> {
    for c in [[0.0, 0.0], [PLANE_SIZE, 0.0], [0.0, PLANE_SIZE], [PLANE_SIZE, PLANE_SIZE]] {
        let p = Vec2::new(c[0], c[1]);
        if camera.weight(&p) <= 0.0 {
            return Err(VisionError::OffFrame(format!("plane corner {p:?} is behind the camera")));
        }
        let px = camera.apply(&p)?;
        if !(px.x >= 0.0 && px.y >= 0.0 && px.x <= (width - 1) as f64 && px.y <= (height - 1) as f64) {
            return Err(VisionError::OffFrame(format!(
                "plane corner ({}, {}) projects to ({:.1}, {:.1})",
                p.x, p.y, px.x, px.y
            )));
        }
    }
    Ok(())
}

/// Renders the scene as seen through `camera` (plane mm to pixels). Each
/// pixel centre is mapped back to the plane and takes the colour found
/// there.
pub fn render_scene(scene: &Scene, camera: &Homography, opts: &RenderOptions) -> Result<RasterImage, VisionError> {
    scene.validate()?;
    check_camera(camera, opts.width, opts.height)?;
    let back = camera.inverse();
    let mut img = RasterImage::new(opts.width, opts.height, BACKGROUND);
    for y in 0..opts.height {
        for x in 0..opts.width {
            let px = Vec2::new(x as f64, y as f64);
            if back.weight(&px) <= 0.0 {
                continue;
            }
            let Ok(q) = back.apply(&px) else { continue };
            if let Some(c) = paint_at(scene, &q) {
                img.set(x, y, c.nominal());
            }
        }
    }
    if opts.noise == Noise::Low {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(opts.seed);
        let normal = Normal::new(0.0, 6.0).expect("valid σ");
        for y in 0..opts.height {
            for x in 0..opts.width {
                let c = img.get(x, y).map(|v| (v as f64 + normal.sample(&mut rng)).round().clamp(0.0, 255.0) as u8);
                img.set(x, y, c);
            }
        }
    }
    Ok(img)
}

/// Plane-to-pixel camera: the square scaled to roughly 0.8–1.05 px/mm,
/// turned by up to ±0.25 rad, tilted in perspective and shifted, retried
/// until it fits the frame.
pub fn random_camera<R: Rng>(rng: &mut R, width: usize, height: usize) -> Homography {
    let half = PLANE_SIZE / 2.0;
    loop {
        let s = rng.random_range(0.8..1.05);
        let a: f64 = rng.random_range(-0.25..0.25);
        let (sa, ca) = a.sin_cos();
        let g = rng.random_range(-8e-4..8e-4);
        let h = rng.random_range(-8e-4..8e-4);
        let tx = width as f64 / 2.0 + rng.random_range(-20.0..20.0);
        let ty = height as f64 / 2.0 + rng.random_range(-20.0..20.0);
        // centre the square, rotate and scale, add the projective row, move to the image centre
        let centre = nalgebra::Matrix3::new(1.0, 0.0, -half, 0.0, 1.0, -half, 0.0, 0.0, 1.0);
        let rs = nalgebra::Matrix3::new(s * ca, -s * sa, 0.0, s * sa, s * ca, 0.0, 0.0, 0.0, 1.0);
        let proj = nalgebra::Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, g, h, 1.0);
        let shift = nalgebra::Matrix3::new(1.0, 0.0, tx, 0.0, 1.0, ty, 0.0, 0.0, 1.0);
        let Ok(cam) = Homography::new(shift * proj * rs * centre) else { continue };
        if check_camera(&cam, width, height).is_ok() {
            return cam;
        }
    }
}

/// Valid scene with the items placed uniformly at random.
pub fn random_scene<R: Rng>(rng: &mut R) -> Scene {
    random_scene_where(rng, |_| true)
}

/// Like [`random_scene`], retrying until `accept` holds.
pub fn random_scene_where<R: Rng, F: Fn(&Scene) -> bool>(rng: &mut R, accept: F) -> Scene {
    let sample = |r: f64, rng: &mut R| {
        let p = Vec2::new(
            rng.random_range(r..PLANE_SIZE - r),
            rng.random_range(r..PLANE_SIZE - r),
        );
        plane_to_robot_frame(&p)
    };
    loop {
        let disk = sample(DISK_RADIUS, rng);
        let mut a = sample(TARGET_RADIUS, rng);
        let mut b = sample(TARGET_RADIUS, rng);
        if a.x > b.x {
            std::mem::swap(&mut a, &mut b);
        }
        let mut scene = Scene::new(disk, a, b);
        if rng.random_bool(0.5) {
            scene.target_colors = [ColorName::Red, ColorName::Green];
        }
        if scene.validate().is_ok() && accept(&scene) {
            return scene;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn scene() -> Scene {
        Scene::new(Vec2::new(50.0, 200.0), Vec2::new(-100.0, 250.0), Vec2::new(100.0, 150.0))
    }

    #[test]
    fn identity_camera_paints_axis_aligned() {
        let img = render_scene(&scene(), &Homography::identity(), &RenderOptions::default()).unwrap();
        assert_eq!(img.get(0, 0), ColorName::Cyan.nominal());
        assert_eq!(img.get(29, 29), ColorName::Cyan.nominal());
        assert_eq!(img.get(30, 30), BACKGROUND);
        assert_eq!(img.get(399, 0), ColorName::Orange.nominal());
        assert_eq!(img.get(250, 200), ColorName::Blue.nominal());
        assert_eq!(img.get(500, 10), BACKGROUND);
    }

    #[test]
    fn off_frame_camera_rejected() {
        let cam = Homography::from_row_slice(&[3.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            render_scene(&scene(), &cam, &RenderOptions::default()),
            Err(VisionError::OffFrame(_))
        ));
    }

    #[test]
    fn validation() {
        scene().validate().unwrap();
        let mut s = scene();
        s.target_right = s.target_left + Vec2::new(10.0, 0.0);
        assert!(s.validate().is_err());
        let mut s = scene();
        s.disk = Vec2::new(-195.0, 200.0);
        assert!(s.validate().is_err());
    }

    #[test]
    fn config_round_trip() {
        let mut s = scene();
        s.target_colors = [ColorName::Red, ColorName::Green];
        let kv = KeyValues::parse(&s.to_config()).unwrap();
        assert_eq!(Scene::from_config(&kv).unwrap(), s);
    }

    #[test]
    fn random_generators_are_valid_and_seeded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            random_scene(&mut rng).validate().unwrap();
            check_camera(&random_camera(&mut rng, 640, 480), 640, 480).unwrap();
        }
        let a = random_scene(&mut rand_chacha::ChaCha8Rng::seed_from_u64(5));
        let b = random_scene(&mut rand_chacha::ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }
}
