//! Tabletop localisation: colour blobs, a four-marker homography and the
//! robot frame.

pub mod color;
pub mod frame;
pub mod homography;
pub mod image;
pub mod locate;
pub mod scene;
pub mod segment;

pub use color::{ColorName, ColorSpec, Palette};
pub use frame::{plane_to_robot_frame, robot_to_plane_frame};
pub use homography::{estimate_homography, Homography};
pub use image::RasterImage;
pub use locate::{detect_markers, locate_items, Localization, MarkerObservation};
pub use scene::{random_camera, random_scene, random_scene_where, render_scene, Noise, RenderOptions, Scene};
pub use segment::{connected_components, segment_color, Component, Mask};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VisionError {
    #[error("image: {0}")]
    Image(String),
    #[error("io: {0}")]
    Io(String),
    #[error("config: {0}")]
    Config(String),
    #[error("homography is singular")]
    SingularHomography,
    #[error("correspondences are degenerate (coincident or collinear points)")]
    DegenerateCorrespondences,
    #[error("point maps to infinity")]
    PointAtInfinity,
    #[error("no {0} component found")]
    MissingItem(ColorName),
    #[error("{count} {color} components found, expected one")]
    Ambiguous { color: ColorName, count: usize },
    #[error("targets have the same x coordinate")]
    TargetTie,
    #[error("off frame: {0}")]
    OffFrame(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
}

impl From<std::io::Error> for VisionError {
    fn from(e: std::io::Error) -> Self {
        VisionError::Io(e.to_string())
    }
}
