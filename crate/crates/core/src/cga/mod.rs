//! Conformal geometric algebra kernel over Cl(4,1).

pub mod blade;
pub mod entity;
pub mod expr;
pub mod measure;
pub mod multivector;

pub use entity::{
    embed_point, extract_point, intersect_circle_plane, intersect_plane_sphere, intersect_spheres,
    make_line, make_plane_wedge, make_sphere, split_point_pair, split_point_pair_both, Circle,
    ConformalPoint, Line, PairSign, Plane, PointPair, Reality, Sphere,
};
pub use measure::{angle_between, line_direction, plane_normal, Orientation};
pub use multivector::Multivector;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CgaError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("point at infinity")]
    PointAtInfinity,
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("degenerate wedge (factors are linearly dependent)")]
    DegenerateWedge,
    #[error("wedge is not a plane")]
    NotAPlane,
    #[error("concentric spheres have no intersection circle")]
    ConcentricSpheres,
    #[error("coincident entities have no defined intersection")]
    CoincidentEntities,
    #[error("circle lies within the plane")]
    CircleInPlane,
    #[error("imaginary pair (radius² = {0})")]
    ImaginaryPair(f64),
    #[error("degenerate denominator e∞·Pp")]
    DegenerateDenominator,
    #[error("zero direction")]
    ZeroDirection,
    #[error("zero vector")]
    ZeroVector,
    #[error("expression error: {0}")]
    Parse(String),
}

/// Sign picked up by applying [`Multivector::dual`] twice to a grade-`k`
/// element. `(I_c⁻¹)² = −1` and the pseudoscalar is central in five
/// dimensions, so the sign is −1 for every grade.
pub const fn double_dual_sign(_grade: u32) -> f64 {
    -1.0
}
