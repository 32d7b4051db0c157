//! Direction vectors and angles read off lines and planes.

use super::entity::{Line, Plane};
use super::multivector::Multivector;
use super::CgaError;
use crate::tolerance::Tolerance;
use crate::Vec3;

/// Sense of rotation from the first vector to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    /// Orientation of the rotation `alpha → beta` seen from the tip of `normal`.
    pub fn about(normal: &Vec3, alpha: &Vec3, beta: &Vec3) -> Self {
        if normal.dot(&alpha.cross(beta)) >= 0.0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        }
    }
}

fn to_vec3(mv: &Multivector) -> Vec3 {
    let [x, y, z] = mv.euclidean_part();
    Vec3::new(x, y, z)
}

/// `(l·e0)·e∞` as a Euclidean vector. For `l = P1∧P2∧e∞` this is `x1 − x2`.
pub fn line_direction(line: &Line, tol: &Tolerance) -> Result<Vec3, CgaError> {
    let d = (*line.mv() | Multivector::e0()) | Multivector::einf();
    let v = to_vec3(&d.grade_part(1));
    if tol.is_zero(v.norm(), line.mv().max_abs()) {
        return Err(CgaError::ZeroDirection);
    }
    Ok(v)
}

/// `(π*∧e∞)·e0` as a Euclidean vector.
pub fn plane_normal(plane: &Plane, tol: &Tolerance) -> Result<Vec3, CgaError> {
    let n = (plane.dual() ^ Multivector::einf()) | Multivector::e0();
    let v = to_vec3(&n.grade_part(1));
    if tol.is_zero(v.norm(), plane.mv().max_abs()) {
        return Err(CgaError::ZeroDirection);
    }
    Ok(v)
}

/// `θ = Atan2[(α∧β)/N̂, α·β]` with `N̂ = ±α̂∧β̂/‖α̂∧β̂‖`, the sign chosen by
/// `orientation`. The result lies in `(−π, π]`; parallel inputs give 0 and
/// antiparallel inputs give π regardless of orientation.
pub fn angle_between(alpha: &Vec3, beta: &Vec3, orientation: Orientation) -> Result<f64, CgaError> {
    if alpha.norm() == 0.0 || beta.norm() == 0.0 || !alpha.iter().chain(beta.iter()).all(|c| c.is_finite()) {
        return Err(CgaError::ZeroVector);
    }
    let a = Multivector::euclidean([alpha.x, alpha.y, alpha.z]);
    let b = Multivector::euclidean([beta.x, beta.y, beta.z]);
    let wedge = a ^ b;
    // Euclidean bivectors square to −‖B‖²
    let magnitude = (-(wedge * wedge).scalar_part()).max(0.0).sqrt();
    let dot = (a | b).scalar_part();
    if magnitude == 0.0 {
        return Ok(if dot >= 0.0 { 0.0 } else { std::f64::consts::PI });
    }
    let signed = match orientation {
        Orientation::Ccw => magnitude,
        Orientation::Cw => -magnitude,
    };
    Ok(signed.atan2(dot))
}
