//! Table-plane (marker square) and robot-frame coordinates, both in mm.
//!
//! The plane square spans `[0, 400]²` with the cyan marker at the origin
//! corner. The robot sits at the middle of the far edge (`y = 400`), looking
//! toward the near edge, so
//!
//! ```text
//! robot x = plane x − 200
//! robot y = 400 − plane y
//! ```

use crate::Vec2;

pub const PLANE_SIZE: f64 = 400.0;

pub fn plane_to_robot_frame(p: &Vec2) -> Vec2 {
    Vec2::new(p.x - PLANE_SIZE / 2.0, PLANE_SIZE - p.y)
}

pub fn robot_to_plane_frame(r: &Vec2) -> Vec2 {
    Vec2::new(r.x + PLANE_SIZE / 2.0, PLANE_SIZE - r.y)
}
