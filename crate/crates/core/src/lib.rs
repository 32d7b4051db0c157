//! Machine side of a motor-imagery brain-computer interface driving a 5-DOF
//! arm: a conformal geometric algebra inverse-kinematics solver, a tabletop
//! vision pipeline, the EEG classification and P300 analytics, and the
//! process-control and goal-selection strategies.

pub mod cga;
pub mod config;
pub mod control;
pub mod ik;
pub mod vision;
pub mod bci;
pub mod tolerance;

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Vec2 = nalgebra::Vector2<f64>;
