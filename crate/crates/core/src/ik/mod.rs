//! Inverse kinematics for the three positioning joints of the arm.

mod forward;
mod geometry;
mod solver;

pub use forward::{forward_chain, forward_kinematics, ChainPoints};
pub use geometry::RobotGeometry;
pub use solver::{
    base_plane, effector_plane, joint_angles, reachable, solve_ik, solve_j2, solve_j3, solve_xh, wrap_angle,
    Reachability,
};

use std::fmt;

use thiserror::Error;

use crate::cga::CgaError;
use crate::Vec3;

/// Construction step at which a solve failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    EffectorPlane,
    Xh,
    J2,
    J3,
    Angles,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::EffectorPlane => "effector plane",
            Stage::Xh => "x_h",
            Stage::J2 => "J2",
            Stage::J3 => "J3",
            Stage::Angles => "joint angles",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IkError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("config: {0}")]
    Config(String),
    #[error("non-finite target")]
    NonFiniteTarget,
    #[error("degenerate effector plane")]
    DegeneratePlane,
    #[error("{}", unreachable_message(*.stage))]
    Unreachable { stage: Stage },
    #[error("target outside wrist workspace (|x_e - J2| = {distance:.3} mm)")]
    OutsideWorkspace { distance: f64 },
    #[error("degenerate link (coincident joints)")]
    DegenerateLink,
    #[error("joint {joint} angle {angle:.6} rad outside limits")]
    JointLimit { joint: u8, angle: f64 },
    #[error("{stage}: {source}")]
    Cga { stage: Stage, source: CgaError },
}

fn unreachable_message(stage: Stage) -> String {
    match stage {
        Stage::J2 => "J2 unreachable for this geometry/target".to_string(),
        other => format!("{other} unreachable for this geometry/target"),
    }
}

/// Which of the two J3 candidates to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    ElbowUp,
    ElbowDown,
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "up" => Ok(Branch::ElbowUp),
            "down" => Ok(Branch::ElbowDown),
            other => Err(format!("unknown branch `{other}` (expected up or down)")),
        }
    }
}

/// Radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointAngles {
    pub theta0: f64,
    pub theta2: f64,
    pub theta3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IkSolution {
    pub angles: JointAngles,
    pub x_h: Vec3,
    pub j2: Vec3,
    pub j3: Vec3,
    pub effector: Vec3,
    pub branch: Branch,
}
