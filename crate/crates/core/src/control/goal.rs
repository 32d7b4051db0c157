//! Pick-and-place plans for the goal-selection strategy.

use std::fmt;

use crate::bci::Label;
use crate::ik::{solve_ik, Branch, IkSolution, RobotGeometry};
use crate::vision::{Scene, VisionError};
use crate::{Vec2, Vec3};

use super::process::home;
use super::ControlError;

pub const APPROACH_HEIGHT: f64 = 40.0;
pub const DISK_HEIGHT: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gripper {
    None,
    Close,
    Open,
}

impl fmt::Display for Gripper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gripper::None => "none",
            Gripper::Close => "close",
            Gripper::Open => "open",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Waypoint {
    pub name: &'static str,
    pub position: Vec3,
    pub gripper: Gripper,
    pub solution: IkSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskPlan {
    pub waypoints: Vec<Waypoint>,
    /// Where the disk is put down, table plane.
    pub target: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    /// Above the grasp height, mm.
    pub approach_height: f64,
    pub disk_height: f64,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            approach_height: APPROACH_HEIGHT,
            disk_height: DISK_HEIGHT,
        }
    }
}

/// home, above-disk, grasp, close, above-disk, above-target, release, open,
/// home; every pose solved elbow-up.
pub fn plan_pick_and_place(
    geom: &RobotGeometry,
    opts: &PlanOptions,
    disk: &Vec2,
    target: &Vec2,
) -> Result<TaskPlan, ControlError> {
    let grasp_z = -geom.base_height + opts.disk_height;
    let at = |p: &Vec2, dz: f64| Vec3::new(p.x, p.y, grasp_z + dz);
    let h = opts.approach_height;
    let poses = [
        ("home", home(), Gripper::None),
        ("above-disk", at(disk, h), Gripper::None),
        ("grasp", at(disk, 0.0), Gripper::None),
        ("grasp", at(disk, 0.0), Gripper::Close),
        ("above-disk", at(disk, h), Gripper::None),
        ("above-target", at(target, h), Gripper::None),
        ("release", at(target, 0.0), Gripper::None),
        ("release", at(target, 0.0), Gripper::Open),
        ("home", home(), Gripper::None),
    ];
    let waypoints = poses
        .into_iter()
        .map(|(name, position, gripper)| {
            let solution = solve_ik(geom, &position, Branch::ElbowUp)
                .map_err(|source| ControlError::Unreachable { waypoint: name, source })?;
            Ok(Waypoint {
                name,
                position,
                gripper,
                solution,
            })
        })
        .collect::<Result<_, ControlError>>()?;
    Ok(TaskPlan {
        waypoints,
        target: *target,
    })
}

/// RHIM places the disk on the target with the greater x, LHIM on the
/// smaller; REST keeps the arm at home (`None`).
pub fn goal_selection_dispatch(
    geom: &RobotGeometry,
    opts: &PlanOptions,
    label: Label,
    scene: &Scene,
) -> Result<Option<TaskPlan>, ControlError> {
    let (a, b) = (scene.target_left, scene.target_right);
    if a.x == b.x {
        return Err(VisionError::TargetTie.into());
    }
    let (small, great) = if a.x < b.x { (a, b) } else { (b, a) };
    let target = match label {
        Label::Rest => return Ok(None),
        Label::Lhim => small,
        Label::Rhim => great,
    };
    plan_pick_and_place(geom, opts, &scene.disk, &target).map(Some)
}
