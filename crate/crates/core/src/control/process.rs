//! Axis-by-axis effector steering from motor-imagery labels.

use std::fmt;

use crate::bci::Label;
use crate::ik::{reachable, RobotGeometry};
use crate::Vec3;

/// Displacement per LHIM/RHIM event, mm.
pub const STEP_MM: f64 = 10.0;

/// Effector rest pose, mm.
pub const HOME: [f64; 3] = [0.0, 155.5, 284.3];

pub fn home() -> Vec3 {
    Vec3::from(HOME)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// y → z → x → y.
    pub fn next(self) -> Axis {
        match self {
            Axis::Y => Axis::Z,
            Axis::Z => Axis::X,
            Axis::X => Axis::Y,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessControlState {
    pub effector: Vec3,
    pub active_axis: Axis,
    /// 0 or 1.
    pub consecutive_rest_count: u8,
}

impl Default for ProcessControlState {
    fn default() -> Self {
        Self::at(home())
    }
}

impl ProcessControlState {
    pub fn at(effector: Vec3) -> Self {
        Self {
            effector,
            active_axis: Axis::Y,
            consecutive_rest_count: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    Moved { axis: Axis, delta: f64 },
    /// Move refused because the new position leaves the workspace.
    Rejected { axis: Axis, delta: f64 },
    /// First REST of a pair.
    Hold,
    AxisChange { from: Axis, to: Axis },
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Moved { axis, delta } => write!(f, "move {axis}{delta:+}"),
            Action::Rejected { axis, delta } => write!(f, "reject {axis}{delta:+}"),
            Action::Hold => f.write_str("hold"),
            Action::AxisChange { from, to } => write!(f, "axis {from}->{to}"),
        }
    }
}

/// Reachable by the arm and not below the table top.
pub fn in_workspace(geom: &RobotGeometry, p: &Vec3) -> bool {
    p.z >= -geom.base_height && reachable(geom, p).is_reachable()
}

pub fn process_control_step(
    geom: &RobotGeometry,
    state: &ProcessControlState,
    label: Label,
) -> (ProcessControlState, Action) {
    let mut next = *state;
    let delta = match label {
        Label::Lhim => -STEP_MM,
        Label::Rhim => STEP_MM,
        Label::Rest => {
            if state.consecutive_rest_count == 0 {
                next.consecutive_rest_count = 1;
                return (next, Action::Hold);
            }
            next.consecutive_rest_count = 0;
            next.active_axis = state.active_axis.next();
            return (
                next,
                Action::AxisChange {
                    from: state.active_axis,
                    to: next.active_axis,
                },
            );
        }
    };
    let axis = state.active_axis;
    let mut p = state.effector;
    p[axis.index()] += delta;
    if !in_workspace(geom, &p) {
        return (*state, Action::Rejected { axis, delta });
    }
    next.effector = p;
    next.consecutive_rest_count = 0;
    (next, Action::Moved { axis, delta })
}
