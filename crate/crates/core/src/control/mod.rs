//! Process-control and goal-selection strategies, session scripts and
//! replay.

pub mod goal;
pub mod process;
pub mod script;
pub mod session;

pub use goal::{goal_selection_dispatch, plan_pick_and_place, Gripper, PlanOptions, TaskPlan, Waypoint};
pub use process::{home, in_workspace, process_control_step, Action, Axis, ProcessControlState, HOME, STEP_MM};
pub use script::{schedule_stimuli, Mode, SessionScript, Stimulus, Strategy};
pub use session::{
    classify_outcomes, run_session, script_outcomes, LogEntry, SessionMetrics, SessionReport, SessionSetup,
    PROCESS_TARGET,
};

use thiserror::Error;

use crate::bci::BciError;
use crate::ik::IkError;
use crate::vision::VisionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ControlError {
    #[error("malformed script: {0}")]
    Script(String),
    #[error("{0}")]
    Io(String),
    #[error("waypoint {waypoint} unreachable: {source}")]
    Unreachable { waypoint: &'static str, source: IkError },
    #[error(transparent)]
    Ik(#[from] IkError),
    #[error(transparent)]
    Vision(#[from] VisionError),
    #[error(transparent)]
    Bci(#[from] BciError),
}
