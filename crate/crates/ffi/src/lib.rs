//! C interface.
//!
//! Every fallible call returns a [`BciarmStatus`]; on failure the message is
//! kept per thread and read back with [`bciarm_last_error`]. Objects are opaque
//! handles created by `*_new`/`*_load` and released by the matching `*_free`.
//! Labels use 1 = LHIM, 2 = REST, 3 = RHIM, with 0 for an undecided stimulus.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use bciarm::bci::p300::p300_from_average;
use bciarm::bci::signal::load_events;
use bciarm::bci::{anova_oneway, BciError, ClassifierModel, Decision, Label, SignalBlock};
use bciarm::cga::expr::evaluate;
use bciarm::control::{process_control_step, Action, ProcessControlState};
use bciarm::ik::{forward_kinematics, reachable, solve_ik, Branch, IkError, JointAngles, RobotGeometry};
use bciarm::Vec3;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BciarmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unreachable = 3,
    Io = 4,
    Parse = 5,
    Numeric = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BciarmBranch {
    ElbowUp = 0,
    ElbowDown = 1,
}

/// Radians.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BciarmJointAngles {
    pub theta0: f64,
    pub theta2: f64,
    pub theta3: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BciarmActionKind {
    Moved = 0,
    Rejected = 1,
    Hold = 2,
    AxisChange = 3,
}

/// Axis indices are 0 = x, 1 = y, 2 = z.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BciarmAction {
    pub kind: BciarmActionKind,
    pub axis: u32,
    pub delta_mm: f64,
    pub new_axis: u32,
}

pub struct BciarmGeometry(RobotGeometry);

pub struct BciarmProcessState(ProcessControlState);

pub struct BciarmModel(ClassifierModel);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: BciarmStatus, msg: impl Into<String>) -> BciarmStatus {
    set_error(msg);
    status
}

fn ik_status(e: &IkError) -> BciarmStatus {
    match e {
        IkError::InvalidGeometry(_) | IkError::NonFiniteTarget => BciarmStatus::InvalidArgument,
        IkError::Config(_) => BciarmStatus::Parse,
        _ => BciarmStatus::Unreachable,
    }
}

fn bci_status(e: &BciError) -> BciarmStatus {
    match e {
        BciError::Io(_) => BciarmStatus::Io,
        BciError::Parse(_) => BciarmStatus::Parse,
        BciError::NoP300Peak | BciError::IdenticalSamples => BciarmStatus::Numeric,
        _ => BciarmStatus::InvalidArgument,
    }
}

/// Runs `f`, turning panics into [`BciarmStatus::Panic`].
fn guard<F: FnOnce() -> BciarmStatus>(f: F) -> BciarmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(BciarmStatus::Panic, "internal panic"),
    }
}

unsafe fn path_arg(p: *const c_char, what: &str) -> Result<PathBuf, BciarmStatus> {
    if p.is_null() {
        return Err(fail(BciarmStatus::NullPointer, format!("{what} is null")));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(PathBuf::from(s)),
        Err(_) => Err(fail(BciarmStatus::InvalidArgument, format!("{what} is not UTF-8"))),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(BciarmStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

fn label_from(code: u32) -> Option<Label> {
    match code {
        1 => Some(Label::Lhim),
        2 => Some(Label::Rest),
        3 => Some(Label::Rhim),
        _ => None,
    }
}

/// Copies the message of the last failed call on this thread into `buf` (NUL-terminated,
/// truncated to fit) and returns its full length in bytes.
#[no_mangle]
pub unsafe extern "C" fn bciarm_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn bciarm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn bciarm_geometry_default() -> *mut BciarmGeometry {
    Box::into_raw(Box::new(BciarmGeometry(RobotGeometry::default())))
}

/// Reads a `key = value` geometry file.
#[no_mangle]
pub unsafe extern "C" fn bciarm_geometry_load(path: *const c_char, out: *mut *mut BciarmGeometry) -> BciarmStatus {
    guard(|| {
        non_null!(out);
        let path = match path_arg(path, "path") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match RobotGeometry::load(&path) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(BciarmGeometry(g)));
                BciarmStatus::Ok
            }
            Err(e) => fail(ik_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bciarm_geometry_free(geom: *mut BciarmGeometry) {
    if !geom.is_null() {
        drop(Box::from_raw(geom));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bciarm_ik_solve(
    geom: *const BciarmGeometry,
    target: *const f64,
    branch: BciarmBranch,
    out: *mut BciarmJointAngles,
) -> BciarmStatus {
    guard(|| {
        non_null!(geom, target, out);
        let t = std::slice::from_raw_parts(target, 3);
        let branch = match branch {
            BciarmBranch::ElbowUp => Branch::ElbowUp,
            BciarmBranch::ElbowDown => Branch::ElbowDown,
        };
        match solve_ik(&(*geom).0, &Vec3::new(t[0], t[1], t[2]), branch) {
            Ok(sol) => {
                let a = sol.angles;
                *out = BciarmJointAngles {
                    theta0: a.theta0,
                    theta2: a.theta2,
                    theta3: a.theta3,
                };
                BciarmStatus::Ok
            }
            Err(e) => fail(ik_status(&e), e.to_string()),
        }
    })
}

/// Writes 1 to `out` when the elbow-up solve succeeds, else 0 (and sets the
/// last error to the reason).
#[no_mangle]
pub unsafe extern "C" fn bciarm_ik_reachable(geom: *const BciarmGeometry, target: *const f64, out: *mut i32) -> BciarmStatus {
    guard(|| {
        non_null!(geom, target, out);
        let t = std::slice::from_raw_parts(target, 3);
        let r = reachable(&(*geom).0, &Vec3::new(t[0], t[1], t[2]));
        *out = i32::from(r.is_reachable());
        if let Some(why) = r.reason() {
            set_error(why);
        }
        BciarmStatus::Ok
    })
}

/// Effector position for the given angles into `out[0..3]`, mm.
#[no_mangle]
pub unsafe extern "C" fn bciarm_forward_kinematics(
    geom: *const BciarmGeometry,
    angles: *const BciarmJointAngles,
    out: *mut f64,
) -> BciarmStatus {
    guard(|| {
        non_null!(geom, angles, out);
        let a = *angles;
        let p = forward_kinematics(
            &(*geom).0,
            &JointAngles {
                theta0: a.theta0,
                theta2: a.theta2,
                theta3: a.theta3,
            },
        );
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(p.as_slice());
        BciarmStatus::Ok
    })
}

/// Evaluates a multivector expression into 32 coefficients indexed by blade
/// bitmask (bit 0 = e1, 1 = e2, 2 = e3, 3 = e+, 4 = e−).
#[no_mangle]
pub unsafe extern "C" fn bciarm_cga_eval(expr: *const c_char, out: *mut f64) -> BciarmStatus {
    guard(|| {
        non_null!(expr, out);
        let Ok(src) = CStr::from_ptr(expr).to_str() else {
            return fail(BciarmStatus::InvalidArgument, "expression is not UTF-8");
        };
        match evaluate(src) {
            Ok(mv) => {
                std::slice::from_raw_parts_mut(out, 32).copy_from_slice(mv.coeffs());
                BciarmStatus::Ok
            }
            Err(e) => fail(BciarmStatus::Parse, e.to_string()),
        }
    })
}

/// Process-control state at the home position, y axis active.
#[no_mangle]
pub extern "C" fn bciarm_process_new() -> *mut BciarmProcessState {
    Box::into_raw(Box::new(BciarmProcessState(ProcessControlState::default())))
}

#[no_mangle]
pub unsafe extern "C" fn bciarm_process_free(state: *mut BciarmProcessState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Applies one classified label (0 leaves the state untouched and reports
/// a hold).
#[no_mangle]
pub unsafe extern "C" fn bciarm_process_step(
    state: *mut BciarmProcessState,
    geom: *const BciarmGeometry,
    label: u32,
    action: *mut BciarmAction,
) -> BciarmStatus {
    guard(|| {
        non_null!(state, geom);
        let hold = BciarmAction {
            kind: BciarmActionKind::Hold,
            axis: (*state).0.active_axis.index() as u32,
            delta_mm: 0.0,
            new_axis: (*state).0.active_axis.index() as u32,
        };
        let result = match label {
            0 => hold,
            code => {
                let Some(l) = label_from(code) else {
                    return fail(BciarmStatus::InvalidArgument, format!("unknown label {code}"));
                };
                let (next, a) = process_control_step(&(*geom).0, &(*state).0, l);
                (*state).0 = next;
                match a {
                    Action::Moved { axis, delta } | Action::Rejected { axis, delta } => BciarmAction {
                        kind: if matches!(a, Action::Moved { .. }) {
                            BciarmActionKind::Moved
                        } else {
                            BciarmActionKind::Rejected
                        },
                        axis: axis.index() as u32,
                        delta_mm: delta,
                        new_axis: axis.index() as u32,
                    },
                    Action::Hold => BciarmAction { kind: BciarmActionKind::Hold, ..hold },
                    Action::AxisChange { from, to } => BciarmAction {
                        kind: BciarmActionKind::AxisChange,
                        axis: from.index() as u32,
                        delta_mm: 0.0,
                        new_axis: to.index() as u32,
                    },
                }
            }
        };
        if !action.is_null() {
            *action = result;
        }
        BciarmStatus::Ok
    })
}

/// Effector position into `out[0..3]` and the active axis into `axis`
/// (either may be null).
#[no_mangle]
pub unsafe extern "C" fn bciarm_process_position(
    state: *const BciarmProcessState,
    out: *mut f64,
    axis: *mut u32,
) -> BciarmStatus {
    guard(|| {
        non_null!(state);
        let s = &(*state).0;
        if !out.is_null() {
            std::slice::from_raw_parts_mut(out, 3).copy_from_slice(s.effector.as_slice());
        }
        if !axis.is_null() {
            *axis = s.active_axis.index() as u32;
        }
        BciarmStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn bciarm_model_load(path: *const c_char, out: *mut *mut BciarmModel) -> BciarmStatus {
    guard(|| {
        non_null!(out);
        let path = match path_arg(path, "path") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match ClassifierModel::load(&path) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(BciarmModel(m)));
                BciarmStatus::Ok
            }
            Err(e) => fail(bci_status(&e), e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bciarm_model_free(model: *mut BciarmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Classifies every event of an events CSV against a signal CSV. Decisions
/// (label codes, 0 for undecided) go to `out`; `written` receives the event
/// count even when `cap` is too small.
#[no_mangle]
pub unsafe extern "C" fn bciarm_model_classify_files(
    model: *const BciarmModel,
    signals: *const c_char,
    events: *const c_char,
    out: *mut u32,
    cap: usize,
    written: *mut usize,
) -> BciarmStatus {
    guard(|| {
        non_null!(model, written);
        let (sig, ev) = match (path_arg(signals, "signals"), path_arg(events, "events")) {
            (Ok(s), Ok(e)) => (s, e),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let run = || -> Result<Vec<Decision>, BciError> {
            let block = SignalBlock::load_csv(&sig)?;
            let events = load_events(&ev)?;
            Ok((*model).0.classify(&block, &events)?.into_iter().map(|c| c.decision).collect())
        };
        let decisions = match run() {
            Ok(d) => d,
            Err(e) => return fail(bci_status(&e), e.to_string()),
        };
        *written = decisions.len();
        if decisions.len() > cap {
            return fail(BciarmStatus::BufferTooSmall, format!("{} decisions, room for {cap}", decisions.len()));
        }
        if !decisions.is_empty() {
            non_null!(out);
            let dst = std::slice::from_raw_parts_mut(out, decisions.len());
            for (d, v) in dst.iter_mut().zip(&decisions) {
                *d = match v {
                    Decision::Class(l) => l.index() as u32,
                    Decision::Undecided => 0,
                };
            }
        }
        BciarmStatus::Ok
    })
}

/// P300 amplitude (µV) and latency (ms) of an averaged −200..+800 ms epoch.
#[no_mangle]
pub unsafe extern "C" fn bciarm_p300_from_average(
    avg: *const f64,
    len: usize,
    sample_rate: f64,
    amplitude: *mut f64,
    latency_ms: *mut f64,
) -> BciarmStatus {
    guard(|| {
        non_null!(avg, amplitude, latency_ms);
        match p300_from_average(std::slice::from_raw_parts(avg, len), sample_rate) {
            Ok(f) => {
                *amplitude = f.amplitude;
                *latency_ms = f.latency;
                BciarmStatus::Ok
            }
            Err(e) => fail(bci_status(&e), e.to_string()),
        }
    })
}

/// One-way ANOVA. `values` holds the groups back to back with
/// `sizes[0..groups]` values each.
#[no_mangle]
pub unsafe extern "C" fn bciarm_anova_oneway(
    values: *const f64,
    sizes: *const usize,
    groups: usize,
    f: *mut f64,
    p: *mut f64,
) -> BciarmStatus {
    guard(|| {
        non_null!(values, sizes, f, p);
        let sizes = std::slice::from_raw_parts(sizes, groups);
        let total: usize = sizes.iter().sum();
        let all = std::slice::from_raw_parts(values, total);
        let mut at = 0;
        let data: Vec<Vec<f64>> = sizes
            .iter()
            .map(|&n| {
                let g = all[at..at + n].to_vec();
                at += n;
                g
            })
            .collect();
        match anova_oneway(&data) {
            Ok(r) => {
                *f = r.f();
                *p = r.p();
                BciarmStatus::Ok
            }
            Err(e) => fail(bci_status(&e), e.to_string()),
        }
    })
}
