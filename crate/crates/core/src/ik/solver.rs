//! Inverse kinematics by sphere, plane and circle intersections.
//!
//! Construction order for a target `x_e`:
//!
//! 1. `πe = e0∧e3∧Xe∧e∞` (vertical plane through the target), `πb = e0∧e1∧e2∧e∞`.
//! 2. `x_h`: the sphere of radius `la` about J0 meets `πe` in a circle, which
//!    meets `πb` in a pair; take the point on the target's side.
//! 3. J2: spheres about J1 (radius `l2`) and `x_h` (radius `lb`) meet in a
//!    circle, cut by `πe`; take the upper point.
//! 4. J3: spheres about J2 (radius `l3`) and `x_e` (radius `l4`), cut by `πe`;
//!    the branch picks the point.
//! 5. Angles from the link directions:
//!    θ0 from `e2` to the `πe` normal, θ2 from `l12` to `l23`, θ3 from `l23`
//!    to `l3e`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cga::{
    angle_between, embed_point, intersect_circle_plane, intersect_plane_sphere, intersect_spheres,
    line_direction, make_line, make_plane_wedge, make_sphere, plane_normal, split_point_pair,
    split_point_pair_both, CgaError, Multivector, Orientation, PairSign, Plane,
};
use crate::tolerance::Tolerance;
use crate::Vec3;

use super::{Branch, IkError, IkSolution, JointAngles, RobotGeometry, Stage};

const TOL: Tolerance = Tolerance::DEFAULT;

fn cga(stage: Stage) -> impl Fn(CgaError) -> IkError {
    move |source| IkError::Cga { stage, source }
}

/// Vertical plane through the z axis and the target.
pub fn effector_plane(x_e: &Vec3) -> Result<Plane, IkError> {
    let p = embed_point(*x_e).map_err(cga(Stage::EffectorPlane))?;
    let horizontal = x_e.x.hypot(x_e.y);
    if TOL.is_zero(horizontal, x_e.norm()) {
        return Err(IkError::DegeneratePlane);
    }
    make_plane_wedge(&[Multivector::e0(), Multivector::e3(), *p.mv(), Multivector::einf()], &TOL).map_err(|e| match e {
        CgaError::DegenerateWedge => IkError::DegeneratePlane,
        other => IkError::Cga {
            stage: Stage::EffectorPlane,
            source: other,
        },
    })
}

/// The table-parallel plane through J0.
pub fn base_plane() -> Plane {
    make_plane_wedge(&[Multivector::e0(), Multivector::e1(), Multivector::e2(), Multivector::einf()], &TOL)
        .expect("e0, e1, e2, e∞ are independent")
}

/// Point at horizontal distance `la` from J0 inside `πe`, on the target's side.
pub fn solve_xh(geom: &RobotGeometry, x_e: &Vec3, pi_e: &Plane) -> Result<Vec3, IkError> {
    let err = cga(Stage::Xh);
    let origin = embed_point(Vec3::zeros()).map_err(&err)?;
    let s0 = make_sphere(&origin, geom.la).map_err(&err)?;
    let c0 = intersect_plane_sphere(pi_e, &s0, &TOL).map_err(&err)?;
    let pp0 = intersect_circle_plane(&c0, &base_plane(), &TOL).map_err(&err)?;
    if !pp0.is_real() {
        return Err(IkError::Unreachable { stage: Stage::Xh });
    }
    let candidates = split_point_pair_both(&pp0, &TOL).map_err(&err)?;
    let toward = Vec3::new(x_e.x, x_e.y, 0.0);
    let best = candidates
        .iter()
        .map(|p| p.position())
        .max_by(|a, b| a.dot(&toward).total_cmp(&b.dot(&toward)))
        .expect("two candidates");
    Ok(best)
}

/// Shoulder joint position for the target.
pub fn solve_j2(geom: &RobotGeometry, x_e: &Vec3) -> Result<Vec3, IkError> {
    let pi_e = effector_plane(x_e)?;
    let x_h = solve_xh(geom, x_e, &pi_e)?;
    j2_from_xh(geom, &pi_e, &x_h)
}

fn j2_from_xh(geom: &RobotGeometry, pi_e: &Plane, x_h: &Vec3) -> Result<Vec3, IkError> {
    let err = cga(Stage::J2);
    let j1 = embed_point(geom.j1_position).map_err(&err)?;
    let s1 = make_sphere(&j1, geom.l2).map_err(&err)?;
    let sh = make_sphere(&embed_point(*x_h).map_err(&err)?, geom.lb).map_err(&err)?;
    let c2 = intersect_spheres(&s1, &sh, &TOL).map_err(&err)?;
    let pp2 = intersect_circle_plane(&c2, pi_e, &TOL).map_err(&err)?;
    if !pp2.is_real() {
        return Err(IkError::Unreachable { stage: Stage::J2 });
    }
    let j2 = split_point_pair(&pp2, PairSign::Plus, &TOL).map_err(&err)?;
    Ok(j2.position())
}

/// Wrist joint position given the shoulder joint.
pub fn solve_j3(geom: &RobotGeometry, x_e: &Vec3, j2: &Vec3, branch: Branch) -> Result<Vec3, IkError> {
    let pi_e = effector_plane(x_e)?;
    j3_in_plane(geom, &pi_e, x_e, j2, branch)
}

fn j3_in_plane(geom: &RobotGeometry, pi_e: &Plane, x_e: &Vec3, j2: &Vec3, branch: Branch) -> Result<Vec3, IkError> {
    let d = (x_e - j2).norm();
    let reach = geom.l3 + geom.l4;
    let inner = (geom.l3 - geom.l4).abs();
    if d > reach * (1.0 + TOL.rel) || d < inner * (1.0 - TOL.rel) {
        return Err(IkError::OutsideWorkspace { distance: d });
    }
    let err = cga(Stage::J3);
    let s2 = make_sphere(&embed_point(*j2).map_err(&err)?, geom.l3).map_err(&err)?;
    let se = make_sphere(&embed_point(*x_e).map_err(&err)?, geom.l4).map_err(&err)?;
    let c3 = intersect_spheres(&s2, &se, &TOL).map_err(|e| match e {
        CgaError::ConcentricSpheres | CgaError::CoincidentEntities => IkError::OutsideWorkspace { distance: d },
        other => err(other),
    })?;
    let pp3 = intersect_circle_plane(&c3, pi_e, &TOL).map_err(&err)?;
    if !pp3.is_real() {
        return Err(IkError::OutsideWorkspace { distance: d });
    }
    let sign = match branch {
        Branch::ElbowUp => PairSign::Plus,
        Branch::ElbowDown => PairSign::Minus,
    };
    Ok(split_point_pair(&pp3, sign, &TOL).map_err(&err)?.position())
}

/// θ0, θ2, θ3 from the joint positions.
///
/// θ0 is measured counter-clockwise about +z from `e2` and is shifted by a
/// quarter turn, because the `πe` normal is `ẑ × x_e` and therefore lies a
/// quarter turn clockwise of the arm's heading; θ0 = 0 points the arm along
/// +y. θ2 and θ3 are signed counter-clockwise about the `πe` normal, which in
/// the arm plane turns the outward horizontal toward −z.
pub fn joint_angles(geom: &RobotGeometry, j2: &Vec3, j3: &Vec3, x_e: &Vec3) -> Result<JointAngles, IkError> {
    let pi_e = effector_plane(x_e)?;
    let err = cga(Stage::Angles);
    let normal = plane_normal(&pi_e, &TOL).map_err(&err)?;
    let e2 = Vec3::y();
    let raw = angle_between(&e2, &normal, Orientation::about(&Vec3::z(), &e2, &normal)).map_err(&err)?;
    let theta0 = wrap_angle(raw - FRAC_PI_2);

    let point = |v: &Vec3| embed_point(*v).map_err(&err);
    let (p1, p2, p3, pe) = (point(&geom.j1_position)?, point(j2)?, point(j3)?, point(x_e)?);
    let degenerate = |e: CgaError| match e {
        CgaError::DegenerateWedge | CgaError::ZeroDirection => IkError::DegenerateLink,
        other => err(other),
    };
    let l12 = make_line(&p1, &p2, &TOL).map_err(degenerate)?;
    let l23 = make_line(&p2, &p3, &TOL).map_err(degenerate)?;
    let l3e = make_line(&p3, &pe, &TOL).map_err(degenerate)?;
    let d12 = line_direction(&l12, &TOL).map_err(degenerate)?;
    let d23 = line_direction(&l23, &TOL).map_err(degenerate)?;
    let d3e = line_direction(&l3e, &TOL).map_err(degenerate)?;

    let signed = |a: &Vec3, b: &Vec3| angle_between(a, b, Orientation::about(&normal, a, b)).map_err(&err);
    Ok(JointAngles {
        theta0,
        theta2: signed(&d12, &d23)?,
        theta3: signed(&d23, &d3e)?,
    })
}

/// Full chain: plane, `x_h`, J2, J3, angles.
pub fn solve_ik(geom: &RobotGeometry, x_e: &Vec3, branch: Branch) -> Result<IkSolution, IkError> {
    geom.validate()?;
    if !x_e.iter().all(|c| c.is_finite()) {
        return Err(IkError::NonFiniteTarget);
    }
    let pi_e = effector_plane(x_e)?;
    let x_h = solve_xh(geom, x_e, &pi_e)?;
    let j2 = j2_from_xh(geom, &pi_e, &x_h)?;
    let j3 = j3_in_plane(geom, &pi_e, x_e, &j2, branch)?;
    let angles = joint_angles(geom, &j2, &j3, x_e)?;
    for (joint, angle) in [(0u8, angles.theta0), (2, angles.theta2), (3, angles.theta3)] {
        if !geom.angle_in_limits(angle) {
            return Err(IkError::JointLimit { joint, angle });
        }
    }
    Ok(IkSolution {
        angles,
        x_h,
        j2,
        j3,
        effector: *x_e,
        branch,
    })
}

/// Outcome of [`reachable`].
#[derive(Debug, Clone, PartialEq)]
pub enum Reachability {
    Reachable,
    Unreachable(IkError),
}

impl Reachability {
    pub fn is_reachable(&self) -> bool {
        matches!(self, Reachability::Reachable)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            Reachability::Reachable => None,
            Reachability::Unreachable(e) => Some(e.to_string()),
        }
    }
}

/// True iff [`solve_ik`] succeeds for the elbow-up branch.
///
/// Cheap checks (plane degeneracy, the wrist triangle inequality against the
/// fixed shoulder position) run first; the full intersection chain settles
/// the remaining cases.
pub fn reachable(geom: &RobotGeometry, x_e: &Vec3) -> Reachability {
    if let Err(e) = geom.validate() {
        return Reachability::Unreachable(e);
    }
    if !x_e.iter().all(|c| c.is_finite()) {
        return Reachability::Unreachable(IkError::NonFiniteTarget);
    }
    let horizontal = x_e.x.hypot(x_e.y);
    if TOL.is_zero(horizontal, x_e.norm()) {
        return Reachability::Unreachable(IkError::DegeneratePlane);
    }
    let heading = Vec3::new(x_e.x / horizontal, x_e.y / horizontal, 0.0);
    let j2 = heading * geom.la + Vec3::new(0.0, 0.0, geom.lb);
    let d = (x_e - j2).norm();
    let slack = 1e-6 * (geom.l3 + geom.l4);
    if d > geom.l3 + geom.l4 + slack || d < (geom.l3 - geom.l4).abs() - slack {
        return Reachability::Unreachable(IkError::OutsideWorkspace { distance: d });
    }
    match solve_ik(geom, x_e, Branch::ElbowUp) {
        Ok(_) => Reachability::Reachable,
        Err(e) => Reachability::Unreachable(e),
    }
}

/// Maps an angle into `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a % (2.0 * PI);
    if w <= -PI {
        w += 2.0 * PI;
    } else if w > PI {
        w -= 2.0 * PI;
    }
    w
}
