//! Forward kinematics with plain trigonometry.
//!
//! In the arm plane, with coordinates `(r, z)` (outward horizontal, up),
//! J1 = (0, l1) and J2 = (la, lb). A positive joint angle turns the outward
//! horizontal toward −z. The arm plane is spanned by `u = (−sin θ0, cos θ0, 0)`
//! and `ẑ`, so θ0 = 0 faces +y.

use crate::Vec3;

use super::{JointAngles, RobotGeometry};

/// Joint positions along the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainPoints {
    pub j1: Vec3,
    pub j2: Vec3,
    pub j3: Vec3,
    pub effector: Vec3,
}

fn turn((r, z): (f64, f64), theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (r * c + z * s, -r * s + z * c)
}

pub fn forward_chain(geom: &RobotGeometry, angles: &JointAngles) -> ChainPoints {
    let d12 = (geom.la / geom.l2, (geom.lb - geom.l1) / geom.l2);
    let d23 = turn(d12, angles.theta2);
    let d3e = turn(d23, angles.theta3);
    let j3 = (geom.la + geom.l3 * d23.0, geom.lb + geom.l3 * d23.1);
    let e = (j3.0 + geom.l4 * d3e.0, j3.1 + geom.l4 * d3e.1);
    let (s0, c0) = angles.theta0.sin_cos();
    let lift = |(r, z): (f64, f64)| Vec3::new(-s0 * r, c0 * r, z);
    ChainPoints {
        j1: lift((0.0, geom.l1)),
        j2: lift((geom.la, geom.lb)),
        j3: lift(j3),
        effector: lift(e),
    }
}

pub fn forward_kinematics(geom: &RobotGeometry, angles: &JointAngles) -> Vec3 {
    forward_chain(geom, angles).effector
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn straight_reference_extends_along_shoulder_link() {
        let g = RobotGeometry::default();
        let e = forward_kinematics(&g, &JointAngles::default());
        let dir = Vec3::new(0.0, g.la, g.lb - g.l1) / g.l2;
        let expected = Vec3::new(0.0, g.la, g.lb) + dir * (g.l3 + g.l4);
        assert!((e - expected).norm() < 1e-12);
    }

    #[test]
    fn theta0_quarter_turn_rotates_about_z() {
        let g = RobotGeometry::default();
        let a = JointAngles {
            theta0: 0.0,
            theta2: 0.7,
            theta3: -0.4,
        };
        let p = forward_kinematics(&g, &a);
        let q = forward_kinematics(&g, &JointAngles { theta0: FRAC_PI_2, ..a });
        assert!((q - Vec3::new(-p.y, p.x, p.z)).norm() < 1e-12);
    }

    #[test]
    fn positive_angle_bends_down() {
        let g = RobotGeometry::default();
        let up = forward_kinematics(&g, &JointAngles::default());
        let down = forward_kinematics(&g, &JointAngles { theta2: 0.3, ..Default::default() });
        assert!(down.z < up.z);
    }
}
