use std::f64::consts::PI;

use bciarm::cga::{embed_point, plane_normal};
use bciarm::ik::{
    effector_plane, forward_kinematics, reachable, solve_ik, Branch, IkError, JointAngles, RobotGeometry,
};
use bciarm::tolerance::Tolerance;
use bciarm::Vec3;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample_target(rng: &mut ChaCha8Rng, g: &RobotGeometry) -> Vec3 {
    loop {
        let a = JointAngles {
            theta0: rng.random_range(-PI..PI),
            theta2: rng.random_range(-0.5..2.0),
            theta3: rng.random_range(0.15..2.8) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
        };
        let x = forward_kinematics(g, &a);
        if x.x.hypot(x.y) > 20.0 {
            return x;
        }
    }
}

fn rotate_z(v: &Vec3, phi: f64) -> Vec3 {
    let (s, c) = phi.sin_cos();
    Vec3::new(c * v.x - s * v.y, s * v.x + c * v.y, v.z)
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[test]
fn round_trip_on_random_targets() {
    let g = RobotGeometry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = sample_target(&mut rng, &g);
        for branch in [Branch::ElbowUp, Branch::ElbowDown] {
            let sol = solve_ik(&g, &x, branch).unwrap_or_else(|e| panic!("{x:?}: {e}"));
            worst = worst.max((forward_kinematics(&g, &sol.angles) - x).norm());
        }
    }
    assert!(worst < 1e-6, "worst round-trip error {worst}");
}

#[test]
fn branches_share_theta0_and_j2() {
    let g = RobotGeometry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let x = sample_target(&mut rng, &g);
        let up = solve_ik(&g, &x, Branch::ElbowUp).unwrap();
        let down = solve_ik(&g, &x, Branch::ElbowDown).unwrap();
        assert!(angle_diff(up.angles.theta0, down.angles.theta0) < 1e-9);
        assert!((up.j2 - down.j2).norm() < 1e-9);
        assert!(up.j3.z >= down.j3.z - 1e-9);
    }
}

#[test]
fn anchor_targets_are_reachable() {
    let g = RobotGeometry::default();
    for x in [Vec3::new(0.0, 155.5, 284.3), Vec3::new(0.0, 300.0, -49.0)] {
        assert!(reachable(&g, &x).is_reachable(), "{x:?}");
    }
}

#[test]
fn reachable_agrees_with_solver() {
    let g = RobotGeometry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let x = Vec3::new(
            rng.random_range(-450.0..450.0),
            rng.random_range(-450.0..450.0),
            rng.random_range(-300.0..550.0),
        );
        let r = reachable(&g, &x);
        assert_eq!(r.is_reachable(), solve_ik(&g, &x, Branch::ElbowUp).is_ok(), "{x:?}: {r:?}");
    }
}

#[test]
fn theta0_matches_planar_atan2() {
    let g = RobotGeometry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let x = sample_target(&mut rng, &g);
        let sol = solve_ik(&g, &x, Branch::ElbowUp).unwrap();
        let heading = (-x.x).atan2(x.y);
        assert!(angle_diff(sol.angles.theta0, heading) < 1e-9);
    }
}

#[test]
fn far_target_reports_workspace() {
    let g = RobotGeometry::default();
    let err = solve_ik(&g, &Vec3::new(0.0, 10000.0, 0.0), Branch::ElbowUp).unwrap_err();
    assert!(matches!(err, IkError::OutsideWorkspace { .. }));
    assert!(err.to_string().contains("target outside"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn solution_invariants(seed in any::<u64>(), phi in -PI..PI) {
        let g = RobotGeometry::default();
        let tol = Tolerance::DEFAULT;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_target(&mut rng, &g);
        let sol = solve_ik(&g, &x, Branch::ElbowUp).unwrap();

        prop_assert!(((sol.j2 - g.j1_position).norm() - g.l2).abs() < 1e-9 * g.l2);
        prop_assert!(((sol.j3 - sol.j2).norm() - g.l3).abs() < 1e-9 * g.l3);
        prop_assert!(((x - sol.j3).norm() - g.l4).abs() < 1e-9 * g.l4);

        let pi_e = effector_plane(&x).unwrap();
        let n = plane_normal(&pi_e, &tol).unwrap().normalize();
        for p in [sol.j2, sol.j3, x] {
            prop_assert!(n.dot(&p).abs() < 1e-6);
            let _ = embed_point(p).unwrap();
        }

        let rotated = rotate_z(&x, phi);
        let rs = solve_ik(&g, &rotated, Branch::ElbowUp).unwrap();
        prop_assert!(angle_diff(rs.angles.theta0, sol.angles.theta0 + phi) < 1e-6);
        prop_assert!((rs.angles.theta2 - sol.angles.theta2).abs() < 1e-6);
        prop_assert!((rs.angles.theta3 - sol.angles.theta3).abs() < 1e-6);
    }
}
