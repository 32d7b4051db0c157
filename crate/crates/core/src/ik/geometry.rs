use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::config::{ConfigError, KeyValues};
use crate::Vec3;

use super::IkError;

/// Link lengths and fixed-joint constants of the arm, in millimetres.
///
/// `la` and `lb` are the horizontal and vertical offsets of the shoulder
/// joint J2 from the base joint J0, measured in the arm plane. J2 is held at
/// that fixed offset, so `la² + (lb − l1)² = l2²` must hold.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotGeometry {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
    pub la: f64,
    pub lb: f64,
    pub j1_position: Vec3,
    /// Height of J0 above the table.
    pub base_height: f64,
    /// Allowed joint range `(min, max]` applied to θ0, θ2 and θ3.
    pub joint_min: f64,
    pub joint_max: f64,
}

const KEYS: &[&str] = &["l1", "l2", "l3", "l4", "la", "lb", "j1", "base_height", "joint_min", "joint_max"];

impl Default for RobotGeometry {
    /// J1 sits 36 mm above J0. The remaining lengths are chosen so the home
    /// pose `[0, 155.5, 284.3]` and the table target `[0, 300, −49]` are both
    /// inside the workspace.
    fn default() -> Self {
        Self {
            l1: 36.0,
            l2: 80.0,
            l3: 170.0,
            l4: 170.0,
            la: 48.0,
            lb: 100.0,
            j1_position: Vec3::new(0.0, 0.0, 36.0),
            base_height: 49.0,
            joint_min: -PI,
            joint_max: PI,
        }
    }
}

impl RobotGeometry {
    pub fn from_config(kv: &KeyValues) -> Result<Self, IkError> {
        kv.reject_unknown(KEYS)?;
        let d = Self::default();
        let l1 = kv.f64_or("l1", d.l1)?;
        let j1 = kv.f64_array::<3>("j1")?.map_or(Vec3::new(0.0, 0.0, l1), Vec3::from);
        let geom = Self {
            l1,
            l2: kv.f64_or("l2", d.l2)?,
            l3: kv.f64_or("l3", d.l3)?,
            l4: kv.f64_or("l4", d.l4)?,
            la: kv.f64_or("la", d.la)?,
            lb: kv.f64_or("lb", d.lb)?,
            j1_position: j1,
            base_height: kv.f64_or("base_height", d.base_height)?,
            joint_min: kv.f64_or("joint_min", d.joint_min)?,
            joint_max: kv.f64_or("joint_max", d.joint_max)?,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn load(path: &Path) -> Result<Self, IkError> {
        let kv = KeyValues::load(path)?;
        Self::from_config(&kv)
    }

    pub fn to_config(&self) -> String {
        let mut out = String::from("# robot geometry, millimetres and radians\n");
        for (k, v) in [
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("l4", self.l4),
            ("la", self.la),
            ("lb", self.lb),
        ] {
            let _ = writeln!(out, "{k} = {v}");
        }
        let j = self.j1_position;
        let _ = writeln!(out, "j1 = {}, {}, {}", j.x, j.y, j.z);
        let _ = writeln!(out, "base_height = {}", self.base_height);
        let _ = writeln!(out, "joint_min = {}", self.joint_min);
        let _ = writeln!(out, "joint_max = {}", self.joint_max);
        out
    }

    pub fn validate(&self) -> Result<(), IkError> {
        let invalid = |m: String| Err(IkError::InvalidGeometry(m));
        for (name, v) in [
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("l4", self.l4),
            ("la", self.la),
            ("lb", self.lb),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return invalid(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.base_height.is_finite() && self.base_height >= 0.0) {
            return invalid(format!("base_height must be non-negative, got {}", self.base_height));
        }
        let j1 = self.j1_position;
        if j1.x != 0.0 || j1.y != 0.0 {
            return invalid("j1 must lie on the z axis".to_string());
        }
        if (j1.z - self.l1).abs() > 1e-9 * self.l1 {
            return invalid(format!("j1 height {} differs from l1 {}", j1.z, self.l1));
        }
        let shoulder = (self.la * self.la + (self.lb - self.l1).powi(2)).sqrt();
        if (shoulder - self.l2).abs() > 1e-9 * self.l2 {
            return invalid(format!(
                "la² + (lb − l1)² must equal l2² (|J1J2| from la/lb is {shoulder}, l2 is {})",
                self.l2
            ));
        }
        // J2 is taken as the upper of the two sphere-intersection candidates;
        // its mirror across the J1–x_h line must sit lower.
        let (mirror_r, mirror_z) = self.j2_mirror();
        if !(mirror_z < self.lb || (mirror_z == self.lb && mirror_r < self.la)) {
            return invalid("J2 is not the upper intersection candidate for this geometry".to_string());
        }
        if self.joint_min.is_nan() || self.joint_max.is_nan() || self.joint_min >= self.joint_max {
            return invalid("joint_min must be below joint_max".to_string());
        }
        Ok(())
    }

    /// Reflection of J2 = (la, lb) across the line through J1 = (0, l1) and
    /// x_h = (la, 0), in arm-plane coordinates (horizontal, vertical).
    fn j2_mirror(&self) -> (f64, f64) {
        let (ox, oz) = (0.0, self.l1);
        let (dx, dz) = (self.la, -self.l1);
        let n = (dx * dx + dz * dz).sqrt();
        let (ux, uz) = (dx / n, dz / n);
        let (px, pz) = (self.la - ox, self.lb - oz);
        let t = px * ux + pz * uz;
        let (fx, fz) = (ox + t * ux, oz + t * uz);
        (2.0 * fx - self.la, 2.0 * fz - self.lb)
    }

    /// Distance from J0 to J2.
    pub fn shoulder_radius(&self) -> f64 {
        (self.la * self.la + self.lb * self.lb).sqrt()
    }

    pub fn angle_in_limits(&self, angle: f64) -> bool {
        angle > self.joint_min - 1e-12 && angle <= self.joint_max + 1e-12
    }
}

impl From<ConfigError> for IkError {
    fn from(e: ConfigError) -> Self {
        IkError::Config(e.to_string())
    }
}
