use nalgebra::{Matrix3, SMatrix, Vector3};

use crate::Vec2;

use super::VisionError;

/// Projective map of the plane, scaled so `h33 = 1` when that entry is nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homography {
    m: Matrix3<f64>,
}

const DET_EPS: f64 = 1e-12;

impl Homography {
    pub fn identity() -> Self {
        Self { m: Matrix3::identity() }
    }

    pub fn new(m: Matrix3<f64>) -> Result<Self, VisionError> {
        if !m.iter().all(|v| v.is_finite()) {
            return Err(VisionError::SingularHomography);
        }
        let scale = m.abs().max();
        if scale == 0.0 || (m / scale).determinant().abs() <= DET_EPS {
            return Err(VisionError::SingularHomography);
        }
        let h33 = m[(2, 2)];
        let m = if h33.abs() > DET_EPS * scale { m / h33 } else { m / scale };
        Ok(Self { m })
    }

    pub fn from_row_slice(values: &[f64; 9]) -> Result<Self, VisionError> {
        Self::new(Matrix3::from_row_slice(values))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn to_row_array(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for r in 0..3 {
            for c in 0..3 {
                out[r * 3 + c] = self.m[(r, c)];
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let inv = self.m.try_inverse().expect("homography is invertible by construction");
        Self::new(inv).expect("inverse of an invertible matrix")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Homography) -> Result<Self, VisionError> {
        Self::new(self.m * other.m)
    }

    pub fn apply(&self, p: &Vec2) -> Result<Vec2, VisionError> {
        let v = self.m * Vector3::new(p.x, p.y, 1.0);
        let scale = self.m.row(2).abs().sum() * (1.0 + p.abs().max());
        if v.z.abs() <= 1e-14 * scale {
            return Err(VisionError::PointAtInfinity);
        }
        Ok(Vec2::new(v.x / v.z, v.y / v.z))
    }

    /// Sign of the homogeneous weight at `p`; points on the far side of
    /// the horizon map with a negative weight.
    pub fn weight(&self, p: &Vec2) -> f64 {
        (self.m * Vector3::new(p.x, p.y, 1.0)).z
    }

    /// Absolute Jacobian determinant of the map at `p`.
    pub fn area_scale(&self, p: &Vec2) -> f64 {
        let w = self.weight(p);
        (self.m.determinant() / (w * w * w)).abs()
    }
}

/// Similarity taking the centroid to the origin and the mean distance to √2.
fn normalizer(pts: &[Vec2; 4]) -> Matrix3<f64> {
    let c = pts.iter().sum::<Vec2>() / 4.0;
    let mean = pts.iter().map(|p| (p - c).norm()).sum::<f64>() / 4.0;
    let s = std::f64::consts::SQRT_2 / mean;
    Matrix3::new(s, 0.0, -s * c.x, 0.0, s, -s * c.y, 0.0, 0.0, 1.0)
}

fn has_collinear_triple(pts: &[Vec2; 4]) -> bool {
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let (a, b) = (pts[j] - pts[i], pts[k] - pts[i]);
                if (a.x * b.y - a.y * b.x).abs() <= 1e-9 * scale * scale {
                    return true;
                }
            }
        }
    }
    false
}

/// Exact homography taking each `src[i]` to `dst[i]`.
pub fn estimate_homography(src: &[Vec2; 4], dst: &[Vec2; 4]) -> Result<Homography, VisionError> {
    if src.iter().chain(dst).any(|p| !p.iter().all(|v| v.is_finite())) {
        return Err(VisionError::DegenerateCorrespondences);
    }
    if has_collinear_triple(src) || has_collinear_triple(dst) {
        return Err(VisionError::DegenerateCorrespondences);
    }
    let ts = normalizer(src);
    let td = normalizer(dst);
    let norm = |t: &Matrix3<f64>, p: &Vec2| {
        let v = t * Vector3::new(p.x, p.y, 1.0);
        Vec2::new(v.x, v.y)
    };
    // Rows of the 8×9 DLT system, padded with a zero row so the SVD is square.
    let mut a = SMatrix::<f64, 9, 9>::zeros();
    for i in 0..4 {
        let s = norm(&ts, &src[i]);
        let d = norm(&td, &dst[i]);
        let r = 2 * i;
        let rows = [
            [s.x, s.y, 1.0, 0.0, 0.0, 0.0, -d.x * s.x, -d.x * s.y, -d.x],
            [0.0, 0.0, 0.0, s.x, s.y, 1.0, -d.y * s.x, -d.y * s.y, -d.y],
        ];
        for (k, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                a[(r + k, c)] = *v;
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..9).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    // one zero from padding, one from the null space; the next must be clear of zero
    if svd.singular_values[order[1]] < 1e-10 * svd.singular_values[order[8]] {
        return Err(VisionError::DegenerateCorrespondences);
    }
    let h = v_t.row(order[0]);
    let hn = Matrix3::new(h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8]);
    let td_inv = td.try_inverse().expect("similarity");
    Homography::new(td_inv * hn * ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corners() -> [Vec2; 4] {
        [
            Vec2::new(15.0, 15.0),
            Vec2::new(385.0, 15.0),
            Vec2::new(15.0, 385.0),
            Vec2::new(385.0, 385.0),
        ]
    }

    #[test]
    fn identity_from_equal_points() {
        let h = estimate_homography(&corners(), &corners()).unwrap();
        assert!((h.matrix() - Matrix3::identity()).abs().max() < 1e-12);
    }

    #[test]
    fn apply_examples() {
        let p = Vec2::new(3.0, -4.0);
        assert_eq!(Homography::identity().apply(&p).unwrap(), p);
        let s = Homography::from_row_slice(&[2.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(s.apply(&p).unwrap(), p * 2.0);
        let h = Homography::from_row_slice(&[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(h.apply(&Vec2::new(0.0, 5.0)), Err(VisionError::PointAtInfinity));
    }

    #[test]
    fn recovers_known_map() {
        let truth = Homography::from_row_slice(&[0.9, 0.1, 120.0, -0.05, 0.8, 40.0, 1e-4, 3e-4, 1.0]).unwrap();
        let src = corners();
        let dst = src.map(|p| truth.apply(&p).unwrap());
        let h = estimate_homography(&src, &dst).unwrap();
        assert!((h.matrix() - truth.matrix()).abs().max() < 1e-9);
        let inv = estimate_homography(&dst, &src).unwrap();
        assert!((inv.matrix() - truth.inverse().matrix()).abs().max() < 1e-9);
    }

    #[test]
    fn rejects_collinear_points() {
        let mut dst = corners();
        dst[3] = Vec2::new(200.0, 200.0);
        assert_eq!(
            estimate_homography(&corners(), &dst),
            Err(VisionError::DegenerateCorrespondences)
        );
    }

    #[test]
    fn singular_matrix_rejected() {
        assert!(Homography::new(Matrix3::zeros()).is_err());
        assert!(Homography::from_row_slice(&[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 1.0]).is_err());
    }
}
