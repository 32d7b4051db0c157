//! Geometric entities built on [`Multivector`].
//!
//! Representation flavours, matching the constructions used by the solver:
//!
//! | entity     | stored form                   | grade |
//! |------------|-------------------------------|-------|
//! | point      | `x + ½x²e∞ + e0`              | 1     |
//! | sphere     | `P − ½r²e∞` (dual sphere)     | 1     |
//! | plane      | `X1∧X2∧X3∧e∞`-style wedge     | 4     |
//! | line       | `P1∧P2∧e∞`                    | 3     |
//! | circle     | `(a* ∧ b*)*`                  | 3     |
//! | point pair | `(c* ∧ π*)*`                  | 2     |
//!
//! Spheres are already in the form whose wedge is an intersection, so for a
//! sphere `s` the "starred" operand of an intersection is `s` itself; every
//! other entity is dualised before the wedge.

use super::multivector::Multivector;
use super::CgaError;
use crate::tolerance::Tolerance;
use crate::Vec3;

/// Whether a round (circle or point pair) has real points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reality {
    Real,
    Tangent,
    Imaginary,
}

/// Which of the two points of a pair to pick. `Plus` is the point with the
/// larger z coordinate (ties broken by the larger x coordinate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalPoint(Multivector);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere(Multivector);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane(Multivector);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line(Multivector);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    mv: Multivector,
    radius2: f64,
    reality: Reality,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointPair {
    mv: Multivector,
    radius2: f64,
    reality: Reality,
}

/// `P = x + ½‖x‖²e∞ + e0`.
pub fn embed_point(x: Vec3) -> Result<ConformalPoint, CgaError> {
    if !x.iter().all(|c| c.is_finite()) {
        return Err(CgaError::NonFinite);
    }
    Ok(ConformalPoint(
        Multivector::euclidean([x.x, x.y, x.z])
            + Multivector::einf() * (0.5 * x.norm_squared())
            + Multivector::e0(),
    ))
}

/// Reads the Euclidean location of a (possibly scaled) point.
pub fn extract_point(mv: &Multivector, tol: &Tolerance) -> Result<Vec3, CgaError> {
    let w = mv.e0_coeff();
    if tol.is_zero(w, mv.max_abs()) || !w.is_finite() {
        return Err(CgaError::PointAtInfinity);
    }
    let [x, y, z] = mv.euclidean_part();
    Ok(Vec3::new(x / w, y / w, z / w))
}

impl ConformalPoint {
    /// Wraps a grade-1 multivector, rescaling it so the `e0` coefficient is 1.
    pub fn from_multivector(mv: Multivector, tol: &Tolerance) -> Result<Self, CgaError> {
        let v = mv.grade_part(1);
        let w = v.e0_coeff();
        if tol.is_zero(w, v.max_abs()) || !w.is_finite() {
            return Err(CgaError::PointAtInfinity);
        }
        Ok(Self(v * (1.0 / w)))
    }

    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    pub fn position(&self) -> Vec3 {
        let [x, y, z] = self.0.euclidean_part();
        let w = self.0.e0_coeff();
        Vec3::new(x / w, y / w, z / w)
    }
}

/// `s = P − ½r²e∞`.
pub fn make_sphere(center: &ConformalPoint, radius: f64) -> Result<Sphere, CgaError> {
    if !radius.is_finite() {
        return Err(CgaError::NonFinite);
    }
    if radius < 0.0 {
        return Err(CgaError::NegativeRadius(radius));
    }
    let p = *center.mv() * (1.0 / center.mv().e0_coeff());
    Ok(Sphere(p - Multivector::einf() * (0.5 * radius * radius)))
}

impl Sphere {
    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    pub fn center(&self) -> Vec3 {
        let [x, y, z] = self.0.euclidean_part();
        let w = self.0.e0_coeff();
        Vec3::new(x / w, y / w, z / w)
    }

    pub fn radius2(&self) -> f64 {
        let w = self.0.e0_coeff();
        (self.0 * self.0).scalar_part() / (w * w)
    }

    /// `Q·s` for a point `Q`; zero when `Q` is on the surface.
    pub fn incidence(&self, q: &ConformalPoint) -> f64 {
        (*q.mv() | self.0).scalar_part()
    }
}

/// Wedge of the given factors, e.g. `e0 ∧ e3 ∧ X ∧ e∞`.
pub fn make_plane_wedge(factors: &[Multivector], tol: &Tolerance) -> Result<Plane, CgaError> {
    let wedge = wedge_all(factors, tol)?;
    if wedge.grades(0.0) != [4] {
        return Err(CgaError::NotAPlane);
    }
    Ok(Plane(wedge))
}

/// `l = P1 ∧ P2 ∧ e∞`.
pub fn make_line(p1: &ConformalPoint, p2: &ConformalPoint, tol: &Tolerance) -> Result<Line, CgaError> {
    let wedge = wedge_all(&[*p1.mv(), *p2.mv(), Multivector::einf()], tol)?;
    Ok(Line(wedge))
}

fn wedge_all(factors: &[Multivector], tol: &Tolerance) -> Result<Multivector, CgaError> {
    let (first, rest) = factors.split_first().ok_or(CgaError::DegenerateWedge)?;
    let wedge = rest.iter().fold(*first, |acc, f| acc.outer(f));
    // With e∞ among the factors, the e∞ parts of the other vectors drop out
    // of the wedge, so they must not set the scale either.
    let einf = Multivector::einf();
    let has_inf = factors.contains(&einf);
    let size = |f: &Multivector| {
        if has_inf && *f != einf && f.grades(0.0) == [1] {
            (*f - einf * f.einf_coeff()).max_abs()
        } else {
            f.max_abs()
        }
    };
    let scale: f64 = factors.iter().map(size).product();
    if tol.is_zero(wedge.max_abs(), scale) {
        return Err(CgaError::DegenerateWedge);
    }
    Ok(wedge)
}

impl Plane {
    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    pub fn dual(&self) -> Multivector {
        self.0.dual()
    }

    /// `X ∧ π` for a point `X`; zero when `X` lies in the plane.
    pub fn incidence(&self, q: &ConformalPoint) -> Multivector {
        q.mv().outer(&self.0)
    }

    pub fn contains(&self, q: &ConformalPoint, tol: &Tolerance) -> bool {
        let scale = q.mv().max_abs() * self.0.max_abs();
        tol.is_zero(self.incidence(q).max_abs(), scale)
    }
}

impl Line {
    pub fn mv(&self) -> &Multivector {
        &self.0
    }

    pub fn incidence(&self, q: &ConformalPoint) -> Multivector {
        q.mv().outer(&self.0)
    }

    pub fn contains(&self, q: &ConformalPoint, tol: &Tolerance) -> bool {
        let scale = q.mv().max_abs() * self.0.max_abs();
        tol.is_zero(self.incidence(q).max_abs(), scale)
    }
}

/// Radius squared of a round given in wedge (outer-product) form.
fn round_radius2(x: &Multivector, grade: u32) -> f64 {
    let einf = Multivector::einf();
    let carrier = einf.left_contraction(x);
    let num = (*x * *x).scalar_part();
    let den = (carrier * carrier).scalar_part();
    // X X̂ with the grade involution X̂ = (−1)^k X
    let involution = if grade.is_multiple_of(2) { 1.0 } else { -1.0 };
    involution * num / den
}

/// Euclidean centre of a round in wedge form, from the sandwich `X e∞ X`.
fn round_center(x: &Multivector, tol: &Tolerance) -> Result<Vec3, CgaError> {
    let s = (*x * Multivector::einf() * *x).grade_part(1);
    extract_point(&s, tol)
}

fn classify(radius2: f64, center: Option<Vec3>, tol: &Tolerance) -> Reality {
    let scale = center.map_or(0.0, |c| c.norm_squared()).max(radius2.abs()).max(1.0);
    if tol.is_zero(radius2, scale) {
        Reality::Tangent
    } else if radius2 > 0.0 {
        Reality::Real
    } else {
        Reality::Imaginary
    }
}

impl Circle {
    fn from_mv(mv: Multivector, tol: &Tolerance) -> Self {
        let radius2 = round_radius2(&mv, 3);
        let reality = classify(radius2, round_center(&mv, tol).ok(), tol);
        Self { mv, radius2, reality }
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn radius2(&self) -> f64 {
        self.radius2
    }

    pub fn reality(&self) -> Reality {
        self.reality
    }

    pub fn is_real(&self) -> bool {
        self.reality != Reality::Imaginary
    }

    pub fn center(&self, tol: &Tolerance) -> Result<Vec3, CgaError> {
        round_center(&self.mv, tol)
    }

    /// `X ∧ c` for a point `X`; zero when `X` is on the circle.
    pub fn incidence(&self, q: &ConformalPoint) -> Multivector {
        q.mv().outer(&self.mv)
    }
}

impl PointPair {
    pub fn from_mv(mv: Multivector, tol: &Tolerance) -> Self {
        let radius2 = round_radius2(&mv, 2);
        let reality = classify(radius2, round_center(&mv, tol).ok(), tol);
        Self { mv, radius2, reality }
    }

    /// `P1 ∧ P2`.
    pub fn from_points(p1: &ConformalPoint, p2: &ConformalPoint, tol: &Tolerance) -> Self {
        Self::from_mv(p1.mv().outer(p2.mv()), tol)
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    /// Scalar square `Pp²`; non-negative iff the pair is real.
    pub fn square(&self) -> f64 {
        (self.mv * self.mv).scalar_part()
    }

    /// Half the distance between the two points, squared.
    pub fn radius2(&self) -> f64 {
        self.radius2
    }

    pub fn reality(&self) -> Reality {
        self.reality
    }

    pub fn is_real(&self) -> bool {
        self.reality != Reality::Imaginary
    }
}

/// `c = (s1* ∧ s2*)*`.
pub fn intersect_spheres(s1: &Sphere, s2: &Sphere, tol: &Tolerance) -> Result<Circle, CgaError> {
    let wedge = s1.mv().outer(s2.mv());
    let scale = s1.mv().max_abs() * s2.mv().max_abs();
    if tol.is_zero(wedge.max_abs(), scale) {
        return Err(CgaError::CoincidentEntities);
    }
    let (c1, c2) = (s1.center(), s2.center());
    let extent = c1.norm().max(c2.norm()).max(1.0);
    if tol.is_zero((c1 - c2).norm(), extent) {
        return Err(CgaError::ConcentricSpheres);
    }
    Ok(Circle::from_mv(wedge.dual(), tol))
}

/// `c = (π* ∧ s*)*`.
pub fn intersect_plane_sphere(plane: &Plane, s: &Sphere, tol: &Tolerance) -> Result<Circle, CgaError> {
    let pd = plane.dual();
    let wedge = pd.outer(s.mv());
    let scale = pd.max_abs() * s.mv().max_abs();
    if tol.is_zero(wedge.max_abs(), scale) {
        return Err(CgaError::CoincidentEntities);
    }
    Ok(Circle::from_mv(wedge.dual(), tol))
}

/// `Pp = (c* ∧ π*)*`.
pub fn intersect_circle_plane(c: &Circle, plane: &Plane, tol: &Tolerance) -> Result<PointPair, CgaError> {
    let cd = c.mv().dual();
    let pd = plane.dual();
    let wedge = cd.outer(&pd);
    let scale = cd.max_abs() * pd.max_abs();
    if tol.is_zero(wedge.max_abs(), scale) {
        return Err(CgaError::CircleInPlane);
    }
    Ok(PointPair::from_mv(wedge.dual(), tol))
}

/// Both points of a pair from `P = (Pp ± √(Pp²)) / (−e∞·Pp)`, ordered
/// `[Plus, Minus]` by the [`PairSign`] rule.
pub fn split_point_pair_both(pp: &PointPair, tol: &Tolerance) -> Result<[ConformalPoint; 2], CgaError> {
    match pp.reality() {
        Reality::Imaginary => return Err(CgaError::ImaginaryPair(pp.radius2())),
        Reality::Tangent => {
            let s = (*pp.mv() * Multivector::einf() * *pp.mv()).grade_part(1);
            let p = ConformalPoint::from_multivector(s, tol)?;
            return Ok([p, p]);
        }
        Reality::Real => {}
    }
    let root = pp.square().max(0.0).sqrt();
    let denom = -(Multivector::einf() | *pp.mv());
    let dd = (denom * denom).scalar_part();
    if tol.is_zero(dd, denom.max_abs() * denom.max_abs()) {
        return Err(CgaError::DegenerateDenominator);
    }
    let candidate = |r: f64| {
        let num = *pp.mv() + Multivector::scalar(r);
        ConformalPoint::from_multivector((num * denom) * (1.0 / dd), tol)
    };
    let (a, b) = (candidate(root)?, candidate(-root)?);
    let (pa, pb) = (a.position(), b.position());
    let scale = pa.norm().max(pb.norm()).max(1.0);
    let a_first = if tol.is_zero(pa.z - pb.z, scale) { pa.x >= pb.x } else { pa.z > pb.z };
    Ok(if a_first { [a, b] } else { [b, a] })
}

pub fn split_point_pair(pp: &PointPair, sign: PairSign, tol: &Tolerance) -> Result<ConformalPoint, CgaError> {
    let [plus, minus] = split_point_pair_both(pp, tol)?;
    Ok(match sign {
        PairSign::Plus => plus,
        PairSign::Minus => minus,
    })
}
