use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Mul, Neg, Sub};

use super::blade::{self, BLADE_COUNT, SIGN};

/// An element of Cl(4,1): one coefficient per basis blade, indexed by the
/// blade bitmask described in [`blade`].
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [f64; BLADE_COUNT],
}

const E1: usize = 0b00001;
const E2: usize = 0b00010;
const E3: usize = 0b00100;
const EP: usize = 0b01000;
const EM: usize = 0b10000;

impl Multivector {
    pub const ZERO: Self = Self {
        coeffs: [0.0; BLADE_COUNT],
    };

    pub fn from_coeffs(coeffs: [f64; BLADE_COUNT]) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64; BLADE_COUNT] {
        &self.coeffs
    }

    pub fn scalar(value: f64) -> Self {
        Self::blade(0, value)
    }

    /// Single basis blade `mask` scaled by `value`.
    pub fn blade(mask: usize, value: f64) -> Self {
        let mut mv = Self::ZERO;
        mv.coeffs[mask] = value;
        mv
    }

    pub fn e1() -> Self {
        Self::blade(E1, 1.0)
    }

    pub fn e2() -> Self {
        Self::blade(E2, 1.0)
    }

    pub fn e3() -> Self {
        Self::blade(E3, 1.0)
    }

    pub fn e_plus() -> Self {
        Self::blade(EP, 1.0)
    }

    pub fn e_minus() -> Self {
        Self::blade(EM, 1.0)
    }

    /// Null vector for the origin, `½(e- − e+)`.
    pub fn e0() -> Self {
        let mut mv = Self::ZERO;
        mv.coeffs[EM] = 0.5;
        mv.coeffs[EP] = -0.5;
        mv
    }

    /// Null vector for the point at infinity, `e- + e+`.
    pub fn einf() -> Self {
        let mut mv = Self::ZERO;
        mv.coeffs[EM] = 1.0;
        mv.coeffs[EP] = 1.0;
        mv
    }

    /// Grade-1 element `x e1 + y e2 + z e3`.
    pub fn euclidean(v: [f64; 3]) -> Self {
        let mut mv = Self::ZERO;
        mv.coeffs[E1] = v[0];
        mv.coeffs[E2] = v[1];
        mv.coeffs[E3] = v[2];
        mv
    }

    /// Pseudoscalar `e1 e2 e3 e+ e-`.
    pub fn pseudoscalar() -> Self {
        Self::blade(BLADE_COUNT - 1, 1.0)
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// Coefficients of `e1, e2, e3`.
    pub fn euclidean_part(&self) -> [f64; 3] {
        [self.coeffs[E1], self.coeffs[E2], self.coeffs[E3]]
    }

    /// Coefficient of `e0` in the grade-1 part, i.e. `−e∞·v`.
    pub fn e0_coeff(&self) -> f64 {
        self.coeffs[EM] - self.coeffs[EP]
    }

    /// Coefficient of `e∞` in the grade-1 part, i.e. `−e0·v`.
    pub fn einf_coeff(&self) -> f64 {
        0.5 * (self.coeffs[EM] + self.coeffs[EP])
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut out = Self::ZERO;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if blade::grade(mask) == k {
                out.coeffs[mask] = *c;
            }
        }
        out
    }

    /// Grades carrying a coefficient larger than `eps` in magnitude.
    pub fn grades(&self, eps: f64) -> Vec<u32> {
        let mut grades: Vec<u32> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > eps)
            .map(|(mask, _)| blade::grade(mask))
            .collect();
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn geometric(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |_, _, _| true)
    }

    pub fn outer(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b, _| a & b == 0)
    }

    /// Symmetric inner product: for blades of grades `r` and `s` keeps the
    /// grade `|r − s|` part of the geometric product (scalars included).
    pub fn inner(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b, r| {
            let (ga, gb) = (blade::grade(a), blade::grade(b));
            blade::grade(r) == ga.abs_diff(gb)
        })
    }

    /// Left contraction `self ⌋ rhs`.
    pub fn left_contraction(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |a, b, r| {
            let (ga, gb) = (blade::grade(a), blade::grade(b));
            gb >= ga && blade::grade(r) == gb - ga
        })
    }

    fn product_filtered(&self, rhs: &Self, keep: impl Fn(usize, usize, usize) -> bool) -> Self {
        let mut out = Self::ZERO;
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                let r = a ^ b;
                if keep(a, b, r) {
                    out.coeffs[r] += f64::from(SIGN[a][b]) * ca * cb;
                }
            }
        }
        out
    }

    /// Reversion: grade `k` picks up `(−1)^(k(k−1)/2)`.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            let k = blade::grade(mask);
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Inverse conformal pseudoscalar `I_c⁻¹ = e0∧e3∧e2∧e1∧e∞`.
    ///
    /// In the orthonormal basis this evaluates to `−e1 e2 e3 e+ e-`, so
    /// `I_c = e1 e2 e3 e+ e-` and `(I_c⁻¹)² = −1`.
    pub fn inverse_conformal_pseudoscalar() -> Self {
        Self::e0()
            .outer(&Self::e3())
            .outer(&Self::e2())
            .outer(&Self::e1())
            .outer(&Self::einf())
    }

    pub fn conformal_pseudoscalar() -> Self {
        -Self::inverse_conformal_pseudoscalar()
    }

    /// `A* = A I_c⁻¹`. Applying it twice negates every grade.
    pub fn dual(&self) -> Self {
        self.geometric(&Self::inverse_conformal_pseudoscalar())
    }

    /// Inverse of [`Multivector::dual`]: `A I_c`.
    pub fn undual(&self) -> Self {
        self.geometric(&Self::conformal_pseudoscalar())
    }

    /// Sum of squared coefficients (not the algebra norm).
    pub fn coeff_norm2(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Nonzero `(blade name, coefficient)` pairs in display order.
    pub fn terms(&self, eps: f64) -> Vec<(String, f64)> {
        blade::DISPLAY_ORDER
            .iter()
            .filter(|&&m| self.coeffs[m].abs() > eps)
            .map(|&m| (blade::blade_name(m), self.coeffs[m]))
            .collect()
    }
}

impl Default for Multivector {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms(0.0);
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms.iter().map(|(n, c)| format!("{c}*{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for c in self.coeffs.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

/// Geometric product.
impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.geometric(&rhs)
    }
}

/// Outer product.
impl BitXor for Multivector {
    type Output = Self;
    fn bitxor(self, rhs: Self) -> Self {
        self.outer(&rhs)
    }
}

/// Inner product.
impl BitOr for Multivector {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.inner(&rhs)
    }
}
