//! Clifford products by generator-string rewriting.
//!
//! A blade is a sorted list of generator indices (0..5 for e1, e2, e3, e+,
//! e−). A product concatenates the lists and bubble-sorts, flipping the sign
//! on each swap of distinct generators and contracting equal neighbours by
//! their square.

use std::collections::BTreeMap;

use bciarm::cga::Multivector;

pub const SQUARES: [f64; 5] = [1.0, 1.0, 1.0, 1.0, -1.0];

pub type Mv = BTreeMap<Vec<u8>, f64>;

/// Product of two basis blades as (sign, sorted generator list).
pub fn blade_mul(a: &[u8], b: &[u8]) -> (f64, Vec<u8>) {
    let mut w: Vec<u8> = a.iter().chain(b).copied().collect();
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if w[i] == w[i + 1] {
                sign *= SQUARES[w[i] as usize];
                w.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (sign, w);
        }
    }
}

fn product(x: &Mv, y: &Mv, keep: impl Fn(&[u8], &[u8], &[u8]) -> bool) -> Mv {
    let mut out = Mv::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let (s, r) = blade_mul(a, b);
            if keep(a, b, &r) {
                *out.entry(r).or_insert(0.0) += s * ca * cb;
            }
        }
    }
    out
}

pub fn gp(x: &Mv, y: &Mv) -> Mv {
    product(x, y, |_, _, _| true)
}

/// Grade `r + s` part.
pub fn op(x: &Mv, y: &Mv) -> Mv {
    product(x, y, |a, b, r| r.len() == a.len() + b.len())
}

/// Grade `|r − s|` part.
pub fn ip(x: &Mv, y: &Mv) -> Mv {
    product(x, y, |a, b, r| r.len() == a.len().abs_diff(b.len()))
}

pub fn from_impl(m: &Multivector) -> Mv {
    let mut out = Mv::new();
    for (mask, &c) in m.coeffs().iter().enumerate() {
        if c != 0.0 {
            let blade: Vec<u8> = (0..5u8).filter(|i| mask >> i & 1 == 1).collect();
            out.insert(blade, c);
        }
    }
    out
}

pub fn to_coeffs(x: &Mv) -> [f64; 32] {
    let mut out = [0.0; 32];
    for (blade, &c) in x {
        let mask: usize = blade.iter().map(|&i| 1usize << i).sum();
        out[mask] += c;
    }
    out
}

pub fn vector(c: [f64; 5]) -> Mv {
    (0..5u8).map(|i| (vec![i], c[i as usize])).collect()
}

/// `x + ½|x|² e∞ + e0` with `e0 = ½(e− − e+)`, `e∞ = e− + e+`.
pub fn point(x: [f64; 3]) -> Mv {
    let h = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    vector([x[0], x[1], x[2], h - 0.5, h + 0.5])
}

pub fn einf() -> Mv {
    vector([0.0, 0.0, 0.0, 1.0, 1.0])
}

pub fn e0() -> Mv {
    vector([0.0, 0.0, 0.0, -0.5, 0.5])
}

pub fn scale(x: &Mv, s: f64) -> Mv {
    x.iter().map(|(k, v)| (k.clone(), v * s)).collect()
}

pub fn grade_of(x: &Mv, k: usize) -> Mv {
    x.iter().filter(|(b, _)| b.len() == k).map(|(b, v)| (b.clone(), *v)).collect()
}

/// Largest coefficient difference after mapping both to the bitmask layout.
pub fn max_diff(x: &Mv, m: &Multivector) -> f64 {
    let a = to_coeffs(x);
    a.iter().zip(m.coeffs()).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

/// Sum of |coefficient| products, the scale of rounding in a product.
pub fn product_scale(x: &Multivector, y: &Multivector) -> f64 {
    let s = |m: &Multivector| m.coeffs().iter().map(|c| c.abs()).sum::<f64>();
    s(x) * s(y)
}
