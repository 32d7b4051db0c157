//! Basis blades of Cl(4,1) and the machine-generated product table.
//!
//! Blades are stored as 5-bit masks over the orthonormal generators
//! `e1, e2, e3, e+, e-` (bit 0 through bit 4) with `e1² = e2² = e3² = e+² = 1`
//! and `e-² = -1`. The null vectors used by the geometric constructions are
//! derived from the orthonormal pair:
//!
//! ```text
//! e0 = ½(e- − e+)      e∞ = e- + e+
//! e0² = e∞² = 0        e0·e∞ = −1
//! ```

/// Number of basis blades.
pub const BLADE_COUNT: usize = 32;

/// Number of generators.
pub const DIM: usize = 5;

/// Squares of the orthonormal generators, in bit order.
pub const METRIC: [i8; DIM] = [1, 1, 1, 1, -1];

const GENERATOR_NAMES: [&str; DIM] = ["e1", "e2", "e3", "e+", "e-"];

/// Grade of the blade with the given bitmask.
pub const fn grade(mask: usize) -> u32 {
    (mask as u32).count_ones()
}

/// Sign picked up when the product `a b` of two canonically ordered blades is
/// brought back to canonical order, before any metric contraction.
const fn reorder_sign(a: usize, b: usize) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += ((a & b) as u32).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1
    } else {
        -1
    }
}

const fn blade_product_sign(a: usize, b: usize) -> i8 {
    let mut sign = reorder_sign(a, b);
    let common = a & b;
    let mut bit = 0;
    while bit < DIM {
        if common & (1 << bit) != 0 {
            sign *= METRIC[bit];
        }
        bit += 1;
    }
    sign
}

const fn build_sign_table() -> [[i8; BLADE_COUNT]; BLADE_COUNT] {
    let mut table = [[0i8; BLADE_COUNT]; BLADE_COUNT];
    let mut a = 0;
    while a < BLADE_COUNT {
        let mut b = 0;
        while b < BLADE_COUNT {
            table[a][b] = blade_product_sign(a, b);
            b += 1;
        }
        a += 1;
    }
    table
}

/// `SIGN[a][b]` is the sign of the product of blades `a` and `b`; the
/// resulting blade is always `a ^ b`.
pub static SIGN: [[i8; BLADE_COUNT]; BLADE_COUNT] = build_sign_table();

const fn build_order() -> [usize; BLADE_COUNT] {
    let mut order = [0usize; BLADE_COUNT];
    let mut next = 0;
    let mut g = 0;
    while g <= DIM as u32 {
        let mut mask = 0;
        while mask < BLADE_COUNT {
            if grade(mask) == g {
                order[next] = mask;
                next += 1;
            }
            mask += 1;
        }
        g += 1;
    }
    order
}

/// Display order: by grade, then by ascending bitmask.
pub static DISPLAY_ORDER: [usize; BLADE_COUNT] = build_order();

/// Human-readable blade name, e.g. `1`, `e1`, `e1^e+`.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    (0..DIM)
        .filter(|bit| mask & (1 << bit) != 0)
        .map(|bit| GENERATOR_NAMES[bit])
        .collect::<Vec<_>>()
        .join("^")
}

/// Inverse of [`blade_name`].
pub fn parse_blade_name(name: &str) -> Option<usize> {
    if name == "1" {
        return Some(0);
    }
    let mut mask = 0;
    for part in name.split('^') {
        let bit = GENERATOR_NAMES.iter().position(|g| *g == part)?;
        if mask & (1 << bit) != 0 {
            return None;
        }
        mask |= 1 << bit;
    }
    Some(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_square_to_metric() {
        for (bit, &square) in METRIC.iter().enumerate() {
            let m = 1 << bit;
            assert_eq!(SIGN[m][m], square);
        }
    }

    #[test]
    fn distinct_generators_anticommute() {
        for i in 0..DIM {
            for j in 0..DIM {
                if i != j {
                    assert_eq!(SIGN[1 << i][1 << j], -SIGN[1 << j][1 << i]);
                }
            }
        }
    }

    #[test]
    fn display_order_is_a_permutation() {
        let mut seen = [false; BLADE_COUNT];
        for &m in DISPLAY_ORDER.iter() {
            assert!(!seen[m]);
            seen[m] = true;
        }
        assert_eq!(DISPLAY_ORDER[0], 0);
        assert_eq!(DISPLAY_ORDER[31], 31);
    }

    #[test]
    fn names_round_trip() {
        for m in 0..BLADE_COUNT {
            assert_eq!(parse_blade_name(&blade_name(m)), Some(m));
        }
        assert_eq!(blade_name(0b01001), "e1^e+");
        assert_eq!(parse_blade_name("e1^e1"), None);
    }
}
