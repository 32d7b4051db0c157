//! A second, table-driven reading of the process-control rules.

use bciarm::bci::Label;
use bciarm::Vec3;

/// Axis indices 0 = x, 1 = y, 2 = z; cycle order y, z, x.
const CYCLE: [usize; 3] = [1, 2, 0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefState {
    pub pos: [f64; 3],
    pub axis: usize,
    pub rests: u32,
}

impl RefState {
    pub fn start(pos: Vec3) -> Self {
        Self {
            pos: [pos.x, pos.y, pos.z],
            axis: 1,
            rests: 0,
        }
    }
}

/// Applies one label. `allowed` decides whether a position may be entered.
pub fn ref_step(s: RefState, label: Label, allowed: &dyn Fn(Vec3) -> bool) -> RefState {
    let mut out = s;
    let sign = match label {
        Label::Rest => {
            out.rests += 1;
            if out.rests == 2 {
                let at = CYCLE.iter().position(|&a| a == s.axis).unwrap();
                out.axis = CYCLE[(at + 1) % 3];
                out.rests = 0;
            }
            return out;
        }
        Label::Lhim => -1.0,
        Label::Rhim => 1.0,
    };
    let mut p = s.pos;
    p[s.axis] += sign * 10.0;
    if allowed(Vec3::new(p[0], p[1], p[2])) {
        out.pos = p;
        out.rests = 0;
    }
    out
}

/// Every label sequence of length `0..=max_len` over the three classes.
pub fn all_sequences(max_len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for l in Label::ALL {
                let mut s: Vec<Label> = seq.clone();
                s.push(l);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
