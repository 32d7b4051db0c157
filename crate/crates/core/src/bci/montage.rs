//! The 19-channel 10-20 montage.

use super::BciError;

pub const CHANNELS: [&str; 19] = [
    "FP1", "FP2", "F3", "F4", "C3", "C4", "P3", "P4", "O1", "O2", "F7", "F8", "T3", "T4", "T5", "T6", "Cz", "Fz",
    "Pz",
];

/// Scalp positions on a unit grid seen from above, +x toward the right ear
/// and +y toward the nose.
const POSITIONS: [(f64, f64); 19] = [
    (-1.0, 2.0),
    (1.0, 2.0),
    (-1.0, 1.0),
    (1.0, 1.0),
    (-1.0, 0.0),
    (1.0, 0.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (-1.0, -2.0),
    (1.0, -2.0),
    (-2.0, 1.0),
    (2.0, 1.0),
    (-2.0, 0.0),
    (2.0, 0.0),
    (-2.0, -1.0),
    (2.0, -1.0),
    (0.0, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
];

/// Case-insensitive lookup.
pub fn channel_index(name: &str) -> Result<usize, BciError> {
    CHANNELS
        .iter()
        .position(|c| c.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| BciError::UnknownChannel(name.to_string()))
}

/// The `k` closest channels, ties in montage order.
pub fn nearest_neighbors(channel: usize, k: usize) -> Vec<usize> {
    let (x, y) = POSITIONS[channel];
    let mut others: Vec<(f64, usize)> = (0..CHANNELS.len())
        .filter(|&i| i != channel)
        .map(|i| ((POSITIONS[i].0 - x).hypot(POSITIONS[i].1 - y), i))
        .collect();
    others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    others.into_iter().take(k).map(|(_, i)| i).collect()
}

pub const DEFAULT_NEIGHBORS: usize = 4;
