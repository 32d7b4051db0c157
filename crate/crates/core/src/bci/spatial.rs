use super::signal::SignalBlock;
use super::BciError;

/// Centre channel minus the mean of its neighbours.
pub fn laplacian(block: &SignalBlock, center: &str, neighbors: &[&str]) -> Result<Vec<f64>, BciError> {
    if neighbors.is_empty() {
        return Err(BciError::NoNeighbors);
    }
    let c = block.channel(center)?;
    let ns = neighbors.iter().map(|n| block.channel(n)).collect::<Result<Vec<_>, _>>()?;
    let k = ns.len() as f64;
    Ok((0..c.len())
        .map(|t| c[t] - ns.iter().map(|n| n[t]).sum::<f64>() / k)
        .collect())
}
