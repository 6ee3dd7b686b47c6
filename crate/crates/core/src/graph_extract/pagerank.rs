use super::WordGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Stop once the L1 change between iterations drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig { damping: 0.85, tol: 1e-6, max_iter: 200 }
    }
}

/// Weighted PageRank with uniform teleport. Mass of nodes without outgoing
/// weight is spread uniformly. The result sums to one.
pub fn pagerank(g: &WordGraph, cfg: &PageRankConfig) -> Result<Vec<f64>> {
    let n = g.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let nf = n as f64;
    let out_weight: Vec<f64> = (0..n).map(|i| g.neighbors(i).map(|(_, w)| w).sum()).collect();
    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..cfg.max_iter {
        let dangling: f64 = (0..n).filter(|&i| out_weight[i] <= 0.0).map(|i| x[i]).sum();
        let base = (1.0 - cfg.damping) / nf + cfg.damping * dangling / nf;
        next.fill(base);
        for (i, &xi) in x.iter().enumerate() {
            if out_weight[i] > 0.0 {
                let share = cfg.damping * xi / out_weight[i];
                for (j, w) in g.neighbors(i) {
                    next[j] += share * w;
                }
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let delta: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if delta < cfg.tol {
            break;
        }
    }
    Ok(x)
}
