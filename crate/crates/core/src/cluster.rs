//! Agglomerative hierarchical clustering over a precomputed distance matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    #[default]
    Average,
    Single,
    Complete,
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average" => Ok(Linkage::Average),
            "single" => Ok(Linkage::Single),
            "complete" => Ok(Linkage::Complete),
            other => Err(Error::InvalidArgument(format!("unknown linkage '{other}'"))),
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Linkage::Average => "average",
            Linkage::Single => "single",
            Linkage::Complete => "complete",
        })
    }
}

/// One merge step. Leaves are numbered `0..n`; the cluster created by merge
/// `i` gets id `n + i`. `left < right`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

/// Merges the closest pair of clusters until one remains. Cluster distances
/// are maintained with Lance-Williams updates. Ties go to the pair with the
/// smallest `(left, right)` ids.
pub fn agglomerate(dist: &[Vec<f64>], linkage: Linkage) -> Vec<Merge> {
    let n = dist.len();
    if n < 2 {
        return Vec::new();
    }
    // slot i holds the cluster currently stored there
    let mut ids: Vec<usize> = (0..n).collect();
    let mut sizes = vec![1usize; n];
    let mut active = vec![true; n];
    let mut d: Vec<Vec<f64>> = dist.to_vec();
    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..n {
            if !active[a] {
                continue;
            }
            for b in (a + 1)..n {
                if !active[b] {
                    continue;
                }
                let (lo, hi) = if ids[a] < ids[b] { (ids[a], ids[b]) } else { (ids[b], ids[a]) };
                let cand = (d[a][b], lo, hi, a, b);
                let better = match best {
                    None => true,
                    Some(cur) => (cand.0, cand.1, cand.2) < (cur.0, cur.1, cur.2),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        let (height, left, right, a, b) = best.unwrap();
        let (sa, sb) = (sizes[a] as f64, sizes[b] as f64);
        for c in 0..n {
            if !active[c] || c == a || c == b {
                continue;
            }
            let merged = match linkage {
                Linkage::Single => d[a][c].min(d[b][c]),
                Linkage::Complete => d[a][c].max(d[b][c]),
                Linkage::Average => (sa * d[a][c] + sb * d[b][c]) / (sa + sb),
            };
            d[a][c] = merged;
            d[c][a] = merged;
        }
        active[b] = false;
        sizes[a] += sizes[b];
        ids[a] = n + step;
        merges.push(Merge { left, right, height, size: sizes[a] });
    }
    merges
}

/// Flat clusters from applying every merge with `height <= threshold`.
/// Labels are numbered by first member.
pub fn cut(merges: &[Merge], n: usize, threshold: f64) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n + merges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, m) in merges.iter().enumerate() {
        if m.height <= threshold {
            let node = n + i;
            let l = find(&mut parent, m.left);
            let r = find(&mut parent, m.right);
            parent[l] = node;
            parent[r] = node;
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut root_label: Vec<Option<usize>> = vec![None; n + merges.len()];
    let mut next = 0;
    for (leaf, label) in labels.iter_mut().enumerate() {
        let root = find(&mut parent, leaf);
        *label = *root_label[root].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    labels
}

/// Leaf indices under each node id (leaves and merged clusters), in the
/// numbering used by [`Merge`].
pub fn members(merges: &[Merge], n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for m in merges {
        let mut both = out[m.left].clone();
        both.extend_from_slice(&out[m.right]);
        both.sort_unstable();
        out.push(both);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let m = agglomerate(&[vec![0.0, 0.3], vec![0.3, 0.0]], Linkage::Average);
        assert_eq!(m, vec![Merge { left: 0, right: 1, height: 0.3, size: 2 }]);
    }

    #[test]
    fn dominant_pair_first() {
        let d = vec![vec![0.0, 0.1, 0.9], vec![0.1, 0.0, 0.8], vec![0.9, 0.8, 0.0]];
        for l in [Linkage::Average, Linkage::Single, Linkage::Complete] {
            let m = agglomerate(&d, l);
            assert_eq!((m[0].left, m[0].right), (0, 1));
            assert_eq!((m[1].left, m[1].right), (2, 3));
        }
        assert_eq!(agglomerate(&d, Linkage::Single)[1].height, 0.8);
        assert_eq!(agglomerate(&d, Linkage::Complete)[1].height, 0.9);
        assert!((agglomerate(&d, Linkage::Average)[1].height - 0.85).abs() < 1e-12);
    }

    #[test]
    fn cut_thresholds() {
        let d = vec![vec![0.0, 0.1, 0.9], vec![0.1, 0.0, 0.8], vec![0.9, 0.8, 0.0]];
        let m = agglomerate(&d, Linkage::Average);
        assert_eq!(cut(&m, 3, 0.05), vec![0, 1, 2]);
        assert_eq!(cut(&m, 3, 0.5), vec![0, 0, 1]);
        assert_eq!(cut(&m, 3, 1.0), vec![0, 0, 0]);
        assert_eq!(members(&m, 3)[4], vec![0, 1, 2]);
    }
}
