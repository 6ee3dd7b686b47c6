use std::collections::VecDeque;

use super::WordGraph;

/// Share of shortest paths between other node pairs that pass through each
/// node, on the unweighted undirected view of `g` (edge direction and weight
/// are ignored). Each node's value is normalized by the number of pairs not
/// involving it, so it lies in `[0, 1]`. Brandes-style dependency
/// accumulation, O(V·E).
pub fn load_centrality(g: &WordGraph) -> Vec<f64> {
    let n = g.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b, _) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut score = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        preds.iter_mut().for_each(Vec::clear);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    if n > 2 {
        // every unordered pair was visited from both ends
        let pairs = ((n - 1) * (n - 2)) as f64;
        score.iter_mut().for_each(|v| *v /= pairs);
    } else {
        score.fill(0.0);
    }
    score
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_middle_dominates() {
        let mut g = WordGraph::with_nodes(false, ["a", "b", "c"]);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 1.0);
        let c = load_centrality(&g);
        assert_eq!(c, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn star_center() {
        let mut g = WordGraph::with_nodes(false, ["c", "a", "b", "d"]);
        for leaf in 1..4 {
            g.add_edge(0, leaf, 1.0);
        }
        let c = load_centrality(&g);
        assert!((c[0] - 1.0).abs() < 1e-12);
        assert!(c[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn square_splits_paths() {
        // 0-1-2-3-0: each opposite pair has two shortest paths
        let mut g = WordGraph::with_nodes(false, ["a", "b", "c", "d"]);
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4, 1.0);
        }
        let c = load_centrality(&g);
        for v in c {
            assert!((v - 1.0 / 6.0).abs() < 1e-12);
        }
    }
}
