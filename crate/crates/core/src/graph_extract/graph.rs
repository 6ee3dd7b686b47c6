use std::collections::BTreeMap;

/// Weighted word graph. Undirected graphs store every edge in both
/// directions. Self-loops are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct WordGraph {
    labels: Vec<String>,
    directed: bool,
    out: Vec<BTreeMap<usize, f64>>,
}

impl WordGraph {
    pub fn new(directed: bool) -> Self {
        WordGraph { labels: Vec::new(), directed, out: Vec::new() }
    }

    pub fn with_nodes<I, S>(directed: bool, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Self::new(directed);
        for l in labels {
            g.add_node(l);
        }
        g
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.out.push(BTreeMap::new());
        self.labels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Adds `w` to the weight of `a -> b` (and `b -> a` when undirected).
    pub fn add_edge(&mut self, a: usize, b: usize, w: f64) {
        assert!(w >= 0.0 && w.is_finite(), "edge weights must be finite and nonnegative");
        if a == b {
            return;
        }
        *self.out[a].entry(b).or_insert(0.0) += w;
        if !self.directed {
            *self.out[b].entry(a).or_insert(0.0) += w;
        }
    }

    /// Sets the edge weight to `w` without accumulating.
    pub fn set_edge(&mut self, a: usize, b: usize, w: f64) {
        assert!(w >= 0.0 && w.is_finite(), "edge weights must be finite and nonnegative");
        if a == b {
            return;
        }
        self.out[a].insert(b, w);
        if !self.directed {
            self.out[b].insert(a, w);
        }
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        self.out[a].get(&b).copied()
    }

    /// Outgoing `(target, weight)` pairs in target order.
    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.out[a].iter().map(|(&b, &w)| (b, w))
    }

    /// All stored edges `(from, to, weight)`; undirected edges appear twice.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.out.iter().enumerate().flat_map(|(a, m)| m.iter().map(move |(&b, &w)| (a, b, w)))
    }

    pub fn edge_count(&self) -> usize {
        let stored: usize = self.out.iter().map(BTreeMap::len).sum();
        if self.directed {
            stored
        } else {
            stored / 2
        }
    }
}
