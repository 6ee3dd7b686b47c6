use std::collections::{HashMap, HashSet};

use super::{pagerank, PageRankConfig, WordGraph};
use crate::corpus::Document;
use crate::extractor::{rank_and_truncate, Better, Ranked, ScoredKeyword};
use crate::normalize::Normalizer;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct TextRankConfig {
    /// Two words are linked when their token positions differ by less than this.
    pub window: usize,
    /// Fraction of top-ranked words kept as phrase material.
    pub keep_ratio: f64,
    pub pagerank: PageRankConfig,
}

impl Default for TextRankConfig {
    fn default() -> Self {
        TextRankConfig { window: 2, keep_ratio: 0.33, pagerank: PageRankConfig::default() }
    }
}

/// Number of words kept out of `nodes`, `ceil(ratio * nodes)`. A small slack
/// absorbs representation error so that `0.33 * 100` keeps 33.
pub fn keep_count(ratio: f64, nodes: usize) -> usize {
    ((ratio * nodes as f64) - 1e-9).ceil().max(0.0) as usize
}

pub fn extract(doc: &Document, normalizer: &Normalizer, cfg: &TextRankConfig, k: usize) -> Vec<ScoredKeyword> {
    let tokens = normalizer.analyze(&doc.text);
    let mut node_of: Vec<Option<usize>> = vec![None; tokens.len()];
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut g = WordGraph::new(false);
    for (i, t) in tokens.iter().enumerate() {
        if t.is_content() {
            let id = *index.entry(t.norm.as_str()).or_insert_with(|| g.add_node(t.norm.clone()));
            node_of[i] = Some(id);
        }
    }
    if g.is_empty() {
        return Vec::new();
    }
    for i in 0..tokens.len() {
        let Some(a) = node_of[i] else { continue };
        for b in node_of.iter().take((i + cfg.window).min(tokens.len())).skip(i + 1).flatten() {
            g.set_edge(a, *b, 1.0);
        }
    }
    let scores = pagerank(&g, &cfg.pagerank).expect("graph is nonempty");

    // node ids follow first occurrence, so a stable sort keeps that tie order
    let mut by_score: Vec<usize> = (0..g.len()).collect();
    by_score.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut kept = vec![false; g.len()];
    for &id in by_score.iter().take(keep_count(cfg.keep_ratio, g.len())) {
        kept[id] = true;
    }

    let mut phrases: Vec<Ranked> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut i = 0;
    while i < tokens.len() {
        let in_run = |j: usize| node_of[j].is_some_and(|id| kept[id]);
        if !in_run(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < tokens.len() && in_run(i + 1) && tokens[i + 1].sent_idx == tokens[start].sent_idx {
            i += 1;
        }
        let span = &tokens[start..=i];
        let norm = crate::candidates::join_norms(span);
        if seen.insert(norm.clone()) {
            let score = (start..=i).map(|j| scores[node_of[j].unwrap()]).sum();
            phrases.push(Ranked { phrase: crate::candidates::join_surfaces(span), norm, score, first: start });
        }
        i += 1;
    }
    rank_and_truncate(phrases, Better::Higher, k)
}
