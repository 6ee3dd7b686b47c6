//! MultipartiteRank: candidates are grouped into topics, linked only across
//! topics, and the first candidate of each topic is promoted before ranking.

use std::collections::BTreeSet;

use super::{is_noun_or_adjective, pagerank, PageRankConfig, WordGraph};
use crate::candidates::{content_runs, Candidate, CandidateSet};
use crate::cluster::{agglomerate, cut, Linkage};
use crate::corpus::Document;
use crate::extractor::{rank_and_truncate, Better, Ranked, ScoredKeyword};
use crate::normalize::{Normalizer, Token};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct MultipartiteConfig {
    /// Topic clustering threshold. Clusters keep merging while their
    /// average-linkage Jaccard distance over stem sets is at most this value,
    /// matching the reference keyphrase toolkit's use of the parameter.
    pub sim_threshold: f64,
    /// Strength of the promotion given to each topic's first candidate.
    pub alpha: f64,
    pub pagerank: PageRankConfig,
}

impl Default for MultipartiteConfig {
    fn default() -> Self {
        MultipartiteConfig { sim_threshold: 0.74, alpha: 1.1, pagerank: PageRankConfig::default() }
    }
}

/// The candidate graph with its topic assignment, before ranking.
#[derive(Debug, Clone)]
pub struct MultipartiteGraph {
    pub candidates: Vec<Candidate>,
    /// Topic index of every candidate.
    pub topic_of: Vec<usize>,
    pub graph: WordGraph,
}

/// Candidate spans: longest noun/adjective runs when tags are available and
/// aligned with the tokens, otherwise stopword/punctuation delimited chunks.
fn candidate_spans(tokens: &[Token], pos: Option<&[String]>) -> Vec<std::ops::Range<usize>> {
    let Some(tags) = pos.filter(|t| t.len() == tokens.len()) else {
        if pos.is_some() {
            log::warn!("POS tags not aligned with tokens, falling back to stopword chunking");
        }
        return content_runs(tokens);
    };
    let mut runs = Vec::new();
    for run in content_runs(tokens) {
        let mut start = None;
        for i in run.clone() {
            if is_noun_or_adjective(&tags[i]) {
                start.get_or_insert(i);
            } else if let Some(s) = start.take() {
                runs.push(s..i);
            }
        }
        if let Some(s) = start {
            runs.push(s..run.end);
        }
    }
    runs
}

fn jaccard_distance(a: &BTreeSet<&str>, b: &BTreeSet<&str>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.union(b).count();
    if union == 0 {
        0.0
    } else {
        1.0 - inter as f64 / union as f64
    }
}

/// Builds candidates, topics and the boosted multipartite graph.
pub fn build(tokens: &[Token], cfg: &MultipartiteConfig, pos: Option<&[String]>) -> MultipartiteGraph {
    let mut set = CandidateSet::new();
    for span in candidate_spans(tokens, pos) {
        set.add(&tokens[span]);
    }
    let candidates = set.into_vec();
    let n = candidates.len();

    let stems: Vec<BTreeSet<&str>> = candidates.iter().map(|c| c.norm.split(' ').collect()).collect();
    let dist: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| jaccard_distance(&stems[i], &stems[j])).collect()).collect();
    let topic_of = if n > 1 { cut(&agglomerate(&dist, Linkage::Average), n, cfg.sim_threshold) } else { vec![0; n] };

    let mut graph = WordGraph::with_nodes(true, candidates.iter().map(|c| c.norm.clone()));
    for i in 0..n {
        for j in (i + 1)..n {
            if topic_of[i] == topic_of[j] {
                continue;
            }
            let mut w = 0.0;
            for &(_, p) in &candidates[i].occurrences {
                for &(_, q) in &candidates[j].occurrences {
                    w += 1.0 / (p.abs_diff(q).max(1)) as f64;
                }
            }
            graph.add_edge(i, j, w);
            graph.add_edge(j, i, w);
        }
    }

    // Promote the first-occurring candidate of each multi-member topic: every
    // edge j -> first gains the weight the other members receive from j,
    // scaled by alpha and by an offset-decaying factor exp(1 / (1 + offset)).
    let topics = topic_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut boosts: Vec<(usize, usize, f64)> = Vec::new();
    for topic in 0..topics {
        let members: Vec<usize> = (0..n).filter(|&i| topic_of[i] == topic).collect();
        if members.len() < 2 {
            continue;
        }
        let first = *members.iter().min_by_key(|&&i| (candidates[i].first_tok_idx(), i)).unwrap();
        let position = (1.0 / (1.0 + candidates[first].first_tok_idx() as f64)).exp();
        for (_, end, _) in graph.neighbors(first).map(|(e, w)| (first, e, w)).collect::<Vec<_>>() {
            let boosters: f64 =
                members.iter().filter(|&&v| v != first).filter_map(|&v| graph.weight(v, end)).sum();
            if boosters > 0.0 {
                boosts.push((end, first, boosters * cfg.alpha * position));
            }
        }
    }
    for (from, to, extra) in boosts {
        graph.add_edge(from, to, extra);
    }
    MultipartiteGraph { candidates, topic_of, graph }
}

pub fn extract(
    doc: &Document,
    normalizer: &Normalizer,
    cfg: &MultipartiteConfig,
    pos: Option<&[String]>,
    k: usize,
) -> Vec<ScoredKeyword> {
    let tokens = normalizer.analyze(&doc.text);
    let mg = build(&tokens, cfg, pos);
    if mg.candidates.is_empty() {
        return Vec::new();
    }
    let scores = pagerank(&mg.graph, &cfg.pagerank).expect("graph is nonempty");
    let ranked = mg
        .candidates
        .into_iter()
        .zip(scores)
        .map(|(c, score)| Ranked { first: c.first_tok_idx(), phrase: c.surface, norm: c.norm, score })
        .collect();
    rank_and_truncate(ranked, Better::Higher, k)
}
