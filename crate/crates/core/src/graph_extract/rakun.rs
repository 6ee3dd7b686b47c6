//! RaKUn: a lexical graph whose near-duplicate words are folded into
//! meta-vertices, ranked by load centrality.

use std::collections::HashMap;

use super::{levenshtein, load_centrality, WordGraph};
use crate::corpus::Document;
use crate::extractor::{rank_and_truncate, Better, Ranked, ScoredKeyword};
use crate::normalize::{Normalizer, Token};

/// Words shorter than this never join a meta-vertex, so `cat`/`car` stay apart.
pub const MERGE_MIN_LEN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct RakunConfig {
    /// Maximum edit distance between words sharing a meta-vertex.
    pub distance_threshold: usize,
    /// Minimum number of adjacent occurrences for a bigram keyword.
    pub bigram_count_threshold: usize,
    pub merge_min_len: usize,
}

impl Default for RakunConfig {
    fn default() -> Self {
        RakunConfig { distance_threshold: 2, bigram_count_threshold: 2, merge_min_len: MERGE_MIN_LEN }
    }
}

/// Groups words into meta-vertices. Words are visited in order; a word joins
/// the group already holding the same word, else the first group whose every
/// member is within the distance threshold (both words long enough), else it
/// starts a new group. Returns the group of every word.
pub fn meta_vertices(words: &[&str], cfg: &RakunConfig) -> Vec<usize> {
    let eligible = |x: &str| x.chars().count() >= cfg.merge_min_len;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = Vec::with_capacity(words.len());
    for (i, &w) in words.iter().enumerate() {
        let close = |g: &Vec<usize>| {
            g.iter().all(|&m| eligible(words[m]) && levenshtein(w, words[m]) <= cfg.distance_threshold)
        };
        let joined = groups
            .iter()
            .position(|g| g.iter().any(|&m| words[m] == w))
            .or_else(|| if eligible(w) { groups.iter().position(close) } else { None });
        match joined {
            Some(g) => {
                groups[g].push(i);
                group_of.push(g);
            }
            None => {
                groups.push(vec![i]);
                group_of.push(groups.len() - 1);
            }
        }
    }
    group_of
}

/// Consecutive content tokens within a sentence, skipping stopwords; punctuation
/// and numbers break the chain.
fn adjacent_pairs(tokens: &[Token]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut prev: Option<usize> = None;
    for (i, t) in tokens.iter().enumerate() {
        if t.is_alphanumeric && t.is_stopword {
            continue;
        }
        if t.is_content() {
            if let Some(p) = prev.filter(|&p| tokens[p].sent_idx == t.sent_idx) {
                pairs.push((p, i));
            }
            prev = Some(i);
        } else {
            prev = None;
        }
    }
    pairs
}

pub fn extract(doc: &Document, normalizer: &Normalizer, cfg: &RakunConfig, k: usize) -> Vec<ScoredKeyword> {
    let tokens = normalizer.analyze(&doc.text);

    // distinct words in first-occurrence order
    let mut word_index: HashMap<&str, usize> = HashMap::new();
    let mut words: Vec<&str> = Vec::new();
    let mut first_token: Vec<usize> = Vec::new();
    let mut word_of: Vec<Option<usize>> = vec![None; tokens.len()];
    for (i, t) in tokens.iter().enumerate() {
        if t.is_content() {
            let w = *word_index.entry(t.norm.as_str()).or_insert_with(|| {
                words.push(t.norm.as_str());
                first_token.push(i);
                words.len() - 1
            });
            word_of[i] = Some(w);
        }
    }
    if words.is_empty() {
        return Vec::new();
    }

    let group_of_word = meta_vertices(&words, cfg);
    let groups = group_of_word.iter().max().unwrap() + 1;
    let node = |tok: usize| group_of_word[word_of[tok].unwrap()];
    // a group is represented by its first word, which also comes first in the text
    let mut rep_token = vec![usize::MAX; groups];
    for (w, &g) in group_of_word.iter().enumerate() {
        rep_token[g] = rep_token[g].min(first_token[w]);
    }

    let mut graph = WordGraph::with_nodes(false, (0..groups).map(|g| tokens[rep_token[g]].norm.clone()));
    let pairs = adjacent_pairs(&tokens);
    for &(a, b) in &pairs {
        graph.add_edge(node(a), node(b), 1.0);
    }
    let centrality = load_centrality(&graph);

    let mut order: Vec<usize> = (0..groups).collect();
    order.sort_by(|&a, &b| centrality[b].total_cmp(&centrality[a]).then(rep_token[a].cmp(&rep_token[b])));
    let mut top = vec![false; groups];
    for &g in order.iter().take(k) {
        top[g] = true;
    }

    let mut ranked: Vec<Ranked> = order
        .iter()
        .take(k)
        .map(|&g| {
            let t = &tokens[rep_token[g]];
            Ranked { phrase: t.surface.clone(), norm: t.norm.clone(), score: centrality[g], first: rep_token[g] }
        })
        .collect();

    // bigrams of top nodes directly adjacent in the text, in first-occurrence order
    let mut bigram_counts: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(a, b) in &pairs {
        let (ga, gb) = (node(a), node(b));
        if b == a + 1 && ga != gb && top[ga] && top[gb] {
            bigram_counts.entry((ga, gb)).or_insert((0, a)).0 += 1;
        }
    }
    let mut bigrams: Vec<((usize, usize), (usize, usize))> = bigram_counts.into_iter().collect();
    bigrams.sort_by_key(|&(_, (_, first))| first);
    for ((ga, gb), (count, first)) in bigrams {
        if count < cfg.bigram_count_threshold {
            continue;
        }
        ranked.push(Ranked {
            phrase: format!("{} {}", tokens[first].surface, tokens[first + 1].surface),
            norm: format!("{} {}", tokens[rep_token[ga]].norm, tokens[rep_token[gb]].norm),
            score: (centrality[ga] + centrality[gb]) / 2.0,
            first,
        });
    }
    rank_and_truncate(ranked, Better::Higher, k)
}
