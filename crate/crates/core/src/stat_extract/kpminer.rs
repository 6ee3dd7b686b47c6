//! KP-Miner in single-document mode: frequent, early-appearing
//! stopword-delimited phrases, with a boost for compound phrases. Higher is
//! better.

use crate::candidates::{content_runs, Candidate, CandidateSet};
use crate::corpus::Document;
use crate::extractor::{rank_and_truncate, Better, Ranked, ScoredKeyword};
use crate::normalize::{Normalizer, Token};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct KpMinerConfig {
    /// Least allowable seen frequency.
    pub lasf: usize,
    /// Candidates must first occur before this token index.
    pub cutoff: usize,
    pub alpha: f64,
    /// Upper bound of the boost factor.
    pub sigma: f64,
}

impl Default for KpMinerConfig {
    fn default() -> Self {
        KpMinerConfig { lasf: 3, cutoff: 400, alpha: 2.3, sigma: 3.0 }
    }
}

/// Maximal stopword/punctuation-free runs, merged by normalized form.
pub fn candidates(tokens: &[Token]) -> Vec<Candidate> {
    let mut set = CandidateSet::new();
    for run in content_runs(tokens) {
        set.add(&tokens[run]);
    }
    set.into_vec()
}

/// `min(all / (compound * alpha), sigma)` over candidate occurrence counts;
/// without compound occurrences the boost is `sigma`.
pub fn boost_factor(all_occurrences: usize, compound_occurrences: usize, cfg: &KpMinerConfig) -> f64 {
    if compound_occurrences == 0 {
        return cfg.sigma;
    }
    (all_occurrences as f64 / (compound_occurrences as f64 * cfg.alpha)).min(cfg.sigma)
}

/// Weight in `(1, 2]` favouring compound phrases that appear early.
pub fn position_factor(first_tok_idx: usize, cfg: &KpMinerConfig) -> f64 {
    1.0 + cfg.cutoff.saturating_sub(first_tok_idx) as f64 / cfg.cutoff as f64
}

pub fn score(c: &Candidate, boost: f64, cfg: &KpMinerConfig) -> f64 {
    let base = c.tf as f64 * boost;
    if c.n > 1 {
        base * position_factor(c.first_tok_idx(), cfg)
    } else {
        base
    }
}

pub fn extract(doc: &Document, normalizer: &Normalizer, cfg: &KpMinerConfig, k: usize) -> Vec<ScoredKeyword> {
    let tokens = normalizer.analyze(&doc.text);
    let cands = candidates(&tokens);
    let all: usize = cands.iter().map(|c| c.tf).sum();
    let compound: usize = cands.iter().filter(|c| c.n > 1).map(|c| c.tf).sum();
    let boost = boost_factor(all, compound, cfg);
    let ranked = cands
        .into_iter()
        .filter(|c| c.tf >= cfg.lasf && c.first_tok_idx() < cfg.cutoff)
        .map(|c| Ranked { score: score(&c, boost, cfg), first: c.first_tok_idx(), phrase: c.surface, norm: c.norm })
        .collect();
    rank_and_truncate(ranked, Better::Higher, k)
}
