//! YAKE: per-term statistics (casing, position, frequency, context
//! relatedness, sentence dispersion) combined into a term score, then into
//! n-gram scores. Lower is better.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::candidates::{generate, Candidate};
use crate::corpus::Document;
use crate::extractor::{finish, sort_ranked, Better, Ranked, ScoredKeyword};
use crate::graph_extract::similarity;
use crate::normalize::{Normalizer, Token};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct YakeConfig {
    pub max_n: usize,
    /// Neighbours considered on each side for the relatedness feature.
    pub window: usize,
    /// Candidates at least this similar (normalized edit distance) to a
    /// better-ranked one are dropped.
    pub dedup_threshold: f64,
}

impl Default for YakeConfig {
    fn default() -> Self {
        YakeConfig { max_n: 3, window: 1, dedup_threshold: 0.8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermFeatures {
    pub tf: usize,
    pub tf_norm: f64,
    pub casing: f64,
    pub position: f64,
    pub relatedness: f64,
    pub dispersion: f64,
}

/// `(relatedness * position) / (casing + tf_norm / relatedness + dispersion / relatedness)`
pub fn term_score(f: &TermFeatures) -> f64 {
    (f.relatedness * f.position) / (f.casing + f.tf_norm / f.relatedness + f.dispersion / f.relatedness)
}

fn median(sorted: &[usize]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

#[derive(Default)]
struct TermStats {
    tf: usize,
    upper: usize,
    acronym: usize,
    sentences: Vec<usize>,
    left: Vec<String>,
    right: Vec<String>,
}

/// Features for every content term (keyed by normalized form). When the text
/// carries no uppercase letters at all the casing signal is unavailable and
/// set to a neutral 1.
pub fn term_features(tokens: &[Token], window: usize) -> HashMap<String, TermFeatures> {
    let has_case = tokens.iter().any(|t| t.surface.chars().any(char::is_uppercase));
    if !has_case {
        log::debug!("yake: text has no uppercase letters, casing feature fixed to 1");
    }
    let sentence_count = tokens.last().map_or(0, |t| t.sent_idx + 1);
    let mut stats: BTreeMap<&str, TermStats> = BTreeMap::new();
    for (i, t) in tokens.iter().enumerate() {
        if !t.is_content() {
            continue;
        }
        let s = stats.entry(t.norm.as_str()).or_default();
        s.tf += 1;
        s.sentences.push(t.sent_idx);
        let letters: Vec<char> = t.surface.chars().filter(|c| c.is_alphabetic()).collect();
        if letters.len() > 1 && letters.iter().all(|c| c.is_uppercase()) {
            s.acronym += 1;
        } else if t.surface.chars().next().is_some_and(char::is_uppercase)
            && i > 0
            && tokens[i - 1].sent_idx == t.sent_idx
        {
            s.upper += 1;
        }
        // neighbours inside the same punctuation-free stretch of the sentence
        for j in (i.saturating_sub(window)..i).rev() {
            if !tokens[j].is_alphanumeric || tokens[j].sent_idx != t.sent_idx {
                break;
            }
            s.left.push(tokens[j].norm.clone());
        }
        for u in tokens.iter().take(i + 1 + window).skip(i + 1) {
            if !u.is_alphanumeric || u.sent_idx != t.sent_idx {
                break;
            }
            s.right.push(u.norm.clone());
        }
    }
    if stats.is_empty() {
        return HashMap::new();
    }
    let tfs: Vec<f64> = stats.values().map(|s| s.tf as f64).collect();
    let mean = tfs.iter().sum::<f64>() / tfs.len() as f64;
    let std = (tfs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / tfs.len() as f64).sqrt();
    let max_tf = tfs.iter().copied().fold(0.0, f64::max);

    let dispersion_ratio = |v: &[String]| -> f64 {
        if v.is_empty() {
            0.0
        } else {
            v.iter().collect::<HashSet<_>>().len() as f64 / v.len() as f64
        }
    };
    stats
        .into_iter()
        .map(|(term, mut s)| {
            let tf = s.tf as f64;
            s.sentences.sort_unstable();
            let distinct_sentences = {
                let mut d = s.sentences.clone();
                d.dedup();
                d.len()
            };
            let casing = if has_case { s.upper.max(s.acronym) as f64 / (1.0 + tf.ln()) } else { 1.0 };
            let features = TermFeatures {
                tf: s.tf,
                tf_norm: tf / (mean + std),
                casing,
                position: (3.0 + median(&s.sentences)).ln().ln(),
                relatedness: 1.0 + (dispersion_ratio(&s.left) + dispersion_ratio(&s.right)) * tf / max_tf,
                dispersion: distinct_sentences as f64 / sentence_count as f64,
            };
            (term.to_string(), features)
        })
        .collect()
}

/// `prod(S) / (tf * (1 + sum(S)))` over the candidate's non-stopword terms.
pub fn candidate_score(term_scores: &[f64], tf: usize) -> f64 {
    let product: f64 = term_scores.iter().product();
    let sum: f64 = term_scores.iter().sum();
    product / (tf as f64 * (1.0 + sum))
}

/// Multi-word candidates made of one repeated word ("a a") carry no extra
/// information and are skipped.
fn is_repetition(c: &Candidate) -> bool {
    let mut words = c.norm.split(' ');
    let first = words.next();
    c.n > 1 && words.all(|w| Some(w) == first)
}

pub fn extract(doc: &Document, normalizer: &Normalizer, cfg: &YakeConfig, k: usize) -> Vec<ScoredKeyword> {
    let tokens = normalizer.analyze(&doc.text);
    let features = term_features(&tokens, cfg.window);
    let term_scores: HashMap<&str, f64> = features.iter().map(|(t, f)| (t.as_str(), term_score(f))).collect();
    let candidates = generate(&tokens, cfg.max_n, true).expect("max_n validated by config");
    let mut ranked: Vec<Ranked> = candidates
        .into_iter()
        .filter(|c| !is_repetition(c))
        .map(|c| {
            let first = c.first_tok_idx();
            let scores: Vec<f64> = tokens[first..first + c.n]
                .iter()
                .filter(|t| !t.is_stopword)
                .map(|t| term_scores[t.norm.as_str()])
                .collect();
            Ranked { score: candidate_score(&scores, c.tf), phrase: c.surface, norm: c.norm, first }
        })
        .collect();
    sort_ranked(&mut ranked, Better::Lower);

    let mut kept: Vec<Ranked> = Vec::new();
    for r in ranked {
        if kept.len() == k {
            break;
        }
        if kept.iter().all(|q| similarity(&q.norm, &r.norm) < cfg.dedup_threshold) {
            kept.push(r);
        }
    }
    finish(kept, Better::Lower, k)
}
