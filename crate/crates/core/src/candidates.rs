//! N-gram keyphrase candidates shared by the extractors.

use std::collections::HashMap;

use serde::Serialize;

use crate::normalize::Token;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    /// Surface form of the first occurrence, original case.
    pub surface: String,
    /// Normalized tokens joined by single spaces.
    pub norm: String,
    pub n: usize,
    /// `(sent_idx, tok_idx)` of the first token of every occurrence.
    pub occurrences: Vec<(usize, usize)>,
    pub tf: usize,
}

impl Candidate {
    pub fn first_tok_idx(&self) -> usize {
        self.occurrences[0].1
    }
}

/// Groups phrase occurrences by normalized form, keeping first-occurrence order.
#[derive(Debug, Default)]
pub struct CandidateSet {
    index: HashMap<String, usize>,
    items: Vec<Candidate>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the occurrence spanning `span` (contiguous tokens).
    pub fn add(&mut self, span: &[Token]) {
        let norm = join_norms(span);
        let at = (span[0].sent_idx, span[0].tok_idx);
        match self.index.get(&norm) {
            Some(&i) => {
                self.items[i].occurrences.push(at);
                self.items[i].tf += 1;
            }
            None => {
                self.index.insert(norm.clone(), self.items.len());
                self.items.push(Candidate {
                    surface: join_surfaces(span),
                    norm,
                    n: span.len(),
                    occurrences: vec![at],
                    tf: 1,
                });
            }
        }
    }

    pub fn into_vec(self) -> Vec<Candidate> {
        self.items
    }
}

pub fn join_norms(span: &[Token]) -> String {
    span.iter().map(|t| t.norm.as_str()).collect::<Vec<_>>().join(" ")
}

pub fn join_surfaces(span: &[Token]) -> String {
    span.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ")
}

/// Sliding-window n-grams (`1..=max_n`) within sentences. Windows containing
/// punctuation or bare numbers are rejected, as are windows that start or end
/// on a stopword; inner stopwords are kept only if `allow_inner_stopword`.
/// Identical normalized forms are merged. Output follows first occurrence,
/// shorter n-grams first at equal start.
pub fn generate(tokens: &[Token], max_n: usize, allow_inner_stopword: bool) -> Result<Vec<Candidate>> {
    if !(1..=3).contains(&max_n) {
        return Err(Error::InvalidArgument(format!("max_n must be in 1..=3, got {max_n}")));
    }
    let mut set = CandidateSet::new();
    for start in 0..tokens.len() {
        for n in 1..=max_n {
            let Some(span) = tokens.get(start..start + n) else { break };
            let last = &span[n - 1];
            if last.sent_idx != span[0].sent_idx || !last.is_alphanumeric || last.is_numeric() {
                break;
            }
            if !span[0].is_content() {
                break;
            }
            if last.is_stopword {
                if !allow_inner_stopword {
                    break;
                }
                continue;
            }
            set.add(span);
        }
    }
    Ok(set.into_vec())
}

/// Maximal runs of content tokens (no stopwords, punctuation or bare numbers)
/// inside one sentence, as `tokens` index ranges.
pub fn content_runs(tokens: &[Token]) -> Vec<std::ops::Range<usize>> {
    let mut runs = Vec::new();
    let mut start: Option<usize> = None;
    for (i, t) in tokens.iter().enumerate() {
        let continues = t.is_content() && start.is_some_and(|s| tokens[s].sent_idx == t.sent_idx);
        if continues {
            continue;
        }
        if let Some(s) = start.take() {
            runs.push(s..i);
        }
        if t.is_content() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        runs.push(s..tokens.len());
    }
    runs
}
