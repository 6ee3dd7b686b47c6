//! Precision, recall and F1 at k against present gold keyphrases, with both
//! sides normalized (lowercased and stemmed or lemmatized).
//!
//! Scores are macro-averaged over documents. Precision is reported against
//! the number of predictions actually considered (after truncation to `k`
//! and deduplication) and, separately, against a fixed `k`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{is_present, Document};
use crate::extractor::ScoredKeyword;
use crate::normalize::Normalizer;
use crate::{Error, Result};

pub const DEFAULT_K: usize = 10;

/// Gold keyphrases of `doc` whose normalized token sequence occurs
/// contiguously in the normalized document, as normalized strings.
pub fn present_gold(doc: &Document, normalizer: &Normalizer) -> BTreeSet<String> {
    let norms: Vec<String> = normalizer.analyze(&doc.text).into_iter().map(|t| t.norm).collect();
    doc.keywords
        .iter()
        .filter(|k| is_present(&norms, k, normalizer))
        .map(|k| normalizer.normalize_phrase(k))
        .filter(|k| !k.is_empty())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Precision with a fixed denominator of `k`.
    pub precision_fixed_k: f64,
    pub f1_fixed_k: f64,
    pub matches: usize,
    /// Distinct normalized predictions within the first `k`.
    pub considered: usize,
}

pub fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Scores the first `k` predictions against normalized present gold phrases.
pub fn score_at_k<S: AsRef<str>>(
    predicted: &[S],
    gold_present: &BTreeSet<String>,
    normalizer: &Normalizer,
    k: usize,
) -> Scores {
    let mut seen = HashSet::new();
    let considered: Vec<String> = predicted
        .iter()
        .take(k)
        .map(|p| normalizer.normalize_phrase(p.as_ref()))
        .filter(|p| !p.is_empty() && seen.insert(p.clone()))
        .collect();
    let matches = considered.iter().filter(|p| gold_present.contains(*p)).count();
    let precision = if considered.is_empty() { 0.0 } else { matches as f64 / considered.len() as f64 };
    let precision_fixed_k = if k == 0 { 0.0 } else { matches as f64 / k as f64 };
    let recall = if gold_present.is_empty() { 0.0 } else { matches as f64 / gold_present.len() as f64 };
    Scores {
        precision,
        recall,
        f1: f1(precision, recall),
        precision_fixed_k,
        f1_fixed_k: f1(precision_fixed_k, recall),
        matches,
        considered: considered.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedPhrase {
    pub phrase: String,
    pub score: f64,
}

/// One line of a predictions file, best-first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub id: String,
    pub keywords: Vec<PredictedPhrase>,
}

impl Prediction {
    pub fn from_scored(id: &str, keywords: &[ScoredKeyword]) -> Self {
        Prediction {
            id: id.to_string(),
            keywords: keywords.iter().map(|k| PredictedPhrase { phrase: k.phrase.clone(), score: k.score }).collect(),
        }
    }

    pub fn phrases(&self) -> Vec<&str> {
        self.keywords.iter().map(|k| k.phrase.as_str()).collect()
    }
}

pub fn read_predictions<R: BufRead>(reader: R) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Json { line: i + 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Json { line: i + 1, message: e.to_string() })?);
    }
    Ok(out)
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<Vec<Prediction>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_predictions(BufReader::new(file))
}

pub fn write_predictions<W: Write>(mut out: W, predictions: &[Prediction]) -> Result<()> {
    for p in predictions {
        let line = serde_json::to_string(p).map_err(|e| Error::Format(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::io("<output>", e))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocMetrics {
    pub id: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub precision_fixed_k: f64,
    pub f1_fixed_k: f64,
    pub n_gold_present: usize,
    pub n_predicted: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub precision_fixed_k: f64,
    pub f1_fixed_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub k: usize,
    /// Always `"macro"`: unweighted mean over scored documents.
    pub averaging: String,
    /// `"considered"`: headline precision divides by predictions considered.
    pub precision_denominator: String,
    pub scored: usize,
    /// Documents without gold keywords or without present gold keywords.
    pub omitted: usize,
    pub aggregate: Aggregate,
    pub per_doc: Vec<DocMetrics>,
}

/// Scores every document of `corpus` that has present gold keywords.
/// Documents without a prediction line score as empty predictions.
pub fn evaluate_run(
    predictions: &[Prediction],
    corpus: &[Document],
    normalizer: &Normalizer,
    k: usize,
) -> Result<MetricsReport> {
    let ids: HashSet<&str> = corpus.iter().map(|d| d.id.as_str()).collect();
    let mut by_id: HashMap<&str, &Prediction> = HashMap::new();
    for p in predictions {
        if !ids.contains(p.id.as_str()) {
            return Err(Error::UnknownPredictionId(p.id.clone()));
        }
        if by_id.insert(p.id.as_str(), p).is_some() {
            return Err(Error::DuplicatePrediction(p.id.clone()));
        }
    }
    let mut per_doc = Vec::new();
    let mut omitted = 0;
    for doc in corpus {
        let gold = present_gold(doc, normalizer);
        if gold.is_empty() {
            omitted += 1;
            continue;
        }
        let phrases = by_id.get(doc.id.as_str()).map(|p| p.phrases()).unwrap_or_default();
        let s = score_at_k(&phrases, &gold, normalizer, k);
        per_doc.push(DocMetrics {
            id: doc.id.clone(),
            precision: s.precision,
            recall: s.recall,
            f1: s.f1,
            precision_fixed_k: s.precision_fixed_k,
            f1_fixed_k: s.f1_fixed_k,
            n_gold_present: gold.len(),
            n_predicted: s.considered,
        });
    }
    let mean = |f: fn(&DocMetrics) -> f64| -> f64 {
        if per_doc.is_empty() {
            0.0
        } else {
            per_doc.iter().map(f).sum::<f64>() / per_doc.len() as f64
        }
    };
    let aggregate = Aggregate {
        precision: mean(|d| d.precision),
        recall: mean(|d| d.recall),
        f1: mean(|d| d.f1),
        precision_fixed_k: mean(|d| d.precision_fixed_k),
        f1_fixed_k: mean(|d| d.f1_fixed_k),
    };
    Ok(MetricsReport {
        k,
        averaging: "macro".into(),
        precision_denominator: "considered".into(),
        scored: per_doc.len(),
        omitted,
        aggregate,
        per_doc,
    })
}

impl MetricsReport {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Json { line: e.line(), message: e.to_string() })
    }

    /// Human-readable summary table.
    pub fn table(&self) -> String {
        let a = &self.aggregate;
        format!(
            "metric        @{k:<3} value\n\
             precision     @{k:<3} {:.4}\n\
             recall        @{k:<3} {:.4}\n\
             f1            @{k:<3} {:.4}\n\
             precision(k)  @{k:<3} {:.4}\n\
             f1(k)         @{k:<3} {:.4}\n\
             scored docs        {}\n\
             omitted docs       {}\n\
             averaging          {} (precision denominator: {})\n",
            a.precision,
            a.recall,
            a.f1,
            a.precision_fixed_k,
            a.f1_fixed_k,
            self.scored,
            self.omitted,
            self.averaging,
            self.precision_denominator,
            k = self.k,
        )
    }
}
