//! Graph-based extractors and their kernels.

mod centrality;
mod graph;
mod levenshtein;
pub mod multipartite;
mod pagerank;
pub mod rakun;
pub mod textrank;

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Deserialize;

use crate::{Error, Result};

pub use centrality::load_centrality;
pub use graph::WordGraph;
pub use levenshtein::{levenshtein, similarity};
pub use pagerank::{pagerank, PageRankConfig};

/// Per-document POS tags aligned with the tokenizer output, read from a
/// `{"id": str, "pos": [str, ...]}` JSONL sidecar.
#[derive(Debug, Clone, Default)]
pub struct PosTags(HashMap<String, Vec<String>>);

#[derive(Deserialize)]
struct PosLine {
    id: String,
    pos: Vec<String>,
}

impl PosTags {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: &str, tags: Vec<String>) {
        self.0.insert(id.to_string(), tags);
    }

    pub fn get(&self, id: &str) -> Option<&[String]> {
        self.0.get(id).map(Vec::as_slice)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let mut tags = PosTags::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: PosLine =
                serde_json::from_str(&line).map_err(|e| Error::Json { line: i + 1, message: e.to_string() })?;
            if tags.0.insert(parsed.id.clone(), parsed.pos).is_some() {
                return Err(Error::DuplicateId(parsed.id));
            }
        }
        Ok(tags)
    }
}

/// Nouns and adjectives in Universal or Penn tag sets.
pub fn is_noun_or_adjective(tag: &str) -> bool {
    matches!(tag, "NOUN" | "PROPN" | "ADJ") || tag.starts_with("NN") || tag.starts_with("JJ")
}
