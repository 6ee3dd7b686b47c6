use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::EmbeddingVector;
use crate::{Error, Result};

/// Source of text embeddings. Implementations must tolerate concurrent calls.
pub trait EmbeddingProvider: Send + Sync {
    /// Declared vector dimension.
    fn dim(&self) -> usize;

    /// One vector per input text, in order.
    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>>;
}

/// `sha256:<hex>` digest of the UTF-8 text, the hashed key form accepted by
/// embedding cache files.
pub fn text_key(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Exact-match lookup over a cache file of `<key>\t<v1 v2 ...>` lines, where
/// the key is either the literal text or its [`text_key`] digest.
#[derive(Debug, Clone)]
pub struct FileProvider {
    dim: usize,
    vectors: HashMap<String, EmbeddingVector>,
}

impl FileProvider {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut vectors = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.is_empty() {
                continue;
            }
            let (key, values) = line
                .rsplit_once('\t')
                .ok_or_else(|| Error::EmbeddingFormat { line: line_no, message: "expected <text>\\t<values>".into() })?;
            let values = values
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::EmbeddingFormat { line: line_no, message: e.to_string() })?;
            let vector = EmbeddingVector::new(values)
                .map_err(|e| Error::EmbeddingFormat { line: line_no, message: e.to_string() })?;
            match dim {
                None => dim = Some(vector.dim()),
                Some(d) if d != vector.dim() => {
                    return Err(Error::EmbeddingFormat {
                        line: line_no,
                        message: format!("dimension {} differs from {d}", vector.dim()),
                    })
                }
                Some(_) => {}
            }
            vectors.insert(key.to_string(), vector);
        }
        let dim = dim.ok_or_else(|| Error::EmbeddingFormat { line: 0, message: "no embeddings in file".into() })?;
        Ok(FileProvider { dim, vectors })
    }

    pub fn from_map(vectors: HashMap<String, EmbeddingVector>) -> Result<Self> {
        let mut dims = vectors.values().map(EmbeddingVector::dim);
        let dim = dims.next().unwrap_or(0);
        if let Some(other) = dims.find(|&d| d != dim) {
            return Err(Error::DimensionMismatch(dim, other));
        }
        Ok(FileProvider { dim, vectors })
    }

    pub fn lookup(&self, text: &str) -> Result<&EmbeddingVector> {
        self.vectors
            .get(text)
            .or_else(|| self.vectors.get(&text_key(text)))
            .ok_or_else(|| Error::MissingEmbedding(text.to_string()))
    }
}

impl EmbeddingProvider for FileProvider {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        texts.iter().map(|t| self.lookup(t).cloned()).collect()
    }
}

#[derive(Serialize)]
struct EmbedRequest<'a> {
    texts: &'a [String],
}

#[derive(Deserialize)]
struct EmbedResponse {
    vectors: Vec<Vec<f64>>,
}

/// Client for a service answering `POST {"texts": [...]}` with
/// `{"vectors": [[...], ...]}`. Plain `http://` only.
#[derive(Debug, Clone)]
pub struct HttpProvider {
    url: String,
    dim: usize,
}

impl HttpProvider {
    pub fn new(url: &str, dim: usize) -> Self {
        HttpProvider { url: url.to_string(), dim }
    }

    pub fn url(&self) -> &str {
        &self.url
    }
}

impl EmbeddingProvider for HttpProvider {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<EmbeddingVector>> {
        let provider_err = |msg: String| Error::Provider(format!("{}: {msg}", self.url));
        let body = serde_json::to_string(&EmbedRequest { texts }).map_err(|e| provider_err(e.to_string()))?;
        let mut resp = ureq::post(&self.url)
            .header("Content-Type", "application/json")
            .send(body)
            .map_err(|e| provider_err(e.to_string()))?;
        let text = resp.body_mut().read_to_string().map_err(|e| provider_err(e.to_string()))?;
        let parsed: EmbedResponse =
            serde_json::from_str(&text).map_err(|e| provider_err(format!("bad response: {e}")))?;
        if parsed.vectors.len() != texts.len() {
            return Err(provider_err(format!("expected {} vectors, got {}", texts.len(), parsed.vectors.len())));
        }
        parsed
            .vectors
            .into_iter()
            .map(|v| {
                if v.len() != self.dim {
                    return Err(provider_err(format!("vector of dimension {} (expected {})", v.len(), self.dim)));
                }
                EmbeddingVector::new(v).map_err(|e| provider_err(e.to_string()))
            })
            .collect()
    }
}
