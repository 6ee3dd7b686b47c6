//! Embedding-based ranking. Vectors come from an external provider: a
//! precomputed TSV cache or an HTTP service.

pub mod keybert;
mod provider;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use provider::{text_key, EmbeddingProvider, FileProvider, HttpProvider};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EmbeddingVector(Vec<f64>);

impl EmbeddingVector {
    /// Rejects non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("embedding contains non-finite values".into()));
        }
        Ok(EmbeddingVector(values))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, factor: f64) -> Self {
        EmbeddingVector(self.0.iter().map(|v| v * factor).collect())
    }
}

pub fn cosine(a: &EmbeddingVector, b: &EmbeddingVector) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let dot: f64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let na = a.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}
