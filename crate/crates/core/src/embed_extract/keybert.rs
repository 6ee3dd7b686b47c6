//! KeyBERT-style ranking: candidates ordered by cosine similarity between
//! their embedding and the document embedding. No MMR or Max Sum
//! diversification.

use super::{cosine, EmbeddingProvider};
use crate::candidates::generate;
use crate::corpus::Document;
use crate::extractor::{rank_and_truncate, Better, Ranked, ScoredKeyword};
use crate::normalize::Normalizer;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct KeyBertConfig {
    /// Longest candidate n-gram. Unigrams by default.
    pub max_n: usize,
}

impl Default for KeyBertConfig {
    fn default() -> Self {
        KeyBertConfig { max_n: 1 }
    }
}

/// Embeds the document text and every candidate surface form in one provider
/// call, then ranks by cosine similarity, higher first.
pub fn extract(
    doc: &Document,
    normalizer: &Normalizer,
    provider: &dyn EmbeddingProvider,
    cfg: &KeyBertConfig,
    k: usize,
) -> Result<Vec<ScoredKeyword>> {
    let tokens = normalizer.analyze(&doc.text);
    let candidates = generate(&tokens, cfg.max_n, false)?;
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let mut texts = Vec::with_capacity(candidates.len() + 1);
    texts.push(doc.text.clone());
    texts.extend(candidates.iter().map(|c| c.surface.clone()));
    let vectors = provider.embed(&texts)?;
    let (doc_vec, cand_vecs) = vectors.split_first().expect("provider returned no vectors");
    let ranked = candidates
        .into_iter()
        .zip(cand_vecs)
        .map(|(c, v)| {
            Ok(Ranked { score: cosine(v, doc_vec)?, first: c.first_tok_idx(), phrase: c.surface, norm: c.norm })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_and_truncate(ranked, Better::Higher, k))
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::corpus::Split;
    use crate::embed_extract::{EmbeddingVector, FileProvider};

    fn doc(text: &str) -> Document {
        Document::new("d", "xx", text, vec![], Split::Test)
    }

    fn provider(entries: &[(&str, &[f64])]) -> FileProvider {
        let map: HashMap<String, EmbeddingVector> = entries
            .iter()
            .map(|(k, v)| (k.to_string(), EmbeddingVector::new(v.to_vec()).unwrap()))
            .collect();
        FileProvider::from_map(map).unwrap()
    }

    #[test]
    fn constant_provider_keeps_text_order() {
        let text = "gamma alpha beta";
        let p = provider(&[(text, &[1.0, 1.0]), ("gamma", &[1.0, 1.0]), ("alpha", &[1.0, 1.0]), ("beta", &[1.0, 1.0])]);
        let out = extract(&doc(text), &Normalizer::identity("xx"), &p, &KeyBertConfig::default(), 10).unwrap();
        let phrases: Vec<&str> = out.iter().map(|k| k.phrase.as_str()).collect();
        assert_eq!(phrases, ["gamma", "alpha", "beta"]);
        assert!(out.iter().all(|k| (k.score - 1.0).abs() < 1e-12));
    }

    #[test]
    fn sorted_by_cosine_and_truncated() {
        let text = "low high mid";
        // document along x; cosines 0.1, 0.9, 0.5 by construction
        let unit = |c: f64| [c, (1.0 - c * c).sqrt()];
        let (l, h, m) = (unit(0.1), unit(0.9), unit(0.5));
        let p = provider(&[(text, &[1.0, 0.0]), ("low", &l), ("high", &h), ("mid", &m)]);
        let n = Normalizer::identity("xx");
        let out = extract(&doc(text), &n, &p, &KeyBertConfig::default(), 10).unwrap();
        let phrases: Vec<&str> = out.iter().map(|k| k.phrase.as_str()).collect();
        assert_eq!(phrases, ["high", "mid", "low"]);
        assert!((out[0].score - 0.9).abs() < 1e-12);
        let top2 = extract(&doc(text), &n, &p, &KeyBertConfig::default(), 2).unwrap();
        assert_eq!(top2.len(), 2);
    }

    #[test]
    fn provider_errors_propagate() {
        let p = provider(&[("only", &[1.0])]);
        let err = extract(&doc("some words"), &Normalizer::identity("xx"), &p, &KeyBertConfig::default(), 10).unwrap_err();
        assert!(err.to_string().contains("missing embedding"));
    }

    #[test]
    fn no_candidates() {
        let p = provider(&[("x", &[1.0])]);
        let out = extract(&doc(". ,"), &Normalizer::identity("xx"), &p, &KeyBertConfig::default(), 10).unwrap();
        assert!(out.is_empty());
    }
}
