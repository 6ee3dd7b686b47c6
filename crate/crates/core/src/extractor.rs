//! Extractor output type, shared ranking rules, and method dispatch.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::embed_extract::{keybert, EmbeddingProvider};
use crate::graph_extract::{multipartite, rakun, textrank, PosTags};
use crate::normalize::Normalizer;
use crate::stat_extract::{kpminer, yake};
use crate::{Error, Result};

/// Which direction of the score is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Better {
    Lower,
    Higher,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredKeyword {
    pub phrase: String,
    pub score: f64,
    pub better: Better,
}

/// A scored phrase before ranking.
#[derive(Debug, Clone)]
pub(crate) struct Ranked {
    pub phrase: String,
    pub norm: String,
    pub score: f64,
    /// Token index of the first occurrence.
    pub first: usize,
}

/// Best-first order: score, then earlier first occurrence, then normalized form.
pub(crate) fn rank_order(a: &Ranked, b: &Ranked, better: Better) -> Ordering {
    let by_score = match better {
        Better::Lower => a.score.total_cmp(&b.score),
        Better::Higher => b.score.total_cmp(&a.score),
    };
    by_score.then(a.first.cmp(&b.first)).then_with(|| a.norm.cmp(&b.norm))
}

pub(crate) fn sort_ranked(items: &mut [Ranked], better: Better) {
    items.sort_by(|a, b| rank_order(a, b, better));
}

pub(crate) fn finish(items: impl IntoIterator<Item = Ranked>, better: Better, k: usize) -> Vec<ScoredKeyword> {
    items
        .into_iter()
        .take(k)
        .map(|r| ScoredKeyword { phrase: r.phrase, score: r.score, better })
        .collect()
}

/// Sorts, truncates to `k` and converts.
pub(crate) fn rank_and_truncate(mut items: Vec<Ranked>, better: Better, k: usize) -> Vec<ScoredKeyword> {
    sort_ranked(&mut items, better);
    finish(items, better, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Yake,
    KpMiner,
    TextRank,
    MultipartiteRank,
    Rakun,
    KeyBert,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Yake, Method::KpMiner, Method::TextRank, Method::MultipartiteRank, Method::Rakun, Method::KeyBert];

    pub fn name(self) -> &'static str {
        match self {
            Method::Yake => "yake",
            Method::KpMiner => "kpminer",
            Method::TextRank => "textrank",
            Method::MultipartiteRank => "multipartiterank",
            Method::Rakun => "rakun",
            Method::KeyBert => "keybert",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect();
        match key.as_str() {
            "yake" => Ok(Method::Yake),
            "kpminer" => Ok(Method::KpMiner),
            "textrank" => Ok(Method::TextRank),
            "multipartiterank" | "multipartite" => Ok(Method::MultipartiteRank),
            "rakun" => Ok(Method::Rakun),
            "keybert" => Ok(Method::KeyBert),
            _ => Err(Error::UnknownExtractor(s.to_string())),
        }
    }
}

/// Hyperparameters of every method; only the selected one is used.
#[derive(Debug, Clone, Default, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct ExtractorConfig {
    pub yake: yake::YakeConfig,
    pub kpminer: kpminer::KpMinerConfig,
    pub textrank: textrank::TextRankConfig,
    pub multipartite: multipartite::MultipartiteConfig,
    pub rakun: rakun::RakunConfig,
    pub keybert: keybert::KeyBertConfig,
}

/// A configured extractor. Stateless per call and safe to share across threads.
#[derive(Clone)]
pub struct Extractor {
    method: Method,
    config: ExtractorConfig,
    provider: Option<Arc<dyn EmbeddingProvider>>,
    pos: Option<Arc<PosTags>>,
}

impl fmt::Debug for Extractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Extractor")
            .field("method", &self.method)
            .field("config", &self.config)
            .field("provider", &self.provider.is_some())
            .field("pos", &self.pos.is_some())
            .finish()
    }
}

impl Extractor {
    pub fn new(method: Method, config: ExtractorConfig) -> Self {
        Extractor { method, config, provider: None, pos: None }
    }

    pub fn with_provider(mut self, provider: Arc<dyn EmbeddingProvider>) -> Self {
        self.provider = Some(provider);
        self
    }

    pub fn with_pos_tags(mut self, pos: Arc<PosTags>) -> Self {
        self.pos = Some(pos);
        self
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Fails early when the method needs resources that were not supplied.
    pub fn validate(&self) -> Result<()> {
        if self.method == Method::KeyBert && self.provider.is_none() {
            return Err(Error::ProviderRequired(self.method.name().into()));
        }
        Ok(())
    }

    pub fn extract(&self, doc: &Document, normalizer: &Normalizer, k: usize) -> Result<Vec<ScoredKeyword>> {
        let c = &self.config;
        Ok(match self.method {
            Method::Yake => yake::extract(doc, normalizer, &c.yake, k),
            Method::KpMiner => kpminer::extract(doc, normalizer, &c.kpminer, k),
            Method::TextRank => textrank::extract(doc, normalizer, &c.textrank, k),
            Method::MultipartiteRank => {
                let tags = self.pos.as_ref().and_then(|p| p.get(&doc.id));
                multipartite::extract(doc, normalizer, &c.multipartite, tags, k)
            }
            Method::Rakun => rakun::extract(doc, normalizer, &c.rakun, k),
            Method::KeyBert => {
                let provider = self
                    .provider
                    .as_deref()
                    .ok_or_else(|| Error::ProviderRequired(self.method.name().into()))?;
                keybert::extract(doc, normalizer, provider, &c.keybert, k)?
            }
        })
    }
}
