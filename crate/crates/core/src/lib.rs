//! Multilingual keyword extraction and evaluation.
//!
//! The crate bundles six unsupervised extractors (YAKE, KPMiner, TextRank,
//! MultipartiteRank, RaKUn and an embedding ranker), the stem/lemma based
//! F1@k evaluation protocol, and planning/analysis helpers for cross-lingual
//! training regimes.
//!
//! ```
//! use polykw::{normalize::Normalizer, corpus::{Document, Split}, stat_extract::yake};
//!
//! let normalizer = Normalizer::for_language("en", None);
//! let doc = Document::new("d1", "en", "Rust compilers compile Rust code.", vec![], Split::Test);
//! let keywords = yake::extract(&doc, &normalizer, &yake::YakeConfig::default(), 10);
//! assert!(!keywords.is_empty());
//! ```

pub mod candidates;
pub mod cli;
pub mod cluster;
pub mod corpus;
pub mod embed_extract;
mod error;
pub mod eval;
pub mod extractor;
pub mod graph_extract;
pub mod normalize;
pub mod stat_extract;
pub mod xling;

pub use error::{Error, Result};
pub use extractor::{Better, Method, ScoredKeyword};
