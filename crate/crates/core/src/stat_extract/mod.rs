//! Statistical extractors.

pub mod kpminer;
pub mod yake;
