#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;

pub const WORDS: &[&str] = &[
    "energy", "solar", "panels", "grid", "wind", "turbines", "storage", "battery", "policy", "prices", "market",
    "the", "and", "of", "in", "for", "with", "Solar", "Grid", "EU", "42", "2021", "running", "runs", "runner",
    "connection", "connections", "connected", "energies", "generalization",
];

pub const PUNCT: &[&str] = &[".", ",", ";", "!", "?"];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Random text of words, stopwords, numbers and punctuation.
pub fn text_strategy(max_tokens: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            8 => prop::sample::select(WORDS).prop_map(str::to_string),
            1 => prop::sample::select(PUNCT).prop_map(str::to_string),
        ],
        0..max_tokens,
    )
    .prop_map(|toks| toks.join(" "))
}

/// Seeded RNG for bulk sweeps outside proptest.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
