//! Tokenization and word normalization (stemming, lemma lookup, stopwords).

mod latvian;
mod porter;
mod tokenize;

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use latvian::{latvian_stem, MIN_STEM_LEN as LATVIAN_MIN_STEM_LEN};
pub use porter::porter_stem;
pub use tokenize::{tokenize, Token};

/// Languages with a bundled stopword list.
pub const BUNDLED_LANGUAGES: [&str; 6] = ["en", "sl", "hr", "lv", "et", "ru"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    PorterStem,
    LatvianStem,
    LemmaTable,
    Identity,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "porter_stem" | "porter" => Ok(Mode::PorterStem),
            "latvian_stem" | "latvian" => Ok(Mode::LatvianStem),
            "lemma_table" | "lemma" => Ok(Mode::LemmaTable),
            "identity" => Ok(Mode::Identity),
            other => Err(Error::InvalidArgument(format!("unknown normalizer mode '{other}'"))),
        }
    }
}

/// Surface form to lemma lookup, keyed by lowercased surface.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTable {
    map: HashMap<String, String>,
}

impl LemmaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, surface: &str, lemma: &str) {
        self.map.insert(surface.to_lowercase(), lemma.to_string());
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Reads a `surface<TAB>lemma` file. Blank lines are skipped.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut table = LemmaTable::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (surface, lemma) = line.split_once('\t').ok_or_else(|| {
                Error::Format(format!("lemma table line {}: expected surface<TAB>lemma", i + 1))
            })?;
            table.insert(surface.trim(), lemma.trim());
        }
        Ok(table)
    }

    pub fn get(&self, word: &str) -> Option<&str> {
        self.map.get(&word.to_lowercase()).map(String::as_str)
    }
}

/// Exact table lookup; a miss returns the word unchanged.
pub fn lemmatize(word: &str, table: &LemmaTable) -> String {
    table.get(word).map_or_else(|| word.to_string(), str::to_string)
}

/// Lowercased stopword set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Stopwords(
            words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        )
    }

    /// The list shipped with the crate, if the language has one.
    pub fn bundled(lang: &str) -> Option<Self> {
        let text = match lang {
            "en" => include_str!("../../data/stopwords/stopwords.en.txt"),
            "sl" => include_str!("../../data/stopwords/stopwords.sl.txt"),
            "hr" => include_str!("../../data/stopwords/stopwords.hr.txt"),
            "lv" => include_str!("../../data/stopwords/stopwords.lv.txt"),
            "et" => include_str!("../../data/stopwords/stopwords.et.txt"),
            "ru" => include_str!("../../data/stopwords/stopwords.ru.txt"),
            _ => return None,
        };
        Some(Self::from_words(text.lines()))
    }

    /// Reads `stopwords.<lang>.txt` (one word per line) from `dir`.
    pub fn load_dir(dir: impl AsRef<Path>, lang: &str) -> Result<Self> {
        let path = dir.as_ref().join(format!("stopwords.{lang}.txt"));
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Self::from_words(text.lines()))
    }

    /// Membership is exact on the lowercased word.
    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Language-specific word normalization. Immutable once built.
#[derive(Debug, Clone)]
pub struct Normalizer {
    lang: String,
    mode: Mode,
    lemmas: Option<LemmaTable>,
    stopwords: Stopwords,
}

/// Stemmers are applied until the word stops changing so that normalizing a
/// normalized word is a no-op; Porter in particular is not idempotent
/// (`agreed` → `agre` → `agr`). Both stemmers only ever shorten or keep the
/// word, so this terminates quickly.
const MAX_FIXPOINT_ROUNDS: usize = 16;

impl Normalizer {
    pub fn new(lang: &str, mode: Mode, lemmas: Option<LemmaTable>, stopwords: Stopwords) -> Result<Self> {
        if mode == Mode::LemmaTable && lemmas.is_none() {
            return Err(Error::InvalidArgument("lemma_table mode requires a loaded lemma table".into()));
        }
        Ok(Normalizer { lang: lang.to_string(), mode, lemmas, stopwords })
    }

    /// Default normalizer for a language: Porter for English, the Latvian
    /// stemmer for Latvian, the lemma table when one is given, identity
    /// otherwise. Languages without a bundled stopword list get none.
    pub fn for_language(lang: &str, lemmas: Option<LemmaTable>) -> Self {
        let stopwords = Stopwords::bundled(lang).unwrap_or_else(|| {
            log::warn!("no stopword list for language '{lang}', using an empty list");
            Stopwords::empty()
        });
        let mode = match (lang, &lemmas) {
            ("en", None) => Mode::PorterStem,
            ("lv", None) => Mode::LatvianStem,
            (_, Some(_)) => Mode::LemmaTable,
            (_, None) => {
                log::warn!("no stemmer or lemma table for language '{lang}', normalizing by lowercasing only");
                Mode::Identity
            }
        };
        Normalizer { lang: lang.to_string(), mode, lemmas, stopwords }
    }

    /// Lowercase-only normalization with no stopwords.
    pub fn identity(lang: &str) -> Self {
        Normalizer { lang: lang.to_string(), mode: Mode::Identity, lemmas: None, stopwords: Stopwords::empty() }
    }

    pub fn with_stopwords(mut self, stopwords: Stopwords) -> Self {
        self.stopwords = stopwords;
        self
    }

    pub fn lang(&self) -> &str {
        &self.lang
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(&word.to_lowercase())
    }

    /// Normalized form of a single word.
    pub fn normalize_word(&self, word: &str) -> String {
        let lower = word.to_lowercase();
        match self.mode {
            Mode::Identity => lower,
            Mode::PorterStem => fixpoint(lower, porter_stem),
            Mode::LatvianStem => fixpoint(lower, latvian_stem),
            Mode::LemmaTable => self.lemma_chain(lower),
        }
    }

    /// Follows lemma links until a word maps to itself or is missing from the
    /// table. On a cycle the smallest member of the cycle is the fixed point.
    fn lemma_chain(&self, word: String) -> String {
        let Some(table) = &self.lemmas else { return word };
        let mut seen = vec![word];
        loop {
            let last = seen.last().unwrap();
            let next = lemmatize(last, table).to_lowercase();
            if &next == last {
                return next;
            }
            if let Some(pos) = seen.iter().position(|w| *w == next) {
                return seen[pos..].iter().min().unwrap().clone();
            }
            seen.push(next);
        }
    }

    /// Tokenizes text and fills in normalized forms and stopword flags.
    pub fn analyze(&self, text: &str) -> Vec<Token> {
        let mut tokens = tokenize(text);
        for t in &mut tokens {
            if t.is_alphanumeric {
                t.is_stopword = self.stopwords.contains(&t.norm);
                t.norm = self.normalize_word(&t.norm);
            }
        }
        tokens
    }

    /// Normalized token sequence of a phrase, punctuation included.
    pub fn phrase_tokens(&self, phrase: &str) -> Vec<String> {
        self.analyze(phrase).into_iter().map(|t| t.norm).collect()
    }

    /// Normalized tokens joined by single spaces.
    pub fn normalize_phrase(&self, phrase: &str) -> String {
        self.phrase_tokens(phrase).join(" ")
    }
}

fn fixpoint(mut word: String, f: fn(&str) -> String) -> String {
    for _ in 0..MAX_FIXPOINT_ROUNDS {
        let next = f(&word);
        if next == word {
            break;
        }
        word = next;
    }
    word
}

/// Position of the first occurrence of `needle` as a contiguous run in `haystack`.
pub fn find_subsequence<T: PartialEq>(haystack: &[T], needle: &[T]) -> Option<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return None;
    }
    haystack.windows(needle.len()).position(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_lookup() {
        let table = LemmaTable::parse("avtomobili\tavtomobil\nHiše\thiša\n").unwrap();
        assert_eq!(lemmatize("avtomobili", &table), "avtomobil");
        assert_eq!(lemmatize("xyzzy", &table), "xyzzy");
        assert_eq!(lemmatize("HIŠE", &table), "hiša");
    }

    #[test]
    fn lemma_table_requires_table() {
        assert!(Normalizer::new("sl", Mode::LemmaTable, None, Stopwords::empty()).is_err());
        assert!(Normalizer::new("sl", Mode::LemmaTable, Some(LemmaTable::new()), Stopwords::empty()).is_ok());
    }

    #[test]
    fn bad_lemma_line() {
        assert!(LemmaTable::parse("no tab here").is_err());
    }

    #[test]
    fn lemma_cycles_are_idempotent() {
        let table = LemmaTable::parse("a\tb\nb\tc\nc\tb\n").unwrap();
        let n = Normalizer::new("xx", Mode::LemmaTable, Some(table), Stopwords::empty()).unwrap();
        let once = n.normalize_word("a");
        assert_eq!(once, "b");
        assert_eq!(n.normalize_word(&once), once);
        assert_eq!(n.normalize_word("c"), "b");
    }

    #[test]
    fn porter_is_forced_idempotent() {
        let n = Normalizer::for_language("en", None);
        assert_eq!(porter_stem("agreed"), "agre");
        let once = n.normalize_word("agreed");
        assert_eq!(n.normalize_word(&once), once);
    }

    #[test]
    fn bundled_stopwords_exist() {
        for lang in BUNDLED_LANGUAGES {
            let sw = Stopwords::bundled(lang).unwrap();
            assert!(!sw.is_empty(), "{lang}");
        }
        assert!(Stopwords::bundled("en").unwrap().contains("the"));
        assert!(Stopwords::bundled("xx").is_none());
    }

    #[test]
    fn unknown_language_defaults_to_identity() {
        let n = Normalizer::for_language("pt", None);
        assert_eq!(n.mode(), Mode::Identity);
        assert!(n.stopwords().is_empty());
    }

    #[test]
    fn analyze_marks_stopwords_and_stems() {
        let n = Normalizer::for_language("en", None);
        let toks = n.analyze("The Cars");
        assert!(toks[0].is_stopword);
        assert_eq!(toks[1].norm, "car");
        assert_eq!(toks[1].surface, "Cars");
    }

    #[test]
    fn subsequence() {
        assert_eq!(find_subsequence(&[1, 2, 3, 4], &[3, 4]), Some(2));
        assert_eq!(find_subsequence(&[1, 2, 3], &[1, 3]), None);
        assert_eq!(find_subsequence::<i32>(&[1], &[]), None);
    }
}
