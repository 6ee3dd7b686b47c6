//! Documents, JSONL ingestion and per-split corpus statistics.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::normalize::{find_subsequence, Normalizer};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Valid,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Valid, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Valid => "valid",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "valid" | "validation" | "dev" => Ok(Split::Valid),
            "test" => Ok(Split::Test),
            other => Err(Error::InvalidArgument(format!("unknown split '{other}'"))),
        }
    }
}

/// A news article with its gold keyphrases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub lang: String,
    /// Title (when present) and body, separated by a newline.
    pub text: String,
    pub keywords: Vec<String>,
    pub split: Split,
}

impl Document {
    pub fn new(id: &str, lang: &str, text: &str, keywords: Vec<String>, split: Split) -> Self {
        Document { id: id.to_string(), lang: lang.to_string(), text: text.to_string(), keywords, split }
    }

    /// Whether the document has any text to extract from.
    pub fn has_text(&self) -> bool {
        !self.text.trim().is_empty()
    }
}

/// `<lang>.<split>.jsonl`
pub fn split_file_name(lang: &str, split: Split) -> String {
    format!("{lang}.{split}.jsonl")
}

/// Recovers `(lang, split)` from a path following the `<lang>.<split>.jsonl` convention.
pub fn parse_split_file_name(path: &Path) -> Option<(String, Split)> {
    let name = path.file_name()?.to_str()?;
    let stem = name.strip_suffix(".jsonl")?;
    let (lang, split) = stem.rsplit_once('.')?;
    Some((lang.to_string(), split.parse().ok()?))
}

fn string_field(obj: &serde_json::Map<String, Value>, field: &'static str, line: usize) -> Result<String> {
    match obj.get(field) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(Error::Json { line, message: format!("field '{field}' must be a string") }),
        None => Err(Error::MissingField { field, line }),
    }
}

fn parse_line(raw: &str, line: usize, lang: &str, split: Split) -> Result<Document> {
    let value: Value = serde_json::from_str(raw).map_err(|e| Error::Json { line, message: e.to_string() })?;
    let Value::Object(obj) = value else {
        return Err(Error::Json { line, message: "expected a JSON object".into() });
    };
    let id = string_field(&obj, "id", line)?;
    if id.is_empty() {
        return Err(Error::Json { line, message: "empty id".into() });
    }
    let body = string_field(&obj, "text", line)?;
    let keywords = match obj.get("keywords") {
        Some(Value::Array(items)) => items
            .iter()
            .map(|k| match k {
                Value::String(s) => Ok(s.clone()),
                _ => Err(Error::Json { line, message: "keywords must be strings".into() }),
            })
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(Error::Json { line, message: "field 'keywords' must be an array".into() }),
        None => return Err(Error::MissingField { field: "keywords", line }),
    };
    let text = match obj.get("title") {
        Some(Value::String(title)) if !title.is_empty() => format!("{title}\n{body}"),
        Some(Value::String(_)) | Some(Value::Null) | None => body,
        Some(_) => return Err(Error::Json { line, message: "field 'title' must be a string".into() }),
    };
    Ok(Document { id, lang: lang.to_string(), text, keywords, split })
}

/// Reads documents from a JSONL reader, one object per line, in order.
/// Blank lines are ignored. Ids must be unique.
pub fn read_jsonl<R: BufRead>(reader: R, lang: &str, split: Split) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Json { line: line_no, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_line(&line, line_no, lang, split)?;
        if !seen.insert(doc.id.clone()) {
            return Err(Error::DuplicateId(doc.id));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn load_jsonl(path: impl AsRef<Path>, lang: &str, split: Split) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_jsonl(BufReader::new(file), lang, split)
}

#[derive(Serialize)]
struct DocumentLine<'a> {
    id: &'a str,
    text: &'a str,
    keywords: &'a [String],
}

/// Writes documents in the ingestion format. Titles are already folded into
/// `text`, so reloading the output yields the same documents.
pub fn write_jsonl<W: Write>(mut out: W, docs: &[Document]) -> Result<()> {
    for d in docs {
        let line = serde_json::to_string(&DocumentLine { id: &d.id, text: &d.text, keywords: &d.keywords })
            .map_err(|e| Error::Format(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::io("<output>", e))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub size: usize,
    pub kw_per_doc: f64,
    pub kw_present: f64,
}

/// Whether a keyphrase occurs, after normalization, as a contiguous token run
/// of the normalized document.
pub fn is_present(doc_norms: &[String], phrase: &str, normalizer: &Normalizer) -> bool {
    let needle = normalizer.phrase_tokens(phrase);
    find_subsequence(doc_norms, &needle).is_some()
}

/// Size, mean gold keywords per document and the fraction of all gold keyword
/// instances present in their document. Documents without keywords add to
/// neither side of the ratio.
pub fn compute_stats(docs: &[Document], normalizer: &Normalizer) -> Result<CorpusStats> {
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut total = 0usize;
    let mut present = 0usize;
    for doc in docs {
        if doc.keywords.is_empty() {
            continue;
        }
        let norms: Vec<String> = normalizer.analyze(&doc.text).into_iter().map(|t| t.norm).collect();
        total += doc.keywords.len();
        present += doc.keywords.iter().filter(|k| is_present(&norms, k, normalizer)).count();
    }
    Ok(CorpusStats {
        size: docs.len(),
        kw_per_doc: total as f64 / docs.len() as f64,
        kw_present: if total == 0 { 0.0 } else { present as f64 / total as f64 },
    })
}
