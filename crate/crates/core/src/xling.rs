//! Cross-lingual experiment planning and analysis: training-language tuples,
//! regime manifests, the train x test score matrix, and clustering of
//! languages by their cross-lingual scores.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cluster::{agglomerate, members, Linkage};
use crate::corpus::{split_file_name, Split};
use crate::eval::MetricsReport;
use crate::{Error, Result};

pub const DEFAULT_LANGUAGES: [&str; 6] = ["en", "sl", "hr", "lv", "et", "ru"];

/// Ordered list of distinct language codes. The order fixes enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageSet(Vec<String>);

impl Default for LanguageSet {
    fn default() -> Self {
        LanguageSet(DEFAULT_LANGUAGES.iter().map(|s| s.to_string()).collect())
    }
}

impl LanguageSet {
    pub fn new<I, S>(langs: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let langs: Vec<String> = langs.into_iter().map(Into::into).collect();
        if langs.is_empty() {
            return Err(Error::InvalidArgument("language set is empty".into()));
        }
        let mut seen = HashSet::new();
        for l in &langs {
            if l.is_empty() {
                return Err(Error::InvalidArgument("empty language code".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate language '{l}'")));
            }
        }
        Ok(LanguageSet(langs))
    }

    /// Parses a comma-separated list such as `en,sl,hr`.
    pub fn parse(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn langs(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lang: &str) -> bool {
        self.0.iter().any(|l| l == lang)
    }
}

/// All `k`-subsets of `langs`, each in set order, listed lexicographically by
/// position in the set.
pub fn enumerate_tuples(langs: &LanguageSet, k: usize) -> Result<Vec<Vec<String>>> {
    if k == 0 || k > langs.len() {
        return Err(Error::InvalidArgument(format!("tuple size {k} outside 1..={}", langs.len())));
    }
    Ok(langs.0.iter().cloned().combinations(k).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Regime {
    /// Train and test on the same language.
    Mon,
    /// Train on every language except the test language.
    Loo,
    /// Train on every language.
    Mul,
    /// Any explicit training tuple.
    Custom,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Mon => "MON",
            Regime::Loo => "LOO",
            Regime::Mul => "MUL",
            Regime::Custom => "CUSTOM",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MON" => Ok(Regime::Mon),
            "LOO" => Ok(Regime::Loo),
            "MUL" => Ok(Regime::Mul),
            "CUSTOM" => Ok(Regime::Custom),
            _ => Err(Error::InvalidArgument(format!("unknown regime '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub name: String,
    pub regime: Regime,
    pub train_langs: Vec<String>,
    pub test_lang: String,
    pub train_files: Vec<PathBuf>,
    pub valid_files: Vec<PathBuf>,
    pub test_files: Vec<PathBuf>,
}

/// Training languages implied by a regime. `custom` must be given for
/// [`Regime::Custom`] and is ignored otherwise.
pub fn train_languages(
    regime: Regime,
    langs: &LanguageSet,
    test_lang: &str,
    custom: Option<&[String]>,
) -> Result<Vec<String>> {
    if !langs.contains(test_lang) {
        return Err(Error::InvalidArgument(format!("test language '{test_lang}' is not in the language set")));
    }
    Ok(match regime {
        Regime::Mon => vec![test_lang.to_string()],
        Regime::Loo => langs.0.iter().filter(|l| *l != test_lang).cloned().collect(),
        Regime::Mul => langs.0.clone(),
        Regime::Custom => {
            let custom = custom.ok_or_else(|| Error::InvalidArgument("custom regime needs train languages".into()))?;
            let set = LanguageSet::new(custom.iter().cloned())?;
            if let Some(l) = set.0.iter().find(|l| !langs.contains(l)) {
                return Err(Error::InvalidArgument(format!("train language '{l}' is not in the language set")));
            }
            // keep the set's order so equal tuples give identical manifests
            langs.0.iter().filter(|l| set.contains(l)).cloned().collect()
        }
    })
}

pub fn manifest_name(regime: Regime, train_langs: &[String], test_lang: &str) -> String {
    match regime {
        Regime::Custom => format!("CUSTOM-train={}-test={test_lang}", train_langs.join("+")),
        r => format!("{r}-test={test_lang}"),
    }
}

/// Builds a manifest whose files live under `data_root` as
/// `<lang>.<split>.jsonl`. Every referenced file must exist.
pub fn build_manifest(
    regime: Regime,
    langs: &LanguageSet,
    test_lang: &str,
    custom: Option<&[String]>,
    data_root: &Path,
) -> Result<ExperimentManifest> {
    let train_langs = train_languages(regime, langs, test_lang, custom)?;
    let files = |split: Split, ls: &[String]| -> Result<Vec<PathBuf>> {
        ls.iter()
            .map(|l| {
                let p = data_root.join(split_file_name(l, split));
                if p.is_file() {
                    Ok(p)
                } else {
                    Err(Error::MissingSplitFile(p))
                }
            })
            .collect()
    };
    Ok(ExperimentManifest {
        name: manifest_name(regime, &train_langs, test_lang),
        regime,
        train_files: files(Split::Train, &train_langs)?,
        valid_files: files(Split::Valid, &train_langs)?,
        test_files: files(Split::Test, &[test_lang.to_string()])?,
        test_lang: test_lang.to_string(),
        train_langs,
    })
}

/// Scores of every training tuple of one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub train_langs: Vec<String>,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveGroup {
    pub k: usize,
    pub best: f64,
    pub min: f64,
    pub max: f64,
    pub median: f64,
    pub points: Vec<CurvePoint>,
}

/// Groups results by the number of training languages. Groups are ordered by
/// size and keep input order within a group.
pub fn language_count_curve(results: &[CurvePoint], test_lang: Option<&str>) -> Result<Vec<CurveGroup>> {
    let mut groups: BTreeMap<usize, Vec<CurvePoint>> = BTreeMap::new();
    for r in results {
        if r.train_langs.is_empty() {
            return Err(Error::InvalidArgument("empty training tuple".into()));
        }
        if let Some(t) = test_lang {
            if r.train_langs.iter().any(|l| l == t) {
                return Err(Error::TestLanguageInTrain(r.train_langs.join("+")));
            }
        }
        if !r.f1.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite score for {}", r.train_langs.join("+"))));
        }
        groups.entry(r.train_langs.len()).or_default().push(r.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(k, points)| {
            let mut sorted: Vec<f64> = points.iter().map(|p| p.f1).collect();
            sorted.sort_by(f64::total_cmp);
            let m = sorted.len();
            let median = if m % 2 == 1 { sorted[m / 2] } else { (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0 };
            CurveGroup { k, best: sorted[m - 1], min: sorted[0], max: sorted[m - 1], median, points }
        })
        .collect())
}

/// Reads `train_langs,f1` CSV rows, languages joined by `+`.
pub fn read_curve_csv<R: Read>(reader: R) -> Result<Vec<CurvePoint>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::Format(e.to_string()))?;
        let line = i + 2;
        if row.len() != 2 {
            return Err(Error::Format(format!("line {line}: expected 2 columns, got {}", row.len())));
        }
        let train_langs = row[0].split('+').map(str::to_string).collect();
        let f1 = row[1].parse().map_err(|_| Error::Format(format!("line {line}: bad score '{}'", &row[1])))?;
        out.push(CurvePoint { train_langs, f1 });
    }
    Ok(out)
}

/// Row = training language, column = test language, entry = F1@k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffinityMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl AffinityMatrix {
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        for (row, r) in values.iter().enumerate() {
            if r.len() != labels.len() {
                return Err(Error::NotSquare { rows: values.len(), row, cols: r.len() });
            }
            if let Some(v) = r.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::InvalidArgument(format!("matrix entry {v} outside [0, 1]")));
            }
        }
        if values.len() != labels.len() {
            return Err(Error::NotSquare { rows: values.len(), row: values.len(), cols: labels.len() });
        }
        Ok(AffinityMatrix { labels, values })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// CSV with a header row of test languages and a leading column of train
    /// languages.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let fmt_err = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(std::iter::once("train\\test").chain(self.labels.iter().map(String::as_str)))
            .map_err(fmt_err)?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
            w.write_record(std::iter::once(label.as_str()).chain(cells.iter().map(String::as_str)))
                .map_err(fmt_err)?;
        }
        w.flush().map_err(|e| Error::io("<output>", e))
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers().map_err(|e| Error::Format(e.to_string()))?.clone();
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut values = Vec::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| Error::Format(e.to_string()))?;
            if row.get(0) != labels.get(i).map(String::as_str) {
                return Err(Error::Format(format!("row {} label does not match column order", i + 1)));
            }
            let r = row
                .iter()
                .skip(1)
                .map(|c| c.parse::<f64>().map_err(|_| Error::Format(format!("bad matrix entry '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            values.push(r);
        }
        Self::new(labels, values)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(file)
    }

    /// Symmetrized, max-normalized distance: `1 - (m_ij + m_ji) / (2 max)`,
    /// zero on the diagonal. An all-zero matrix gives distance 1 everywhere
    /// off the diagonal.
    pub fn distances(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let max = self.values.iter().flatten().cloned().fold(0.0, f64::max);
        let v = &self.values;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, max > 0.0) {
                        (true, _) => 0.0,
                        (false, true) => 1.0 - (v[i][j] + v[j][i]) / (2.0 * max),
                        (false, false) => 1.0,
                    })
                    .collect()
            })
            .collect()
    }
}

/// Builds the matrix from per-(train, test) reports, taking aggregate F1.
pub fn heatmap_matrix(langs: &LanguageSet, reports: &BTreeMap<(String, String), MetricsReport>) -> Result<AffinityMatrix> {
    let mut values = Vec::with_capacity(langs.len());
    for train in langs.langs() {
        let mut row = Vec::with_capacity(langs.len());
        for test in langs.langs() {
            let r = reports
                .get(&(train.clone(), test.clone()))
                .ok_or_else(|| Error::MissingReport { train: train.clone(), test: test.clone() })?;
            row.push(r.aggregate.f1);
        }
        values.push(row);
    }
    AffinityMatrix::new(langs.langs().to_vec(), values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DendrogramMerge {
    /// Leaf `i` is label `i`; merge `s` creates node `n + s`.
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub labels: Vec<String>,
    pub linkage: Linkage,
    pub distance: String,
    pub merges: Vec<DendrogramMerge>,
}

pub const DISTANCE_DESCRIPTION: &str = "1 - (m[i][j] + m[j][i]) / (2 * max(m))";

pub fn agglomerative_cluster(m: &AffinityMatrix, linkage: Linkage) -> Result<Dendrogram> {
    if m.len() < 2 {
        return Err(Error::InvalidArgument("clustering needs at least two labels".into()));
    }
    let merges = agglomerate(&m.distances(), linkage);
    let groups = members(&merges, m.len());
    let n = m.len();
    Ok(Dendrogram {
        labels: m.labels.clone(),
        linkage,
        distance: DISTANCE_DESCRIPTION.into(),
        merges: merges
            .iter()
            .enumerate()
            .map(|(s, mg)| DendrogramMerge {
                left: mg.left,
                right: mg.right,
                height: mg.height,
                members: groups[n + s].iter().map(|&i| m.labels[i].clone()).collect(),
            })
            .collect(),
    })
}
