//! Command-line interface. `main.rs` only parses arguments and maps the
//! result of [`run`] to an exit code.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::Linkage;
use crate::corpus::{compute_stats, load_jsonl, parse_split_file_name, Split};
use crate::embed_extract::{EmbeddingProvider, FileProvider, HttpProvider};
use crate::eval::{evaluate_run, load_predictions, write_predictions, MetricsReport, Prediction, DEFAULT_K};
use crate::extractor::{Extractor, ExtractorConfig, Method};
use crate::graph_extract::PosTags;
use crate::normalize::{LemmaTable, Mode, Normalizer, Stopwords};
use crate::xling::{self, AffinityMatrix, LanguageSet, Regime};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "polykw", version, about = "Multilingual keyword extraction and evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Extract keywords for every document of a corpus file.
    Extract(ExtractArgs),
    /// Score a predictions file against a corpus.
    Eval(EvalArgs),
    /// Corpus size, keywords per document and present-keyword ratio.
    Stats(StatsArgs),
    /// Write a training-regime manifest.
    Plan(PlanArgs),
    /// Assemble the train x test F1 matrix from metrics reports.
    Matrix(MatrixArgs),
    /// Cluster languages by their cross-lingual scores.
    Cluster(ClusterArgs),
    /// Group scores by number of training languages.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Corpus JSONL; language and split default to those in a
    /// `<lang>.<split>.jsonl` file name.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub lang: Option<String>,
    #[arg(long)]
    pub split: Option<Split>,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// porter, latvian, lemma or identity. Defaults by language.
    #[arg(long)]
    pub normalizer: Option<Mode>,
    /// Tab-separated `surface<TAB>lemma` file.
    #[arg(long)]
    pub lemmas: Option<PathBuf>,
    /// Directory of `stopwords.<lang>.txt` files replacing the bundled lists.
    #[arg(long)]
    pub stopwords_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub method: String,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub norm: NormArgs,
    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,
    /// Output predictions JSONL; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// JSON file with hyperparameters, keyed by method name.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// POS tag sidecar JSONL (`{"id", "pos"}`) for MultipartiteRank.
    #[arg(long)]
    pub pos: Option<PathBuf>,
    /// Precomputed embeddings, `text<TAB>v1 v2 ...` per line.
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long, requires = "provider_dim")]
    pub provider_url: Option<String>,
    #[arg(long, requires = "provider_url")]
    pub provider_dim: Option<usize>,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

/// Per-method overrides on top of defaults and `--config`.
#[derive(Debug, Default, Args)]
pub struct HyperArgs {
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub yake_window: Option<usize>,
    #[arg(long)]
    pub yake_dedup: Option<f64>,
    #[arg(long)]
    pub lasf: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub kp_alpha: Option<f64>,
    #[arg(long)]
    pub kp_sigma: Option<f64>,
    #[arg(long)]
    pub textrank_window: Option<usize>,
    #[arg(long)]
    pub textrank_ratio: Option<f64>,
    #[arg(long)]
    pub topic_threshold: Option<f64>,
    #[arg(long)]
    pub topic_alpha: Option<f64>,
    #[arg(long)]
    pub damping: Option<f64>,
    #[arg(long)]
    pub rakun_distance: Option<usize>,
    #[arg(long)]
    pub rakun_bigram_count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Predictions JSONL.
    #[arg(long)]
    pub pred: PathBuf,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub norm: NormArgs,
    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,
    /// Metrics report JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub norm: NormArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub regime: Regime,
    #[arg(long)]
    pub test: String,
    /// Comma-separated training languages for the custom regime.
    #[arg(long)]
    pub train: Option<String>,
    /// Comma-separated language set, in enumeration order.
    #[arg(long, default_value = "en,sl,hr,lv,et,ru")]
    pub langs: String,
    #[arg(long, default_value = ".")]
    pub data_root: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Directory of `<train>.<test>.metrics.json` reports.
    #[arg(long)]
    pub reports: PathBuf,
    #[arg(long, default_value = "en,sl,hr,lv,et,ru")]
    pub langs: String,
    /// Output CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Matrix CSV as written by `matrix`.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value_t = Linkage::Average)]
    pub linkage: Linkage,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// CSV with header `train_langs,f1`, languages joined by `+`.
    #[arg(long)]
    pub results: PathBuf,
    /// Test language; rows training on it are rejected.
    #[arg(long)]
    pub test: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract(a) => cmd_extract(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Plan(a) => cmd_plan(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Cluster(a) => cmd_cluster(a),
        Command::Curve(a) => cmd_curve(a),
    }
}

pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(e) if e.is_usage() => EXIT_USAGE,
        Err(_) => EXIT_DATA,
    }
}

fn corpus_identity(c: &CorpusArgs) -> Result<(String, Split)> {
    let from_name = parse_split_file_name(&c.input);
    let lang = c
        .lang
        .clone()
        .or_else(|| from_name.as_ref().map(|(l, _)| l.clone()))
        .ok_or_else(|| Error::InvalidArgument("--lang is required when the file name has no language".into()))?;
    let split = c.split.or(from_name.map(|(_, s)| s)).unwrap_or(Split::Test);
    Ok((lang, split))
}

pub fn build_normalizer(lang: &str, a: &NormArgs) -> Result<Normalizer> {
    let lemmas = a.lemmas.as_ref().map(LemmaTable::load).transpose()?;
    let base = match a.normalizer {
        Some(mode) => {
            let stopwords = Stopwords::bundled(lang).unwrap_or_else(Stopwords::empty);
            Normalizer::new(lang, mode, lemmas, stopwords)?
        }
        None => Normalizer::for_language(lang, lemmas),
    };
    Ok(match &a.stopwords_dir {
        Some(dir) => base.with_stopwords(Stopwords::load_dir(dir, lang)?),
        None => base,
    })
}

fn build_config(a: &ExtractArgs) -> Result<ExtractorConfig> {
    let mut c: ExtractorConfig = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            serde_json::from_str(&text).map_err(|e| Error::Json { line: e.line(), message: e.to_string() })?
        }
        None => ExtractorConfig::default(),
    };
    let h = &a.hyper;
    if let Some(v) = h.max_n {
        c.yake.max_n = v;
        c.keybert.max_n = v;
    }
    macro_rules! set {
        ($($src:ident => $dst:expr),* $(,)?) => { $(if let Some(v) = h.$src { $dst = v; })* };
    }
    set! {
        yake_window => c.yake.window,
        yake_dedup => c.yake.dedup_threshold,
        lasf => c.kpminer.lasf,
        cutoff => c.kpminer.cutoff,
        kp_alpha => c.kpminer.alpha,
        kp_sigma => c.kpminer.sigma,
        textrank_window => c.textrank.window,
        textrank_ratio => c.textrank.keep_ratio,
        topic_threshold => c.multipartite.sim_threshold,
        topic_alpha => c.multipartite.alpha,
        rakun_distance => c.rakun.distance_threshold,
        rakun_bigram_count => c.rakun.bigram_count_threshold,
    }
    if let Some(d) = h.damping {
        c.textrank.pagerank.damping = d;
        c.multipartite.pagerank.damping = d;
    }
    Ok(c)
}

fn cmd_extract(a: ExtractArgs) -> Result<()> {
    let method: Method = a.method.parse()?;
    let has_provider = a.embeddings.is_some() || a.provider_url.is_some();
    if method == Method::KeyBert && !has_provider {
        return Err(Error::ProviderRequired(format!("{method} (pass --embeddings or --provider-url/--provider-dim)")));
    }
    if a.jobs == 0 {
        return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
    }
    let mut extractor = Extractor::new(method, build_config(&a)?);
    if let Some(p) = &a.embeddings {
        extractor = extractor.with_provider(Arc::new(FileProvider::load(p)?) as Arc<dyn EmbeddingProvider>);
    } else if let (Some(url), Some(dim)) = (&a.provider_url, a.provider_dim) {
        extractor = extractor.with_provider(Arc::new(HttpProvider::new(url, dim)));
    }
    if let Some(p) = &a.pos {
        extractor = extractor.with_pos_tags(Arc::new(PosTags::load(p)?));
    }
    extractor.validate()?;

    let (lang, split) = corpus_identity(&a.corpus)?;
    let normalizer = build_normalizer(&lang, &a.norm)?;
    let docs = load_jsonl(&a.corpus.input, &lang, split)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let predictions: Vec<Prediction> = pool.install(|| {
        docs.par_iter()
            .map(|d| extractor.extract(d, &normalizer, a.k).map(|kw| Prediction::from_scored(&d.id, &kw)))
            .collect::<Result<_>>()
    })?;
    log::info!("extracted keywords for {} documents with {method}", predictions.len());
    let mut buf = Vec::new();
    write_predictions(&mut buf, &predictions)?;
    emit(a.out.as_deref(), &buf)
}

fn cmd_eval(a: EvalArgs) -> Result<()> {
    let (lang, split) = corpus_identity(&a.corpus)?;
    let normalizer = build_normalizer(&lang, &a.norm)?;
    let docs = load_jsonl(&a.corpus.input, &lang, split)?;
    let predictions = load_predictions(&a.pred)?;
    let report = evaluate_run(&predictions, &docs, &normalizer, a.k)?;
    if let Some(out) = &a.out {
        emit(Some(out), &to_json(&report)?)?;
    }
    print!("{}", report.table());
    Ok(())
}

fn cmd_stats(a: StatsArgs) -> Result<()> {
    let (lang, split) = corpus_identity(&a.corpus)?;
    let normalizer = build_normalizer(&lang, &a.norm)?;
    let docs = load_jsonl(&a.corpus.input, &lang, split)?;
    emit(a.out.as_deref(), &to_json(&compute_stats(&docs, &normalizer)?)?)
}

fn cmd_plan(a: PlanArgs) -> Result<()> {
    let langs = LanguageSet::parse(&a.langs)?;
    let custom = a.train.as_deref().map(|t| LanguageSet::parse(t).map(|s| s.langs().to_vec())).transpose()?;
    let manifest = xling::build_manifest(a.regime, &langs, &a.test, custom.as_deref(), &a.data_root)?;
    emit(a.out.as_deref(), &to_json(&manifest)?)
}

/// Name of the report file for one train/test pair inside a reports directory.
pub fn report_file_name(train: &str, test: &str) -> String {
    format!("{train}.{test}.metrics.json")
}

fn cmd_matrix(a: MatrixArgs) -> Result<()> {
    let langs = LanguageSet::parse(&a.langs)?;
    let mut reports = BTreeMap::new();
    for train in langs.langs() {
        for test in langs.langs() {
            let p = a.reports.join(report_file_name(train, test));
            if !p.is_file() {
                return Err(Error::MissingReport { train: train.clone(), test: test.clone() });
            }
            reports.insert((train.clone(), test.clone()), MetricsReport::load(&p)?);
        }
    }
    let m = xling::heatmap_matrix(&langs, &reports)?;
    let mut buf = Vec::new();
    m.write_csv(&mut buf)?;
    emit(a.out.as_deref(), &buf)
}

fn cmd_cluster(a: ClusterArgs) -> Result<()> {
    let m = AffinityMatrix::load_csv(&a.matrix)?;
    emit(a.out.as_deref(), &to_json(&xling::agglomerative_cluster(&m, a.linkage)?)?)
}

fn cmd_curve(a: CurveArgs) -> Result<()> {
    let file = fs::File::open(&a.results).map_err(|e| Error::io(&a.results, e))?;
    let points = xling::read_curve_csv(file)?;
    emit(a.out.as_deref(), &to_json(&xling::language_count_curve(&points, a.test.as_deref())?)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(v).map_err(|e| Error::Format(e.to_string()))?;
    buf.push(b'\n');
    Ok(buf)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => io::stdout().write_all(bytes).map_err(|e| Error::io("<stdout>", e)),
    }
}
