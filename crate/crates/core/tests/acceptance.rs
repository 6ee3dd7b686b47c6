//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use polykw::cluster::Linkage;
use polykw::corpus::{compute_stats, load_jsonl, Document, Split};
use polykw::eval::score_at_k;
use polykw::graph_extract::multipartite::{self, MultipartiteConfig};
use polykw::graph_extract::{load_centrality, pagerank, PageRankConfig, WordGraph};
use polykw::normalize::{porter_stem, Normalizer};
use polykw::stat_extract::kpminer::{self, KpMinerConfig};
use polykw::xling::{agglomerative_cluster, build_manifest, enumerate_tuples, AffinityMatrix, LanguageSet, Regime};
use rand::Rng;

// tolerances and sizes
const METRIC_INSTANCES: usize = 10_000;
const METRIC_MAX_SIZE: usize = 20;
const FIXTURE_TOL: f64 = 1e-4;
const PAGERANK_GRAPHS: usize = 1_000;
const PAGERANK_MAX_NODES: usize = 50;
const PAGERANK_SUM_TOL: f64 = 1e-9;
const PAGERANK_UNIFORM_TOL: f64 = 1e-9;
const PAGERANK_ORACLE_TOL: f64 = 1e-8;
const PAGERANK_ORACLE_MAX_NODES: usize = 10;
const CENTRALITY_EXHAUSTIVE_MAX_NODES: usize = 6;
const CENTRALITY_RANDOM_GRAPHS: usize = 500;
const CENTRALITY_MAX_NODES: usize = 7;
const CENTRALITY_TOL: f64 = 1e-12;
const MULTIPARTITE_DOCS: usize = 200;
const KPMINER_DOCS: usize = 100;
const PORTER_MIN_AGREEMENT: f64 = 0.999;
const CLUSTER_MATRICES: usize = 200;
const CLUSTER_TOL: f64 = 1e-12;
const E2E_DOCS: usize = 50;
const LV_SIZE: usize = 10_506;
const LV_KW_PER_DOC: f64 = 3.2204;
const LV_KW_PRESENT: f64 = 0.8691;
const LV_RATIO_TOL: f64 = 0.005;
const LV_CORPUS_ENV: &str = "POLYKW_LV_CORPUS";

type Check = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria = [
        Criterion { name: "combinatorics", budget: Duration::from_secs(1), run: combinatorics },
        Criterion { name: "metric oracle", budget: Duration::from_secs(10), run: metric_oracle },
        Criterion { name: "worked metric fixture", budget: Duration::from_secs(1), run: worked_fixture },
        Criterion { name: "pagerank", budget: Duration::from_secs(30), run: pagerank_checks },
        Criterion { name: "load centrality oracle", budget: Duration::from_secs(60), run: centrality_oracle },
        Criterion { name: "multipartite constraint", budget: Duration::from_secs(30), run: multipartite_constraint },
        Criterion { name: "kpminer filters", budget: Duration::from_secs(10), run: kpminer_filters },
        Criterion { name: "porter vocabulary", budget: Duration::from_secs(5), run: porter_vocabulary },
        Criterion { name: "clustering oracle", budget: Duration::from_secs(30), run: clustering_oracle },
        Criterion { name: "end-to-end determinism", budget: Duration::from_secs(60), run: end_to_end_determinism },
        Criterion { name: "corpus stats", budget: Duration::from_secs(5), run: corpus_stats },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, budget {:?}", c.budget))
            }
        });
        match result {
            Ok(detail) => println!("PASS  {:<26} {:>9.2?}  {detail}", c.name, elapsed),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:<26} {:>9.2?}  {detail}", c.name, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn combinatorics() -> Check {
    let langs = LanguageSet::default();
    let counts: Vec<usize> =
        (1..=6).map(|k| enumerate_tuples(&langs, k).map(|t| t.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(counts == [6, 15, 20, 15, 6, 1], || format!("counts {counts:?}"))?;
    let total: usize = counts.iter().sum();
    ensure(total == 63, || format!("total {total}"))?;
    for k in 1..=6 {
        let tuples = enumerate_tuples(&langs, k).unwrap();
        let distinct: BTreeSet<_> = tuples.iter().collect();
        ensure(distinct.len() == tuples.len() && tuples.iter().all(|t| t.len() == k), || format!("bad tuples at k={k}"))?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for l in langs.langs() {
        for s in ["train", "valid", "test"] {
            fs::write(dir.path().join(format!("{l}.{s}.jsonl")), "").map_err(|e| e.to_string())?;
        }
    }
    for test in langs.langs() {
        let m = build_manifest(Regime::Loo, &langs, test, None, dir.path()).map_err(|e| e.to_string())?;
        let excluded: Vec<_> = langs.langs().iter().filter(|l| !m.train_langs.contains(l)).collect();
        ensure(excluded == [test], || format!("LOO test={test} excludes {excluded:?}"))?;
    }
    Ok(format!("counts {counts:?}, total {total}, 6 LOO manifests"))
}

/// Independent oracle: first k predictions, duplicates removed, counted
/// against the gold list by linear search.
fn oracle_scores(pred: &[String], gold: &[String], k: usize) -> (f64, f64, f64, f64) {
    let mut considered: Vec<&String> = Vec::new();
    for p in pred.iter().take(k) {
        if !considered.contains(&p) {
            considered.push(p);
        }
    }
    let hits = considered.iter().filter(|p| gold.contains(p)).count() as f64;
    let p = if considered.is_empty() { 0.0 } else { hits / considered.len() as f64 };
    let r = if gold.is_empty() { 0.0 } else { hits / gold.len() as f64 };
    let f = if p + r > 0.0 { 2.0 * p * r / (p + r) } else { 0.0 };
    (p, r, f, hits / k as f64)
}

fn metric_oracle() -> Check {
    let mut rng = common::rng(7);
    let n = Normalizer::identity("xx");
    let vocab: Vec<String> = (0..30).map(|i| format!("w{i}")).collect();
    let mut recall_checks = 0;
    for inst in 0..METRIC_INSTANCES {
        let gold_n = rng.random_range(1..=METRIC_MAX_SIZE);
        let mut gold: Vec<String> = Vec::new();
        while gold.len() < gold_n {
            let w = vocab[rng.random_range(0..vocab.len())].clone();
            if !gold.contains(&w) {
                gold.push(w);
            }
        }
        let pred: Vec<String> =
            (0..rng.random_range(0..=METRIC_MAX_SIZE)).map(|_| vocab[rng.random_range(0..vocab.len())].clone()).collect();
        let gold_set: BTreeSet<String> = gold.iter().cloned().collect();
        let k = rng.random_range(1..=METRIC_MAX_SIZE);
        let got = score_at_k(&pred, &gold_set, &n, k);
        let want = oracle_scores(&pred, &gold, k);
        ensure((got.precision, got.recall, got.f1, got.precision_fixed_k) == want, || {
            format!("instance {inst}: got {got:?}, oracle {want:?}")
        })?;
        let mut prev = 0.0;
        for kk in 1..=METRIC_MAX_SIZE {
            let r = score_at_k(&pred, &gold_set, &n, kk).recall;
            ensure(r >= prev, || format!("instance {inst}: recall fell from {prev} to {r} at k={kk}"))?;
            prev = r;
            recall_checks += 1;
        }
    }
    Ok(format!("{METRIC_INSTANCES} instances exact, {recall_checks} recall monotonicity checks"))
}

fn worked_fixture() -> Check {
    let n = Normalizer::identity("xx");
    let gold: BTreeSet<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let pred = ["a", "x1", "b", "x2", "x3", "x4", "x5", "x6", "x7", "x8"];
    let s = score_at_k(&pred, &gold, &n, 10);
    for (name, got, want) in [("p", s.precision, 0.2000), ("r", s.recall, 0.6667), ("f1", s.f1, 0.3077)] {
        ensure((got - want).abs() <= FIXTURE_TOL, || format!("{name} = {got}, expected {want}"))?;
    }
    Ok(format!("p={:.4} r={:.4} f1={:.4}", s.precision, s.recall, s.f1))
}

fn random_graph(rng: &mut impl Rng, n: usize, directed: bool) -> WordGraph {
    let mut g = WordGraph::with_nodes(directed, (0..n).map(|i| i.to_string()));
    let density = rng.random_range(0.0..0.5);
    for a in 0..n {
        for b in 0..n {
            if a != b && (directed || a < b) && rng.random_bool(density) {
                g.add_edge(a, b, rng.random_range(0.1..3.0));
            }
        }
    }
    g
}

/// Dense power iteration over the explicit Google matrix, with the same
/// stopping rule as the sparse implementation.
fn dense_pagerank(g: &WordGraph, cfg: &PageRankConfig) -> Vec<f64> {
    let n = g.len();
    let nf = n as f64;
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        let out: f64 = (0..n).filter_map(|j| g.weight(i, j)).sum();
        for (j, cell) in row.iter_mut().enumerate() {
            let p = if out > 0.0 { g.weight(i, j).unwrap_or(0.0) / out } else { 1.0 / nf };
            *cell = cfg.damping * p + (1.0 - cfg.damping) / nf;
        }
    }
    let mut x = vec![1.0 / nf; n];
    for _ in 0..cfg.max_iter {
        let mut next: Vec<f64> = (0..n).map(|j| (0..n).map(|i| x[i] * m[i][j]).sum()).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let delta: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if delta < cfg.tol {
            break;
        }
    }
    x
}

fn pagerank_checks() -> Check {
    let cfg = PageRankConfig::default();
    let mut rng = common::rng(11);
    let mut oracle_graphs = 0;
    let mut worst = 0.0f64;
    for i in 0..PAGERANK_GRAPHS {
        let n = rng.random_range(1..=PAGERANK_MAX_NODES);
        let directed = rng.random_bool(0.5);
        let g = random_graph(&mut rng, n, directed);
        let pr = pagerank(&g, &cfg).map_err(|e| e.to_string())?;
        let sum: f64 = pr.iter().sum();
        ensure((sum - 1.0).abs() <= PAGERANK_SUM_TOL && pr.iter().all(|&p| p >= 0.0), || {
            format!("graph {i}: sum {sum}")
        })?;
        if n <= PAGERANK_ORACLE_MAX_NODES {
            let dense = dense_pagerank(&g, &cfg);
            let diff = pr.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            ensure(diff <= PAGERANK_ORACLE_TOL, || format!("graph {i}: differs from dense oracle by {diff}"))?;
            worst = worst.max(diff);
            oracle_graphs += 1;
        }
    }
    // a few more small graphs so the oracle comparison is not starved
    while oracle_graphs < 200 {
        let n = rng.random_range(1..=PAGERANK_ORACLE_MAX_NODES);
        let directed = rng.random_bool(0.5);
        let g = random_graph(&mut rng, n, directed);
        let pr = pagerank(&g, &cfg).map_err(|e| e.to_string())?;
        let diff = pr.iter().zip(&dense_pagerank(&g, &cfg)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(diff <= PAGERANK_ORACLE_TOL, || format!("small graph: differs from dense oracle by {diff}"))?;
        worst = worst.max(diff);
        oracle_graphs += 1;
    }
    for n in 2..=PAGERANK_MAX_NODES {
        for directed in [false, true] {
            let mut cycle = WordGraph::with_nodes(directed, (0..n).map(|i| i.to_string()));
            for i in 0..n {
                cycle.add_edge(i, (i + 1) % n, 1.0);
            }
            let mut complete = WordGraph::with_nodes(directed, (0..n).map(|i| i.to_string()));
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        complete.set_edge(a, b, 1.0);
                    }
                }
            }
            for (kind, g) in [("cycle", &cycle), ("complete", &complete)] {
                let pr = pagerank(g, &cfg).map_err(|e| e.to_string())?;
                let dev = pr.iter().map(|p| (p - 1.0 / n as f64).abs()).fold(0.0, f64::max);
                ensure(dev <= PAGERANK_UNIFORM_TOL, || format!("{kind} n={n}: deviation {dev}"))?;
            }
        }
    }
    Ok(format!("{PAGERANK_GRAPHS} random graphs sum to 1, uniform on cycles/complete graphs, {oracle_graphs} dense-oracle graphs (max diff {worst:.1e})"))
}

/// Fraction of shortest paths through each node, by explicit enumeration of
/// every shortest path between every unordered pair.
fn brute_force_centrality(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let bfs = |s: usize| {
        let mut d = vec![usize::MAX; n];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if d[w] == usize::MAX {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    };
    let dist: Vec<Vec<usize>> = (0..n).map(bfs).collect();
    fn paths(adj: &[Vec<usize>], dist: &[Vec<usize>], cur: usize, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur == t {
            out.push(path.clone());
            return;
        }
        for &w in &adj[cur] {
            if dist[w][t] != usize::MAX && dist[w][t] + 1 == dist[cur][t] {
                path.push(w);
                paths(adj, dist, w, t, path, out);
                path.pop();
            }
        }
    }
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if dist[s][t] == usize::MAX {
                continue;
            }
            let mut all = Vec::new();
            paths(&adj, &dist, s, t, &mut vec![s], &mut all);
            for (v, sc) in score.iter_mut().enumerate() {
                if v != s && v != t {
                    let through = all.iter().filter(|p| p.contains(&v)).count();
                    *sc += through as f64 / all.len() as f64;
                }
            }
        }
    }
    if n > 2 {
        let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
        score.iter_mut().for_each(|v| *v /= pairs);
    } else {
        score.iter_mut().for_each(|v| *v = 0.0);
    }
    score
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn compare_centrality(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let mut g = WordGraph::with_nodes(false, (0..n).map(|i| i.to_string()));
    for &(a, b) in edges {
        g.add_edge(a, b, 1.0);
    }
    let got = load_centrality(&g);
    let want = brute_force_centrality(n, edges);
    for v in 0..n {
        ensure((got[v] - want[v]).abs() <= CENTRALITY_TOL, || {
            format!("n={n} edges {edges:?}: node {v} got {} oracle {}", got[v], want[v])
        })?;
    }
    Ok(())
}

fn centrality_oracle() -> Check {
    let mut exhaustive = 0;
    for n in 1..=CENTRALITY_EXHAUSTIVE_MAX_NODES {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            if connected(n, &edges) {
                compare_centrality(n, &edges)?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = common::rng(13);
    let mut random = 0;
    while random < CENTRALITY_RANDOM_GRAPHS {
        let n = rng.random_range(CENTRALITY_EXHAUSTIVE_MAX_NODES + 1..=CENTRALITY_MAX_NODES);
        let p = rng.random_range(0.2..0.8);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).filter(|_| rng.random_bool(p)).collect();
        if connected(n, &edges) {
            compare_centrality(n, &edges)?;
            random += 1;
        }
    }
    Ok(format!("{exhaustive} connected graphs on <= {CENTRALITY_EXHAUSTIVE_MAX_NODES} nodes exhaustively, {random} random connected graphs on 7 nodes"))
}

fn random_document(rng: &mut impl Rng, tokens: usize) -> String {
    let mut out = Vec::with_capacity(tokens);
    for _ in 0..tokens {
        if rng.random_bool(0.08) {
            out.push(common::PUNCT[rng.random_range(0..common::PUNCT.len())]);
        } else {
            out.push(common::WORDS[rng.random_range(0..common::WORDS.len())]);
        }
    }
    out.join(" ")
}

fn multipartite_constraint() -> Check {
    let n = Normalizer::for_language("en", None);
    let cfg = MultipartiteConfig::default();
    let mut rng = common::rng(17);
    let mut edges = 0;
    let mut topics_total = 0;
    for i in 0..MULTIPARTITE_DOCS {
        let len = rng.random_range(5..150);
        let text = random_document(&mut rng, len);
        let mg = multipartite::build(&n.analyze(&text), &cfg, None);
        for (a, b, _) in mg.graph.edges() {
            ensure(mg.topic_of[a] != mg.topic_of[b], || format!("document {i}: same-topic edge {a} -> {b}"))?;
            edges += 1;
        }
        topics_total += mg.topic_of.iter().collect::<BTreeSet<_>>().len();
    }
    Ok(format!("{MULTIPARTITE_DOCS} documents, {edges} edges, {topics_total} topics, no same-topic edge"))
}

fn kpminer_filters() -> Check {
    let n = Normalizer::for_language("en", None);
    let cfg = KpMinerConfig::default();
    ensure(cfg.lasf == 3 && cfg.cutoff == 400, || format!("defaults changed: {cfg:?}"))?;
    let mut rng = common::rng(19);
    let mut returned = 0;
    for i in 0..KPMINER_DOCS {
        let len = rng.random_range(50..900);
        let text = random_document(&mut rng, len);
        let doc = Document::new("d", "en", &text, vec![], Split::Test);
        let tokens = n.analyze(&text);
        let cands = kpminer::candidates(&tokens);
        for k in kpminer::extract(&doc, &n, &cfg, 50) {
            let norm = n.normalize_phrase(&k.phrase);
            let c = cands.iter().find(|c| c.norm == norm).ok_or_else(|| format!("document {i}: '{}' is not a candidate", k.phrase))?;
            ensure(c.tf >= 3 && c.first_tok_idx() < 400, || {
                format!("document {i}: '{}' tf {} first {}", k.phrase, c.tf, c.first_tok_idx())
            })?;
            returned += 1;
        }
    }
    Ok(format!("{KPMINER_DOCS} documents, {returned} phrases all with tf >= 3 and first occurrence < 400"))
}

fn porter_vocabulary() -> Check {
    let dir = common::data_dir();
    let voc = fs::read_to_string(dir.join("porter_voc.txt")).map_err(|e| e.to_string())?;
    let out = fs::read_to_string(dir.join("porter_output.txt")).map_err(|e| e.to_string())?;
    let pairs: Vec<(&str, &str)> = voc.lines().zip(out.lines()).collect();
    ensure(pairs.len() == voc.lines().count() && pairs.len() == out.lines().count(), || "vocabulary files differ in length".into())?;
    let mismatches: Vec<String> = pairs
        .iter()
        .filter(|(w, s)| porter_stem(w) != *s)
        .map(|(w, s)| format!("{w}: expected {s}, got {}", porter_stem(w)))
        .collect();
    let agreement = 1.0 - mismatches.len() as f64 / pairs.len() as f64;
    for m in &mismatches {
        println!("      porter mismatch  {m}");
    }
    ensure(agreement >= PORTER_MIN_AGREEMENT, || format!("agreement {agreement:.5} on {} words", pairs.len()))?;
    Ok(format!("{} words, agreement {:.4}%, {} mismatches", pairs.len(), agreement * 100.0, mismatches.len()))
}

/// Recomputes every cluster-to-cluster distance from the leaf distances at
/// every step.
fn oracle_merges(d: &[Vec<f64>], linkage: Linkage) -> Vec<(usize, usize, f64)> {
    let n = d.len();
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut merges = Vec::new();
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in (a + 1)..clusters.len() {
                let ds: Vec<f64> =
                    clusters[a].1.iter().flat_map(|&i| clusters[b].1.iter().map(move |&j| d[i][j])).collect();
                let dist = match linkage {
                    Linkage::Single => ds.iter().cloned().fold(f64::INFINITY, f64::min),
                    Linkage::Complete => ds.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                    Linkage::Average => ds.iter().sum::<f64>() / ds.len() as f64,
                };
                let (lo, hi) = (clusters[a].0.min(clusters[b].0), clusters[a].0.max(clusters[b].0));
                if best.is_none_or(|(bd, bl, bh, _, _)| (dist, lo, hi) < (bd, bl, bh)) {
                    best = Some((dist, lo, hi, a, b));
                }
            }
        }
        let (dist, lo, hi, a, b) = best.unwrap();
        let mut members = clusters[a].1.clone();
        members.extend(&clusters[b].1);
        clusters.remove(b);
        clusters.remove(a);
        clusters.push((n + step, members));
        merges.push((lo, hi, dist));
    }
    merges
}

fn clustering_oracle() -> Check {
    let mut rng = common::rng(23);
    for i in 0..CLUSTER_MATRICES {
        let n = rng.random_range(4..=6);
        let values: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(0.0..1.0)).collect()).collect();
        let m = AffinityMatrix::new((0..n).map(|j| format!("l{j}")).collect(), values).map_err(|e| e.to_string())?;
        let d = m.distances();
        for linkage in [Linkage::Average, Linkage::Single, Linkage::Complete] {
            let got = agglomerative_cluster(&m, linkage).map_err(|e| e.to_string())?;
            let want = oracle_merges(&d, linkage);
            for (s, (g, w)) in got.merges.iter().zip(&want).enumerate() {
                ensure(g.left == w.0 && g.right == w.1 && (g.height - w.2).abs() <= CLUSTER_TOL, || {
                    format!("matrix {i} {linkage} step {s}: got ({}, {}, {}), oracle {w:?}", g.left, g.right, g.height)
                })?;
            }
            if linkage != Linkage::Single {
                ensure(got.merges.windows(2).all(|w| w[0].height <= w[1].height + CLUSTER_TOL), || {
                    format!("matrix {i} {linkage}: heights not monotone")
                })?;
            }
        }
    }
    Ok(format!("{CLUSTER_MATRICES} matrices x 3 linkages match, heights monotone for average/complete"))
}

fn polykw(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_polykw")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("polykw {args:?} failed: {}", String::from_utf8_lossy(&o.stderr)));
    }
    Ok(o.stdout)
}

fn end_to_end_determinism() -> Check {
    let corpus = common::data_dir().join("synthetic/en.test.jsonl");
    let docs = load_jsonl(&corpus, "en", Split::Test).map_err(|e| e.to_string())?;
    ensure(docs.len() == E2E_DOCS, || format!("corpus has {} documents", docs.len()))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name);
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let methods = ["yake", "kpminer", "textrank", "multipartiterank", "rakun"];
    for method in methods {
        let mut outputs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for (run, jobs) in [(0, "1"), (1, "1"), (2, "4")] {
            let pred = path(&format!("{method}.{run}.jsonl"));
            let metrics = path(&format!("{method}.{run}.metrics.json"));
            polykw(&["extract", "--method", method, "--in", &s(&corpus), "--k", "10", "--jobs", jobs, "--out", &s(&pred)])?;
            polykw(&["eval", "--pred", &s(&pred), "--in", &s(&corpus), "--k", "10", "--out", &s(&metrics)])?;
            let p = fs::read(&pred).map_err(|e| e.to_string())?;
            ensure(p.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count() == E2E_DOCS, || {
                format!("{method}: prediction file does not have {E2E_DOCS} lines")
            })?;
            outputs.push((p, fs::read(&metrics).map_err(|e| e.to_string())?));
        }
        ensure(outputs[0] == outputs[1], || format!("{method}: repeated runs differ"))?;
        ensure(outputs[0] == outputs[2], || format!("{method}: --jobs 1 and --jobs 4 differ"))?;
    }
    Ok(format!("{} methods x (2 runs + jobs 4), byte-identical predictions and metrics", methods.len()))
}

fn corpus_stats() -> Check {
    let n = Normalizer::for_language("en", None);
    let docs = load_jsonl(common::data_dir().join("stats/en.train.jsonl"), "en", Split::Train).map_err(|e| e.to_string())?;
    let s = compute_stats(&docs, &n).map_err(|e| e.to_string())?;
    // 5 documents, 11 gold keywords, 8 of them present (see the file)
    let want = (5, 11.0 / 5.0, 8.0 / 11.0);
    ensure((s.size, s.kw_per_doc, s.kw_present) == want, || format!("got {s:?}, expected {want:?}"))?;
    let mut detail = format!("synthetic corpus exact ({}, {}, {:.4})", s.size, s.kw_per_doc, s.kw_present);
    match std::env::var(LV_CORPUS_ENV) {
        Ok(path) => {
            let lv = load_jsonl(&path, "lv", Split::Train).map_err(|e| e.to_string())?;
            let s = compute_stats(&lv, &Normalizer::for_language("lv", None)).map_err(|e| e.to_string())?;
            ensure(
                s.size == LV_SIZE
                    && (s.kw_per_doc - LV_KW_PER_DOC).abs() <= LV_RATIO_TOL
                    && (s.kw_present - LV_KW_PRESENT).abs() <= LV_RATIO_TOL,
                || format!("Latvian corpus gives {s:?}, expected ({LV_SIZE}, {LV_KW_PER_DOC}, {LV_KW_PRESENT})"),
            )?;
            detail.push_str(&format!("; Latvian corpus ({}, {:.4}, {:.4})", s.size, s.kw_per_doc, s.kw_present));
        }
        Err(_) => detail.push_str(&format!("; Latvian check skipped ({LV_CORPUS_ENV} not set)")),
    }
    Ok(detail)
}
