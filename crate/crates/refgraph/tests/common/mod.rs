#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use refgraph::records::parse_records;
use refgraph_core::graph::{build, partition, Subgraph};
use refgraph_core::record::{CommitHash, RefactoringRecord, RefactoringType};
use refgraph_core::signature::MethodRef;
use refgraph_core::time::Timestamp;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load(name: &str) -> Vec<RefactoringRecord> {
    let file = File::open(fixture(name)).unwrap();
    let outcome = parse_records(BufReader::new(file), true).unwrap().unwrap();
    outcome.records
}

/// Every subgraph of `project` in fixture `name`.
pub fn subgraphs_of(name: &str, project: &str) -> Vec<Subgraph> {
    partition(&build(load(name).into_iter().filter(|r| r.project == project)))
}

pub fn refgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refgraph")).args(args).output().unwrap()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Relative path to content for every file under `root`.
pub fn read_tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

pub fn record(
    source: &str,
    target: &str,
    rtype: RefactoringType,
    commit: &str,
    ts: i64,
    email: &str,
) -> RefactoringRecord {
    RefactoringRecord::new(
        "gen",
        MethodRef::parse(source).unwrap(),
        MethodRef::parse(target).unwrap(),
        rtype,
        CommitHash::parse(commit).unwrap(),
        Timestamp(ts),
        email.split('@').next().unwrap(),
        email,
    )
    .unwrap()
}

pub fn vertex_name(i: usize) -> String {
    format!("gen.C{}#m{}(int)", i % 7, i)
}

/// Records over a pool of `pool` vertices; duplicates and cycles happen.
pub fn random_records(rng: &mut impl Rng, max_edges: usize, pool: usize) -> Vec<RefactoringRecord> {
    let n = rng.random_range(0..=max_edges);
    (0..n)
        .map(|_| {
            let s = rng.random_range(0..pool);
            let mut t = rng.random_range(0..pool);
            if t == s {
                t = (s + 1) % pool;
            }
            let rtype = *RefactoringType::ALL.choose(rng).unwrap();
            let commit = format!("{:07x}", rng.random_range(0..40u32) + 0x1000000);
            let ts = 1_500_000_000 + rng.random_range(0..10_000_000i64);
            let email = format!("dev{}@x.org", rng.random_range(0..4));
            record(&vertex_name(s), &vertex_name(t), rtype, &commit, ts, &email)
        })
        .collect()
}

/// Components as sorted vertex-label sets, found by BFS over the
/// undirected view of the deduplicated edge list.
pub fn bfs_components(records: &[RefactoringRecord]) -> BTreeSet<BTreeSet<String>> {
    let mut adj: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for r in records {
        let (s, t) = (r.source.canonical().to_string(), r.target.canonical().to_string());
        adj.entry(s.clone()).or_default().push(t.clone());
        adj.entry(t).or_default().push(s);
    }
    let mut seen = BTreeSet::new();
    let mut comps = BTreeSet::new();
    for start in adj.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.clone());
        while let Some(v) = queue.pop_front() {
            for w in &adj[&v] {
                if seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
            comp.insert(v);
        }
        comps.insert(comp);
    }
    comps
}

pub fn as_sets(subgraphs: &[Subgraph]) -> BTreeSet<BTreeSet<String>> {
    subgraphs.iter().map(|s| s.vertices.iter().map(|v| v.canonical().to_string()).collect()).collect()
}

/// A corpus of disjoint planned components, each a random tree over its
/// own vertices with edges spread across a chosen number of commits.
pub struct PlannedCorpus {
    pub records: Vec<RefactoringRecord>,
    pub single_commit: usize,
    pub multi_commit: usize,
}

pub fn planned_corpus(rng: &mut impl Rng, components: usize) -> PlannedCorpus {
    let mut records = Vec::new();
    let (mut single_commit, mut multi_commit) = (0, 0);
    for c in 0..components {
        let size = rng.random_range(2..=8usize);
        let edges = size - 1;
        let commits = rng.random_range(1..=edges.min(4));
        if commits == 1 {
            single_commit += 1;
        } else {
            multi_commit += 1;
        }
        // Every commit gets at least one edge.
        let mut commit_of: Vec<usize> =
            (0..edges).map(|e| if e < commits { e } else { rng.random_range(0..commits) }).collect();
        commit_of.shuffle(rng);
        for (e, &k) in commit_of.iter().enumerate() {
            let child = e + 1;
            let parent = rng.random_range(0..child);
            let (s, t) = if rng.random_bool(0.5) { (parent, child) } else { (child, parent) };
            records.push(record(
                &format!("plan.P{c}#v{s}()"),
                &format!("plan.P{c}#v{t}()"),
                *RefactoringType::ALL.choose(rng).unwrap(),
                &format!("{c:08x}{k:08x}"),
                1_600_000_000 + (k as i64) * 86_400,
                "dev@x.org",
            ));
        }
    }
    records.shuffle(rng);
    PlannedCorpus { records, single_commit, multi_commit }
}
