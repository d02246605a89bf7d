//! Ingestion, graph building and measurement across projects.
//!
//! Projects are processed on separate threads; results are joined back in
//! project order (first appearance in the record inputs), so output does
//! not depend on scheduling.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use refgraph_core::corpus::{aggregate, CorpusStats, ProjectInput};
use refgraph_core::filter::{apply_filters, ExclusionReport, FilterConfig};
use refgraph_core::graph::{build, partition, split_by_commits, Subgraph};
use refgraph_core::history::{restrict_to_log, CommitLog, HistoryError};
use refgraph_core::metrics::measure;
use refgraph_core::record::RefactoringRecord;

use crate::commit_log::read_commit_log;
use crate::dump::ProjectGraph;
use crate::error::{Error, Result};
use crate::records::{parse_records, LineError};

#[derive(Debug, Clone)]
pub struct IngestConfig {
    pub records: Vec<PathBuf>,
    /// Project name to first-parent commit log.
    pub commit_logs: BTreeMap<String, PathBuf>,
    pub filter: FilterConfig,
    pub strict: bool,
}

/// Per-file parse results.
#[derive(Debug, Clone)]
pub struct InputReport {
    pub path: PathBuf,
    pub lines: usize,
    pub records: usize,
    pub errors: Vec<LineError>,
}

/// Record and graph counts after each stage for one project.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageCounts {
    pub parsed: usize,
    pub excluded: ExclusionReport,
    pub filtered: usize,
    pub history: bool,
    pub off_branch: usize,
    pub unresolved: usize,
    pub on_branch: usize,
    pub vertices: usize,
    pub edges: usize,
    pub subgraphs: usize,
    pub single_commit: usize,
    pub kept: usize,
}

impl StageCounts {
    fn add(&mut self, o: &StageCounts) {
        self.parsed += o.parsed;
        self.excluded += o.excluded;
        self.filtered += o.filtered;
        self.history |= o.history;
        self.off_branch += o.off_branch;
        self.unresolved += o.unresolved;
        self.on_branch += o.on_branch;
        self.vertices += o.vertices;
        self.edges += o.edges;
        self.subgraphs += o.subgraphs;
        self.single_commit += o.single_commit;
        self.kept += o.kept;
    }

    /// Each stage's input equals the previous stage's output.
    pub fn is_consistent(&self) -> bool {
        self.parsed == self.filtered + self.excluded.total()
            && self.filtered == self.on_branch + self.off_branch + self.unresolved
            && self.edges <= self.on_branch
            && self.single_commit <= self.subgraphs
            && self.kept <= self.subgraphs
            && self.subgraphs <= self.vertices
    }
}

#[derive(Debug, Clone)]
pub struct ProjectBuild {
    pub graph: ProjectGraph,
    pub counts: StageCounts,
    pub unresolved: Vec<HistoryError>,
}

#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub inputs: Vec<InputReport>,
    pub projects: Vec<ProjectBuild>,
    pub min_commits: usize,
}

impl BuildOutput {
    pub fn graphs(&self) -> Vec<ProjectGraph> {
        self.projects.iter().map(|p| p.graph.clone()).collect()
    }

    pub fn totals(&self) -> StageCounts {
        let mut t = StageCounts::default();
        self.projects.iter().for_each(|p| t.add(&p.counts));
        t
    }

    /// Human-readable stage report written next to the graph dump.
    pub fn run_log(&self) -> String {
        let mut out = String::from("refgraph build\n");
        out.push_str(&format!("min_commits={}\n", self.min_commits));
        for input in &self.inputs {
            out.push_str(&format!(
                "input {}: lines={} records={} errors={}\n",
                input.path.display(),
                input.lines,
                input.records,
                input.errors.len()
            ));
            for e in &input.errors {
                out.push_str(&format!("  line {}: {}\n", e.line, e.message));
            }
        }
        for p in &self.projects {
            out.push_str(&format!("project {}: {}\n", p.graph.project, format_counts(&p.counts)));
            for e in &p.unresolved {
                out.push_str(&format!("  unresolved: {e}\n"));
            }
        }
        out.push_str(&format!("total: {}\n", format_counts(&self.totals())));
        out
    }
}

fn format_counts(c: &StageCounts) -> String {
    format!(
        "parsed={} excluded_package_keyword={} excluded_constructor={} excluded_self_loop={} filtered={} \
         history={} off_branch_dropped={} unresolved={} on_branch={} vertices={} edges={} subgraphs={} \
         single_commit={} kept={}",
        c.parsed,
        c.excluded.package_keyword,
        c.excluded.constructor,
        c.excluded.self_loop,
        c.filtered,
        if c.history { "applied" } else { "none" },
        c.off_branch,
        c.unresolved,
        c.on_branch,
        c.vertices,
        c.edges,
        c.subgraphs,
        c.single_commit,
        c.kept,
    )
}

fn read_records(path: &Path, strict: bool) -> Result<(Vec<RefactoringRecord>, InputReport)> {
    let read_err = |source| Error::Read { path: path.to_path_buf(), source };
    let file = File::open(path).map_err(read_err)?;
    let outcome = parse_records(BufReader::new(file), strict).map_err(read_err)?.map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        line: e.line,
        message: e.message,
    })?;
    let report = InputReport {
        path: path.to_path_buf(),
        lines: outcome.lines,
        records: outcome.records.len(),
        errors: outcome.errors,
    };
    Ok((outcome.records, report))
}

/// Groups records by project, ordering projects by first appearance.
pub fn group_by_project(records: Vec<RefactoringRecord>) -> Vec<(String, Vec<RefactoringRecord>)> {
    let mut groups: Vec<(String, Vec<RefactoringRecord>)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        let slot = *index.entry(r.project.clone()).or_insert_with(|| {
            groups.push((r.project.clone(), Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(r);
    }
    groups
}

fn build_project(
    project: String,
    records: Vec<RefactoringRecord>,
    log: Option<&CommitLog>,
    filter: &FilterConfig,
    min_commits: usize,
) -> ProjectBuild {
    let mut counts = StageCounts { parsed: records.len(), ..StageCounts::default() };
    let (kept, excluded) = apply_filters(records, filter);
    counts.excluded = excluded;
    counts.filtered = kept.len();

    let mut unresolved = Vec::new();
    let on_branch = match log {
        Some(log) => {
            let r = restrict_to_log(kept, log);
            counts.history = true;
            counts.off_branch = r.dropped;
            counts.unresolved = r.errors.len();
            unresolved = r.errors.into_iter().map(|(_, e)| e).collect();
            r.kept
        }
        None => kept,
    };
    counts.on_branch = on_branch.len();

    let graph = build(on_branch);
    let parts = partition(&graph);
    counts.vertices = graph.vertex_count();
    counts.edges = graph.edge_count();
    counts.subgraphs = parts.len();
    counts.single_commit = parts.iter().filter(|s| s.commit_count() == 1).count();
    counts.kept = parts.iter().filter(|s| s.commit_count() >= min_commits).count();

    ProjectBuild { graph: ProjectGraph { project, graph }, counts, unresolved }
}

/// Reads, filters, restricts and builds one graph per project.
pub fn ingest(cfg: &IngestConfig, min_commits: usize) -> Result<BuildOutput> {
    let mut inputs = Vec::new();
    let mut records = Vec::new();
    for path in &cfg.records {
        let (recs, report) = read_records(path, cfg.strict)?;
        records.extend(recs);
        inputs.push(report);
    }

    let mut logs: BTreeMap<&str, CommitLog> = BTreeMap::new();
    for (project, path) in &cfg.commit_logs {
        logs.insert(project, read_commit_log(path)?);
    }

    let groups = group_by_project(records);
    let projects: Vec<ProjectBuild> = std::thread::scope(|scope| {
        let handles: Vec<_> = groups
            .into_iter()
            .map(|(project, recs)| {
                let log = logs.get(project.as_str());
                scope.spawn(move || build_project(project, recs, log, &cfg.filter, min_commits))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("project worker panicked")).collect()
    });

    if cfg.strict {
        if let Some(e) = projects.iter().flat_map(|p| &p.unresolved).next() {
            return Err(Error::Invalid(format!("unresolved commit: {e}")));
        }
    }
    Ok(BuildOutput { inputs, projects, min_commits })
}

/// Partitions each project's graph, measures the subgraphs that reach
/// `min_commits` and aggregates everything.
pub fn corpus_stats(
    graphs: &[ProjectGraph],
    min_commits: usize,
    project_ages: Option<&BTreeMap<String, f64>>,
) -> Result<CorpusStats> {
    let inputs: Vec<Result<ProjectInput>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .iter()
            .map(|pg| {
                scope.spawn(move || {
                    let parts = partition(&pg.graph);
                    let total_subgraphs = parts.len();
                    let single_commit_subgraphs = parts.iter().filter(|s| s.commit_count() == 1).count();
                    let kept = split_by_commits(parts, min_commits).kept;
                    let metrics = kept
                        .iter()
                        .map(measure)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| Error::Invalid(format!("project {}: {e}", pg.project)))?;
                    Ok(ProjectInput { project: pg.project.clone(), total_subgraphs, single_commit_subgraphs, metrics })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("metrics worker panicked")).collect()
    });
    let inputs = inputs.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(aggregate(&inputs, project_ages))
}

/// Which subgraphs to export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    All,
    /// A subgraph id, or else a substring of any vertex label.
    Pattern(String),
}

/// Subgraphs reaching `min_commits` that match `selector`, with their
/// project. An exact id match takes precedence over substring matches.
pub fn select(graphs: &[ProjectGraph], min_commits: usize, selector: &Selector) -> Vec<(String, Subgraph)> {
    let candidates: Vec<(String, Subgraph)> = graphs
        .iter()
        .flat_map(|pg| {
            split_by_commits(partition(&pg.graph), min_commits).kept.into_iter().map(|s| (pg.project.clone(), s))
        })
        .collect();
    match selector {
        Selector::All => candidates,
        Selector::Pattern(p) => {
            if candidates.iter().any(|(_, s)| &s.id == p) {
                candidates.into_iter().filter(|(_, s)| &s.id == p).collect()
            } else {
                candidates
                    .into_iter()
                    .filter(|(_, s)| s.vertices.iter().any(|v| v.canonical().contains(p.as_str())))
                    .collect()
            }
        }
    }
}

/// Reads `project,age` lines. Blank lines and `#` comments are skipped.
pub fn parse_project_ages(text: &str, path: &Path) -> Result<BTreeMap<String, f64>> {
    let mut ages = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: String| Error::Malformed { path: path.to_path_buf(), line: i + 1, message };
        let (name, age) = line.rsplit_once([',', '\t']).ok_or_else(|| malformed("expected `project,age`".into()))?;
        let age: f64 = age.trim().parse().map_err(|_| malformed(format!("`{}` is not a number", age.trim())))?;
        if !age.is_finite() {
            return Err(malformed("age must be finite".into()));
        }
        if ages.insert(name.trim().to_string(), age).is_some() {
            return Err(malformed(format!("project `{}` listed twice", name.trim())));
        }
    }
    Ok(ages)
}

pub fn read_project_ages(path: &Path) -> Result<BTreeMap<String, f64>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Read { path: path.to_path_buf(), source })?;
    parse_project_ages(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn project_ages() {
        let ages = parse_project_ages("# name,years\nokhttp, 7\nglide\t6.5\n\n", Path::new("a")).unwrap();
        assert_eq!(ages["okhttp"], 7.0);
        assert_eq!(ages["glide"], 6.5);
        assert!(parse_project_ages("okhttp,seven\n", Path::new("a")).is_err());
        assert!(parse_project_ages("a,1\na,2\n", Path::new("a")).is_err());
    }
}
