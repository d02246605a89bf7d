//! Report files: CSV tables, the JSON summary and DOT exports.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use refgraph_core::corpus::CorpusStats;
use refgraph_core::dot::emit_dot;
use refgraph_core::graph::Subgraph;
use refgraph_core::report::tables;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUMMARY_FORMAT: &str = "refgraph-summary/1";
pub const P_VALUE_METHOD: &str = "approximate: two-tailed normal approximation, z = rho * sqrt(n - 1)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub format: String,
    pub min_commits: usize,
    pub p_value_method: String,
    pub stats: CorpusStats,
}

pub fn emit_json_summary(stats: &CorpusStats, min_commits: usize) -> String {
    let summary = Summary {
        format: SUMMARY_FORMAT.to_string(),
        min_commits,
        p_value_method: P_VALUE_METHOD.to_string(),
        stats: stats.clone(),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
    s.push('\n');
    s
}

/// One file per table plus `summary.json`, as relative paths.
pub fn emit_tables(stats: &CorpusStats, min_commits: usize) -> Vec<(PathBuf, String)> {
    let mut files: Vec<(PathBuf, String)> =
        tables(stats).iter().map(|t| (PathBuf::from(format!("{}.csv", t.name)), t.to_csv())).collect();
    files.push((PathBuf::from("summary.json"), emit_json_summary(stats, min_commits)));
    files
}

/// Maps an id to a portable file name.
pub fn file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') { c } else { '_' }).collect()
}

/// `<project>/<subgraph id>.dot` for each subgraph.
pub fn dot_files(selected: &[(String, Subgraph)]) -> Vec<(PathBuf, String)> {
    let mut taken = BTreeSet::new();
    selected
        .iter()
        .map(|(project, s)| {
            let dir = PathBuf::from(file_stem(project));
            let stem = file_stem(&s.id);
            let mut path = dir.join(format!("{stem}.dot"));
            let mut n = 2;
            while !taken.insert(path.clone()) {
                path = dir.join(format!("{stem}~{n}.dot"));
                n += 1;
            }
            (path, emit_dot(s))
        })
        .collect()
}

/// Writes every file under `out`. If any write fails, files written by this
/// call are removed again before the error is returned.
pub fn write_outputs(out: &Path, files: &[(PathBuf, String)]) -> Result<()> {
    let mut written: Vec<PathBuf> = Vec::new();
    let result = files.iter().try_for_each(|(rel, content)| {
        let path = out.join(rel);
        let write_err = |source| Error::Write { path: path.clone(), source };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(write_err)?;
        }
        fs::write(&path, content).map_err(write_err)?;
        written.push(path);
        Ok(())
    });
    if result.is_err() {
        for p in &written {
            let _ = fs::remove_file(p);
        }
    }
    result
}
