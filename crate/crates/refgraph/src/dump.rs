//! JSON graph dumps, reloadable without re-ingesting records.

use std::path::Path;

use refgraph_core::graph::{Edge, RefactoringGraph};
use refgraph_core::record::{CommitHash, RefactoringType};
use refgraph_core::signature::MethodRef;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::records::parse_timestamp;

pub const DUMP_FORMAT: &str = "refgraph-graph/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpEdge {
    pub source: String,
    pub target: String,
    #[serde(rename = "type")]
    pub rtype: RefactoringType,
    pub commit: String,
    pub timestamp: String,
    pub author_name: String,
    pub author_email: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectDump {
    pub project: String,
    pub vertices: Vec<String>,
    pub edges: Vec<DumpEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDump {
    pub format: String,
    pub projects: Vec<ProjectDump>,
}

/// A project's graph, in run order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectGraph {
    pub project: String,
    pub graph: RefactoringGraph,
}

impl ProjectDump {
    pub fn from_graph(project: &str, graph: &RefactoringGraph) -> Self {
        Self {
            project: project.to_string(),
            vertices: graph.vertices().map(|v| v.canonical().to_string()).collect(),
            edges: graph
                .edges()
                .map(|e| DumpEdge {
                    source: e.source.canonical().to_string(),
                    target: e.target.canonical().to_string(),
                    rtype: e.rtype,
                    commit: e.commit.to_string(),
                    timestamp: e.timestamp.to_string(),
                    author_name: e.author_name.clone(),
                    author_email: e.author_email.clone(),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<RefactoringGraph, String> {
        let mut graph = RefactoringGraph::new();
        for v in &self.vertices {
            graph.insert_vertex(MethodRef::parse(v).map_err(|e| e.to_string())?);
        }
        let declared = graph.vertex_count();
        for e in &self.edges {
            graph.insert(Edge {
                source: MethodRef::parse(&e.source).map_err(|e| e.to_string())?,
                target: MethodRef::parse(&e.target).map_err(|e| e.to_string())?,
                rtype: e.rtype,
                commit: CommitHash::parse(&e.commit).map_err(|e| e.to_string())?,
                timestamp: parse_timestamp(&e.timestamp)?,
                author_name: e.author_name.clone(),
                author_email: e.author_email.clone(),
            });
            if graph.vertex_count() != declared {
                return Err(format!("edge {} -> {} uses an undeclared vertex", e.source, e.target));
            }
        }
        Ok(graph)
    }
}

impl GraphDump {
    pub fn new(projects: &[ProjectGraph]) -> Self {
        Self {
            format: DUMP_FORMAT.to_string(),
            projects: projects.iter().map(|p| ProjectDump::from_graph(&p.project, &p.graph)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dump serializes");
        s.push('\n');
        s
    }

    pub fn into_graphs(self) -> Result<Vec<ProjectGraph>, String> {
        if self.format != DUMP_FORMAT {
            return Err(format!("unsupported format `{}` (expected `{DUMP_FORMAT}`)", self.format));
        }
        self.projects
            .iter()
            .map(|p| {
                let graph = p.to_graph().map_err(|e| format!("project {}: {e}", p.project))?;
                Ok(ProjectGraph { project: p.project.clone(), graph })
            })
            .collect()
    }
}

pub fn read_dump(path: &Path) -> Result<Vec<ProjectGraph>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Read { path: path.to_path_buf(), source })?;
    let dump: GraphDump =
        serde_json::from_str(&text).map_err(|e| Error::Dump { path: path.to_path_buf(), message: e.to_string() })?;
    dump.into_graphs().map_err(|message| Error::Dump { path: path.to_path_buf(), message })
}

#[cfg(test)]
mod tests {
    use super::*;
    use refgraph_core::time::Timestamp;

    fn sample() -> ProjectGraph {
        let mut graph = RefactoringGraph::new();
        graph.insert(Edge {
            source: MethodRef::parse("a.A#x(List<String>)").unwrap(),
            target: MethodRef::parse("a.B#x(List<String>)").unwrap(),
            rtype: RefactoringType::Move,
            commit: CommitHash::parse("abcdef0").unwrap(),
            timestamp: Timestamp(1_000_000),
            author_name: "Ann".into(),
            author_email: "ann@x".into(),
        });
        ProjectGraph { project: "p".into(), graph }
    }

    #[test]
    fn dump_reloads_identically() {
        let graphs = vec![sample()];
        let json = GraphDump::new(&graphs).to_json();
        let back: GraphDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_graphs().unwrap(), graphs);
        assert!(json.contains("\"type\": \"move\""));
    }

    #[test]
    fn undeclared_vertex_rejected() {
        let mut dump = GraphDump::new(&[sample()]);
        dump.projects[0].vertices.pop();
        assert!(dump.into_graphs().unwrap_err().contains("undeclared vertex"));
    }

    #[test]
    fn wrong_format_rejected() {
        let mut dump = GraphDump::new(&[sample()]);
        dump.format = "other/9".into();
        assert!(dump.into_graphs().is_err());
    }
}
