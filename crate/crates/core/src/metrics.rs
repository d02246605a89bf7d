//! Per-subgraph measurements: size, commits, age, composition and authorship.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};

use crate::graph::Subgraph;
use crate::record::RefactoringType;
use crate::time::SECONDS_PER_DAY;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("subgraph `{0}` has no edges")]
    Empty(String),
    #[error("edge {edge} has no author email")]
    MissingEmail { edge: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Composition {
    Homogeneous,
    Heterogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Authorship {
    Single,
    Multiple,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SubgraphMetrics {
    pub subgraph_id: String,
    pub n_vertices: usize,
    pub n_edges: usize,
    /// Distinct commit hashes.
    pub n_commits: usize,
    /// Newest minus oldest edge timestamp.
    pub age_seconds: i64,
    pub age_days: f64,
    pub type_counts: BTreeMap<RefactoringType, usize>,
    pub n_distinct_types: usize,
    pub composition: Composition,
    /// Distinct trimmed, lowercased author emails.
    pub n_developers: usize,
    pub authorship: Authorship,
}

/// Developer identity used for authorship counts.
pub fn developer_key(email: &str) -> String {
    email.trim().to_lowercase()
}

pub fn measure(subgraph: &Subgraph) -> Result<SubgraphMetrics, MetricsError> {
    let first = subgraph.edges.first().ok_or_else(|| MetricsError::Empty(subgraph.id.clone()))?;

    let mut commits = BTreeSet::new();
    let mut developers = BTreeSet::new();
    let mut type_counts = BTreeMap::new();
    let (mut oldest, mut newest) = (first.timestamp, first.timestamp);
    for e in &subgraph.edges {
        let dev = developer_key(&e.author_email);
        if dev.is_empty() {
            return Err(MetricsError::MissingEmail {
                edge: alloc::format!("{} -> {} ({}, {})", e.source, e.target, e.rtype, e.commit),
            });
        }
        developers.insert(dev);
        commits.insert(&e.commit);
        *type_counts.entry(e.rtype).or_insert(0) += 1;
        oldest = oldest.min(e.timestamp);
        newest = newest.max(e.timestamp);
    }

    let age_seconds = newest.unix() - oldest.unix();
    let n_distinct_types = type_counts.len();
    Ok(SubgraphMetrics {
        subgraph_id: subgraph.id.to_string(),
        n_vertices: subgraph.vertices.len(),
        n_edges: subgraph.edges.len(),
        n_commits: commits.len(),
        age_seconds,
        age_days: age_seconds as f64 / SECONDS_PER_DAY as f64,
        type_counts,
        n_distinct_types,
        composition: if n_distinct_types == 1 { Composition::Homogeneous } else { Composition::Heterogeneous },
        n_developers: developers.len(),
        authorship: if developers.len() == 1 { Authorship::Single } else { Authorship::Multiple },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{partition, Edge, RefactoringGraph};
    use crate::record::CommitHash;
    use crate::signature::MethodRef;
    use crate::time::Timestamp;
    use alloc::vec::Vec;

    const DAY: i64 = SECONDS_PER_DAY;

    fn edge(src: &str, dst: &str, t: RefactoringType, commit: &str, ts: i64, email: &str) -> Edge {
        Edge {
            source: MethodRef::parse(src).unwrap(),
            target: MethodRef::parse(dst).unwrap(),
            rtype: t,
            commit: CommitHash::parse(commit).unwrap(),
            timestamp: Timestamp(ts),
            author_name: String::from("dev"),
            author_email: String::from(email),
        }
    }

    fn single(edges: Vec<Edge>) -> Subgraph {
        let mut g = RefactoringGraph::new();
        g.extend(edges);
        let mut parts = partition(&g);
        assert_eq!(parts.len(), 1);
        parts.pop().unwrap()
    }

    #[test]
    fn rename_and_revert() {
        let s = single(alloc::vec![
            edge("s.W#before(Function)", "s.W#filterBefore(Function)", RefactoringType::Rename, "794693525f", 0, "d@x"),
            edge(
                "s.W#filterBefore(Function)",
                "s.W#before(Function)",
                RefactoringType::Rename,
                "91e96d8084",
                6 * DAY,
                "d@x"
            ),
        ]);
        let m = measure(&s).unwrap();
        assert_eq!((m.n_vertices, m.n_edges, m.n_commits), (2, 2, 2));
        assert_eq!(m.age_days, 6.0);
        assert_eq!(m.composition, Composition::Homogeneous);
        assert_eq!(m.authorship, Authorship::Single);
    }

    #[test]
    fn emails_are_normalized() {
        let s = single(alloc::vec![
            edge("a.A#x()", "a.A#y()", RefactoringType::Rename, "aaaaaaa", 0, "Dev@X.org "),
            edge("a.A#y()", "a.A#z()", RefactoringType::Extract, "bbbbbbb", DAY / 2, "dev@x.org"),
        ]);
        let m = measure(&s).unwrap();
        assert_eq!(m.n_developers, 1);
        assert_eq!(m.age_days, 0.5);
        assert_eq!(m.composition, Composition::Heterogeneous);
        assert_eq!(m.type_counts[&RefactoringType::Rename], 1);
    }

    #[test]
    fn missing_email_names_edge() {
        let s = single(alloc::vec![edge("a.A#x()", "a.A#y()", RefactoringType::Rename, "aaaaaaa", 0, " ")]);
        let err = measure(&s).unwrap_err();
        assert!(matches!(&err, MetricsError::MissingEmail { edge } if edge.contains("a.A#x() -> a.A#y()")));
    }

    #[test]
    fn empty_subgraph_errors() {
        let s = Subgraph { id: "x".into(), vertices: Vec::new(), edges: Vec::new() };
        assert_eq!(measure(&s), Err(MetricsError::Empty("x".into())));
    }
}
