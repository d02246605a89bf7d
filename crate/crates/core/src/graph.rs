//! Refactoring graph construction and partitioning.
//!
//! The graph is the set union of every record's endpoints and edges. An
//! edge is keyed by `(source, target, type, commit)`: applying the same
//! refactoring again in a later commit is a distinct edge, so commit counts
//! and ages stay correct, while re-inserting the same record is a no-op.
//!
//! Edges point from the code before the refactoring to the code after it.
//! Renames and moves go old -> new, extracts go origin -> extracted method,
//! inlines go inlined method -> absorbing method, pull ups go subclass ->
//! superclass and push downs superclass -> subclass.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::record::{CommitHash, RefactoringRecord, RefactoringType};
use crate::signature::MethodRef;
use crate::time::Timestamp;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub source: MethodRef,
    pub target: MethodRef,
    pub rtype: RefactoringType,
    pub commit: CommitHash,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: MethodRef,
    pub target: MethodRef,
    pub rtype: RefactoringType,
    pub commit: CommitHash,
    pub timestamp: Timestamp,
    pub author_name: String,
    pub author_email: String,
}

impl Edge {
    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            source: self.source.clone(),
            target: self.target.clone(),
            rtype: self.rtype,
            commit: self.commit.clone(),
        }
    }

    fn metadata(&self) -> (Timestamp, &str, &str) {
        (self.timestamp, &self.author_email, &self.author_name)
    }
}

impl From<RefactoringRecord> for Edge {
    fn from(r: RefactoringRecord) -> Self {
        Self {
            source: r.source,
            target: r.target,
            rtype: r.rtype,
            commit: r.commit,
            timestamp: r.timestamp,
            author_name: r.author_name,
            author_email: r.author_email,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RefactoringGraph {
    vertices: BTreeSet<MethodRef>,
    edges: BTreeMap<EdgeKey, Edge>,
}

impl RefactoringGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an edge and its endpoints. When the key is already present the
    /// edge with the smallest `(timestamp, email, name)` is kept, so the
    /// result does not depend on insertion order.
    pub fn insert(&mut self, edge: Edge) {
        self.vertices.insert(edge.source.clone());
        self.vertices.insert(edge.target.clone());
        match self.edges.entry(edge.key()) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(edge);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                if edge.metadata() < slot.get().metadata() {
                    slot.insert(edge);
                }
            }
        }
    }

    /// Adds a vertex with no edges. Only used when reloading dumps.
    pub fn insert_vertex(&mut self, vertex: MethodRef) {
        self.vertices.insert(vertex);
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &MethodRef> {
        self.vertices.iter()
    }

    /// Edges in key order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, source: &str, target: &str) -> bool {
        self.edges.keys().any(|k| k.source.canonical() == source && k.target.canonical() == target)
    }
}

impl Extend<Edge> for RefactoringGraph {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

/// Builds the graph from filtered records.
pub fn build<I>(records: I) -> RefactoringGraph
where
    I: IntoIterator<Item = RefactoringRecord>,
{
    let mut graph = RefactoringGraph::new();
    graph.extend(records.into_iter().map(Edge::from));
    graph
}

/// One weakly connected component of a [`RefactoringGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    /// Smallest canonical vertex label.
    pub id: String,
    /// Sorted by canonical label.
    pub vertices: Vec<MethodRef>,
    /// Sorted by edge key.
    pub edges: Vec<Edge>,
}

impl Subgraph {
    pub fn commits(&self) -> BTreeSet<&CommitHash> {
        self.edges.iter().map(|e| &e.commit).collect()
    }

    pub fn commit_count(&self) -> usize {
        self.commits().len()
    }
}

/// Splits the graph into weakly connected components, sorted by id.
pub fn partition(graph: &RefactoringGraph) -> Vec<Subgraph> {
    let index: BTreeMap<&MethodRef, usize> = graph.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::new(index.len());
    for key in graph.edges.keys() {
        uf.union(index[&key.source], index[&key.target]);
    }

    // Vertices are visited in sorted order, so the first vertex seen for a
    // root is the component's smallest label.
    let mut slot_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parts: Vec<Subgraph> = Vec::new();
    for (v, &i) in &index {
        let root = uf.find(i);
        let slot = *slot_of_root.entry(root).or_insert_with(|| {
            parts.push(Subgraph { id: String::from(v.canonical()), vertices: Vec::new(), edges: Vec::new() });
            parts.len() - 1
        });
        parts[slot].vertices.push((*v).clone());
    }
    for (key, edge) in &graph.edges {
        let root = uf.find(index[&key.source]);
        parts[slot_of_root[&root]].edges.push(edge.clone());
    }
    parts.sort_by(|a, b| a.id.cmp(&b.id));
    parts
}

/// Subgraphs at or above a commit threshold, and the rest.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommitSplit {
    pub kept: Vec<Subgraph>,
    pub excluded: Vec<Subgraph>,
}

/// Keeps subgraphs whose edges span at least `min_commits` distinct commits.
pub fn split_by_commits(subgraphs: Vec<Subgraph>, min_commits: usize) -> CommitSplit {
    let (kept, excluded) = subgraphs.into_iter().partition(|s| s.commit_count() >= min_commits);
    CommitSplit { kept, excluded }
}

/// Drops single-commit subgraphs, returning the kept ones and how many
/// were dropped.
pub fn filter_multi_commit(subgraphs: Vec<Subgraph>) -> (Vec<Subgraph>, usize) {
    let split = split_by_commits(subgraphs, 2);
    (split.kept, split.excluded.len())
}
