//! Corpus-level aggregation across projects.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::metrics::{Authorship, Composition, SubgraphMetrics};
use crate::record::RefactoringType;
use crate::stats::{self, FiveNumber, SpearmanError, SpearmanResult};

/// Label of the cross-project row in every per-project table.
pub const ALL: &str = "All";

/// One project's subgraphs after partitioning.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectInput {
    pub project: String,
    /// Every subgraph before the commit threshold.
    pub total_subgraphs: usize,
    /// Subgraphs whose edges all come from one commit.
    pub single_commit_subgraphs: usize,
    /// Metrics of the subgraphs that passed the commit threshold.
    pub metrics: Vec<SubgraphMetrics>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bucket {
    pub value: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Histograms {
    pub vertices: Vec<Bucket>,
    pub edges: Vec<Bucket>,
    pub commits: Vec<Bucket>,
    /// Distinct refactoring types per subgraph. Bucket 1 holds the
    /// homogeneous subgraphs; the remaining buckets are the heterogeneous ones.
    pub distinct_types: Vec<Bucket>,
}

/// Subgraphs per project split by commit count (one commit vs. more).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SubgraphCountRow {
    pub project: String,
    pub total: usize,
    pub single_commit: usize,
    pub multi_commit: usize,
}

/// A two-way classification row (homogeneous/heterogeneous,
/// single/multiple developers).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitRow {
    pub project: String,
    pub first: usize,
    pub second: usize,
}

impl SplitRow {
    pub fn total(&self) -> usize {
        self.first + self.second
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AgeRow {
    pub project: String,
    /// `None` when the project has no subgraphs.
    pub days: Option<FiveNumber>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TypeRow {
    pub rtype: RefactoringType,
    pub occurrences: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum Correlation {
    Computed(SpearmanResult),
    NotComputed { reason: String },
}

impl Correlation {
    fn from_result(r: Result<SpearmanResult, SpearmanError>) -> Self {
        match r {
            Ok(r) => Self::Computed(r),
            Err(e) => Self::NotComputed { reason: e.to_string() },
        }
    }

    pub fn result(&self) -> Option<&SpearmanResult> {
        match self {
            Self::Computed(r) => Some(r),
            Self::NotComputed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Correlations {
    /// Developers vs. commits over every kept subgraph.
    pub developers_vs_commits: Correlation,
    /// Project age vs. median subgraph age in days, one point per project.
    pub project_age_vs_median_age: Correlation,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProjectMetrics {
    pub project: String,
    pub subgraphs: Vec<SubgraphMetrics>,
}

/// Aggregate statistics. Per-project tables list projects in input order
/// followed by an [`ALL`] row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorpusStats {
    pub projects: Vec<String>,
    pub subgraph_counts: Vec<SubgraphCountRow>,
    pub histograms: Histograms,
    pub ages: Vec<AgeRow>,
    /// Descending by occurrences, then by type name. All eight types appear.
    pub type_frequency: Vec<TypeRow>,
    pub total_edges: usize,
    /// `first` = homogeneous, `second` = heterogeneous.
    pub composition: Vec<SplitRow>,
    /// `first` = single developer, `second` = multiple developers.
    pub authorship: Vec<SplitRow>,
    pub correlations: Correlations,
    pub subgraphs: Vec<ProjectMetrics>,
}

impl CorpusStats {
    pub fn kept_subgraphs(&self) -> usize {
        self.subgraphs.iter().map(|p| p.subgraphs.len()).sum()
    }
}

fn histogram<'a>(
    metrics: impl Iterator<Item = &'a SubgraphMetrics>,
    f: impl Fn(&SubgraphMetrics) -> usize,
) -> Vec<Bucket> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for m in metrics {
        *counts.entry(f(m)).or_insert(0) += 1;
    }
    counts.into_iter().map(|(value, count)| Bucket { value, count }).collect()
}

fn split_row(project: &str, metrics: &[SubgraphMetrics], is_first: impl Fn(&SubgraphMetrics) -> bool) -> SplitRow {
    let first = metrics.iter().filter(|m| is_first(m)).count();
    SplitRow { project: project.to_string(), first, second: metrics.len() - first }
}

fn with_all_row(mut rows: Vec<SplitRow>) -> Vec<SplitRow> {
    let all = SplitRow {
        project: ALL.to_string(),
        first: rows.iter().map(|r| r.first).sum(),
        second: rows.iter().map(|r| r.second).sum(),
    };
    rows.push(all);
    rows
}

fn ages(metrics: &[SubgraphMetrics]) -> Vec<f64> {
    metrics.iter().map(|m| m.age_days).collect()
}

/// Builds every table and histogram. `project_ages` maps project name to
/// its age (any unit) for the project-level correlation.
pub fn aggregate(inputs: &[ProjectInput], project_ages: Option<&BTreeMap<String, f64>>) -> CorpusStats {
    let all: Vec<SubgraphMetrics> = inputs.iter().flat_map(|p| p.metrics.iter().cloned()).collect();

    let mut subgraph_counts: Vec<SubgraphCountRow> = inputs
        .iter()
        .map(|p| SubgraphCountRow {
            project: p.project.clone(),
            total: p.total_subgraphs,
            single_commit: p.single_commit_subgraphs,
            multi_commit: p.total_subgraphs - p.single_commit_subgraphs,
        })
        .collect();
    subgraph_counts.push(SubgraphCountRow {
        project: ALL.to_string(),
        total: subgraph_counts.iter().map(|r| r.total).sum(),
        single_commit: subgraph_counts.iter().map(|r| r.single_commit).sum(),
        multi_commit: subgraph_counts.iter().map(|r| r.multi_commit).sum(),
    });

    let histograms = Histograms {
        vertices: histogram(all.iter(), |m| m.n_vertices),
        edges: histogram(all.iter(), |m| m.n_edges),
        commits: histogram(all.iter(), |m| m.n_commits),
        distinct_types: histogram(all.iter(), |m| m.n_distinct_types),
    };

    let mut age_rows: Vec<AgeRow> =
        inputs.iter().map(|p| AgeRow { project: p.project.clone(), days: FiveNumber::of(&ages(&p.metrics)) }).collect();
    age_rows.push(AgeRow { project: ALL.to_string(), days: FiveNumber::of(&ages(&all)) });

    let mut by_type: BTreeMap<RefactoringType, usize> = RefactoringType::ALL.iter().map(|&t| (t, 0)).collect();
    for m in &all {
        for (t, c) in &m.type_counts {
            *by_type.entry(*t).or_insert(0) += c;
        }
    }
    let mut type_frequency: Vec<TypeRow> =
        by_type.into_iter().map(|(rtype, occurrences)| TypeRow { rtype, occurrences }).collect();
    type_frequency.sort_by(|a, b| b.occurrences.cmp(&a.occurrences).then(a.rtype.as_str().cmp(b.rtype.as_str())));

    let composition = with_all_row(
        inputs
            .iter()
            .map(|p| split_row(&p.project, &p.metrics, |m| m.composition == Composition::Homogeneous))
            .collect(),
    );
    let authorship = with_all_row(
        inputs.iter().map(|p| split_row(&p.project, &p.metrics, |m| m.authorship == Authorship::Single)).collect(),
    );

    CorpusStats {
        projects: inputs.iter().map(|p| p.project.clone()).collect(),
        subgraph_counts,
        histograms,
        ages: age_rows,
        type_frequency,
        total_edges: all.iter().map(|m| m.n_edges).sum(),
        composition,
        authorship,
        correlations: correlate_corpus(inputs, project_ages),
        subgraphs: inputs
            .iter()
            .map(|p| ProjectMetrics { project: p.project.clone(), subgraphs: p.metrics.clone() })
            .collect(),
    }
}

/// Developers-vs-commits over all kept subgraphs, and project age vs.
/// median subgraph age over projects that have an age and at least one
/// kept subgraph.
pub fn correlate_corpus(inputs: &[ProjectInput], project_ages: Option<&BTreeMap<String, f64>>) -> Correlations {
    let (devs, commits): (Vec<f64>, Vec<f64>) =
        inputs.iter().flat_map(|p| &p.metrics).map(|m| (m.n_developers as f64, m.n_commits as f64)).unzip();
    let developers_vs_commits = Correlation::from_result(stats::spearman(&devs, &commits));

    let project_age_vs_median_age = match project_ages {
        None => Correlation::NotComputed { reason: "project ages not provided".to_string() },
        Some(ages_by_project) => {
            let (xs, ys): (Vec<f64>, Vec<f64>) = inputs
                .iter()
                .filter_map(|p| {
                    let age = *ages_by_project.get(&p.project)?;
                    let median = stats::median(&ages(&p.metrics))?;
                    Some((age, median))
                })
                .unzip();
            Correlation::from_result(stats::spearman(&xs, &ys))
        }
    };

    Correlations { developers_vs_commits, project_age_vs_median_age }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(
        id: &str,
        v: usize,
        e: usize,
        c: usize,
        days: i64,
        types: &[(RefactoringType, usize)],
        devs: usize,
    ) -> SubgraphMetrics {
        let type_counts: BTreeMap<_, _> = types.iter().copied().collect();
        SubgraphMetrics {
            subgraph_id: id.to_string(),
            n_vertices: v,
            n_edges: e,
            n_commits: c,
            age_seconds: days * 86_400,
            age_days: days as f64,
            n_distinct_types: type_counts.len(),
            composition: if type_counts.len() == 1 { Composition::Homogeneous } else { Composition::Heterogeneous },
            type_counts,
            n_developers: devs,
            authorship: if devs == 1 { Authorship::Single } else { Authorship::Multiple },
        }
    }

    #[test]
    fn singleton_histograms() {
        let input = ProjectInput {
            project: "p".into(),
            total_subgraphs: 1,
            single_commit_subgraphs: 0,
            metrics: vec![m("a", 2, 2, 2, 6, &[(RefactoringType::Rename, 2)], 1)],
        };
        let s = aggregate(&[input], None);
        for h in [&s.histograms.vertices, &s.histograms.edges, &s.histograms.commits, &s.histograms.distinct_types] {
            assert_eq!(h.len(), 1);
            assert_eq!(h[0].count, 1);
        }
        assert_eq!(s.type_frequency[0], TypeRow { rtype: RefactoringType::Rename, occurrences: 2 });
        assert_eq!(s.type_frequency.len(), 8);
        // Zero-count types follow in name order.
        assert_eq!(s.type_frequency[1].rtype, RefactoringType::Extract);
        assert!(matches!(s.correlations.developers_vs_commits, Correlation::NotComputed { .. }));
        assert!(
            matches!(&s.correlations.project_age_vs_median_age, Correlation::NotComputed { reason } if reason.contains("not provided"))
        );
    }

    #[test]
    fn all_rows_sum_projects() {
        let a = ProjectInput {
            project: "zeta".into(),
            total_subgraphs: 5,
            single_commit_subgraphs: 3,
            metrics: vec![
                m("a", 2, 2, 2, 1, &[(RefactoringType::Rename, 2)], 1),
                m("b", 3, 2, 2, 3, &[(RefactoringType::Rename, 1), (RefactoringType::Move, 1)], 2),
            ],
        };
        let b = ProjectInput {
            project: "alpha".into(),
            total_subgraphs: 2,
            single_commit_subgraphs: 1,
            metrics: vec![m("c", 4, 3, 3, 10, &[(RefactoringType::Extract, 3)], 2)],
        };
        let s = aggregate(&[a, b], None);
        assert_eq!(s.projects, ["zeta", "alpha"]);
        let all = s.subgraph_counts.last().unwrap();
        assert_eq!((all.total, all.single_commit, all.multi_commit), (7, 4, 3));
        assert_eq!(s.composition.last().unwrap(), &SplitRow { project: ALL.into(), first: 2, second: 1 });
        assert_eq!(s.authorship.last().unwrap(), &SplitRow { project: ALL.into(), first: 1, second: 2 });
        assert_eq!(s.total_edges, 7);
        assert_eq!(s.type_frequency.iter().map(|t| t.occurrences).sum::<usize>(), 7);
        assert_eq!(s.ages.last().unwrap().days.unwrap().median, 3.0);
    }

    #[test]
    fn constant_developers_is_not_computed() {
        let input = ProjectInput {
            project: "p".into(),
            total_subgraphs: 3,
            single_commit_subgraphs: 0,
            metrics: (2..5).map(|c| m("x", 2, 2, c, 1, &[(RefactoringType::Move, 2)], 1)).collect(),
        };
        let c = correlate_corpus(&[input], None);
        assert!(
            matches!(&c.developers_vs_commits, Correlation::NotComputed { reason } if reason.contains("constant series"))
        );
    }

    #[test]
    fn empty_corpus() {
        let s = aggregate(&[], None);
        assert_eq!(
            s.subgraph_counts,
            vec![SubgraphCountRow { project: ALL.into(), total: 0, single_commit: 0, multi_commit: 0 }]
        );
        assert!(s.histograms.vertices.is_empty());
        assert_eq!(s.ages, vec![AgeRow { project: ALL.into(), days: None }]);
    }
}
