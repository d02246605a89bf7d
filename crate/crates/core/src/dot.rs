//! Graphviz rendering of a single subgraph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Subgraph;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders `subgraph` as a `digraph`. Nodes are named by their canonical
/// signature; each edge is labeled with its type, short commit and date.
/// Node and edge statements are sorted so output is byte-stable.
pub fn emit_dot(subgraph: &Subgraph) -> String {
    let mut nodes: Vec<String> = subgraph.vertices.iter().map(|v| format!("  {};\n", quote(v.canonical()))).collect();
    nodes.sort();
    let mut edges: Vec<String> = subgraph
        .edges
        .iter()
        .map(|e| {
            // `\n` stays a literal escape here: it is Graphviz's line break.
            let label = format!("{}\\n{}\\n{}", e.rtype, e.commit.short(), e.timestamp.display_date());
            format!("  {} -> {} [label=\"{}\"];\n", quote(e.source.canonical()), quote(e.target.canonical()), label)
        })
        .collect();
    edges.sort();

    let mut out = format!("digraph {} {{\n  node [shape=box];\n", quote(&subgraph.id));
    nodes.into_iter().chain(edges).for_each(|s| out.push_str(&s));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{partition, Edge, RefactoringGraph};
    use crate::record::{CommitHash, RefactoringType};
    use crate::signature::MethodRef;
    use crate::time::Timestamp;

    #[test]
    fn renders_sorted_statements() {
        let mut g = RefactoringGraph::new();
        for (m, c) in [("z", "2222222aa"), ("x", "1111111bb")] {
            g.insert(Edge {
                source: MethodRef::parse("util.Foo#m1()").unwrap(),
                target: MethodRef::parse(&format!("util.Foo#{m}()")).unwrap(),
                rtype: RefactoringType::Extract,
                commit: CommitHash::parse(c).unwrap(),
                timestamp: Timestamp::from_civil(2019, 3, 4, 23, 59, 59),
                author_name: "A".into(),
                author_email: "a@x".into(),
            });
        }
        let dot = emit_dot(&partition(&g)[0]);
        assert_eq!(
            dot,
            "digraph \"util.Foo#m1()\" {\n  node [shape=box];\n  \"util.Foo#m1()\";\n  \"util.Foo#x()\";\n  \"util.Foo#z()\";\n  \
             \"util.Foo#m1()\" -> \"util.Foo#x()\" [label=\"extract\\n1111111\\n2019-03-04\"];\n  \
             \"util.Foo#m1()\" -> \"util.Foo#z()\" [label=\"extract\\n2222222\\n2019-03-04\"];\n}\n"
        );
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
    }
}
