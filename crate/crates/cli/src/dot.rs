//! Graphviz DOT rendering: the plain associated graph, and the clustered
//! variant with one `subgraph cluster_i` box per reported group.

use std::fmt::Write;

use flowgroup::{Digraph, Report};

fn quote(id: &str) -> String {
    let mut quoted = String::with_capacity(id.len() + 2);
    quoted.push('"');
    for ch in id.chars() {
        if ch == '"' || ch == '\\' {
            quoted.push('\\');
        }
        quoted.push(ch);
    }
    quoted.push('"');
    quoted
}

fn edge_lines(graph: &Digraph, indent: &str, out: &mut String) {
    for (u, v, w) in graph.edges() {
        writeln!(
            out,
            "{indent}{} -> {} [label={}];",
            quote(graph.id(u)),
            quote(graph.id(v)),
            quote(&format!("{w}"))
        )
        .expect("writing to string");
    }
}

/// The associated graph as a `digraph` with weight labels.
pub fn plain_graph(name: &str, graph: &Digraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for id in graph.ids() {
        writeln!(out, "    {};", quote(id)).unwrap();
    }
    edge_lines(graph, "    ", &mut out);
    out.push_str("}\n");
    out
}

/// The associated graph with each reported group drawn as a cluster box.
pub fn clustered_graph(name: &str, graph: &Digraph, report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for (index, cluster) in report.clusters.iter().enumerate() {
        writeln!(out, "    subgraph cluster_{index} {{").unwrap();
        writeln!(
            out,
            "        label={};",
            quote(&format!(
                "group {index} ({} {:.4}, {})",
                report.config.metric.as_str(),
                cluster.score,
                cluster.termination.as_str()
            ))
        )
        .unwrap();
        for member in &cluster.members {
            writeln!(out, "        {};", quote(member)).unwrap();
        }
        out.push_str("    }\n");
    }
    edge_lines(graph, "    ", &mut out);
    out.push_str("}\n");
    out
}
