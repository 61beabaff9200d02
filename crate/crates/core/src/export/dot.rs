//! Graphviz output. One node per agent, one edge per promiser/promisee
//! pair, superagents as (nested) clusters. Edge tooltips carry promise ids.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::model::{AgentKind, PromiseGraph, Provenance, Superagent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeLabel {
    Id,
    #[default]
    Topic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotOptions {
    pub cluster_superagents: bool,
    pub label: EdgeLabel,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            cluster_superagents: true,
            label: EdgeLabel::Topic,
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn shape(kind: AgentKind) -> &'static str {
    match kind {
        AgentKind::Human => "ellipse",
        AgentKind::Organization => "box",
        AgentKind::Software => "component",
        AgentKind::Hardware => "box3d",
        AgentKind::System => "tab",
        AgentKind::Standard => "note",
    }
}

struct Writer<'g> {
    graph: &'g PromiseGraph,
    out: String,
    placed_agents: BTreeSet<&'g str>,
    placed_clusters: BTreeSet<&'g str>,
}

impl<'g> Writer<'g> {
    fn indent(&mut self, depth: usize) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
    }

    fn agent_node(&mut self, name: &'g str, depth: usize) {
        let Some(agent) = self.graph.agent(name) else {
            return;
        };
        if !self.placed_agents.insert(name) {
            return;
        }
        self.indent(depth);
        let _ = writeln!(self.out, "{} [shape={}];", quote(name), shape(agent.kind));
    }

    fn cluster(&mut self, sa: &'g Superagent, depth: usize) {
        if !self.placed_clusters.insert(sa.id.as_str()) {
            return;
        }
        self.indent(depth);
        let _ = writeln!(
            self.out,
            "subgraph {} {{",
            quote(&format!("cluster_{}", sa.id))
        );
        self.indent(depth + 1);
        let _ = writeln!(self.out, "label={};", quote(sa.id.as_str()));
        // anchor for edges that start or end at the group itself
        self.indent(depth + 1);
        let _ = writeln!(
            self.out,
            "{} [shape=point, style=invis, label=\"\"];",
            quote(sa.id.as_str())
        );
        for m in &sa.members {
            match self.graph.superagent(m.as_str()) {
                Some(inner) => self.cluster(inner, depth + 1),
                None => self.agent_node(m.as_str(), depth + 1),
            }
        }
        self.indent(depth);
        self.out.push_str("}\n");
    }
}

/// Renders a graph as a DOT digraph. Output depends only on the graph and
/// the options.
pub fn to_dot(graph: &PromiseGraph, options: &DotOptions) -> String {
    if graph.agents.is_empty() && graph.superagents.is_empty() && graph.promises.is_empty() {
        return "digraph promises {}\n".to_string();
    }

    let mut w = Writer {
        graph,
        out: String::from("digraph promises {\n"),
        placed_agents: BTreeSet::new(),
        placed_clusters: BTreeSet::new(),
    };
    if options.cluster_superagents {
        w.out.push_str("  compound=true;\n");
    }
    w.out.push_str("  node [fontname=\"Helvetica\"];\n");
    w.out.push_str("  edge [fontname=\"Helvetica\"];\n");

    if options.cluster_superagents {
        let nested: BTreeSet<&str> = graph
            .superagents
            .iter()
            .flat_map(|s| s.members.iter().map(|m| m.as_str()))
            .collect();
        for sa in graph
            .superagents
            .iter()
            .filter(|s| !nested.contains(s.id.as_str()))
        {
            w.cluster(sa, 1);
        }
        // only reachable when membership is cyclic
        for sa in &graph.superagents {
            w.cluster(sa, 1);
        }
    } else {
        for sa in &graph.superagents {
            let _ = writeln!(w.out, "  {} [shape=doubleoctagon];", quote(sa.id.as_str()));
        }
    }
    for a in &graph.agents {
        w.agent_node(a.id.as_str(), 1);
    }

    let mut out = w.out;
    for p in &graph.promises {
        let text = match options.label {
            EdgeLabel::Topic => p.topic().as_str(),
            EdgeLabel::Id => p.id.as_str(),
        };
        let label = format!("{}{}", p.polarity().sign(), text);
        for to in &p.promisees {
            let mut attrs = vec![
                format!("label={}", quote(&label)),
                format!("tooltip={}", quote(p.id.as_str())),
            ];
            if p.provenance != Provenance::Explicit {
                attrs.push("style=dashed".to_string());
            }
            if options.cluster_superagents {
                if graph.superagent(p.promiser.as_str()).is_some() {
                    attrs.push(format!(
                        "ltail={}",
                        quote(&format!("cluster_{}", p.promiser))
                    ));
                }
                if graph.superagent(to.as_str()).is_some() {
                    attrs.push(format!("lhead={}", quote(&format!("cluster_{to}"))));
                }
            }
            let _ = writeln!(
                out,
                "  {} -> {} [{}];",
                quote(p.promiser.as_str()),
                quote(to.as_str()),
                attrs.join(", ")
            );
        }
    }
    out.push_str("}\n");
    out
}
