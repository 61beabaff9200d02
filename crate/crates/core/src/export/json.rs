//! Canonical JSON form of a graph.
//!
//! Keys are sorted, entities keep declaration order, output is compact
//! UTF-8 followed by a single newline. Absent optional fields are `null`.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::model::{
    validate, Agent, AgentId, AgentKind, Assessment, Body, Imposition, ImpositionKind, Polarity,
    Promise, PromiseGraph, Provenance, StatementId, StructuralError, Superagent, Topic, Verdict,
};
use crate::span::SourceSpan;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsonError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unresolved reference at {path}: `{name}` is not declared")]
    UnresolvedReference { path: String, name: String },
    #[error("invalid graph: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Structural(Vec<StructuralError>),
}

impl JsonError {
    pub fn path(&self) -> Option<&str> {
        match self {
            JsonError::Schema { path, .. } | JsonError::UnresolvedReference { path, .. } => {
                Some(path)
            }
            JsonError::Malformed { .. } => Some("$"),
            JsonError::Structural(_) => None,
        }
    }
}

pub(crate) fn span_value(span: &SourceSpan) -> Value {
    json!({
        "start": span.start,
        "end": span.end,
        "line": span.line,
        "col": span.column,
    })
}

fn names(ids: &[AgentId]) -> Value {
    Value::Array(ids.iter().map(|a| Value::from(a.as_str())).collect())
}

pub fn graph_value(graph: &PromiseGraph) -> Value {
    let agents: Vec<Value> = graph
        .agents
        .iter()
        .map(|a| json!({"id": a.id.as_str(), "kind": a.kind.as_str(), "span": span_value(&a.span)}))
        .collect();
    let superagents: Vec<Value> = graph
        .superagents
        .iter()
        .map(|s| json!({"id": s.id.as_str(), "members": names(&s.members), "span": span_value(&s.span)}))
        .collect();
    let promises: Vec<Value> = graph
        .promises
        .iter()
        .map(|p| {
            json!({
                "id": p.id.as_str(),
                "from": p.promiser.as_str(),
                "to": names(&p.promisees),
                "scope": names(&p.scope),
                "provenance": p.provenance.as_str(),
                "body": {
                    "polarity": p.body.polarity.as_str(),
                    "topic": p.body.topic.as_str(),
                    "text": p.body.text,
                    "behalf": p.body.behalf_of.as_ref().map(|b| b.as_str()),
                    "affects": names(&p.body.affects),
                    "condition": p.body.condition,
                },
                "span": span_value(&p.span),
            })
        })
        .collect();
    let impositions: Vec<Value> = graph
        .impositions
        .iter()
        .map(|i| {
            json!({
                "id": i.id.as_str(),
                "from": i.imposer.as_str(),
                "to": i.imposee.as_str(),
                "kind": i.kind.as_str(),
                "text": i.text,
                "span": span_value(&i.span),
            })
        })
        .collect();
    let assessments: Vec<Value> = graph
        .assessments
        .iter()
        .map(|a| {
            json!({
                "id": a.id.as_str(),
                "by": a.assessor.as_str(),
                "on": a.target.as_str(),
                "verdict": a.verdict.as_str(),
                "note": a.note,
                "ordinal": a.ordinal,
                "span": span_value(&a.span),
            })
        })
        .collect();
    json!({
        "agents": agents,
        "superagents": superagents,
        "promises": promises,
        "impositions": impositions,
        "assessments": assessments,
    })
}

/// Compact rendering plus trailing newline. `serde_json` maps are ordered by
/// key, which gives the canonical key order.
pub(crate) fn canonical_bytes(value: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec(value).expect("JSON values always serialize");
    out.push(b'\n');
    out
}

pub fn to_json(graph: &PromiseGraph) -> Vec<u8> {
    canonical_bytes(&graph_value(graph))
}

struct Reader;

type R<T> = Result<T, JsonError>;

fn schema(path: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

impl Reader {
    fn object<'v>(&self, v: &'v Value, path: &str, keys: &[&str]) -> R<&'v Map<String, Value>> {
        let map = v
            .as_object()
            .ok_or_else(|| schema(path, "expected an object"))?;
        for k in keys {
            if !map.contains_key(*k) {
                return Err(schema(&format!("{path}.{k}"), "missing key"));
            }
        }
        if let Some(extra) = map.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(schema(&format!("{path}.{extra}"), "unexpected key"));
        }
        Ok(map)
    }

    fn array<'v>(&self, v: &'v Value, path: &str) -> R<&'v Vec<Value>> {
        v.as_array()
            .ok_or_else(|| schema(path, "expected an array"))
    }

    fn string<'v>(&self, v: &'v Value, path: &str) -> R<&'v str> {
        v.as_str().ok_or_else(|| schema(path, "expected a string"))
    }

    fn opt_string(&self, v: &Value, path: &str) -> R<Option<String>> {
        if v.is_null() {
            Ok(None)
        } else {
            self.string(v, path).map(|s| Some(s.to_string()))
        }
    }

    fn uint(&self, v: &Value, path: &str) -> R<u64> {
        v.as_u64()
            .ok_or_else(|| schema(path, "expected a non-negative integer"))
    }

    fn parse<T: FromStr>(&self, v: &Value, path: &str) -> R<T>
    where
        T::Err: std::fmt::Display,
    {
        let s = self.string(v, path)?;
        s.parse::<T>().map_err(|e| schema(path, e.to_string()))
    }

    fn agent_list(&self, v: &Value, path: &str) -> R<Vec<AgentId>> {
        self.array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, x)| self.parse::<AgentId>(x, &format!("{path}[{i}]")))
            .collect()
    }

    fn span(&self, v: &Value, path: &str) -> R<SourceSpan> {
        let m = self.object(v, path, &["start", "end", "line", "col"])?;
        let start = self.uint(&m["start"], &format!("{path}.start"))? as usize;
        let end = self.uint(&m["end"], &format!("{path}.end"))? as usize;
        if start > end {
            return Err(schema(path, "span start exceeds end"));
        }
        let line = self.uint(&m["line"], &format!("{path}.line"))?;
        let col = self.uint(&m["col"], &format!("{path}.col"))?;
        let line =
            u32::try_from(line).map_err(|_| schema(&format!("{path}.line"), "out of range"))?;
        let col = u32::try_from(col).map_err(|_| schema(&format!("{path}.col"), "out of range"))?;
        Ok(SourceSpan::new(start, end, line, col))
    }

    fn graph(&self, root: &Value) -> R<PromiseGraph> {
        let top = self.object(
            root,
            "$",
            &[
                "agents",
                "superagents",
                "promises",
                "impositions",
                "assessments",
            ],
        )?;
        let mut g = PromiseGraph::new();

        for (i, v) in self.array(&top["agents"], "$.agents")?.iter().enumerate() {
            let p = format!("$.agents[{i}]");
            let m = self.object(v, &p, &["id", "kind", "span"])?;
            g.agents.push(Agent {
                id: self.parse(&m["id"], &format!("{p}.id"))?,
                kind: self.parse::<AgentKind>(&m["kind"], &format!("{p}.kind"))?,
                span: self.span(&m["span"], &format!("{p}.span"))?,
            });
        }

        for (i, v) in self
            .array(&top["superagents"], "$.superagents")?
            .iter()
            .enumerate()
        {
            let p = format!("$.superagents[{i}]");
            let m = self.object(v, &p, &["id", "members", "span"])?;
            g.superagents.push(Superagent {
                id: self.parse(&m["id"], &format!("{p}.id"))?,
                members: self.agent_list(&m["members"], &format!("{p}.members"))?,
                span: self.span(&m["span"], &format!("{p}.span"))?,
            });
        }

        for (i, v) in self
            .array(&top["promises"], "$.promises")?
            .iter()
            .enumerate()
        {
            let p = format!("$.promises[{i}]");
            let m = self.object(
                v,
                &p,
                &["id", "from", "to", "scope", "provenance", "body", "span"],
            )?;
            let bp = format!("{p}.body");
            let b = self.object(
                &m["body"],
                &bp,
                &[
                    "polarity",
                    "topic",
                    "text",
                    "behalf",
                    "affects",
                    "condition",
                ],
            )?;
            let behalf = if b["behalf"].is_null() {
                None
            } else {
                Some(self.parse::<AgentId>(&b["behalf"], &format!("{bp}.behalf"))?)
            };
            g.promises.push(Promise {
                id: self.parse(&m["id"], &format!("{p}.id"))?,
                promiser: self.parse(&m["from"], &format!("{p}.from"))?,
                promisees: self.agent_list(&m["to"], &format!("{p}.to"))?,
                body: Body {
                    polarity: self.parse::<Polarity>(&b["polarity"], &format!("{bp}.polarity"))?,
                    topic: self.parse::<Topic>(&b["topic"], &format!("{bp}.topic"))?,
                    text: self.string(&b["text"], &format!("{bp}.text"))?.to_string(),
                    behalf_of: behalf,
                    affects: self.agent_list(&b["affects"], &format!("{bp}.affects"))?,
                    condition: self.opt_string(&b["condition"], &format!("{bp}.condition"))?,
                },
                scope: self.agent_list(&m["scope"], &format!("{p}.scope"))?,
                provenance: self
                    .parse::<Provenance>(&m["provenance"], &format!("{p}.provenance"))?,
                span: self.span(&m["span"], &format!("{p}.span"))?,
            });
        }

        for (i, v) in self
            .array(&top["impositions"], "$.impositions")?
            .iter()
            .enumerate()
        {
            let p = format!("$.impositions[{i}]");
            let m = self.object(v, &p, &["id", "from", "to", "kind", "text", "span"])?;
            g.impositions.push(Imposition {
                id: self.parse(&m["id"], &format!("{p}.id"))?,
                imposer: self.parse(&m["from"], &format!("{p}.from"))?,
                imposee: self.parse(&m["to"], &format!("{p}.to"))?,
                kind: self.parse::<ImpositionKind>(&m["kind"], &format!("{p}.kind"))?,
                text: self.string(&m["text"], &format!("{p}.text"))?.to_string(),
                span: self.span(&m["span"], &format!("{p}.span"))?,
            });
        }

        for (i, v) in self
            .array(&top["assessments"], "$.assessments")?
            .iter()
            .enumerate()
        {
            let p = format!("$.assessments[{i}]");
            let m = self.object(
                v,
                &p,
                &["id", "by", "on", "verdict", "note", "ordinal", "span"],
            )?;
            let ordinal = self.uint(&m["ordinal"], &format!("{p}.ordinal"))?;
            g.assessments.push(Assessment {
                id: self.parse(&m["id"], &format!("{p}.id"))?,
                assessor: self.parse(&m["by"], &format!("{p}.by"))?,
                target: self.parse::<StatementId>(&m["on"], &format!("{p}.on"))?,
                verdict: self.parse::<Verdict>(&m["verdict"], &format!("{p}.verdict"))?,
                note: self.opt_string(&m["note"], &format!("{p}.note"))?,
                ordinal: u32::try_from(ordinal)
                    .map_err(|_| schema(&format!("{p}.ordinal"), "out of range"))?,
                span: self.span(&m["span"], &format!("{p}.span"))?,
            });
        }

        Ok(g)
    }
}

/// First reference that names nothing declared, with its JSON path.
fn first_unresolved(g: &PromiseGraph) -> Option<JsonError> {
    let declared: BTreeSet<&str> = g
        .agents
        .iter()
        .map(|a| a.id.as_str())
        .chain(g.superagents.iter().map(|s| s.id.as_str()))
        .collect();
    let promise_ids: BTreeSet<&str> = g.promises.iter().map(|p| p.id.as_str()).collect();
    let miss = |path: String, name: &str| JsonError::UnresolvedReference {
        path,
        name: name.to_string(),
    };
    let check_list = |base: String, list: &[AgentId]| {
        list.iter()
            .enumerate()
            .find(|(_, a)| !declared.contains(a.as_str()))
            .map(|(j, a)| miss(format!("{base}[{j}]"), a.as_str()))
    };

    for (i, s) in g.superagents.iter().enumerate() {
        if let Some(e) = check_list(format!("$.superagents[{i}].members"), &s.members) {
            return Some(e);
        }
    }
    for (i, p) in g.promises.iter().enumerate() {
        let base = format!("$.promises[{i}]");
        if !declared.contains(p.promiser.as_str()) {
            return Some(miss(format!("{base}.from"), p.promiser.as_str()));
        }
        if let Some(e) = check_list(format!("{base}.to"), &p.promisees) {
            return Some(e);
        }
        if let Some(e) = check_list(format!("{base}.scope"), &p.scope) {
            return Some(e);
        }
        if let Some(b) = p
            .body
            .behalf_of
            .as_ref()
            .filter(|b| !declared.contains(b.as_str()))
        {
            return Some(miss(format!("{base}.body.behalf"), b.as_str()));
        }
        if let Some(e) = check_list(format!("{base}.body.affects"), &p.body.affects) {
            return Some(e);
        }
    }
    for (i, imp) in g.impositions.iter().enumerate() {
        for (key, name) in [("from", &imp.imposer), ("to", &imp.imposee)] {
            if !declared.contains(name.as_str()) {
                return Some(miss(format!("$.impositions[{i}].{key}"), name.as_str()));
            }
        }
    }
    for (i, a) in g.assessments.iter().enumerate() {
        if !declared.contains(a.assessor.as_str()) {
            return Some(miss(format!("$.assessments[{i}].by"), a.assessor.as_str()));
        }
        if !promise_ids.contains(a.target.as_str()) {
            return Some(miss(format!("$.assessments[{i}].on"), a.target.as_str()));
        }
    }
    None
}

/// Inverse of [`to_json`]. The result is a validated graph.
pub fn from_json(bytes: &[u8]) -> Result<PromiseGraph, JsonError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| JsonError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let graph = Reader.graph(&value)?;
    if let Some(err) = first_unresolved(&graph) {
        return Err(err);
    }
    let errors = validate(&graph);
    if errors.is_empty() {
        Ok(graph)
    } else {
        Err(JsonError::Structural(errors))
    }
}
