use crate::model::{
    validate, Agent, AgentId, Assessment, Body, Imposition, Promise, PromiseGraph, StatementId,
    StructuralError, Superagent, Topic,
};

use super::ast::{Document, Item, Name};

fn agent_id(name: &Name) -> AgentId {
    AgentId::from_lexed(&name.text)
}

fn statement_id(name: &Name) -> StatementId {
    StatementId::from_lexed(&name.text)
}

/// Resolves a parsed document into a graph. Declaration order and spans
/// carry over unchanged; the result is only returned if it validates.
pub fn lower(doc: &Document) -> Result<PromiseGraph, Vec<StructuralError>> {
    let mut graph = PromiseGraph::new();
    let mut ordinal = 0u32;
    for item in &doc.items {
        match item {
            Item::Agent(d) => graph.agents.push(Agent {
                id: agent_id(&d.name),
                kind: d.kind.unwrap_or_default(),
                span: d.span,
            }),
            Item::Superagent(d) => graph.superagents.push(Superagent {
                id: agent_id(&d.name),
                members: d.members.iter().map(agent_id).collect(),
                span: d.span,
            }),
            Item::Promise(d) => {
                let b = &d.body;
                graph.promises.push(Promise {
                    id: statement_id(&d.id),
                    promiser: agent_id(&d.promiser),
                    promisees: d.promisees.iter().map(agent_id).collect(),
                    body: Body {
                        polarity: b.polarity,
                        topic: Topic::from_lexed(&b.topic.text),
                        text: b.text.as_ref().map(|s| s.value.clone()).unwrap_or_default(),
                        behalf_of: b.behalf.as_ref().map(agent_id),
                        affects: b.affects.iter().map(agent_id).collect(),
                        condition: b.condition.as_ref().map(|s| s.value.clone()),
                    },
                    scope: d.scope.iter().map(agent_id).collect(),
                    provenance: d.provenance.unwrap_or_default(),
                    span: d.span,
                })
            }
            Item::Imposition(d) => graph.impositions.push(Imposition {
                id: statement_id(&d.id),
                imposer: agent_id(&d.imposer),
                imposee: agent_id(&d.imposee),
                kind: d.kind.unwrap_or_default(),
                text: d.text.value.clone(),
                span: d.span,
            }),
            Item::Assessment(d) => {
                ordinal += 1;
                graph.assessments.push(Assessment {
                    id: statement_id(&d.id),
                    assessor: agent_id(&d.assessor),
                    target: statement_id(&d.target),
                    verdict: d.verdict,
                    note: d.note.as_ref().map(|s| s.value.clone()),
                    ordinal,
                    span: d.span,
                })
            }
        }
    }
    let errors = validate(&graph);
    if errors.is_empty() {
        Ok(graph)
    } else {
        Err(errors)
    }
}
