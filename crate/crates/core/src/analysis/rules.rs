use std::collections::{BTreeMap, BTreeSet};

use crate::model::{AgentId, ImpositionKind, Polarity, PromiseGraph, Topic};
use crate::span::SourceSpan;

use super::binding::Binding;
use super::findings::{Finding, Rule};

fn agent_span(graph: &PromiseGraph, id: &AgentId) -> SourceSpan {
    graph.declaration_span(id.as_str()).unwrap_or_default()
}

/// One warning per offer and per accept that is not part of any binding.
pub fn unbound(graph: &PromiseGraph, bindings: &[Binding]) -> Vec<Finding> {
    let bound: BTreeSet<&str> = bindings
        .iter()
        .flat_map(|b| [b.offer.as_str(), b.accept.as_str()])
        .collect();
    graph
        .promises
        .iter()
        .filter(|p| !bound.contains(p.id.as_str()))
        .map(|p| {
            let (rule, what) = match p.polarity() {
                Polarity::Offer => (Rule::UnboundOffer, "offer"),
                Polarity::Accept => (Rule::UnboundAccept, "accept"),
            };
            Finding::new(
                rule,
                vec![p.id.to_string(), p.promiser.to_string()],
                format!(
                    "{what} `{}` by {} on topic `{}` has no complementary promise",
                    p.id,
                    p.promiser,
                    p.topic()
                ),
                p.span,
            )
        })
        .collect()
}

/// Unbound accepts whose counterparty answers with an accept of its own on
/// the same topic: both sides accept and nobody offers.
pub fn polarity_mismatch(graph: &PromiseGraph, bindings: &[Binding]) -> Vec<Finding> {
    let bound: BTreeSet<&str> = bindings.iter().map(|b| b.accept.as_str()).collect();
    let mut out = Vec::new();
    for (i, a) in graph.promises.iter().enumerate() {
        if a.polarity() != Polarity::Accept || bound.contains(a.id.as_str()) {
            continue;
        }
        for q in &graph.promises[i + 1..] {
            let mirrored = q.polarity() == Polarity::Accept
                && q.topic() == a.topic()
                && a.promisees.contains(&q.promiser)
                && q.promisees.contains(&a.promiser);
            if mirrored && !bound.contains(q.id.as_str()) {
                out.push(Finding::new(
                    Rule::PolarityMismatch,
                    vec![a.id.to_string(), q.id.to_string()],
                    format!(
                        "`{}` and `{}` both accept `{}` from each other; neither side offers it",
                        a.id,
                        q.id,
                        a.topic()
                    ),
                    a.span,
                ));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusEntry {
    /// Offer promises on the topic naming the agent as promisee.
    pub offers_in: usize,
    /// Accept promises on the topic made by the agent.
    pub accepts_out: usize,
}

pub type Census = BTreeMap<(AgentId, Topic), CensusEntry>;

/// Counts + and − promises per (agent, topic).
pub fn polarity_census(graph: &PromiseGraph) -> Census {
    let mut census = Census::new();
    for p in &graph.promises {
        match p.polarity() {
            Polarity::Offer => {
                let promisees: BTreeSet<&AgentId> = p.promisees.iter().collect();
                for b in promisees {
                    census
                        .entry((b.clone(), p.topic().clone()))
                        .or_default()
                        .offers_in += 1;
                }
            }
            Polarity::Accept => {
                census
                    .entry((p.promiser.clone(), p.topic().clone()))
                    .or_default()
                    .accepts_out += 1;
            }
        }
    }
    census
}

/// Offering agents and accepted counterparties for one (consumer, topic).
type Flow<'g> = (Vec<&'g AgentId>, Vec<&'g AgentId>);

/// Flags consumers that accept a topic from fewer sources than are on
/// offer, below `quorum`. With offering agents O and accepted counterparties
/// C, a finding is raised when `|O| >= 2` and `1 <= |C| < min(quorum, |O|)`.
/// A quorum of 0 behaves as 1.
pub fn single_source(graph: &PromiseGraph, quorum: usize) -> Vec<Finding> {
    let quorum = quorum.max(1);
    // (consumer, topic) -> (offering agents, accepted counterparties), both in
    // order of first appearance
    let mut flows: BTreeMap<(&AgentId, &Topic), Flow> = BTreeMap::new();
    let mut first_seen: Vec<(&AgentId, &Topic)> = Vec::new();
    for p in &graph.promises {
        match p.polarity() {
            Polarity::Offer => {
                for b in &p.promisees {
                    let key = (b, p.topic());
                    let entry = flows.entry(key).or_insert_with(|| {
                        first_seen.push(key);
                        Default::default()
                    });
                    if !entry.0.contains(&&p.promiser) {
                        entry.0.push(&p.promiser);
                    }
                }
            }
            Polarity::Accept => {
                let key = (&p.promiser, p.topic());
                let entry = flows.entry(key).or_insert_with(|| {
                    first_seen.push(key);
                    Default::default()
                });
                for c in &p.promisees {
                    if !entry.1.contains(&c) {
                        entry.1.push(c);
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    for key in first_seen {
        let (offering, accepted) = &flows[&key];
        let (consumer, topic) = key;
        let needed = quorum.min(offering.len());
        if offering.len() >= 2 && !accepted.is_empty() && accepted.len() < needed {
            let ignored: Vec<&AgentId> = offering
                .iter()
                .copied()
                .filter(|o| !accepted.contains(o))
                .collect();
            let mut subjects = vec![consumer.to_string(), topic.to_string()];
            subjects.extend(ignored.iter().map(|a| a.to_string()));
            out.push(Finding::new(
                Rule::SingleSourceAcceptance,
                subjects,
                format!(
                    "{consumer} accepts `{topic}` from {} of {} offering agents (quorum {quorum})",
                    accepted.len(),
                    offering.len()
                ),
                agent_span(graph, consumer),
            ));
        }
    }
    out
}

/// Agents declared as affected by a promise but not privy to it.
pub fn scope_audit(graph: &PromiseGraph) -> Vec<Finding> {
    let mut out = Vec::new();
    for p in &graph.promises {
        if p.body.affects.is_empty() {
            continue;
        }
        let visible = graph.visible_set(p);
        for a in &p.body.affects {
            if !graph.privy_in(&visible, a) {
                out.push(Finding::new(
                    Rule::ScopeHiding,
                    vec![p.id.to_string(), a.to_string()],
                    format!("`{}` affects {a}, who is not in its scope", p.id),
                    p.span,
                ));
            }
        }
    }
    out
}

/// Promises made on behalf of another agent.
pub fn behalf_violations(graph: &PromiseGraph) -> Vec<Finding> {
    graph
        .promises
        .iter()
        .filter_map(|p| {
            let other = p.body.behalf_of.as_ref().filter(|x| **x != p.promiser)?;
            Some(Finding::new(
                Rule::BehalfOfViolation,
                vec![p.id.to_string(), p.promiser.to_string(), other.to_string()],
                format!("{} promises `{}` on behalf of {other}", p.promiser, p.id),
                p.span,
            ))
        })
        .collect()
}

/// Imposees under two or more impositions, and every threat.
pub fn imposition_pressure(graph: &PromiseGraph) -> Vec<Finding> {
    let mut inbound: Vec<(&AgentId, Vec<&str>)> = Vec::new();
    for i in &graph.impositions {
        match inbound.iter_mut().find(|(who, _)| *who == &i.imposee) {
            Some((_, ids)) => ids.push(i.id.as_str()),
            None => inbound.push((&i.imposee, vec![i.id.as_str()])),
        }
    }

    let mut out = Vec::new();
    for (imposee, ids) in inbound.iter().filter(|(_, ids)| ids.len() >= 2) {
        let mut subjects = vec![imposee.to_string()];
        subjects.extend(ids.iter().map(|s| s.to_string()));
        out.push(Finding::new(
            Rule::ImpositionPressure,
            subjects,
            format!(
                "{imposee} is under {} impositions: {}",
                ids.len(),
                ids.join(", ")
            ),
            agent_span(graph, imposee),
        ));
    }
    for i in graph
        .impositions
        .iter()
        .filter(|i| i.kind == ImpositionKind::Threat)
    {
        out.push(Finding::new(
            Rule::ImpositionPressure,
            vec![
                i.id.to_string(),
                i.imposer.to_string(),
                i.imposee.to_string(),
            ],
            format!("`{}` is a threat from {} to {}", i.id, i.imposer, i.imposee),
            i.span,
        ));
    }
    out
}
