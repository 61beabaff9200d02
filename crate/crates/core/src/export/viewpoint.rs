use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{AgentId, PromiseGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown observer `{0}`")]
pub struct UnknownObserver(pub String);

/// The part of a graph one observer is privy to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewpointGraph {
    pub observer: AgentId,
    pub graph: PromiseGraph,
}

/// Restricts `graph` to what `observer` can see.
///
/// Promises survive when the observer is privy to them (see
/// [`PromiseGraph::is_privy`]); impositions when the observer is one of the
/// two parties; assessments when their target survives. Agents and
/// superagents survive when something retained refers to them, and a
/// retained superagent keeps all of its members so the result still
/// validates. Applying the filter twice changes nothing.
pub fn viewpoint(graph: &PromiseGraph, observer: &str) -> Result<ViewpointGraph, UnknownObserver> {
    if !graph.is_declared(observer) {
        return Err(UnknownObserver(observer.to_string()));
    }
    let observer = AgentId::new(observer).map_err(|e| UnknownObserver(e.0))?;

    let promises: Vec<_> = graph
        .promises
        .iter()
        .filter(|p| graph.is_privy(p, &observer))
        .cloned()
        .collect();
    let impositions: Vec<_> = graph
        .impositions
        .iter()
        .filter(|i| i.imposer == observer || i.imposee == observer)
        .cloned()
        .collect();
    let kept_ids: BTreeSet<&str> = promises.iter().map(|p| p.id.as_str()).collect();
    let assessments: Vec<_> = graph
        .assessments
        .iter()
        .filter(|a| kept_ids.contains(a.target.as_str()))
        .cloned()
        .collect();

    let mut referenced: BTreeSet<AgentId> = BTreeSet::new();
    referenced.insert(observer.clone());
    for p in &promises {
        referenced.insert(p.promiser.clone());
        referenced.extend(p.promisees.iter().cloned());
        referenced.extend(p.scope.iter().cloned());
        referenced.extend(p.body.behalf_of.iter().cloned());
        referenced.extend(p.body.affects.iter().cloned());
    }
    for i in &impositions {
        referenced.insert(i.imposer.clone());
        referenced.insert(i.imposee.clone());
    }
    for a in &assessments {
        referenced.insert(a.assessor.clone());
    }

    // superagents bring their members along, transitively
    let mut stack: Vec<AgentId> = referenced.iter().cloned().collect();
    while let Some(name) = stack.pop() {
        if let Some(sa) = graph.superagent(name.as_str()) {
            for m in &sa.members {
                if referenced.insert(m.clone()) {
                    stack.push(m.clone());
                }
            }
        }
    }

    let sub = PromiseGraph {
        agents: graph
            .agents
            .iter()
            .filter(|a| referenced.contains(&a.id))
            .cloned()
            .collect(),
        superagents: graph
            .superagents
            .iter()
            .filter(|s| referenced.contains(&s.id))
            .cloned()
            .collect(),
        promises,
        impositions,
        assessments,
    };
    Ok(ViewpointGraph {
        observer,
        graph: sub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::load;
    use crate::model::validate;

    const SRC: &str = "\
agent Boeing kind=organization
agent FAA kind=organization
agent Pilots
agent Authors
agent Southwest kind=organization
superagent Public { Boeing, FAA, Pilots, Authors }
promise nas from Boeing to FAA { offer mcas-purpose }
promise cert from Boeing to FAA scope [Public] { offer certification }
promise claim from Authors to Public { offer analysis-claim }
imposition thr from Southwest to Boeing kind=threat { \"pay\" }
assessment a1 by Authors on nas verdict=indeterminate
assessment a2 by Authors on claim verdict=kept
";

    fn ids(v: &ViewpointGraph) -> Vec<&str> {
        v.graph.promises.iter().map(|p| p.id.as_str()).collect()
    }

    #[test]
    fn public_does_not_see_private_promise() {
        let g = load(SRC).unwrap();
        let v = viewpoint(&g, "Public").unwrap();
        assert_eq!(ids(&v), vec!["cert", "claim"]);
        assert!(v.graph.impositions.is_empty());
        assert_eq!(v.graph.assessments.len(), 1);
        assert!(validate(&v.graph).is_empty());
        assert!(v.graph.agent("Southwest").is_none());
    }

    #[test]
    fn faa_sees_it() {
        let g = load(SRC).unwrap();
        let v = viewpoint(&g, "FAA").unwrap();
        assert_eq!(ids(&v), vec!["nas", "cert", "claim"]);
    }

    #[test]
    fn parties_see_impositions() {
        let g = load(SRC).unwrap();
        let v = viewpoint(&g, "Boeing").unwrap();
        assert_eq!(v.graph.impositions.len(), 1);
        assert!(v.graph.agent("Southwest").is_some());
        assert!(validate(&v.graph).is_empty());
    }

    #[test]
    fn idempotent() {
        let g = load(SRC).unwrap();
        for who in ["Public", "FAA", "Boeing", "Pilots", "Southwest"] {
            let once = viewpoint(&g, who).unwrap();
            let twice = viewpoint(&once.graph, who).unwrap();
            assert_eq!(once, twice, "{who}");
        }
    }

    #[test]
    fn unknown_observer() {
        let g = load(SRC).unwrap();
        assert_eq!(
            viewpoint(&g, "Nobody"),
            Err(UnknownObserver("Nobody".into()))
        );
    }
}
