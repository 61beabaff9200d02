//! Offer/accept binding.
//!
//! An offer `o` (from A, topic t) and an accept `a` (from B, topic t) are
//! complementary when B is among `o`'s promisees and A among `a`'s. The
//! binding is a maximum one-to-one matching over complementary pairs. Among
//! all maximum matchings we pick the one that, reading offers in
//! declaration order, pairs each offer with the earliest possible accept
//! (an unpaired offer ranks after every accept).

use std::collections::BTreeMap;

use crate::model::{Polarity, Promise, PromiseGraph, StatementId, Topic};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binding {
    pub offer: StatementId,
    pub accept: StatementId,
    pub topic: Topic,
}

/// Whether `offer` and `accept` can bind to each other.
pub fn complementary(offer: &Promise, accept: &Promise) -> bool {
    offer.polarity() == Polarity::Offer
        && accept.polarity() == Polarity::Accept
        && offer.topic() == accept.topic()
        && offer.promisees.contains(&accept.promiser)
        && accept.promisees.contains(&offer.promiser)
}

/// Size of a maximum matching of `left` into the accepts not yet `used`.
fn max_matching(adj: &[Vec<usize>], left: &[usize], used: &[bool], n_right: usize) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        used: &[bool],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if used[v] || seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, used, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut owner = vec![None; n_right];
    let mut size = 0;
    for &u in left {
        let mut seen = vec![false; n_right];
        if augment(u, adj, used, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

/// Canonical matching for one topic. `adj[i]` lists, in declaration order,
/// the accepts offer `i` may bind to. Returns the chosen accept per offer.
pub(crate) fn canonical_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let all: Vec<usize> = (0..n_left).collect();
    let mut used = vec![false; n_right];
    let target = max_matching(adj, &all, &used, n_right);
    let mut chosen = vec![None; n_left];
    let mut matched = 0;
    for i in 0..n_left {
        let rest = &all[i + 1..];
        for &j in &adj[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            if matched + 1 + max_matching(adj, rest, &used, n_right) == target {
                chosen[i] = Some(j);
                matched += 1;
                break;
            }
            used[j] = false;
        }
    }
    chosen
}

/// Pairs complementary offers and accepts. Deterministic; bindings are
/// listed in offer declaration order.
pub fn bind(graph: &PromiseGraph) -> Vec<Binding> {
    let mut by_topic: BTreeMap<&Topic, (Vec<&Promise>, Vec<&Promise>)> = BTreeMap::new();
    for p in &graph.promises {
        let entry = by_topic.entry(p.topic()).or_default();
        match p.polarity() {
            Polarity::Offer => entry.0.push(p),
            Polarity::Accept => entry.1.push(p),
        }
    }

    let mut pairs: Vec<(&Promise, &Promise)> = Vec::new();
    for (offers, accepts) in by_topic.values() {
        let adj: Vec<Vec<usize>> = offers
            .iter()
            .map(|o| {
                accepts
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| complementary(o, a))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        for (i, choice) in canonical_matching(&adj, accepts.len())
            .into_iter()
            .enumerate()
        {
            if let Some(j) = choice {
                pairs.push((offers[i], accepts[j]));
            }
        }
    }

    let order: BTreeMap<&str, usize> = graph
        .promises
        .iter()
        .enumerate()
        .map(|(i, p)| (p.id.as_str(), i))
        .collect();
    pairs.sort_by_key(|(o, _)| order[o.id.as_str()]);
    pairs
        .into_iter()
        .map(|(o, a)| Binding {
            offer: o.id.clone(),
            accept: a.id.clone(),
            topic: o.topic().clone(),
        })
        .collect()
}
