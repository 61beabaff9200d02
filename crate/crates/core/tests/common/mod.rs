//! Random model generation and independent oracles shared by the
//! integration suites.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write;

use proptest::prelude::*;
use proptest::sample::subsequence;

use promisegraph::model::{Polarity, PromiseGraph};

pub const KINDS: [&str; 6] = [
    "human",
    "organization",
    "software",
    "hardware",
    "system",
    "standard",
];
pub const PROVENANCE: [&str; 3] = ["explicit", "inferred", "imputed"];
pub const VERDICTS: [&str; 3] = ["kept", "not-kept", "indeterminate"];

#[derive(Debug, Clone)]
pub struct PromiseShape {
    pub promiser: usize,
    pub promisees: Vec<usize>,
    pub scope: Vec<usize>,
    pub accept: bool,
    pub topic: usize,
    pub provenance: usize,
    pub behalf: Option<usize>,
    pub affects: Vec<usize>,
    pub text: Option<String>,
    pub condition: Option<String>,
}

/// A valid model described by indices; rendered to source by [`Model::source`].
#[derive(Debug, Clone)]
pub struct Model {
    pub kinds: Vec<usize>,
    /// Members of S0 (agents only) and S1 (agents plus S0, by index).
    pub superagents: Vec<Vec<usize>>,
    pub promises: Vec<PromiseShape>,
    pub impositions: Vec<(usize, usize, bool)>,
    pub assessments: Vec<(usize, usize, usize)>,
}

impl Model {
    pub fn n_agents(&self) -> usize {
        self.kinds.len()
    }

    /// Agents first, then superagents.
    pub fn name(&self, i: usize) -> String {
        if i < self.n_agents() {
            format!("A{i}")
        } else {
            format!("S{}", i - self.n_agents())
        }
    }

    pub fn source(&self) -> String {
        let mut s = String::new();
        for (i, k) in self.kinds.iter().enumerate() {
            let _ = writeln!(s, "agent A{i} kind={}", KINDS[*k]);
        }
        for (i, members) in self.superagents.iter().enumerate() {
            let names: Vec<String> = members.iter().map(|&m| self.name(m)).collect();
            let _ = writeln!(s, "superagent S{i} {{ {} }}", names.join(", "));
        }
        for (i, p) in self.promises.iter().enumerate() {
            let list = |v: &[usize]| {
                v.iter()
                    .map(|&m| self.name(m))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = write!(
                s,
                "promise p{i} from {} to {}",
                self.name(p.promiser),
                list(&p.promisees)
            );
            if !p.scope.is_empty() {
                let _ = write!(s, " scope [{}]", list(&p.scope));
            }
            let _ = write!(s, " provenance={} {{\n  ", PROVENANCE[p.provenance]);
            let _ = write!(
                s,
                "{} t{}",
                if p.accept { "accept" } else { "offer" },
                p.topic
            );
            if let Some(t) = &p.text {
                let _ = write!(s, " \"{}\"", escape(t));
            }
            if let Some(b) = p.behalf {
                let _ = write!(s, " behalf {}", self.name(b));
            }
            if !p.affects.is_empty() {
                let _ = write!(s, " affects [{}]", list(&p.affects));
            }
            if let Some(c) = &p.condition {
                let _ = write!(s, " condition \"{}\"", escape(c));
            }
            s.push_str("\n}\n");
        }
        for (i, (from, to, threat)) in self.impositions.iter().enumerate() {
            let kind = if *threat { "threat" } else { "requirement" };
            let _ = writeln!(
                s,
                "imposition i{i} from {} to {} kind={kind} {{ \"imposed\" }}",
                self.name(*from),
                self.name(*to)
            );
        }
        for (i, (by, on, verdict)) in self.assessments.iter().enumerate() {
            let _ = writeln!(
                s,
                "assessment a{i} by {} on p{on} verdict={} # assessed",
                self.name(*by),
                VERDICTS[*verdict]
            );
        }
        s
    }

    pub fn graph(&self) -> PromiseGraph {
        let src = self.source();
        promisegraph::load(&src).unwrap_or_else(|d| panic!("generated model invalid:\n{d}\n{src}"))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn text() -> impl Strategy<Value = Option<String>> {
    prop::option::of("[ a-zA-Z0-9\"\\\\é\n]{0,12}")
}

fn promise(names: usize, topics: usize) -> impl Strategy<Value = PromiseShape> {
    let all: Vec<usize> = (0..names).collect();
    (
        0..names,
        subsequence(all.clone(), 1..=names.min(3)),
        subsequence(all.clone(), 0..=names.min(2)),
        any::<bool>(),
        0..topics,
        0..3usize,
        prop::option::of(0..names),
        subsequence(all, 0..=names.min(2)),
        text(),
        prop::option::weighted(0.2, "[a-z ]{0,10}"),
    )
        .prop_map(
            |(
                promiser,
                promisees,
                scope,
                accept,
                topic,
                provenance,
                behalf,
                affects,
                text,
                condition,
            )| {
                PromiseShape {
                    promiser,
                    promisees,
                    scope,
                    accept,
                    topic,
                    provenance,
                    behalf: behalf.filter(|&b| b != promiser),
                    affects,
                    text,
                    condition,
                }
            },
        )
}

/// Random valid models with up to `max_promises` promises over `topics`
/// topics.
pub fn model(max_promises: usize, topics: usize) -> impl Strategy<Value = Model> {
    (prop::collection::vec(0..6usize, 2..=5), 0..=2usize)
        .prop_flat_map(move |(kinds, n_super)| {
            let n = kinds.len();
            let agents: Vec<usize> = (0..n).collect();
            let s0 = subsequence(agents.clone(), 1..=n);
            let mut s1_pool = agents.clone();
            s1_pool.push(n);
            let s1 = subsequence(s1_pool, 1..=n + 1);
            let supers = (s0, s1).prop_map(move |(a, b)| {
                let mut v = vec![a, b];
                v.truncate(n_super);
                v
            });
            let names = n + n_super;
            (
                Just(kinds),
                supers,
                prop::collection::vec(promise(names, topics), 0..=max_promises),
                prop::collection::vec((0..names, 0..names, any::<bool>()), 0..=2),
                prop::collection::vec((0..names, any::<prop::sample::Index>(), 0..3usize), 0..=4),
            )
        })
        .prop_map(|(kinds, superagents, promises, impositions, assessments)| {
            let impositions = impositions.into_iter().filter(|(a, b, _)| a != b).collect();
            let assessments = if promises.is_empty() {
                Vec::new()
            } else {
                assessments
                    .into_iter()
                    .map(|(by, on, v)| (by, on.index(promises.len()), v))
                    .collect()
            };
            Model {
                kinds,
                superagents,
                promises,
                impositions,
                assessments,
            }
        })
}

/// Exhaustive binding: every one-to-one pairing of offers with
/// complementary accepts, keeping the largest, ties broken by comparing
/// per-offer accept positions in declaration order (no partner ranks last).
/// Returns (offer id, accept id) pairs in offer order.
pub fn brute_force_bind(g: &PromiseGraph) -> Vec<(String, String)> {
    let offers: Vec<usize> = (0..g.promises.len())
        .filter(|&i| g.promises[i].body.polarity == Polarity::Offer)
        .collect();
    let fits = |o: usize, a: usize| {
        let (po, pa) = (&g.promises[o], &g.promises[a]);
        pa.body.polarity == Polarity::Accept
            && po.body.topic == pa.body.topic
            && po.promisees.contains(&pa.promiser)
            && pa.promisees.contains(&po.promiser)
    };

    fn search(
        k: usize,
        offers: &[usize],
        n: usize,
        fits: &dyn Fn(usize, usize) -> bool,
        used: &mut BTreeSet<usize>,
        current: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        if k == offers.len() {
            let size = current.iter().filter(|&&c| c != usize::MAX).count();
            let better = match best {
                None => true,
                Some((bs, bv)) => size > *bs || (size == *bs && *current < *bv),
            };
            if better {
                *best = Some((size, current.clone()));
            }
            return;
        }
        for a in 0..n {
            if !used.contains(&a) && fits(offers[k], a) {
                used.insert(a);
                current.push(a);
                search(k + 1, offers, n, fits, used, current, best);
                current.pop();
                used.remove(&a);
            }
        }
        current.push(usize::MAX);
        search(k + 1, offers, n, fits, used, current, best);
        current.pop();
    }

    let mut best = None;
    search(
        0,
        &offers,
        g.promises.len(),
        &fits,
        &mut BTreeSet::new(),
        &mut Vec::new(),
        &mut best,
    );
    let (_, choice) = best.unwrap();
    offers
        .iter()
        .zip(choice)
        .filter(|(_, a)| *a != usize::MAX)
        .map(|(&o, a)| (g.promises[o].id.to_string(), g.promises[a].id.to_string()))
        .collect()
}

/// Closed-form trust after a verdict sequence, computed step by step
/// without the library.
pub fn replay_trust(initial: f64, alpha: f64, beta: f64, verdicts: &[usize]) -> Vec<f64> {
    let mut t = initial;
    let mut out = vec![t];
    for v in verdicts {
        t = match VERDICTS[*v] {
            "kept" => t + alpha * (1.0 - t),
            "not-kept" => t * (1.0 - beta),
            _ => t,
        };
        out.push(t);
    }
    out
}
