mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{brute_force_bind, model, replay_trust, VERDICTS};
use promisegraph::analysis::{
    analyze_all, bind, polarity_census, scope_audit, single_source, trust, AnalysisConfig, Rule,
    TrustParams,
};
use promisegraph::dsl::{ast::Item, parse, tokenize};
use promisegraph::export::{from_json, to_dot, to_json, viewpoint, DotOptions};
use promisegraph::model::{AgentId, Polarity, Verdict};
use promisegraph::{load, validate};

fn only_trivia(gap: &str) -> bool {
    let mut in_comment = false;
    for c in gap.chars() {
        match c {
            '#' => in_comment = true,
            '\n' => in_comment = false,
            c if in_comment || c.is_whitespace() => {}
            _ => return false,
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn lexing_is_lossless(m in model(6, 3)) {
        let src = m.source();
        let tokens = tokenize(&src).unwrap();
        let mut rebuilt = String::new();
        let mut pos = 0;
        for t in &tokens {
            prop_assert_eq!(&src[t.span.start..t.span.end], t.text.as_str());
            let gap = &src[pos..t.span.start];
            prop_assert!(only_trivia(gap), "gap {:?}", gap);
            rebuilt.push_str(gap);
            rebuilt.push_str(&t.text);
            pos = t.span.end;
        }
        prop_assert!(only_trivia(&src[pos..]));
        rebuilt.push_str(&src[pos..]);
        prop_assert_eq!(rebuilt, src);
    }

    #[test]
    fn parse_is_total(src in "(agent|promise|from|to|offer|accept|[A-Za-z0-9_-]{1,6}|[{}\\[\\],=\"#]| |\n){0,40}") {
        match parse(&src) {
            Ok(_) => {}
            Err(errors) => prop_assert!(!errors.is_empty()),
        }
        prop_assert_eq!(parse(&src), parse(&src));
    }

    #[test]
    fn parse_is_total_on_bytes(src in any::<String>()) {
        let _ = parse(&src);
        let _ = load(&src);
    }

    #[test]
    fn spans_contain_children(m in model(6, 3)) {
        let src = m.source();
        let doc = parse(&src).unwrap();
        for item in &doc.items {
            let outer = item.span();
            prop_assert!(outer.end <= src.len());
            let inner = match item {
                Item::Agent(d) => vec![d.name.span],
                Item::Superagent(d) => {
                    let mut v = vec![d.name.span];
                    v.extend(d.members.iter().map(|n| n.span));
                    v
                }
                Item::Promise(d) => {
                    let mut v = vec![d.id.span, d.promiser.span, d.body.span, d.body.topic.span];
                    v.extend(d.promisees.iter().chain(&d.scope).chain(&d.body.affects).map(|n| n.span));
                    v.extend(d.body.behalf.iter().map(|n| n.span));
                    v.extend(d.body.text.iter().chain(&d.body.condition).map(|s| s.span));
                    prop_assert!(d.body.span.contains(&d.body.topic.span));
                    v
                }
                Item::Imposition(d) => vec![d.id.span, d.imposer.span, d.imposee.span, d.text.span],
                Item::Assessment(d) => {
                    let mut v = vec![d.id.span, d.assessor.span, d.target.span];
                    v.extend(d.note.iter().map(|s| s.span));
                    v
                }
            };
            for s in inner {
                prop_assert!(outer.contains(&s), "{:?} !⊇ {:?}", outer, s);
            }
        }
    }

    #[test]
    fn lowering_preserves_counts(m in model(10, 3)) {
        let src = m.source();
        let doc = parse(&src).unwrap();
        let g = load(&src).unwrap();
        prop_assert_eq!(doc.promises().count(), g.promises.len());
        prop_assert_eq!(g.promises.len(), m.promises.len());
        prop_assert_eq!(g.agents.len(), m.n_agents());
        prop_assert_eq!(g.superagents.len(), m.superagents.len());
        prop_assert_eq!(g.impositions.len(), m.impositions.len());
        prop_assert_eq!(g.assessments.len(), m.assessments.len());
    }

    #[test]
    fn validate_is_pure(m in model(8, 3)) {
        let g = m.graph();
        prop_assert!(validate(&g).is_empty());
        prop_assert_eq!(validate(&g), validate(&g));
    }

    #[test]
    fn promiser_is_visible(m in model(8, 3)) {
        let g = m.graph();
        for p in &g.promises {
            let vis = g.visible_to(p.id.as_str()).unwrap();
            prop_assert!(vis.contains(&p.promiser));
        }
    }

    #[test]
    fn visibility_monotone_in_scope(m in model(6, 2), extra in 0..5usize) {
        let g = m.graph();
        let name = AgentId::new(m.name(extra % m.n_agents())).unwrap();
        for (i, p) in g.promises.iter().enumerate() {
            let before = g.visible_to(p.id.as_str()).unwrap();
            let mut wider = g.clone();
            if !wider.promises[i].scope.contains(&name) {
                wider.promises[i].scope.push(name.clone());
            }
            let after = wider.visible_to(p.id.as_str()).unwrap();
            prop_assert!(before.is_subset(&after));
        }
    }

    #[test]
    fn bind_matches_brute_force(m in model(8, 2)) {
        let g = m.graph();
        let got: Vec<(String, String)> = bind(&g)
            .into_iter()
            .map(|b| (b.offer.to_string(), b.accept.to_string()))
            .collect();
        prop_assert_eq!(got, brute_force_bind(&g));
    }

    #[test]
    fn bindings_are_injective(m in model(10, 2)) {
        let g = m.graph();
        let b = bind(&g);
        let offers: BTreeSet<_> = b.iter().map(|x| &x.offer).collect();
        let accepts: BTreeSet<_> = b.iter().map(|x| &x.accept).collect();
        prop_assert_eq!(offers.len(), b.len());
        prop_assert_eq!(accepts.len(), b.len());
    }

    #[test]
    fn count_identities(m in model(10, 3)) {
        let g = m.graph();
        let r = analyze_all(&g, &AnalysisConfig::default());
        let offers = g.promises.iter().filter(|p| p.body.polarity == Polarity::Offer).count();
        let accepts = g.promises.len() - offers;
        prop_assert_eq!(offers, r.bindings.len() + r.by_rule(Rule::UnboundOffer).count());
        prop_assert_eq!(accepts, r.bindings.len() + r.by_rule(Rule::UnboundAccept).count());

        let slots: usize = g
            .promises
            .iter()
            .filter(|p| p.body.polarity == Polarity::Offer)
            .map(|p| p.promisees.len())
            .sum();
        let census: usize = polarity_census(&g).values().map(|c| c.offers_in).sum();
        prop_assert_eq!(slots, census);
    }

    #[test]
    fn distinct_topics_make_bind_order_free(m in model(6, 12), seed in any::<u64>()) {
        let g = m.graph();
        // no topic has two offers or two accepts, so there is never a choice
        let keys: Vec<_> = g.promises.iter().map(|p| (&p.body.topic, p.body.polarity)).collect();
        let unique: BTreeSet<_> = keys.iter().collect();
        prop_assume!(unique.len() == keys.len());
        let mut shuffled = g.clone();
        let n = shuffled.promises.len();
        if n > 1 {
            shuffled.promises.rotate_left((seed as usize) % n);
        }
        let mut a: Vec<_> = bind(&g).into_iter().map(|b| (b.offer, b.accept)).collect();
        let mut b: Vec<_> = bind(&shuffled).into_iter().map(|b| (b.offer, b.accept)).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn quorum_one_is_silent(m in model(10, 2)) {
        let g = m.graph();
        prop_assert!(single_source(&g, 1).is_empty());
    }

    #[test]
    fn scope_audit_silent_when_affects_visible(m in model(8, 2)) {
        let mut g = m.graph();
        for i in 0..g.promises.len() {
            let affects = g.promises[i].body.affects.clone();
            for a in affects {
                if !g.promises[i].scope.contains(&a) {
                    g.promises[i].scope.push(a);
                }
            }
        }
        prop_assert!(scope_audit(&g).is_empty());
    }

    #[test]
    fn trust_bounded_and_monotone(
        verdicts in prop::collection::vec(0..3usize, 0..=50),
        initial in 0.0..=1.0f64,
        alpha in 0.0..=1.0f64,
        beta in 0.0..=1.0f64,
    ) {
        let params = TrustParams::new(initial, alpha, beta).unwrap();
        let mut t = initial;
        let oracle = replay_trust(initial, alpha, beta, &verdicts);
        for (step, v) in verdicts.iter().enumerate() {
            let verdict: Verdict = VERDICTS[*v].parse().unwrap();
            let next = params.update(t, verdict);
            prop_assert!((0.0..=1.0).contains(&next));
            match verdict {
                Verdict::Kept => prop_assert!(next >= t),
                Verdict::NotKept => prop_assert!(next <= t),
                Verdict::Indeterminate => prop_assert_eq!(next, t),
            }
            prop_assert!((next - oracle[step + 1]).abs() < 1e-12);
            t = next;
        }
    }

    #[test]
    fn trust_table_bounded(m in model(8, 2)) {
        let g = m.graph();
        let table = trust(&g, &TrustParams::default());
        for v in table.entries.values() {
            prop_assert!((0.0..=1.0).contains(v));
        }
    }

    #[test]
    fn viewpoint_idempotent_and_sound(m in model(20, 3), who in any::<prop::sample::Index>()) {
        let g = m.graph();
        let n = m.n_agents() + m.superagents.len();
        let name = m.name(who.index(n));
        let once = viewpoint(&g, &name).unwrap();
        let twice = viewpoint(&once.graph, &name).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(validate(&once.graph).is_empty());
        let observer = AgentId::new(name).unwrap();
        let kept: BTreeSet<_> = once.graph.promises.iter().map(|p| p.id.clone()).collect();
        for p in &g.promises {
            prop_assert_eq!(g.is_privy(p, &observer), kept.contains(&p.id));
        }
    }

    #[test]
    fn json_round_trip(m in model(12, 3)) {
        let g = m.graph();
        let bytes = to_json(&g);
        prop_assert_eq!(from_json(&bytes).unwrap(), g.clone());
        prop_assert_eq!(&bytes, &to_json(&g));
        prop_assert_eq!(to_dot(&g, &DotOptions::default()), to_dot(&g, &DotOptions::default()));
    }

    #[test]
    fn json_distinguishes_graphs(m in model(6, 3)) {
        let g = m.graph();
        prop_assume!(!g.promises.is_empty());
        let mut changed = g.clone();
        let p = &mut changed.promises[0];
        p.body.text.push('x');
        prop_assert_ne!(to_json(&g), to_json(&changed));
    }
}
