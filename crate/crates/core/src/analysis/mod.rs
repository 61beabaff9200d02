//! Structural analyses over a validated [`PromiseGraph`].

mod binding;
mod findings;
mod rules;
mod trust;

pub use binding::{bind, complementary, Binding};
pub use findings::{sort_findings, Finding, Rule, Severity};
pub use rules::{
    behalf_violations, imposition_pressure, polarity_census, polarity_mismatch, scope_audit,
    single_source, unbound, Census, CensusEntry,
};
pub use trust::{trust, TrustParamError, TrustParams, TrustTable};

use crate::model::PromiseGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    /// Minimum number of distinct sources a consumer should accept a topic
    /// from (capped at the number on offer).
    pub quorum: usize,
    pub trust: TrustParams,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            quorum: 2,
            trust: TrustParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub bindings: Vec<Binding>,
    /// Most severe first, then declaration order.
    pub findings: Vec<Finding>,
    pub census: Census,
    pub trust: TrustTable,
}

impl AnalysisReport {
    pub fn count(&self, severity: Severity) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == severity)
            .count()
    }

    pub fn max_severity(&self) -> Option<Severity> {
        self.findings.iter().map(|f| f.severity).max()
    }

    pub fn by_rule(&self, rule: Rule) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(move |f| f.rule == rule)
    }
}

/// Runs every analysis and aggregates the results.
pub fn analyze_all(graph: &PromiseGraph, config: &AnalysisConfig) -> AnalysisReport {
    let bindings = bind(graph);
    let mut findings = unbound(graph, &bindings);
    findings.extend(polarity_mismatch(graph, &bindings));
    findings.extend(single_source(graph, config.quorum));
    findings.extend(scope_audit(graph));
    findings.extend(behalf_violations(graph));
    findings.extend(imposition_pressure(graph));
    sort_findings(&mut findings);
    AnalysisReport {
        bindings,
        findings,
        census: polarity_census(graph),
        trust: trust(graph, &config.trust),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::load;

    #[test]
    fn empty_graph() {
        let r = analyze_all(&PromiseGraph::new(), &AnalysisConfig::default());
        assert!(r.bindings.is_empty());
        assert!(r.findings.is_empty());
        assert!(r.census.is_empty());
        assert!(r.trust.is_empty());
        assert_eq!(r.max_severity(), None);
    }

    #[test]
    fn aoa_submodel() {
        let g = load(
            "agent AOA-1\nagent AOA-2\nagent MCAS kind=software\n\
             promise r1 from AOA-1 to MCAS { offer aoa-reading }\n\
             promise r2 from AOA-2 to MCAS { offer aoa-reading }\n\
             promise m1 from MCAS to AOA-1 { accept aoa-reading }",
        )
        .unwrap();
        let r = analyze_all(&g, &AnalysisConfig::default());
        assert_eq!(r.bindings.len(), 1);
        let rules: Vec<Rule> = r.findings.iter().map(|f| f.rule).collect();
        assert_eq!(
            rules,
            vec![Rule::SingleSourceAcceptance, Rule::UnboundOffer]
        );
        assert_eq!(r.max_severity(), Some(Severity::Violation));
    }
}
