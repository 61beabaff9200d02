//! The bundled Boeing 737 Max / MCAS model and its pinned analysis results.

use crate::analysis::Rule;

/// Source of the bundled model.
pub const BOEING_737MAX: &str = include_str!("../corpus/boeing-737max.pml");

/// Canonical JSON report of the bundled model under default settings.
pub const GOLDEN_REPORT_JSON: &str = include_str!("../corpus/golden/report.json");

/// DOT export of the bundled model as seen by `Public`.
pub const GOLDEN_PUBLIC_VIEW_DOT: &str = include_str!("../corpus/golden/public-view.dot");

/// The eleven participants named in the discourse.
pub const DISCOURSE_AGENTS: [&str; 11] = [
    "Boeing-management",
    "Airline-management",
    "Pilots",
    "FAA",
    "Authors",
    "Ralph-Nader",
    "W-Bradley-Wendel",
    "Peter-Ladkin",
    "Benno-Baksteen",
    "DO178c",
    "Public",
];

/// Agents added to express data flow and the remaining actors.
pub const MODELING_AGENTS: [&str; 6] = [
    "AOA-1",
    "AOA-2",
    "MCAS",
    "Southwest-Airlines",
    "Boeing-Engineers",
    "FAA-Specialists",
];

/// Ids of the 23 litany promises, in litany order.
pub const LITANY: [&str; 23] = [
    "model-continuity",
    "mcas-hidden-existence",
    "non-antistall",
    "existing-technology",
    "software-problem",
    "feature-interaction",
    "max-minus",
    "single-aoa-rationale",
    "false-alarm",
    "mcas-is-patch",
    "nader-expertise",
    "fundamental-solution",
    "airframe-fix",
    "rational-alternative-design",
    "rad-dual-aoa",
    "no-engineer-mistakes",
    "mcas-next",
    "certification-2019",
    "certification-timing",
    "learning-curve",
    "maturity-metapromise",
    "trim-wheel-risk",
    "mcas-functionality",
];

/// Promises outside the litany: the sensor data flow behind MCAS and the
/// two company statements that assessments target.
pub const SUPPLEMENTARY: [&str; 5] = [
    "aoa-1-reading",
    "aoa-2-reading",
    "mcas-uses-aoa-1",
    "pilot-error-framing",
    "no-missed-details",
];

pub fn load_builtin() -> &'static str {
    BOEING_737MAX
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenSummary {
    /// Agents and superagents together.
    pub agent_count: usize,
    pub promise_count: usize,
    pub imposition_count: usize,
    pub assessment_count: usize,
    /// In report order: most severe first, then by source position.
    pub findings: Vec<(Rule, Vec<String>)>,
    pub trust_entries: Vec<(String, String, f64)>,
}

fn finding(rule: Rule, subjects: &[&str]) -> (Rule, Vec<String>) {
    (rule, subjects.iter().map(|s| s.to_string()).collect())
}

/// Expected analysis of [`load_builtin`] under default settings, written
/// out by hand.
pub fn golden_findings() -> GoldenSummary {
    let mut findings = vec![
        finding(
            Rule::SingleSourceAcceptance,
            &["MCAS", "aoa-reading", "AOA-2"],
        ),
        finding(
            Rule::BehalfOfViolation,
            &["maturity-metapromise", "Authors", "Boeing-management"],
        ),
    ];
    // every offer but aoa-1-reading goes unbound; the litany has no accepts
    let offers = [
        ("model-continuity", "Boeing-management"),
        ("mcas-hidden-existence", "Boeing-management"),
        ("non-antistall", "Boeing-management"),
        ("existing-technology", "Authors"),
        ("software-problem", "Authors"),
        ("feature-interaction", "Authors"),
        ("max-minus", "Authors"),
        ("single-aoa-rationale", "Authors"),
        ("false-alarm", "Benno-Baksteen"),
        ("mcas-is-patch", "Ralph-Nader"),
        ("nader-expertise", "Ralph-Nader"),
        ("fundamental-solution", "Ralph-Nader"),
        ("airframe-fix", "Ralph-Nader"),
        ("rational-alternative-design", "W-Bradley-Wendel"),
        ("rad-dual-aoa", "W-Bradley-Wendel"),
        ("no-engineer-mistakes", "Peter-Ladkin"),
        ("mcas-next", "Boeing-management"),
        ("certification-2019", "Boeing-management"),
        ("certification-timing", "FAA"),
        ("learning-curve", "Authors"),
        ("maturity-metapromise", "Authors"),
        ("trim-wheel-risk", "Authors"),
        ("mcas-functionality", "Authors"),
        ("aoa-2-reading", "AOA-2"),
        ("pilot-error-framing", "Boeing-management"),
        ("no-missed-details", "Boeing-management"),
    ];
    for (id, promiser) in offers {
        findings.push(finding(Rule::UnboundOffer, &[id, promiser]));
        if id == "mcas-hidden-existence" {
            findings.push(finding(
                Rule::ScopeHiding,
                &["mcas-hidden-existence", "Pilots"],
            ));
        }
    }
    findings.extend([
        finding(
            Rule::ImpositionPressure,
            &[
                "Boeing-management",
                "southwest-training-threat",
                "victims-litigation",
            ],
        ),
        finding(
            Rule::ImpositionPressure,
            &[
                "southwest-training-threat",
                "Southwest-Airlines",
                "Boeing-management",
            ],
        ),
        finding(
            Rule::ImpositionPressure,
            &[
                "victims-litigation",
                "Victims-Relatives",
                "Boeing-management",
            ],
        ),
    ]);

    GoldenSummary {
        agent_count: 19,
        promise_count: 28,
        imposition_count: 3,
        assessment_count: 3,
        findings,
        trust_entries: vec![
            // 0.5 * (1 - 0.6) after one broken promise each
            ("Authors".into(), "Benno-Baksteen".into(), 0.2),
            ("Authors".into(), "Boeing-management".into(), 0.2),
        ],
    }
}
