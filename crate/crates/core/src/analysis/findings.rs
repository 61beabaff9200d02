use std::cmp::Reverse;
use std::fmt;

use crate::span::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Violation,
}

impl Severity {
    pub const ALL: [Severity; 3] = [Severity::Info, Severity::Warning, Severity::Violation];

    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Violation => "violation",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Severity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Severity::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown severity `{s}` (expected info, warning or violation)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    UnboundOffer,
    UnboundAccept,
    PolarityMismatch,
    SingleSourceAcceptance,
    ScopeHiding,
    BehalfOfViolation,
    ImpositionPressure,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::UnboundOffer => "unbound-offer",
            Rule::UnboundAccept => "unbound-accept",
            Rule::PolarityMismatch => "polarity-mismatch",
            Rule::SingleSourceAcceptance => "single-source-acceptance",
            Rule::ScopeHiding => "scope-hiding",
            Rule::BehalfOfViolation => "behalf-of-violation",
            Rule::ImpositionPressure => "imposition-pressure",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Rule::UnboundOffer
            | Rule::UnboundAccept
            | Rule::PolarityMismatch
            | Rule::ScopeHiding => Severity::Warning,
            Rule::SingleSourceAcceptance | Rule::BehalfOfViolation => Severity::Violation,
            Rule::ImpositionPressure => Severity::Info,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Rule::*;
        [
            UnboundOffer,
            UnboundAccept,
            PolarityMismatch,
            SingleSourceAcceptance,
            ScopeHiding,
            BehalfOfViolation,
            ImpositionPressure,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A structural observation about the graph. `subjects[0]` is the primary
/// subject and `span` points at its declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub rule: Rule,
    pub severity: Severity,
    pub subjects: Vec<String>,
    pub message: String,
    pub span: SourceSpan,
}

impl Finding {
    pub(crate) fn new(
        rule: Rule,
        subjects: Vec<String>,
        message: String,
        span: SourceSpan,
    ) -> Self {
        debug_assert!(!subjects.is_empty());
        Finding {
            rule,
            severity: rule.severity(),
            subjects,
            message,
            span,
        }
    }
}

/// Most severe first, then declaration order. Stable, so findings at the
/// same position keep the order the rules produced them in.
pub fn sort_findings(findings: &mut [Finding]) {
    findings.sort_by_key(|f| (Reverse(f.severity), f.span.start));
}
