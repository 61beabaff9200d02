use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::analysis::{AnalysisReport, Severity, TrustTable};

use super::json::{canonical_bytes, span_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown report format `{s}`")),
        }
    }
}

fn paint(s: &str, severity: Severity, color: bool) -> String {
    if !color {
        return s.to_string();
    }
    let code = match severity {
        Severity::Violation => "31",
        Severity::Warning => "33",
        Severity::Info => "36",
    };
    format!("\x1b[{code}m{s}\x1b[0m")
}

pub fn report_value(report: &AnalysisReport) -> Value {
    let bindings: Vec<Value> = report
        .bindings
        .iter()
        .map(|b| json!({"offer": b.offer.as_str(), "accept": b.accept.as_str(), "topic": b.topic.as_str()}))
        .collect();
    let census: Vec<Value> = report
        .census
        .iter()
        .map(|((agent, topic), c)| {
            json!({
                "agent": agent.as_str(),
                "topic": topic.as_str(),
                "offers_in": c.offers_in,
                "accepts_out": c.accepts_out,
            })
        })
        .collect();
    let findings: Vec<Value> = report
        .findings
        .iter()
        .map(|f| {
            json!({
                "rule": f.rule.as_str(),
                "severity": f.severity.as_str(),
                "subjects": f.subjects,
                "message": f.message,
                "span": span_value(&f.span),
            })
        })
        .collect();
    json!({
        "bindings": bindings,
        "census": census,
        "findings": findings,
        "summary": {
            "findings": report.findings.len(),
            "violation": report.count(Severity::Violation),
            "warning": report.count(Severity::Warning),
            "info": report.count(Severity::Info),
        },
        "trust": trust_value(&report.trust),
    })
}

pub fn trust_value(table: &TrustTable) -> Value {
    Value::Array(
        table
            .entries
            .iter()
            .map(|((assessor, subject), v)| {
                json!({"assessor": assessor.as_str(), "subject": subject.as_str(), "value": v})
            })
            .collect(),
    )
}

fn summary_line(report: &AnalysisReport) -> String {
    let n = report.findings.len();
    if n == 0 {
        return "0 findings".to_string();
    }
    let parts: Vec<String> = [Severity::Violation, Severity::Warning, Severity::Info]
        .into_iter()
        .map(|s| format!("{} {s}", report.count(s)))
        .collect();
    format!(
        "{n} finding{} ({})",
        if n == 1 { "" } else { "s" },
        parts.join(", ")
    )
}

fn render_text(report: &AnalysisReport, color: bool) -> String {
    let mut out = String::new();
    for severity in [Severity::Violation, Severity::Warning, Severity::Info] {
        let group: Vec<_> = report
            .findings
            .iter()
            .filter(|f| f.severity == severity)
            .collect();
        if group.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            "{} ({})",
            paint(severity.as_str(), severity, color),
            group.len()
        );
        for f in group {
            let _ = writeln!(
                out,
                "  {} {} {}  [{}] {}",
                paint(severity.as_str(), severity, color),
                f.rule,
                f.subjects.join(" "),
                f.span,
                f.message
            );
        }
        out.push('\n');
    }

    if !report.bindings.is_empty() {
        let _ = writeln!(out, "bindings ({})", report.bindings.len());
        for b in &report.bindings {
            let _ = writeln!(out, "  {} <-> {}  {}", b.offer, b.accept, b.topic);
        }
        out.push('\n');
    }

    if !report.trust.is_empty() {
        out.push_str(&render_trust_text(&report.trust));
        out.push('\n');
    }

    out.push_str(&summary_line(report));
    out.push('\n');
    out
}

pub fn render_trust_text(table: &TrustTable) -> String {
    let mut out = format!("trust ({})\n", table.len());
    for ((assessor, subject), v) in &table.entries {
        let _ = writeln!(out, "  {assessor} -> {subject}  {v:.4}");
    }
    out
}

/// Renders a trust table on its own.
pub fn render_trust(table: &TrustTable, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_trust_text(table),
        ReportFormat::Json => String::from_utf8(canonical_bytes(&trust_value(table))).unwrap(),
    }
}

/// Renders an analysis report. Text groups findings by severity, most
/// severe first; JSON is the canonical report object.
pub fn render_report(report: &AnalysisReport, format: ReportFormat) -> String {
    render_report_styled(report, format, false)
}

/// Like [`render_report`], with ANSI colors on severities when `color` is
/// set. JSON output is never colored.
pub fn render_report_styled(report: &AnalysisReport, format: ReportFormat, color: bool) -> String {
    match format {
        ReportFormat::Text => render_text(report, color),
        ReportFormat::Json => String::from_utf8(canonical_bytes(&report_value(report))).unwrap(),
    }
}
