//! Serialization: canonical JSON, Graphviz DOT, observer viewpoints and
//! report rendering.

mod dot;
mod json;
mod report;
mod viewpoint;

pub use dot::{to_dot, DotOptions, EdgeLabel};
pub use json::{from_json, graph_value, to_json, JsonError};
pub use report::{
    render_report, render_report_styled, render_trust, report_value, trust_value, ReportFormat,
};
pub use viewpoint::{viewpoint, UnknownObserver, ViewpointGraph};
