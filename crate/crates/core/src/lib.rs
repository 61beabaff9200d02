//! Modeling language and static analyzer for promise networks.
//!
//! Agents, promises, impositions and assessments are declared in a small
//! text language, resolved into a [`PromiseGraph`], and checked for
//! structural flaws: offers nobody accepts, consumers that rely on a single
//! source, promises hidden from the agents they affect, and promises made
//! on someone else's behalf. Assessments feed an observer-relative trust
//! table. Graphs export to canonical JSON and Graphviz DOT, optionally
//! filtered to what one observer can see.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod dsl;
pub mod export;
pub mod model;
mod span;

pub use analysis::{analyze_all, AnalysisConfig, AnalysisReport, Finding, Rule, Severity};
pub use dsl::{load, parse, Diagnostics};
pub use model::{validate, AgentId, PromiseGraph, SourceSpan, StructuralError};
