//! The declaration language: lexing, parsing and lowering to a
//! [`PromiseGraph`](crate::model::PromiseGraph).
//!
//! ```text
//! agent FAA kind=organization
//! superagent Public { FAA, Pilots }
//! promise p1 from Boeing to FAA scope [Pilots] provenance=inferred {
//!     offer mcas-existence "..." affects [Pilots]
//! }
//! imposition i1 from Southwest to Boeing kind=threat { "..." }
//! assessment a1 by Authors on p1 verdict=not-kept note "..."
//! ```

pub mod ast;
mod error;
mod lexer;
mod lower;
mod parser;

use std::fmt;

pub use crate::span::SourceSpan;
pub use ast::Document;
pub use error::{Expected, ParseError};
pub use lexer::{tokenize, Keyword, Token, TokenKind};
pub use lower::lower;
pub use parser::parse;

use crate::model::{PromiseGraph, StructuralError};

/// Everything that can go wrong between source text and a valid graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostics {
    Parse(Vec<ParseError>),
    Structural(Vec<StructuralError>),
}

impl Diagnostics {
    /// `(span, kind, message)` triples in source order.
    pub fn entries(&self) -> Vec<(SourceSpan, &'static str, String)> {
        match self {
            Diagnostics::Parse(errs) => errs
                .iter()
                .map(|e| (e.span, "parse-error", e.message.clone()))
                .collect(),
            Diagnostics::Structural(errs) => errs
                .iter()
                .map(|e| (e.span, e.code.as_str(), e.message.clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Diagnostics::Parse(e) => e.len(),
            Diagnostics::Structural(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (span, kind, msg)) in self.entries().into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{span}: {kind}: {msg}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostics {}

/// Parse and lower in one step.
pub fn load(src: &str) -> Result<PromiseGraph, Diagnostics> {
    let doc = parse(src).map_err(Diagnostics::Parse)?;
    lower(&doc).map_err(Diagnostics::Structural)
}
