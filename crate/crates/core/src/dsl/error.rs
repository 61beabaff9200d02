use std::fmt;

use thiserror::Error;

use crate::span::SourceSpan;

use super::lexer::Keyword;

/// A token class the parser was prepared to accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Keyword(Keyword),
    Ident,
    Str,
    Punct(char),
    Item,
    OneOf(&'static str),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Keyword(k) => write!(f, "keyword `{k}`"),
            Expected::Ident => f.write_str("identifier"),
            Expected::Str => f.write_str("string literal"),
            Expected::Punct(c) => write!(f, "`{c}`"),
            Expected::Item => f.write_str("declaration"),
            Expected::OneOf(words) => write!(f, "one of {words}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct ParseError {
    pub message: String,
    pub expected: Vec<Expected>,
    pub span: SourceSpan,
}

impl ParseError {
    pub fn new(message: impl Into<String>, expected: Vec<Expected>, span: SourceSpan) -> Self {
        ParseError {
            message: message.into(),
            expected,
            span,
        }
    }
}
