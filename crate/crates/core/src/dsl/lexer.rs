use std::fmt;

use crate::model::is_reserved;
use crate::span::SourceSpan;

use super::error::{Expected, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Agent,
    Superagent,
    Promise,
    Imposition,
    Assessment,
    Kind,
    From,
    To,
    Scope,
    Provenance,
    Offer,
    Accept,
    Behalf,
    Affects,
    Condition,
    By,
    On,
    Verdict,
    Note,
}

impl Keyword {
    pub fn from_word(s: &str) -> Option<Keyword> {
        use Keyword::*;
        Some(match s {
            "agent" => Agent,
            "superagent" => Superagent,
            "promise" => Promise,
            "imposition" => Imposition,
            "assessment" => Assessment,
            "kind" => Kind,
            "from" => From,
            "to" => To,
            "scope" => Scope,
            "provenance" => Provenance,
            "offer" => Offer,
            "accept" => Accept,
            "behalf" => Behalf,
            "affects" => Affects,
            "condition" => Condition,
            "by" => By,
            "on" => On,
            "verdict" => Verdict,
            "note" => Note,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        use Keyword::*;
        match self {
            Agent => "agent",
            Superagent => "superagent",
            Promise => "promise",
            Imposition => "imposition",
            Assessment => "assessment",
            Kind => "kind",
            From => "from",
            To => "to",
            Scope => "scope",
            Provenance => "provenance",
            Offer => "offer",
            Accept => "accept",
            Behalf => "behalf",
            Affects => "affects",
            Condition => "condition",
            By => "by",
            On => "on",
            Verdict => "verdict",
            Note => "note",
        }
    }

    /// Keywords that open a top-level item.
    pub fn starts_item(self) -> bool {
        matches!(
            self,
            Keyword::Agent
                | Keyword::Superagent
                | Keyword::Promise
                | Keyword::Imposition
                | Keyword::Assessment
        )
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident,
    /// Carries the unescaped contents.
    Str(String),
    Punct(char),
    Newline,
    Eof,
}

/// `text` is the exact source slice, so string tokens keep their quotes and
/// escapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

impl Token {
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Keyword(k) => format!("keyword `{k}`"),
            TokenKind::Ident => format!("identifier `{}`", self.text),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::Punct(c) => format!("`{c}`"),
            TokenKind::Newline => "newline".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

const PUNCTUATION: &[char] = &['=', '{', '}', '[', ']', ','];

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    column: u32,
    tokens: Vec<Token>,
    errors: Vec<ParseError>,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: usize, line: u32, column: u32) -> SourceSpan {
        SourceSpan::new(start, self.pos, line, column)
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: u32, column: u32) {
        self.tokens.push(Token {
            kind,
            text: self.src[start..self.pos].to_string(),
            span: self.span_from(start, line, column),
        });
    }

    fn run(&mut self) {
        while let Some(c) = self.peek() {
            let (start, line, column) = (self.pos, self.line, self.column);
            match c {
                '\n' => {
                    self.bump();
                    self.push(TokenKind::Newline, start, line, column);
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                '"' => self.string(start, line, column),
                c if c.is_alphabetic() => {
                    while self
                        .peek()
                        .is_some_and(|c| c.is_alphanumeric() || c == '-' || c == '_')
                    {
                        self.bump();
                    }
                    let word = &self.src[start..self.pos];
                    let kind = match Keyword::from_word(word) {
                        Some(k) => TokenKind::Keyword(k),
                        None => {
                            debug_assert!(!is_reserved(word));
                            TokenKind::Ident
                        }
                    };
                    self.push(kind, start, line, column);
                }
                c if PUNCTUATION.contains(&c) => {
                    self.bump();
                    self.push(TokenKind::Punct(c), start, line, column);
                }
                c => {
                    self.bump();
                    self.errors.push(ParseError::new(
                        format!("illegal character {c:?}"),
                        Vec::new(),
                        self.span_from(start, line, column),
                    ));
                }
            }
        }
        let end = self.pos;
        self.tokens.push(Token {
            kind: TokenKind::Eof,
            text: String::new(),
            span: SourceSpan::new(end, end, self.line, self.column),
        });
    }

    fn string(&mut self, start: usize, line: u32, column: u32) {
        self.bump();
        let mut value = String::new();
        loop {
            match self.bump() {
                None => {
                    self.errors.push(ParseError::new(
                        "unterminated string literal",
                        vec![Expected::Punct('"')],
                        self.span_from(start, line, column),
                    ));
                    return;
                }
                Some('"') => break,
                Some('\\') => {
                    let (esc_start, esc_line, esc_col) = (self.pos - 1, self.line, self.column - 1);
                    match self.bump() {
                        Some(c @ ('"' | '\\')) => value.push(c),
                        Some(c) => {
                            self.errors.push(ParseError::new(
                                format!("unknown escape sequence `\\{c}`"),
                                Vec::new(),
                                self.span_from(esc_start, esc_line, esc_col),
                            ));
                        }
                        None => {
                            self.errors.push(ParseError::new(
                                "unterminated string literal",
                                vec![Expected::Punct('"')],
                                self.span_from(start, line, column),
                            ));
                            return;
                        }
                    }
                }
                Some(c) => value.push(c),
            }
        }
        self.push(TokenKind::Str(value), start, line, column);
    }
}

/// Lexes the whole input, collecting every error instead of stopping at the
/// first one.
pub(crate) fn lex(src: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut lexer = Lexer {
        src,
        pos: 0,
        line: 1,
        column: 1,
        tokens: Vec::new(),
        errors: Vec::new(),
    };
    lexer.run();
    (lexer.tokens, lexer.errors)
}

/// Splits a document into tokens. Whitespace other than newlines and `#`
/// comments are skipped; the returned list always ends with an `Eof` token.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let (tokens, mut errors) = lex(src);
    if errors.is_empty() {
        Ok(tokens)
    } else {
        Err(errors.swap_remove(0))
    }
}
