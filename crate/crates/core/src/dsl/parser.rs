use std::str::FromStr;

use crate::model::{AgentKind, ImpositionKind, Polarity, Provenance, Verdict};
use crate::span::SourceSpan;

use super::ast::*;
use super::error::{Expected, ParseError};
use super::lexer::{lex, Keyword, Token, TokenKind};

type PResult<T> = Result<T, ParseError>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if !self.at_eof() {
            self.pos += 1;
        }
        tok
    }

    fn prev_span(&self) -> SourceSpan {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    fn error(&self, expected: Vec<Expected>) -> ParseError {
        let tok = self.peek();
        let wanted = expected
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" or ");
        ParseError::new(
            format!("expected {wanted}, found {}", tok.describe()),
            expected,
            tok.span,
        )
    }

    fn at_keyword(&self, kw: Keyword) -> bool {
        self.peek().kind == TokenKind::Keyword(kw)
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.at_keyword(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: Keyword) -> PResult<SourceSpan> {
        if self.at_keyword(kw) {
            Ok(self.advance().span)
        } else {
            Err(self.error(vec![Expected::Keyword(kw)]))
        }
    }

    fn punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(vec![Expected::Punct(c)]))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        if self.peek().kind == TokenKind::Ident {
            let tok = self.advance();
            Ok(Name {
                text: tok.text,
                span: tok.span,
            })
        } else {
            Err(self.error(vec![Expected::Ident]))
        }
    }

    fn string(&mut self) -> PResult<StringLit> {
        match &self.peek().kind {
            TokenKind::Str(value) => {
                let value = value.clone();
                let span = self.advance().span;
                Ok(StringLit { value, span })
            }
            _ => Err(self.error(vec![Expected::Str])),
        }
    }

    fn opt_string(&mut self) -> Option<StringLit> {
        match &self.peek().kind {
            TokenKind::Str(_) => self.string().ok(),
            _ => None,
        }
    }

    /// An identifier whose text must name a variant of `T`.
    fn word<T>(&mut self, words: &'static str) -> PResult<T>
    where
        T: FromStr,
    {
        if self.peek().kind != TokenKind::Ident {
            return Err(self.error(vec![Expected::OneOf(words)]));
        }
        match self.peek().text.parse::<T>() {
            Ok(v) => {
                self.advance();
                Ok(v)
            }
            Err(_) => Err(self.error(vec![Expected::OneOf(words)])),
        }
    }

    /// `IDENT {"," IDENT}`
    fn name_list(&mut self) -> PResult<Vec<Name>> {
        let mut names = vec![self.name()?];
        while self.eat_punct(',') {
            names.push(self.name()?);
        }
        Ok(names)
    }

    /// `"[" [IDENT {"," IDENT}] "]"`, optionally allowing an empty list.
    fn bracket_list(&mut self, allow_empty: bool) -> PResult<Vec<Name>> {
        self.punct('[')?;
        if allow_empty && self.eat_punct(']') {
            return Ok(Vec::new());
        }
        let names = self.name_list()?;
        self.punct(']')?;
        Ok(names)
    }

    fn item(&mut self) -> PResult<Item> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::Keyword(Keyword::Agent) => self.agent().map(Item::Agent),
            TokenKind::Keyword(Keyword::Superagent) => self.superagent().map(Item::Superagent),
            TokenKind::Keyword(Keyword::Promise) => self.promise().map(Item::Promise),
            TokenKind::Keyword(Keyword::Imposition) => self.imposition().map(Item::Imposition),
            TokenKind::Keyword(Keyword::Assessment) => self.assessment().map(Item::Assessment),
            _ => Err(self.error(vec![
                Expected::Keyword(Keyword::Agent),
                Expected::Keyword(Keyword::Superagent),
                Expected::Keyword(Keyword::Promise),
                Expected::Keyword(Keyword::Imposition),
                Expected::Keyword(Keyword::Assessment),
            ])),
        }
    }

    fn agent(&mut self) -> PResult<AgentDecl> {
        let start = self.keyword(Keyword::Agent)?;
        let name = self.name()?;
        let kind =
            if self.eat_keyword(Keyword::Kind) {
                self.punct('=')?;
                Some(self.word::<AgentKind>(
                    "human, organization, software, hardware, system, standard",
                )?)
            } else {
                None
            };
        Ok(AgentDecl {
            name,
            kind,
            span: start.to(self.prev_span()),
        })
    }

    fn superagent(&mut self) -> PResult<SuperagentDecl> {
        let start = self.keyword(Keyword::Superagent)?;
        let name = self.name()?;
        self.punct('{')?;
        let members = self.name_list()?;
        self.punct('}')?;
        Ok(SuperagentDecl {
            name,
            members,
            span: start.to(self.prev_span()),
        })
    }

    fn promise(&mut self) -> PResult<PromiseDecl> {
        let start = self.keyword(Keyword::Promise)?;
        let id = self.name()?;
        self.keyword(Keyword::From)?;
        let promiser = self.name()?;
        self.keyword(Keyword::To)?;
        let promisees = self.name_list()?;
        let scope = if self.eat_keyword(Keyword::Scope) {
            self.bracket_list(true)?
        } else {
            Vec::new()
        };
        let provenance = if self.eat_keyword(Keyword::Provenance) {
            self.punct('=')?;
            Some(self.word::<Provenance>("explicit, inferred, imputed")?)
        } else {
            None
        };
        self.punct('{')?;
        let body = self.body()?;
        self.punct('}')?;
        Ok(PromiseDecl {
            id,
            promiser,
            promisees,
            scope,
            provenance,
            body,
            span: start.to(self.prev_span()),
        })
    }

    fn body(&mut self) -> PResult<BodyDecl> {
        let start = self.peek().span;
        let polarity = if self.eat_keyword(Keyword::Offer) {
            Polarity::Offer
        } else if self.eat_keyword(Keyword::Accept) {
            Polarity::Accept
        } else {
            return Err(self.error(vec![
                Expected::Keyword(Keyword::Offer),
                Expected::Keyword(Keyword::Accept),
            ]));
        };
        let topic = self.name()?;
        let text = self.opt_string();
        let behalf = if self.eat_keyword(Keyword::Behalf) {
            Some(self.name()?)
        } else {
            None
        };
        let affects = if self.eat_keyword(Keyword::Affects) {
            self.bracket_list(false)?
        } else {
            Vec::new()
        };
        let condition = if self.eat_keyword(Keyword::Condition) {
            Some(self.string()?)
        } else {
            None
        };
        Ok(BodyDecl {
            polarity,
            topic,
            text,
            behalf,
            affects,
            condition,
            span: start.to(self.prev_span()),
        })
    }

    fn imposition(&mut self) -> PResult<ImpositionDecl> {
        let start = self.keyword(Keyword::Imposition)?;
        let id = self.name()?;
        self.keyword(Keyword::From)?;
        let imposer = self.name()?;
        self.keyword(Keyword::To)?;
        let imposee = self.name()?;
        let kind = if self.eat_keyword(Keyword::Kind) {
            self.punct('=')?;
            Some(self.word::<ImpositionKind>("requirement, threat")?)
        } else {
            None
        };
        self.punct('{')?;
        let text = self.string()?;
        self.punct('}')?;
        Ok(ImpositionDecl {
            id,
            imposer,
            imposee,
            kind,
            text,
            span: start.to(self.prev_span()),
        })
    }

    fn assessment(&mut self) -> PResult<AssessmentDecl> {
        let start = self.keyword(Keyword::Assessment)?;
        let id = self.name()?;
        self.keyword(Keyword::By)?;
        let assessor = self.name()?;
        self.keyword(Keyword::On)?;
        let target = self.name()?;
        self.keyword(Keyword::Verdict)?;
        self.punct('=')?;
        let verdict = self.word::<Verdict>("kept, not-kept, indeterminate")?;
        let note = if self.eat_keyword(Keyword::Note) {
            Some(self.string()?)
        } else {
            None
        };
        Ok(AssessmentDecl {
            id,
            assessor,
            target,
            verdict,
            note,
            span: start.to(self.prev_span()),
        })
    }

    /// Skips to the next keyword that can open an item, always making
    /// progress.
    fn recover(&mut self, error_pos: usize) {
        if self.pos == error_pos {
            self.advance();
        }
        while !self.at_eof() {
            if let TokenKind::Keyword(k) = self.peek().kind {
                if k.starts_item() {
                    return;
                }
            }
            self.advance();
        }
    }
}

/// Parses a document. On failure every error found is returned (the list
/// is never empty); the parser resynchronises at the next top-level
/// keyword after each error.
pub fn parse(src: &str) -> Result<Document, Vec<ParseError>> {
    let (tokens, mut errors) = lex(src);
    let tokens: Vec<Token> = tokens
        .into_iter()
        .filter(|t| t.kind != TokenKind::Newline)
        .collect();
    let mut parser = Parser { tokens, pos: 0 };
    let mut items = Vec::new();
    while !parser.at_eof() {
        let before = parser.pos;
        match parser.item() {
            Ok(item) => items.push(item),
            Err(err) => {
                let at = parser.pos;
                errors.push(err);
                if at == before {
                    parser.recover(at);
                } else {
                    parser.recover(usize::MAX);
                }
            }
        }
    }
    if errors.is_empty() {
        Ok(Document { items })
    } else {
        errors.sort_by_key(|e| e.span.start);
        Err(errors)
    }
}
