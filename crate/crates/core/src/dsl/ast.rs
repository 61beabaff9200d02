//! Syntax tree produced by the parser. Names are kept as spanned strings;
//! resolution happens in [`super::lower`].

use crate::model::{AgentKind, ImpositionKind, Polarity, Provenance, Verdict};
use crate::span::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringLit {
    pub value: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn promises(&self) -> impl Iterator<Item = &PromiseDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Promise(p) => Some(p),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Agent(AgentDecl),
    Superagent(SuperagentDecl),
    Promise(PromiseDecl),
    Imposition(ImpositionDecl),
    Assessment(AssessmentDecl),
}

impl Item {
    pub fn span(&self) -> SourceSpan {
        match self {
            Item::Agent(d) => d.span,
            Item::Superagent(d) => d.span,
            Item::Promise(d) => d.span,
            Item::Imposition(d) => d.span,
            Item::Assessment(d) => d.span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentDecl {
    pub name: Name,
    pub kind: Option<AgentKind>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperagentDecl {
    pub name: Name,
    pub members: Vec<Name>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromiseDecl {
    pub id: Name,
    pub promiser: Name,
    pub promisees: Vec<Name>,
    pub scope: Vec<Name>,
    pub provenance: Option<Provenance>,
    pub body: BodyDecl,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyDecl {
    pub polarity: Polarity,
    pub topic: Name,
    pub text: Option<StringLit>,
    pub behalf: Option<Name>,
    pub affects: Vec<Name>,
    pub condition: Option<StringLit>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpositionDecl {
    pub id: Name,
    pub imposer: Name,
    pub imposee: Name,
    pub kind: Option<ImpositionKind>,
    pub text: StringLit,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssessmentDecl {
    pub id: Name,
    pub assessor: Name,
    pub target: Name,
    pub verdict: Verdict,
    pub note: Option<StringLit>,
    pub span: SourceSpan,
}
