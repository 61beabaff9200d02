//! Resolved domain model: agents, superagents, promises, impositions and
//! assessments, plus the structural checks every analysis relies on.
//!
//! A [`PromiseGraph`] is a plain value. It is normally produced by
//! [`crate::dsl::lower`] or [`crate::export::from_json`], both of which
//! refuse to hand out a graph that fails [`validate`]. Graphs assembled by
//! hand should be passed through [`validate`] before analysis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use crate::span::SourceSpan;

/// Words the declaration language reserves. None of them may be used as a
/// name.
pub const RESERVED_WORDS: &[&str] = &[
    "agent",
    "superagent",
    "promise",
    "imposition",
    "assessment",
    "kind",
    "from",
    "to",
    "scope",
    "provenance",
    "offer",
    "accept",
    "behalf",
    "affects",
    "condition",
    "by",
    "on",
    "verdict",
    "note",
];

/// Lexical rule shared by agent names, topics and statement ids: a letter
/// followed by letters, digits, `-` or `_`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '-' || c == '_')
}

pub fn is_reserved(s: &str) -> bool {
    RESERVED_WORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a valid identifier")]
pub struct InvalidIdentifier(pub String);

macro_rules! ident_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Result<Self, InvalidIdentifier> {
                let s = s.into();
                if is_identifier(&s) && !is_reserved(&s) {
                    Ok($name(s))
                } else {
                    Err(InvalidIdentifier(s))
                }
            }

            /// Caller guarantees `s` already passed the identifier rule.
            pub(crate) fn from_lexed(s: impl Into<String>) -> Self {
                let s = s.into();
                debug_assert!(is_identifier(&s) && !is_reserved(&s), "{s}");
                $name(s)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl FromStr for $name {
            type Err = InvalidIdentifier;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $name::new(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl PartialEq<str> for $name {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $name {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }
    };
}

ident_newtype!(
    /// Name of an agent or superagent. Case-sensitive.
    AgentId
);
ident_newtype!(
    /// Subject channel of a promise body; offers and accepts bind on equal
    /// topics.
    Topic
);
ident_newtype!(
    /// Id of a promise, imposition or assessment.
    StatementId
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {what} `{value}`, expected one of: {expected}")]
pub struct UnknownVariant {
    pub what: &'static str,
    pub value: String,
    pub expected: String,
}

macro_rules! word_enum {
    ($(#[$meta:meta])* $name:ident, $what:literal { $($(#[$vmeta:meta])* $variant:ident => $word:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($(#[$vmeta])* $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $word),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = UnknownVariant;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($word => Ok($name::$variant),)+
                    _ => Err(UnknownVariant {
                        what: $what,
                        value: s.to_string(),
                        expected: [$($word),+].join(", "),
                    }),
                }
            }
        }
    };
}

word_enum!(
    #[derive(Default)]
    AgentKind, "agent kind" {
    #[default]
    Human => "human",
    Organization => "organization",
    Software => "software",
    Hardware => "hardware",
    System => "system",
    Standard => "standard",
});

word_enum!(
    /// `offer` is a + promise, `accept` a − promise.
    Polarity, "polarity" {
    Offer => "offer",
    Accept => "accept",
});

impl Polarity {
    /// `+` for offers, U+2212 MINUS SIGN for accepts.
    pub fn sign(self) -> &'static str {
        match self {
            Polarity::Offer => "+",
            Polarity::Accept => "\u{2212}",
        }
    }
}

word_enum!(
    /// Whether a modeled promise was stated by the promiser, inferred from
    /// evidence, or imputed by the modeler.
    #[derive(Default)]
    Provenance, "provenance" {
    #[default]
    Explicit => "explicit",
    Inferred => "inferred",
    Imputed => "imputed",
});

word_enum!(
    #[derive(Default)]
    ImpositionKind, "imposition kind" {
    #[default]
    Requirement => "requirement",
    Threat => "threat",
});

word_enum!(Verdict, "verdict" {
    Kept => "kept",
    NotKept => "not-kept",
    Indeterminate => "indeterminate",
});

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub id: AgentId,
    pub kind: AgentKind,
    pub span: SourceSpan,
}

/// A named group of agents. Members may themselves be superagents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superagent {
    pub id: AgentId,
    pub members: Vec<AgentId>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Body {
    pub polarity: Polarity,
    pub topic: Topic,
    pub text: String,
    pub behalf_of: Option<AgentId>,
    /// Agents impacted by the outcome, as declared by the model author.
    pub affects: Vec<AgentId>,
    pub condition: Option<String>,
}

impl Body {
    pub fn new(polarity: Polarity, topic: Topic) -> Self {
        Body {
            polarity,
            topic,
            text: String::new(),
            behalf_of: None,
            affects: Vec::new(),
            condition: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Promise {
    pub id: StatementId,
    pub promiser: AgentId,
    pub promisees: Vec<AgentId>,
    pub body: Body,
    pub scope: Vec<AgentId>,
    pub provenance: Provenance,
    pub span: SourceSpan,
}

impl Promise {
    pub fn polarity(&self) -> Polarity {
        self.body.polarity
    }

    pub fn topic(&self) -> &Topic {
        &self.body.topic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Imposition {
    pub id: StatementId,
    pub imposer: AgentId,
    pub imposee: AgentId,
    pub kind: ImpositionKind,
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub id: StatementId,
    pub assessor: AgentId,
    pub target: StatementId,
    pub verdict: Verdict,
    pub note: Option<String>,
    /// Position in document order, starting at 1.
    pub ordinal: u32,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorCode {
    UnresolvedReference,
    DuplicateId,
    CyclicSuperagent,
    NamespaceClash,
    InvalidEntity,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::UnresolvedReference => "unresolved-reference",
            ErrorCode::DuplicateId => "duplicate-id",
            ErrorCode::CyclicSuperagent => "cyclic-superagent",
            ErrorCode::NamespaceClash => "namespace-clash",
            ErrorCode::InvalidEntity => "invalid-entity",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {message}")]
pub struct StructuralError {
    pub code: ErrorCode,
    pub message: String,
    pub span: SourceSpan,
}

impl StructuralError {
    fn new(code: ErrorCode, span: SourceSpan, message: impl Into<String>) -> Self {
        StructuralError {
            code,
            message: message.into(),
            span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown promise `{0}`")]
pub struct UnknownPromise(pub String);

/// The resolved model all analyses run over. Collections keep declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PromiseGraph {
    pub agents: Vec<Agent>,
    pub superagents: Vec<Superagent>,
    pub promises: Vec<Promise>,
    pub impositions: Vec<Imposition>,
    pub assessments: Vec<Assessment>,
}

pub fn new_graph() -> PromiseGraph {
    PromiseGraph::default()
}

impl PromiseGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
            && self.superagents.is_empty()
            && self.promises.is_empty()
            && self.impositions.is_empty()
            && self.assessments.is_empty()
    }

    pub fn agent(&self, id: &str) -> Option<&Agent> {
        self.agents.iter().find(|a| a.id.as_str() == id)
    }

    pub fn superagent(&self, id: &str) -> Option<&Superagent> {
        self.superagents.iter().find(|s| s.id.as_str() == id)
    }

    pub fn promise(&self, id: &str) -> Option<&Promise> {
        self.promises.iter().find(|p| p.id.as_str() == id)
    }

    /// True for names declared as either an agent or a superagent.
    pub fn is_declared(&self, id: &str) -> bool {
        self.agent(id).is_some() || self.superagent(id).is_some()
    }

    /// Span of the declaration of `id`, if declared.
    pub fn declaration_span(&self, id: &str) -> Option<SourceSpan> {
        self.agent(id)
            .map(|a| a.span)
            .or_else(|| self.superagent(id).map(|s| s.span))
    }

    /// Replaces superagents by the transitive closure of their member
    /// agents. Plain agents (and undeclared names) pass through unchanged.
    /// Terminates on cyclic membership.
    pub fn expand<'a, I>(&self, names: I) -> BTreeSet<AgentId>
    where
        I: IntoIterator<Item = &'a AgentId>,
    {
        let index: BTreeMap<&str, &Superagent> = self
            .superagents
            .iter()
            .map(|s| (s.id.as_str(), s))
            .collect();
        let mut out = BTreeSet::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut stack: Vec<&AgentId> = names.into_iter().collect();
        stack.reverse();
        while let Some(name) = stack.pop() {
            match index.get(name.as_str()) {
                Some(sa) => {
                    if seen.insert(sa.id.as_str()) {
                        stack.extend(sa.members.iter().rev());
                    }
                }
                None => {
                    out.insert(name.clone());
                }
            }
        }
        out
    }

    /// Member agents of a superagent, transitively. For a plain agent this
    /// is the agent itself.
    pub fn member_closure(&self, id: &AgentId) -> BTreeSet<AgentId> {
        self.expand(std::iter::once(id))
    }

    /// Agents privy to a promise: the promiser plus the expanded promisees
    /// and scope. Expansion only goes downward, so belonging to some
    /// superagent never widens what an agent sees.
    pub fn visible_to(&self, promise: &str) -> Result<BTreeSet<AgentId>, UnknownPromise> {
        let p = self
            .promise(promise)
            .ok_or_else(|| UnknownPromise(promise.to_string()))?;
        Ok(self.visible_set(p))
    }

    pub(crate) fn visible_set(&self, p: &Promise) -> BTreeSet<AgentId> {
        let mut set = self.expand(p.promisees.iter().chain(p.scope.iter()));
        set.insert(p.promiser.clone());
        set
    }

    /// Whether `observer` is privy to `p`. A superagent observer is privy
    /// when it is named as promiser or when every one of its member agents
    /// is privy.
    pub fn is_privy(&self, p: &Promise, observer: &AgentId) -> bool {
        self.privy_in(&self.visible_set(p), observer)
    }

    pub(crate) fn privy_in(&self, visible: &BTreeSet<AgentId>, observer: &AgentId) -> bool {
        if visible.contains(observer) {
            return true;
        }
        if self.superagent(observer.as_str()).is_some() {
            let members = self.member_closure(observer);
            return !members.is_empty() && members.is_subset(visible);
        }
        false
    }
}

/// Checks every structural invariant of a graph. Returns an empty list iff
/// the graph is well formed. Errors come out in declaration order.
pub fn validate(graph: &PromiseGraph) -> Vec<StructuralError> {
    use ErrorCode::*;

    let mut errors = Vec::new();

    let mut agent_ids: BTreeSet<&str> = BTreeSet::new();
    for a in &graph.agents {
        if !agent_ids.insert(a.id.as_str()) {
            errors.push(StructuralError::new(
                DuplicateId,
                a.span,
                format!("agent `{}` is declared more than once", a.id),
            ));
        }
    }

    let mut super_ids: BTreeSet<&str> = BTreeSet::new();
    for s in &graph.superagents {
        if agent_ids.contains(s.id.as_str()) {
            errors.push(StructuralError::new(
                NamespaceClash,
                s.span,
                format!("superagent `{}` has the same name as an agent", s.id),
            ));
        } else if !super_ids.insert(s.id.as_str()) {
            errors.push(StructuralError::new(
                DuplicateId,
                s.span,
                format!("superagent `{}` is declared more than once", s.id),
            ));
        }
    }

    let declared =
        |name: &AgentId| agent_ids.contains(name.as_str()) || super_ids.contains(name.as_str());

    for s in &graph.superagents {
        if s.members.is_empty() {
            errors.push(StructuralError::new(
                InvalidEntity,
                s.span,
                format!("superagent `{}` has no members", s.id),
            ));
        }
        let mut seen = BTreeSet::new();
        for m in &s.members {
            if !declared(m) {
                errors.push(StructuralError::new(
                    UnresolvedReference,
                    s.span,
                    format!("superagent `{}` lists undeclared member `{m}`", s.id),
                ));
            } else if !seen.insert(m.as_str()) {
                errors.push(StructuralError::new(
                    DuplicateId,
                    s.span,
                    format!("superagent `{}` lists member `{m}` twice", s.id),
                ));
            }
        }
    }

    errors.extend(superagent_cycles(graph));

    let mut statement_ids: BTreeSet<String> = BTreeSet::new();
    let mut check_statement_id = |id: &StatementId, span: SourceSpan, errors: &mut Vec<_>| {
        if !statement_ids.insert(id.to_string()) {
            errors.push(StructuralError::new(
                DuplicateId,
                span,
                format!("id `{id}` is declared more than once"),
            ));
        }
    };

    for p in &graph.promises {
        check_statement_id(&p.id, p.span, &mut errors);
        let mut refs: Vec<(&str, &AgentId)> = vec![("promiser", &p.promiser)];
        refs.extend(p.promisees.iter().map(|a| ("promisee", a)));
        refs.extend(p.scope.iter().map(|a| ("scope", a)));
        refs.extend(p.body.behalf_of.iter().map(|a| ("behalf", a)));
        refs.extend(p.body.affects.iter().map(|a| ("affects", a)));
        for (role, name) in refs {
            if !declared(name) {
                errors.push(StructuralError::new(
                    UnresolvedReference,
                    p.span,
                    format!("promise `{}` names undeclared {role} `{name}`", p.id),
                ));
            }
        }
        for (role, list) in [
            ("promisee", &p.promisees),
            ("scope", &p.scope),
            ("affects", &p.body.affects),
        ] {
            let mut seen = BTreeSet::new();
            for name in list {
                if !seen.insert(name.as_str()) {
                    errors.push(StructuralError::new(
                        DuplicateId,
                        p.span,
                        format!("promise `{}` lists {role} `{name}` twice", p.id),
                    ));
                }
            }
        }
        if p.promisees.is_empty() {
            errors.push(StructuralError::new(
                InvalidEntity,
                p.span,
                format!("promise `{}` has no promisee", p.id),
            ));
        }
        if p.body.behalf_of.as_ref() == Some(&p.promiser) {
            errors.push(StructuralError::new(
                InvalidEntity,
                p.span,
                format!(
                    "promise `{}` is made on behalf of its own promiser `{}`",
                    p.id, p.promiser
                ),
            ));
        }
    }

    for i in &graph.impositions {
        check_statement_id(&i.id, i.span, &mut errors);
        for (role, name) in [("imposer", &i.imposer), ("imposee", &i.imposee)] {
            if !declared(name) {
                errors.push(StructuralError::new(
                    UnresolvedReference,
                    i.span,
                    format!("imposition `{}` names undeclared {role} `{name}`", i.id),
                ));
            }
        }
        if i.imposer == i.imposee {
            errors.push(StructuralError::new(
                InvalidEntity,
                i.span,
                format!(
                    "imposition `{}` is imposed by `{}` on itself",
                    i.id, i.imposer
                ),
            ));
        }
    }

    let promise_ids: BTreeSet<&str> = graph.promises.iter().map(|p| p.id.as_str()).collect();
    let mut last_ordinal: Option<u32> = None;
    for a in &graph.assessments {
        check_statement_id(&a.id, a.span, &mut errors);
        if !declared(&a.assessor) {
            errors.push(StructuralError::new(
                UnresolvedReference,
                a.span,
                format!(
                    "assessment `{}` names undeclared assessor `{}`",
                    a.id, a.assessor
                ),
            ));
        }
        if !promise_ids.contains(a.target.as_str()) {
            errors.push(StructuralError::new(
                UnresolvedReference,
                a.span,
                format!(
                    "assessment `{}` targets unknown promise `{}`",
                    a.id, a.target
                ),
            ));
        }
        if last_ordinal.is_some_and(|prev| a.ordinal <= prev) {
            errors.push(StructuralError::new(
                InvalidEntity,
                a.span,
                format!(
                    "assessment `{}` is out of order (ordinal {})",
                    a.id, a.ordinal
                ),
            ));
        }
        last_ordinal = Some(a.ordinal);
    }

    errors.sort_by_key(|e| e.span.start);
    errors
}

/// One error per membership cycle, reported at the earliest declared
/// superagent on the cycle.
fn superagent_cycles(graph: &PromiseGraph) -> Vec<StructuralError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }

    let index: BTreeMap<&str, usize> = graph
        .superagents
        .iter()
        .enumerate()
        .rev()
        .map(|(i, s)| (s.id.as_str(), i))
        .collect();
    let mut marks = vec![Mark::New; graph.superagents.len()];
    let mut on_cycle = vec![false; graph.superagents.len()];
    let mut cycles: Vec<Vec<usize>> = Vec::new();

    for root in 0..graph.superagents.len() {
        if marks[root] != Mark::New {
            continue;
        }
        // iterative DFS; path holds (node, next member index)
        let mut path: Vec<(usize, usize)> = vec![(root, 0)];
        marks[root] = Mark::Active;
        while let Some(&mut (node, ref mut next)) = path.last_mut() {
            let members = &graph.superagents[node].members;
            if *next >= members.len() {
                marks[node] = Mark::Done;
                path.pop();
                continue;
            }
            let member = members[*next].as_str();
            *next += 1;
            let Some(&child) = index.get(member) else {
                continue;
            };
            match marks[child] {
                Mark::New => {
                    marks[child] = Mark::Active;
                    path.push((child, 0));
                }
                Mark::Active => {
                    let pos = path.iter().position(|&(n, _)| n == child).unwrap();
                    let cycle: Vec<usize> = path[pos..].iter().map(|&(n, _)| n).collect();
                    if !cycle.iter().any(|&n| on_cycle[n]) {
                        for &n in &cycle {
                            on_cycle[n] = true;
                        }
                        cycles.push(cycle);
                    }
                }
                Mark::Done => {}
            }
        }
    }

    cycles
        .into_iter()
        .map(|cycle| {
            let first = *cycle.iter().min().unwrap();
            let names: Vec<&str> = cycle
                .iter()
                .map(|&n| graph.superagents[n].id.as_str())
                .collect();
            StructuralError::new(
                ErrorCode::CyclicSuperagent,
                graph.superagents[first].span,
                format!(
                    "superagent membership is cyclic: {} -> {}",
                    names.join(" -> "),
                    names[0]
                ),
            )
        })
        .collect()
}
