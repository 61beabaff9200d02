use std::fmt;

/// Location of a construct inside a source document.
///
/// `start`/`end` are byte offsets; `line` and `column` are the 1-based
/// position of `start` (column counted in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub column: u32,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize, line: u32, column: u32) -> Self {
        debug_assert!(start <= end);
        SourceSpan {
            start,
            end,
            line,
            column,
        }
    }

    /// Smallest span covering both `self` and `other`; position comes from
    /// whichever starts first.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        let (first, _) = if self.start <= other.start {
            (self, other)
        } else {
            (other, self)
        };
        SourceSpan {
            start: first.start,
            end: self.end.max(other.end),
            line: first.line,
            column: first.column,
        }
    }

    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}
