use std::fmt;

/// Stable error codes shared by the parser, the timeline validator, the
/// evaluator and the ontology validator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorCode {
    Syntax,
    DupId,
    UnknownRef,
    EmptyInterval,
    IntensityRange,
    ThresholdNonpositive,
    SelfCorrelate,
    Granularity,
    /// Relation subject outside the relation's domain.
    DomainViolation,
    /// Relation object outside the relation's range.
    RangeViolation,
    /// Information content entity that is not about anything.
    MissingAboutness,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E_SYNTAX",
            ErrorCode::DupId => "E_DUP_ID",
            ErrorCode::UnknownRef => "E_UNKNOWN_REF",
            ErrorCode::EmptyInterval => "E_EMPTY_INTERVAL",
            ErrorCode::IntensityRange => "E_INTENSITY_RANGE",
            ErrorCode::ThresholdNonpositive => "E_THRESHOLD_NONPOSITIVE",
            ErrorCode::SelfCorrelate => "E_SELF_CORRELATE",
            ErrorCode::Granularity => "E_GRANULARITY",
            ErrorCode::DomainViolation => "E_DOMAIN",
            ErrorCode::RangeViolation => "E_RANGE",
            ErrorCode::MissingAboutness => "E_MISSING_ABOUT",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

/// Which timeline record a validation diagnostic is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RecordRef {
    Agent(usize),
    Acquaintance(usize),
    Sensation(usize),
    Judgment(usize),
    Inhibition(usize),
    Query(usize),
    Setting(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagnostic {
    pub position: Option<Position>,
    pub code: ErrorCode,
    pub message: String,
    /// Identifier of the offending record or assertion, when it has one.
    pub subject: Option<String>,
    pub record: Option<RecordRef>,
    /// Field of the record that the problem belongs to.
    pub field: Option<&'static str>,
}

impl Diagnostic {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            position: None,
            code,
            message: message.into(),
            subject: None,
            record: None,
            field: None,
        }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.position = Some(Position { line, column });
        self
    }

    pub fn subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn record(mut self, record: RecordRef, field: Option<&'static str>) -> Self {
        self.record = Some(record);
        self.field = field;
        self
    }

    pub fn line(&self) -> Option<usize> {
        self.position.map(|p| p.line)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(Position { line, column }) = self.position {
            write!(f, "{line}:{column}: ")?;
        }
        write!(f, "{}: {}", self.code, self.message)
    }
}
