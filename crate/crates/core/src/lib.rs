//! Evaluation engine for the concatenation view of loving.
//!
//! A [`Timeline`] records agents, acquaintance, positive or negative
//! sensations causally correlated with another agent, value judgments, and
//! inhibition episodes. For a query `loves(S, P)` over an interval `i` the
//! [`Evaluator`] computes the love events (where strong positive sensation
//! and acquaintance-backed value judgment co-occur), the loving sum `s` and
//! complement `c`, and decides `T < s/c` in exact rational arithmetic.
//!
//! ```
//! use loveline::{parse_document, Evaluator};
//!
//! let doc = parse_document(loveline::fixtures::TIMELINE_A).unwrap();
//! let verdict = Evaluator::new(&doc.timeline).evaluate_query(&doc.queries()[0]).unwrap();
//! assert_eq!(verdict.s.to_string(), "4");
//! assert!(!verdict.holds);
//! ```

// Errors carry the offending exact rationals.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod diagnostic;
pub mod fixtures;
pub mod interval;
pub mod ontology;
pub mod oracle;
pub mod parser;
pub mod report;
pub mod semantics;
pub mod timeline;

pub use diagnostic::{Diagnostic, ErrorCode, Position};
pub use interval::{
    complement_within, intersect, measure, normalize, union, Instant, Interval, IntervalError, IntervalSet,
    MeasureValue, Rational,
};
pub use ontology::{
    check_subclass, project_timeline, validate, BfoClass, Individual, OntologyGraph, RelationAssertion,
    RelationKind,
};
pub use oracle::tick_oracle;
pub use parser::{parse_document, parse_rational, serialize, ParsedDocument, SourceDocument, Statement};
pub use semantics::{EvalError, Evaluator, Failure, LoveState, Trace, Verdict};
pub use timeline::{validate_timeline, AgentId, Config, QuerySpec, Timeline};
