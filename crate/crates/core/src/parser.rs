//! Parser and canonical serializer for the `loveline v1` timeline format.
//!
//! One statement per line; `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! agent ID
//! acquaintance ID ID at RAT
//! sensation ID bearer=ID correlate=ID valence=(positive|negative) [intensity=RAT] extent=SET
//! judgment ID agent=ID target=ID extent=SET
//! inhibition ID agent=ID [toward=ID] extent=SET
//! set (threshold|min_intensity) RAT
//! query loves ID ID interval=IVL [threshold=RAT]
//! ```
//!
//! `IVL` is `[RAT,RAT)` and `SET` is one or more `IVL` joined by `+`.
//! Lines are parsed independently so every malformed line is reported.
//! References are resolved in a second pass, so declarations may follow
//! their uses.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::diagnostic::{Diagnostic, ErrorCode, RecordRef};
use crate::interval::{Instant, Interval, IntervalSet, Rational};
use crate::timeline::{
    AcquaintanceRecord, AgentId, Config, InhibitionEpisode, QuerySpec, SensationEpisode, Timeline, Valence,
    ValueJudgment,
};

/// Leading comment written by [`serialize`].
pub const HEADER: &str = "# loveline v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    Threshold,
    MinIntensity,
}

impl Setting {
    pub fn as_str(self) -> &'static str {
        match self {
            Setting::Threshold => "threshold",
            Setting::MinIntensity => "min_intensity",
        }
    }
}

/// One source statement, with extents already normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Agent {
        id: String,
    },
    Acquaintance {
        subject: String,
        object: String,
        at: Rational,
    },
    Sensation {
        id: String,
        bearer: String,
        correlate: String,
        valence: Valence,
        intensity: Option<Rational>,
        extent: IntervalSet,
    },
    Judgment {
        id: String,
        agent: String,
        target: String,
        extent: IntervalSet,
    },
    Inhibition {
        id: String,
        agent: String,
        toward: Option<String>,
        extent: IntervalSet,
    },
    Set {
        setting: Setting,
        value: Rational,
    },
    Query {
        subject: String,
        object: String,
        interval: Interval,
        threshold: Option<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDocument {
    pub text: String,
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDocument {
    pub source: SourceDocument,
    pub timeline: Timeline,
}

impl ParsedDocument {
    pub fn queries(&self) -> &[QuerySpec] {
        &self.timeline.queries
    }
}

/// Parses a rational literal: `INT`, `INT/POSINT` or a decimal such as `-0.25`.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let malformed = || format!("`{token}` is not a rational number");
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };

    let value = if let Some((numer, denom)) = body.split_once('/') {
        if !digits(numer) || !digits(denom) {
            return Err(malformed());
        }
        let denom: BigInt = denom.parse().map_err(|_| malformed())?;
        if denom.is_zero() {
            return Err(format!("`{token}` has a zero denominator"));
        }
        Rational::new(numer.parse().map_err(|_| malformed())?, denom)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if !digits(whole) || !digits(frac) {
            return Err(malformed());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let numer: BigInt = format!("{whole}{frac}").parse().map_err(|_| malformed())?;
        Rational::new(numer, scale)
    } else {
        if !digits(body) {
            return Err(malformed());
        }
        Rational::from_integer(body.parse().map_err(|_| malformed())?)
    };
    Ok(if negative { -value } else { value })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Word(String),
    Number(String),
    Equals,
    Open,
    Comma,
    Close,
    Plus,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    column: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Word(w) | TokenKind::Number(w) => format!("`{w}`"),
            TokenKind::Equals => "`=`".into(),
            TokenKind::Open => "`[`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Close => "`)`".into(),
            TokenKind::Plus => "`+`".into(),
        }
    }
}

type LineResult<T> = Result<T, (ErrorCode, usize, String)>;

fn lex(line: &str) -> LineResult<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = k + 1;
        let take_while = |k: &mut usize, pred: fn(char) -> bool| {
            let start = *k;
            while *k < chars.len() && pred(chars[*k]) {
                *k += 1;
            }
            chars[start..*k].iter().collect::<String>()
        };
        let kind = match c {
            '#' => break,
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '=' => TokenKind::Equals,
            '[' => TokenKind::Open,
            ',' => TokenKind::Comma,
            ')' => TokenKind::Close,
            '+' => TokenKind::Plus,
            c if c.is_ascii_alphabetic() || c == '_' => {
                tokens.push(Token {
                    kind: TokenKind::Word(take_while(&mut k, |c| c.is_ascii_alphanumeric() || c == '_')),
                    column,
                });
                continue;
            }
            c if c.is_ascii_digit() || c == '-' || c == '.' => {
                let literal = take_while(&mut k, |c| c.is_ascii_digit() || c == '-' || c == '.' || c == '/');
                tokens.push(Token {
                    kind: TokenKind::Number(literal),
                    column,
                });
                continue;
            }
            other => {
                return Err((ErrorCode::Syntax, column, format!("unexpected character `{other}`")));
            }
        };
        tokens.push(Token { kind, column });
        k += 1;
    }
    Ok(tokens)
}

/// Source location of one parsed statement and of its fields' values.
#[derive(Debug, Clone, Default)]
struct Span {
    line: usize,
    column: usize,
    fields: HashMap<&'static str, usize>,
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    end_column: usize,
    span: Span,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn next(&mut self, expected: &str) -> LineResult<&'a Token> {
        let tok = self.tokens.get(self.pos).ok_or_else(|| {
            (
                ErrorCode::Syntax,
                self.end_column,
                format!("expected {expected}, found end of line"),
            )
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn unexpected<T>(tok: &Token, expected: &str) -> LineResult<T> {
        Err((
            ErrorCode::Syntax,
            tok.column,
            format!("expected {expected}, found {}", tok.describe()),
        ))
    }

    fn word(&mut self, expected: &str) -> LineResult<(&'a str, usize)> {
        let tok = self.next(expected)?;
        match &tok.kind {
            TokenKind::Word(w) => Ok((w.as_str(), tok.column)),
            _ => Self::unexpected(tok, expected),
        }
    }

    fn ident(&mut self, field: &'static str) -> LineResult<String> {
        let (w, column) = self.word("an identifier")?;
        self.span.fields.insert(field, column);
        Ok(w.to_owned())
    }

    fn keyword(&mut self, kw: &str) -> LineResult<()> {
        let tok = self.next(&format!("`{kw}`"))?;
        match &tok.kind {
            TokenKind::Word(w) if w == kw => Ok(()),
            _ => Self::unexpected(tok, &format!("`{kw}`")),
        }
    }

    fn punct(&mut self, kind: TokenKind, expected: &str) -> LineResult<usize> {
        let tok = self.next(expected)?;
        if tok.kind == kind {
            Ok(tok.column)
        } else {
            Self::unexpected(tok, expected)
        }
    }

    fn rational(&mut self) -> LineResult<(Rational, usize)> {
        let tok = self.next("a rational number")?;
        match &tok.kind {
            TokenKind::Number(n) => parse_rational(n)
                .map(|r| (r, tok.column))
                .map_err(|msg| (ErrorCode::Syntax, tok.column, msg)),
            _ => Self::unexpected(tok, "a rational number"),
        }
    }

    fn interval(&mut self) -> LineResult<Interval> {
        let open = self.punct(TokenKind::Open, "`[`")?;
        let (start, _) = self.rational()?;
        self.punct(TokenKind::Comma, "`,`")?;
        let (end, _) = self.rational()?;
        self.punct(TokenKind::Close, "`)`")?;
        Interval::new(Instant::from(start), Instant::from(end)).map_err(|e| (ErrorCode::EmptyInterval, open, e.to_string()))
    }

    fn interval_set(&mut self) -> LineResult<IntervalSet> {
        let mut members = vec![self.interval()?];
        while matches!(self.peek(), Some(Token { kind: TokenKind::Plus, .. })) {
            self.pos += 1;
            members.push(self.interval()?);
        }
        Ok(IntervalSet::normalize(members))
    }

    fn finish(&self) -> LineResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => Err((
                ErrorCode::Syntax,
                tok.column,
                format!("unexpected {} after the end of the statement", tok.describe()),
            )),
        }
    }

    /// Parses `key=value` pairs until end of line. `fields` lists the allowed
    /// keys and whether each is required; values are parsed by `value`.
    fn pairs<V>(
        &mut self,
        fields: &[(&'static str, bool)],
        mut value: impl FnMut(&mut Self, &'static str) -> LineResult<V>,
    ) -> LineResult<HashMap<&'static str, V>> {
        let mut out = HashMap::new();
        while self.peek().is_some() {
            let (key, column) = self.word("a `key=value` pair")?;
            let Some(&(key, _)) = fields.iter().find(|(k, _)| *k == key) else {
                let allowed: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
                return Err((
                    ErrorCode::Syntax,
                    column,
                    format!("unknown key `{key}` (expected one of {})", allowed.join(", ")),
                ));
            };
            if out.contains_key(key) {
                return Err((ErrorCode::Syntax, column, format!("key `{key}` given twice")));
            }
            self.punct(TokenKind::Equals, "`=`")?;
            self.span.fields.insert(key, self.column());
            let v = value(self, key)?;
            out.insert(key, v);
        }
        if let Some((missing, _)) = fields.iter().find(|(k, required)| *required && !out.contains_key(k)) {
            return Err((ErrorCode::Syntax, self.end_column, format!("missing `{missing}=`")));
        }
        Ok(out)
    }
}

#[derive(Debug)]
enum Value {
    Id(String),
    Valence(Valence),
    Rational(Rational),
    Set(IntervalSet),
    Interval(Interval),
}

fn parse_value(cur: &mut Cursor<'_>, key: &'static str) -> LineResult<Value> {
    match key {
        "bearer" | "correlate" | "agent" | "target" | "toward" => {
            let (w, _) = cur.word("an identifier")?;
            Ok(Value::Id(w.to_owned()))
        }
        "valence" => {
            let tok = cur.next("`positive` or `negative`")?;
            match &tok.kind {
                TokenKind::Word(w) if w == "positive" => Ok(Value::Valence(Valence::Positive)),
                TokenKind::Word(w) if w == "negative" => Ok(Value::Valence(Valence::Negative)),
                _ => Cursor::unexpected(tok, "`positive` or `negative`"),
            }
        }
        "intensity" | "threshold" => Ok(Value::Rational(cur.rational()?.0)),
        "extent" => Ok(Value::Set(cur.interval_set()?)),
        "interval" => Ok(Value::Interval(cur.interval()?)),
        _ => unreachable!("key table and value parser disagree on `{key}`"),
    }
}

struct Pairs(HashMap<&'static str, Value>);

impl Pairs {
    fn id(&mut self, key: &str) -> Option<String> {
        match self.0.remove(key) {
            Some(Value::Id(v)) => Some(v),
            _ => None,
        }
    }

    fn rational(&mut self, key: &str) -> Option<Rational> {
        match self.0.remove(key) {
            Some(Value::Rational(v)) => Some(v),
            _ => None,
        }
    }

    fn set(&mut self, key: &str) -> IntervalSet {
        match self.0.remove(key) {
            Some(Value::Set(v)) => v,
            _ => unreachable!("required key `{key}` was checked"),
        }
    }

    fn required_id(&mut self, key: &str) -> String {
        self.id(key).unwrap_or_else(|| unreachable!("required key `{key}` was checked"))
    }
}

fn parse_statement(cur: &mut Cursor<'_>) -> LineResult<Statement> {
    let (directive, column) = cur.word("a statement keyword")?;
    let stmt = match directive {
        "agent" => Statement::Agent { id: cur.ident("id")? },
        "acquaintance" => {
            let subject = cur.ident("subject")?;
            let object = cur.ident("object")?;
            cur.keyword("at")?;
            let (at, at_column) = cur.rational()?;
            cur.span.fields.insert("at", at_column);
            Statement::Acquaintance { subject, object, at }
        }
        "sensation" => {
            let id = cur.ident("id")?;
            let mut kv = Pairs(cur.pairs(
                &[
                    ("bearer", true),
                    ("correlate", true),
                    ("valence", true),
                    ("intensity", false),
                    ("extent", true),
                ],
                parse_value,
            )?);
            let valence = match kv.0.remove("valence") {
                Some(Value::Valence(v)) => v,
                _ => unreachable!("required key `valence` was checked"),
            };
            Statement::Sensation {
                id,
                bearer: kv.required_id("bearer"),
                correlate: kv.required_id("correlate"),
                valence,
                intensity: kv.rational("intensity"),
                extent: kv.set("extent"),
            }
        }
        "judgment" => {
            let id = cur.ident("id")?;
            let mut kv = Pairs(cur.pairs(&[("agent", true), ("target", true), ("extent", true)], parse_value)?);
            Statement::Judgment {
                id,
                agent: kv.required_id("agent"),
                target: kv.required_id("target"),
                extent: kv.set("extent"),
            }
        }
        "inhibition" => {
            let id = cur.ident("id")?;
            let mut kv = Pairs(cur.pairs(&[("agent", true), ("toward", false), ("extent", true)], parse_value)?);
            Statement::Inhibition {
                id,
                agent: kv.required_id("agent"),
                toward: kv.id("toward"),
                extent: kv.set("extent"),
            }
        }
        "set" => {
            let (key, key_column) = cur.word("`threshold` or `min_intensity`")?;
            let setting = match key {
                "threshold" => Setting::Threshold,
                "min_intensity" => Setting::MinIntensity,
                other => {
                    return Err((
                        ErrorCode::Syntax,
                        key_column,
                        format!("unknown setting `{other}` (expected threshold or min_intensity)"),
                    ))
                }
            };
            let (value, value_column) = cur.rational()?;
            cur.span.fields.insert("value", value_column);
            Statement::Set { setting, value }
        }
        "query" => {
            cur.keyword("loves")?;
            let subject = cur.ident("subject")?;
            let object = cur.ident("object")?;
            let mut kv = Pairs(cur.pairs(&[("interval", true), ("threshold", false)], parse_value)?);
            let interval = match kv.0.remove("interval") {
                Some(Value::Interval(iv)) => iv,
                _ => unreachable!("required key `interval` was checked"),
            };
            Statement::Query {
                subject,
                object,
                interval,
                threshold: kv.rational("threshold"),
            }
        }
        other => return Err((ErrorCode::Syntax, column, format!("unknown statement `{other}`"))),
    };
    cur.finish()?;
    Ok(stmt)
}

/// First pass: every line on its own. Returns the statements that parsed,
/// with their spans, and a diagnostic for every line that did not.
fn parse_lines(text: &str) -> (Vec<(Statement, Span)>, Vec<Diagnostic>) {
    let mut statements = Vec::new();
    let mut diags = Vec::new();
    for (k, raw) in text.split('\n').enumerate() {
        let line_no = k + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = match lex(line) {
            Ok(tokens) => tokens,
            Err((code, column, message)) => {
                diags.push(Diagnostic::new(code, message).at(line_no, column));
                continue;
            }
        };
        let Some(first) = tokens.first() else { continue };
        let mut cur = Cursor {
            tokens: &tokens,
            pos: 0,
            end_column: line.chars().count() + 1,
            span: Span {
                line: line_no,
                column: first.column,
                fields: HashMap::new(),
            },
        };
        match parse_statement(&mut cur) {
            Ok(stmt) => statements.push((stmt, cur.span)),
            Err((code, column, message)) => diags.push(Diagnostic::new(code, message).at(line_no, column)),
        }
    }
    (statements, diags)
}

struct Spans {
    agents: Vec<Span>,
    acquaintances: Vec<Span>,
    sensations: Vec<Span>,
    judgments: Vec<Span>,
    inhibitions: Vec<Span>,
    queries: Vec<Span>,
    settings: HashMap<&'static str, Span>,
}

impl Spans {
    fn locate(&self, diag: &Diagnostic) -> Option<(usize, usize)> {
        let span = match diag.record? {
            RecordRef::Agent(k) => self.agents.get(k),
            RecordRef::Acquaintance(k) => self.acquaintances.get(k),
            RecordRef::Sensation(k) => self.sensations.get(k),
            RecordRef::Judgment(k) => self.judgments.get(k),
            RecordRef::Inhibition(k) => self.inhibitions.get(k),
            RecordRef::Query(k) => self.queries.get(k),
            RecordRef::Setting(key) => {
                let span = self.settings.get(key)?;
                return Some((span.line, span.fields.get("value").copied().unwrap_or(span.column)));
            }
        }?;
        let column = diag
            .field
            .and_then(|f| span.fields.get(f).copied())
            .unwrap_or(span.column);
        Some((span.line, column))
    }
}

fn agent(id: &str) -> AgentId {
    AgentId::new(id)
}

fn build(statements: &[(Statement, Span)]) -> (Timeline, Spans) {
    let mut t = Timeline::default();
    let mut spans = Spans {
        agents: Vec::new(),
        acquaintances: Vec::new(),
        sensations: Vec::new(),
        judgments: Vec::new(),
        inhibitions: Vec::new(),
        queries: Vec::new(),
        settings: HashMap::new(),
    };
    let mut config = Config::default();
    for (stmt, span) in statements {
        let span = span.clone();
        match stmt {
            Statement::Agent { id } => {
                t.agents.push(agent(id));
                spans.agents.push(span);
            }
            Statement::Acquaintance { subject, object, at } => {
                t.acquaintances.push(AcquaintanceRecord {
                    subject: agent(subject),
                    object: agent(object),
                    at: Instant::from(at.clone()),
                });
                spans.acquaintances.push(span);
            }
            Statement::Sensation {
                id,
                bearer,
                correlate,
                valence,
                intensity,
                extent,
            } => {
                t.sensations.push(SensationEpisode {
                    id: id.clone(),
                    bearer: agent(bearer),
                    correlate: agent(correlate),
                    valence: *valence,
                    intensity: intensity.clone().unwrap_or_else(|| Rational::from_integer(1.into())),
                    extent: extent.clone(),
                });
                spans.sensations.push(span);
            }
            Statement::Judgment {
                id,
                agent: who,
                target,
                extent,
            } => {
                t.judgments.push(ValueJudgment {
                    id: id.clone(),
                    agent: agent(who),
                    target: target.clone(),
                    extent: extent.clone(),
                });
                spans.judgments.push(span);
            }
            Statement::Inhibition {
                id,
                agent: who,
                toward,
                extent,
            } => {
                t.inhibitions.push(InhibitionEpisode {
                    id: id.clone(),
                    agent: agent(who),
                    toward: toward.as_deref().map(agent),
                    extent: extent.clone(),
                });
                spans.inhibitions.push(span);
            }
            Statement::Set { setting, value } => {
                match setting {
                    Setting::Threshold => config.threshold_default = value.clone(),
                    Setting::MinIntensity => config.min_intensity = value.clone(),
                }
                spans.settings.insert(setting.as_str(), span);
            }
            Statement::Query {
                subject,
                object,
                interval,
                threshold,
            } => {
                t.queries.push(QuerySpec {
                    subject: agent(subject),
                    object: agent(object),
                    interval: interval.clone(),
                    threshold: threshold.clone(),
                });
                spans.queries.push(span);
            }
        }
    }
    t.config = config;
    (t, spans)
}

/// Parses the statements of a document without resolving references.
pub fn parse_source(text: &str) -> Result<SourceDocument, Vec<Diagnostic>> {
    let (statements, diags) = parse_lines(text);
    if diags.is_empty() {
        Ok(SourceDocument {
            text: text.to_owned(),
            statements: statements.into_iter().map(|(s, _)| s).collect(),
        })
    } else {
        Err(diags)
    }
}

/// Parses and validates a document. On failure every diagnostic found in the
/// document is returned, ordered by position.
pub fn parse_document(text: &str) -> Result<ParsedDocument, Vec<Diagnostic>> {
    let (statements, mut diags) = parse_lines(text);
    let (timeline, spans) = build(&statements);
    for d in timeline.validate() {
        let d = match spans.locate(&d) {
            Some((line, column)) => d.at(line, column),
            None => d,
        };
        diags.push(d);
    }
    if !diags.is_empty() {
        diags.sort_by(|a, b| a.position.cmp(&b.position).then_with(|| a.code.cmp(&b.code)));
        return Err(diags);
    }
    Ok(ParsedDocument {
        source: SourceDocument {
            text: text.to_owned(),
            statements: statements.into_iter().map(|(s, _)| s).collect(),
        },
        timeline,
    })
}

fn write_statement(out: &mut String, stmt: &Statement) {
    // Writing to a String cannot fail.
    let _ = match stmt {
        Statement::Agent { id } => write!(out, "agent {id}"),
        Statement::Acquaintance { subject, object, at } => write!(out, "acquaintance {subject} {object} at {at}"),
        Statement::Sensation {
            id,
            bearer,
            correlate,
            valence,
            intensity,
            extent,
        } => {
            let _ = write!(out, "sensation {id} bearer={bearer} correlate={correlate} valence={valence}");
            if let Some(i) = intensity {
                let _ = write!(out, " intensity={i}");
            }
            write!(out, " extent={extent}")
        }
        Statement::Judgment {
            id,
            agent,
            target,
            extent,
        } => write!(out, "judgment {id} agent={agent} target={target} extent={extent}"),
        Statement::Inhibition {
            id,
            agent,
            toward,
            extent,
        } => {
            let _ = write!(out, "inhibition {id} agent={agent}");
            if let Some(p) = toward {
                let _ = write!(out, " toward={p}");
            }
            write!(out, " extent={extent}")
        }
        Statement::Set { setting, value } => write!(out, "set {} {value}", setting.as_str()),
        Statement::Query {
            subject,
            object,
            interval,
            threshold,
        } => {
            let _ = write!(out, "query loves {subject} {object} interval={interval}");
            match threshold {
                Some(t) => write!(out, " threshold={t}"),
                None => Ok(()),
            }
        }
    };
    out.push('\n');
}

/// Canonical text for a statement sequence, LF-terminated.
pub fn serialize(statements: &[Statement]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for stmt in statements {
        write_statement(&mut out, stmt);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interval::ratio;

    fn codes(text: &str) -> Vec<(ErrorCode, usize)> {
        parse_document(text)
            .unwrap_err()
            .into_iter()
            .map(|d| (d.code, d.line().unwrap()))
            .collect()
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4"), Ok(ratio(3, 4)));
        assert_eq!(parse_rational("0.25"), Ok(ratio(1, 4)));
        assert_eq!(parse_rational("-2"), Ok(ratio(-2, 1)));
        assert_eq!(parse_rational("-1.125"), Ok(ratio(-9, 8)));
        assert_eq!(parse_rational("6/8"), Ok(ratio(3, 4)));
        for bad in ["1/0", "abc", "", "-", "1.", ".5", "1/2/3", "1/-2", "1.5/2", "--1", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn canonical_fixtures() {
        let doc = parse_document(fixtures::TIMELINE_A).unwrap();
        assert_eq!(doc.timeline, fixtures::timeline_a());
        assert_eq!(doc.queries().len(), 1);
        assert_eq!(doc.source.statements.len(), 6);
        assert_eq!(parse_document(fixtures::TIMELINE_B).unwrap().timeline, fixtures::timeline_b());
        assert_eq!(parse_document(fixtures::TIMELINE_C).unwrap().timeline, fixtures::timeline_c());
    }

    #[test]
    fn self_correlate_points_at_the_field() {
        let text = "agent sally\nsensation s1 bearer=sally correlate=sally valence=positive extent=[0,1)\n";
        let diags = parse_document(text).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, ErrorCode::SelfCorrelate);
        assert_eq!(diags[0].position.unwrap().line, 2);
        assert_eq!(diags[0].position.unwrap().column, 37);
    }

    #[test]
    fn empty_query_interval() {
        let text = "agent sally\nagent john\nquery loves sally john interval=[5,5)\n";
        assert_eq!(codes(text), vec![(ErrorCode::EmptyInterval, 3)]);
    }

    #[test]
    fn empty_extent_member() {
        let text = "agent a\nagent b\nsensation s bearer=a correlate=b valence=positive extent=[0,1) + [3,2)\n";
        assert_eq!(codes(text), vec![(ErrorCode::EmptyInterval, 3)]);
    }

    #[test]
    fn comments_blank_lines_crlf_and_spacing() {
        let text = "# loveline v1\r\n\r\nagent sally   # the lover\r\nagent john\r\n\
                    sensation s1 bearer = sally correlate=john valence=positive extent = [ 0 , 1/2 ) + [1/2,2)\r\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.timeline.sensations[0].extent, IntervalSet::from_bounds([(0, 2)]).unwrap());
        assert_eq!(doc.timeline.sensations[0].intensity, ratio(1, 1));
    }

    #[test]
    fn declarations_may_follow_uses() {
        let text = "judgment j agent=a target=b extent=[0,1)\nagent a\nagent b\n";
        assert!(parse_document(text).is_ok());
    }

    #[test]
    fn settings_are_last_writer_wins() {
        let text = "set threshold 0\nset threshold 1/2\nset min_intensity 0.5\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.timeline.config.threshold_default, ratio(1, 2));
        assert_eq!(doc.timeline.config.min_intensity, ratio(1, 2));
        assert_eq!(codes("set threshold -1\n"), vec![(ErrorCode::ThresholdNonpositive, 1)]);
        assert_eq!(codes("set min_intensity 2\n"), vec![(ErrorCode::IntensityRange, 1)]);
    }

    #[test]
    fn syntax_errors_are_collected_per_line() {
        let text = "agent a\nfrobnicate x\nagent\nsensation s bearer=a\nagent b c\nquery loves a b interval=[0,1) threshold=x\n\
                    judgment j agent=a target=b extent=[0,1) extent=[1,2)\nset speed 3\nagent $\n";
        let diags = parse_document(text).unwrap_err();
        let lines: Vec<usize> = diags.iter().filter(|d| d.code == ErrorCode::Syntax).map(|d| d.line().unwrap()).collect();
        assert_eq!(lines, vec![2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn unknown_reference_and_duplicate() {
        let text = "agent sally\nagent sally\njudgment j1 agent=sally target=ghost extent=[0,1)\n";
        let diags = parse_document(text).unwrap_err();
        let got: Vec<(ErrorCode, usize, usize)> = diags
            .iter()
            .map(|d| (d.code, d.position.unwrap().line, d.position.unwrap().column))
            .collect();
        assert_eq!(got, vec![(ErrorCode::DupId, 2, 7), (ErrorCode::UnknownRef, 3, 32)]);
    }

    #[test]
    fn query_options() {
        let text = "agent a\nagent b\nquery loves a b interval=[0,10) threshold=1/4\nquery loves b a threshold=2 interval=[1,2)\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.queries()[0].threshold, Some(ratio(1, 4)));
        assert_eq!(doc.queries()[1].threshold, Some(ratio(2, 1)));
        assert_eq!(codes("agent a\nagent b\nquery loves a b interval=[0,1) threshold=0\n"), vec![(ErrorCode::ThresholdNonpositive, 3)]);
    }

    #[test]
    fn serialize_round_trips_fixture() {
        let doc = parse_source(fixtures::TIMELINE_A).unwrap();
        let text = serialize(&doc.statements);
        assert!(text.starts_with(HEADER));
        assert!(text.contains("sensation s1 bearer=sally correlate=john valence=positive intensity=9/10 extent=[2,8)\n"));
        assert_eq!(parse_source(&text).unwrap().statements, doc.statements);
    }
}
