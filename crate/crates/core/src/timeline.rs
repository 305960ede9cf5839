//! The declarative event model an evaluation runs over.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::diagnostic::{Diagnostic, ErrorCode, RecordRef};
use crate::interval::{Instant, Interval, IntervalSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(id: &str) -> Self {
        Self::new(id)
    }
}

impl PartialEq<str> for AgentId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquaintanceRecord {
    pub subject: AgentId,
    pub object: AgentId,
    pub at: Instant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valence {
    Positive,
    Negative,
}

impl Valence {
    pub fn as_str(self) -> &'static str {
        match self {
            Valence::Positive => "positive",
            Valence::Negative => "negative",
        }
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensationEpisode {
    pub id: String,
    pub bearer: AgentId,
    pub correlate: AgentId,
    pub valence: Valence,
    pub intensity: Rational,
    pub extent: IntervalSet,
}

/// An evaluative judgment. `target` names either a sensation episode or an agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueJudgment {
    pub id: String,
    pub agent: AgentId,
    pub target: String,
    pub extent: IntervalSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InhibitionEpisode {
    pub id: String,
    pub agent: AgentId,
    /// `None` masks every correlate of `agent`.
    pub toward: Option<AgentId>,
    pub extent: IntervalSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySpec {
    pub subject: AgentId,
    pub object: AgentId,
    pub interval: Interval,
    pub threshold: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub threshold_default: Rational,
    pub min_intensity: Rational,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            threshold_default: Rational::one(),
            min_intensity: Rational::zero(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Timeline {
    pub agents: Vec<AgentId>,
    pub acquaintances: Vec<AcquaintanceRecord>,
    pub sensations: Vec<SensationEpisode>,
    pub judgments: Vec<ValueJudgment>,
    pub inhibitions: Vec<InhibitionEpisode>,
    pub queries: Vec<QuerySpec>,
    pub config: Config,
}

/// What a judgment target resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target<'a> {
    Agent(&'a AgentId),
    Sensation(&'a SensationEpisode),
}

fn in_unit_range(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

impl Timeline {
    pub fn has_agent(&self, id: &str) -> bool {
        self.agents.iter().any(|a| a == id)
    }

    pub fn sensation(&self, id: &str) -> Option<&SensationEpisode> {
        self.sensations.iter().find(|s| s.id == id)
    }

    pub fn resolve_target(&self, id: &str) -> Option<Target<'_>> {
        if let Some(a) = self.agents.iter().find(|a| *a == id) {
            return Some(Target::Agent(a));
        }
        self.sensation(id).map(Target::Sensation)
    }

    /// Returns every problem found; an empty result means the timeline is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();

        // All declared identifiers share one namespace.
        let mut seen: HashMap<&str, RecordRef> = HashMap::new();
        let declared = self
            .agents
            .iter()
            .enumerate()
            .map(|(k, a)| (a.as_str(), RecordRef::Agent(k)))
            .chain(self.sensations.iter().enumerate().map(|(k, s)| (s.id.as_str(), RecordRef::Sensation(k))))
            .chain(self.judgments.iter().enumerate().map(|(k, j)| (j.id.as_str(), RecordRef::Judgment(k))))
            .chain(self.inhibitions.iter().enumerate().map(|(k, h)| (h.id.as_str(), RecordRef::Inhibition(k))));
        for (id, record) in declared {
            if seen.insert(id, record).is_some() {
                diags.push(
                    Diagnostic::new(ErrorCode::DupId, format!("identifier `{id}` is declared more than once"))
                        .subject(id)
                        .record(record, Some("id")),
                );
            }
        }

        let agents: HashSet<&str> = self.agents.iter().map(AgentId::as_str).collect();
        let mut agent_ref = |agent: &AgentId, record: RecordRef, field: &'static str, owner: &str| {
            if !agents.contains(agent.as_str()) {
                diags.push(
                    Diagnostic::new(ErrorCode::UnknownRef, format!("`{agent}` is not a declared agent"))
                        .subject(owner)
                        .record(record, Some(field)),
                );
            }
        };

        for (k, rec) in self.acquaintances.iter().enumerate() {
            let owner = format!("acquaintance {} {}", rec.subject, rec.object);
            agent_ref(&rec.subject, RecordRef::Acquaintance(k), "subject", &owner);
            agent_ref(&rec.object, RecordRef::Acquaintance(k), "object", &owner);
        }
        for (k, s) in self.sensations.iter().enumerate() {
            agent_ref(&s.bearer, RecordRef::Sensation(k), "bearer", &s.id);
            agent_ref(&s.correlate, RecordRef::Sensation(k), "correlate", &s.id);
        }
        for (k, j) in self.judgments.iter().enumerate() {
            agent_ref(&j.agent, RecordRef::Judgment(k), "agent", &j.id);
        }
        for (k, h) in self.inhibitions.iter().enumerate() {
            agent_ref(&h.agent, RecordRef::Inhibition(k), "agent", &h.id);
            if let Some(toward) = &h.toward {
                agent_ref(toward, RecordRef::Inhibition(k), "toward", &h.id);
            }
        }
        for (k, q) in self.queries.iter().enumerate() {
            let owner = format!("query {}", k + 1);
            agent_ref(&q.subject, RecordRef::Query(k), "subject", &owner);
            agent_ref(&q.object, RecordRef::Query(k), "object", &owner);
        }

        for (k, rec) in self.acquaintances.iter().enumerate() {
            if rec.subject == rec.object {
                diags.push(
                    Diagnostic::new(
                        ErrorCode::SelfCorrelate,
                        format!("`{}` cannot be acquainted with itself", rec.subject),
                    )
                    .subject(format!("acquaintance {} {}", rec.subject, rec.object))
                    .record(RecordRef::Acquaintance(k), Some("object")),
                );
            }
        }
        for (k, s) in self.sensations.iter().enumerate() {
            let record = RecordRef::Sensation(k);
            if s.bearer == s.correlate {
                diags.push(
                    Diagnostic::new(
                        ErrorCode::SelfCorrelate,
                        format!("sensation `{}` is correlated with its own bearer", s.id),
                    )
                    .subject(&s.id)
                    .record(record, Some("correlate")),
                );
            }
            if !in_unit_range(&s.intensity) {
                diags.push(
                    Diagnostic::new(
                        ErrorCode::IntensityRange,
                        format!("intensity {} of `{}` is outside [0,1]", s.intensity, s.id),
                    )
                    .subject(&s.id)
                    .record(record, Some("intensity")),
                );
            }
            if s.extent.is_empty() {
                diags.push(empty_extent(&s.id, record));
            }
        }
        for (k, j) in self.judgments.iter().enumerate() {
            let record = RecordRef::Judgment(k);
            if self.resolve_target(&j.target).is_none() {
                diags.push(
                    Diagnostic::new(
                        ErrorCode::UnknownRef,
                        format!("judgment target `{}` is neither an agent nor a sensation", j.target),
                    )
                    .subject(&j.id)
                    .record(record, Some("target")),
                );
            }
            if j.extent.is_empty() {
                diags.push(empty_extent(&j.id, record));
            }
        }
        for (k, h) in self.inhibitions.iter().enumerate() {
            if h.extent.is_empty() {
                diags.push(empty_extent(&h.id, RecordRef::Inhibition(k)));
            }
        }
        for (k, q) in self.queries.iter().enumerate() {
            if let Some(t) = &q.threshold {
                if !t.is_positive() {
                    diags.push(
                        Diagnostic::new(ErrorCode::ThresholdNonpositive, format!("threshold {t} must be positive"))
                            .subject(format!("query {}", k + 1))
                            .record(RecordRef::Query(k), Some("threshold")),
                    );
                }
            }
        }
        if !self.config.threshold_default.is_positive() {
            diags.push(
                Diagnostic::new(
                    ErrorCode::ThresholdNonpositive,
                    format!("threshold {} must be positive", self.config.threshold_default),
                )
                .record(RecordRef::Setting("threshold"), None),
            );
        }
        if !in_unit_range(&self.config.min_intensity) {
            diags.push(
                Diagnostic::new(
                    ErrorCode::IntensityRange,
                    format!("min_intensity {} is outside [0,1]", self.config.min_intensity),
                )
                .record(RecordRef::Setting("min_intensity"), None),
            );
        }
        diags
    }

    /// Moves every instant of the timeline and its queries by `delta`.
    pub fn shifted(&self, delta: &Rational) -> Timeline {
        Timeline {
            agents: self.agents.clone(),
            acquaintances: self
                .acquaintances
                .iter()
                .map(|a| AcquaintanceRecord { at: a.at.shifted(delta), ..a.clone() })
                .collect(),
            sensations: self
                .sensations
                .iter()
                .map(|s| SensationEpisode { extent: s.extent.shifted(delta), ..s.clone() })
                .collect(),
            judgments: self
                .judgments
                .iter()
                .map(|j| ValueJudgment { extent: j.extent.shifted(delta), ..j.clone() })
                .collect(),
            inhibitions: self
                .inhibitions
                .iter()
                .map(|h| InhibitionEpisode { extent: h.extent.shifted(delta), ..h.clone() })
                .collect(),
            queries: self
                .queries
                .iter()
                .map(|q| QuerySpec { interval: q.interval.shifted(delta), ..q.clone() })
                .collect(),
            config: self.config.clone(),
        }
    }
}

fn empty_extent(id: &str, record: RecordRef) -> Diagnostic {
    Diagnostic::new(ErrorCode::EmptyInterval, format!("`{id}` has an empty extent"))
        .subject(id)
        .record(record, Some("extent"))
}

/// Free-function form of [`Timeline::validate`].
pub fn validate_timeline(timeline: &Timeline) -> Vec<Diagnostic> {
    timeline.validate()
}
