//! Condition signals, love events, and the threshold verdict.
//!
//! Every signal is an [`IntervalSet`] over the time axis. Condition (i) is
//! positive sensation causally correlated with the object; condition (ii) is
//! an acquaintance-gated value judgment, either direct (target is the object)
//! or derived from judging a live sensation correlated with the object. Love
//! events are where both hold inside the queried interval; the verdict
//! compares their measure `s` against the measure `c` of the rest.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::diagnostic::ErrorCode;
use crate::interval::{complement_within, Instant, Interval, IntervalSet, MeasureValue, Rational};
use crate::timeline::{AgentId, Config, QuerySpec, Target, Timeline, Valence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("threshold {0} must be positive")]
    NonPositiveThreshold(Rational),
    #[error("instant {instant} lies outside {interval}")]
    InstantOutsideInterval { instant: Instant, interval: Interval },
    #[error("granularity {0} must be positive and divide every endpoint")]
    Granularity(Rational),
}

impl EvalError {
    pub fn code(&self) -> ErrorCode {
        match self {
            EvalError::NonPositiveThreshold(_) => ErrorCode::ThresholdNonpositive,
            EvalError::InstantOutsideInterval { .. } => ErrorCode::EmptyInterval,
            EvalError::Granularity(_) => ErrorCode::Granularity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Loving sum: measure of the love events.
    pub s: MeasureValue,
    /// Loving complement: measure of the rest of the interval.
    pub c: MeasureValue,
    pub threshold: Rational,
    pub love_events: IntervalSet,
}

impl Verdict {
    /// Decides the threshold comparison for a given loving sum and complement.
    pub(crate) fn decide(s: MeasureValue, c: MeasureValue, threshold: Rational, love_events: IntervalSet) -> Self {
        let holds = if c.is_zero() {
            !s.is_zero()
        } else {
            // T < s/c with c > 0, cross-multiplied to stay in exact arithmetic.
            &threshold * c.value() < *s.value()
        };
        Verdict {
            holds,
            s,
            c,
            threshold,
            love_events,
        }
    }

    /// `true` when the degenerate full-coverage rule decided the verdict.
    pub fn full_coverage(&self) -> bool {
        self.c.is_zero() && !self.s.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Failure {
    NoAcquaintance,
    ConditionIEmpty,
    ConditionIiEmpty,
    RatioBelowThreshold,
}

impl Failure {
    pub fn as_str(self) -> &'static str {
        match self {
            Failure::NoAcquaintance => "no acquaintance",
            Failure::ConditionIEmpty => "condition (i) empty",
            Failure::ConditionIiEmpty => "condition (ii) empty",
            Failure::RatioBelowThreshold => "ratio below threshold",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub condition_i: IntervalSet,
    pub condition_ii_direct: IntervalSet,
    pub condition_ii_derived: IntervalSet,
    pub acquaintance_onset: Option<Instant>,
    pub inhibition_mask: IntervalSet,
    pub first_failure: Option<Failure>,
    pub verdict: Verdict,
}

/// Point-in-time view derived from the interval verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoveState {
    pub in_love_event: bool,
    pub within_loving_process: bool,
}

/// Condition (ii) before the union, split by judgment kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgmentSignals {
    pub direct: IntervalSet,
    pub derived: IntervalSet,
}

/// Evaluates queries against one immutable timeline.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator<'a> {
    timeline: &'a Timeline,
    config: &'a Config,
}

impl<'a> Evaluator<'a> {
    /// Uses the timeline's own configuration.
    pub fn new(timeline: &'a Timeline) -> Self {
        Self {
            timeline,
            config: &timeline.config,
        }
    }

    pub fn with_config(timeline: &'a Timeline, config: &'a Config) -> Self {
        Self { timeline, config }
    }

    pub fn timeline(&self) -> &'a Timeline {
        self.timeline
    }

    pub fn config(&self) -> &'a Config {
        self.config
    }

    pub fn inhibition_mask(&self, subject: &AgentId, object: &AgentId) -> IntervalSet {
        self.timeline
            .inhibitions
            .iter()
            .filter(|h| &h.agent == subject && h.toward.as_ref().is_none_or(|t| t == object))
            .flat_map(|h| h.extent.iter().cloned())
            .collect()
    }

    pub fn condition_i(&self, subject: &AgentId, object: &AgentId) -> IntervalSet {
        let felt: IntervalSet = self
            .timeline
            .sensations
            .iter()
            .filter(|e| {
                &e.bearer == subject
                    && &e.correlate == object
                    && e.valence == Valence::Positive
                    && e.intensity >= self.config.min_intensity
            })
            .flat_map(|e| e.extent.iter().cloned())
            .collect();
        felt.difference(&self.inhibition_mask(subject, object))
    }

    pub fn acquaintance_onset(&self, subject: &AgentId, object: &AgentId) -> Option<Instant> {
        self.timeline
            .acquaintances
            .iter()
            .filter(|r| &r.subject == subject && &r.object == object)
            .map(|r| r.at.clone())
            .min()
    }

    /// Both judgment routes, each acquaintance-gated and masked.
    pub fn judgment_signals(&self, subject: &AgentId, object: &AgentId) -> JudgmentSignals {
        let Some(onset) = self.acquaintance_onset(subject, object) else {
            return JudgmentSignals {
                direct: IntervalSet::empty(),
                derived: IntervalSet::empty(),
            };
        };
        let mut direct = Vec::new();
        let mut derived = IntervalSet::empty();
        for j in self.timeline.judgments.iter().filter(|j| &j.agent == subject) {
            match self.timeline.resolve_target(&j.target) {
                Some(Target::Agent(a)) if a == object => direct.extend(j.extent.iter().cloned()),
                Some(Target::Sensation(e))
                    if &e.bearer == subject && &e.correlate == object && e.valence == Valence::Positive =>
                {
                    // The judged sensation must be live while it is judged.
                    derived = derived.union(&j.extent.intersect(&e.extent));
                }
                _ => {}
            }
        }
        let mask = self.inhibition_mask(subject, object);
        let gate = |set: IntervalSet| set.clip_from(&onset).difference(&mask);
        JudgmentSignals {
            direct: gate(IntervalSet::normalize(direct)),
            derived: gate(derived),
        }
    }

    pub fn condition_ii(&self, subject: &AgentId, object: &AgentId) -> IntervalSet {
        let parts = self.judgment_signals(subject, object);
        parts.direct.union(&parts.derived)
    }

    pub fn love_events(&self, subject: &AgentId, object: &AgentId, interval: &Interval) -> IntervalSet {
        IntervalSet::from(interval.clone())
            .intersect(&self.condition_i(subject, object))
            .intersect(&self.condition_ii(subject, object))
    }

    pub fn evaluate(
        &self,
        subject: &AgentId,
        object: &AgentId,
        interval: &Interval,
        threshold: &Rational,
    ) -> Result<Verdict, EvalError> {
        check_threshold(threshold)?;
        let love_events = self.love_events(subject, object, interval);
        let s = love_events.measure();
        let c = complement_within(interval, &love_events).measure();
        Ok(Verdict::decide(s, c, threshold.clone(), love_events))
    }

    /// Query threshold, falling back to the configured default.
    pub fn threshold_for(&self, query: &QuerySpec) -> Rational {
        query
            .threshold
            .clone()
            .unwrap_or_else(|| self.config.threshold_default.clone())
    }

    pub fn evaluate_query(&self, query: &QuerySpec) -> Result<Verdict, EvalError> {
        self.evaluate(&query.subject, &query.object, &query.interval, &self.threshold_for(query))
    }

    pub fn love_state_at(
        &self,
        subject: &AgentId,
        object: &AgentId,
        instant: &Instant,
        interval: &Interval,
        threshold: &Rational,
    ) -> Result<LoveState, EvalError> {
        if !interval.contains(instant) {
            return Err(EvalError::InstantOutsideInterval {
                instant: instant.clone(),
                interval: interval.clone(),
            });
        }
        let verdict = self.evaluate(subject, object, interval, threshold)?;
        Ok(LoveState {
            in_love_event: verdict.love_events.contains(instant),
            within_loving_process: verdict.holds,
        })
    }

    pub fn explain(
        &self,
        subject: &AgentId,
        object: &AgentId,
        interval: &Interval,
        threshold: &Rational,
    ) -> Result<Trace, EvalError> {
        let verdict = self.evaluate(subject, object, interval, threshold)?;
        let condition_i = self.condition_i(subject, object);
        let parts = self.judgment_signals(subject, object);
        let onset = self.acquaintance_onset(subject, object);
        let window = IntervalSet::from(interval.clone());

        let first_failure = if verdict.holds {
            None
        } else if onset.is_none() {
            Some(Failure::NoAcquaintance)
        } else if condition_i.intersect(&window).is_empty() {
            Some(Failure::ConditionIEmpty)
        } else if parts.direct.union(&parts.derived).intersect(&window).is_empty() {
            Some(Failure::ConditionIiEmpty)
        } else {
            Some(Failure::RatioBelowThreshold)
        };

        Ok(Trace {
            condition_i,
            condition_ii_direct: parts.direct,
            condition_ii_derived: parts.derived,
            acquaintance_onset: onset,
            inhibition_mask: self.inhibition_mask(subject, object),
            first_failure,
            verdict,
        })
    }
}

pub(crate) fn check_threshold(threshold: &Rational) -> Result<(), EvalError> {
    if threshold.is_positive() {
        Ok(())
    } else {
        Err(EvalError::NonPositiveThreshold(threshold.clone()))
    }
}
