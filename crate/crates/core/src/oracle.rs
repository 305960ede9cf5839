//! Brute-force reference evaluator.
//!
//! Splits the query interval into ticks of a fixed width and decides both
//! conditions on each tick by direct quantification over the timeline's
//! records. It never calls the set algebra in [`crate::interval`], so it can
//! check the sweep-based evaluator independently. When every endpoint is a
//! multiple of the tick width, membership is constant across each tick and
//! the two evaluators must agree exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::{Instant, Interval, IntervalSet, MeasureValue, Rational};
use crate::semantics::{check_threshold, EvalError, Verdict};
use crate::timeline::{AgentId, Config, Target, Timeline, Valence};

fn covers(extent: &IntervalSet, t: &Instant) -> bool {
    extent.iter().any(|iv| iv.start() <= t && t < iv.end())
}

fn divides(granularity: &Rational, x: &Rational) -> bool {
    (x / granularity).is_integer()
}

fn endpoints<'a>(timeline: &'a Timeline, interval: &'a Interval) -> impl Iterator<Item = &'a Instant> + 'a {
    let extents = timeline
        .sensations
        .iter()
        .map(|e| &e.extent)
        .chain(timeline.judgments.iter().map(|j| &j.extent))
        .chain(timeline.inhibitions.iter().map(|h| &h.extent));
    extents
        .flat_map(|set| set.iter().flat_map(|iv| [iv.start(), iv.end()]))
        .chain(timeline.acquaintances.iter().map(|a| &a.at))
        .chain([interval.start(), interval.end()])
}

struct TickJudge<'a> {
    timeline: &'a Timeline,
    config: &'a Config,
    subject: &'a AgentId,
    object: &'a AgentId,
}

impl TickJudge<'_> {
    fn masked(&self, t: &Instant) -> bool {
        self.timeline.inhibitions.iter().any(|h| {
            &h.agent == self.subject
                && h.toward.as_ref().is_none_or(|p| p == self.object)
                && covers(&h.extent, t)
        })
    }

    fn condition_i(&self, t: &Instant) -> bool {
        !self.masked(t)
            && self.timeline.sensations.iter().any(|e| {
                &e.bearer == self.subject
                    && &e.correlate == self.object
                    && e.valence == Valence::Positive
                    && e.intensity >= self.config.min_intensity
                    && covers(&e.extent, t)
            })
    }

    fn condition_ii(&self, t: &Instant) -> bool {
        let acquainted = self
            .timeline
            .acquaintances
            .iter()
            .any(|a| &a.subject == self.subject && &a.object == self.object && &a.at <= t);
        if !acquainted || self.masked(t) {
            return false;
        }
        self.timeline.judgments.iter().any(|j| {
            if &j.agent != self.subject || !covers(&j.extent, t) {
                return false;
            }
            match self.timeline.resolve_target(&j.target) {
                Some(Target::Agent(p)) => p == self.object,
                Some(Target::Sensation(e)) => {
                    &e.bearer == self.subject
                        && &e.correlate == self.object
                        && e.valence == Valence::Positive
                        && covers(&e.extent, t)
                }
                None => false,
            }
        })
    }
}

/// Evaluates a query tick by tick. Fails with [`EvalError::Granularity`]
/// unless `granularity` is positive and divides every endpoint.
#[allow(clippy::too_many_arguments)]
pub fn tick_oracle(
    subject: &AgentId,
    object: &AgentId,
    interval: &Interval,
    threshold: &Rational,
    timeline: &Timeline,
    config: &Config,
    granularity: &Rational,
) -> Result<Verdict, EvalError> {
    check_threshold(threshold)?;
    if !granularity.is_positive() || !endpoints(timeline, interval).all(|x| divides(granularity, x.value())) {
        return Err(EvalError::Granularity(granularity.clone()));
    }

    let judge = TickJudge {
        timeline,
        config,
        subject,
        object,
    };
    let ticks = (interval.length() / granularity).to_integer();
    let ticks = ticks.to_u64().ok_or_else(|| EvalError::Granularity(granularity.clone()))?;

    let mut qualifying = BigInt::zero();
    let mut love_ticks = Vec::new();
    for k in 0..ticks {
        let t = Instant::from(interval.start().value() + granularity * Rational::from_integer(BigInt::from(k)));
        if judge.condition_i(&t) && judge.condition_ii(&t) {
            qualifying += 1;
            let end = Instant::from(t.value() + granularity);
            love_ticks.push(Interval::new(t, end).expect("positive granularity"));
        }
    }

    let s = Rational::from_integer(qualifying) * granularity;
    let c = interval.length() - &s;
    Ok(Verdict::decide(
        MeasureValue::new(s).expect("tick count is non-negative"),
        MeasureValue::new(c).expect("qualifying ticks never exceed the interval"),
        threshold.clone(),
        IntervalSet::normalize(love_ticks),
    ))
}

/// Smallest tick width that divides every endpoint of the timeline and interval.
pub fn finest_granularity(timeline: &Timeline, interval: &Interval) -> Rational {
    // gcd of rationals n_i/d_i is gcd(n_i) / lcm(d_i).
    let (numer, denom) = endpoints(timeline, interval).fold(
        (BigInt::zero(), BigInt::from(1)),
        |(n, d), x| (n.gcd(x.numer()), d.lcm(x.denom())),
    );
    if numer.is_zero() {
        // Every endpoint is 0; impossible for a positive-measure interval.
        return Rational::from_integer(BigInt::from(1));
    }
    Rational::new(numer, denom)
}
