//! Exact temporal arithmetic over half-open rational intervals.
//!
//! An [`IntervalSet`] is always stored normalized: members are sorted by
//! start, pairwise disjoint and never adjacent. Every set operation returns a
//! normalized set, so structural equality coincides with point-set equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational number used for every time coordinate and magnitude.
pub type Rational = BigRational;

/// Builds `numer/denom` as an exact rational. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational as `num/den`, or a bare integer when the denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval [{start},{end}) has no positive measure")]
    Empty { start: Instant, end: Instant },
    #[error("zero denominator")]
    ZeroDenominator,
}

/// A zero-dimensional point on the time axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instant(Rational);

impl Instant {
    pub fn new(numer: i64, denom: i64) -> Result<Self, IntervalError> {
        if denom == 0 {
            return Err(IntervalError::ZeroDenominator);
        }
        Ok(Self(ratio(numer, denom)))
    }

    pub fn from_integer(value: i64) -> Self {
        Self(Rational::from_integer(BigInt::from(value)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn shifted(&self, delta: &Rational) -> Self {
        Self(&self.0 + delta)
    }
}

impl From<Rational> for Instant {
    fn from(value: Rational) -> Self {
        Self(value)
    }
}

impl From<i64> for Instant {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl fmt::Display for Instant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A half-open interval `[start, end)` with `start < end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    start: Instant,
    end: Instant,
}

impl Interval {
    pub fn new(start: impl Into<Instant>, end: impl Into<Instant>) -> Result<Self, IntervalError> {
        let (start, end) = (start.into(), end.into());
        if start >= end {
            return Err(IntervalError::Empty { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> &Instant {
        &self.start
    }

    pub fn end(&self) -> &Instant {
        &self.end
    }

    pub fn length(&self) -> Rational {
        self.end.value() - self.start.value()
    }

    pub fn contains(&self, t: &Instant) -> bool {
        &self.start <= t && t < &self.end
    }

    pub fn shifted(&self, delta: &Rational) -> Self {
        Self {
            start: self.start.shifted(delta),
            end: self.end.shifted(delta),
        }
    }

    fn overlap(&self, other: &Interval) -> Option<Interval> {
        let start = (&self.start).max(&other.start).clone();
        let end = (&self.end).min(&other.end).clone();
        (start < end).then_some(Interval { start, end })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

/// A duration: a non-negative exact magnitude.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(Rational);

impl MeasureValue {
    pub fn zero() -> Self {
        Self(Rational::zero())
    }

    /// Returns `None` for negative input.
    pub fn new(value: Rational) -> Option<Self> {
        (!value.is_negative()).then_some(Self(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A normalized finite union of half-open intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts and merges overlapping or abutting members.
    pub fn normalize(raw: impl IntoIterator<Item = Interval>) -> Self {
        let mut raw: Vec<Interval> = raw.into_iter().collect();
        raw.sort_by(|a, b| a.start.cmp(&b.start).then_with(|| a.end.cmp(&b.end)));
        let mut merged: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self { intervals: merged }
    }

    /// Normalizes raw `(start, end)` bounds, rejecting any pair with `start >= end`.
    pub fn from_bounds<I, A, B>(raw: I) -> Result<Self, IntervalError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Instant>,
        B: Into<Instant>,
    {
        let intervals = raw
            .into_iter()
            .map(|(a, b)| Interval::new(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::normalize(intervals))
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, t: &Instant) -> bool {
        // Members are sorted by start, so the candidate is the last one starting at or before t.
        let idx = self.intervals.partition_point(|iv| iv.start <= *t);
        idx > 0 && self.intervals[idx - 1].contains(t)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::normalize(self.intervals.iter().chain(other.intervals.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(piece) = a[i].overlap(&b[j]) {
                out.push(piece);
            }
            match a[i].end.cmp(&b[j].end) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::normalize(out)
    }

    /// Points of `self` that are not in `other`.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let mut j = 0;
        for iv in &self.intervals {
            let mut cursor = iv.start.clone();
            while j < other.intervals.len() && other.intervals[j].end <= cursor {
                j += 1;
            }
            let mut k = j;
            while k < other.intervals.len() && other.intervals[k].start < iv.end {
                let hole = &other.intervals[k];
                if hole.start > cursor {
                    out.push(Interval {
                        start: cursor.clone(),
                        end: hole.start.clone(),
                    });
                }
                if hole.end > cursor {
                    cursor = hole.end.clone();
                }
                if cursor >= iv.end {
                    break;
                }
                k += 1;
            }
            if cursor < iv.end {
                out.push(Interval {
                    start: cursor,
                    end: iv.end.clone(),
                });
            }
        }
        Self::normalize(out)
    }

    /// Removes every point before `onset`.
    pub fn clip_from(&self, onset: &Instant) -> IntervalSet {
        let intervals = self
            .intervals
            .iter()
            .filter(|iv| iv.end > *onset)
            .map(|iv| Interval {
                start: (&iv.start).max(onset).clone(),
                end: iv.end.clone(),
            })
            .collect();
        Self { intervals }
    }

    pub fn measure(&self) -> MeasureValue {
        MeasureValue(
            self.intervals
                .iter()
                .fold(Rational::zero(), |acc, iv| acc + iv.length()),
        )
    }

    /// True when every point of `self` is in `other`.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn shifted(&self, delta: &Rational) -> IntervalSet {
        Self {
            intervals: self.intervals.iter().map(|iv| iv.shifted(delta)).collect(),
        }
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        Self { intervals: vec![iv] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Self::normalize(iter)
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

/// Renders members joined by ` + `, or `{}` when empty.
impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Free-function forms of the set algebra.
pub fn normalize(raw: impl IntoIterator<Item = Interval>) -> IntervalSet {
    IntervalSet::normalize(raw)
}

pub fn union(a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
    a.union(b)
}

pub fn intersect(a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
    a.intersect(b)
}

/// Points of `within` not covered by `a`.
pub fn complement_within(within: &Interval, a: &IntervalSet) -> IntervalSet {
    IntervalSet::from(within.clone()).difference(a)
}

pub fn measure(a: &IntervalSet) -> MeasureValue {
    a.measure()
}
