//! Text and JSON renderings of verdicts and traces.

use std::fmt::Write as _;

use serde::Serialize;

use crate::interval::Interval;
use crate::semantics::{Trace, Verdict};
use crate::timeline::QuerySpec;

/// `loves(S,P) over [a,b) T=<T>: HOLDS|FAILS s=<s> c=<c>`
pub fn verdict_line(query: &QuerySpec, verdict: &Verdict) -> String {
    format!(
        "loves({},{}) over {} T={}: {} s={} c={}",
        query.subject,
        query.object,
        query.interval,
        verdict.threshold,
        if verdict.holds { "HOLDS" } else { "FAILS" },
        verdict.s,
        verdict.c
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub subject: String,
    pub object: String,
    pub interval: [String; 2],
    pub threshold: String,
    pub holds: bool,
    pub s: String,
    pub c: String,
    pub love_events: Vec<[String; 2]>,
}

fn bounds(iv: &Interval) -> [String; 2] {
    [iv.start().to_string(), iv.end().to_string()]
}

impl VerdictRecord {
    pub fn new(query: &QuerySpec, verdict: &Verdict) -> Self {
        Self {
            subject: query.subject.to_string(),
            object: query.object.to_string(),
            interval: bounds(&query.interval),
            threshold: verdict.threshold.to_string(),
            holds: verdict.holds,
            s: verdict.s.to_string(),
            c: verdict.c.to_string(),
            love_events: verdict.love_events.iter().map(bounds).collect(),
        }
    }
}

pub fn verdicts_json(records: &[VerdictRecord]) -> String {
    let mut text = serde_json::to_string_pretty(records).expect("verdict records always serialize");
    text.push('\n');
    text
}

pub fn trace_text(index: usize, query: &QuerySpec, trace: &Trace) -> String {
    let v = &trace.verdict;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "query {index}: loves({},{}) over {} T={}",
        query.subject, query.object, query.interval, v.threshold
    );
    let _ = writeln!(out, "condition_i: {}", trace.condition_i);
    let _ = writeln!(out, "condition_ii_direct: {}", trace.condition_ii_direct);
    let _ = writeln!(out, "condition_ii_derived: {}", trace.condition_ii_derived);
    let _ = writeln!(
        out,
        "acquaintance_onset: {}",
        trace
            .acquaintance_onset
            .as_ref()
            .map_or_else(|| "none".to_owned(), ToString::to_string)
    );
    let _ = writeln!(out, "inhibition_mask: {}", trace.inhibition_mask);
    let _ = writeln!(out, "love_events: {}", v.love_events);
    let _ = writeln!(
        out,
        "verdict: {} s={} c={}",
        if v.holds { "HOLDS" } else { "FAILS" },
        v.s,
        v.c
    );
    let _ = writeln!(
        out,
        "first_failure: {}",
        trace.first_failure.map_or("none", |f| f.as_str())
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::timeline_a;
    use crate::semantics::Evaluator;

    #[test]
    fn fixture_line_and_record() {
        let t = timeline_a();
        let q = &t.queries[0];
        let v = Evaluator::new(&t).evaluate_query(q).unwrap();
        assert_eq!(verdict_line(q, &v), "loves(sally,john) over [0,10) T=1: FAILS s=4 c=6");
        let json = verdicts_json(&[VerdictRecord::new(q, &v)]);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["s"], "4");
        assert_eq!(parsed[0]["love_events"][0][1], "7");
        assert_eq!(parsed[0]["holds"], false);
    }
}
