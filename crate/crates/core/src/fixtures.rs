//! The canonical two-agent scenarios, as source text and as built values.

use crate::interval::{ratio, Instant, Interval, IntervalSet};
use crate::timeline::{
    AcquaintanceRecord, AgentId, Config, QuerySpec, SensationEpisode, Timeline, Valence, ValueJudgment,
};

/// Sally, acquainted with John, has a positive sensation over [2,8) that she judges over [3,7).
pub const TIMELINE_A: &str = "\
agent sally
agent john
acquaintance sally john at 0
sensation s1 bearer=sally correlate=john valence=positive intensity=9/10 extent=[2,8)
judgment j1 agent=sally target=s1 extent=[3,7)
query loves sally john interval=[0,10)
";

/// Timeline A without the acquaintance record: Sally knows John only by description.
pub const TIMELINE_B: &str = "\
agent sally
agent john
sensation s1 bearer=sally correlate=john valence=positive intensity=9/10 extent=[2,8)
judgment j1 agent=sally target=s1 extent=[3,7)
query loves sally john interval=[0,10)
";

/// Timeline A with sensation and judgment covering the whole query interval.
pub const TIMELINE_C: &str = "\
agent sally
agent john
acquaintance sally john at 0
sensation s1 bearer=sally correlate=john valence=positive intensity=9/10 extent=[0,10)
judgment j1 agent=sally target=s1 extent=[0,10)
query loves sally john interval=[0,10)
";

fn span(a: i64, b: i64) -> IntervalSet {
    IntervalSet::from(Interval::new(a, b).expect("fixture interval"))
}

pub fn timeline_a() -> Timeline {
    let sally = AgentId::new("sally");
    let john = AgentId::new("john");
    Timeline {
        agents: vec![sally.clone(), john.clone()],
        acquaintances: vec![AcquaintanceRecord {
            subject: sally.clone(),
            object: john.clone(),
            at: Instant::from(0),
        }],
        sensations: vec![SensationEpisode {
            id: "s1".into(),
            bearer: sally.clone(),
            correlate: john.clone(),
            valence: Valence::Positive,
            intensity: ratio(9, 10),
            extent: span(2, 8),
        }],
        judgments: vec![ValueJudgment {
            id: "j1".into(),
            agent: sally.clone(),
            target: "s1".into(),
            extent: span(3, 7),
        }],
        inhibitions: Vec::new(),
        queries: vec![QuerySpec {
            subject: sally,
            object: john,
            interval: Interval::new(0, 10).expect("fixture interval"),
            threshold: None,
        }],
        config: Config::default(),
    }
}

pub fn timeline_b() -> Timeline {
    Timeline {
        acquaintances: Vec::new(),
        ..timeline_a()
    }
}

pub fn timeline_c() -> Timeline {
    let mut t = timeline_a();
    t.sensations[0].extent = span(0, 10);
    t.judgments[0].extent = span(0, 10);
    t
}
