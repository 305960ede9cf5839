//! Seeded generators shared by the integration and acceptance suites.
#![allow(dead_code)]

use loveline::interval::ratio;
use loveline::timeline::{
    AcquaintanceRecord, InhibitionEpisode, SensationEpisode, Valence, ValueJudgment,
};
use loveline::{AgentId, Config, Instant, Interval, IntervalSet, QuerySpec, Rational, Timeline};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const THRESHOLDS: [(i64, i64); 4] = [(1, 4), (1, 2), (1, 1), (2, 1)];

pub fn random_threshold(rng: &mut impl Rng) -> Rational {
    let (n, d) = *THRESHOLDS.choose(rng).unwrap();
    ratio(n, d)
}

/// Integer-endpoint interval inside `[lo, hi]`.
pub fn random_interval(rng: &mut impl Rng, lo: i64, hi: i64) -> Interval {
    let a = rng.gen_range(lo..hi);
    let b = rng.gen_range(a + 1..=hi);
    Interval::new(a, b).unwrap()
}

/// One to three integer-endpoint intervals in `[0,100]`, normalized.
pub fn random_extent(rng: &mut impl Rng) -> IntervalSet {
    let n = rng.gen_range(1..=3);
    IntervalSet::normalize((0..n).map(|_| {
        let width = rng.gen_range(1..=40);
        let a = rng.gen_range(0..=100 - width);
        Interval::new(a, a + width).unwrap()
    }))
}

/// Rational-endpoint set with denominators up to 4, inside `[0,20]`.
pub fn random_rational_set(rng: &mut impl Rng) -> IntervalSet {
    let n = rng.gen_range(0..=5);
    IntervalSet::normalize((0..n).map(|_| {
        let d = rng.gen_range(1..=4);
        let a = rng.gen_range(0..20 * d);
        let b = rng.gen_range(a + 1..=20 * d);
        Interval::new(Instant::new(a, d).unwrap(), Instant::new(b, d).unwrap()).unwrap()
    }))
}

/// Integer-endpoint set inside `[0,30]`, for tick-membership checks.
pub fn random_integer_set(rng: &mut impl Rng) -> IntervalSet {
    let n = rng.gen_range(0..=5);
    IntervalSet::normalize((0..n).map(|_| random_interval(rng, 0, 30)))
}

fn distinct_pair(rng: &mut impl Rng, agents: &[AgentId]) -> (AgentId, AgentId) {
    let mut pair: Vec<&AgentId> = agents.choose_multiple(rng, 2).collect();
    // Bias towards the first two agents so queries hit populated pairs.
    if rng.gen_bool(0.6) {
        pair = vec![&agents[0], &agents[1]];
        if rng.gen_bool(0.2) {
            pair.reverse();
        }
    }
    (pair[0].clone(), pair[1].clone())
}

/// A valid timeline: 2–8 agents, at most 30 episodes, integer endpoints in [0,100].
pub fn random_timeline(rng: &mut impl Rng) -> Timeline {
    let n_agents = rng.gen_range(2..=8);
    let agents: Vec<AgentId> = (0..n_agents).map(|k| AgentId::new(format!("a{k}"))).collect();
    let mut t = Timeline {
        agents: agents.clone(),
        ..Timeline::default()
    };

    for _ in 0..rng.gen_range(0..=4) {
        let (subject, object) = distinct_pair(rng, &agents);
        t.acquaintances.push(AcquaintanceRecord {
            subject,
            object,
            at: Instant::from(rng.gen_range(0..=60)),
        });
    }

    let episodes = rng.gen_range(0..=30);
    let n_sensations = rng.gen_range(0..=episodes);
    let n_inhibitions = rng.gen_range(0..=(episodes - n_sensations).min(4));
    let n_judgments = episodes - n_sensations - n_inhibitions;

    for k in 0..n_sensations {
        let (bearer, correlate) = distinct_pair(rng, &agents);
        let (n, d) = *[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)].choose(rng).unwrap();
        t.sensations.push(SensationEpisode {
            id: format!("s{k}"),
            bearer,
            correlate,
            valence: if rng.gen_bool(0.85) { Valence::Positive } else { Valence::Negative },
            intensity: ratio(n, d),
            extent: random_extent(rng),
        });
    }
    for k in 0..n_judgments {
        let agent = if rng.gen_bool(0.6) { agents[0].clone() } else { agents.choose(rng).unwrap().clone() };
        let own: Vec<&SensationEpisode> = t.sensations.iter().filter(|s| s.bearer == agent).collect();
        let target = match (rng.gen_range(0..3), own.choose(rng)) {
            (0 | 1, Some(s)) => s.id.clone(),
            _ => agents.choose(rng).unwrap().as_str().to_owned(),
        };
        t.judgments.push(ValueJudgment {
            id: format!("j{k}"),
            agent,
            target,
            extent: random_extent(rng),
        });
    }
    for k in 0..n_inhibitions {
        let agent = agents.choose(rng).unwrap().clone();
        let toward = rng.gen_bool(0.6).then(|| agents.choose(rng).unwrap().clone());
        let width = rng.gen_range(1..=15);
        let a = rng.gen_range(0..=100 - width);
        t.inhibitions.push(InhibitionEpisode {
            id: format!("h{k}"),
            agent,
            toward,
            extent: IntervalSet::from(Interval::new(a, a + width).unwrap()),
        });
    }
    for _ in 0..rng.gen_range(1..=3) {
        let (subject, object) = distinct_pair(rng, &agents);
        t.queries.push(QuerySpec {
            subject,
            object,
            interval: random_interval(rng, 0, 100),
            threshold: rng.gen_bool(0.7).then(|| random_threshold(rng)),
        });
    }
    t.config = Config {
        threshold_default: random_threshold(rng),
        min_intensity: if rng.gen_bool(0.3) { ratio(1, 2) } else { ratio(0, 1) },
    };
    debug_assert!(t.validate().is_empty());
    t
}

/// Splits an interval at a random interior point so the source is not pre-normalized.
fn render_set(rng: &mut impl Rng, set: &IntervalSet) -> String {
    let mut parts = Vec::new();
    for iv in set {
        let (a, b) = (iv.start().value().clone(), iv.end().value().clone());
        if rng.gen_bool(0.3) {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            parts.push(format!("[{a},{mid})"));
            parts.push(format!("[{mid},{b})"));
        } else {
            parts.push(format!("[{a},{b})"));
        }
    }
    parts.shuffle(rng);
    let sep = if rng.gen_bool(0.5) { " + " } else { "+" };
    parts.join(sep)
}

fn render_rational(rng: &mut impl Rng, r: &Rational) -> String {
    // Quarters can also be written as exact decimals.
    let quarters = r * Rational::from_integer(4.into());
    if quarters.is_integer() && rng.gen_bool(0.5) {
        let value = quarters.to_integer();
        let (sign, value) = if value < 0.into() { ("-", -value) } else { ("", value) };
        let four: num_bigint::BigInt = 4.into();
        let whole = &value / &four;
        let frac = ["00", "25", "5", "75"][usize::try_from(&value % &four).unwrap()];
        return format!("{sign}{whole}.{frac}");
    }
    r.to_string()
}

/// Renders a timeline as loveline source with varied spacing, comments,
/// key order and statement order. Returns the lines (without newlines).
pub fn render_document(rng: &mut impl Rng, t: &Timeline) -> Vec<String> {
    let eq = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.2) { " = " } else { "=" };
    let mut declarations = Vec::new();
    let mut uses = Vec::new();
    for a in &t.agents {
        declarations.push(format!("agent {a}"));
    }
    for r in &t.acquaintances {
        uses.push(format!("acquaintance {} {} at {}", r.subject, r.object, render_rational(rng, r.at.value())));
    }
    for s in &t.sensations {
        let mut kv = vec![
            format!("bearer{}{}", eq(rng), s.bearer),
            format!("correlate{}{}", eq(rng), s.correlate),
            format!("valence{}{}", eq(rng), s.valence),
            format!("extent{}{}", eq(rng), render_set(rng, &s.extent)),
        ];
        // A missing intensity defaults to 1.
        if s.intensity != ratio(1, 1) || rng.gen_bool(0.5) {
            kv.push(format!("intensity{}{}", eq(rng), render_rational(rng, &s.intensity)));
        }
        kv.shuffle(rng);
        declarations.push(format!("sensation {} {}", s.id, kv.join(" ")));
    }
    for j in &t.judgments {
        let mut kv = [
            format!("agent{}{}", eq(rng), j.agent),
            format!("target{}{}", eq(rng), j.target),
            format!("extent{}{}", eq(rng), render_set(rng, &j.extent)),
        ];
        kv.shuffle(rng);
        declarations.push(format!("judgment {} {}", j.id, kv.join(" ")));
    }
    for h in &t.inhibitions {
        let mut kv = vec![format!("agent={}", h.agent), format!("extent={}", render_set(rng, &h.extent))];
        if let Some(p) = &h.toward {
            kv.push(format!("toward={p}"));
        }
        kv.shuffle(rng);
        declarations.push(format!("inhibition {} {}", h.id, kv.join(" ")));
    }
    uses.push(format!("set threshold {}", render_rational(rng, &t.config.threshold_default)));
    uses.push(format!("set min_intensity {}", render_rational(rng, &t.config.min_intensity)));
    for q in &t.queries {
        let mut line = format!(
            "query loves {} {} interval=[{},{})",
            q.subject,
            q.object,
            q.interval.start(),
            q.interval.end()
        );
        if let Some(th) = &q.threshold {
            line.push_str(&format!(" threshold={}", render_rational(rng, th)));
        }
        uses.push(line);
    }

    let mut lines = vec!["# loveline v1".to_owned()];
    // Uses may precede declarations; the parser resolves in a second pass.
    let mut body: Vec<String> = declarations.into_iter().chain(uses).collect();
    if rng.gen_bool(0.5) {
        body.shuffle(rng);
    }
    for line in body {
        if rng.gen_bool(0.1) {
            lines.push(String::new());
        }
        if rng.gen_bool(0.1) {
            lines.push(format!("{line}   # note"));
        } else if rng.gen_bool(0.1) {
            lines.push(format!("  {}  ", line.replace(' ', "   ")));
        } else {
            lines.push(line);
        }
    }
    lines
}

/// Makes a single line fail to parse, independently of every other line.
pub fn corrupt_line(rng: &mut impl Rng, line: &str) -> String {
    match rng.gen_range(0..3) {
        0 => format!("bogus {line}"),
        1 => format!("${line}"),
        _ => format!("= {line}"),
    }
}

/// Grows every sensation and judgment extent with random extra intervals.
pub fn enlarge(rng: &mut impl Rng, t: &Timeline) -> Timeline {
    let mut grown = t.clone();
    for s in &mut grown.sensations {
        if rng.gen_bool(0.5) {
            s.extent = s.extent.union(&random_extent(rng));
        }
    }
    for j in &mut grown.judgments {
        if rng.gen_bool(0.5) {
            j.extent = j.extent.union(&random_extent(rng));
        }
    }
    grown
}
