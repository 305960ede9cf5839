//! BFO-typed individuals and relations, their domain/range validation, and
//! the projection of a timeline into an ontology graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::diagnostic::{Diagnostic, ErrorCode};
use crate::interval::IntervalSet;
use crate::timeline::{Target, Timeline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BfoClass {
    Continuant,
    IndependentContinuant,
    SpecificallyDependentContinuant,
    GenericallyDependentContinuant,
    MaterialEntity,
    SpatialRegion,
    Agent,
    Quality,
    RealizableEntity,
    Disposition,
    Occurrent,
    Process,
    ProcessBoundary,
    TemporalInstant,
    TemporalInterval,
    InformationContentEntity,
}

impl BfoClass {
    pub const ALL: [BfoClass; 16] = [
        BfoClass::Continuant,
        BfoClass::IndependentContinuant,
        BfoClass::SpecificallyDependentContinuant,
        BfoClass::GenericallyDependentContinuant,
        BfoClass::MaterialEntity,
        BfoClass::SpatialRegion,
        BfoClass::Agent,
        BfoClass::Quality,
        BfoClass::RealizableEntity,
        BfoClass::Disposition,
        BfoClass::Occurrent,
        BfoClass::Process,
        BfoClass::ProcessBoundary,
        BfoClass::TemporalInstant,
        BfoClass::TemporalInterval,
        BfoClass::InformationContentEntity,
    ];

    /// Immediate superclass; `None` for the two roots.
    pub fn parent(self) -> Option<BfoClass> {
        use BfoClass::*;
        match self {
            Continuant | Occurrent => None,
            IndependentContinuant | SpecificallyDependentContinuant | GenericallyDependentContinuant => {
                Some(Continuant)
            }
            MaterialEntity | SpatialRegion => Some(IndependentContinuant),
            Agent => Some(MaterialEntity),
            Quality | RealizableEntity => Some(SpecificallyDependentContinuant),
            Disposition => Some(RealizableEntity),
            InformationContentEntity => Some(GenericallyDependentContinuant),
            Process | ProcessBoundary | TemporalInstant | TemporalInterval => Some(Occurrent),
        }
    }

    /// Reflexive-transitive subclass test over the fixed lattice.
    pub fn is_a(self, ancestor: BfoClass) -> bool {
        let mut cursor = Some(self);
        while let Some(class) = cursor {
            if class == ancestor {
                return true;
            }
            cursor = class.parent();
        }
        false
    }

    pub fn as_str(self) -> &'static str {
        use BfoClass::*;
        match self {
            Continuant => "Continuant",
            IndependentContinuant => "IndependentContinuant",
            SpecificallyDependentContinuant => "SpecificallyDependentContinuant",
            GenericallyDependentContinuant => "GenericallyDependentContinuant",
            MaterialEntity => "MaterialEntity",
            SpatialRegion => "SpatialRegion",
            Agent => "Agent",
            Quality => "Quality",
            RealizableEntity => "RealizableEntity",
            Disposition => "Disposition",
            Occurrent => "Occurrent",
            Process => "Process",
            ProcessBoundary => "ProcessBoundary",
            TemporalInstant => "TemporalInstant",
            TemporalInterval => "TemporalInterval",
            InformationContentEntity => "InformationContentEntity",
        }
    }
}

impl fmt::Display for BfoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BfoClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BfoClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown class `{s}`"))
    }
}

pub fn check_subclass(a: BfoClass, b: BfoClass) -> bool {
    a.is_a(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    InheresIn,
    ParticipatesIn,
    IsAbout,
    RealizedIn,
    TemporalPartOf,
    ConcretizedIn,
    CausallyCorrelatedWith,
}

impl RelationKind {
    pub const ALL: [RelationKind; 7] = [
        RelationKind::InheresIn,
        RelationKind::ParticipatesIn,
        RelationKind::IsAbout,
        RelationKind::RealizedIn,
        RelationKind::TemporalPartOf,
        RelationKind::ConcretizedIn,
        RelationKind::CausallyCorrelatedWith,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::InheresIn => "inheres_in",
            RelationKind::ParticipatesIn => "participates_in",
            RelationKind::IsAbout => "is_about",
            RelationKind::RealizedIn => "realized_in",
            RelationKind::TemporalPartOf => "temporal_part_of",
            RelationKind::ConcretizedIn => "concretized_in",
            RelationKind::CausallyCorrelatedWith => "causally_correlated_with",
        }
    }

    /// Whether a subject of class `c` is allowed.
    pub fn admits_subject(self, c: BfoClass) -> bool {
        use BfoClass::*;
        match self {
            RelationKind::InheresIn => c.is_a(SpecificallyDependentContinuant),
            RelationKind::ParticipatesIn => {
                c.is_a(SpecificallyDependentContinuant)
                    || c.is_a(GenericallyDependentContinuant)
                    || (c.is_a(IndependentContinuant) && !c.is_a(SpatialRegion))
            }
            RelationKind::IsAbout => c.is_a(InformationContentEntity),
            RelationKind::RealizedIn => c.is_a(RealizableEntity),
            RelationKind::TemporalPartOf => c.is_a(Occurrent),
            RelationKind::ConcretizedIn => c.is_a(GenericallyDependentContinuant),
            RelationKind::CausallyCorrelatedWith => c.is_a(Quality),
        }
    }

    /// Whether an object of class `c` is allowed.
    pub fn admits_object(self, c: BfoClass) -> bool {
        use BfoClass::*;
        match self {
            RelationKind::InheresIn => c.is_a(IndependentContinuant) && !c.is_a(SpatialRegion),
            RelationKind::ParticipatesIn | RelationKind::RealizedIn => c.is_a(Process),
            RelationKind::IsAbout => true,
            RelationKind::TemporalPartOf => c.is_a(Occurrent),
            RelationKind::ConcretizedIn => c.is_a(SpecificallyDependentContinuant) || c.is_a(Process),
            RelationKind::CausallyCorrelatedWith => c.is_a(MaterialEntity),
        }
    }

    fn domain_text(self) -> &'static str {
        match self {
            RelationKind::InheresIn => "a specifically dependent continuant",
            RelationKind::ParticipatesIn => {
                "a dependent continuant or an independent continuant that is not a spatial region"
            }
            RelationKind::IsAbout => "an information content entity",
            RelationKind::RealizedIn => "a realizable entity",
            RelationKind::TemporalPartOf => "an occurrent",
            RelationKind::ConcretizedIn => "a generically dependent continuant",
            RelationKind::CausallyCorrelatedWith => "a quality",
        }
    }

    fn range_text(self) -> &'static str {
        match self {
            RelationKind::InheresIn => "an independent continuant that is not a spatial region",
            RelationKind::ParticipatesIn | RelationKind::RealizedIn => "a process",
            RelationKind::IsAbout => "any entity",
            RelationKind::TemporalPartOf => "an occurrent",
            RelationKind::ConcretizedIn => "a specifically dependent continuant or a process",
            RelationKind::CausallyCorrelatedWith => "a material entity",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Individual {
    pub id: String,
    pub class: BfoClass,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationAssertion {
    pub kind: RelationKind,
    pub subject: String,
    pub object: String,
    pub extent: Option<IntervalSet>,
}

impl RelationAssertion {
    fn describe(&self) -> String {
        format!("{} {} {}", self.subject, self.kind, self.object)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OntologyGraph {
    pub individuals: Vec<Individual>,
    pub relations: Vec<RelationAssertion>,
}

impl OntologyGraph {
    pub fn individual(&self, id: &str) -> Option<&Individual> {
        self.individuals.iter().find(|i| i.id == id)
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        validate(&self.individuals, &self.relations)
    }

    /// Line-oriented export: declarations first, then assertions, each block
    /// sorted lexicographically.
    pub fn export(&self) -> String {
        let declarations: BTreeSet<String> = self
            .individuals
            .iter()
            .map(|i| format!("individual {} {} \"{}\"", i.id, i.class, escape_label(&i.label)))
            .collect();
        let assertions: BTreeSet<String> = self
            .relations
            .iter()
            .map(|r| format!("{} {} {}", r.subject, r.kind, r.object))
            .collect();
        let mut out = String::new();
        for line in declarations.iter().chain(assertions.iter()) {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

fn escape_label(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Checks every assertion against its relation's domain and range and that
/// every information content entity is about something. The result is sorted,
/// so it does not depend on the order of the inputs.
pub fn validate(individuals: &[Individual], relations: &[RelationAssertion]) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut classes: HashMap<&str, BfoClass> = HashMap::new();
    let mut duplicated = BTreeSet::new();
    for ind in individuals {
        if classes.insert(ind.id.as_str(), ind.class).is_some() {
            duplicated.insert(ind.id.as_str());
        }
    }
    for id in duplicated {
        diags.push(
            Diagnostic::new(ErrorCode::DupId, format!("individual `{id}` is declared more than once")).subject(id),
        );
    }

    for r in relations {
        let mut resolve = |id: &str| {
            let class = classes.get(id).copied();
            if class.is_none() {
                diags.push(
                    Diagnostic::new(
                        ErrorCode::UnknownRef,
                        format!("`{}`: `{id}` is not a declared individual", r.describe()),
                    )
                    .subject(r.describe()),
                );
            }
            class
        };
        let subject = resolve(&r.subject);
        let object = resolve(&r.object);
        if let Some(c) = subject.filter(|&c| !r.kind.admits_subject(c)) {
            diags.push(
                Diagnostic::new(
                    ErrorCode::DomainViolation,
                    format!(
                        "`{}`: subject is a {c}, but {} requires {}",
                        r.describe(),
                        r.kind,
                        r.kind.domain_text()
                    ),
                )
                .subject(r.describe()),
            );
        }
        if let Some(c) = object.filter(|&c| !r.kind.admits_object(c)) {
            diags.push(
                Diagnostic::new(
                    ErrorCode::RangeViolation,
                    format!(
                        "`{}`: object is a {c}, but {} requires {}",
                        r.describe(),
                        r.kind,
                        r.kind.range_text()
                    ),
                )
                .subject(r.describe()),
            );
        }
    }

    let about: BTreeSet<&str> = relations
        .iter()
        .filter(|r| r.kind == RelationKind::IsAbout)
        .map(|r| r.subject.as_str())
        .collect();
    let mut unmoored: Vec<&str> = individuals
        .iter()
        .filter(|i| i.class.is_a(BfoClass::InformationContentEntity) && !about.contains(i.id.as_str()))
        .map(|i| i.id.as_str())
        .collect();
    unmoored.sort_unstable();
    unmoored.dedup();
    for id in unmoored {
        diags.push(
            Diagnostic::new(
                ErrorCode::MissingAboutness,
                format!("information content entity `{id}` is not about any entity"),
            )
            .subject(id),
        );
    }

    diags.sort();
    diags
}

/// Allocates fresh identifiers that avoid every declared timeline id.
struct IdPool {
    taken: BTreeSet<String>,
}

impl IdPool {
    fn fresh(&mut self, base: String) -> String {
        let mut id = base;
        while self.taken.contains(&id) {
            id.push('_');
        }
        self.taken.insert(id.clone());
        id
    }
}

/// Builds the ontology graph for a validated timeline.
///
/// Sensations become qualities inhering in their bearer and causally
/// correlated with their correlate. Each judgment becomes an act (a process)
/// realizing a judging disposition of the agent, plus an information content
/// entity about the judgment's target; a judgment of a sensation additionally
/// yields a content entity about that sensation, while its main content
/// entity is about the sensation's correlate. Agents with inhibition episodes
/// bear an inhibitory-control disposition.
pub fn project_timeline(timeline: &Timeline) -> OntologyGraph {
    let mut pool = IdPool {
        taken: timeline
            .agents
            .iter()
            .map(|a| a.as_str().to_owned())
            .chain(timeline.sensations.iter().map(|s| s.id.clone()))
            .chain(timeline.judgments.iter().map(|j| j.id.clone()))
            .chain(timeline.inhibitions.iter().map(|h| h.id.clone()))
            .collect(),
    };
    let mut graph = OntologyGraph::default();
    let rel = |kind, subject: &str, object: &str, extent: Option<&IntervalSet>| RelationAssertion {
        kind,
        subject: subject.to_owned(),
        object: object.to_owned(),
        extent: extent.cloned(),
    };

    for agent in &timeline.agents {
        graph.individuals.push(Individual {
            id: agent.as_str().to_owned(),
            class: BfoClass::Agent,
            label: agent.as_str().to_owned(),
        });
    }

    for s in &timeline.sensations {
        graph.individuals.push(Individual {
            id: s.id.clone(),
            class: BfoClass::Quality,
            label: format!("{} sensation of {}", s.valence, s.bearer),
        });
        graph
            .relations
            .push(rel(RelationKind::InheresIn, &s.id, s.bearer.as_str(), Some(&s.extent)));
        graph.relations.push(rel(
            RelationKind::CausallyCorrelatedWith,
            &s.id,
            s.correlate.as_str(),
            Some(&s.extent),
        ));
    }

    for j in &timeline.judgments {
        let act = pool.fresh(format!("act_{}", j.id));
        let disposition = pool.fresh(format!("disp_{}", j.id));
        let ice = pool.fresh(format!("ice_{}", j.id));
        let agent = j.agent.as_str();
        graph.individuals.push(Individual {
            id: act.clone(),
            class: BfoClass::Process,
            label: format!("act of judgment {}", j.id),
        });
        graph.individuals.push(Individual {
            id: disposition.clone(),
            class: BfoClass::Disposition,
            label: format!("disposition of {agent} to judge"),
        });
        graph.relations.push(rel(RelationKind::InheresIn, &disposition, agent, None));
        graph
            .relations
            .push(rel(RelationKind::RealizedIn, &disposition, &act, Some(&j.extent)));
        graph
            .relations
            .push(rel(RelationKind::ParticipatesIn, agent, &act, Some(&j.extent)));

        let about = match timeline.resolve_target(&j.target) {
            Some(Target::Sensation(e)) => {
                let of_sensation = pool.fresh(format!("ice_{}_{}", j.id, e.id));
                graph.individuals.push(Individual {
                    id: of_sensation.clone(),
                    class: BfoClass::InformationContentEntity,
                    label: format!("{} is valuable", e.id),
                });
                graph
                    .relations
                    .push(rel(RelationKind::IsAbout, &of_sensation, &e.id, Some(&j.extent)));
                e.correlate.as_str().to_owned()
            }
            _ => j.target.clone(),
        };
        graph.individuals.push(Individual {
            id: ice.clone(),
            class: BfoClass::InformationContentEntity,
            label: format!("{about} is valuable"),
        });
        graph.relations.push(rel(RelationKind::IsAbout, &ice, &about, Some(&j.extent)));
    }

    let mut inhibited: BTreeMap<&str, IntervalSet> = BTreeMap::new();
    for h in &timeline.inhibitions {
        let entry = inhibited.entry(h.agent.as_str()).or_default();
        *entry = entry.union(&h.extent);
    }
    for (agent, extent) in inhibited {
        let id = pool.fresh(format!("inhibitory_control_{agent}"));
        graph.individuals.push(Individual {
            id: id.clone(),
            class: BfoClass::Disposition,
            label: format!("inhibitory control of {agent}"),
        });
        graph.relations.push(rel(RelationKind::InheresIn, &id, agent, Some(&extent)));
    }

    graph
}
