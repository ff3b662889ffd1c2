//! Quivers with length-two monomial relations and the gentle axioms.
//!
//! A [`GentlePresentation`] is only ever constructed through
//! [`build_presentation`], which checks referential integrity first and then
//! every gentle condition. The derived successor/predecessor maps are
//! computed once at construction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::threads::ThreadSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Ids are dense and follow declaration order.
#[derive(Clone, Debug, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_label(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].label
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertex_index.get(label).copied()
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<ArrowId> {
        self.arrow_index.get(label).copied()
    }

    /// Arrows leaving `v`, in id order.
    pub fn outgoing(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.source(a) == v).collect()
    }

    /// Arrows entering `v`, in id order.
    pub fn incoming(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.target(a) == v).collect()
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for arrow in &self.arrows {
            let a = find(&mut parent, arrow.source.0);
            let b = find(&mut parent, arrow.target.0);
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }
}

/// The path `first` followed by `second` is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub second: ArrowId,
    pub first: ArrowId,
}

/// Label-level description of a quiver with relations, as read from a file
/// or built programmatically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuiver {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
    pub relations: Vec<RawRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRelation {
    pub second: String,
    pub first: String,
}

impl RawQuiver {
    pub fn new(name: impl Into<String>) -> Self {
        RawQuiver {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(mut self, label: &str) -> Self {
        self.vertices.push(label.to_string());
        self
    }

    pub fn vertices<'a>(mut self, labels: impl IntoIterator<Item = &'a str>) -> Self {
        self.vertices.extend(labels.into_iter().map(str::to_string));
        self
    }

    pub fn arrow(mut self, label: &str, source: &str, target: &str) -> Self {
        self.arrows.push(RawArrow {
            label: label.to_string(),
            source: source.to_string(),
            target: target.to_string(),
        });
        self
    }

    /// Declares `first` followed by `second` to be zero.
    pub fn relation(mut self, second: &str, first: &str) -> Self {
        self.relations.push(RawRelation {
            second: second.to_string(),
            first: first.to_string(),
        });
        self
    }
}

/// One failed gentle condition, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// More than two arrows start at a vertex.
    OutDegree { vertex: String, count: usize },
    /// More than two arrows end at a vertex.
    InDegree { vertex: String, count: usize },
    /// More than one arrow continues `arrow` without a relation.
    PermittedSuccessors { arrow: String, count: usize },
    /// More than one arrow precedes `arrow` without a relation.
    PermittedPredecessors { arrow: String, count: usize },
    /// More than one arrow continues `arrow` through a relation.
    RelationSuccessors { arrow: String, count: usize },
    /// More than one arrow precedes `arrow` through a relation.
    RelationPredecessors { arrow: String, count: usize },
    /// Arbitrarily long relation-free paths run through these arrows.
    UnboundedPath { arrows: Vec<String> },
    /// The underlying graph is not connected.
    Disconnected { components: usize },
}

impl Violation {
    /// Number of the gentle condition this violates (0 for connectivity).
    pub fn condition(&self) -> u8 {
        match self {
            Violation::OutDegree { .. } | Violation::InDegree { .. } => 1,
            Violation::PermittedSuccessors { .. } | Violation::PermittedPredecessors { .. } => 2,
            Violation::UnboundedPath { .. } => 3,
            Violation::RelationSuccessors { .. } | Violation::RelationPredecessors { .. } => 5,
            Violation::Disconnected { .. } => 0,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutDegree { vertex, count } => {
                write!(f, "condition 1: {count} arrows start at vertex {vertex}")
            }
            Violation::InDegree { vertex, count } => {
                write!(f, "condition 1: {count} arrows end at vertex {vertex}")
            }
            Violation::PermittedSuccessors { arrow, count } => write!(
                f,
                "condition 2: {count} arrows follow {arrow} without a relation"
            ),
            Violation::PermittedPredecessors { arrow, count } => write!(
                f,
                "condition 2: {count} arrows precede {arrow} without a relation"
            ),
            Violation::UnboundedPath { arrows } => write!(
                f,
                "condition 3: relation-free cycle through {}",
                arrows.join(", ")
            ),
            Violation::RelationSuccessors { arrow, count } => {
                write!(f, "condition 5: {count} relations start with {arrow}")
            }
            Violation::RelationPredecessors { arrow, count } => {
                write!(f, "condition 5: {count} relations end with {arrow}")
            }
            Violation::Disconnected { components } => {
                write!(f, "quiver is disconnected ({components} components)")
            }
        }
    }
}

/// Outcome of [`validate_gentle`]. Empty iff the presentation is gentle,
/// connected and finite-dimensional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_gentle(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("presentation has no vertices")]
    Empty,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownEndpoint { arrow: String, vertex: String },
    #[error("relation refers to unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation {second} * {first} is not composable: {first} ends at {end}, {second} starts at {start}")]
    NonComposableRelation {
        second: String,
        first: String,
        end: String,
        start: String,
    },
    #[error("{0}")]
    NotGentle(Violation),
}

/// All problems found while building a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", .errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct BuildErrors {
    pub errors: Vec<BuildError>,
}

/// A quiver together with a relation set, structurally well formed but not
/// yet known to be gentle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
    pub quiver: Quiver,
    pub relations: BTreeSet<Relation>,
}

impl Candidate {
    /// Checks labels, endpoints and composability. Duplicate relations are
    /// collapsed: the relation set has set semantics.
    pub fn from_raw(raw: &RawQuiver) -> Result<Candidate, BuildErrors> {
        let mut errors = Vec::new();
        if raw.vertices.is_empty() {
            errors.push(BuildError::Empty);
        }
        let mut quiver = Quiver::default();
        let mut seen = BTreeSet::new();
        for label in &raw.vertices {
            if !seen.insert(label.as_str()) {
                errors.push(BuildError::DuplicateLabel(label.clone()));
                continue;
            }
            quiver
                .vertex_index
                .insert(label.clone(), VertexId(quiver.vertices.len()));
            quiver.vertices.push(label.clone());
        }
        for arrow in &raw.arrows {
            if !seen.insert(arrow.label.as_str()) {
                errors.push(BuildError::DuplicateLabel(arrow.label.clone()));
                continue;
            }
            let mut endpoint = |label: &str| match quiver.vertex_index.get(label) {
                Some(&v) => Some(v),
                None => {
                    errors.push(BuildError::UnknownEndpoint {
                        arrow: arrow.label.clone(),
                        vertex: label.to_string(),
                    });
                    None
                }
            };
            let source = endpoint(&arrow.source);
            let target = endpoint(&arrow.target);
            if let (Some(source), Some(target)) = (source, target) {
                quiver
                    .arrow_index
                    .insert(arrow.label.clone(), ArrowId(quiver.arrows.len()));
                quiver.arrows.push(Arrow {
                    label: arrow.label.clone(),
                    source,
                    target,
                });
            }
        }
        let mut relations = BTreeSet::new();
        for rel in &raw.relations {
            let second = quiver.arrow_by_label(&rel.second);
            let first = quiver.arrow_by_label(&rel.first);
            // Arrows dropped for a bad endpoint were already reported.
            let declared = |l: &str| raw.arrows.iter().any(|a| a.label == l);
            if second.is_none() && !declared(&rel.second) {
                errors.push(BuildError::UnknownArrow(rel.second.clone()));
            }
            if first.is_none() && !declared(&rel.first) {
                errors.push(BuildError::UnknownArrow(rel.first.clone()));
            }
            let (Some(second), Some(first)) = (second, first) else {
                continue;
            };
            if quiver.source(second) != quiver.target(first) {
                errors.push(BuildError::NonComposableRelation {
                    second: rel.second.clone(),
                    first: rel.first.clone(),
                    end: quiver.vertex_label(quiver.target(first)).to_string(),
                    start: quiver.vertex_label(quiver.source(second)).to_string(),
                });
                continue;
            }
            relations.insert(Relation { second, first });
        }
        if errors.is_empty() {
            Ok(Candidate {
                name: raw.name.clone(),
                quiver,
                relations,
            })
        } else {
            Err(BuildErrors { errors })
        }
    }

    pub fn is_relation(&self, second: ArrowId, first: ArrowId) -> bool {
        self.relations.contains(&Relation { second, first })
    }

    /// Arrows `g` with `g` after `b` composable; split by whether `g b` is a
    /// relation.
    fn continuations(&self, b: ArrowId) -> (Vec<ArrowId>, Vec<ArrowId>) {
        self.quiver
            .outgoing(self.quiver.target(b))
            .into_iter()
            .partition(|&g| !self.is_relation(g, b))
    }

    fn precursors(&self, g: ArrowId) -> (Vec<ArrowId>, Vec<ArrowId>) {
        self.quiver
            .incoming(self.quiver.source(g))
            .into_iter()
            .partition(|&b| !self.is_relation(g, b))
    }
}

/// Checks the gentle conditions, connectivity and finite dimension.
/// Violations are reported as data; the function never fails.
pub fn validate_gentle(c: &Candidate) -> ValidationReport {
    let q = &c.quiver;
    let mut violations = Vec::new();
    for v in q.vertices() {
        let out = q.outgoing(v).len();
        if out > 2 {
            violations.push(Violation::OutDegree {
                vertex: q.vertex_label(v).into(),
                count: out,
            });
        }
        let inc = q.incoming(v).len();
        if inc > 2 {
            violations.push(Violation::InDegree {
                vertex: q.vertex_label(v).into(),
                count: inc,
            });
        }
    }
    for a in q.arrows() {
        let label = || q.arrow_label(a).to_string();
        let (perm, forb) = c.continuations(a);
        if perm.len() > 1 {
            violations.push(Violation::PermittedSuccessors {
                arrow: label(),
                count: perm.len(),
            });
        }
        if forb.len() > 1 {
            violations.push(Violation::RelationSuccessors {
                arrow: label(),
                count: forb.len(),
            });
        }
        let (perm, forb) = c.precursors(a);
        if perm.len() > 1 {
            violations.push(Violation::PermittedPredecessors {
                arrow: label(),
                count: perm.len(),
            });
        }
        if forb.len() > 1 {
            violations.push(Violation::RelationPredecessors {
                arrow: label(),
                count: forb.len(),
            });
        }
    }

    // A relation-free path of unbounded length exists iff the graph of
    // relation-free compositions has a directed cycle.
    let mut graph = DiGraph::<ArrowId, ()>::new();
    let nodes: Vec<_> = q.arrows().map(|a| graph.add_node(a)).collect();
    for b in q.arrows() {
        for g in c.continuations(b).0 {
            graph.add_edge(nodes[b.0], nodes[g.0], ());
        }
    }
    let mut cycles: Vec<Vec<ArrowId>> = tarjan_scc(&graph)
        .into_iter()
        .filter(|scc| scc.len() > 1 || graph.contains_edge(scc[0], scc[0]))
        .map(|scc| {
            let mut arrows: Vec<ArrowId> = scc.into_iter().map(|n| graph[n]).collect();
            arrows.sort();
            arrows
        })
        .collect();
    cycles.sort();
    for cycle in cycles {
        violations.push(Violation::UnboundedPath {
            arrows: cycle
                .into_iter()
                .map(|a| q.arrow_label(a).to_string())
                .collect(),
        });
    }

    let components = q.component_count();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    ValidationReport { violations }
}

/// A validated gentle presentation `kQ/<P>`.
#[derive(Debug, Clone)]
pub struct GentlePresentation {
    name: String,
    quiver: Quiver,
    relations: BTreeSet<Relation>,
    perm_succ: Vec<Option<ArrowId>>,
    perm_pred: Vec<Option<ArrowId>>,
    forb_succ: Vec<Option<ArrowId>>,
    forb_pred: Vec<Option<ArrowId>>,
    threads: OnceLock<ThreadSet>,
}

impl PartialEq for GentlePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Eq for GentlePresentation {}

/// Builds a presentation, returning every structural error or every gentle
/// violation. Never returns a partially valid value.
pub fn build_presentation(raw: &RawQuiver) -> Result<GentlePresentation, BuildErrors> {
    GentlePresentation::from_candidate(Candidate::from_raw(raw)?)
}

impl GentlePresentation {
    pub fn from_candidate(c: Candidate) -> Result<GentlePresentation, BuildErrors> {
        let report = validate_gentle(&c);
        if !report.is_gentle() {
            return Err(BuildErrors {
                errors: report
                    .violations
                    .into_iter()
                    .map(BuildError::NotGentle)
                    .collect(),
            });
        }
        let n = c.quiver.arrow_count();
        let mut p = GentlePresentation {
            perm_succ: vec![None; n],
            perm_pred: vec![None; n],
            forb_succ: vec![None; n],
            forb_pred: vec![None; n],
            name: String::new(),
            quiver: Quiver::default(),
            relations: BTreeSet::new(),
            threads: OnceLock::new(),
        };
        for a in c.quiver.arrows() {
            let (perm, forb) = c.continuations(a);
            p.perm_succ[a.0] = perm.first().copied();
            p.forb_succ[a.0] = forb.first().copied();
            let (perm, forb) = c.precursors(a);
            p.perm_pred[a.0] = perm.first().copied();
            p.forb_pred[a.0] = forb.first().copied();
        }
        p.name = c.name;
        p.quiver = c.quiver;
        p.relations = c.relations;
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> impl ExactSizeIterator<Item = Relation> + '_ {
        self.relations.iter().copied()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn is_relation(&self, second: ArrowId, first: ArrowId) -> bool {
        self.relations.contains(&Relation { second, first })
    }

    /// The arrow continuing `a` without a relation.
    pub fn perm_succ(&self, a: ArrowId) -> Option<ArrowId> {
        self.perm_succ[a.0]
    }

    pub fn perm_pred(&self, a: ArrowId) -> Option<ArrowId> {
        self.perm_pred[a.0]
    }

    /// The arrow `g` with `g a` a relation.
    pub fn forb_succ(&self, a: ArrowId) -> Option<ArrowId> {
        self.forb_succ[a.0]
    }

    pub fn forb_pred(&self, a: ArrowId) -> Option<ArrowId> {
        self.forb_pred[a.0]
    }

    /// Permitted and forbidden threads, enumerated on first use.
    pub fn threads(&self) -> &ThreadSet {
        self.threads.get_or_init(|| ThreadSet::enumerate(self))
    }

    /// Label-level view, suitable for serialization or re-building.
    pub fn to_raw(&self) -> RawQuiver {
        let q = &self.quiver;
        RawQuiver {
            name: self.name.clone(),
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| RawArrow {
                    label: a.label.clone(),
                    source: q.vertex_label(a.source).to_string(),
                    target: q.vertex_label(a.target).to_string(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RawRelation {
                    second: q.arrow_label(r.second).to_string(),
                    first: q.arrow_label(r.first).to_string(),
                })
                .collect(),
        }
    }
}

/// `c(Q) = #Q1 - #Q0 + 1` for a connected quiver.
pub fn cycle_number(p: &GentlePresentation) -> usize {
    p.quiver.arrow_count() + 1 - p.quiver.vertex_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn candidate(raw: RawQuiver) -> Candidate {
        Candidate::from_raw(&raw).unwrap()
    }

    #[test]
    fn running_example_is_gentle() {
        let raw = fixtures::running_example();
        assert!(validate_gentle(&candidate(raw.clone())).is_gentle());
        let p = build_presentation(&raw).unwrap();
        assert_eq!(p.quiver().vertex_count(), 8);
        assert_eq!(p.quiver().arrow_count(), 9);
        assert_eq!(cycle_number(&p), 2);
    }

    #[test]
    fn single_vertex_is_valid() {
        let p = build_presentation(&RawQuiver::new("k").vertex("v")).unwrap();
        assert_eq!(cycle_number(&p), 0);
    }

    #[test]
    fn empty_quiver_is_rejected() {
        let err = build_presentation(&RawQuiver::new("none")).unwrap_err();
        assert_eq!(err.errors, vec![BuildError::Empty]);
    }

    #[test]
    fn non_composable_relation() {
        let raw = RawQuiver::new("x")
            .vertices(["u", "v", "w"])
            .arrow("b", "u", "v")
            .arrow("g", "u", "w")
            .relation("g", "b");
        let err = build_presentation(&raw).unwrap_err();
        assert!(matches!(
            err.errors[..],
            [BuildError::NonComposableRelation { .. }]
        ));
    }

    #[test]
    fn structural_errors_are_all_reported() {
        let raw = RawQuiver::new("x")
            .vertices(["u", "u"])
            .arrow("a", "u", "nowhere")
            .relation("a", "zz");
        let err = build_presentation(&raw).unwrap_err();
        assert_eq!(err.errors.len(), 3);
        assert!(err.errors.contains(&BuildError::DuplicateLabel("u".into())));
    }

    #[test]
    fn loop_without_relation_is_unbounded() {
        let c = candidate(RawQuiver::new("l").vertex("v").arrow("a", "v", "v"));
        let report = validate_gentle(&c);
        assert_eq!(
            report.violations,
            vec![Violation::UnboundedPath {
                arrows: vec!["a".into()]
            }]
        );
        assert_eq!(report.violations[0].condition(), 3);
    }

    #[test]
    fn three_outgoing_arrows() {
        let c = candidate(
            RawQuiver::new("star")
                .vertices(["c", "x", "y", "z"])
                .arrow("a", "c", "x")
                .arrow("b", "c", "y")
                .arrow("d", "c", "z"),
        );
        let report = validate_gentle(&c);
        assert!(report.violations.contains(&Violation::OutDegree {
            vertex: "c".into(),
            count: 3
        }));
    }

    #[test]
    fn relation_uniqueness_is_checked() {
        // Both arrows into v compose to zero with the single arrow out of v.
        let c = candidate(
            RawQuiver::new("x")
                .vertices(["a", "b", "v", "w"])
                .arrow("p", "a", "v")
                .arrow("q", "b", "v")
                .arrow("r", "v", "w")
                .relation("r", "p")
                .relation("r", "q"),
        );
        let report = validate_gentle(&c);
        assert!(report
            .violations
            .contains(&Violation::RelationPredecessors {
                arrow: "r".into(),
                count: 2
            }));
    }

    #[test]
    fn disconnected_is_rejected() {
        let c = candidate(RawQuiver::new("x").vertices(["a", "b"]));
        assert_eq!(
            validate_gentle(&c).violations,
            vec![Violation::Disconnected { components: 2 }]
        );
    }

    #[test]
    fn validation_is_idempotent() {
        let c = candidate(RawQuiver::new("l").vertex("v").arrow("a", "v", "v"));
        assert_eq!(validate_gentle(&c), validate_gentle(&c));
    }

    #[test]
    fn cycle_numbers() {
        let a3 = build_presentation(
            &RawQuiver::new("a3")
                .vertices(["1", "2", "3"])
                .arrow("a", "1", "2")
                .arrow("b", "2", "3"),
        )
        .unwrap();
        assert_eq!(cycle_number(&a3), 0);
        let kronecker = build_presentation(&fixtures::kronecker()).unwrap();
        assert_eq!(cycle_number(&kronecker), 1);
    }

    #[test]
    fn derived_maps_are_mutually_inverse() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        for a in p.quiver().arrows() {
            if let Some(g) = p.perm_succ(a) {
                assert_eq!(p.perm_pred(g), Some(a));
                assert_ne!(p.forb_succ(a), Some(g));
            }
            if let Some(g) = p.forb_succ(a) {
                assert_eq!(p.forb_pred(g), Some(a));
            }
        }
    }
}
