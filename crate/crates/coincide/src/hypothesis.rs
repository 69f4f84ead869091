//! Mechanical verification of the coincidence-theorem hypotheses on finite
//! instances, with witnesses.
//!
//! The report covers four stacked claims about a pair of self-maps `(f, g)`
//! on a metric space carrying a binary relation:
//!
//! * `theorem2_applicable` - the existence bundle: a coincidence point
//!   exists (conditions (a)-(d) plus branch (e) or (e')).
//! * `theorem3_applicable` - existence plus (u1): the point of coincidence
//!   is unique.
//! * `theorem4_applicable` - additionally (u2): the coincidence point
//!   itself is unique.
//! * `theorem5_applicable` - the (e') branch plus (u1) and weak
//!   compatibility (e'3): a unique common fixed point exists.
//!
//! # Finite-space reduction
//!
//! In a finite metric space every convergent sequence is eventually
//! constant (off-diagonal distances are bounded below), which collapses the
//! sequential hypotheses:
//!
//! * every space and subspace is complete and closed along
//!   relation-preserving sequences, so the completeness-style hypotheses
//!   hold outright;
//! * every self-map is sequentially continuous along relation-preserving
//!   (and g-image) sequences, so (e2), the f branch of (e3), and all of
//!   (e'2) hold outright;
//! * every relation is self-closed under the metric, so the remaining
//!   branches of (e3) and (e'2) hold outright.
//!
//! Such conditions are reported as `holds-degenerately` with a note: they
//! only have bite on infinite spaces.
//!
//! Two sequential notions survive as genuine finite checks:
//!
//! * **compatibility**: a sequence with `lim g(x_n) = lim f(x_n) = a` has a
//!   tail inside the value class `{x : gx = fx = a}`, so compatibility
//!   reduces to commutation at every coincidence point - the same predicate
//!   as weak compatibility.
//! * **relation-compatibility** (e1): the image tails of an admissible
//!   sequence are eventually the constant common value `a`, forcing the
//!   edge `(a, a)` into the relation. The notion therefore reduces to
//!   commutation on the value classes whose common value carries a loop;
//!   classes whose value has no loop contribute vacuously.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{
    estimate_contraction, ContractionEstimate, FiniteMetricSpace, Subspace, SubspaceError,
};
use crate::relation::{FiniteRelation, PointId, SelfMap};

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("relation ground size {relation} does not match space size {space}")]
    RelationSizeMismatch { relation: usize, space: usize },
    #[error("map `{name}` has {got} entries, expected {expected}")]
    MapSizeMismatch {
        name: &'static str,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("alpha must be a finite number, got {0}")]
    NonFiniteAlpha(f64),
}

/// A finite problem instance: validated metric space, nonempty relation,
/// two total self-maps, a subspace (defaulting to the whole ground set),
/// and an optional declared contraction coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub space: FiniteMetricSpace,
    pub relation: FiniteRelation,
    pub f: SelfMap,
    pub g: SelfMap,
    pub y: Subspace,
    pub alpha: Option<f64>,
}

impl ProblemInstance {
    pub fn new(
        space: FiniteMetricSpace,
        relation: FiniteRelation,
        f: SelfMap,
        g: SelfMap,
        y: Option<Subspace>,
        alpha: Option<f64>,
    ) -> Result<Self, InstanceError> {
        let n = space.len();
        if relation.ground_size() != n {
            return Err(InstanceError::RelationSizeMismatch {
                relation: relation.ground_size(),
                space: n,
            });
        }
        for (name, m) in [("f", &f), ("g", &g)] {
            if m.len() != n {
                return Err(InstanceError::MapSizeMismatch {
                    name,
                    got: m.len(),
                    expected: n,
                });
            }
        }
        if let Some(a) = alpha {
            if !a.is_finite() {
                return Err(InstanceError::NonFiniteAlpha(a));
            }
        }
        let y = y.unwrap_or_else(|| Subspace::full(n));
        if let Some(&m) = y.members().iter().next_back() {
            if m.index() >= n {
                return Err(SubspaceError::OutOfRange(m.index(), n).into());
            }
        }
        Ok(ProblemInstance {
            space,
            relation,
            f,
            g,
            y,
            alpha,
        })
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        self.space.points()
    }

    /// Value classes: common value `a` mapped to `{x : gx = fx = a}`.
    pub fn value_classes(&self) -> BTreeMap<PointId, Vec<PointId>> {
        let mut classes: BTreeMap<PointId, Vec<PointId>> = BTreeMap::new();
        for x in self.points() {
            let (gx, fx) = (self.g.apply(x), self.f.apply(x));
            if gx == fx {
                classes.entry(gx).or_default().push(x);
            }
        }
        classes
    }

    /// The exact contraction estimate for this instance.
    pub fn contraction_estimate(&self) -> ContractionEstimate {
        estimate_contraction(&self.space, &self.relation, &self.f, &self.g)
    }

    /// The coefficient downstream bounds should use: the declared alpha when
    /// it is a genuine coefficient in [0, 1), otherwise the sharp estimate
    /// when it admits one.
    pub fn effective_alpha(&self) -> Option<f64> {
        if let Some(a) = self.alpha {
            if (0.0..1.0).contains(&a) {
                return Some(a);
            }
        }
        let est = self.contraction_estimate();
        est.satisfiable().then_some(est.alpha_hat)
    }

    /// Condition (a): every f-image lies in the g-image intersected with Y.
    pub fn check_range_inclusion(&self) -> ConditionResult {
        let g_image = self.g.image();
        for x in self.points() {
            let fx = self.f.apply(x);
            if !g_image.contains(&fx) || !self.y.contains(fx) {
                return ConditionResult::fails(ConditionId::RangeInclusion)
                    .with_witness(Witness::Point(x))
                    .with_note(format!(
                        "f({}) = {} is outside the g-image intersected with Y",
                        x, fx
                    ));
            }
        }
        ConditionResult::holds(ConditionId::RangeInclusion)
    }

    /// Condition (b): the relation is closed under the pair, i.e.
    /// `(gx, gy)` an edge implies `(fx, fy)` an edge.
    pub fn check_pair_closedness(&self) -> ConditionResult {
        match self.relation.pair_closure_violation(&self.f, &self.g) {
            None => ConditionResult::holds(ConditionId::PairClosedness),
            Some((x, y)) => ConditionResult::fails(ConditionId::PairClosedness)
                .with_witness(Witness::Pair(x, y))
                .with_note(
                    "g-images of the pair are related but f-images are not".to_string(),
                ),
        }
    }

    /// The admissible starting points `{x : (gx, fx) an edge}`.
    pub fn find_starting_points(&self) -> BTreeSet<PointId> {
        self.points()
            .filter(|&x| self.relation.contains(self.g.apply(x), self.f.apply(x)))
            .collect()
    }

    /// Condition (c): the starting set is nonempty. The witness is the
    /// computed set either way.
    pub fn check_starting_points(&self) -> ConditionResult {
        let starts = self.find_starting_points();
        let witness = Witness::Points(starts.iter().copied().collect());
        if starts.is_empty() {
            ConditionResult::fails(ConditionId::StartingPoints)
                .with_witness(witness)
                .with_note("no point x has (gx, fx) in the relation".to_string())
        } else {
            ConditionResult::holds(ConditionId::StartingPoints).with_witness(witness)
        }
    }

    /// Condition (d): a contraction coefficient exists (or the declared one
    /// works). Uses the declared alpha when supplied, otherwise the strict
    /// exact comparison `alpha_hat < 1`.
    pub fn check_contraction(&self) -> ConditionResult {
        let est = self.contraction_estimate();
        if !est.is_feasible() {
            let &(x, y) = est.violations.first().expect("infeasible has violations");
            return ConditionResult::fails(ConditionId::Contraction)
                .with_witness(Witness::Pair(x, y))
                .with_note(format!(
                    "d(g{x}, g{y}) = 0 but d(f{x}, f{y}) > 0: no coefficient can work"
                ));
        }
        match self.alpha {
            Some(a) if !(0.0..1.0).contains(&a) => {
                ConditionResult::fails(ConditionId::Contraction)
                    .with_note(format!("declared alpha = {a} is outside [0, 1)"))
            }
            Some(a) if est.alpha_hat <= a => ConditionResult::holds(ConditionId::Contraction)
                .with_witness_opt(est.witness.map(|(x, y)| Witness::Pair(x, y)))
                .with_note(format!(
                    "declared alpha = {a} accepted; sharp ratio alpha_hat = {}",
                    est.alpha_hat
                )),
            Some(a) => ConditionResult::fails(ConditionId::Contraction)
                .with_witness_opt(est.witness.map(|(x, y)| Witness::Pair(x, y)))
                .with_note(format!(
                    "declared alpha = {a} is below the sharp ratio alpha_hat = {}",
                    est.alpha_hat
                )),
            None if est.alpha_hat < 1.0 => ConditionResult::holds(ConditionId::Contraction)
                .with_witness_opt(est.witness.map(|(x, y)| Witness::Pair(x, y)))
                .with_note(format!("alpha_hat = {} < 1", est.alpha_hat)),
            None => ConditionResult::fails(ConditionId::Contraction)
                .with_witness_opt(est.witness.map(|(x, y)| Witness::Pair(x, y)))
                .with_note(format!("alpha_hat = {} >= 1", est.alpha_hat)),
        }
    }

    /// Conditions (e1)-(e3). (e1) is the genuine finite check described in
    /// the module docs; (e2) and both branches of (e3) hold degenerately on
    /// finite spaces.
    pub fn check_part_e(&self) -> Vec<ConditionResult> {
        let e1 = match self.relation_compatibility_violation() {
            None => ConditionResult::holds(ConditionId::RelationCompatibility),
            Some((a, x)) => ConditionResult::fails(ConditionId::RelationCompatibility)
                .with_witness(Witness::Point(x))
                .with_note(format!(
                    "common value {a} carries a loop and gx = fx = {a} at x = {x}, \
                     but g(fx) != f(gx)"
                )),
        };
        let e2 = ConditionResult::degenerate(
            ConditionId::GContinuity,
            "finite space: every map is sequentially continuous along \
             relation-preserving sequences",
        );
        let e3 = ConditionResult::degenerate(
            ConditionId::FContinuityOrSelfClosed,
            "finite space: both branches hold - f is sequentially continuous along \
             relation-preserving sequences, and the relation is self-closed under g-images \
             (convergent sequences are eventually constant)",
        );
        vec![e1, e2, e3]
    }

    /// First (common value, point) pair violating the finite
    /// relation-compatibility characterization, in scan order.
    fn relation_compatibility_violation(&self) -> Option<(PointId, PointId)> {
        for (a, class) in self.value_classes() {
            if !self.relation.contains(a, a) {
                continue;
            }
            for x in class {
                if self.g.apply(self.f.apply(x)) != self.f.apply(self.g.apply(x)) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    /// Conditions (e'1)-(e'2). (e'1) is the genuine inclusion check;
    /// every alternative of (e'2) holds degenerately on finite spaces.
    pub fn check_part_e_prime(&self) -> Vec<ConditionResult> {
        let g_image = self.g.image();
        let e1 = match self.y.members().iter().find(|m| !g_image.contains(m)) {
            None => ConditionResult::holds(ConditionId::SubspaceInImage),
            Some(&m) => ConditionResult::fails(ConditionId::SubspaceInImage)
                .with_witness(Witness::Point(m))
                .with_note(format!("subspace member {m} has no g-preimage")),
        };
        let e2 = ConditionResult::degenerate(
            ConditionId::ContinuityAlternatives,
            "finite space: all three alternatives hold - f is continuous along g-image \
             sequences, f and g are continuous, and the relation restricted to Y is \
             self-closed (convergent sequences are eventually constant; every subspace \
             is likewise complete along relation-preserving sequences)",
        );
        vec![e1, e2]
    }

    /// First coincidence point where the maps fail to commute, in scan
    /// order; `None` means the pair is weakly compatible.
    pub fn weak_compatibility_violation(&self) -> Option<PointId> {
        self.points().find(|&x| {
            self.g.apply(x) == self.f.apply(x)
                && self.g.apply(self.f.apply(x)) != self.f.apply(self.g.apply(x))
        })
    }

    /// Uniqueness-side conditions: (u1), (u1'), (u1''), (u2) and (e'3).
    pub fn check_uniqueness_conditions(&self) -> Vec<ConditionResult> {
        let f_image = self.f.image();
        let g_image = self.g.image();

        let u1 = {
            let restriction = self
                .relation
                .restrict(&g_image)
                .expect("g-image is nonempty");
            let mut local = BTreeSet::new();
            let mut outside = None;
            for &v in &f_image {
                match restriction.parent_to_local(v) {
                    Some(l) => {
                        local.insert(l);
                    }
                    None => {
                        outside = Some(v);
                        break;
                    }
                }
            }
            match outside {
                Some(v) => ConditionResult::fails(ConditionId::ImageConnected)
                    .with_witness(Witness::Point(v))
                    .with_note(format!(
                        "f-image point {v} lies outside the g-image, so the restricted \
                         relation carries no path for it"
                    )),
                None => {
                    let closure = restriction.relation.symmetric_closure();
                    if closure.is_connected(&local) {
                        ConditionResult::holds(ConditionId::ImageConnected)
                    } else {
                        let (x, y) = first_unjoined_pair(&closure, &local, &restriction.to_parent);
                        ConditionResult::fails(ConditionId::ImageConnected)
                            .with_witness(Witness::Pair(x, y))
                            .with_note(
                                "no path joins the pair inside the symmetric closure of \
                                 the relation restricted to the g-image"
                                    .to_string(),
                            )
                    }
                }
            }
        };

        let u1_prime = {
            let restriction = self
                .relation
                .restrict(&f_image)
                .expect("f-image is nonempty");
            if restriction.relation.classify().complete {
                ConditionResult::holds(ConditionId::ImageComplete)
            } else {
                ConditionResult::fails(ConditionId::ImageComplete).with_note(
                    "the relation restricted to the f-image is not complete".to_string(),
                )
            }
        };

        let u1_double_prime = {
            let restriction = self
                .relation
                .restrict(&g_image)
                .expect("g-image is nonempty");
            let local: Option<BTreeSet<PointId>> = f_image
                .iter()
                .map(|&v| restriction.parent_to_local(v))
                .collect();
            match local {
                None => ConditionResult::fails(ConditionId::ImageDirected).with_note(
                    "an f-image point lies outside the g-image".to_string(),
                ),
                Some(local) => {
                    if restriction.relation.symmetric_closure().is_directed(&local) {
                        ConditionResult::holds(ConditionId::ImageDirected)
                    } else {
                        ConditionResult::fails(ConditionId::ImageDirected).with_note(
                            "some pair of f-image points has no common comparative \
                             successor inside the g-image"
                                .to_string(),
                        )
                    }
                }
            }
        };

        let u2 = if self.f.is_injective() || self.g.is_injective() {
            ConditionResult::holds(ConditionId::Injectivity)
        } else {
            let fp = self.f.injectivity_violation().expect("f not injective");
            let gp = self.g.injectivity_violation().expect("g not injective");
            ConditionResult::fails(ConditionId::Injectivity)
                .with_witness(Witness::Pair(fp.0, fp.1))
                .with_note(format!(
                    "neither map is one-one: f collapses ({}, {}), g collapses ({}, {})",
                    fp.0, fp.1, gp.0, gp.1
                ))
        };

        let e_prime_3 = match self.weak_compatibility_violation() {
            None => ConditionResult::holds(ConditionId::WeakCompatibility),
            Some(x) => ConditionResult::fails(ConditionId::WeakCompatibility)
                .with_witness(Witness::Point(x))
                .with_note(format!("gx = fx at x = {x} but g(fx) != f(gx)")),
        };

        vec![u1, u1_prime, u1_double_prime, u2, e_prime_3]
    }

    /// Truth values of the five commutation notions, using the finite-space
    /// characterizations for the two sequential ones (see module docs).
    pub fn check_commutation_ladder(&self) -> CommutationLadder {
        let commuting = self.points().all(|x| {
            self.g.apply(self.f.apply(x)) == self.f.apply(self.g.apply(x))
        });
        let weakly_commuting = self.points().all(|x| {
            self.space
                .distance(self.g.apply(self.f.apply(x)), self.f.apply(self.g.apply(x)))
                <= self.space.distance(self.g.apply(x), self.f.apply(x))
        });
        let weakly_compatible = self.weak_compatibility_violation().is_none();
        CommutationLadder {
            commuting,
            weakly_commuting,
            // On a finite space compatibility reduces to commutation at
            // every coincidence point, the same predicate as weak
            // compatibility.
            compatible: weakly_compatible,
            r_compatible: self.relation_compatibility_violation().is_none(),
            weakly_compatible,
        }
    }

    /// Aggregate every condition check into the full report.
    pub fn full_report(&self) -> HypothesisReport {
        let mut conditions = vec![
            self.check_range_inclusion(),
            self.check_pair_closedness(),
            self.check_starting_points(),
            self.check_contraction(),
        ];
        conditions.extend(self.check_part_e());
        conditions.extend(self.check_part_e_prime());
        conditions.extend(self.check_uniqueness_conditions());
        HypothesisReport::from_conditions(conditions)
    }
}

fn first_unjoined_pair(
    closure: &FiniteRelation,
    members: &BTreeSet<PointId>,
    to_parent: &[PointId],
) -> (PointId, PointId) {
    for &x in members {
        for &y in members {
            if x != y && closure.find_path(x, y).is_none() {
                return (to_parent[x.index()], to_parent[y.index()]);
            }
        }
    }
    unreachable!("caller established the set is not connected")
}

/// Truth values of the commutation notions, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationLadder {
    pub commuting: bool,
    pub weakly_commuting: bool,
    pub compatible: bool,
    pub r_compatible: bool,
    pub weakly_compatible: bool,
}

impl CommutationLadder {
    /// First broken link of the classical implication chain
    /// commuting => weakly commuting => compatible => r-compatible =>
    /// weakly compatible, or `None` when every link holds.
    ///
    /// The final link is *not* a theorem: a pair can be r-compatible
    /// vacuously (no coincidence value carries a loop) yet fail weak
    /// compatibility. See the crate tests for a three-point counterexample.
    pub fn chain_violation(&self) -> Option<(&'static str, &'static str)> {
        let chain = [
            ("commuting", self.commuting),
            ("weakly_commuting", self.weakly_commuting),
            ("compatible", self.compatible),
            ("r_compatible", self.r_compatible),
            ("weakly_compatible", self.weakly_compatible),
        ];
        chain
            .windows(2)
            .find(|w| w[0].1 && !w[1].1)
            .map(|w| (w[0].0, w[1].0))
    }
}

/// Condition tags of the hypothesis report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionId {
    /// (a) `f(X)` inside `g(X)` intersected with `Y`.
    RangeInclusion,
    /// (b) the relation is closed under the map pair.
    PairClosedness,
    /// (c) the starting set `{x : (gx, fx) related}` is nonempty.
    StartingPoints,
    /// (d) a contraction coefficient in [0, 1) works over related g-pairs.
    Contraction,
    /// (e1) relation-compatibility of the pair.
    RelationCompatibility,
    /// (e2) sequential continuity of g along relation-preserving sequences.
    GContinuity,
    /// (e3) sequential continuity of f, or self-closedness of the relation
    /// under g-images.
    FContinuityOrSelfClosed,
    /// (e'1) `Y` inside `g(X)`.
    SubspaceInImage,
    /// (e'2) continuity of f along g-image sequences, or joint continuity,
    /// or self-closedness of the relation restricted to Y.
    ContinuityAlternatives,
    /// (e'3) weak compatibility: the maps commute at coincidence points.
    WeakCompatibility,
    /// (u1) the f-image is path-connected in the symmetric closure of the
    /// relation restricted to the g-image.
    ImageConnected,
    /// (u1') the relation restricted to the f-image is complete.
    ImageComplete,
    /// (u1'') the f-image is directed in the symmetric closure of the
    /// relation restricted to the g-image.
    ImageDirected,
    /// (u2) one of the maps is one-one.
    Injectivity,
}

impl ConditionId {
    pub const ALL: [ConditionId; 14] = [
        ConditionId::RangeInclusion,
        ConditionId::PairClosedness,
        ConditionId::StartingPoints,
        ConditionId::Contraction,
        ConditionId::RelationCompatibility,
        ConditionId::GContinuity,
        ConditionId::FContinuityOrSelfClosed,
        ConditionId::SubspaceInImage,
        ConditionId::ContinuityAlternatives,
        ConditionId::WeakCompatibility,
        ConditionId::ImageConnected,
        ConditionId::ImageComplete,
        ConditionId::ImageDirected,
        ConditionId::Injectivity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ConditionId::RangeInclusion => "a",
            ConditionId::PairClosedness => "b",
            ConditionId::StartingPoints => "c",
            ConditionId::Contraction => "d",
            ConditionId::RelationCompatibility => "e1",
            ConditionId::GContinuity => "e2",
            ConditionId::FContinuityOrSelfClosed => "e3",
            ConditionId::SubspaceInImage => "e'1",
            ConditionId::ContinuityAlternatives => "e'2",
            ConditionId::WeakCompatibility => "e'3",
            ConditionId::ImageConnected => "u1",
            ConditionId::ImageComplete => "u1'",
            ConditionId::ImageDirected => "u1''",
            ConditionId::Injectivity => "u2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<ConditionId> {
        ConditionId::ALL.into_iter().find(|id| id.tag() == tag)
    }
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl Serialize for ConditionId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for ConditionId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let tag = String::deserialize(d)?;
        ConditionId::from_tag(&tag)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown condition tag {tag:?}")))
    }
}

/// Verdict of a single condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "fails")]
    Fails,
    /// True on every finite instance by the reduction in the module docs;
    /// the note says why.
    #[serde(rename = "holds-degenerately")]
    HoldsDegenerately,
}

impl Verdict {
    pub fn satisfied(self) -> bool {
        self != Verdict::Fails
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsDegenerately => "holds-degenerately",
        };
        write!(f, "{s}")
    }
}

/// Points or pairs substantiating a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Point(PointId),
    Pair(PointId, PointId),
    Points(Vec<PointId>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: ConditionId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl ConditionResult {
    fn holds(id: ConditionId) -> Self {
        ConditionResult {
            id,
            verdict: Verdict::Holds,
            witness: None,
            note: None,
        }
    }

    fn fails(id: ConditionId) -> Self {
        ConditionResult {
            id,
            verdict: Verdict::Fails,
            witness: None,
            note: None,
        }
    }

    fn degenerate(id: ConditionId, note: &str) -> Self {
        ConditionResult {
            id,
            verdict: Verdict::HoldsDegenerately,
            witness: None,
            note: Some(note.to_string()),
        }
    }

    fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    fn with_witness_opt(mut self, w: Option<Witness>) -> Self {
        self.witness = w;
        self
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

/// Per-condition verdicts plus the applicability of each stacked claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub conditions: Vec<ConditionResult>,
    pub theorem2_applicable: bool,
    pub theorem3_applicable: bool,
    pub theorem4_applicable: bool,
    pub theorem5_applicable: bool,
}

impl HypothesisReport {
    fn from_conditions(conditions: Vec<ConditionResult>) -> Self {
        let ok = |id: ConditionId| {
            conditions
                .iter()
                .find(|c| c.id == id)
                .map(|c| c.verdict.satisfied())
                .unwrap_or(false)
        };
        let base = ok(ConditionId::RangeInclusion)
            && ok(ConditionId::PairClosedness)
            && ok(ConditionId::StartingPoints)
            && ok(ConditionId::Contraction);
        let part_e = ok(ConditionId::RelationCompatibility)
            && ok(ConditionId::GContinuity)
            && ok(ConditionId::FContinuityOrSelfClosed);
        let part_e_prime =
            ok(ConditionId::SubspaceInImage) && ok(ConditionId::ContinuityAlternatives);
        let theorem2_applicable = base && (part_e || part_e_prime);
        let theorem3_applicable = theorem2_applicable && ok(ConditionId::ImageConnected);
        let theorem4_applicable = theorem3_applicable && ok(ConditionId::Injectivity);
        let theorem5_applicable = base
            && part_e_prime
            && ok(ConditionId::ImageConnected)
            && ok(ConditionId::WeakCompatibility);
        HypothesisReport {
            conditions,
            theorem2_applicable,
            theorem3_applicable,
            theorem4_applicable,
            theorem5_applicable,
        }
    }

    pub fn condition(&self, id: ConditionId) -> &ConditionResult {
        self.conditions
            .iter()
            .find(|c| c.id == id)
            .expect("every condition is present")
    }
}
