//! Ground truth by brute force: coincidence points, points of coincidence,
//! common fixed points and their value classes, computed by full scans with
//! exact index comparisons. Everything else in the crate is validated
//! against this module; it consults no relation or solver state.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::hypothesis::ProblemInstance;
use crate::relation::PointId;

/// Exhaustive enumeration of the coincidence structure of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceSummary {
    /// `C(f, g) = {x : gx = fx}`.
    pub coincidence_points: BTreeSet<PointId>,
    /// `{ g(x) : x in C(f, g) }` - the common values attained.
    pub points_of_coincidence: BTreeSet<PointId>,
    /// `{x : x = gx = fx}`.
    pub common_fixed_points: BTreeSet<PointId>,
    /// Common value `a` mapped to `{x : gx = fx = a}`.
    pub value_classes: BTreeMap<PointId, BTreeSet<PointId>>,
}

/// Scan all points of the instance.
pub fn enumerate(inst: &ProblemInstance) -> CoincidenceSummary {
    let mut coincidence_points = BTreeSet::new();
    let mut points_of_coincidence = BTreeSet::new();
    let mut common_fixed_points = BTreeSet::new();
    let mut value_classes: BTreeMap<PointId, BTreeSet<PointId>> = BTreeMap::new();
    for x in inst.points() {
        let (gx, fx) = (inst.g.apply(x), inst.f.apply(x));
        if gx == fx {
            coincidence_points.insert(x);
            points_of_coincidence.insert(gx);
            value_classes.entry(gx).or_default().insert(x);
            if gx == x {
                common_fixed_points.insert(x);
            }
        }
    }
    CoincidenceSummary {
        coincidence_points,
        points_of_coincidence,
        common_fixed_points,
        value_classes,
    }
}

/// Outcome of checking that weak compatibility turns every point of
/// coincidence into a coincidence point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakCompatibilityCheck {
    /// Whether the pair is weakly compatible (the premise).
    pub premise: bool,
    /// Vacuously true when the premise fails; otherwise true iff every
    /// point of coincidence satisfies `g(x) = f(x)` itself.
    pub holds: bool,
    /// A point of coincidence breaking the conclusion while the premise
    /// holds. Must never occur.
    pub witness: Option<PointId>,
}

/// Check the implication "weakly compatible implies every point of
/// coincidence is a coincidence point" directly on the enumerated sets.
pub fn verify_weak_compatibility_lemma(inst: &ProblemInstance) -> WeakCompatibilityCheck {
    let premise = inst.weak_compatibility_violation().is_none();
    if !premise {
        return WeakCompatibilityCheck {
            premise,
            holds: true,
            witness: None,
        };
    }
    let summary = enumerate(inst);
    let witness = summary
        .points_of_coincidence
        .iter()
        .copied()
        .find(|&v| inst.g.apply(v) != inst.f.apply(v));
    WeakCompatibilityCheck {
        premise,
        holds: witness.is_none(),
        witness,
    }
}
