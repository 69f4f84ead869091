//! Finite metric spaces with axiom validation, subspaces, and estimation of
//! the contraction coefficient over relation-linked pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relation::{FiniteRelation, PointId, SelfMap};

/// Absolute tolerance for metric-axiom validation. Desk-scale tables are
/// exact or near-exact; a fixed documented tolerance keeps verdicts
/// reproducible.
pub const METRIC_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("distance table is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("label count {labels} does not match table size {points}")]
    LabelCountMismatch { labels: usize, points: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("negative entry d({0}, {1}) = {2}")]
    NegativeEntry(usize, usize, f64),
    #[error("nonzero diagonal d({0}, {0}) = {1}")]
    NonzeroDiagonal(usize, f64),
    #[error("asymmetric entries d({0}, {1}) = {2} but d({1}, {0}) = {3}")]
    Asymmetric(usize, usize, f64, f64),
    #[error("zero off-diagonal d({0}, {1}) = 0 for distinct points")]
    ZeroOffDiagonal(usize, usize),
    #[error("triangle violation at ({0}, {1}, {2}): d({0}, {2}) = {3} > {4} = d({0}, {1}) + d({1}, {2})")]
    TriangleViolation(usize, usize, usize, f64, f64),
    #[error("empty space")]
    Empty,
}

/// A validated finite metric space: display labels plus a symmetric,
/// positive off the diagonal, triangle-satisfying distance table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validate a square table against the metric axioms. Returns the first
    /// violated axiom in scan order, with its witness indices.
    pub fn new(labels: Vec<String>, table: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = table.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare {
                    row,
                    got: r.len(),
                    expected: n,
                });
            }
        }
        if labels.len() != n {
            return Err(MetricError::LabelCountMismatch {
                labels: labels.len(),
                points: n,
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = table[i][j];
                if !d.is_finite() || d < -METRIC_TOL {
                    return Err(MetricError::NegativeEntry(i, j, d));
                }
                if i == j && d.abs() > METRIC_TOL {
                    return Err(MetricError::NonzeroDiagonal(i, d));
                }
                if (d - table[j][i]).abs() > METRIC_TOL {
                    return Err(MetricError::Asymmetric(i, j, d, table[j][i]));
                }
                if i != j && d.abs() <= METRIC_TOL {
                    return Err(MetricError::ZeroOffDiagonal(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = table[i][k];
                    let rhs = table[i][j] + table[j][k];
                    if lhs > rhs + METRIC_TOL {
                        return Err(MetricError::TriangleViolation(i, j, k, lhs, rhs));
                    }
                }
            }
        }
        let dist = table.into_iter().flatten().collect();
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Space of points on the real line with the absolute-difference metric.
    pub fn from_line_points(labels: Vec<String>, coords: &[f64]) -> Result<Self, MetricError> {
        let table = coords
            .iter()
            .map(|&a| coords.iter().map(|&b| (a - b).abs()).collect())
            .collect();
        FiniteMetricSpace::new(labels, table)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn distance(&self, i: PointId, j: PointId) -> f64 {
        self.dist[i.index() * self.len() + j.index()]
    }

    pub fn label(&self, i: PointId) -> &str {
        &self.labels[i.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<PointId> {
        self.labels.iter().position(|l| l == label).map(PointId)
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.len()).map(PointId)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.len())
            .map(|i| self.dist[i * self.len()..(i + 1) * self.len()].to_vec())
            .collect()
    }
}

/// A nonempty subset of the ground set, standing for the subspace the
/// iterates are required to settle in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    members: BTreeSet<PointId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("subspace must be nonempty")]
    Empty,
    #[error("subspace member {0} is out of range for ground size {1}")]
    OutOfRange(usize, usize),
}

impl Subspace {
    pub fn new(
        members: impl IntoIterator<Item = usize>,
        ground_size: usize,
    ) -> Result<Self, SubspaceError> {
        let mut set = BTreeSet::new();
        for m in members {
            if m >= ground_size {
                return Err(SubspaceError::OutOfRange(m, ground_size));
            }
            set.insert(PointId(m));
        }
        if set.is_empty() {
            return Err(SubspaceError::Empty);
        }
        Ok(Subspace { members: set })
    }

    pub fn full(ground_size: usize) -> Self {
        Subspace {
            members: (0..ground_size).map(PointId).collect(),
        }
    }

    pub fn from_points(members: BTreeSet<PointId>) -> Option<Self> {
        (!members.is_empty()).then_some(Subspace { members })
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.members.contains(&p)
    }

    pub fn members(&self) -> &BTreeSet<PointId> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The sharpest coefficient witnessing `d(fx, fy) <= alpha d(gx, gy)` over
/// pairs whose g-images are related.
///
/// `alpha_hat` is the exact maximum of `d(fx, fy) / d(gx, gy)` over pairs
/// with `(gx, gy)` related and `d(gx, gy) > 0`; zero when no such pair
/// exists. Pairs with `d(gx, gy) = 0` but `d(fx, fy) > 0` make the
/// contraction condition unsatisfiable for every coefficient and are listed
/// in `violations` instead of being folded into the maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionEstimate {
    pub alpha_hat: f64,
    pub witness: Option<(PointId, PointId)>,
    pub violations: Vec<(PointId, PointId)>,
}

impl ContractionEstimate {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    /// Does the contraction condition hold with the given coefficient?
    pub fn admits(&self, alpha: f64) -> bool {
        (0.0..1.0).contains(&alpha) && self.is_feasible() && self.alpha_hat <= alpha
    }

    /// Is there any coefficient in [0, 1) that works?
    pub fn satisfiable(&self) -> bool {
        self.is_feasible() && self.alpha_hat < 1.0
    }
}

/// Scan all ordered point pairs whose g-images are related and take the
/// exact maximum distance ratio. The witness is the first maximizing pair
/// in scan order.
pub fn estimate_contraction(
    space: &FiniteMetricSpace,
    r: &FiniteRelation,
    f: &SelfMap,
    g: &SelfMap,
) -> ContractionEstimate {
    let mut alpha_hat = 0.0_f64;
    let mut witness = None;
    let mut violations = Vec::new();
    for x in space.points() {
        for y in space.points() {
            if !r.contains(g.apply(x), g.apply(y)) {
                continue;
            }
            let dg = space.distance(g.apply(x), g.apply(y));
            let df = space.distance(f.apply(x), f.apply(y));
            if dg == 0.0 {
                if df > 0.0 {
                    violations.push((x, y));
                }
                continue;
            }
            let ratio = df / dg;
            if ratio > alpha_hat {
                alpha_hat = ratio;
                witness = Some((x, y));
            }
        }
    }
    ContractionEstimate {
        alpha_hat,
        witness,
        violations,
    }
}

/// Contraction condition quantified over pairs whose g-images are related:
/// `d(fx, fy) <= alpha d(gx, gy)` for all x, y with `(gx, gy)` an edge.
pub fn contraction_holds(
    space: &FiniteMetricSpace,
    r: &FiniteRelation,
    f: &SelfMap,
    g: &SelfMap,
    alpha: f64,
) -> bool {
    space.points().all(|x| {
        space.points().all(|y| {
            !r.contains(g.apply(x), g.apply(y))
                || space.distance(f.apply(x), f.apply(y))
                    <= alpha * space.distance(g.apply(x), g.apply(y))
        })
    })
}

/// The same condition quantified over comparative pairs `[gx, gy]` instead
/// of directed edges. Equivalent to [`contraction_holds`] because the
/// distance ratio is symmetric in its arguments.
pub fn check_contraction_symmetrized(
    space: &FiniteMetricSpace,
    r: &FiniteRelation,
    f: &SelfMap,
    g: &SelfMap,
    alpha: f64,
) -> bool {
    space.points().all(|x| {
        space.points().all(|y| {
            !r.comparative(g.apply(x), g.apply(y))
                || space.distance(f.apply(x), f.apply(y))
                    <= alpha * space.distance(g.apply(x), g.apply(y))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    fn line_space() -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            labels(3),
            vec![
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 2.0],
                vec![3.0, 2.0, 0.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn line_points_validate() {
        let s = line_space();
        assert_eq!(s.len(), 3);
        assert_eq!(s.distance(PointId(0), PointId(2)), 3.0);
    }

    #[test]
    fn triangle_violation_reports_witness() {
        let err = FiniteMetricSpace::new(
            labels(3),
            vec![
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 1.0],
                vec![3.0, 1.0, 0.0],
            ],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::TriangleViolation(0, 1, 2, 3.0, 2.0));
    }

    #[test]
    fn one_point_space_is_valid() {
        let s = FiniteMetricSpace::new(vec!["p0".into()], vec![vec![0.0]]).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn asymmetry_detected() {
        let err = FiniteMetricSpace::new(
            labels(2),
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::Asymmetric(0, 1, 1.0, 2.0));
    }

    #[test]
    fn negative_entry_detected() {
        let err = FiniteMetricSpace::new(
            labels(2),
            vec![vec![0.0, -1.0], vec![-1.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::NegativeEntry(0, 1, -1.0));
    }

    #[test]
    fn zero_off_diagonal_detected() {
        let err = FiniteMetricSpace::new(
            labels(2),
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::ZeroOffDiagonal(0, 1));
    }

    #[test]
    fn nonzero_diagonal_detected() {
        let err = FiniteMetricSpace::new(
            labels(2),
            vec![vec![0.5, 1.0], vec![1.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::NonzeroDiagonal(0, 0.5));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = FiniteMetricSpace::new(
            vec!["a".into(), "a".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::DuplicateLabel("a".into()));
    }

    #[test]
    fn subspace_must_be_nonempty_and_in_range() {
        assert_eq!(Subspace::new([], 3).unwrap_err(), SubspaceError::Empty);
        assert_eq!(
            Subspace::new([3], 3).unwrap_err(),
            SubspaceError::OutOfRange(3, 3)
        );
        assert_eq!(Subspace::full(3).len(), 3);
    }

    #[test]
    fn contraction_estimate_on_line_instance() {
        // Ratios over the related pairs are {0, 1/2}; the maximum is 1/2.
        let s = line_space();
        let r = FiniteRelation::new(3, [(0, 0), (0, 1), (1, 2)]).unwrap();
        let f = SelfMap::new(vec![0, 0, 1], 3).unwrap();
        let g = SelfMap::identity(3);
        let est = estimate_contraction(&s, &r, &f, &g);
        assert_eq!(est.alpha_hat, 0.5);
        assert_eq!(est.witness, Some((PointId(1), PointId(2))));
        assert!(est.is_feasible());
        assert!(est.satisfiable());
        assert!(est.admits(0.5));
        assert!(!est.admits(0.4));
    }

    #[test]
    fn degenerate_pair_reported_as_violation() {
        // g collapses 0 and 1 while f separates them: no coefficient works.
        let s = line_space();
        let r = FiniteRelation::universal(3);
        let f = SelfMap::identity(3);
        let g = SelfMap::new(vec![0, 0, 2], 3).unwrap();
        let est = estimate_contraction(&s, &r, &f, &g);
        assert!(!est.is_feasible());
        assert!(est.violations.contains(&(PointId(0), PointId(1))));
        assert!(!est.satisfiable());
        assert!(!est.admits(0.9));
    }

    #[test]
    fn symmetrized_condition_matches_directed_condition() {
        let s = line_space();
        let r = FiniteRelation::new(3, [(0, 1), (2, 1)]).unwrap();
        let f = SelfMap::new(vec![0, 0, 1], 3).unwrap();
        let g = SelfMap::identity(3);
        for alpha in [0.0, 0.3, 0.5, 0.9] {
            assert_eq!(
                contraction_holds(&s, &r, &f, &g, alpha),
                check_contraction_symmetrized(&s, &r, &f, &g, alpha),
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn estimate_ignores_unrelated_pairs() {
        let s = line_space();
        // Only (2, 2) related: g-image pairs never hit it with g below.
        let r = FiniteRelation::new(3, [(2, 2)]).unwrap();
        let f = SelfMap::identity(3);
        let g = SelfMap::new(vec![0, 0, 0], 3).unwrap();
        let est = estimate_contraction(&s, &r, &f, &g);
        assert_eq!(est.alpha_hat, 0.0);
        assert_eq!(est.witness, None);
    }

    #[test]
    fn alpha_hat_equal_over_symmetric_closure() {
        let s = line_space();
        let r = FiniteRelation::new(3, [(0, 1), (1, 2)]).unwrap();
        let f = SelfMap::new(vec![1, 0, 1], 3).unwrap();
        let g = SelfMap::identity(3);
        let direct = estimate_contraction(&s, &r, &f, &g);
        let closed = estimate_contraction(&s, &r.symmetric_closure(), &f, &g);
        assert_eq!(direct.alpha_hat, closed.alpha_hat);
    }
}
