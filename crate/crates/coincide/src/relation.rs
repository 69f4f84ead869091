//! Finite binary relations over an indexed ground set: constructions,
//! property classification, closedness under a map pair, and path /
//! connectivity queries.
//!
//! A relation is an explicit set of ordered index pairs. No implicit edges
//! (reflexive or otherwise) are ever added; every derived relation is the
//! literal set the defining formula produces.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a point in a ground set of declared size.
///
/// Only meaningful relative to that size; constructors of the owning
/// structures range-check it.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for PointId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("relation must have at least one edge")]
    EmptyRelation,
    #[error("edge ({0}, {1}) is out of range for ground size {2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("empty restriction domain")]
    EmptyRestrictionDomain,
    #[error("restriction member {0} is out of range for ground size {1}")]
    MemberOutOfRange(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("map table has {got} entries, ground set has {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("image {0} at position {1} is out of range for ground size {2}")]
    ImageOutOfRange(usize, usize, usize),
}

/// A total self-map on an indexed ground set, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfMap {
    images: Vec<PointId>,
}

impl SelfMap {
    pub fn new(images: Vec<usize>, ground_size: usize) -> Result<Self, MapError> {
        if images.len() != ground_size {
            return Err(MapError::WrongLength {
                got: images.len(),
                expected: ground_size,
            });
        }
        for (pos, &im) in images.iter().enumerate() {
            if im >= ground_size {
                return Err(MapError::ImageOutOfRange(im, pos, ground_size));
            }
        }
        Ok(SelfMap {
            images: images.into_iter().map(PointId).collect(),
        })
    }

    pub fn identity(ground_size: usize) -> Self {
        SelfMap {
            images: (0..ground_size).map(PointId).collect(),
        }
    }

    pub fn constant(value: PointId, ground_size: usize) -> Self {
        SelfMap {
            images: vec![value; ground_size],
        }
    }

    pub fn apply(&self, x: PointId) -> PointId {
        self.images[x.index()]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The image set f(X), in ascending index order.
    pub fn image(&self) -> BTreeSet<PointId> {
        self.images.iter().copied().collect()
    }

    /// Smallest pair `x < y` with equal images, if the map is not one-one.
    pub fn injectivity_violation(&self) -> Option<(PointId, PointId)> {
        for x in 0..self.images.len() {
            for y in (x + 1)..self.images.len() {
                if self.images[x] == self.images[y] {
                    return Some((PointId(x), PointId(y)));
                }
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_violation().is_none()
    }

    pub fn table(&self) -> &[PointId] {
        &self.images
    }
}

/// A binary relation on an indexed ground set, stored as an explicit set of
/// ordered pairs.
///
/// [`FiniteRelation::new`] rejects an empty edge set (the standing
/// assumption everywhere downstream). Derived values such as restrictions
/// may still be empty; they are produced internally and flagged by
/// [`FiniteRelation::is_edgeless`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRelation {
    ground_size: usize,
    edges: BTreeSet<(PointId, PointId)>,
}

impl FiniteRelation {
    pub fn new(
        ground_size: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelationError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= ground_size || b >= ground_size {
                return Err(RelationError::EdgeOutOfRange(a, b, ground_size));
            }
            set.insert((PointId(a), PointId(b)));
        }
        if set.is_empty() {
            return Err(RelationError::EmptyRelation);
        }
        Ok(FiniteRelation {
            ground_size,
            edges: set,
        })
    }

    fn from_parts(ground_size: usize, edges: BTreeSet<(PointId, PointId)>) -> Self {
        FiniteRelation { ground_size, edges }
    }

    /// The universal relation X x X.
    pub fn universal(ground_size: usize) -> Self {
        let mut edges = BTreeSet::new();
        for a in 0..ground_size {
            for b in 0..ground_size {
                edges.insert((PointId(a), PointId(b)));
            }
        }
        FiniteRelation::from_parts(ground_size, edges)
    }

    /// The relation {(x, y) : cmp(x, y)} of a supplied comparator.
    pub fn from_comparator(ground_size: usize, cmp: impl Fn(PointId, PointId) -> bool) -> Self {
        let mut edges = BTreeSet::new();
        for a in 0..ground_size {
            for b in 0..ground_size {
                if cmp(PointId(a), PointId(b)) {
                    edges.insert((PointId(a), PointId(b)));
                }
            }
        }
        FiniteRelation::from_parts(ground_size, edges)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, x: PointId, y: PointId) -> bool {
        self.edges.contains(&(x, y))
    }

    /// Iterate edges in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.edges.iter().copied()
    }

    /// `[x, y] in R`: either (x, y) or (y, x) is an edge.
    pub fn comparative(&self, x: PointId, y: PointId) -> bool {
        self.contains(x, y) || self.contains(y, x)
    }

    /// The transpose relation: (x, y) is an edge iff (y, x) is one here.
    pub fn inverse(&self) -> FiniteRelation {
        let edges = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        FiniteRelation::from_parts(self.ground_size, edges)
    }

    /// The smallest symmetric relation containing this one.
    pub fn symmetric_closure(&self) -> FiniteRelation {
        let mut edges = self.edges.clone();
        edges.extend(self.edges.iter().map(|&(a, b)| (b, a)));
        FiniteRelation::from_parts(self.ground_size, edges)
    }

    /// Restrict to a subset of the ground set, re-indexing over that subset.
    ///
    /// The restriction may be edgeless even though the parent is not.
    pub fn restrict(&self, members: &BTreeSet<PointId>) -> Result<Restriction, RelationError> {
        if members.is_empty() {
            return Err(RelationError::EmptyRestrictionDomain);
        }
        for &m in members {
            if m.index() >= self.ground_size {
                return Err(RelationError::MemberOutOfRange(m.index(), self.ground_size));
            }
        }
        let to_parent: Vec<PointId> = members.iter().copied().collect();
        let local = |p: PointId| PointId(to_parent.binary_search(&p).expect("member"));
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| members.contains(a) && members.contains(b))
            .map(|&(a, b)| (local(a), local(b)))
            .collect();
        Ok(Restriction {
            relation: FiniteRelation::from_parts(to_parent.len(), edges),
            to_parent,
        })
    }

    /// Does `(gx, gy) in R` imply `(fx, fy) in R` for all x, y?
    /// Returns the smallest violating (x, y) in scan order, or `None` when
    /// the relation is closed under the pair. With `g` the identity this is
    /// plain closedness under `f`.
    pub fn pair_closure_violation(&self, f: &SelfMap, g: &SelfMap) -> Option<(PointId, PointId)> {
        for x in 0..self.ground_size {
            for y in 0..self.ground_size {
                let (x, y) = (PointId(x), PointId(y));
                if self.contains(g.apply(x), g.apply(y))
                    && !self.contains(f.apply(x), f.apply(y))
                {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_closed_under_pair(&self, f: &SelfMap, g: &SelfMap) -> bool {
        self.pair_closure_violation(f, g).is_none()
    }

    /// Shortest directed path from `x` to `y` along edges, ties broken by
    /// the lexicographically smallest node sequence. Paths have length >= 1,
    /// so for `x == y` this looks for a cycle through `x`.
    pub fn find_path(&self, x: PointId, y: PointId) -> Option<Path> {
        let dist_to_y = self.distances_to(y);
        let total = if x == y {
            // d(x -> w) = 1 for forward neighbors w; shortest cycle length.
            self.successors(x)
                .filter_map(|w| dist_to_y[w.index()].map(|d| d + 1))
                .min()?
        } else {
            dist_to_y[x.index()]?
        };
        let mut nodes = vec![x];
        let mut cur = x;
        for step in 0..total {
            let remaining = total - step - 1;
            let next = self
                .successors(cur)
                .filter(|w| {
                    if remaining == 0 {
                        *w == y
                    } else {
                        // Never pass through y early when x == y: distances
                        // from y to y are 0, which would shortcut the cycle.
                        dist_to_y[w.index()] == Some(remaining)
                    }
                })
                .min()
                .expect("distance labels admit a next hop");
            nodes.push(next);
            cur = next;
        }
        Some(Path { nodes })
    }

    fn successors(&self, x: PointId) -> impl Iterator<Item = PointId> + '_ {
        self.edges
            .range((x, PointId(0))..=(x, PointId(usize::MAX)))
            .map(|&(_, b)| b)
    }

    /// BFS distances (edge counts) from every node to `target`, following
    /// edges forward. `None` marks unreachable nodes; `target` itself is 0.
    fn distances_to(&self, target: PointId) -> Vec<Option<usize>> {
        let mut preds: Vec<Vec<PointId>> = vec![Vec::new(); self.ground_size];
        for &(a, b) in &self.edges {
            preds[b.index()].push(a);
        }
        let mut dist = vec![None; self.ground_size];
        dist[target.index()] = Some(0);
        let mut frontier = std::collections::VecDeque::from([target]);
        while let Some(v) = frontier.pop_front() {
            let d = dist[v.index()].unwrap();
            for &p in &preds[v.index()] {
                if dist[p.index()].is_none() {
                    dist[p.index()] = Some(d + 1);
                    frontier.push_back(p);
                }
            }
        }
        dist
    }

    /// Every ordered pair of distinct members is joined by a path. Equal
    /// pairs are exempt (no self-path is required) and a singleton set is
    /// connected vacuously.
    pub fn is_connected(&self, members: &BTreeSet<PointId>) -> bool {
        members.iter().all(|&y| {
            let dist = self.distances_to(y);
            members
                .iter()
                .all(|&x| x == y || dist[x.index()].is_some())
        })
    }

    /// Every pair of members has a common successor somewhere in the ground
    /// set: for all x, y there is z with (x, z) and (y, z) edges.
    pub fn is_directed(&self, members: &BTreeSet<PointId>) -> bool {
        members.iter().all(|&x| {
            members.iter().all(|&y| {
                (0..self.ground_size)
                    .map(PointId)
                    .any(|z| self.contains(x, z) && self.contains(y, z))
            })
        })
    }

    /// Exhaustive quantifier evaluation of the basic relation properties.
    pub fn classify(&self) -> RelationClass {
        let n = self.ground_size;
        let ids = || (0..n).map(PointId);
        let reflexive = ids().all(|x| self.contains(x, x));
        let irreflexive = ids().all(|x| !self.contains(x, x));
        let symmetric = self
            .edges
            .iter()
            .all(|&(a, b)| self.contains(b, a));
        let antisymmetric = self
            .edges
            .iter()
            .all(|&(a, b)| a == b || !self.contains(b, a));
        let transitive = self.edges.iter().all(|&(a, b)| {
            self.successors(b).all(|c| self.contains(a, c))
        });
        let complete = ids().all(|x| ids().all(|y| self.comparative(x, y)));
        let weakly_complete = ids().all(|x| ids().all(|y| x == y || self.comparative(x, y)));
        RelationClass {
            reflexive,
            irreflexive,
            symmetric,
            antisymmetric,
            transitive,
            complete,
            weakly_complete,
        }
    }
}

/// A restriction re-indexed over its member set.
///
/// `to_parent[i]` is the parent-ground point of local index `i`; members are
/// taken in ascending parent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub relation: FiniteRelation,
    pub to_parent: Vec<PointId>,
}

impl Restriction {
    pub fn parent_to_local(&self, p: PointId) -> Option<PointId> {
        self.to_parent.binary_search(&p).ok().map(PointId)
    }

    pub fn local_to_parent(&self, l: PointId) -> PointId {
        self.to_parent[l.index()]
    }
}

/// Basic property flags of a relation, each an exhaustive quantifier check.
///
/// Derived labels are fixed conjunctions of the flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationClass {
    pub reflexive: bool,
    pub irreflexive: bool,
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub complete: bool,
    pub weakly_complete: bool,
}

impl RelationClass {
    pub fn preorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn partial_order(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }

    pub fn equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }

    pub fn tolerance(&self) -> bool {
        self.reflexive && self.symmetric
    }

    pub fn strict_order(&self) -> bool {
        self.irreflexive && self.transitive
    }

    pub fn near_order(&self) -> bool {
        self.antisymmetric && self.transitive
    }

    pub fn pseudo_order(&self) -> bool {
        self.reflexive && self.antisymmetric
    }

    pub fn total_order(&self) -> bool {
        self.complete && self.partial_order()
    }

    pub fn labels(&self) -> DerivedLabels {
        DerivedLabels {
            preorder: self.preorder(),
            partial_order: self.partial_order(),
            equivalence: self.equivalence(),
            tolerance: self.tolerance(),
            strict_order: self.strict_order(),
            near_order: self.near_order(),
            pseudo_order: self.pseudo_order(),
            total_order: self.total_order(),
        }
    }
}

/// The derived order-theoretic labels of [`RelationClass`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedLabels {
    pub preorder: bool,
    pub partial_order: bool,
    pub equivalence: bool,
    pub tolerance: bool,
    pub strict_order: bool,
    pub near_order: bool,
    pub pseudo_order: bool,
    pub total_order: bool,
}

/// A directed path `z_0 .. z_k` with `k >= 1`; consecutive pairs are edges
/// of the relation the path was found in. Nodes need not be distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    nodes: Vec<PointId>,
}

impl Path {
    /// Build from an explicit node sequence; at least two nodes.
    pub fn from_nodes(nodes: Vec<PointId>) -> Option<Path> {
        (nodes.len() >= 2).then_some(Path { nodes })
    }

    pub fn nodes(&self) -> &[PointId] {
        &self.nodes
    }

    /// The length k: number of edges, one less than the node count.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> PointId {
        self.nodes[0]
    }

    pub fn end(&self) -> PointId {
        *self.nodes.last().unwrap()
    }

    /// Check every consecutive pair is an edge of `r`.
    pub fn valid_in(&self, r: &FiniteRelation) -> bool {
        self.nodes.windows(2).all(|w| r.contains(w[0], w[1]))
    }
}
