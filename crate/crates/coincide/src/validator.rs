//! Seeded randomized conformance fuzzing: generate finite instances,
//! check the hypothesis bundles, and assert each claim's conclusion
//! against the brute-force oracle. Also the exhaustive/randomized suites
//! for the three relation-algebra propositions.
//!
//! # Pseudo-random source
//!
//! Instance streams must be reproducible bit-for-bit across platforms and
//! implementations, so the generator is a fixed split-mix recurrence
//! rather than a library RNG. The state advances by the 64-bit golden
//! gamma `0x9E3779B97F4A7C15` and outputs pass through the two-round
//! multiply-xor-shift finalizer with constants `0xBF58476D1CE4E5B9` (shift
//! 30) and `0x94D049BB133111EB` (shifts 27 and 31). Instance `i` of seed
//! `s` uses the stream seeded with `mix(s) ^ mix(i + 1)`. Bounded draws
//! reduce by modulo; the tiny bias is irrelevant at desk scale and keeps
//! the recurrence trivially portable.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::hypothesis::ProblemInstance;
use crate::metric::{FiniteMetricSpace, Subspace};
use crate::oracle;
use crate::relation::{FiniteRelation, PointId, SelfMap};

/// Split-mix finalizer: two rounds of multiply-xor-shift.
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The split-mix generator: state walks by the golden gamma, outputs are
/// finalized with [`mix`].
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GAMMA: u64 = 0x9E3779B97F4A7C15;

    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GAMMA);
        mix(self.state)
    }

    /// Uniform-ish draw in `0..bound` by modulo reduction.
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform draw in [0, 1) with 53 significant bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// Knobs of the instance stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub instances: usize,
    /// Points per instance are drawn uniformly from `1..=max_points`.
    pub max_points: usize,
    /// Probability of each ordered pair being a relation edge.
    pub edge_density: f64,
    /// Probability that f is built as g composed with the constant
    /// retraction onto a random basepoint (the degenerate contraction,
    /// which satisfies the contraction condition with any coefficient).
    /// Without this bias uniformly random pairs almost never satisfy the
    /// contraction hypothesis, and the conclusions would go untested.
    pub map_bias: f64,
}

impl GeneratorConfig {
    pub fn new(seed: u64, instances: usize) -> GeneratorConfig {
        GeneratorConfig {
            seed,
            instances,
            max_points: 8,
            edge_density: 0.3,
            map_bias: 0.5,
        }
    }
}

/// Deterministic instance `index` of the stream `cfg.seed`.
///
/// Points are distinct integer grid coordinates in `[0, 100]^2` with
/// Euclidean distances, so the metric axioms hold by construction; the
/// relation gets one forced loop at point 0 if the density draw leaves it
/// empty; g is a uniform random table; f is either g composed with a
/// constant retraction (see [`GeneratorConfig::map_bias`]) or random with
/// its image forced inside the g-image; Y is the g-image or the full
/// ground set by one random bit.
pub fn gen_instance(cfg: &GeneratorConfig, index: usize) -> ProblemInstance {
    let mut rng = SplitMix64::new(mix(cfg.seed) ^ mix(index as u64 + 1));
    let n = 1 + rng.next_below(cfg.max_points);

    let mut coords: Vec<(i64, i64)> = Vec::with_capacity(n);
    while coords.len() < n {
        let c = (rng.next_below(101) as i64, rng.next_below(101) as i64);
        if !coords.contains(&c) {
            coords.push(c);
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let table: Vec<Vec<f64>> = coords
        .iter()
        .map(|&(ax, ay)| {
            coords
                .iter()
                .map(|&(bx, by)| {
                    let (dx, dy) = ((ax - bx) as f64, (ay - by) as f64);
                    (dx * dx + dy * dy).sqrt()
                })
                .collect()
        })
        .collect();
    let space = FiniteMetricSpace::new(labels, table).expect("grid metric is valid");

    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.next_bool(cfg.edge_density) {
                edges.push((a, b));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 0));
    }
    let relation = FiniteRelation::new(n, edges).expect("nonempty by construction");

    let g_table: Vec<usize> = (0..n).map(|_| rng.next_below(n)).collect();
    let g = SelfMap::new(g_table.clone(), n).expect("in range");

    let f = if rng.next_bool(cfg.map_bias) {
        let basepoint = rng.next_below(n);
        SelfMap::constant(g.apply(PointId(basepoint)), n)
    } else {
        let f_table: Vec<usize> = (0..n)
            .map(|_| g_table[rng.next_below(n)])
            .collect();
        SelfMap::new(f_table, n).expect("in range")
    };

    let y = if rng.next_bool(0.5) {
        Subspace::from_points(g.image()).expect("g-image nonempty")
    } else {
        Subspace::full(n)
    };

    ProblemInstance::new(space, relation, f, g, Some(y), None)
        .expect("generated instances are valid")
}

/// How often each hypothesis bundle fired over a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceStats {
    pub instances: usize,
    pub theorem2_hits: usize,
    pub theorem3_hits: usize,
    pub theorem4_hits: usize,
    pub theorem5_hits: usize,
}

/// A claim whose hypotheses verified but whose conclusion failed on the
/// oracle. Must never be produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub theorem: String,
    pub instance_index: usize,
    pub instance: ProblemInstance,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceOutcome {
    pub stats: ConformanceStats,
    pub counterexample: Option<CounterexampleReport>,
}

impl ConformanceOutcome {
    pub fn conformant(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Generate `cfg.instances` instances; wherever a claim's hypotheses hold,
/// assert its conclusion on the oracle's enumeration. The first failure in
/// index order is reported; hit counts cover the whole stream either way.
pub fn run_conformance(cfg: &GeneratorConfig) -> ConformanceOutcome {
    let mut stats = ConformanceStats {
        instances: cfg.instances,
        theorem2_hits: 0,
        theorem3_hits: 0,
        theorem4_hits: 0,
        theorem5_hits: 0,
    };
    let mut counterexample = None;
    for index in 0..cfg.instances {
        let inst = gen_instance(cfg, index);
        let report = inst.full_report();
        let summary = oracle::enumerate(&inst);
        let mut fail = |theorem: &str, expected: &str, observed: String| {
            if counterexample.is_none() {
                counterexample = Some(CounterexampleReport {
                    theorem: theorem.to_string(),
                    instance_index: index,
                    instance: inst.clone(),
                    expected: expected.to_string(),
                    observed,
                });
            }
        };
        if report.theorem2_applicable {
            stats.theorem2_hits += 1;
            if summary.coincidence_points.is_empty() {
                fail(
                    "theorem2",
                    "at least one coincidence point",
                    "none".to_string(),
                );
            }
        }
        if report.theorem3_applicable {
            stats.theorem3_hits += 1;
            if summary.points_of_coincidence.len() != 1 {
                fail(
                    "theorem3",
                    "exactly one point of coincidence",
                    format!("{:?}", summary.points_of_coincidence),
                );
            }
        }
        if report.theorem4_applicable {
            stats.theorem4_hits += 1;
            if summary.coincidence_points.len() != 1 {
                fail(
                    "theorem4",
                    "exactly one coincidence point",
                    format!("{:?}", summary.coincidence_points),
                );
            }
        }
        if report.theorem5_applicable {
            stats.theorem5_hits += 1;
            if summary.common_fixed_points.len() != 1 {
                fail(
                    "theorem5",
                    "exactly one common fixed point",
                    format!("{:?}", summary.common_fixed_points),
                );
            }
        }
    }
    ConformanceOutcome {
        stats,
        counterexample,
    }
}

/// Result of one proposition suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropResult {
    pub cases: usize,
    /// Cases where the implication premise held (equals `cases` for
    /// biconditional suites).
    pub premise_hits: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl PropResult {
    fn new() -> PropResult {
        PropResult {
            cases: 0,
            premise_hits: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, premise: bool, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if premise {
            self.premise_hits += 1;
        }
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(describe());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// Verdicts of the three relation-algebra propositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionVerdicts {
    /// Closure membership equals comparativity: exhaustive over every
    /// nonempty relation on up to three points.
    pub closure_comparative_exhaustive: PropResult,
    /// The same biconditional on random relations up to `n_max` points.
    pub closure_comparative_random: PropResult,
    /// The contraction condition quantified over edges equals the one
    /// quantified over comparative pairs, on random (space, relation,
    /// maps, alpha) draws.
    pub contraction_equivalence: PropResult,
    /// Pair-closedness survives symmetric closure, on random (relation,
    /// f, g) triples with constructions that make the premise fire.
    pub closure_keeps_pair_closedness: PropResult,
}

impl PropositionVerdicts {
    pub fn all_ok(&self) -> bool {
        self.closure_comparative_exhaustive.ok()
            && self.closure_comparative_random.ok()
            && self.contraction_equivalence.ok()
            && self.closure_keeps_pair_closedness.ok()
    }
}

fn closure_matches_comparative(r: &FiniteRelation) -> bool {
    let s = r.symmetric_closure();
    let n = r.ground_size();
    (0..n).all(|a| {
        (0..n).all(|b| s.contains(PointId(a), PointId(b)) == r.comparative(PointId(a), PointId(b)))
    })
}

/// Run all proposition suites: the exhaustive scan on tiny ground sets
/// plus `random_cases` seeded draws per randomized suite.
pub fn run_proposition_suite(n_max: usize, random_cases: usize, seed: u64) -> PropositionVerdicts {
    let mut exhaustive = PropResult::new();
    for n in 1..=3usize {
        let cells = n * n;
        for mask in 1u64..(1 << cells) {
            let edges = (0..cells)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| (i / n, i % n));
            let r = FiniteRelation::new(n, edges).unwrap();
            exhaustive.record(true, closure_matches_comparative(&r), || {
                format!("n = {n}, edge mask {mask:#b}")
            });
        }
    }

    let mut rng = SplitMix64::new(mix(seed) ^ mix(0xC0FFEE));
    let mut random = PropResult::new();
    for case in 0..random_cases {
        let r = random_relation(&mut rng, n_max);
        random.record(true, closure_matches_comparative(&r), || {
            format!("case {case}: {r:?}")
        });
    }

    let mut contraction = PropResult::new();
    let gen_cfg = GeneratorConfig {
        max_points: n_max,
        ..GeneratorConfig::new(seed ^ 0xABCD_EF01, random_cases)
    };
    for case in 0..random_cases {
        let inst = gen_instance(&gen_cfg, case);
        let alpha = SplitMix64::new(mix(gen_cfg.seed) ^ mix(case as u64 + 77)).next_f64();
        let over_edges =
            crate::metric::contraction_holds(&inst.space, &inst.relation, &inst.f, &inst.g, alpha);
        let over_pairs = crate::metric::check_contraction_symmetrized(
            &inst.space,
            &inst.relation,
            &inst.f,
            &inst.g,
            alpha,
        );
        contraction.record(true, over_edges == over_pairs, || {
            format!("case {case}: alpha = {alpha}, edges {over_edges} vs pairs {over_pairs}")
        });
    }

    let mut closedness = PropResult::new();
    for case in 0..random_cases {
        let mut rng = SplitMix64::new(mix(seed ^ 0x5EED) ^ mix(case as u64 + 1));
        let n = 1 + rng.next_below(n_max);
        let r = random_relation_sized(&mut rng, n);
        let g = SelfMap::new((0..n).map(|_| rng.next_below(n)).collect(), n).unwrap();
        // Cycle constructions so the premise actually fires: an identical
        // pair is always closed, a constant f often is, a random f rarely.
        let f = match case % 3 {
            0 => g.clone(),
            1 => SelfMap::constant(PointId(rng.next_below(n)), n),
            _ => SelfMap::new((0..n).map(|_| rng.next_below(n)).collect(), n).unwrap(),
        };
        let premise = r.is_closed_under_pair(&f, &g);
        let ok = !premise || r.symmetric_closure().is_closed_under_pair(&f, &g);
        closedness.record(premise, ok, || format!("case {case}: {r:?} f={f:?} g={g:?}"));
    }

    PropositionVerdicts {
        closure_comparative_exhaustive: exhaustive,
        closure_comparative_random: random,
        contraction_equivalence: contraction,
        closure_keeps_pair_closedness: closedness,
    }
}

fn random_relation(rng: &mut SplitMix64, n_max: usize) -> FiniteRelation {
    let n = 1 + rng.next_below(n_max);
    random_relation_sized(rng, n)
}

fn random_relation_sized(rng: &mut SplitMix64, n: usize) -> FiniteRelation {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.next_bool(0.3) {
                edges.push((a, b));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 0));
    }
    FiniteRelation::new(n, edges).unwrap()
}
