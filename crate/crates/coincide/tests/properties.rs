//! Property-based invariants for the relation algebra, the contraction
//! estimates, the hypothesis checks, and the solver traces.

use std::collections::BTreeSet;

use proptest::prelude::*;

use coincide::hypothesis::{ConditionId, ProblemInstance};
use coincide::metric::{
    check_contraction_symmetrized, contraction_holds, estimate_contraction, FiniteMetricSpace,
};
use coincide::oracle;
use coincide::relation::{FiniteRelation, PointId, SelfMap};
use coincide::solver::{
    joint_picard, CoincidenceSystem, FiniteSystem, SolveStatus, SolverConfig, GEOMETRIC_SLACK,
};
use coincide::validator::{gen_instance, GeneratorConfig};

fn relation_strategy(max_n: usize) -> impl Strategy<Value = FiniteRelation> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 1..=(n * n))
            .prop_map(move |edges| FiniteRelation::new(n, edges).unwrap())
    })
}

fn relation_and_maps(max_n: usize) -> impl Strategy<Value = (FiniteRelation, SelfMap, SelfMap)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::btree_set((0..n, 0..n), 1..=(n * n)),
            proptest::collection::vec(0..n, n),
            proptest::collection::vec(0..n, n),
        )
            .prop_map(move |(edges, f, g)| {
                (
                    FiniteRelation::new(n, edges).unwrap(),
                    SelfMap::new(f, n).unwrap(),
                    SelfMap::new(g, n).unwrap(),
                )
            })
    })
}

/// Arbitrary instances come from the deterministic generator, so the same
/// machinery is exercised as in conformance fuzzing.
fn instance_strategy() -> impl Strategy<Value = ProblemInstance> {
    (any::<u64>(), 0usize..512).prop_map(|(seed, index)| {
        let cfg = GeneratorConfig {
            max_points: 6,
            ..GeneratorConfig::new(seed, 1)
        };
        gen_instance(&cfg, index)
    })
}

fn subset_strategy(n: usize) -> impl Strategy<Value = BTreeSet<PointId>> {
    proptest::collection::btree_set(0..n, 1..=n)
        .prop_map(|s| s.into_iter().map(PointId).collect())
}

proptest! {
    #[test]
    fn double_inverse_is_identity(r in relation_strategy(6)) {
        prop_assert_eq!(r.inverse().inverse(), r);
    }

    #[test]
    fn symmetric_closure_contains_and_is_idempotent(r in relation_strategy(6)) {
        let s = r.symmetric_closure();
        for (a, b) in r.edges() {
            prop_assert!(s.contains(a, b));
        }
        prop_assert!(s.classify().symmetric);
        prop_assert_eq!(s.symmetric_closure(), s);
    }

    /// Closure membership coincides with comparativity on every pair.
    #[test]
    fn closure_membership_is_comparativity(r in relation_strategy(6)) {
        let s = r.symmetric_closure();
        let n = r.ground_size();
        for a in (0..n).map(PointId) {
            for b in (0..n).map(PointId) {
                prop_assert_eq!(s.contains(a, b), r.comparative(a, b));
            }
        }
    }

    /// Pair-closedness survives symmetric closure.
    #[test]
    fn closure_keeps_pair_closedness((r, f, g) in relation_and_maps(6)) {
        prop_assume!(r.is_closed_under_pair(&f, &g));
        prop_assert!(r.symmetric_closure().is_closed_under_pair(&f, &g));
    }

    /// Restricting the closure can only gain edges over closing the
    /// restriction, with equality on the full ground set.
    #[test]
    fn restriction_closure_inclusion(r in relation_strategy(6), raw in proptest::collection::btree_set(0usize..6, 1..=6)) {
        let members: BTreeSet<PointId> = raw
            .into_iter()
            .filter(|&m| m < r.ground_size())
            .map(PointId)
            .collect();
        prop_assume!(!members.is_empty());
        let closed_then_restricted = r.symmetric_closure().restrict(&members).unwrap();
        let restricted_then_closed = r.restrict(&members).unwrap().relation.symmetric_closure();
        for (a, b) in restricted_then_closed.edges() {
            prop_assert!(closed_then_restricted.relation.contains(a, b));
        }
        let full: BTreeSet<PointId> = (0..r.ground_size()).map(PointId).collect();
        let lhs = r.symmetric_closure().restrict(&full).unwrap().relation;
        let rhs = r.restrict(&full).unwrap().relation.symmetric_closure();
        prop_assert_eq!(lhs, rhs);
    }

    /// Paths returned are valid shortest paths; absence agrees with
    /// transitive-closure reachability.
    #[test]
    fn path_search_matches_reachability(r in relation_strategy(6)) {
        let n = r.ground_size();
        let mut reach = vec![vec![false; n]; n];
        for (a, b) in r.edges() {
            reach[a.index()][b.index()] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] |= reach[i][k] && reach[k][j];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                match r.find_path(PointId(i), PointId(j)) {
                    Some(p) => {
                        prop_assert!(p.valid_in(&r));
                        prop_assert_eq!(p.start(), PointId(i));
                        prop_assert_eq!(p.end(), PointId(j));
                        prop_assert!(p.len() >= 1);
                        prop_assert!(reach[i][j]);
                    }
                    None => prop_assert!(!reach[i][j]),
                }
            }
        }
    }

    /// Connectivity equals pairwise reachability for distinct members.
    #[test]
    fn connectivity_matches_pairwise_paths(r in relation_strategy(5), raw in proptest::collection::btree_set(0usize..5, 1..=5)) {
        let members: BTreeSet<PointId> = raw
            .into_iter()
            .filter(|&m| m < r.ground_size())
            .map(PointId)
            .collect();
        prop_assume!(!members.is_empty());
        let expected = members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| x == y || r.find_path(x, y).is_some())
        });
        prop_assert_eq!(r.is_connected(&members), expected);
    }

    /// A directed set is connected in the symmetric closure (the shared
    /// successor provides a two-step route).
    #[test]
    fn directed_implies_connected_in_closure(r in relation_strategy(5), raw in proptest::collection::btree_set(0usize..5, 1..=5)) {
        let members: BTreeSet<PointId> = raw
            .into_iter()
            .filter(|&m| m < r.ground_size())
            .map(PointId)
            .collect();
        prop_assume!(!members.is_empty());
        prop_assume!(r.is_directed(&members));
        prop_assert!(r.symmetric_closure().is_connected(&members));
    }

    /// The sharp ratio is blind to edge direction: the relation and its
    /// symmetric closure give the same estimate.
    #[test]
    fn alpha_hat_equal_over_closure(inst in instance_strategy()) {
        let direct = estimate_contraction(&inst.space, &inst.relation, &inst.f, &inst.g);
        let closed = estimate_contraction(
            &inst.space,
            &inst.relation.symmetric_closure(),
            &inst.f,
            &inst.g,
        );
        prop_assert_eq!(direct.alpha_hat, closed.alpha_hat);
        prop_assert_eq!(direct.is_feasible(), closed.is_feasible());
    }

    /// Relabeling the points does not change the sharp ratio.
    #[test]
    fn alpha_hat_is_permutation_equivariant(inst in instance_strategy(), salt in any::<u64>()) {
        let n = inst.len();
        // A deterministic permutation from the salt.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = salt;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let relabel = |p: PointId| PointId(perm[p.index()]);

        let labels: Vec<String> = {
            let mut v = vec![String::new(); n];
            for i in 0..n {
                v[perm[i]] = inst.space.label(PointId(i)).to_string();
            }
            v
        };
        let mut table = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i]][perm[j]] = inst.space.distance(PointId(i), PointId(j));
            }
        }
        let space = FiniteMetricSpace::new(labels, table).unwrap();
        let relation = FiniteRelation::new(
            n,
            inst.relation
                .edges()
                .map(|(a, b)| (relabel(a).index(), relabel(b).index())),
        )
        .unwrap();
        let mut f_table = vec![0usize; n];
        let mut g_table = vec![0usize; n];
        for i in 0..n {
            f_table[perm[i]] = relabel(inst.f.apply(PointId(i))).index();
            g_table[perm[i]] = relabel(inst.g.apply(PointId(i))).index();
        }
        let f = SelfMap::new(f_table, n).unwrap();
        let g = SelfMap::new(g_table, n).unwrap();

        let original = estimate_contraction(&inst.space, &inst.relation, &inst.f, &inst.g);
        let permuted = estimate_contraction(&space, &relation, &f, &g);
        prop_assert_eq!(original.alpha_hat, permuted.alpha_hat);
        prop_assert_eq!(original.is_feasible(), permuted.is_feasible());
    }

    /// Scaling every distance by c > 0 leaves the sharp ratio unchanged:
    /// exactly so for power-of-two scales (lossless in floating point),
    /// and up to rounding of the scaled entries otherwise.
    #[test]
    fn alpha_hat_scale_invariant(inst in instance_strategy(), exp in -8i32..9, c in 1u32..1000) {
        let n = inst.len();
        let scale = |c: f64| {
            let mut table = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    table[i][j] = inst.space.distance(PointId(i), PointId(j)) * c;
                }
            }
            FiniteMetricSpace::new(inst.space.labels().to_vec(), table).unwrap()
        };
        let original = estimate_contraction(&inst.space, &inst.relation, &inst.f, &inst.g);

        let pow2 = scale(2.0f64.powi(exp));
        let exact = estimate_contraction(&pow2, &inst.relation, &inst.f, &inst.g);
        prop_assert_eq!(original.alpha_hat, exact.alpha_hat);
        prop_assert_eq!(original.is_feasible(), exact.is_feasible());

        let general = scale(c as f64 / 16.0);
        let rounded = estimate_contraction(&general, &inst.relation, &inst.f, &inst.g);
        let diff = (original.alpha_hat - rounded.alpha_hat).abs();
        prop_assert!(diff <= 1e-12 * original.alpha_hat.max(1.0));
    }

    /// The contraction condition quantified over edges and over
    /// comparative pairs agree for every coefficient.
    #[test]
    fn contraction_quantifiers_agree(inst in instance_strategy(), alpha in 0.0f64..1.0) {
        prop_assert_eq!(
            contraction_holds(&inst.space, &inst.relation, &inst.f, &inst.g, alpha),
            check_contraction_symmetrized(&inst.space, &inst.relation, &inst.f, &inst.g, alpha)
        );
    }

    /// The provable prefix of the commutation chain never breaks:
    /// commuting => weakly commuting => compatible => r-compatible. The
    /// final classical link is refuted elsewhere (see the acceptance
    /// suite) and deliberately not asserted here.
    #[test]
    fn commutation_chain_prefix_holds(inst in instance_strategy()) {
        let ladder = inst.check_commutation_ladder();
        prop_assert!(!ladder.commuting || ladder.weakly_commuting);
        prop_assert!(!ladder.weakly_commuting || ladder.compatible);
        prop_assert!(!ladder.compatible || ladder.r_compatible);
        // The finite reduction makes these two predicates identical.
        prop_assert_eq!(ladder.compatible, ladder.weakly_compatible);
    }

    /// Weak compatibility turns every point of coincidence into a
    /// coincidence point.
    #[test]
    fn weak_compatibility_closes_points_of_coincidence(inst in instance_strategy()) {
        let check = oracle::verify_weak_compatibility_lemma(&inst);
        prop_assert!(check.holds, "witness: {:?}", check.witness);
    }

    /// Completeness or directedness of the image implies connectivity
    /// (the two stronger uniqueness conditions imply the weak one),
    /// granted the range inclusion that their arguments use.
    #[test]
    fn stronger_uniqueness_conditions_imply_u1(inst in instance_strategy()) {
        let f_image = inst.f.image();
        let g_image = inst.g.image();
        prop_assume!(f_image.is_subset(&g_image));
        let report = inst.full_report();
        let u1 = report.condition(ConditionId::ImageConnected).verdict.satisfied();
        let u1p = report.condition(ConditionId::ImageComplete).verdict.satisfied();
        let u1pp = report.condition(ConditionId::ImageDirected).verdict.satisfied();
        prop_assert!(!u1p || u1, "complete image but not connected");
        prop_assert!(!u1pp || u1, "directed image but not connected");
    }

    /// Wherever the existence bundle applies, the oracle finds a
    /// coincidence point, and the iteration reaches one from every
    /// admissible start without ever needing a missing preimage.
    #[test]
    fn applicable_instances_solve_from_every_start(inst in instance_strategy()) {
        let report = inst.full_report();
        prop_assume!(report.theorem2_applicable);
        let summary = oracle::enumerate(&inst);
        prop_assert!(!summary.coincidence_points.is_empty());
        let sys = FiniteSystem::new(&inst);
        for start in inst.find_starting_points() {
            let (outcome, trace) = joint_picard(&sys, start, &SolverConfig::default());
            prop_assert_eq!(outcome.status, SolveStatus::Converged);
            prop_assert!(summary.coincidence_points.contains(&outcome.point));
            // Joint-iterate law and preservation on every recorded step.
            for n in 0..trace.len() - 1 {
                prop_assert_eq!(trace.g_images[n + 1], trace.f_images[n]);
                prop_assert!(trace.preserving_ok[n]);
            }
            // Geometric envelope on the gaps.
            if let Some(alpha) = sys.contraction_alpha() {
                if !trace.step_gaps.is_empty() {
                    let first = trace.step_gaps[0];
                    for (n, &gap) in trace.step_gaps.iter().enumerate() {
                        let envelope = alpha.powi(n as i32) * first;
                        prop_assert!(gap <= envelope * (1.0 + GEOMETRIC_SLACK));
                    }
                }
            }
        }
    }

    /// Classification flags agree with a direct quantifier evaluation.
    #[test]
    fn classify_matches_quantifiers(r in relation_strategy(6)) {
        let n = r.ground_size();
        let c = r.classify();
        let all = || (0..n).map(PointId);
        prop_assert_eq!(c.reflexive, all().all(|x| r.contains(x, x)));
        prop_assert_eq!(c.irreflexive, all().all(|x| !r.contains(x, x)));
        prop_assert_eq!(
            c.symmetric,
            all().all(|x| all().all(|y| !r.contains(x, y) || r.contains(y, x)))
        );
        prop_assert_eq!(
            c.antisymmetric,
            all().all(|x| all().all(|y| !(r.contains(x, y) && r.contains(y, x)) || x == y))
        );
        prop_assert_eq!(
            c.transitive,
            all().all(|x| all().all(|y| all().all(|z| {
                !(r.contains(x, y) && r.contains(y, z)) || r.contains(x, z)
            })))
        );
        prop_assert_eq!(c.complete, all().all(|x| all().all(|y| r.comparative(x, y))));
        prop_assert_eq!(
            c.weakly_complete,
            all().all(|x| all().all(|y| x == y || r.comparative(x, y)))
        );
    }

    /// Restriction always lands inside the member set and keeps exactly
    /// the edges with both ends inside.
    #[test]
    fn restriction_is_exact(r in relation_strategy(6), raw in proptest::collection::btree_set(0usize..6, 1..=6)) {
        let members: BTreeSet<PointId> = raw
            .into_iter()
            .filter(|&m| m < r.ground_size())
            .map(PointId)
            .collect();
        prop_assume!(!members.is_empty());
        let res = r.restrict(&members).unwrap();
        prop_assert_eq!(res.relation.ground_size(), members.len());
        let kept: usize = r
            .edges()
            .filter(|(a, b)| members.contains(a) && members.contains(b))
            .count();
        prop_assert_eq!(res.relation.edge_count(), kept);
        for (a, b) in res.relation.edges() {
            let (pa, pb) = (res.local_to_parent(a), res.local_to_parent(b));
            prop_assert!(r.contains(pa, pb));
        }
    }
}

/// Once the existence bundle's range condition holds, no admissible start
/// can hit a missing preimage (every f-image has a g-preimage).
#[test]
fn range_inclusion_prevents_missing_preimages() {
    let cfg = GeneratorConfig::new(20260810, 400);
    for index in 0..cfg.instances {
        let inst = gen_instance(&cfg, index);
        if !inst
            .check_range_inclusion()
            .verdict
            .satisfied()
        {
            continue;
        }
        let sys = FiniteSystem::new(&inst);
        for start in inst.find_starting_points() {
            let (outcome, _) = joint_picard(&sys, start, &SolverConfig::default());
            assert_ne!(outcome.status, SolveStatus::PreimageMissing, "instance {index}");
        }
    }
}

/// Subspace strategies must produce nonempty in-range sets (sanity check
/// for the strategy helpers used above).
#[test]
fn subset_strategy_is_sound() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    for _ in 0..32 {
        let tree = subset_strategy(4).new_tree(&mut runner).unwrap();
        let set = tree.current();
        assert!(!set.is_empty());
        assert!(set.iter().all(|p| p.index() < 4));
    }
}
