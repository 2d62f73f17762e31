use hsdepth::anova::{gen_random_anova, sign_gradients};
use hsdepth::binsearch::binary_search_depth;
use hsdepth::elastic::chinneck_cover;
use hsdepth::instance::{BranchingRule, CutMode};
use hsdepth::io::{format_point_set, parse_point_set};
use hsdepth::oracle::depth_of;
use hsdepth::{build_instance, solve_depth, DepthInstance, PointSet, SolverParams, Status};
use proptest::prelude::*;

/// Small integer point sets with a query point, duplicates allowed.
fn point_set() -> impl Strategy<Value = (PointSet, Vec<f64>)> {
    (2usize..=3, 4usize..=14).prop_flat_map(|(d, n)| {
        let pt = proptest::collection::vec(-4i32..=4, d);
        (
            proptest::collection::vec(pt.clone(), n),
            proptest::collection::vec(-1i32..=1, d),
        )
            .prop_map(move |(pts, p)| {
                let pts = pts
                    .into_iter()
                    .map(|q| q.into_iter().map(f64::from).collect())
                    .collect();
                (
                    PointSet::new(d, pts).unwrap(),
                    p.into_iter().map(f64::from).collect(),
                )
            })
    })
}

fn depth(s: &PointSet, p: &[f64], params: &SolverParams) -> usize {
    let r = solve_depth(&build_instance(s, p).unwrap(), params).unwrap();
    assert_eq!(r.status, Status::Proven);
    r.depth
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn matches_oracle((s, p) in point_set()) {
        let params = SolverParams::default();
        prop_assert_eq!(depth(&s, &p, &params), depth_of(&s, &p));
    }

    #[test]
    fn weights_and_forced_account_for_every_point((s, p) in point_set()) {
        let i = build_instance(&s, &p).unwrap();
        prop_assert_eq!(i.total_weight() + i.forced_count(), s.len());
        prop_assert!(i.weights().iter().all(|&w| w >= 1));
    }

    #[test]
    fn translation_and_scaling((s, p) in point_set(), shift in proptest::collection::vec(-5i32..=5, 3), k in 1u32..=4) {
        let d = s.dim();
        let params = SolverParams::default();
        let base = depth(&s, &p, &params);
        let t: Vec<f64> = shift[..d].iter().map(|&v| f64::from(v)).collect();
        let moved: Vec<Vec<f64>> = s.points().iter().map(|q| q.iter().zip(&t).map(|(a, b)| a + b).collect()).collect();
        let mp: Vec<f64> = p.iter().zip(&t).map(|(a, b)| a + b).collect();
        prop_assert_eq!(depth(&PointSet::new(d, moved).unwrap(), &mp, &params), base);
        let k = f64::from(k);
        let scaled: Vec<Vec<f64>> = s.points().iter().map(|q| q.iter().map(|a| a * k).collect()).collect();
        let sp: Vec<f64> = p.iter().map(|a| a * k).collect();
        prop_assert_eq!(depth(&PointSet::new(d, scaled).unwrap(), &sp, &params), base);
    }

    #[test]
    fn permutation((s, p) in point_set(), rot in 0usize..14) {
        let mut pts = s.points().to_vec();
        let len = pts.len();
        pts.rotate_left(rot % len);
        pts.reverse();
        let params = SolverParams::default();
        prop_assert_eq!(depth(&PointSet::new(s.dim(), pts).unwrap(), &p, &params), depth(&s, &p, &params));
    }

    #[test]
    fn merged_equals_unmerged((s, p) in point_set()) {
        let params = SolverParams::default();
        let merged = build_instance(&s, &p).unwrap();
        let plain = DepthInstance::from_points(s.dim(), s.points(), &p, false).unwrap();
        let a = solve_depth(&merged, &params).unwrap().depth;
        let b = solve_depth(&plain, &params).unwrap().depth;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn configuration_invariance((s, p) in point_set()) {
        let i = build_instance(&s, &p).unwrap();
        let want = solve_depth(&i, &SolverParams::default()).unwrap().depth;
        for branching in [BranchingRule::Greedy, BranchingRule::Strong { candidates: 5 }] {
            for cuts in [CutMode::Bis, CutMode::BisKnapsack, CutMode::None] {
                let params = SolverParams { branching, cuts, ..SolverParams::default() };
                prop_assert_eq!(solve_depth(&i, &params).unwrap().depth, want);
            }
        }
        let heur = chinneck_cover(&i, &SolverParams::default()).unwrap();
        prop_assert!(i.cover_weight(&heur.cover) + i.forced_count() >= want);
    }

    #[test]
    fn binary_search_pool_on_and_off((s, p) in point_set()) {
        let i = build_instance(&s, &p).unwrap();
        let want = solve_depth(&i, &SolverParams::default()).unwrap().depth;
        for reuse_pool in [true, false] {
            let params = SolverParams { reuse_pool, ..SolverParams::default() };
            prop_assert_eq!(binary_search_depth(&i, &params).unwrap().depth, want);
        }
    }

    #[test]
    fn text_round_trip((s, _p) in point_set()) {
        let back = parse_point_set(&format_point_set(&s)).unwrap();
        prop_assert_eq!(back.points(), s.points());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn anova_points_have_two_unit_coordinates(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4, r in 1usize..=3) {
        let spec = gen_random_anova(n, m, r, seed, 0.0, 1.0).unwrap();
        let s = sign_gradients(&spec);
        prop_assert_eq!(s.len(), n * m * r);
        for q in s.points() {
            if q.iter().all(|&v| v == 0.0) {
                continue;
            }
            prop_assert!(q[..n].iter().filter(|&&v| v.abs() == 1.0).count() == 1);
            prop_assert!(q[n..].iter().filter(|&&v| v.abs() == 1.0).count() == 1);
            prop_assert!(q.iter().filter(|&&v| v != 0.0).count() == 2);
        }
        let i = build_instance(&s, &vec![0.0; n + m]).unwrap();
        prop_assert!(i.weights().iter().all(|&w| w <= r));
    }
}
