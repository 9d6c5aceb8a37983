use proptest::prelude::*;

use spacecode::bounds::{lb_space, theorem_ub_space, Refinement, SpaceTerm};
use spacecode::oracle::{
    default_max_len, exact_optimum, verify_lemma2_closure, Oracle, SearchSpace,
};
use spacecode::radix::optimal_lengths;
use spacecode::{build_space_code, SourceDistribution};

fn small_dist() -> impl Strategy<Value = SourceDistribution> {
    prop_oneof![
        (prop::collection::vec(0.001f64..1.0, 1..=8), Just(2u32)),
        (prop::collection::vec(0.001f64..1.0, 1..=9), Just(3u32)),
        (prop::collection::vec(0.001f64..1.0, 1..=7), Just(4u32)),
    ]
    .prop_map(|(w, k)| SourceDistribution::normalize(&w, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn witness_invariants(d in small_dist()) {
        let res = exact_optimum(&d, None).unwrap();
        let constructed = build_space_code(&d).average_length(&d).unwrap();
        prop_assert_eq!(res.witness.average_length(&d).unwrap(), res.optimal_length);
        prop_assert!(res.optimal_length <= constructed);
        let gap = constructed - res.optimal_length;
        prop_assert!((0.0..1.0).contains(&gap));
        // Stripping spaces from any prefix-free code is injective.
        prop_assert!(res.witness.strip_spaces().is_ok());

        let (l_plus, _) = optimal_lengths(&d);
        prop_assert!(lb_space(&d, l_plus) <= res.optimal_length + 1e-9);
        prop_assert!(res.optimal_length <= theorem_ub_space(&d, Refinement::Plain, SpaceTerm::Exact) + 1e-9);
    }

    #[test]
    fn prefix_closed_search_attains_optimum(d in small_dist()) {
        let all = exact_optimum(&d, None).unwrap();
        let closed = Oracle::default().search(SearchSpace::PrefixClosed).run(&d).unwrap();
        prop_assert!((all.optimal_length - closed.optimal_length).abs() < 1e-12);
        prop_assert!(verify_lemma2_closure(&closed.witness));
    }

    #[test]
    fn constructed_codes_are_closed(n in 1usize..300, k in 2u32..=16) {
        let d = SourceDistribution::normalize(&vec![1.0; n], k).unwrap();
        prop_assert!(verify_lemma2_closure(&build_space_code(&d)));
    }
}

/// A longer length cap is not asserted to be useless; any instance where it
/// helps is printed.
#[test]
fn length_cap_sensitivity_is_reported() {
    let mut rng_state = 11u64;
    let mut next = move || {
        rng_state = rng_state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        (rng_state >> 11) as f64 / (1u64 << 53) as f64 + 0.001
    };
    let mut improved = Vec::new();
    let mut checked = 0;
    for (k, max_n) in [(2u32, 8usize), (3, 7)] {
        for n in 2..=max_n {
            for _ in 0..6 {
                let w: Vec<f64> = (0..n).map(|_| next()).collect();
                let d = SourceDistribution::normalize(&w, k).unwrap();
                let base = exact_optimum(&d, None).unwrap();
                let wider = exact_optimum(&d, Some(default_max_len(n, k) + 1)).unwrap();
                assert!(wider.optimal_length <= base.optimal_length + 1e-12);
                if wider.optimal_length < base.optimal_length - 1e-12 {
                    improved.push((
                        k,
                        d.probs().to_vec(),
                        base.optimal_length,
                        wider.optimal_length,
                    ));
                }
                checked += 1;
            }
        }
    }
    println!("length cap +1 checked on {checked} instances; improvements: {improved:?}");
}
