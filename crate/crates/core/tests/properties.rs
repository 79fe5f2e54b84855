use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use normsum_core::norm_form::{
    class_representatives, coordinate_set, exhaustive_solutions, unit_power_form, Coordinate,
    NormFormProblem, SolutionView,
};
use normsum_core::quadratic::is_field_discriminant;
use normsum_core::recurrence::LinearRecurrence;
use normsum_core::search::{
    bell_number, pair_sum_search, partition_analysis, schlickewei_bound_exact, sunit_sum_search,
    Hit, SearchOptions, SearchReport,
};
use normsum_core::sunits::SPrimeSet;

fn squarefree() -> impl Strategy<Value = u64> {
    (2u64..40).prop_filter("squarefree", |d| is_field_discriminant(*d as i64))
}

fn nonzero_m() -> impl Strategy<Value = i64> {
    (-12i64..=12).prop_filter("nonzero", |m| *m != 0)
}

fn pair_keys(r: &SearchReport) -> BTreeSet<(u64, u64)> {
    r.hits
        .iter()
        .map(|h| match h {
            Hit::Pair(p) => (p.n1, p.n2),
            Hit::SUnit(_) => unreachable!(),
        })
        .collect()
}

fn assert_hits_verify(p: &NormFormProblem, r: &SearchReport) {
    for h in &r.hits {
        assert!(!h.witnesses().is_empty());
        for w in h.witnesses() {
            assert!(p.is_solution(&w.solution.0, &w.solution.1));
            let c = if w.set == 1 {
                &w.solution.0
            } else {
                &w.solution.1
            };
            assert_eq!(c, h.sum());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coordinate_sets_match_a_direct_scan(d in squarefree(), m in nonzero_m()) {
        let p = NormFormProblem::new(d, m).unwrap();
        let bound = 3000u64;
        let scan = exhaustive_solutions(&p, bound);
        let x_scan: BTreeSet<BigInt> = scan
            .iter()
            .filter(|(x, y)| *x > BigInt::from(0) && *y > BigInt::from(0))
            .map(|(x, _)| x.clone())
            .collect();
        let x_set = coordinate_set(&p, Coordinate::X, &BigInt::from(bound), SolutionView::Nontrivial).unwrap();
        prop_assert_eq!(x_set.into_iter().collect::<BTreeSet<_>>(), x_scan);
    }

    #[test]
    fn unit_powers_walk_the_orbit(d in squarefree(), m in nonzero_m(), a in -3i64..=3) {
        let p = NormFormProblem::new(d, m).unwrap();
        for orbit in class_representatives(&p).unwrap() {
            let (x, y) = orbit.element(a).unwrap();
            let fx = unit_power_form(&p, &orbit, Coordinate::X).unwrap();
            let fy = unit_power_form(&p, &orbit, Coordinate::Y).unwrap();
            prop_assert_eq!(fx.eval(a).unwrap(), x.clone());
            prop_assert_eq!(fy.eval(a).unwrap(), y.clone());
            let multi = fx.to_multi_recurrence().unwrap();
            if a >= 0 {
                let v = multi.eval(&[a as u64]).unwrap();
                prop_assert_eq!(v.as_integer(), Some(x));
            }
        }
    }

    #[test]
    fn pair_hits_are_monotone_in_n(
        a1 in -4i64..=4,
        a2 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        u0 in -3i64..=3,
        u1 in 1i64..=4,
        n in 5u64..40,
    ) {
        let rec = LinearRecurrence::from_i64(&[a1, a2], &[u0, u1]).unwrap();
        let p = NormFormProblem::new(13, 4).unwrap();
        let b = BigInt::from(5000);
        let small = pair_sum_search(&rec, &p, n, &b, &SearchOptions::default()).unwrap();
        let large = pair_sum_search(&rec, &p, 2 * n, &b, &SearchOptions::default()).unwrap();
        prop_assert!(pair_keys(&small).is_subset(&pair_keys(&large)));
        prop_assert_eq!(large.stabilization.hits_at_half, small.hit_count);
        assert_hits_verify(&p, &large);
        let sharded = pair_sum_search(&rec, &p, 2 * n, &b, &SearchOptions { shards: 3, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(&sharded.hits, &large.hits);
    }

    #[test]
    fn sunit_hits_are_monotone_in_exponent(e in 0u32..3, m in prop::sample::select(vec![-1i64, 1, 4, -4])) {
        let s: SPrimeSet = "2,3".parse().unwrap();
        let p = NormFormProblem::new(13, m).unwrap();
        let b = BigInt::from(2000);
        let opts = SearchOptions::default();
        let sums = |r: &SearchReport| -> BTreeSet<Vec<String>> {
            r.hits
                .iter()
                .map(|h| match h {
                    Hit::SUnit(u) => u.units.iter().map(|x| x.value.to_string()).collect(),
                    Hit::Pair(_) => unreachable!(),
                })
                .collect()
        };
        let lo = sunit_sum_search(&s, 2, e, false, &p, &b, &opts).unwrap();
        let hi = sunit_sum_search(&s, 2, e + 1, false, &p, &b, &opts).unwrap();
        prop_assert!(sums(&lo).is_subset(&sums(&hi)));
        assert_hits_verify(&p, &hi);
    }

    #[test]
    fn bound_is_monotone(s in 1u32..4, d in 1u32..4, deltas in prop::collection::vec(0u32..3, 1..3)) {
        let base = schlickewei_bound_exact(s, &deltas, d).unwrap();
        prop_assert!(base <= schlickewei_bound_exact(s + 1, &deltas, d).unwrap());
        prop_assert!(base <= schlickewei_bound_exact(s, &deltas, d + 1).unwrap());
        for i in 0..deltas.len() {
            let mut up = deltas.clone();
            up[i] += 1;
            prop_assert!(base <= schlickewei_bound_exact(s, &up, d).unwrap());
        }
    }

    #[test]
    fn partition_reports_follow_bell_numbers(n in 2usize..=6, e in 1u32..4) {
        let bases: Vec<_> = ["2", "3", "1+sqrt2", "1-sqrt2", "5", "3+2sqrt2"][..n]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let a = partition_analysis(&bases, e).unwrap();
        prop_assert_eq!(a.partition_count as u64, bell_number(n));
        prop_assert_eq!(a.partitions.len(), a.partition_count);
    }
}
