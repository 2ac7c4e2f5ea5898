//! Properties of F-curve intersection numbers.

use cbdiv::criteria::critical_level;
use cbdiv::divisor::{all_fcurves, critical_partner_equal, fcurve_classes};
use cbdiv::weights::enumerate_alcove;
use cbdiv::{
    degree_on_m04, fcurve_intersection, fusion_rank, intersection_vector, BundleSpec, FCurve,
    LeveledAlgebra,
};
use proptest::prelude::*;

fn spec_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = BundleSpec> {
    (2usize..=4, 1u32..=3)
        .prop_flat_map(move |(k, l)| {
            let alg = LeveledAlgebra::new(k, l).unwrap();
            let d = enumerate_alcove(&alg).len();
            (Just(alg), prop::collection::vec(0..d, min_n..=max_n))
        })
        .prop_map(|(alg, idx)| {
            let alcove = enumerate_alcove(&alg);
            BundleSpec::new(alg, idx.into_iter().map(|i| alcove[i].clone()).collect()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn relabeling_points(s in spec_strategy(4, 6), perm_seed in any::<u64>(), curve in any::<prop::sample::Index>()) {
        let n = s.n();
        // a permutation from the seed
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut x = perm_seed;
        for i in (1..n).rev() {
            sigma.swap(i, (x % (i as u64 + 1)) as usize);
            x /= i as u64 + 1;
        }
        // weight at point sigma(i) in the new tuple is the old weight at i
        let mut ws = s.weights().to_vec();
        for i in 0..n {
            ws[sigma[i]] = s.weights()[i].clone();
        }
        let t = s.with_weights(ws).unwrap();
        let curves = all_fcurves(n);
        let f = curve.get(&curves);
        let moved: Vec<Vec<usize>> = f.blocks().iter().map(|b| b.iter().map(|&p| sigma[p - 1] + 1).collect()).collect();
        let g = FCurve::new(n, moved).unwrap();
        prop_assert_eq!(fcurve_intersection(&s, f).unwrap(), fcurve_intersection(&t, &g).unwrap());
    }

    #[test]
    fn block_order_is_irrelevant(s in spec_strategy(4, 6), curve in any::<prop::sample::Index>()) {
        let curves = all_fcurves(s.n());
        let f = curve.get(&curves);
        let mut blocks = f.blocks().to_vec();
        blocks.reverse();
        for b in &mut blocks {
            b.reverse();
        }
        let g = FCurve::new(s.n(), blocks).unwrap();
        prop_assert_eq!(&g, f);
        prop_assert_eq!(fcurve_intersection(&s, &g).unwrap(), fcurve_intersection(&s, f).unwrap());
    }

    #[test]
    fn dual_divisor_is_equal(s in spec_strategy(4, 5)) {
        prop_assert_eq!(intersection_vector(&s, false).unwrap().values, intersection_vector(&s.dual(), false).unwrap().values);
    }

    #[test]
    fn four_point_degree_is_symmetric(s in spec_strategy(4, 4)) {
        let alg = s.algebra();
        let mut ws = s.weights().to_vec();
        let d = degree_on_m04(&alg, &ws).unwrap();
        ws.swap(0, 3);
        ws.swap(1, 2);
        prop_assert_eq!(degree_on_m04(&alg, &ws).unwrap(), d);
        let f = FCurve::new(4, vec![vec![1], vec![2], vec![3], vec![4]]).unwrap();
        prop_assert_eq!(fcurve_intersection(&s, &f).unwrap(), d);
    }

    #[test]
    fn scaling_rank_one(s in spec_strategy(4, 5), factor in 2u32..=3) {
        prop_assume!(fusion_rank(&s).unwrap() == 1);
        let big = s.scaled(factor).unwrap();
        prop_assert_eq!(fusion_rank(&big).unwrap(), 1);
        let base = intersection_vector(&s, false).unwrap();
        prop_assert_eq!(intersection_vector(&big, false).unwrap().values, base.scaled(u64::from(factor)).values);
    }

    #[test]
    fn critical_partners(s in spec_strategy(4, 6)) {
        prop_assume!(critical_level(s.rank_plus_one(), s.weights()) == Some(i64::from(s.level())));
        prop_assert!(critical_partner_equal(&s).unwrap());
    }
}

#[test]
fn class_counts() {
    // S(n, 4) curves and the partitions of n into four parts
    let counts: Vec<usize> = (4..=8).map(|n| all_fcurves(n).len()).collect();
    assert_eq!(counts, [1, 10, 65, 350, 1701]);
    let classes: Vec<usize> = (4..=9).map(|n| fcurve_classes(n).len()).collect();
    assert_eq!(classes, [1, 1, 2, 3, 5, 6]);
}

#[test]
fn sl2_level_one_parity() {
    // at level 1, sl2 pairs an F-curve to 1 exactly when every leg has odd weight
    let s = BundleSpec::parse("sl2", 1, "w1^8").unwrap();
    for f in all_fcurves(8) {
        let odd = f.blocks().iter().all(|b| b.len() % 2 == 1);
        assert_eq!(fcurve_intersection(&s, &f).unwrap(), u64::from(odd), "{f}");
    }
}
