mod common;

use common::{brute_force, q, rng};
use cubetile::highdim::{
    family_coefficients, materialize, plan_ratio, plan_sizes, theorem2_params, theorem2_threshold,
    CubePlan,
};
use cubetile::planar::{
    claim1_decompose, claim2_decompose, lemma0_tiling, theorem1_params, Claim1Case,
};
use cubetile::threesize::{theorem5_params, theorem5_tiling};
use cubetile::verify::{verify_cube_plan, verify_tiling};
use cubetile::Rational;
use num_bigint::BigUint;
use num_traits::Pow;
use proptest::prelude::*;
use rand::Rng;

/// Rational upper bound for Euler's number.
fn e_upper() -> Rational {
    q("87/32")
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn is_square(n: u64) -> bool {
    let s = (n as f64).sqrt() as u64;
    (s.saturating_sub(1)..=s + 1).any(|r| r * r == n)
}

#[test]
fn planar_plans_count_and_bound_the_ratio() {
    for n in 36..20_000u64 {
        if is_square(n) {
            continue;
        }
        let plan = theorem1_params(n).unwrap();
        let a = (n as f64).sqrt() as u64;
        let a = if (a + 1) * (a + 1) <= n {
            a + 1
        } else if a * a > n {
            a - 1
        } else {
            a
        };
        assert_eq!(plan.a, a);
        assert!(a < plan.b && plan.b <= 2 * a, "n={n}");
        let gap_sign = match plan.claim1_case {
            Claim1Case::AboveLower => n - a * a,
            Claim1Case::BelowUpper => (a + 1) * (a + 1) - n,
        };
        assert_eq!(gap_sign, plan.b);
        let squares = plan.p * plan.p + plan.blocks * plan.r * plan.r;
        assert_eq!(squares - plan.blocks * plan.q * plan.q, n);
        let bound = Rational::new(plan.m + 1, plan.m - 1);
        assert!(plan.ratio() <= bound, "n={n}");
        if plan.blocks == 2 {
            assert!(plan.p >= 2 * plan.q, "blocks must fit side by side, n={n}");
        } else {
            assert!(plan.p > plan.q);
        }
    }
}

#[test]
fn claim_decompositions_recompose() {
    for n in 36..5000u64 {
        if is_square(n) {
            continue;
        }
        let (a, b, case) = claim1_decompose(n).unwrap();
        let back = match case {
            Claim1Case::AboveLower => a * a + b,
            Claim1Case::BelowUpper => (a + 1) * (a + 1) - b,
        };
        assert_eq!(back, n);
    }
    for b in 7..5000u64 {
        let (m, form) = claim2_decompose(b).unwrap();
        let back = match form.to_string().as_str() {
            "i" => 2 * m + 1,
            "ii" => 4 * m,
            _ => 4 * m + 2,
        };
        assert_eq!(back, b);
        assert!(m >= 2, "b={b}");
    }
}

#[test]
fn small_planar_tilings_agree_with_brute_force() {
    for n in [4u64, 6, 7, 8, 9, 10, 11, 20, 33] {
        let t = lemma0_tiling(n).unwrap();
        let brute = brute_force(&t);
        assert!(brute.valid(), "n={n}");
        assert!(verify_tiling(&t).valid);
        assert_eq!(t.len() as u64, n);
    }
    for n in [37u64, 40, 54, 55, 60, 99] {
        let t = cubetile::planar::theorem1_tiling(n).unwrap();
        assert!(brute_force(&t).valid(), "n={n}");
    }
}

/// Counts and sides recomputed from the plan fields alone.
fn independent_sizes(plan: &CubePlan) -> Vec<(Rational, BigUint)> {
    let d = plan.d;
    let cells: BigUint = Pow::pow(&plan.a, 2 * d);
    let used = plan.x.iter().sum::<BigUint>() + &plan.y1;
    let a2 = &plan.a * &plan.a;
    let side = |parts: &BigUint| Rational::new(1, num_bigint::BigInt::from(&a2 * parts));
    let mut out = vec![];
    let mut add = |parts: BigUint, cells: BigUint| {
        if cells > big(0) {
            out.push((side(&parts), cells * Pow::pow(&parts, d)));
        }
    };
    add(&plan.m - 1u32, plan.y1.clone());
    add(plan.m.clone(), cells - used);
    for (i, xi) in plan.x.iter().enumerate() {
        add(&plan.m + (i as u64 + 1), xi.clone());
    }
    out
}

fn check_coefficient_bounds(plan: &CubePlan) {
    let d = plan.d;
    let e = e_upper();
    let (a_coeffs, b1) = family_coefficients(d, &plan.m);
    let ad = a_coeffs.last().unwrap();
    let md = Rational::from(Pow::pow(&plan.m, d));
    let ad_pow = Rational::from(Pow::pow(&plan.a, d));
    assert!(Rational::from(ad.clone()) < (&e - Rational::one()) * &md);
    assert!(Rational::from(b1) < (&e - Rational::one()) * &ad_pow);
    assert!(md < &e * &ad_pow);
}

#[test]
fn cube_plans_respect_coefficient_bounds() {
    let mut rng = rng(21);
    for d in 2..=4u32 {
        let threshold = theorem2_threshold(d, &q("1/2")).unwrap();
        for _ in 0..100 {
            let n = &threshold * big(rng.gen_range(1..1_000_000)) + big(rng.gen());
            let plan = theorem2_params(d, &n).unwrap();
            check_coefficient_bounds(&plan);
            let report = verify_cube_plan(&plan);
            assert!(report.valid, "{:?}", report.violations);
            let mut ours = independent_sizes(&plan);
            ours.sort();
            let mut theirs = plan_sizes(&plan);
            theirs.sort();
            assert_eq!(ours, theirs);
            assert!(plan_ratio(&plan) <= q("3/2"));
        }
    }
}

#[test]
fn threshold_matches_the_ratio_guarantee() {
    for d in 2..=5u32 {
        for eps in ["1/2", "1/5", "1/10", "3/2"] {
            let eps = q(eps);
            let t = theorem2_threshold(d, &eps).unwrap();
            for n in [t.clone(), &t + 1u32, &t * 3u32 + 17u32] {
                let plan = theorem2_params(d, &n).unwrap();
                assert!(plan_ratio(&plan) <= Rational::one() + &eps, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn materialized_plan_uses_three_sides() {
    let plan = theorem2_params(2, &big(117_650)).unwrap();
    let t = materialize(&plan, 200_000).unwrap();
    assert_eq!(t.len(), 117_650);
    let report = verify_tiling(&t);
    assert!(report.valid);
    let mut sides = report.distinct_sides.clone();
    sides.sort();
    assert_eq!(sides, vec![q("1/392"), q("1/343"), q("1/294")]);
}

#[test]
fn threesize_plans_fit_their_cells() {
    for n in (262_145u64..262_645).step_by(7) {
        let plan = theorem5_params(3, &big(n)).unwrap();
        let cells = big(63 * 63 * 63);
        assert_eq!(plan.a, big(64));
        assert!(&plan.x1 + &plan.x2 <= cells);
        assert_eq!(&plan.x1 * 7u32 + &plan.x2 * 342u32, plan.k);
        assert_eq!(&cells + &plan.k, big(n));
    }
}

#[test]
fn threesize_tiling_for_four_dimensions_refuses_large_counts() {
    let n = theorem_threshold_plus_one(4);
    let plan = theorem5_params(4, &n).unwrap();
    assert!(theorem5_tiling(&plan, 1_000_000).is_err());
    assert!(cubetile::verify::verify_threesize_plan(&plan).valid);
}

fn theorem_threshold_plus_one(d: u32) -> BigUint {
    cubetile::threesize::theorem5_threshold(d) + 1u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cube_plans_are_valid_certificates(d in 2u32..=6, mult in 1u64..u64::MAX, extra in any::<u64>()) {
        let threshold = theorem2_threshold(d, &q("1/2")).unwrap();
        let n = &threshold * big(mult) + big(extra);
        let plan = theorem2_params(d, &n).unwrap();
        let report = verify_cube_plan(&plan);
        prop_assert!(report.valid, "{:?}", report.violations);
        prop_assert!(report.distinct_sides.len() <= d as usize + 2);
    }
}
