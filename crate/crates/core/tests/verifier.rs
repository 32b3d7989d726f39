mod common;

use common::{
    agrees, brute_force, mutate, mutation_detected, q, random_split_tiling, random_valid_tiling,
    rng, MUTATIONS,
};
use cubetile::highdim::{materialize, theorem2_params};
use cubetile::planar::{lemma0_tiling, theorem1_tiling};
use cubetile::threesize::{theorem5_params, theorem5_tiling};
use cubetile::verify::{verify_tiling, ViolationKind};
use cubetile::{Cube, Rational, Tiling};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn sweep_matches_brute_force_on_valid_tilings() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let t = random_valid_tiling(&mut rng, 2000);
        let report = verify_tiling(&t);
        let brute = brute_force(&t);
        assert!(brute.valid());
        assert!(agrees(&report, &brute), "{:?}", report.violations);
    }
}

#[test]
fn sweep_matches_brute_force_on_mutated_tilings() {
    let mut rng = rng(32);
    for round in 0..200 {
        let t = random_valid_tiling(&mut rng, 800);
        let m = MUTATIONS[round % 4];
        let bad = mutate(&mut rng, &t, m);
        let report = verify_tiling(&bad);
        assert!(
            agrees(&report, &brute_force(&bad)),
            "{m:?}: {:?}",
            report.violations
        );
        assert!(
            mutation_detected(&report, m),
            "{m:?}: {:?}",
            report.violations
        );
    }
}

#[test]
fn many_overlaps_are_all_listed() {
    // Two 4x4 grids offset by half a cell: every piece meets several others.
    let grid = Tiling::uniform_grid(2, 4).unwrap();
    let (dim, outer, mut pieces) = grid.clone().into_parts();
    for c in grid.pieces() {
        pieces.push(c.translated(0, &q("1/2")).translated(1, &q("1/2")));
    }
    let t = Tiling::from_parts(dim, outer, pieces);
    let report = verify_tiling(&t);
    assert!(agrees(&report, &brute_force(&t)));
    assert!(report.has(ViolationKind::Outside));
    assert!(report.has(ViolationKind::VolumeExcess));
}

#[test]
fn constructions_verify() {
    for n in [4u64, 6, 7, 8, 13, 35] {
        assert!(verify_tiling(&lemma0_tiling(n).unwrap()).valid);
    }
    assert!(verify_tiling(&theorem1_tiling(1000).unwrap()).valid);
    let plan = theorem2_params(3, &BigUint::from(10_604_499_374u64)).unwrap();
    assert!(materialize(&plan, 1_000_000).is_err());
    let plan = theorem5_params(3, &BigUint::from(262_200u32)).unwrap();
    let t = theorem5_tiling(&plan, 1_000_000).unwrap();
    let report = verify_tiling(&t);
    assert!(report.valid);
    assert_eq!(report.distinct_sides, vec![q("1/7"), q("1/2"), q("1")]);
}

#[test]
fn shared_faces_are_not_overlaps() {
    let outer = Cube::unit(2);
    let pieces = vec![
        Cube::new(vec![q("0"), q("0")], q("1/2")).unwrap(),
        Cube::new(vec![q("1/2"), q("0")], q("1/2")).unwrap(),
        Cube::new(vec![q("0"), q("1/2")], q("1/2")).unwrap(),
        Cube::new(vec![q("1/2"), q("1/2")], q("1/2")).unwrap(),
    ];
    assert!(verify_tiling(&Tiling::new(2, outer, pieces).unwrap()).valid);
}

#[test]
fn gap_hidden_by_overlap_is_still_invalid() {
    // Volume matches, but one piece sits on another and leaves a hole.
    let (dim, outer, mut pieces) = Tiling::uniform_grid(2, 2).unwrap().into_parts();
    pieces[3] = pieces[0].clone();
    let report = verify_tiling(&Tiling::from_parts(dim, outer, pieces));
    assert!(!report.valid);
    assert!(report.has(ViolationKind::Overlap));
    assert!(!report.has(ViolationKind::VolumeDeficit));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_splits_agree_with_brute_force(seed in any::<u64>(), dim in 1usize..=4, target in 1usize..300) {
        let mut rng = rng(seed);
        let t = random_split_tiling(&mut rng, dim, target);
        let report = verify_tiling(&t);
        prop_assert!(report.valid);
        prop_assert!(agrees(&report, &brute_force(&t)));
    }

    #[test]
    fn random_cube_soups_agree_with_brute_force(
        cubes in prop::collection::vec((0i64..12, 0i64..12, 1i64..6), 0..60),
    ) {
        let pieces: Vec<Cube> = cubes
            .iter()
            .map(|&(x, y, s)| Cube::new(vec![Rational::new(x, 8), Rational::new(y, 8)], Rational::new(s, 8)).unwrap())
            .collect();
        let t = Tiling::from_parts(2, Cube::unit(2), pieces);
        prop_assert!(agrees(&verify_tiling(&t), &brute_force(&t)));
    }
}
