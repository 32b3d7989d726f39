//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use cubetile::planar::plane_tiling;
use cubetile::verify::{VerifyReport, ViolationKind};
use cubetile::{Cube, Rational, Tiling};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Quadratic pairwise checker working directly on rationals.
#[derive(Debug, PartialEq, Eq)]
pub struct BruteReport {
    pub outside: BTreeSet<usize>,
    pub overlaps: BTreeSet<(usize, usize)>,
    /// Sum of piece volumes compared with the outer volume.
    pub volume: Ordering,
}

impl BruteReport {
    pub fn valid(&self) -> bool {
        self.outside.is_empty() && self.overlaps.is_empty() && self.volume == Ordering::Equal
    }
}

/// Per-axis `(low, high)` bounds as integers over a shared denominator.
fn bounds(c: &Cube, scale: &BigInt) -> Vec<(BigInt, BigInt)> {
    let int = |v: &Rational| v.numer() * (scale / v.denom());
    c.origin()
        .iter()
        .map(|x| (int(x), int(&(x + c.side()))))
        .collect()
}

fn interiors_meet(a: &[(BigInt, BigInt)], b: &[(BigInt, BigInt)]) -> bool {
    a.iter()
        .zip(b)
        .all(|((alo, ahi), (blo, bhi))| alo < bhi && blo < ahi)
}

fn contained(inner: &[(BigInt, BigInt)], outer: &[(BigInt, BigInt)]) -> bool {
    inner
        .iter()
        .zip(outer)
        .all(|((lo, hi), (olo, ohi))| lo >= olo && hi <= ohi)
}

pub fn brute_force(t: &Tiling) -> BruteReport {
    let mut scale = BigInt::one();
    for c in t.pieces().iter().chain(std::iter::once(t.outer())) {
        for v in c.origin().iter().chain(std::iter::once(c.side())) {
            scale = scale.lcm(v.denom());
        }
    }
    let boxes: Vec<_> = t.pieces().iter().map(|c| bounds(c, &scale)).collect();
    let outer = bounds(t.outer(), &scale);
    let mut outside = BTreeSet::new();
    let mut overlaps = BTreeSet::new();
    let mut total = Rational::zero();
    for i in 0..boxes.len() {
        if !contained(&boxes[i], &outer) {
            outside.insert(i);
        }
        for j in i + 1..boxes.len() {
            if interiors_meet(&boxes[i], &boxes[j]) {
                overlaps.insert((i, j));
            }
        }
        total = total + t.pieces()[i].side().pow(t.dim() as u32);
    }
    BruteReport {
        outside,
        overlaps,
        volume: total.cmp(&t.outer().side().pow(t.dim() as u32)),
    }
}

/// Whether the sweep report lists exactly the brute-force violations.
pub fn agrees(report: &VerifyReport, brute: &BruteReport) -> bool {
    let outside: BTreeSet<usize> = report
        .violations
        .iter()
        .filter(|v| v.kind == ViolationKind::Outside)
        .map(|v| v.indices[0])
        .collect();
    let overlaps: BTreeSet<(usize, usize)> = report
        .violations
        .iter()
        .filter(|v| v.kind == ViolationKind::Overlap)
        .map(|v| (v.indices[0], v.indices[1]))
        .collect();
    let volume = if report.has(ViolationKind::VolumeDeficit) {
        Ordering::Less
    } else if report.has(ViolationKind::VolumeExcess) {
        Ordering::Greater
    } else {
        Ordering::Equal
    };
    outside == brute.outside
        && overlaps == brute.overlaps
        && volume == brute.volume
        && report.valid == brute.valid()
}

/// Random tiling: repeatedly split a random piece into `k^d` equal parts
/// until at least `target` pieces exist.
pub fn random_split_tiling(rng: &mut impl Rng, dim: usize, target: usize) -> Tiling {
    let outer = Cube::unit(dim);
    let mut pieces = vec![outer.clone()];
    while pieces.len() < target {
        let i = rng.gen_range(0..pieces.len());
        let k = rng.gen_range(2..=3u32);
        let piece = pieces.swap_remove(i);
        pieces.extend(cubetile::subdivide(&piece, dim, k));
    }
    Tiling::new(dim, outer, pieces).unwrap()
}

/// Scales by `factor` and shifts by `shift` on every axis.
pub fn transform(t: &Tiling, factor: &Rational, shift: &Rational) -> Tiling {
    let map = |c: &Cube| {
        let origin = c.origin().iter().map(|x| x * factor + shift).collect();
        Cube::new(origin, c.side() * factor).unwrap()
    };
    Tiling::new(
        t.dim(),
        map(t.outer()),
        t.pieces().iter().map(map).collect(),
    )
    .unwrap()
}

/// A valid tiling from one of several sources, with roughly at most
/// `max_pieces` pieces.
pub fn random_valid_tiling(rng: &mut impl Rng, max_pieces: usize) -> Tiling {
    let base = match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(6..=max_pieces.max(6) as u64);
            plane_tiling(n).unwrap()
        }
        1 => {
            let target = rng.gen_range(1..=max_pieces);
            random_split_tiling(rng, 2, target)
        }
        2 => {
            let target = rng.gen_range(1..=max_pieces);
            random_split_tiling(rng, 3, target)
        }
        _ => {
            let target = rng.gen_range(1..=max_pieces.min(200));
            random_split_tiling(rng, 1, target)
        }
    };
    if rng.gen_bool(0.3) {
        // Huge denominators force the arbitrary-precision path.
        let factor = Rational::new(rng.gen_range(1..1000i64), 1i64) / q("1180591620717411303424");
        let shift = Rational::new(rng.gen_range(-1000..1000i64), 7919i64);
        transform(&base, &factor, &shift)
    } else {
        base
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Translate,
    Grow,
    Delete,
    Duplicate,
}

pub const MUTATIONS: [Mutation; 4] = [
    Mutation::Translate,
    Mutation::Grow,
    Mutation::Delete,
    Mutation::Duplicate,
];

/// Applies one mutation to a random piece.
pub fn mutate(rng: &mut impl Rng, t: &Tiling, m: Mutation) -> Tiling {
    let (dim, outer, mut pieces) = t.clone().into_parts();
    let i = rng.gen_range(0..pieces.len());
    match m {
        Mutation::Translate => {
            let axis = rng.gen_range(0..dim);
            let frac = [q("1/3"), q("1/2"), q("-1/4"), q("1/100")]
                .choose(rng)
                .unwrap()
                .clone();
            let delta = pieces[i].side() * frac;
            pieces[i] = pieces[i].translated(axis, &delta);
        }
        Mutation::Grow => {
            let side = pieces[i].side() * q("5/4");
            pieces[i] = pieces[i].resized(side).unwrap();
        }
        Mutation::Delete => {
            pieces.remove(i);
        }
        Mutation::Duplicate => {
            let copy = pieces[i].clone();
            pieces.push(copy);
        }
    }
    Tiling::from_parts(dim, outer, pieces)
}

/// Whether the report names a violation appropriate for the mutation.
pub fn mutation_detected(report: &VerifyReport, m: Mutation) -> bool {
    let geometric = report.has(ViolationKind::Overlap) || report.has(ViolationKind::Outside);
    !report.valid
        && match m {
            Mutation::Delete => report.has(ViolationKind::VolumeDeficit),
            Mutation::Duplicate | Mutation::Translate | Mutation::Grow => geometric,
        }
}

/// Smallest `x2` of a representation `k = x1 a1 + x2 a2`, by enumeration.
pub fn brute_sylvester(a1: u64, a2: u64, k: u64) -> Option<(u64, u64)> {
    (0..=k / a2).find_map(|x2| {
        let rest = k - x2 * a2;
        rest.is_multiple_of(a1).then_some((rest / a1, x2))
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}
