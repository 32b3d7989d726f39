//! Exact certification of tilings and tiling certificates.
//!
//! A tiling is accepted when every piece lies inside the outer cube, no two
//! pieces share interior points, and the piece volumes add up to the outer
//! volume. With the first two established, equal volume rules out gaps.
//!
//! Coordinates are rescaled to a common integer lattice first. Overlaps are
//! found by sweeping along the first axis; the active set is keyed by the
//! second coordinate so only pieces within one maximal side length of the
//! current piece are compared.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;
use std::ops::Bound;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Pow, Zero};

use crate::geometry::Tiling;
use crate::highdim::{family_coefficients, size_classes, tiny_side, CubePlan};
use crate::rational::Rational;
use crate::scaled::{Coord, ScaledCubes, ScaledFrame};
use crate::threesize::{fine_increment, half_increment, ThreeSizePlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// A cube's dimension differs from the tiling's.
    DimensionMismatch,
    /// A piece reaches outside the outer cube.
    Outside,
    /// Two pieces share interior points.
    Overlap,
    /// Pieces cover less volume than the outer cube.
    VolumeDeficit,
    /// Pieces cover more volume than the outer cube.
    VolumeExcess,
    /// A certificate's defining equation fails.
    Identity,
    /// A certificate asks for more cells than exist.
    Capacity,
    /// A certificate's bracketing interval or offset is wrong.
    Interval,
    /// Certificate piece counts do not sum to `n`.
    PieceCount,
    /// More distinct side lengths than the construction allows.
    TooManySizes,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::DimensionMismatch => "dimension-mismatch",
            ViolationKind::Outside => "outside",
            ViolationKind::Overlap => "overlap",
            ViolationKind::VolumeDeficit => "volume-deficit",
            ViolationKind::VolumeExcess => "volume-excess",
            ViolationKind::Identity => "identity",
            ViolationKind::Capacity => "capacity",
            ViolationKind::Interval => "interval",
            ViolationKind::PieceCount => "piece-count",
            ViolationKind::TooManySizes => "too-many-sizes",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending piece indices in canonical order; empty for global checks.
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, indices: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            indices,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.indices.is_empty() {
            let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
            write!(f, " [{}]", idx.join(", "))?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub piece_count: BigUint,
    /// Ascending.
    pub distinct_sides: Vec<Rational>,
    /// Largest over smallest side; `None` without pieces.
    pub ratio: Option<Rational>,
    /// Sorted by kind, then indices.
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn assemble(
        piece_count: BigUint,
        mut sides: Vec<Rational>,
        mut violations: Vec<Violation>,
    ) -> Self {
        sides.sort();
        sides.dedup();
        violations.sort();
        let ratio = match (sides.first(), sides.last()) {
            (Some(min), Some(max)) => Some(max / min),
            _ => None,
        };
        VerifyReport {
            valid: violations.is_empty(),
            piece_count,
            distinct_sides: sides,
            ratio,
            violations,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// One-line summary such as `55 pieces, sides {1, 5/4}, ratio 5/4`.
impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sides: Vec<String> = self.distinct_sides.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "{} pieces, sides {{{}}}",
            self.piece_count,
            sides.join(", ")
        )?;
        if let Some(r) = &self.ratio {
            write!(f, ", ratio {r}")?;
        }
        Ok(())
    }
}

/// Exact geometric verification of a tiling.
pub fn verify_tiling(t: &Tiling) -> VerifyReport {
    let dim = t.dim();
    let count = BigUint::from(t.len());
    let sides: Vec<Rational> = t.pieces().iter().map(|p| p.side().clone()).collect();

    let mut violations = Vec::new();
    if dim == 0 {
        violations.push(Violation::new(
            ViolationKind::DimensionMismatch,
            vec![],
            "dimension 0",
        ));
    }
    if t.outer().dim() != dim {
        violations.push(Violation::new(
            ViolationKind::DimensionMismatch,
            vec![],
            format!(
                "outer cube has dimension {}, expected {dim}",
                t.outer().dim()
            ),
        ));
    }
    for (i, p) in t.pieces().iter().enumerate() {
        if p.dim() != dim {
            violations.push(Violation::new(
                ViolationKind::DimensionMismatch,
                vec![i],
                format!("dimension {}, expected {dim}", p.dim()),
            ));
        }
    }
    if !violations.is_empty() {
        return VerifyReport::assemble(count, sides, violations);
    }

    let frame = ScaledFrame::build(dim, t.outer(), t.pieces());
    let violations = match frame {
        ScaledFrame::Small(s) => check_scaled(&s),
        ScaledFrame::Big(s) => check_scaled(&s),
    };
    VerifyReport::assemble(count, sides, violations)
}

fn check_scaled<T: Coord>(s: &ScaledCubes<T>) -> Vec<Violation> {
    let mut violations = Vec::new();
    let dim = s.dim;
    let outer_hi: Vec<T> = s
        .outer_origin
        .iter()
        .map(|o| o.plus(&s.outer_side))
        .collect();

    for i in 0..s.len() {
        let side = s.side(i);
        let outside = s
            .origin(i)
            .iter()
            .enumerate()
            .any(|(axis, o)| *o < s.outer_origin[axis] || o.plus(side) > outer_hi[axis]);
        if outside {
            violations.push(Violation::new(ViolationKind::Outside, vec![i], ""));
        }
    }

    for (i, j) in overlapping_pairs(s) {
        violations.push(Violation::new(ViolationKind::Overlap, vec![i, j], ""));
    }

    // Volume: group equal sides, then sum count * side^d.
    let mut by_side: BTreeMap<&T, u64> = BTreeMap::new();
    for side in s.sides() {
        *by_side.entry(side).or_default() += 1;
    }
    let covered: BigInt = by_side
        .iter()
        .map(|(side, &n)| Pow::pow(side.to_bigint(), dim as u32) * BigInt::from(n))
        .sum();
    let expected = Pow::pow(s.outer_side.to_bigint(), dim as u32);
    if covered != expected {
        let scale_d = Pow::pow(&s.scale, dim as u32);
        let detail = format!(
            "pieces cover {}, outer volume {}",
            Rational::new(covered.clone(), scale_d.clone()),
            Rational::new(expected.clone(), scale_d)
        );
        let kind = if covered < expected {
            ViolationKind::VolumeDeficit
        } else {
            ViolationKind::VolumeExcess
        };
        violations.push(Violation::new(kind, vec![], detail));
    }
    violations
}

/// All index pairs `(i, j)`, `i < j`, whose interiors intersect.
fn overlapping_pairs<T: Coord>(s: &ScaledCubes<T>) -> Vec<(usize, usize)> {
    let n = s.len();
    let dim = s.dim;
    let Some(max_side) = s.sides().iter().max().cloned() else {
        return Vec::new();
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s.origin(i)[0].cmp(&s.origin(j)[0]).then(i.cmp(&j)));

    let key = |i: usize| -> T { s.origin(i)[if dim >= 2 { 1 } else { 0 }].clone() };
    let mut ends: BinaryHeap<Reverse<(T, usize)>> = BinaryHeap::new();
    let mut active: BTreeSet<(T, usize)> = BTreeSet::new();
    let mut pairs = Vec::new();

    for &i in &order {
        let start = &s.origin(i)[0];
        while let Some(Reverse((end, j))) = ends.peek() {
            if end > start {
                break;
            }
            let j = *j;
            ends.pop();
            active.remove(&(key(j), j));
        }
        let oi = s.origin(i);
        let si = s.side(i);
        let overlaps = |j: usize| {
            let oj = s.origin(j);
            let sj = s.side(j);
            (0..dim).all(|axis| oj[axis] < oi[axis].plus(si) && oi[axis] < oj[axis].plus(sj))
        };
        if dim >= 2 {
            // Candidates need key > y_i - max_side and key < y_i + side_i.
            let lo = Bound::Excluded((oi[1].minus(&max_side), usize::MAX));
            let hi = Bound::Excluded((oi[1].plus(si), 0));
            for (_, j) in active.range((lo, hi)) {
                if overlaps(*j) {
                    pairs.push(((*j).min(i), (*j).max(i)));
                }
            }
        } else {
            for (_, j) in &active {
                if overlaps(*j) {
                    pairs.push(((*j).min(i), (*j).max(i)));
                }
            }
        }
        ends.push(Reverse((start.plus(si), i)));
        active.insert((key(i), i));
    }
    pairs.sort();
    pairs
}

fn to_int(v: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

/// Arithmetic verification of a nearly-equal cube certificate.
pub fn verify_cube_plan(plan: &CubePlan) -> VerifyReport {
    use ViolationKind::*;
    let mut v = Vec::new();
    let d = plan.d;
    let ud = d as usize;

    if d < 2 {
        v.push(Violation::new(
            DimensionMismatch,
            vec![],
            "dimension below 2",
        ));
    }
    if plan.x.len() != ud {
        v.push(Violation::new(
            Identity,
            vec![],
            format!("x has {} entries, expected {d}", plan.x.len()),
        ));
        return VerifyReport::assemble(BigUint::zero(), vec![], v);
    }
    if plan.c > 3 || plan.m != &plan.a + plan.c {
        v.push(Violation::new(
            Interval,
            vec![],
            "m must equal a + c with 0 <= c <= 3",
        ));
    }
    let cells = Pow::pow(&plan.a, 2 * d);
    let a_c = &plan.a + plan.c;
    let lo = &cells * Pow::pow(&a_c, d);
    let hi = &cells * Pow::pow(&(&a_c + 1u32), d);
    if !(lo <= plan.n && plan.n < hi) {
        v.push(Violation::new(
            Interval,
            vec![],
            "n is not in [a^2d (a+c)^d, a^2d (a+c+1)^d)",
        ));
    }
    let base = &cells * Pow::pow(&plan.m, d);
    if to_int(&plan.k) != to_int(&plan.n) - to_int(&base) {
        v.push(Violation::new(Identity, vec![], "k != n - a^2d m^d"));
    }
    let (coeffs, b1) = family_coefficients(d, &plan.m);
    let lhs: BigInt = plan
        .x
        .iter()
        .zip(&coeffs)
        .map(|(x, a)| to_int(&(x * a)))
        .sum::<BigInt>()
        - to_int(&(&plan.y1 * &b1));
    if lhs != to_int(&plan.k) {
        v.push(Violation::new(
            Identity,
            vec![],
            format!("sum x_i a_i - y1 b1 = {lhs}, expected k = {}", plan.k),
        ));
    }
    let used: BigUint = plan.x.iter().sum::<BigUint>() + &plan.y1;
    if used > cells {
        v.push(Violation::new(
            Capacity,
            vec![],
            format!("x_1 + ... + x_d + y1 = {used} exceeds a^2d = {cells}"),
        ));
    }

    let mut sides = Vec::new();
    let mut total = BigInt::zero();
    let mut volume = Rational::zero();
    let mut bad_side = false;
    for class in size_classes(plan) {
        total += &class.count;
        if class.count.is_zero() {
            continue;
        }
        match tiny_side(&plan.a, &class.parts) {
            Some(side) => {
                volume = volume + side.pow(d) * Rational::from(class.count.clone());
                sides.push(side);
            }
            None => bad_side = true,
        }
    }
    if bad_side {
        v.push(Violation::new(
            PieceCount,
            vec![],
            "a size class has no positive side",
        ));
    }
    if total != to_int(&plan.n) {
        v.push(Violation::new(
            PieceCount,
            vec![],
            format!("piece counts sum to {total}, expected {}", plan.n),
        ));
    }
    if volume != Rational::one() {
        let kind = if volume < Rational::one() {
            VolumeDeficit
        } else {
            VolumeExcess
        };
        v.push(Violation::new(
            kind,
            vec![],
            format!("total volume {volume}"),
        ));
    }
    if sides.len() > ud + 2 {
        v.push(Violation::new(
            TooManySizes,
            vec![],
            format!("{} sizes", sides.len()),
        ));
    }
    let count = total.to_biguint().unwrap_or_default();
    VerifyReport::assemble(count, sides, v)
}

/// Arithmetic verification of a three-size certificate.
pub fn verify_threesize_plan(plan: &ThreeSizePlan) -> VerifyReport {
    use ViolationKind::*;
    let mut v = Vec::new();
    let d = plan.d;
    if d == 0 {
        v.push(Violation::new(DimensionMismatch, vec![], "dimension 0"));
        return VerifyReport::assemble(BigUint::zero(), vec![], v);
    }
    let half = half_increment(d);
    let fine = fine_increment(d);
    let cells = plan.cells();

    if plan.k != &plan.x1 * &half + &plan.x2 * &fine {
        v.push(Violation::new(
            Identity,
            vec![],
            "k != x1 (2^d-1) + x2 ((2^d-1)^d-1)",
        ));
    }
    if to_int(&plan.k) != to_int(&plan.n) - to_int(&cells) {
        v.push(Violation::new(Identity, vec![], "k != n - (a-1)^d"));
    }
    let used = &plan.x1 + &plan.x2;
    if used > cells {
        v.push(Violation::new(
            Capacity,
            vec![],
            format!("x1 + x2 = {used} exceeds (a-1)^d = {cells}"),
        ));
    }
    let produced = &cells + &plan.x1 * &half + &plan.x2 * &fine;
    if produced != plan.n {
        v.push(Violation::new(
            PieceCount,
            vec![],
            format!("construction yields {produced} pieces, expected {}", plan.n),
        ));
    }

    // Volume inside the (a-1)-cube, with signed whole-cell count.
    let whole = to_int(&cells) - to_int(&used);
    let fine_side = Rational::from(half.clone()).recip();
    let classes = [
        (Rational::one(), whole),
        (
            Rational::new(1, 2),
            to_int(&(&plan.x1 * Pow::pow(&BigUint::from(2u32), d))),
        ),
        (fine_side, to_int(&(&plan.x2 * Pow::pow(&half, d)))),
    ];
    let mut volume = Rational::zero();
    let mut total = BigInt::zero();
    let mut sides = Vec::new();
    for (side, count) in classes {
        if count.is_zero() {
            continue;
        }
        volume = volume + side.pow(d) * Rational::from(count.clone());
        total += count;
        sides.push(side);
    }
    let outer_volume = Rational::from(cells);
    if volume != outer_volume {
        let kind = if volume < outer_volume {
            VolumeDeficit
        } else {
            VolumeExcess
        };
        v.push(Violation::new(
            kind,
            vec![],
            format!("total volume {volume}"),
        ));
    }
    if sides.len() > 3 {
        v.push(Violation::new(
            TooManySizes,
            vec![],
            format!("{} sizes", sides.len()),
        ));
    }
    let count = total.to_biguint().unwrap_or_default();
    VerifyReport::assemble(count, sides, v)
}
