//! Cube tilings using only the sides `1`, `1/2` and `1/(2^d - 1)`.
//!
//! Start from the `(a-1)^d` unit cells of a cube of side `a - 1`. Halving a
//! cell adds `2^d - 1` pieces; splitting it into `(2^d-1)^d` cubes adds
//! `(2^d-1)^d - 1`. Those two increments are coprime, so any large enough
//! surplus `k = n - (a-1)^d` is a nonnegative combination of them.

use num_bigint::BigUint;
use num_traits::{CheckedSub, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{subdivide, Cube, LexGrid, Tiling};
use crate::numtheory::{sylvester_representation, NumTheoryError};
use crate::rational::{ifloor_root, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreeSizeError {
    #[error("dimension must be at least 3, got {0}")]
    InvalidDimension(u32),
    #[error("n = {n} is not above the three-size threshold {threshold}")]
    BelowThreshold { n: BigUint, threshold: BigUint },
    #[error("construction assumption failed: {0}")]
    TheoryGap(&'static str),
    #[error("materialization refused: {n} pieces exceed the limit {limit}; use the certificate")]
    MaterializationRefused { n: BigUint, limit: u64 },
    #[error("plan is inconsistent: {0}")]
    InvalidPlan(&'static str),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// Certificate for a three-size tiling of a cube of side `a - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSizePlan {
    pub d: u32,
    pub n: BigUint,
    pub a: BigUint,
    pub k: BigUint,
    /// Cells cut into `2^d` halves.
    pub x1: BigUint,
    /// Cells cut into `(2^d-1)^d` cubes of side `1/(2^d-1)`.
    pub x2: BigUint,
}

/// `2^d - 1`: pieces added by halving one cell; also the fine split count.
pub fn half_increment(d: u32) -> BigUint {
    Pow::pow(&BigUint::from(2u32), d) - 1u32
}

/// `(2^d-1)^d - 1`: pieces added by the fine split.
pub fn fine_increment(d: u32) -> BigUint {
    Pow::pow(&half_increment(d), d) - 1u32
}

/// `2^{(d+3)d}`; every `n` strictly above it has a plan.
pub fn theorem5_threshold(d: u32) -> BigUint {
    Pow::pow(&BigUint::from(2u32), (d + 3) * d)
}

impl ThreeSizePlan {
    /// Side of the outer cube, `a - 1`.
    pub fn outer_side(&self) -> BigUint {
        if self.a.is_zero() {
            BigUint::zero()
        } else {
            &self.a - 1u32
        }
    }

    /// `(a-1)^d` unit cells.
    pub fn cells(&self) -> BigUint {
        Pow::pow(&self.outer_side(), self.d)
    }

    /// `(side, count)` for the three classes, whole cells first; zero
    /// counts omitted.
    pub fn sizes(&self) -> Vec<(Rational, BigUint)> {
        let fine = half_increment(self.d);
        let whole = self
            .cells()
            .checked_sub(&(&self.x1 + &self.x2))
            .unwrap_or_default();
        let classes = [
            (Rational::one(), whole),
            (
                Rational::new(1, 2),
                &self.x1 * Pow::pow(&BigUint::from(2u32), self.d),
            ),
            (
                Rational::from(fine.clone()).recip(),
                &self.x2 * Pow::pow(&fine, self.d),
            ),
        ];
        classes.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn theorem5_params(d: u32, n: &BigUint) -> Result<ThreeSizePlan, ThreeSizeError> {
    if d < 3 {
        return Err(ThreeSizeError::InvalidDimension(d));
    }
    let threshold = theorem5_threshold(d);
    if *n <= threshold {
        return Err(ThreeSizeError::BelowThreshold {
            n: n.clone(),
            threshold,
        });
    }
    let a = ifloor_root(n, d);
    if a < Pow::pow(&BigUint::from(2u32), d + 3) {
        return Err(ThreeSizeError::TheoryGap("a >= 2^(d+3)"));
    }
    let cells = Pow::pow(&(&a - 1u32), d);
    let k = n - &cells;
    if k < Pow::pow(&BigUint::from(2u32), (d + 1) * d) {
        return Err(ThreeSizeError::TheoryGap("k >= 2^((d+1)d)"));
    }
    let (x1, x2) = sylvester_representation(&half_increment(d), &fine_increment(d), &k)?;
    if &x1 + &x2 > cells {
        return Err(ThreeSizeError::TheoryGap("x1 + x2 <= (a-1)^d"));
    }
    Ok(ThreeSizePlan {
        d,
        n: n.clone(),
        a,
        k,
        x1,
        x2,
    })
}

/// Explicit tiling: unit cells of the `(a-1)`-cube in lexicographic order,
/// the first `x1` halved, the next `x2` split finely, the rest kept whole.
pub fn theorem5_tiling(plan: &ThreeSizePlan, limit: u64) -> Result<Tiling, ThreeSizeError> {
    if plan.n > BigUint::from(limit) {
        return Err(ThreeSizeError::MaterializationRefused {
            n: plan.n.clone(),
            limit,
        });
    }
    let invalid = ThreeSizeError::InvalidPlan;
    let cells = plan.cells();
    let added = &plan.x1 * half_increment(plan.d) + &plan.x2 * fine_increment(plan.d);
    if plan.d == 0 || &plan.x1 + &plan.x2 > cells || &cells + added != plan.n {
        return Err(invalid("counts do not add up to n"));
    }
    let d = plan.d as usize;
    let small = |v: &BigUint| v.to_u64().ok_or(invalid("value too large"));
    let side = small(&plan.outer_side())?;
    let fine = small(&half_increment(plan.d))? as u32;
    let halves = small(&plan.x1)?;
    let fines = small(&plan.x2)?;

    let mut pieces = Vec::with_capacity(small(&plan.n)? as usize);
    for (i, idx) in LexGrid::new(d, side).enumerate() {
        let i = i as u64;
        let origin = idx.into_iter().map(Rational::from).collect();
        let cell = Cube::new(origin, Rational::one()).expect("positive side");
        if i < halves {
            pieces.extend(subdivide(&cell, d, 2));
        } else if i < halves + fines {
            pieces.extend(subdivide(&cell, d, fine));
        } else {
            pieces.push(cell);
        }
    }
    let outer = Cube::at_origin(d, Rational::from(side)).map_err(|_| invalid("empty cube"))?;
    Ok(Tiling::new(d, outer, pieces).expect("uniform dimension"))
}
