//! Squared squares with two side lengths.
//!
//! For `n >= 36` that is not a perfect square, `n` is written as
//! `p^2 - q^2 + r^2` or `p^2 - 2q^2 + 2r^2` with `q` and `r` close to each
//! other; a `p x p` grid of unit squares then has one (or two) `q x q`
//! blocks re-tiled by `r^2` squares of side `q/r`. Small `n` use a framed
//! unit square instead.

use std::fmt;

use num_integer::Roots;
use thiserror::Error;

use crate::geometry::{subdivide, Cube, Tiling};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("no decomposition of a square into 5 squares exists")]
    FiveSquares,
    #[error("{n} is out of range: {reason}")]
    OutOfRange { n: u64, reason: &'static str },
}

fn out_of_range(n: u64, reason: &'static str) -> PlanarError {
    PlanarError::OutOfRange { n, reason }
}

/// How `n` sits between consecutive squares `a^2 < n < (a+1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim1Case {
    /// `n = a^2 + b` (when `n > a^2 + a`).
    AboveLower,
    /// `n = (a+1)^2 - b` (when `n <= a^2 + a`).
    BelowUpper,
}

/// How the gap `b` is written as a difference of squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim2Form {
    /// `b = 2m + 1 = (m+1)^2 - m^2`.
    Odd,
    /// `b = 4m = (m+1)^2 - (m-1)^2`.
    FourM,
    /// `b = 4m + 2 = 2(m+1)^2 - 2m^2`.
    FourMPlusTwo,
}

impl fmt::Display for Claim1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim1Case::AboveLower => "i",
            Claim1Case::BelowUpper => "ii",
        })
    }
}

impl fmt::Display for Claim2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim2Form::Odd => "i",
            Claim2Form::FourM => "ii",
            Claim2Form::FourMPlusTwo => "iii",
        })
    }
}

/// Parameters of the two-size planar construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarPlan {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub m: u64,
    /// Side of the outer grid of unit squares.
    pub p: u64,
    /// Side of each re-tiled block.
    pub q: u64,
    /// Each block is split into `r x r` squares of side `q/r`.
    pub r: u64,
    /// Number of re-tiled blocks, 1 or 2.
    pub blocks: u64,
    pub claim1_case: Claim1Case,
    pub claim2_form: Claim2Form,
}

impl PlanarPlan {
    /// `p^2 - blocks*q^2 + blocks*r^2`.
    pub fn piece_count(&self) -> u64 {
        self.p * self.p - self.blocks * self.q * self.q + self.blocks * self.r * self.r
    }

    /// Side of the squares inside the blocks.
    pub fn block_side(&self) -> Rational {
        Rational::new(self.q, self.r)
    }

    /// Largest over smallest side.
    pub fn ratio(&self) -> Rational {
        Rational::new(self.q.max(self.r), self.q.min(self.r))
    }
}

fn is_square(n: u64) -> bool {
    let s = n.sqrt();
    s * s == n
}

/// Splits `a^2 < n < (a+1)^2` into `(a, b, case)` with `a < b <= 2a`.
pub fn claim1_decompose(n: u64) -> Result<(u64, u64, Claim1Case), PlanarError> {
    if n < 36 {
        return Err(out_of_range(n, "needs n >= 36"));
    }
    if is_square(n) {
        return Err(out_of_range(n, "perfect square"));
    }
    let a = n.sqrt();
    Ok(if n > a * a + a {
        (a, n - a * a, Claim1Case::AboveLower)
    } else {
        (a, (a + 1) * (a + 1) - n, Claim1Case::BelowUpper)
    })
}

/// Writes `b >= 7` by residue class: odd, `0 mod 4`, or `2 mod 4`.
pub fn claim2_decompose(b: u64) -> Result<(u64, Claim2Form), PlanarError> {
    if b < 7 {
        return Err(out_of_range(b, "gap must be at least 7"));
    }
    Ok(match b % 4 {
        1 | 3 => ((b - 1) / 2, Claim2Form::Odd),
        0 => (b / 4, Claim2Form::FourM),
        _ => ((b - 2) / 4, Claim2Form::FourMPlusTwo),
    })
}

pub fn theorem1_params(n: u64) -> Result<PlanarPlan, PlanarError> {
    let (a, b, case) = claim1_decompose(n)?;
    let (m, form) = claim2_decompose(b)?;
    // Lower case adds the gap, upper case subtracts it; the subtracted
    // square is always q.
    let (p, q, r) = match (case, form) {
        (Claim1Case::AboveLower, Claim2Form::Odd) => (a, m, m + 1),
        (Claim1Case::AboveLower, Claim2Form::FourM) => (a, m - 1, m + 1),
        (Claim1Case::AboveLower, Claim2Form::FourMPlusTwo) => (a, m, m + 1),
        (Claim1Case::BelowUpper, Claim2Form::Odd) => (a + 1, m + 1, m),
        (Claim1Case::BelowUpper, Claim2Form::FourM) => (a + 1, m + 1, m - 1),
        (Claim1Case::BelowUpper, Claim2Form::FourMPlusTwo) => (a + 1, m + 1, m),
    };
    let blocks = if form == Claim2Form::FourMPlusTwo {
        2
    } else {
        1
    };
    let plan = PlanarPlan {
        n,
        a,
        b,
        m,
        p,
        q,
        r,
        blocks,
        claim1_case: case,
        claim2_form: form,
    };
    debug_assert_eq!(plan.piece_count(), n);
    debug_assert!(if blocks == 1 { p > q } else { p >= 2 * q });
    Ok(plan)
}

/// Tiling of the plan: a `p x p` grid with the first block at the origin
/// and, for two blocks, the second in the opposite corner.
pub fn plan_tiling(plan: &PlanarPlan) -> Tiling {
    let (p, q, r) = (plan.p, plan.q, plan.r);
    let mut corners = vec![(0, 0)];
    if plan.blocks == 2 {
        corners.push((p - q, p - q));
    }
    let in_block = |i: u64, j: u64| {
        corners
            .iter()
            .any(|&(x, y)| (x..x + q).contains(&i) && (y..y + q).contains(&j))
    };
    let mut pieces = Vec::with_capacity(plan.piece_count() as usize);
    for i in 0..p {
        for j in 0..p {
            if !in_block(i, j) {
                pieces.push(square(i, j, Rational::one()));
            }
        }
    }
    for &(x, y) in &corners {
        pieces.extend(subdivide(&square(x, y, Rational::from(q)), 2, r as u32));
    }
    Tiling::new(2, square(0, 0, Rational::from(p)), pieces).expect("planar cubes are 2-d")
}

fn square(x: u64, y: u64, side: Rational) -> Cube {
    Cube::new(vec![Rational::from(x), Rational::from(y)], side).expect("positive side")
}

pub fn theorem1_tiling(n: u64) -> Result<Tiling, PlanarError> {
    Ok(plan_tiling(&theorem1_params(n)?))
}

/// Two-size tiling for `n = 4` or `n >= 6`: a unit square framed by
/// `2k + 1` squares of side `1/k` (`n = 2k + 2`), with the unit square
/// quartered for odd `n = 2k + 5`.
pub fn lemma0_tiling(n: u64) -> Result<Tiling, PlanarError> {
    let (k, quarter) = match n {
        5 => return Err(PlanarError::FiveSquares),
        0..=3 => return Err(out_of_range(n, "needs n = 4 or n >= 6")),
        _ if n.is_multiple_of(2) => ((n - 2) / 2, false),
        _ => ((n - 5) / 2, true),
    };
    let small = Rational::new(1, k);
    let at = |x: Rational, y: Rational, side: Rational| {
        Cube::new(vec![x, y], side).expect("positive side")
    };
    let mut pieces = Vec::with_capacity(n as usize);
    let unit = at(Rational::zero(), Rational::zero(), Rational::one());
    if quarter {
        pieces.extend(subdivide(&unit, 2, 2));
    } else {
        pieces.push(unit);
    }
    // Top row spans the full width 1 + 1/k, the right column the height 1.
    for j in 0..=k {
        pieces.push(at(
            &small * Rational::from(j),
            Rational::one(),
            small.clone(),
        ));
    }
    for j in 0..k {
        pieces.push(at(
            Rational::one(),
            &small * Rational::from(j),
            small.clone(),
        ));
    }
    let outer = Cube::at_origin(2, Rational::one() + &small).expect("positive side");
    Ok(Tiling::new(2, outer, pieces).expect("planar cubes are 2-d"))
}

/// The tiling the command line uses for `n`: uniform grid for squares,
/// the framed construction below 36, the block construction otherwise.
pub fn plane_tiling(n: u64) -> Result<Tiling, PlanarError> {
    if n >= 1 && is_square(n) {
        return Ok(Tiling::uniform_grid(2, n.sqrt() as u32).expect("2-d grid"));
    }
    if n < 36 {
        lemma0_tiling(n)
    } else {
        theorem1_tiling(n)
    }
}

/// Max/min side ratio of the construction for `n`: an upper bound on the
/// best ratio achievable with `n` squares.
pub fn rho_upper(n: u64) -> Result<Rational, PlanarError> {
    if n < 36 {
        return Err(out_of_range(n, "needs n >= 36"));
    }
    if is_square(n) {
        return Ok(Rational::one());
    }
    Ok(theorem1_params(n)?.ratio())
}
