//! Nearly-equal cube tilings in any dimension.
//!
//! Pick `a` with `a^{3d} <= n < (a+1)^{3d}` and `c in 0..=3` with
//! `a^{2d} m^d <= n < a^{2d} (m+1)^d` where `m = a + c`. Cut the unit cube
//! into `a^{2d}` small cells of side `1/a^2`. Split every cell into `m^d`
//! tiny cubes except `x_i` cells split into `(m+i)^d` (`1 <= i <= d`) and
//! `y_1` cells split into `(m-1)^d`. The counts satisfy
//! `sum x_i a_i - y_1 b_1 = n - a^{2d} m^d` with `a_i = (m+i)^d - m^d` and
//! `b_1 = m^d - (m-1)^d`, and the reduction keeps
//! `x_1 + ... + x_d + y_1 <= a^{2d}` so enough cells exist.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{subdivide, Cube, LexGrid, Tiling};
use crate::numtheory::{
    gcd_family_check, reduce_representation, signed_representation, NumTheoryError,
};
use crate::rational::{ifloor_root, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HighDimError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(Rational),
    #[error("base a = {a} is not above d(d+1) = {bound}; the smallest usable n is {min_n}")]
    BelowThreshold {
        a: BigUint,
        bound: u32,
        min_n: BigUint,
    },
    #[error("no offset c in 0..=3 brackets n = {0}")]
    IntervalViolated(BigUint),
    #[error("coefficients for m = {0} are not coprime")]
    FamilyNotCoprime(BigUint),
    #[error("representation uses {used} cells but only {available} exist")]
    CapacityExceeded { used: BigUint, available: BigUint },
    #[error("materialization refused: {n} pieces exceed the limit {limit}; use the certificate")]
    MaterializationRefused { n: BigUint, limit: u64 },
    #[error("plan is inconsistent: {0}")]
    InvalidPlan(&'static str),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// Certificate for a tiling of the unit `d`-cube by `n` cubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubePlan {
    pub d: u32,
    pub n: BigUint,
    pub a: BigUint,
    pub c: u32,
    pub m: BigUint,
    pub k: BigUint,
    /// `x[i-1]` cells are split into `(m+i)^d` pieces.
    pub x: Vec<BigUint>,
    /// Cells split into `(m-1)^d` pieces.
    pub y1: BigUint,
}

/// `a_i = (m+i)^d - m^d` for `i = 1..=d`, and `b_1 = m^d - (m-1)^d`.
pub fn family_coefficients(d: u32, m: &BigUint) -> (Vec<BigUint>, BigUint) {
    let base = Pow::pow(m, d);
    let a = (1..=d).map(|i| Pow::pow(&(m + i), d) - &base).collect();
    let b1 = if m.is_zero() {
        BigUint::zero()
    } else {
        &base - Pow::pow(&(m - 1u32), d)
    };
    (a, b1)
}

/// Smallest base `a` with `a > d(d+1)` and `(a-1)(1+eps) > a + d`.
pub fn min_base(d: u32, epsilon: &Rational) -> Result<BigUint, HighDimError> {
    if d < 2 {
        return Err(HighDimError::InvalidDimension(d));
    }
    if !epsilon.is_positive() {
        return Err(HighDimError::InvalidEpsilon(epsilon.clone()));
    }
    // eps (a-1) > d+1  <=>  a >= floor((d+1)/eps) + 2
    let by_eps: BigInt = (Rational::from(d + 1) / epsilon).floor() + 2;
    let by_eps = by_eps.to_biguint().expect("positive");
    Ok(by_eps.max(BigUint::from(d * (d + 1) + 1)))
}

/// `n_0 = a_min^{3d}`: from here on both preconditions of the
/// construction hold and the ratio is at most `1 + epsilon`.
pub fn theorem2_threshold(d: u32, epsilon: &Rational) -> Result<BigUint, HighDimError> {
    Ok(Pow::pow(&min_base(d, epsilon)?, 3 * d))
}

fn to_int(v: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

pub fn theorem2_params(d: u32, n: &BigUint) -> Result<CubePlan, HighDimError> {
    if d < 2 {
        return Err(HighDimError::InvalidDimension(d));
    }
    let a = ifloor_root(n, 3 * d);
    if !a.is_zero() && Pow::pow(&a, 3 * d) == *n {
        return Ok(CubePlan {
            d,
            n: n.clone(),
            a: a.clone(),
            c: 0,
            m: a,
            k: BigUint::zero(),
            x: vec![BigUint::zero(); d as usize],
            y1: BigUint::zero(),
        });
    }
    let bound = d * (d + 1);
    if a <= BigUint::from(bound) {
        return Err(HighDimError::BelowThreshold {
            a,
            bound,
            min_n: Pow::pow(&BigUint::from(bound + 1), 3 * d),
        });
    }
    let cells = Pow::pow(&a, 2 * d);
    let c = (0..=3u32)
        .find(|&c| {
            let lo = &cells * Pow::pow(&(&a + c), d);
            let hi = &cells * Pow::pow(&(&a + c + 1u32), d);
            lo <= *n && *n < hi
        })
        .ok_or_else(|| HighDimError::IntervalViolated(n.clone()))?;
    let m = &a + c;
    let k = n - &cells * Pow::pow(&m, d);
    if !gcd_family_check(d, &m) {
        return Err(HighDimError::FamilyNotCoprime(m));
    }
    let (coeffs, b1) = family_coefficients(d, &m);
    let rep = signed_representation(&coeffs, std::slice::from_ref(&b1), &to_int(&k))?;
    let rep = reduce_representation(rep, d as usize)?;
    let used = rep.x_sum() + &rep.y[0];
    if used > cells {
        return Err(HighDimError::CapacityExceeded {
            used,
            available: cells,
        });
    }
    Ok(CubePlan {
        d,
        n: n.clone(),
        a,
        c,
        m,
        k,
        x: rep.x,
        y1: rep.y[0].clone(),
    })
}

/// One class of tiny cubes: `count` cubes cut from cells split `parts` ways
/// per axis. `count` may be negative for inconsistent plans.
#[derive(Debug, Clone)]
pub(crate) struct SizeClass {
    pub parts: BigInt,
    pub count: BigInt,
}

/// Tiny-cube classes in order of increasing split (`m-1`, `m`, `m+1`, ...,
/// `m+d`), including zero counts.
pub(crate) fn size_classes(plan: &CubePlan) -> Vec<SizeClass> {
    let d = plan.d;
    let m = to_int(&plan.m);
    let cells = to_int(&Pow::pow(&plan.a, 2 * d));
    let used: BigInt = plan.x.iter().map(to_int).sum::<BigInt>() + to_int(&plan.y1);
    let split = |parts: &BigInt, cells: BigInt| SizeClass {
        parts: parts.clone(),
        count: cells * Pow::pow(parts, d),
    };
    let mut out = vec![split(&(&m - 1), to_int(&plan.y1)), split(&m, cells - used)];
    for (i, xi) in plan.x.iter().enumerate() {
        out.push(split(&(&m + (i as u64 + 1)), to_int(xi)));
    }
    out
}

/// Side of a tiny cube whose cell of side `1/a^2` is split `parts` ways.
pub(crate) fn tiny_side(a: &BigUint, parts: &BigInt) -> Option<Rational> {
    let den = to_int(&(a * a)) * parts;
    (den > BigInt::zero()).then(|| Rational::new(BigInt::one(), den))
}

/// Distinct tiny-cube sides with their multiplicities, largest side first.
pub fn plan_sizes(plan: &CubePlan) -> Vec<(Rational, BigUint)> {
    size_classes(plan)
        .into_iter()
        .filter(|class| class.count > BigInt::zero())
        .map(|class| {
            let side = tiny_side(&plan.a, &class.parts).expect("valid plan has positive sides");
            (side, class.count.to_biguint().expect("positive"))
        })
        .collect()
}

/// Largest over smallest tiny side.
pub fn plan_ratio(plan: &CubePlan) -> Rational {
    let sizes = plan_sizes(plan);
    let max = sizes.iter().map(|(s, _)| s).max();
    let min = sizes.iter().map(|(s, _)| s).min();
    match (max, min) {
        (Some(max), Some(min)) => max / min,
        _ => Rational::one(),
    }
}

/// Explicit tiling of the plan. Cells are visited in lexicographic order;
/// the first `x_1` get `(m+1)^d` pieces, then `x_2` get `(m+2)^d`, ..., then
/// `y_1` get `(m-1)^d`, and the rest `m^d`.
pub fn materialize(plan: &CubePlan, limit: u64) -> Result<Tiling, HighDimError> {
    if plan.n > BigUint::from(limit) {
        return Err(HighDimError::MaterializationRefused {
            n: plan.n.clone(),
            limit,
        });
    }
    let d = plan.d as usize;
    let invalid = HighDimError::InvalidPlan;
    if plan.x.len() != d {
        return Err(invalid("x has the wrong length"));
    }
    let classes = size_classes(plan);
    let total: BigInt = classes.iter().map(|c| &c.count).sum();
    if classes.iter().any(|c| c.count < BigInt::zero()) || total != to_int(&plan.n) {
        return Err(invalid("piece counts do not sum to n"));
    }
    let small = |v: &BigUint| v.to_u64().ok_or(invalid("value too large"));
    let per_axis = small(&(&plan.a * &plan.a))?;
    let m = small(&plan.m)? as u32;

    // (cells, parts) runs in assignment order; the m-run absorbs the rest.
    let mut runs: Vec<(u64, u32)> = Vec::with_capacity(d + 2);
    for (i, xi) in plan.x.iter().enumerate() {
        runs.push((small(xi)?, m + i as u32 + 1));
    }
    runs.push((small(&plan.y1)?, m - 1));
    runs.push((u64::MAX, m));

    let cell_side = Rational::new(1, per_axis);
    let mut pieces = Vec::with_capacity(limit.min(small(&plan.n)?) as usize);
    let mut run = 0;
    let mut left = runs[0].0;
    for idx in LexGrid::new(d, per_axis) {
        while left == 0 {
            run += 1;
            left = runs[run].0;
        }
        left -= 1;
        let origin = idx.iter().map(|&j| Rational::new(j, per_axis)).collect();
        let cell = Cube::new(origin, cell_side.clone()).expect("positive side");
        pieces.extend(subdivide(&cell, d, runs[run].1));
    }
    Ok(Tiling::new(d, Cube::unit(d), pieces).expect("uniform dimension"))
}
