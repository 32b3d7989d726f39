//! Nonnegative solutions of linear Diophantine equations.
//!
//! Three tools live here: signed representations
//! `sum x_i a_i - sum y_j b_j = k` with all unknowns nonnegative, the
//! reduction that shrinks such a representation when there is a single
//! `b` coefficient, and two-coin (Sylvester) representations
//! `k = x_1 a_1 + x_2 a_2` above the Frobenius bound.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("coefficients must be positive")]
    ZeroCoefficient,
    #[error("not representable: coefficients share the divisor {0}")]
    NotRepresentable(BigUint),
    #[error("{k} has no nonnegative representation by {a1} and {a2} (below the Frobenius bound)")]
    BelowFrobeniusBound {
        a1: BigUint,
        a2: BigUint,
        k: BigUint,
    },
    #[error("reduction needs one b coefficient and {expected} increasing a coefficients")]
    InvalidReductionInput { expected: usize },
}

/// A witness for `sum x_i a_i - sum y_j b_j = k` with `x, y >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRepresentation {
    pub a: Vec<BigUint>,
    pub b: Vec<BigUint>,
    pub x: Vec<BigUint>,
    pub y: Vec<BigUint>,
    pub k: BigInt,
}

impl SignedRepresentation {
    /// `sum x_i a_i - sum y_j b_j`.
    pub fn value(&self) -> BigInt {
        let pos: BigUint = self.x.iter().zip(&self.a).map(|(x, a)| x * a).sum();
        let neg: BigUint = self.y.iter().zip(&self.b).map(|(y, b)| y * b).sum();
        to_int(pos) - to_int(neg)
    }

    /// Whether the defining identity holds.
    pub fn holds(&self) -> bool {
        self.x.len() == self.a.len() && self.y.len() == self.b.len() && self.value() == self.k
    }

    pub fn x_sum(&self) -> BigUint {
        self.x.iter().sum()
    }

    pub fn y_sum(&self) -> BigUint {
        self.y.iter().sum()
    }
}

fn to_int(v: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v)
}

fn to_nat(v: BigInt) -> BigUint {
    v.to_biguint().expect("value is nonnegative")
}

fn check_positive(values: &[BigUint]) -> Result<(), NumTheoryError> {
    if values.is_empty() {
        return Err(NumTheoryError::EmptyCoefficients);
    }
    if values.iter().any(Zero::is_zero) {
        return Err(NumTheoryError::ZeroCoefficient);
    }
    Ok(())
}

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_list(values: &[BigUint]) -> Result<BigUint, NumTheoryError> {
    check_positive(values)?;
    let mut g = BigUint::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Inverse of `value` modulo `modulus`, in `[0, modulus)`.
pub fn mod_inverse(value: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    if modulus.is_one() {
        return Some(BigUint::zero());
    }
    let m = to_int(modulus.clone());
    let e = to_int(value.clone()).extended_gcd(&m);
    e.gcd.is_one().then(|| to_nat(e.x.mod_floor(&m)))
}

/// Nonnegative `x`, `y` with `sum x_i a_i - sum y_j b_j = k`.
///
/// With a single `b` coefficient the witness is built by solving
/// `sum x_i a_i = k (mod b_1)` with `0 <= x_i < b_1`, raising the last `x`
/// by multiples of `b_1` until `sum x_i a_i >= k`, and reading off `y_1`.
/// The congruence is solved with Bezout coefficients of `b_1, a_1, a_2, ...`,
/// folding in `a_i` only until the running gcd reaches 1.
pub fn signed_representation(
    a: &[BigUint],
    b: &[BigUint],
    k: &BigInt,
) -> Result<SignedRepresentation, NumTheoryError> {
    check_positive(a)?;
    check_positive(b)?;
    let g = gcd_list(&[a, b].concat())?;
    if !g.is_one() {
        return Err(NumTheoryError::NotRepresentable(g));
    }
    let (x, y) = if b.len() == 1 {
        single_b_witness(a, &b[0], k)
    } else {
        general_witness(a, b, k)
    };
    let rep = SignedRepresentation {
        a: a.to_vec(),
        b: b.to_vec(),
        x,
        y,
        k: k.clone(),
    };
    debug_assert!(rep.holds());
    Ok(rep)
}

fn single_b_witness(a: &[BigUint], b1: &BigUint, k: &BigInt) -> (Vec<BigUint>, Vec<BigUint>) {
    let modulus = to_int(b1.clone());
    // Invariant: running gcd g = sum u_j a_j (mod b1).
    let mut g = modulus.clone();
    let mut u = vec![BigInt::zero(); a.len()];
    for (i, ai) in a.iter().enumerate() {
        if g.is_one() {
            break;
        }
        let e = g.extended_gcd(&to_int(ai.clone()));
        for coef in u.iter_mut().take(i) {
            *coef = &*coef * &e.x;
        }
        u[i] = e.y;
        g = e.gcd;
    }
    debug_assert!(g.is_one(), "gcd(a, b1) must be 1 here");

    let mut x: Vec<BigUint> = u
        .iter()
        .map(|ui| to_nat((k * ui).mod_floor(&modulus)))
        .collect();
    let mut total = to_int(x.iter().zip(a).map(|(xi, ai)| xi * ai).sum::<BigUint>());
    if total < *k {
        let last = a.len() - 1;
        let block = to_int(b1 * &a[last]);
        let lift = (k - &total).div_ceil(&block);
        x[last] += to_nat(&lift * &modulus);
        total += lift * block;
    }
    let y1 = to_nat((total - k) / &modulus);
    (x, vec![y1])
}

fn general_witness(a: &[BigUint], b: &[BigUint], k: &BigInt) -> (Vec<BigUint>, Vec<BigUint>) {
    // Bezout over a ++ b, then x = k c, y = -k e, then trade away negatives.
    let all: Vec<BigInt> = a.iter().chain(b).cloned().map(to_int).collect();
    let mut g = BigInt::zero();
    let mut coefs = vec![BigInt::zero(); all.len()];
    for (i, v) in all.iter().enumerate() {
        let e = g.extended_gcd(v);
        for c in coefs.iter_mut().take(i) {
            *c = &*c * &e.x;
        }
        coefs[i] = e.y;
        g = e.gcd;
    }
    let r = a.len();
    let mut x: Vec<BigInt> = coefs[..r].iter().map(|c| k * c).collect();
    let mut y: Vec<BigInt> = coefs[r..].iter().map(|c| -(k * c)).collect();
    let a0 = &all[0];
    let b0 = &all[r];
    // Adding t*b_j to x_1 and t*a_1 to y_j leaves the value unchanged.
    for (j, yj) in y.iter_mut().enumerate() {
        if yj.is_negative() {
            let t = (-&*yj).div_ceil(a0);
            *yj += &t * a0;
            x[0] += &t * &all[r + j];
        }
    }
    let mut y0_lift = BigInt::zero();
    for (i, xi) in x.iter_mut().enumerate() {
        if xi.is_negative() {
            let t = (-&*xi).div_ceil(b0);
            *xi += &t * b0;
            y0_lift += &t * &all[i];
        }
    }
    y[0] += y0_lift;
    (
        x.into_iter().map(to_nat).collect(),
        y.into_iter().map(to_nat).collect(),
    )
}

/// One move of the reduction procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStep {
    /// `x_i -= b_1`, `y_1 -= a_i`; legal when `x_i >= b_1` and `y_1 >= a_d`.
    Trade { index: usize },
    /// `x_i -= a_d`, `x_d += a_i` for `i < d`; legal when `x_i >= a_d`.
    Shift { index: usize },
}

fn validate_reduction_input(rep: &SignedRepresentation, d: usize) -> Result<(), NumTheoryError> {
    let bad = NumTheoryError::InvalidReductionInput { expected: d };
    if d == 0
        || rep.b.len() != 1
        || rep.y.len() != 1
        || rep.a.len() != d
        || rep.x.len() != d
        || rep.a.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(bad);
    }
    Ok(())
}

/// The step the procedure takes next from `rep`, if any. Trades take
/// priority over shifts; ties go to the smallest index.
pub fn next_reduction_step(rep: &SignedRepresentation) -> Option<ReductionStep> {
    let d = rep.a.len();
    let b1 = &rep.b[0];
    let ad = &rep.a[d - 1];
    if rep.y[0] >= *ad {
        if let Some(index) = rep.x.iter().position(|xi| xi >= b1) {
            return Some(ReductionStep::Trade { index });
        }
    }
    rep.x[..d - 1]
        .iter()
        .position(|xi| xi >= ad)
        .map(|index| ReductionStep::Shift { index })
}

/// Applies `step` `times` times. The caller guarantees legality.
pub fn apply_reduction_step(rep: &mut SignedRepresentation, step: ReductionStep, times: &BigUint) {
    let d = rep.a.len();
    match step {
        ReductionStep::Trade { index } => {
            rep.x[index] -= times * &rep.b[0];
            rep.y[0] -= times * &rep.a[index];
        }
        ReductionStep::Shift { index } => {
            rep.x[index] -= times * &rep.a[d - 1];
            let gain = times * &rep.a[index];
            rep.x[d - 1] += gain;
        }
    }
}

/// Iterator over the intermediate representations of the reduction, one
/// single step at a time.
pub struct ReductionSteps {
    current: SignedRepresentation,
}

impl Iterator for ReductionSteps {
    type Item = (ReductionStep, SignedRepresentation);

    fn next(&mut self) -> Option<Self::Item> {
        let step = next_reduction_step(&self.current)?;
        apply_reduction_step(&mut self.current, step, &BigUint::one());
        Some((step, self.current.clone()))
    }
}

pub fn reduction_steps(
    rep: SignedRepresentation,
    d: usize,
) -> Result<ReductionSteps, NumTheoryError> {
    validate_reduction_input(&rep, d)?;
    Ok(ReductionSteps { current: rep })
}

/// Runs the two reduction moves until neither applies.
///
/// Equivalent to exhausting [`reduction_steps`], but repeated moves on the
/// same index are applied in bulk.
pub fn reduce_representation(
    mut rep: SignedRepresentation,
    d: usize,
) -> Result<SignedRepresentation, NumTheoryError> {
    validate_reduction_input(&rep, d)?;
    let ad = rep.a[d - 1].clone();
    let b1 = rep.b[0].clone();
    while let Some(step) = next_reduction_step(&rep) {
        let times = match step {
            ReductionStep::Trade { index } => {
                // The same index stays first while both guards hold.
                let by_x = &rep.x[index] / &b1;
                let by_y = (&rep.y[0] - &ad) / &rep.a[index] + 1u32;
                by_x.min(by_y)
            }
            // With y_1 < a_d no trade can ever fire again, so shifts on one
            // index can be batched.
            ReductionStep::Shift { index } if rep.y[0] < ad => &rep.x[index] / &ad,
            ReductionStep::Shift { .. } => BigUint::one(),
        };
        apply_reduction_step(&mut rep, step, &times);
    }
    debug_assert!(rep.holds());
    Ok(rep)
}

/// Nonnegative `(x1, x2)` with `x1 a1 + x2 a2 = k`.
///
/// `x2` is taken as the least residue of `k a2^{-1} mod a1`, so a witness is
/// found whenever one exists; for `k >= (a1-1)(a2-1)` one always does.
pub fn sylvester_representation(
    a1: &BigUint,
    a2: &BigUint,
    k: &BigUint,
) -> Result<(BigUint, BigUint), NumTheoryError> {
    check_positive(&[a1.clone(), a2.clone()])?;
    let g = a1.gcd(a2);
    if !g.is_one() {
        return Err(NumTheoryError::NotRepresentable(g));
    }
    let inv = mod_inverse(&(a2 % a1), a1).expect("coprime");
    let x2 = (k % a1) * inv % a1;
    let used = &x2 * a2;
    if used > *k {
        return Err(NumTheoryError::BelowFrobeniusBound {
            a1: a1.clone(),
            a2: a2.clone(),
            k: k.clone(),
        });
    }
    let rest = k - used;
    debug_assert!((&rest % a1).is_zero());
    Ok((rest / a1, x2))
}

/// Whether `gcd{(m+i)^d - m^d : 1 <= i <= d} = 1`.
pub fn gcd_family_check(d: u32, m: &BigUint) -> bool {
    let base = Pow::pow(m, d);
    let mut g = BigUint::zero();
    for i in 1..=d {
        let term = Pow::pow(&(m + i), d) - &base;
        g = g.gcd(&term);
        if g.is_one() {
            return true;
        }
    }
    g.is_one()
}
