//! Cubes rescaled onto a common integer lattice.
//!
//! Multiplying every coordinate by the lcm of all denominators maps the
//! rationals to integers without changing any order relation. When the
//! scaled values are small the whole frame lives in `i128`.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::geometry::Cube;
use crate::rational::Rational;

/// Integer coordinate type used by the lattice algorithms.
pub(crate) trait Coord: Ord + Clone + Hash + Debug {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Coord for i128 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coord for BigInt {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ScaledCubes<T> {
    /// Common denominator: coordinate `v` stands for `v / scale`.
    pub scale: BigInt,
    pub dim: usize,
    origins: Vec<T>,
    sides: Vec<T>,
    pub outer_origin: Vec<T>,
    pub outer_side: T,
}

impl<T> ScaledCubes<T> {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn origin(&self, i: usize) -> &[T] {
        &self.origins[i * self.dim..(i + 1) * self.dim]
    }

    pub fn side(&self, i: usize) -> &T {
        &self.sides[i]
    }

    pub fn sides(&self) -> &[T] {
        &self.sides
    }
}

pub(crate) enum ScaledFrame {
    Small(ScaledCubes<i128>),
    Big(ScaledCubes<BigInt>),
}

// Bits allowed for numerators and the common denominator on the i128 path.
// Products stay below 2^120, leaving headroom for sums of two coordinates.
const SMALL_BITS: u64 = 60;

impl ScaledFrame {
    /// All cubes must have dimension `dim`.
    pub fn build(dim: usize, outer: &Cube, pieces: &[Cube]) -> ScaledFrame {
        let all = || std::iter::once(outer).chain(pieces.iter());
        let values = || all().flat_map(|c| c.origin().iter().chain(std::iter::once(c.side())));
        debug_assert!(all().all(|c| c.dim() == dim));

        let mut scale = BigInt::one();
        let mut small = true;
        for v in values() {
            if !(scale.is_multiple_of(v.denom())) {
                scale = scale.lcm(v.denom());
            }
            if v.numer().bits() > SMALL_BITS {
                small = false;
            }
        }
        if scale.bits() > SMALL_BITS {
            small = false;
        }

        if small {
            let scale_i = scale.to_i128().expect("scale fits i128");
            let mut factors: HashMap<i128, i128> = HashMap::new();
            let mut conv = |v: &Rational| -> i128 {
                let den = v.denom().to_i128().expect("small denominator");
                let f = *factors.entry(den).or_insert_with(|| scale_i / den);
                v.numer().to_i128().expect("small numerator") * f
            };
            ScaledFrame::Small(assemble(dim, outer, pieces, scale, &mut conv))
        } else {
            let mut factors: HashMap<BigInt, BigInt> = HashMap::new();
            let mut conv = |v: &Rational| -> BigInt {
                let f = factors
                    .entry(v.denom().clone())
                    .or_insert_with(|| &scale / v.denom())
                    .clone();
                v.numer() * f
            };
            let scale_copy = scale.clone();
            ScaledFrame::Big(assemble(dim, outer, pieces, scale_copy, &mut conv))
        }
    }
}

fn assemble<T>(
    dim: usize,
    outer: &Cube,
    pieces: &[Cube],
    scale: BigInt,
    conv: &mut impl FnMut(&Rational) -> T,
) -> ScaledCubes<T> {
    let mut origins = Vec::with_capacity(pieces.len() * dim);
    let mut sides = Vec::with_capacity(pieces.len());
    for p in pieces {
        origins.extend(p.origin().iter().map(&mut *conv));
        sides.push(conv(p.side()));
    }
    ScaledCubes {
        scale,
        dim,
        origins,
        sides,
        outer_origin: outer.origin().iter().map(&mut *conv).collect(),
        outer_side: conv(outer.side()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn scales_to_common_denominator() {
        let outer = Cube::unit(2);
        let pieces = vec![
            Cube::new(vec![q("0"), q("1/2")], q("1/2")).unwrap(),
            Cube::new(vec![q("1/3"), q("0")], q("1/6")).unwrap(),
        ];
        match ScaledFrame::build(2, &outer, &pieces) {
            ScaledFrame::Small(s) => {
                assert_eq!(s.scale, BigInt::from(6));
                assert_eq!(s.origin(0), &[0, 3]);
                assert_eq!(s.origin(1), &[2, 0]);
                assert_eq!(*s.side(1), 1);
                assert_eq!(s.outer_side, 6);
            }
            ScaledFrame::Big(_) => panic!("expected small frame"),
        }
    }

    #[test]
    fn huge_denominators_use_big_path() {
        let outer = Cube::unit(1);
        let tiny = Rational::new(BigInt::one(), BigInt::from(2).pow(80u32));
        let pieces = vec![Cube::new(vec![q("0")], tiny.clone()).unwrap()];
        match ScaledFrame::build(1, &outer, &pieces) {
            ScaledFrame::Big(s) => {
                assert_eq!(s.side(0), &BigInt::one());
                assert_eq!(s.outer_side, s.scale);
            }
            ScaledFrame::Small(_) => panic!("expected big frame"),
        }
    }
}
