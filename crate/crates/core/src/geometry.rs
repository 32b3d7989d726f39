//! Axis-aligned cubes in exact coordinates and the tiling container.

use thiserror::Error;

use crate::rational::Rational;
use crate::scaled::{ScaledCubes, ScaledFrame};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("cube side must be positive, got {0}")]
    NonPositiveSide(Rational),
    #[error("cube has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// An axis-aligned cube `origin + [0, side]^d`.
///
/// Ordering is lexicographic on `(origin, side)`, which is the canonical
/// piece order of a [`Tiling`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    origin: Vec<Rational>,
    side: Rational,
}

impl Cube {
    pub fn new(origin: Vec<Rational>, side: Rational) -> Result<Self, GeometryError> {
        if !side.is_positive() {
            return Err(GeometryError::NonPositiveSide(side));
        }
        Ok(Cube { origin, side })
    }

    /// The cube `[0, side]^dim`.
    pub fn at_origin(dim: usize, side: Rational) -> Result<Self, GeometryError> {
        Cube::new(vec![Rational::zero(); dim], side)
    }

    pub fn unit(dim: usize) -> Self {
        Cube {
            origin: vec![Rational::zero(); dim],
            side: Rational::one(),
        }
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn side(&self) -> &Rational {
        &self.side
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    /// Copy shifted by `delta` along `axis`.
    pub fn translated(&self, axis: usize, delta: &Rational) -> Cube {
        let mut origin = self.origin.clone();
        origin[axis] = &origin[axis] + delta;
        Cube {
            origin,
            side: self.side.clone(),
        }
    }

    /// Copy with the same origin and a different positive side.
    pub fn resized(&self, side: Rational) -> Result<Cube, GeometryError> {
        Cube::new(self.origin.clone(), side)
    }
}

/// `side^d` of a cube, exactly.
pub fn box_volume(cube: &Cube, d: u32) -> Rational {
    cube.side.pow(d)
}

/// Splits `cube` into `parts^d` equal subcubes on a regular grid, returned in
/// lexicographic order.
pub fn subdivide(cube: &Cube, d: usize, parts: u32) -> Vec<Cube> {
    assert!(parts >= 1, "subdivide needs at least one part per axis");
    let step = &cube.side / Rational::from(parts);
    // coords[axis][j] = origin[axis] + j * step
    let coords: Vec<Vec<Rational>> = cube
        .origin
        .iter()
        .take(d)
        .map(|o| {
            (0..parts)
                .map(|j| o + &(&step * Rational::from(j)))
                .collect()
        })
        .collect();
    LexGrid::new(d, parts as u64)
        .map(|idx| Cube {
            origin: idx
                .iter()
                .enumerate()
                .map(|(axis, &j)| coords[axis][j as usize].clone())
                .collect(),
            side: step.clone(),
        })
        .collect()
}

/// Iterates `{0..extent}^dim` in lexicographic order, first axis most
/// significant.
#[derive(Debug, Clone)]
pub struct LexGrid {
    extent: u64,
    next: Option<Vec<u64>>,
}

impl LexGrid {
    pub fn new(dim: usize, extent: u64) -> Self {
        let next = if extent == 0 {
            None
        } else {
            Some(vec![0; dim])
        };
        LexGrid { extent, next }
    }
}

impl Iterator for LexGrid {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.len();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            succ[axis] += 1;
            if succ[axis] < self.extent {
                self.next = Some(succ);
                break;
            }
            succ[axis] = 0;
        }
        Some(current)
    }
}

/// A set of cubes claimed to tile `outer`, stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    dim: usize,
    outer: Cube,
    pieces: Vec<Cube>,
}

impl Tiling {
    /// Checked constructor: every cube must have dimension `dim`. Pieces are
    /// sorted into canonical order.
    pub fn new(dim: usize, outer: Cube, pieces: Vec<Cube>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        for cube in std::iter::once(&outer).chain(pieces.iter()) {
            if cube.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: cube.dim(),
                });
            }
        }
        Ok(Tiling::from_parts(dim, outer, pieces))
    }

    /// Unchecked constructor for untrusted input (loaded documents, mutation
    /// tests). Dimension problems surface later as verification violations.
    pub fn from_parts(dim: usize, outer: Cube, mut pieces: Vec<Cube>) -> Self {
        canonical_sort(dim, &outer, &mut pieces);
        Tiling { dim, outer, pieces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outer(&self) -> &Cube {
        &self.outer
    }

    pub fn pieces(&self) -> &[Cube] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn into_parts(self) -> (usize, Cube, Vec<Cube>) {
        (self.dim, self.outer, self.pieces)
    }

    /// The uniform `side x side` grid of unit cubes.
    pub fn uniform_grid(dim: usize, side: u32) -> Result<Self, GeometryError> {
        let outer = Cube::at_origin(dim, Rational::from(side))?;
        let pieces = subdivide(&outer, dim, side.max(1));
        Tiling::new(dim, outer, pieces)
    }
}

fn canonical_sort(dim: usize, outer: &Cube, pieces: &mut Vec<Cube>) {
    if pieces.len() < 64 || pieces.iter().any(|p| p.dim() != dim) {
        pieces.sort();
        return;
    }
    // Scaling to a common denominator preserves order and makes keys cheap.
    let perm = match ScaledFrame::build(dim, outer, pieces) {
        ScaledFrame::Small(s) => sorted_permutation(&s),
        ScaledFrame::Big(s) => sorted_permutation(&s),
    };
    let mut slots: Vec<Option<Cube>> = std::mem::take(pieces).into_iter().map(Some).collect();
    *pieces = perm
        .into_iter()
        .map(|i| slots[i].take().expect("permutation visits each index once"))
        .collect();
}

fn sorted_permutation<T: Ord + Clone>(s: &ScaledCubes<T>) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..s.len()).collect();
    perm.sort_by(|&i, &j| {
        s.origin(i)
            .cmp(s.origin(j))
            .then_with(|| s.side(i).cmp(s.side(j)))
    });
    perm
}
