//! Monomial ideals as antichains of exponent vectors.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::staircase::{self, Grid, CELL_BUDGET};

/// A monomial ideal in `K[x_1, ..., x_n]`, stored as its minimal generators.
///
/// Generators are an antichain under divisibility, kept in lexicographic
/// order, so two ideals are equal exactly when their generator lists are.
/// The unit ideal is generated by the zero vector; the zero ideal has no
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// The ideal generated by `candidates`, reduced to its minimal generators.
    pub fn minimalize<I>(candidates: I, dim: usize) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let candidates: Vec<ExponentVector> = candidates.into_iter().collect();
        for c in &candidates {
            c.check_dim(dim)?;
        }
        Ok(MonomialIdeal {
            dim,
            generators: minimal_generators(candidates, dim),
        })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::minimalize(std::iter::empty(), dim)
    }

    pub fn unit(dim: usize) -> Result<Self> {
        Self::minimalize([ExponentVector::zero(dim)?], dim)
    }

    /// `(x_1^{alpha_1}, ..., x_n^{alpha_n})`.
    pub fn pure_powers(alpha: &ExponentVector) -> Self {
        let dim = alpha.dim();
        let gens = alpha.coords().iter().enumerate().map(|(i, a)| {
            let mut coords = vec![BigUint::zero(); dim];
            coords[i] = a.clone();
            ExponentVector::new(coords).expect("dim >= 1")
        });
        Self::minimalize(gens, dim).expect("dimensions agree")
    }

    /// Wraps generators already known to be a lexicographically sorted antichain.
    pub(crate) fn from_antichain(dim: usize, generators: Vec<ExponentVector>) -> Self {
        debug_assert!(generators.windows(2).all(|w| w[0] < w[1]));
        MonomialIdeal { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_zero()
    }

    fn check_same_dim(&self, other: &MonomialIdeal) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Monomial membership: some generator divides `x^v`.
    pub fn contains_monomial(&self, v: &ExponentVector) -> Result<bool> {
        v.check_dim(self.dim)?;
        Ok(self.generators.iter().any(|g| g.divides(v)))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same_dim(other)?;
        Ok(self
            .generators
            .iter()
            .all(|g| other.generators.iter().any(|h| h.divides(g))))
    }

    /// Componentwise maximum over the generators, `None` for the zero ideal.
    pub fn max_exponents(&self) -> Option<ExponentVector> {
        let mut iter = self.generators.iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, g| acc.lcm(g)))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_dim(other)?;
        if let Some(generators) = small_product(self, other) {
            return Ok(MonomialIdeal {
                dim: self.dim,
                generators,
            });
        }
        let sums = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.add(h)));
        Self::minimalize(sums, self.dim)
    }

    /// `self^k` by repeated multiplication; `self^0` is the unit ideal.
    pub fn power(&self, k: usize) -> MonomialIdeal {
        if k == 0 {
            return MonomialIdeal::unit(self.dim).expect("dim >= 1");
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self).expect("same ideal");
        }
        acc
    }

    /// `I : x^f`.
    pub fn colon_by_monomial(&self, f: &ExponentVector) -> Result<MonomialIdeal> {
        f.check_dim(self.dim)?;
        if f.is_zero() {
            return Ok(self.clone());
        }
        Self::minimalize(self.generators.iter().map(|g| g.quotient(f)), self.dim)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_dim(other)?;
        let lcms = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.lcm(h)));
        Self::minimalize(lcms, self.dim)
    }

    /// `I : (x_1, ..., x_n)`, the intersection of the colons by each variable.
    pub fn colon_by_maximal(&self) -> MonomialIdeal {
        if let Some(generators) = self.socle_colon_on_grid() {
            return MonomialIdeal {
                dim: self.dim,
                generators,
            };
        }
        let mut acc: Option<MonomialIdeal> = None;
        for i in 0..self.dim {
            let e = ExponentVector::unit(self.dim, i).expect("index in range");
            let colon = self.colon_by_monomial(&e).expect("same dim");
            acc = Some(match acc {
                None => colon,
                Some(prev) => prev.intersect(&colon).expect("same dim"),
            });
        }
        acc.expect("dim >= 1")
    }

    /// `v ∈ I : m` iff `v + e_i ∈ I` for every `i`. Minimal generators of the
    /// colon lie in the box `[0, M]`, and for `v_i = M_i` membership of
    /// `v + e_i` equals that of `v`, so a membership grid decides everything.
    /// `None` when the box is too large.
    fn socle_colon_on_grid(&self) -> Option<Vec<ExponentVector>> {
        let top = self.max_exponents()?.to_u32s()?;
        let grid = Grid::new(&top, CELL_BUDGET)?;
        let mut member = vec![false; grid.cells()];
        for g in &self.generators {
            member[grid.index(&g.to_u32s()?)] = true;
        }
        grid.walk::<()>(|idx, p| {
            if !member[idx] && grid.any_predecessor(&member, idx, p) {
                member[idx] = true;
            }
            ControlFlow::Continue(())
        });
        let mut marked = vec![false; grid.cells()];
        grid.walk::<()>(|idx, p| {
            marked[idx] = member[idx] || (0..p.len()).all(|i| p[i] < top[i] && member[idx + grid.stride(i)]);
            ControlFlow::Continue(())
        });
        Some(
            staircase::minimal_marked(&grid, &marked)
                .into_iter()
                .map(|p| ExponentVector::from_u32s(&p))
                .collect(),
        )
    }

    /// Every variable has a pure power among the generators.
    pub fn is_m_primary(&self) -> bool {
        (0..self.dim).all(|i| self.generators.iter().any(|g| g.support() == [i]))
    }

    /// Index of the first variable lacking a pure power, if any.
    pub(crate) fn missing_pure_power(&self) -> Option<usize> {
        (0..self.dim).find(|&i| !self.generators.iter().any(|g| g.support() == [i]))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn use_grid(cells: usize, candidates: usize) -> bool {
    cells <= candidates.saturating_mul(candidates).max(4096)
}

fn minimal_generators(candidates: Vec<ExponentVector>, dim: usize) -> Vec<ExponentVector> {
    if candidates.is_empty() {
        return Vec::new();
    }
    if let Some(small) = candidates
        .iter()
        .map(ExponentVector::to_u32s)
        .collect::<Option<Vec<_>>>()
    {
        let mut max = vec![0u32; dim];
        for p in &small {
            for (m, &c) in max.iter_mut().zip(p) {
                *m = (*m).max(c);
            }
        }
        if let Some(grid) = Grid::new(&max, CELL_BUDGET) {
            if use_grid(grid.cells(), small.len()) {
                let mut marked = vec![false; grid.cells()];
                for p in &small {
                    marked[grid.index(p)] = true;
                }
                return staircase::minimal_marked(&grid, &marked)
                    .iter()
                    .map(|p| ExponentVector::from_u32s(p))
                    .collect();
            }
        }
    }
    minimal_by_scan(candidates)
}

/// Degree-ordered antichain scan; independent of the grid path.
pub(crate) fn minimal_by_scan(mut candidates: Vec<ExponentVector>) -> Vec<ExponentVector> {
    candidates.sort_by_cached_key(|v| (v.degree(), v.clone()));
    candidates.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    for c in candidates {
        if !kept.iter().any(|g| g.divides(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// Product through a dense grid, using `idx(g + h) = idx(g) + idx(h)`.
fn small_product(a: &MonomialIdeal, b: &MonomialIdeal) -> Option<Vec<ExponentVector>> {
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Some(Vec::new());
    }
    let sa: Vec<Vec<u32>> = a
        .generators
        .iter()
        .map(ExponentVector::to_u32s)
        .collect::<Option<_>>()?;
    let sb: Vec<Vec<u32>> = b
        .generators
        .iter()
        .map(ExponentVector::to_u32s)
        .collect::<Option<_>>()?;
    let max_of = |pts: &[Vec<u32>]| {
        let mut max = vec![0u64; a.dim];
        for p in pts {
            for (m, &c) in max.iter_mut().zip(p) {
                *m = (*m).max(c as u64);
            }
        }
        max
    };
    let (ma, mb) = (max_of(&sa), max_of(&sb));
    let max: Vec<u32> = ma
        .iter()
        .zip(&mb)
        .map(|(x, y)| u32::try_from(x + y).ok())
        .collect::<Option<_>>()?;
    let grid = Grid::new(&max, CELL_BUDGET)?;
    if !use_grid(grid.cells(), sa.len() * sb.len()) {
        return None;
    }
    let ia: Vec<usize> = sa.iter().map(|p| grid.index(p)).collect();
    let ib: Vec<usize> = sb.iter().map(|p| grid.index(p)).collect();
    let mut marked = vec![false; grid.cells()];
    for &x in &ia {
        for &y in &ib {
            marked[x + y] = true;
        }
    }
    Some(
        staircase::minimal_marked(&grid, &marked)
            .iter()
            .map(|p| ExponentVector::from_u32s(p))
            .collect(),
    )
}
