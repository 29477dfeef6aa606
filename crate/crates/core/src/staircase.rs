//! Dense box grids over small exponents.
//!
//! Cells are laid out row-major with the last coordinate fastest, so a linear
//! scan visits points in lexicographic order and every predecessor `v - e_i`
//! is visited before `v`. Index arithmetic is linear: `idx(a + b) = idx(a) + idx(b)`
//! whenever `a + b` still lies in the box.

use std::ops::ControlFlow;

/// Default cap on the number of cells a grid may allocate.
pub const CELL_BUDGET: usize = 1 << 24;

#[derive(Debug, Clone)]
pub(crate) struct Grid {
    extents: Vec<usize>,
    strides: Vec<usize>,
    cells: usize,
}

impl Grid {
    /// Grid covering `[0, max_0] x ... x [0, max_{n-1}]`, or `None` if it would
    /// exceed `budget` cells.
    pub fn new(max: &[u32], budget: usize) -> Option<Grid> {
        let extents: Vec<usize> = max.iter().map(|&m| m as usize + 1).collect();
        let mut strides = vec![0; extents.len()];
        let mut cells = 1usize;
        for i in (0..extents.len()).rev() {
            strides[i] = cells;
            cells = cells.checked_mul(extents[i])?;
            if cells > budget {
                return None;
            }
        }
        Some(Grid {
            extents,
            strides,
            cells,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn index(&self, p: &[u32]) -> usize {
        p.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    /// Visits every cell in lexicographic order.
    pub fn walk<B>(&self, mut visit: impl FnMut(usize, &[u32]) -> ControlFlow<B>) -> Option<B> {
        let d = self.dim();
        let mut p = vec![0u32; d];
        for idx in 0..self.cells {
            if let ControlFlow::Break(b) = visit(idx, &p) {
                return Some(b);
            }
            // odometer step
            for i in (0..d).rev() {
                if (p[i] as usize) + 1 < self.extents[i] {
                    p[i] += 1;
                    break;
                }
                p[i] = 0;
            }
        }
        None
    }

    /// True when some predecessor `p - e_i` of cell `idx` is flagged.
    #[inline]
    pub fn any_predecessor(&self, flags: &[bool], idx: usize, p: &[u32]) -> bool {
        p.iter().zip(&self.strides).any(|(&c, &s)| c > 0 && flags[idx - s])
    }
}

/// Minimal elements (lexicographically sorted) of the marked cells.
pub(crate) fn minimal_marked(grid: &Grid, marked: &[bool]) -> Vec<Vec<u32>> {
    debug_assert_eq!(marked.len(), grid.cells());
    let mut in_ideal = vec![false; grid.cells()];
    let mut out = Vec::new();
    grid.walk::<()>(|idx, p| {
        if grid.any_predecessor(&in_ideal, idx, p) {
            in_ideal[idx] = true;
        } else if marked[idx] {
            in_ideal[idx] = true;
            out.push(p.to_vec());
        }
        ControlFlow::Continue(())
    });
    out
}
