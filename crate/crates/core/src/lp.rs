//! Exact simplex for Newton-polyhedron membership.
//!
//! For generators `a_1, ..., a_N` and a query point `v` we solve
//!
//! ```text
//!   maximize  Σ λ_j
//!   subject to Σ λ_j a_j <= v,   Σ λ_j <= 1,   λ >= 0
//! ```
//!
//! The origin is feasible, so there is no phase one. The optimum is 1 exactly
//! when `v` lies in `conv(a_j) + R^n_{>=0}`; the optimal basis then supplies the
//! convex weights. Otherwise the optimal dual `(y, t)` satisfies
//! `y·a_j + t >= 1` and `y·v + t < 1`, and `c = y / (1 - t)` separates.
//!
//! Pivoting is integer-preserving (every entry of the tableau is an integer
//! multiple of `1 / d`, `d` the last pivot), with Bland's rule for entering
//! and leaving variables. A fast pass runs in `i128` and falls back to
//! `BigInt` on overflow.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::exponent::ExponentVector;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    /// Convex weights `(column, λ)` with `Σ λ = 1`, `Σ λ a ≤ v`.
    Inside(Vec<(usize, BigRational)>),
    /// Nonnegative separator `c` with `c·a_j >= 1 > c·v`.
    Outside(Vec<BigRational>),
}

trait Scalar: Clone + Zero + One + Signed + Integer + CheckedMul + CheckedSub {
    fn from_exponent(e: &BigUint) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i128 {
    fn from_exponent(e: &BigUint) -> Option<Self> {
        e.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_exponent(e: &BigUint) -> Option<Self> {
        Some(BigInt::from(e.clone()))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) fn solve(columns: &[&ExponentVector], rhs: &ExponentVector) -> LpOutcome {
    if let Some(outcome) = Tableau::<i128>::build(columns, rhs).and_then(Tableau::run) {
        return outcome;
    }
    Tableau::<BigInt>::build(columns, rhs)
        .and_then(Tableau::run)
        .expect("arbitrary precision pivots cannot overflow")
}

struct Tableau<S> {
    /// Constraint rows `0..=n`, objective row last. Last column is the rhs.
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    denom: S,
    num_cols: usize,
    dim: usize,
}

impl<S: Scalar> Tableau<S> {
    fn build(columns: &[&ExponentVector], rhs: &ExponentVector) -> Option<Self> {
        let dim = rhs.dim();
        let num_cols = columns.len();
        let width = num_cols + dim + 2;
        let mut rows = vec![vec![S::zero(); width]; dim + 2];
        for (j, col) in columns.iter().enumerate() {
            for (i, a) in col.coords().iter().enumerate() {
                rows[i][j] = S::from_exponent(a)?;
            }
            rows[dim][j] = S::one();
            rows[dim + 1][j] = -S::one();
        }
        for i in 0..=dim {
            rows[i][num_cols + i] = S::one();
        }
        for (i, v) in rhs.coords().iter().enumerate() {
            rows[i][width - 1] = S::from_exponent(v)?;
        }
        rows[dim][width - 1] = S::one();
        Some(Tableau {
            rows,
            basis: (num_cols..num_cols + dim + 1).collect(),
            denom: S::one(),
            num_cols,
            dim,
        })
    }

    fn run(mut self) -> Option<LpOutcome> {
        let obj = self.dim + 1;
        let rhs = self.num_cols + self.dim + 1;
        loop {
            if self.rows[obj][rhs] == self.denom {
                return Some(self.inside());
            }
            let Some(q) = (0..rhs).find(|&j| self.rows[obj][j].is_negative()) else {
                return Some(self.outside());
            };
            let r = self.leaving_row(q)?;
            self.pivot(r, q)?;
        }
    }

    /// Minimum ratio test, ties to the smallest basic variable.
    fn leaving_row(&self, q: usize) -> Option<usize> {
        let rhs = self.num_cols + self.dim + 1;
        let mut best: Option<usize> = None;
        for i in 0..=self.dim {
            let a = &self.rows[i][q];
            if !a.is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    // rhs_i / a_i  vs  rhs_b / a_b
                    let lhs = self.rows[i][rhs].checked_mul(&self.rows[b][q])?;
                    let rhs_b = self.rows[b][rhs].checked_mul(a)?;
                    if lhs < rhs_b || (lhs == rhs_b && self.basis[i] < self.basis[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        // every column has a positive entry in some row, so the LP is bounded
        Some(best.expect("bounded packing LP"))
    }

    fn pivot(&mut self, r: usize, q: usize) -> Option<()> {
        let p = self.rows[r][q].clone();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                let scaled = p.checked_mul(x)?;
                let num = if f.is_zero() {
                    scaled
                } else {
                    scaled.checked_sub(&f.checked_mul(pr)?)?
                };
                debug_assert!(num.is_multiple_of(&self.denom));
                *x = num / self.denom.clone();
            }
        }
        self.denom = p;
        self.basis[r] = q;
        Some(())
    }

    fn inside(&self) -> LpOutcome {
        let rhs = self.num_cols + self.dim + 1;
        let d = self.denom.to_bigint();
        let mut weights: Vec<(usize, BigRational)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|&(i, &col)| col < self.num_cols && !self.rows[i][rhs].is_zero())
            .map(|(i, &col)| (col, BigRational::new(self.rows[i][rhs].to_bigint(), d.clone())))
            .collect();
        weights.sort_by_key(|(col, _)| *col);
        LpOutcome::Inside(weights)
    }

    fn outside(&self) -> LpOutcome {
        let obj = &self.rows[self.dim + 1];
        let cap_dual = obj[self.num_cols + self.dim].to_bigint();
        let scale = self.denom.to_bigint() - cap_dual;
        debug_assert!(scale.is_positive());
        LpOutcome::Outside(
            (0..self.dim)
                .map(|i| BigRational::new(obj[self.num_cols + i].to_bigint(), scale.clone()))
                .collect(),
        )
    }
}
