//! Newton-polyhedron membership, integral closure and integral-dependence
//! witnesses for monomial ideals.
//!
//! A monomial `x^v` is integral over `I` iff `v` lies in
//! `NP(I) = conv(gens(I)) + R^n_{>=0}`. Every membership answer carries an
//! exact certificate: convex weights when inside, a nonnegative separating
//! functional when outside.

use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Degenerate, Error, Result};
use crate::exponent::{ExponentVector, Natural};
use crate::ideal::MonomialIdeal;
use crate::lp::{self, LpOutcome};
use crate::staircase::{Grid, CELL_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Inside,
    Outside,
}

/// Membership decision for `NP(I)` together with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipVerdict {
    /// Weights `λ_j` on generator indices with `Σ λ_j = 1`, `λ >= 0` and
    /// `Σ λ_j a_j <= v`.
    Inside { weights: Vec<(usize, BigRational)> },
    /// `c >= 0` with `c·a_j >= 1` for every generator and `c·v < 1`.
    Outside { separator: Vec<BigRational> },
}

impl MembershipVerdict {
    pub fn decision(&self) -> Decision {
        match self {
            MembershipVerdict::Inside { .. } => Decision::Inside,
            MembershipVerdict::Outside { .. } => Decision::Outside,
        }
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipVerdict::Inside { .. })
    }
}

pub(crate) fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

struct Weights<'a>(&'a [(usize, BigRational)]);

impl Serialize for Weights<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (j, w) in self.0 {
            map.serialize_entry(&j.to_string(), &rational_string(w))?;
        }
        map.end()
    }
}

/// `{"decision": "inside", "weights": {"1": "3/5", ...}}` or
/// `{"decision": "outside", "separator": ["1/4", ...]}`.
impl Serialize for MembershipVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MembershipVerdict", 2)?;
        st.serialize_field("decision", &self.decision())?;
        match self {
            MembershipVerdict::Inside { weights } => st.serialize_field("weights", &Weights(weights))?,
            MembershipVerdict::Outside { separator } => {
                let sep: Vec<String> = separator.iter().map(rational_string).collect();
                st.serialize_field("separator", &sep)?
            }
        }
        st.end()
    }
}

/// `(x^v)^k = x^slack · Π_j (x^{a_j})^{m_j}` with `Σ m_j = k`, which puts
/// `x^{kv}` in `I^k` and makes `x^v` a root of `z^k - x^{kv}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceWitness {
    pub power: BigUint,
    /// `(generator index, multiplicity)`, multiplicities summing to `power`.
    pub factors: Vec<(usize, BigUint)>,
    pub slack: ExponentVector,
}

impl Serialize for DependenceWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: Vec<(usize, Natural<'_>)> = self.factors.iter().map(|(j, m)| (*j, Natural(m))).collect();
        let mut st = serializer.serialize_struct("DependenceWitness", 3)?;
        st.serialize_field("power", &Natural(&self.power))?;
        st.serialize_field("factors", &factors)?;
        st.serialize_field("slack", &self.slack)?;
        st.end()
    }
}

impl DependenceWitness {
    /// Re-checks `Σ m_j a_j + slack = k·v` and `Σ m_j = k` exactly.
    pub fn validate(&self, ideal: &MonomialIdeal, v: &ExponentVector) -> bool {
        let dim = ideal.dim();
        if v.dim() != dim || self.slack.dim() != dim || self.power.is_zero() {
            return false;
        }
        let gens = ideal.generators();
        let mut total = vec![BigUint::zero(); dim];
        let mut count = BigUint::zero();
        for (j, mult) in &self.factors {
            let Some(g) = gens.get(*j) else {
                return false;
            };
            count += mult;
            for (t, a) in total.iter_mut().zip(g.coords()) {
                *t += a * mult;
            }
        }
        count == self.power
            && total
                .iter()
                .zip(self.slack.coords())
                .zip(v.coords())
                .all(|((t, s), x)| t + s == x * &self.power)
    }
}

fn require_polyhedron(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero_ideal() {
        return Err(Error::DegenerateIdeal(Degenerate::ZeroIdeal));
    }
    if ideal.is_unit_ideal() {
        return Err(Error::DegenerateIdeal(Degenerate::UnitIdeal));
    }
    Ok(())
}

fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Decides whether `v` lies in the Newton polyhedron of `ideal`.
pub fn np_member(ideal: &MonomialIdeal, v: &ExponentVector) -> Result<MembershipVerdict> {
    require_polyhedron(ideal)?;
    v.check_dim(ideal.dim())?;
    if let Some(j) = ideal.generators().iter().position(|g| g.divides(v)) {
        return Ok(MembershipVerdict::Inside {
            weights: vec![(j, BigRational::one())],
        });
    }
    let columns: Vec<&ExponentVector> = ideal.generators().iter().collect();
    Ok(match lp::solve(&columns, v) {
        LpOutcome::Inside(weights) => MembershipVerdict::Inside { weights },
        LpOutcome::Outside(separator) => MembershipVerdict::Outside { separator },
    })
}

/// Re-checks every inequality of a membership certificate in exact arithmetic.
pub fn validate_certificate(ideal: &MonomialIdeal, v: &ExponentVector, verdict: &MembershipVerdict) -> bool {
    let dim = ideal.dim();
    if v.dim() != dim {
        return false;
    }
    let gens = ideal.generators();
    match verdict {
        MembershipVerdict::Inside { weights } => {
            let mut total = BigRational::zero();
            let mut combo = vec![BigRational::zero(); dim];
            for (j, w) in weights {
                let Some(g) = gens.get(*j) else {
                    return false;
                };
                if w.is_negative() {
                    return false;
                }
                total += w;
                for (c, a) in combo.iter_mut().zip(g.coords()) {
                    *c += w * to_rational(a);
                }
            }
            total.is_one() && combo.iter().zip(v.coords()).all(|(c, x)| *c <= to_rational(x))
        }
        MembershipVerdict::Outside { separator } => {
            if separator.len() != dim || separator.iter().any(Signed::is_negative) {
                return false;
            }
            let dot = |p: &ExponentVector| -> BigRational {
                separator.iter().zip(p.coords()).map(|(c, x)| c * to_rational(x)).sum()
            };
            gens.iter().all(|g| dot(g) >= BigRational::one()) && dot(v) < BigRational::one()
        }
    }
}

/// `Σ v_i / α_i >= 1`: membership in the closure of `(x_1^{α_1}, ..., x_n^{α_n})`.
pub fn pure_power_member(alpha: &ExponentVector, v: &ExponentVector) -> Result<bool> {
    v.check_dim(alpha.dim())?;
    if let Some(index) = alpha.coords().iter().position(Zero::is_zero) {
        return Err(Error::ZeroExponent { index });
    }
    let sum: BigRational = v
        .coords()
        .iter()
        .zip(alpha.coords())
        .map(|(x, a)| BigRational::new(BigInt::from(x.clone()), BigInt::from(a.clone())))
        .sum();
    Ok(sum >= BigRational::one())
}

/// Integral-dependence witness built from the inside weights: `k` is their
/// common denominator and generator `j` appears `k·λ_j` times.
pub fn dependence_witness(ideal: &MonomialIdeal, v: &ExponentVector) -> Result<DependenceWitness> {
    let MembershipVerdict::Inside { weights } = np_member(ideal, v)? else {
        return Err(Error::OutsideClosure);
    };
    let lcd = |ws: &[(usize, BigRational)]| ws.iter().fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
    let mut k = lcd(&weights);
    let mut weights = weights;
    // Bland's rule with the columns reversed reaches another optimal vertex;
    // keep whichever needs the smaller power.
    if !k.is_one() {
        let gens = ideal.generators();
        let reversed: Vec<&ExponentVector> = gens.iter().rev().collect();
        if let LpOutcome::Inside(other) = lp::solve(&reversed, v) {
            let other: Vec<(usize, BigRational)> = other.into_iter().map(|(j, w)| (gens.len() - 1 - j, w)).collect();
            let k_other = lcd(&other);
            if k_other < k {
                k = k_other;
                weights = other;
            }
        }
    }
    let factors: Vec<(usize, BigUint)> = weights
        .iter()
        .map(|(j, w)| {
            let m = (w * BigRational::from_integer(k.clone())).to_integer();
            (*j, m.to_biguint().expect("nonnegative weight"))
        })
        .filter(|(_, m)| !m.is_zero())
        .collect();
    let power = k.to_biguint().expect("positive");
    let mut slack: Vec<BigUint> = v.scale(&power).into_coords();
    for (j, m) in &factors {
        for (s, a) in slack.iter_mut().zip(ideal.generators()[*j].coords()) {
            *s -= a * m;
        }
    }
    Ok(DependenceWitness {
        power,
        factors,
        slack: ExponentVector::new(slack)?,
    })
}

/// Minimal generators of the integral closure.
pub fn closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    closure_with_limit(ideal, None)
}

/// [`closure`] that aborts once more than `max_gens` generators are found.
pub fn closure_with_limit(ideal: &MonomialIdeal, max_gens: Option<usize>) -> Result<MonomialIdeal> {
    let scan = ClosureScan::new(ideal)?;
    let (gens, _) = scan.run(false, max_gens)?;
    Ok(MonomialIdeal::from_antichain(ideal.dim(), gens))
}

/// Lexicographically first minimal generator of the closure that is not in
/// the ideal, if there is one.
pub fn first_closure_gap(ideal: &MonomialIdeal) -> Result<Option<ExponentVector>> {
    let scan = ClosureScan::new(ideal)?;
    Ok(scan.run(true, None)?.1)
}

/// Lattice walk over the box `[0, M]`, `M` the componentwise maximum of the
/// generators. Minimal closure generators never leave that box: if
/// `v ∈ NP(I)` and `v_i > M_i` then `v - e_i ∈ NP(I)`.
/// Outside certificates against one ideal, scaled to integers: `w·p < t`
/// with `w·a >= t` for every generator `a`. Any of them settles a later query
/// without another LP.
#[derive(Debug, Default)]
pub(crate) struct SeparatorCache {
    separators: Vec<(Vec<BigInt>, BigInt)>,
}

impl SeparatorCache {
    pub(crate) fn separates(&self, p: &[u32]) -> bool {
        self.separators.iter().any(|(w, t)| {
            let dot: BigInt = w.iter().zip(p).map(|(a, &b)| a * BigInt::from(b)).sum();
            dot < *t
        })
    }

    pub(crate) fn remember(&mut self, separator: &[BigRational]) {
        let scale = separator.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let w = separator
            .iter()
            .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
            .collect();
        self.separators.push((w, scale));
    }
}

/// Whether `v` lies in `NP(I)`, consulting and extending `cache` first.
pub(crate) fn np_contains_cached(
    ideal: &MonomialIdeal,
    v: &ExponentVector,
    cache: &mut SeparatorCache,
) -> Result<bool> {
    if let Some(p) = v.to_u32s() {
        if cache.separates(&p) {
            return Ok(false);
        }
    }
    match np_member(ideal, v)? {
        MembershipVerdict::Inside { .. } => Ok(true),
        MembershipVerdict::Outside { separator } => {
            cache.remember(&separator);
            Ok(false)
        }
    }
}

struct ClosureScan<'a> {
    ideal: &'a MonomialIdeal,
    grid: Grid,
    separators: SeparatorCache,
}

impl<'a> ClosureScan<'a> {
    fn new(ideal: &'a MonomialIdeal) -> Result<Self> {
        require_polyhedron(ideal)?;
        let max = ideal.max_exponents().expect("nonzero ideal");
        let budget_error = || Error::BudgetExceeded {
            what: "closure box",
            needed: format!("{} cells", max.coords().iter().map(|m| m + 1u32).product::<BigUint>()),
            limit: CELL_BUDGET.to_string(),
        };
        let small = max.to_u32s().ok_or_else(budget_error)?;
        let grid = Grid::new(&small, CELL_BUDGET).ok_or_else(budget_error)?;
        Ok(ClosureScan {
            ideal,
            grid,
            separators: SeparatorCache::default(),
        })
    }

    /// Walks the box in lexicographic order. With `stop_at_gap` the walk ends
    /// at the first closure generator outside the ideal, which is returned
    /// separately.
    fn run(
        mut self,
        stop_at_gap: bool,
        max_gens: Option<usize>,
    ) -> Result<(Vec<ExponentVector>, Option<ExponentVector>)> {
        let cells = self.grid.cells();
        let mut is_gen = vec![false; cells];
        for g in self.ideal.generators() {
            let p = g.to_u32s().expect("inside the box");
            is_gen[self.grid.index(&p)] = true;
        }
        let mut in_ideal = vec![false; cells];
        let mut in_closure = vec![false; cells];
        let mut found: Vec<ExponentVector> = Vec::new();
        let columns: Vec<&ExponentVector> = self.ideal.generators().iter().collect();
        let grid = self.grid.clone();

        let outcome = grid.walk(|idx, p| {
            let member = is_gen[idx] || grid.any_predecessor(&in_ideal, idx, p);
            in_ideal[idx] = member;
            if grid.any_predecessor(&in_closure, idx, p) {
                in_closure[idx] = true;
                return ControlFlow::Continue(());
            }
            let inside = if member {
                true
            } else if self.separators.separates(p) {
                false
            } else {
                match lp::solve(&columns, &ExponentVector::from_u32s(p)) {
                    LpOutcome::Inside(_) => true,
                    LpOutcome::Outside(sep) => {
                        self.separators.remember(&sep);
                        false
                    }
                }
            };
            if inside {
                in_closure[idx] = true;
                let v = ExponentVector::from_u32s(p);
                if stop_at_gap && !member {
                    return ControlFlow::Break(Ok(v));
                }
                found.push(v);
                if let Some(limit) = max_gens {
                    if found.len() > limit {
                        return ControlFlow::Break(Err(Error::BudgetExceeded {
                            what: "closure generators",
                            needed: format!("more than {limit}"),
                            limit: limit.to_string(),
                        }));
                    }
                }
            }
            ControlFlow::Continue(())
        });
        match outcome {
            Some(Err(e)) => Err(e),
            Some(Ok(gap)) => Ok((found, Some(gap))),
            None => Ok((found, None)),
        }
    }
}
