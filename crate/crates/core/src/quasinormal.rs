//! Bounded quasinormality search for `Λ = <1/α_1, ..., 1/α_n> ⊂ Q_{>=0}`.
//!
//! `Λ` is quasinormal when every `x ∈ Λ` with `x >= p` (`p` a positive integer)
//! splits as `y_1 + ... + y_p` with every `y_i ∈ Λ` and `y_i >= 1`. Elements
//! are handled on the common scale `L = lcm(α)`: `x = t / L` with `t` in the
//! numerical semigroup generated by `L / α_i`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::newton::rational_string;

/// Largest scaled range `bound · lcm(α)` the search will allocate.
pub const SCALE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quasinormality {
    QuasinormalUpToBound,
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasinormalWitness {
    /// An element of `Λ` with `x >= parts`.
    pub x: BigRational,
    /// Number of parts `p` for which no decomposition exists.
    pub parts: u64,
}

impl Serialize for QuasinormalWitness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("QuasinormalWitness", 2)?;
        st.serialize_field("x", &rational_string(&self.x))?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasinormalityVerdict {
    pub alpha: ExponentVector,
    /// Elements `x <= bound` were examined.
    pub bound: u64,
    pub verdict: Quasinormality,
    pub witness: Option<QuasinormalWitness>,
}

impl QuasinormalityVerdict {
    /// Re-checks a counterexample by exhaustive decomposition search.
    pub fn validate(&self) -> bool {
        match (&self.verdict, &self.witness) {
            (Quasinormality::QuasinormalUpToBound, None) => true,
            (Quasinormality::CounterexampleFound, Some(w)) => {
                w.x >= BigRational::from_integer(BigInt::from(w.parts))
                    && matches!(in_monoid(&self.alpha, &w.x), Ok(true))
                    && matches!(has_decomposition(&self.alpha, &w.x, w.parts), Ok(false))
            }
            _ => false,
        }
    }
}

struct Scale {
    lcm: u64,
    steps: Vec<u64>,
}

fn scale_of(alpha: &ExponentVector) -> Result<Scale> {
    if let Some(index) = alpha.coords().iter().position(Zero::is_zero) {
        return Err(Error::ZeroExponent { index });
    }
    let lcm = alpha.coords().iter().fold(BigUint::one(), |acc, a| acc.lcm(a));
    let too_big = || Error::BudgetExceeded {
        what: "quasinormality scale",
        needed: lcm.to_string(),
        limit: SCALE_BUDGET.to_string(),
    };
    let l = lcm.to_u64().filter(|&l| l <= SCALE_BUDGET).ok_or_else(too_big)?;
    let steps = alpha
        .coords()
        .iter()
        .map(|a| l / a.to_u64().expect("divides the lcm"))
        .collect();
    Ok(Scale { lcm: l, steps })
}

fn require_coprime(alpha: &ExponentVector) -> Result<()> {
    let c = alpha.coords();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if !c[i].gcd(&c[j]).is_one() {
                return Err(Error::NotCoprime(c[i].to_string(), c[j].to_string()));
            }
        }
    }
    Ok(())
}

/// Fixed-size bitset over `0..=top`.
#[derive(Clone)]
struct Bits {
    words: Vec<u64>,
    top: usize,
}

impl Bits {
    fn new(top: usize) -> Self {
        Bits {
            words: vec![0; top / 64 + 1],
            top,
        }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= other << shift`, truncated at `top`.
    fn or_shifted(&mut self, other: &Bits, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        for k in (ws..self.words.len()).rev() {
            let src = k - ws;
            let mut w = other.words[src] << bs;
            if bs > 0 && src > 0 {
                w |= other.words[src - 1] >> (64 - bs);
            }
            self.words[k] |= w;
        }
        let extra = self.words.len() * 64 - (self.top + 1);
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }
}

/// Searches `x = t / L <= bound` for a failure of quasinormality; entries of
/// `alpha` must be pairwise relatively prime.
pub fn quasinormality_check(alpha: &ExponentVector, bound: u64) -> Result<QuasinormalityVerdict> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    let scale = scale_of(alpha)?;
    require_coprime(alpha)?;
    let top = bound
        .checked_mul(scale.lcm)
        .filter(|&t| t <= SCALE_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded {
            what: "quasinormality range",
            needed: format!("{bound} * {}", scale.lcm),
            limit: SCALE_BUDGET.to_string(),
        })? as usize;
    let l = scale.lcm as usize;

    let mut monoid = Bits::new(top);
    monoid.set(0);
    for t in 1..=top {
        if scale
            .steps
            .iter()
            .any(|&g| t >= g as usize && monoid.get(t - g as usize))
        {
            monoid.set(t);
        }
    }
    let mut at_least_one = Bits::new(top);
    for t in l..=top {
        if monoid.get(t) {
            at_least_one.set(t);
        }
    }
    // sums[p - 1]: totals of p elements of Λ, each >= 1
    let mut sums = vec![at_least_one.clone()];

    for t in l..=top {
        if !monoid.get(t) {
            continue;
        }
        for p in 2..=t / l {
            while sums.len() < p {
                let prev = sums.last().expect("nonempty");
                let mut next = Bits::new(top);
                for b in l..=top {
                    if at_least_one.get(b) {
                        next.or_shifted(prev, b);
                    }
                }
                sums.push(next);
            }
            if !sums[p - 1].get(t) {
                return Ok(QuasinormalityVerdict {
                    alpha: alpha.clone(),
                    bound,
                    verdict: Quasinormality::CounterexampleFound,
                    witness: Some(QuasinormalWitness {
                        x: BigRational::new(BigInt::from(t), BigInt::from(l)),
                        parts: p as u64,
                    }),
                });
            }
        }
    }
    Ok(QuasinormalityVerdict {
        alpha: alpha.clone(),
        bound,
        verdict: Quasinormality::QuasinormalUpToBound,
        witness: None,
    })
}

fn scaled(alpha: &ExponentVector, x: &BigRational) -> Result<Option<(Scale, u64)>> {
    let scale = scale_of(alpha)?;
    let t = x * BigRational::from_integer(BigInt::from(scale.lcm));
    if !t.is_integer() {
        return Ok(None);
    }
    Ok(t.to_integer().to_u64().map(|t| (scale, t)))
}

/// `x ∈ Λ`, by recursion over the generators.
pub fn in_monoid(alpha: &ExponentVector, x: &BigRational) -> Result<bool> {
    Ok(match scaled(alpha, x)? {
        Some((scale, t)) => Representable::new(&scale.steps).check(t),
        None => false,
    })
}

/// Exhaustive search for `x = y_1 + ... + y_p`, `y_i ∈ Λ`, `y_i >= 1`.
pub fn has_decomposition(alpha: &ExponentVector, x: &BigRational, parts: u64) -> Result<bool> {
    let Some((scale, t)) = scaled(alpha, x)? else {
        return Ok(false);
    };
    if parts == 0 {
        return Ok(t == 0);
    }
    let mut repr = Representable::new(&scale.steps);
    Ok(split(&mut repr, t, parts, t, scale.lcm))
}

/// Parts in non-increasing order, each at most `cap` and at least `unit`.
fn split(repr: &mut Representable, rest: u64, parts: u64, cap: u64, unit: u64) -> bool {
    if parts == 1 {
        return rest >= unit && rest <= cap && repr.check(rest);
    }
    let Some(room) = rest.checked_sub(unit * (parts - 1)) else {
        return false;
    };
    let hi = cap.min(room);
    (unit..=hi)
        .rev()
        .any(|y| repr.check(y) && split(repr, rest - y, parts - 1, y, unit))
}

struct Representable<'a> {
    steps: &'a [u64],
    memo: HashMap<u64, bool>,
}

impl<'a> Representable<'a> {
    fn new(steps: &'a [u64]) -> Self {
        Representable {
            steps,
            memo: HashMap::new(),
        }
    }

    fn check(&mut self, t: u64) -> bool {
        if t == 0 {
            return true;
        }
        if let Some(&known) = self.memo.get(&t) {
            return known;
        }
        let steps = self.steps;
        let ans = steps.iter().any(|&g| g <= t && self.check(t - g));
        self.memo.insert(t, ans);
        ans
    }
}
