//! Pure-power ideals with two distinct exponents.
//!
//! Variables split into an `x`-block of size `m` with exponent `s` and a
//! `y`-block of size `n` with exponent `l >= s`. For `k >= 1`, with
//! `λ_a = ⌈a·l/s⌉`, the set `F_k` consists of all monomials of `x`-degree
//! `ks - a` and `y`-degree `λ_a` for `a = 0..=ks`; `J_k` is the ideal it
//! generates and `I_k = (x_i^{ks}, y_j^{kl})`. This module builds those
//! objects and checks, instance by instance, that
//!
//! * every element of `F_k` is integral over `I_k`,
//! * `J_1^k = J_k`,
//! * `J_k` is exactly the integral closure of `I_k`,
//! * the socle of `J_k` lies outside `NP(I_k)`,
//! * `J_1` is normal.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;
use crate::newton::{self, validate_certificate};
use crate::normality;

/// Default cap on `|F_k|`.
pub const DEFAULT_GENERATOR_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TwoExponentSpec {
    /// Number of variables with exponent `s`.
    pub m: u32,
    /// Number of variables with exponent `l`.
    pub n: u32,
    pub s: u32,
    pub l: u32,
    pub k: u32,
}

impl TwoExponentSpec {
    pub fn new(m: u32, n: u32, s: u32, l: u32, k: u32) -> Result<Self> {
        if m == 0 || n == 0 || k == 0 || s == 0 {
            return Err(Error::InvalidSpec(format!(
                "m, n, s, k must be positive (m={m}, n={n}, s={s}, k={k})"
            )));
        }
        if l < s {
            return Err(Error::InvalidSpec(format!("need l >= s, got s={s}, l={l}")));
        }
        Ok(TwoExponentSpec { m, n, s, l, k })
    }

    /// Like [`TwoExponentSpec::new`], but exchanges the two blocks when
    /// `s > l`. The flag reports whether that happened.
    pub fn normalized(m: u32, n: u32, s: u32, l: u32, k: u32) -> Result<(Self, bool)> {
        if s > l {
            Ok((Self::new(n, m, l, s, k)?, true))
        } else {
            Ok((Self::new(m, n, s, l, k)?, false))
        }
    }

    pub fn with_k(&self, k: u32) -> Result<Self> {
        Self::new(self.m, self.n, self.s, self.l, k)
    }

    pub fn dim(&self) -> usize {
        (self.m + self.n) as usize
    }

    fn ks(&self) -> u64 {
        self.k as u64 * self.s as u64
    }

    pub fn lambda(&self, a: u64) -> u64 {
        lambda_ceil(a, self.s as u64, self.l as u64)
    }
}

/// `⌈a·l/s⌉` in integer arithmetic.
pub fn lambda_ceil(a: u64, s: u64, l: u64) -> u64 {
    assert!(s > 0, "s must be positive");
    let num = a as u128 * l as u128 + s as u128 - 1;
    u64::try_from(num / s as u128).expect("ceiling fits in u64")
}

/// One instance of `kl(ks-i-1) + λ_i >= (ks-i)(λ_{ks-1} - (s-r)/s)`, where
/// `(ks-1)l = ts + r` with `1 <= r <= s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaWitness {
    pub s: u32,
    pub l: u32,
    pub k: u32,
    pub i: u64,
    pub t: i128,
    pub r: i128,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl LambdaWitness {
    pub fn holds(&self) -> bool {
        let value = (self.k as i128 * self.s as i128 - 1) * self.l as i128;
        value == self.t * self.s as i128 + self.r && 1 <= self.r && self.r <= self.s as i128 && self.lhs >= self.rhs
    }
}

/// Evaluates the inequality for every `i` in `0..=ks`.
pub fn check_lambda_inequality(s: u32, l: u32, k: u32) -> Result<Vec<LambdaWitness>> {
    if s == 0 || k == 0 || l < s {
        return Err(Error::InvalidSpec(format!(
            "need l >= s >= 1 and k >= 1, got s={s}, l={l}, k={k}"
        )));
    }
    let (si, li, ki) = (s as i128, l as i128, k as i128);
    let ks = ki * si;
    let value = (ks - 1) * li;
    // remainder in 1..=s rather than 0..s
    let r = (value - 1).rem_euclid(si) + 1;
    let t = (value - r) / si;
    let lam = |a: i128| lambda_ceil(a as u64, s as u64, l as u64) as i128;
    let lam_top = lam(ks - 1);
    let q = |x: i128| BigRational::from_integer(BigInt::from(x));
    let mut out = Vec::with_capacity(ks as usize + 1);
    for i in 0..=ks {
        let lhs = q(ki * li * (ks - i - 1) + lam(i));
        let rhs = q(ks - i) * (q(lam_top) - BigRational::new(BigInt::from(si - r), BigInt::from(si)));
        let w = LambdaWitness {
            s,
            l,
            k,
            i: i as u64,
            t,
            r,
            lhs,
            rhs,
        };
        if !w.holds() {
            return Err(Error::LambdaViolation {
                i: w.i,
                lhs: w.lhs.to_string(),
                rhs: w.rhs.to_string(),
            });
        }
        out.push(w);
    }
    Ok(out)
}

/// First `(a, b)` in `0..=ks` with `λ_{a+b} > λ_a + λ_b`.
pub fn lambda_subadditivity_violation(s: u32, l: u32, k: u32) -> Option<(u64, u64)> {
    let ks = k as u64 * s as u64;
    let lam = |a| lambda_ceil(a, s as u64, l as u64);
    (0..=ks)
        .flat_map(|a| (0..=ks).map(move |b| (a, b)))
        .find(|&(a, b)| lam(a + b) > lam(a) + lam(b))
}

/// First `r` in `0..=s` with `λ_{ks+r} != kl + λ_r`.
pub fn lambda_shift_violation(s: u32, l: u32, k: u32) -> Option<u64> {
    let ks = k as u64 * s as u64;
    let kl = k as u64 * l as u64;
    let lam = |a| lambda_ceil(a, s as u64, l as u64);
    (0..=s as u64).find(|&r| lam(ks + r) != kl + lam(r))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of weak compositions of `total` into `parts` parts.
fn composition_count(total: u64, parts: u64) -> BigUint {
    binomial(total + parts - 1, parts - 1)
}

/// All weak compositions of `total` into `parts` parts, lexicographically
/// descending.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(rest: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=rest).rev() {
            prefix.push(first);
            go(rest - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// `|F_k|` without enumerating it.
pub fn generator_count(spec: &TwoExponentSpec) -> BigUint {
    let ks = spec.ks();
    (0..=ks)
        .map(|a| composition_count(ks - a, spec.m as u64) * composition_count(spec.lambda(a), spec.n as u64))
        .sum()
}

/// Vectors `(u | w)` with `|u| = x_degree(i)` and `|w| = y_degree(i)`.
fn block_vectors(
    spec: &TwoExponentSpec,
    degrees: impl Iterator<Item = (u64, u64)>,
    budget: u64,
) -> Result<Vec<ExponentVector>> {
    let mut out = Vec::new();
    for (xd, yd) in degrees {
        let xs = compositions(xd, spec.m as usize);
        let ys = compositions(yd, spec.n as usize);
        if (out.len() + xs.len() * ys.len()) as u64 > budget {
            return Err(Error::BudgetExceeded {
                what: "two-exponent generators",
                needed: format!("more than {budget}"),
                limit: budget.to_string(),
            });
        }
        for u in &xs {
            for w in &ys {
                let coords: Vec<u64> = u.iter().chain(w).copied().collect();
                out.push(ExponentVector::from_u64s(&coords));
            }
        }
    }
    Ok(out)
}

pub fn generators_f(spec: &TwoExponentSpec) -> Result<Vec<ExponentVector>> {
    generators_f_with_budget(spec, DEFAULT_GENERATOR_BUDGET)
}

/// `F_k`, aborting when it would hold more than `budget` vectors.
pub fn generators_f_with_budget(spec: &TwoExponentSpec, budget: u64) -> Result<Vec<ExponentVector>> {
    let count = generator_count(spec);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            what: "two-exponent generators",
            needed: count.to_string(),
            limit: budget.to_string(),
        });
    }
    let ks = spec.ks();
    block_vectors(spec, (0..=ks).map(|a| (ks - a, spec.lambda(a))), budget)
}

/// `J_k`, the ideal generated by `F_k`.
pub fn ideal_j(spec: &TwoExponentSpec) -> Result<MonomialIdeal> {
    MonomialIdeal::minimalize(generators_f(spec)?, spec.dim())
}

/// `I_k = (x_1^{ks}, ..., x_m^{ks}, y_1^{kl}, ..., y_n^{kl})`.
pub fn ideal_i(spec: &TwoExponentSpec) -> MonomialIdeal {
    let ks = spec.ks();
    let kl = spec.k as u64 * spec.l as u64;
    let alpha: Vec<u64> = (0..spec.m).map(|_| ks).chain((0..spec.n).map(|_| kl)).collect();
    MonomialIdeal::pure_powers(&ExponentVector::from_u64s(&alpha))
}

/// Generators of `(J_k : m) / J_k`: `x`-degree `ks - e`, `y`-degree
/// `λ_e - 1`, for `e = 1..=ks`.
pub fn socle_generators(spec: &TwoExponentSpec) -> Result<Vec<ExponentVector>> {
    let ks = spec.ks();
    block_vectors(
        spec,
        (1..=ks).map(|e| (ks - e, spec.lambda(e) - 1)),
        DEFAULT_GENERATOR_BUDGET,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub offending: Option<ExponentVector>,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckOutcome {
            name,
            passed: true,
            detail,
            offending: None,
        }
    }

    fn fail(name: &'static str, detail: String, offending: Option<ExponentVector>) -> Self {
        CheckOutcome {
            name,
            passed: false,
            detail,
            offending,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub spec: TwoExponentSpec,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// First generator present in exactly one of the two ideals.
fn first_difference(a: &MonomialIdeal, b: &MonomialIdeal) -> Option<ExponentVector> {
    a.generators()
        .iter()
        .find(|g| !b.generators().contains(g))
        .or_else(|| b.generators().iter().find(|g| !a.generators().contains(g)))
        .cloned()
}

/// Runs the five instance checks.
pub fn verify_all(spec: &TwoExponentSpec) -> Result<VerificationReport> {
    let j = ideal_j(spec)?;
    let i = ideal_i(spec);
    let mut checks = Vec::with_capacity(5);

    // 1. F_k ⊆ closure(I_k)
    let mut offending = None;
    for g in j.generators() {
        let verdict = newton::np_member(&i, g)?;
        if !verdict.is_inside() || !validate_certificate(&i, g, &verdict) {
            offending = Some(g.clone());
            break;
        }
    }
    checks.push(match offending {
        None => CheckOutcome::pass(
            "integral_over_pure_powers",
            format!("all {} generators of J_k lie in NP(I_k)", j.len()),
        ),
        Some(g) => CheckOutcome::fail("integral_over_pure_powers", format!("{g} is not in NP(I_k)"), Some(g)),
    });

    // 2. J_1^k = J_k, computed by repeated multiplication
    let j1 = ideal_j(&spec.with_k(1)?)?;
    let pow = j1.power(spec.k as usize);
    checks.push(if pow == j {
        CheckOutcome::pass(
            "power_identity",
            format!("J_1^{} has {} generators, equal to J_k", spec.k, pow.len()),
        )
    } else {
        let d = first_difference(&pow, &j);
        CheckOutcome::fail("power_identity", "J_1^k differs from J_k".into(), d)
    });

    // 3. closure(I_k) = J_k
    let closure = newton::closure(&i)?;
    checks.push(if closure == j {
        CheckOutcome::pass(
            "closure_identity",
            format!("closure(I_k) = J_k with {} generators", j.len()),
        )
    } else {
        let d = first_difference(&closure, &j);
        CheckOutcome::fail("closure_identity", "closure(I_k) differs from J_k".into(), d)
    });

    // 4. socle formula and socle outside NP(I_k)
    let socle = socle_generators(spec)?;
    let colon = j.colon_by_maximal();
    let predicted = MonomialIdeal::minimalize(j.generators().iter().cloned().chain(socle.iter().cloned()), j.dim())?;
    let mut socle_check = if predicted != colon {
        let d = first_difference(&predicted, &colon);
        CheckOutcome::fail("socle_outside", "socle formula disagrees with J_k : m".into(), d)
    } else {
        CheckOutcome::pass(
            "socle_outside",
            format!("{} socle generators, all outside NP(I_k)", socle.len()),
        )
    };
    if socle_check.passed {
        for v in &socle {
            let verdict = newton::np_member(&i, v)?;
            if j.contains_monomial(v)? || verdict.is_inside() || !validate_certificate(&i, v, &verdict) {
                socle_check = CheckOutcome::fail("socle_outside", format!("{v} is integral over I_k"), Some(v.clone()));
                break;
            }
        }
    }
    checks.push(socle_check);

    // 5. J_1 normal
    let report = normality::is_normal(&j1)?;
    checks.push(if report.is_normal() {
        CheckOutcome::pass(
            "normality",
            format!("powers 1..={} of J_1 integrally closed", report.checked_powers.len()),
        )
    } else {
        CheckOutcome::fail(
            "normality",
            format!("J_1^{} is not integrally closed", report.failing_power().unwrap_or(0)),
            report.failing_witness,
        )
    });

    Ok(VerificationReport { spec: *spec, checks })
}
