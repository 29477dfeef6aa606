//! Integral closedness and normality decisions.
//!
//! The direct route for normality checks that `I, I^2, ..., I^{n-1}` are all
//! integrally closed, which suffices for a monomial ideal in `n` variables.
//! For the closures `I(α)` of pure-power ideals, cheaper sufficient
//! conditions are tried first and recorded in the report.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;
use crate::newton::{self, first_closure_gap, SeparatorCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Normal,
    NotNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    /// At most two distinct exponents.
    TwoExponent,
    /// `gcd(α) > n - 2`.
    Gcd,
    /// All but one entry in `{s, l}` with `s | l`, and `l` divides the last one.
    DivisibilityChain,
    /// One entry reduced modulo the lcm of the others.
    LcmShift,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Ideal(MonomialIdeal),
    /// `I(α)`, the integral closure of `(x_1^{α_1}, ..., x_n^{α_n})`.
    Alpha(ExponentVector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    pub power: usize,
    pub integrally_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub subject: Subject,
    pub verdict: Verdict,
    pub checked_powers: Vec<PowerCheck>,
    /// A minimal generator of `closure(I^k)` missing from `I^k`, `k` the
    /// failing power. Relative to `decided_on` when that is set.
    pub failing_witness: Option<ExponentVector>,
    pub shortcuts: Vec<Shortcut>,
    /// The exponent vector the decision was actually made at, when an lcm
    /// shift moved it away from the subject.
    pub decided_on: Option<ExponentVector>,
}

impl NormalityReport {
    pub fn failing_power(&self) -> Option<usize> {
        self.checked_powers
            .iter()
            .find(|c| !c.integrally_closed)
            .map(|c| c.power)
    }

    pub fn is_normal(&self) -> bool {
        self.verdict == Verdict::Normal
    }
}

/// Which shortcut theorems `pure_power_normality` may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalityOptions {
    pub two_exponent: bool,
    pub gcd: bool,
    pub divisibility_chain: bool,
    pub lcm_shift: bool,
}

impl NormalityOptions {
    pub fn direct_only() -> Self {
        NormalityOptions {
            two_exponent: false,
            gcd: false,
            divisibility_chain: false,
            lcm_shift: false,
        }
    }
}

impl Default for NormalityOptions {
    fn default() -> Self {
        NormalityOptions {
            two_exponent: true,
            gcd: true,
            divisibility_chain: true,
            lcm_shift: true,
        }
    }
}

/// Whether `I` equals its integral closure; otherwise the lexicographically
/// first closure generator outside `I`.
pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<(bool, Option<ExponentVector>)> {
    let gap = first_closure_gap(ideal)?;
    Ok((gap.is_none(), gap))
}

/// Integral closedness through the socle: an m-primary `I` is integrally
/// closed when no element of `(I : m) \ I` is integral over `I`.
pub fn socle_criterion_check(ideal: &MonomialIdeal) -> Result<bool> {
    if let Some(i) = ideal.missing_pure_power() {
        return Err(Error::NotMPrimary(i));
    }
    if ideal.is_unit_ideal() {
        return Err(Error::NotMPrimary(0));
    }
    let socle = ideal.colon_by_maximal();
    let mut cache = SeparatorCache::default();
    for v in socle.generators() {
        if ideal.contains_monomial(v)? {
            continue;
        }
        if newton::np_contains_cached(ideal, v, &mut cache)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normality through integral closedness of `I^k`, `k = 1..=max(1, n-1)`.
pub fn is_normal(ideal: &MonomialIdeal) -> Result<NormalityReport> {
    let top = ideal.dim().saturating_sub(1).max(1);
    let mut checked = Vec::with_capacity(top);
    let mut power = ideal.clone();
    for k in 1..=top {
        if k > 1 {
            power = power.product(ideal)?;
        }
        let (closed, gap) = is_integrally_closed(&power)?;
        checked.push(PowerCheck {
            power: k,
            integrally_closed: closed,
        });
        if !closed {
            return Ok(NormalityReport {
                subject: Subject::Ideal(ideal.clone()),
                verdict: Verdict::NotNormal,
                checked_powers: checked,
                failing_witness: gap,
                shortcuts: vec![Shortcut::None],
                decided_on: None,
            });
        }
    }
    Ok(NormalityReport {
        subject: Subject::Ideal(ideal.clone()),
        verdict: Verdict::Normal,
        checked_powers: checked,
        failing_witness: None,
        shortcuts: vec![Shortcut::None],
        decided_on: None,
    })
}

/// Normality of `I(α)`, trying shortcut theorems before the direct check.
pub fn pure_power_normality(alpha: &ExponentVector, options: NormalityOptions) -> Result<NormalityReport> {
    if let Some(index) = alpha.coords().iter().position(Zero::is_zero) {
        return Err(Error::ZeroExponent { index });
    }
    let mut shortcuts = Vec::new();
    let mut current = alpha.clone();
    loop {
        if let Some(s) = applicable_shortcut(&current, options) {
            shortcuts.push(s);
            return Ok(NormalityReport {
                subject: Subject::Alpha(alpha.clone()),
                verdict: Verdict::Normal,
                checked_powers: Vec::new(),
                failing_witness: None,
                shortcuts,
                decided_on: (current != *alpha).then_some(current),
            });
        }
        if options.lcm_shift {
            if let Some(reduced) = lcm_shift_representative(&current) {
                shortcuts.push(Shortcut::LcmShift);
                current = reduced;
                continue;
            }
        }
        break;
    }
    let closure = newton::closure(&MonomialIdeal::pure_powers(&current))?;
    let mut report = is_normal(&closure)?;
    report.subject = Subject::Alpha(alpha.clone());
    if shortcuts.is_empty() {
        shortcuts.push(Shortcut::None);
    }
    report.shortcuts = shortcuts;
    report.decided_on = (current != *alpha).then_some(current);
    Ok(report)
}

fn applicable_shortcut(alpha: &ExponentVector, options: NormalityOptions) -> Option<Shortcut> {
    if options.two_exponent && two_exponent_pattern(alpha) {
        return Some(Shortcut::TwoExponent);
    }
    if options.gcd && gcd_condition(alpha) {
        return Some(Shortcut::Gcd);
    }
    if options.divisibility_chain && divisibility_chain(alpha) {
        return Some(Shortcut::DivisibilityChain);
    }
    None
}

pub(crate) fn distinct_values(values: &[BigUint]) -> Vec<BigUint> {
    let mut v = values.to_vec();
    v.sort();
    v.dedup();
    v
}

/// At most two distinct entries.
pub fn two_exponent_pattern(alpha: &ExponentVector) -> bool {
    distinct_values(alpha.coords()).len() <= 2
}

/// `gcd(α_1, ..., α_n) > n - 2`.
pub fn gcd_condition(alpha: &ExponentVector) -> bool {
    let g = alpha.coords().iter().fold(BigUint::zero(), |acc, a| acc.gcd(a));
    g + 2u32 > BigUint::from(alpha.dim())
}

/// Some entry `α_i` such that the others take values in `{s, l}` with
/// `s | l` and `l | α_i`.
pub fn divisibility_chain(alpha: &ExponentVector) -> bool {
    let coords = alpha.coords();
    if coords.len() < 2 {
        return false;
    }
    (0..coords.len()).any(|i| {
        let others: Vec<BigUint> = coords
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| a.clone())
            .collect();
        let vals = distinct_values(&others);
        if vals.len() > 2 {
            return false;
        }
        let (s, l) = (&vals[0], &vals[vals.len() - 1]);
        l.is_multiple_of(s) && coords[i].is_multiple_of(l)
    })
}

/// Replaces the largest entry `α_i` by `β ∈ [c, 2c)`, `β ≡ α_i (mod c)`,
/// `c = lcm` of the other entries, when `α_i >= 2c`.
pub fn lcm_shift_representative(alpha: &ExponentVector) -> Option<ExponentVector> {
    let coords = alpha.coords();
    if coords.len() < 2 {
        return None;
    }
    let (i, largest) = coords.iter().enumerate().rev().max_by(|a, b| a.1.cmp(b.1))?;
    let c = coords
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(BigUint::from(1u32), |acc, (_, a)| acc.lcm(a));
    if *largest < &c * 2u32 {
        return None;
    }
    let mut reduced = coords.to_vec();
    reduced[i] = &c + largest % &c;
    Some(ExponentVector::new(reduced).expect("dim >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::closure;

    fn ev(c: &[u64]) -> ExponentVector {
        ExponentVector::from_u64s(c)
    }

    fn closed_pure(alpha: &[u64]) -> MonomialIdeal {
        closure(&MonomialIdeal::pure_powers(&ev(alpha))).unwrap()
    }

    #[test]
    fn closure_is_integrally_closed() {
        let j = closed_pure(&[4, 5, 7]);
        assert_eq!(is_integrally_closed(&j).unwrap(), (true, None));
        let m = MonomialIdeal::pure_powers(&ev(&[1, 1]));
        assert_eq!(is_integrally_closed(&m).unwrap(), (true, None));
    }

    #[test]
    fn square_of_the_counterexample_closure_is_not_closed() {
        let j = closed_pure(&[4, 5, 7]);
        let (closed, witness) = is_integrally_closed(&j.power(2)).unwrap();
        assert!(!closed);
        assert_eq!(witness, Some(ev(&[2, 4, 5])));
    }

    #[test]
    fn socle_route_agrees_on_the_counterexample() {
        let j = closed_pure(&[4, 5, 7]);
        assert!(socle_criterion_check(&j).unwrap());
        assert!(!socle_criterion_check(&j.power(2)).unwrap());
        assert!(socle_criterion_check(&MonomialIdeal::pure_powers(&ev(&[1, 1]))).unwrap());
    }

    #[test]
    fn socle_route_requires_m_primary() {
        let i = MonomialIdeal::minimalize([ev(&[2, 0]), ev(&[1, 1])], 2).unwrap();
        assert_eq!(socle_criterion_check(&i).unwrap_err(), Error::NotMPrimary(1));
    }

    #[test]
    fn counterexample_is_not_normal() {
        let r = is_normal(&closed_pure(&[4, 5, 7])).unwrap();
        assert_eq!(r.verdict, Verdict::NotNormal);
        assert_eq!(r.failing_power(), Some(2));
        assert_eq!(r.failing_witness, Some(ev(&[2, 4, 5])));
    }

    #[test]
    fn two_exponent_instance_is_normal_directly() {
        let r = is_normal(&closed_pure(&[2, 2, 7])).unwrap();
        assert!(r.is_normal());
        assert_eq!(r.checked_powers.len(), 2);
    }

    #[test]
    fn maximal_ideal_is_normal() {
        let r = is_normal(&MonomialIdeal::pure_powers(&ev(&[1, 1, 1]))).unwrap();
        assert!(r.is_normal());
    }

    #[test]
    fn one_variable_checks_the_ideal_itself() {
        let r = is_normal(&MonomialIdeal::pure_powers(&ev(&[5]))).unwrap();
        assert!(r.is_normal());
        assert_eq!(
            r.checked_powers,
            vec![PowerCheck {
                power: 1,
                integrally_closed: true
            }]
        );
    }

    #[test]
    fn shortcut_selection() {
        let r = pure_power_normality(&ev(&[2, 7, 7, 2]), NormalityOptions::default()).unwrap();
        assert_eq!(r.shortcuts, vec![Shortcut::TwoExponent]);
        let r = pure_power_normality(&ev(&[6, 9, 9]), NormalityOptions::default()).unwrap();
        // two distinct values, so the pattern test fires first
        assert_eq!(r.shortcuts, vec![Shortcut::TwoExponent]);
        let opts = NormalityOptions {
            two_exponent: false,
            ..NormalityOptions::default()
        };
        let r = pure_power_normality(&ev(&[6, 9, 9]), opts).unwrap();
        assert_eq!(r.shortcuts, vec![Shortcut::Gcd]);
        let r = pure_power_normality(&ev(&[4, 5, 7]), NormalityOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotNormal);
        assert_eq!(r.shortcuts, vec![Shortcut::None]);
    }

    #[test]
    fn divisibility_chain_detection() {
        assert!(divisibility_chain(&ev(&[2, 4, 12])));
        assert!(divisibility_chain(&ev(&[12, 2, 4])));
        assert!(!divisibility_chain(&ev(&[2, 4, 6])));
        assert!(!divisibility_chain(&ev(&[4, 5, 7])));
    }

    #[test]
    fn lcm_shift_picks_the_representative() {
        assert_eq!(lcm_shift_representative(&ev(&[2, 3, 13])), Some(ev(&[2, 3, 7])));
        assert_eq!(lcm_shift_representative(&ev(&[2, 3, 7])), None);
        assert_eq!(lcm_shift_representative(&ev(&[2, 3, 12])), Some(ev(&[2, 3, 6])));
        assert_eq!(lcm_shift_representative(&ev(&[9])), None);
    }

    #[test]
    fn reduced_and_unreduced_agree() {
        let direct = pure_power_normality(&ev(&[2, 3, 13]), NormalityOptions::direct_only()).unwrap();
        let rep = pure_power_normality(&ev(&[2, 3, 7]), NormalityOptions::direct_only()).unwrap();
        let only_shift = NormalityOptions {
            lcm_shift: true,
            ..NormalityOptions::direct_only()
        };
        let shifted = pure_power_normality(&ev(&[2, 3, 13]), only_shift).unwrap();
        assert_eq!(direct.verdict, rep.verdict);
        assert_eq!(shifted.verdict, rep.verdict);
        assert_eq!(shifted.shortcuts, vec![Shortcut::LcmShift]);
        assert_eq!(shifted.decided_on, Some(ev(&[2, 3, 7])));
    }

    #[test]
    fn zero_exponent_is_rejected() {
        assert_eq!(
            pure_power_normality(&ev(&[3, 0]), NormalityOptions::default()).unwrap_err(),
            Error::ZeroExponent { index: 1 }
        );
    }
}
