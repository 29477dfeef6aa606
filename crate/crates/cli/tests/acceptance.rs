//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process fails if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::process::Command;
use std::time::{Duration, Instant};

use monideal::normality::{gcd_condition, lcm_shift_representative};
use monideal::two_exponent::{
    check_lambda_inequality, generators_f, ideal_i, ideal_j, lambda_shift_violation, lambda_subadditivity_violation,
};
use monideal::{
    closure, dependence_witness, is_integrally_closed, np_member, pure_power_normality, quasinormality_check,
    socle_criterion_check, validate_certificate, ExponentVector, MembershipVerdict, MonomialIdeal, NormalityOptions,
    Quasinormality, Shortcut, TwoExponentSpec,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ev(c: &[u64]) -> ExponentVector {
    ExponentVector::from_u64s(c)
}

fn small(v: &ExponentVector) -> Vec<u64> {
    v.coords().iter().map(|c| c.to_u64().unwrap()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_monideal"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, r) = cli_json(&["is-normal", "--alpha", "4,5,7"]);
    ensure(code == 1, || format!("is-normal exit code {code}"))?;
    ensure(r["verdict"]["outcome"] == "not_normal", || {
        format!("verdict {}", r["verdict"])
    })?;
    ensure(r["verdict"]["failing_power"] == 2, || {
        format!("failing power {}", r["verdict"]["failing_power"])
    })?;
    ensure(r["witnesses"][0]["vector"] == serde_json::json!([2, 4, 5]), || {
        format!("witness {}", r["witnesses"][0]["vector"])
    })?;

    let i = MonomialIdeal::pure_powers(&ev(&[4, 5, 7]));
    let y3z3 = ev(&[0, 3, 3]);
    let j = closure(&i).map_err(|e| e.to_string())?;
    ensure(j.generators().contains(&y3z3), || {
        "(0,3,3) not a minimal closure generator".into()
    })?;
    let w = dependence_witness(&i, &y3z3).map_err(|e| e.to_string())?;
    let gens = i.generators();
    let mut factors: Vec<(Vec<u64>, u64)> = w
        .factors
        .iter()
        .map(|(idx, m)| (small(&gens[*idx]), m.to_u64().unwrap()))
        .collect();
    factors.sort();
    // (y^3 z^3)^5 = y^5 y^5 y^5 z^7 z^8: three copies of y^5, two of z^7, slack z
    let want = vec![(vec![0, 0, 7], 2), (vec![0, 5, 0], 3)];
    ensure(
        w.power == BigUint::from(5u32) && factors == want && w.slack == ev(&[0, 0, 1]),
        || format!("witness k={} factors {factors:?} slack {}", w.power, w.slack),
    )?;
    ensure(w.validate(&i, &y3z3), || "witness does not validate".into())?;
    let (code, r) = cli_json(&["member", "-i", "4,0,0;0,5,0;0,0,7", "-v", "0,3,3"]);
    ensure(code == 0 && r["witnesses"][0]["dependence"]["power"] == 5, || {
        "member report lacks k=5".into()
    })?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "I(4,5,7) not normal at power 2, witness (2,4,5); (0,3,3) in closure with k=5 witness ({:.2?})",
        start.elapsed()
    ))
}

/// `α ∈ {s, l}^n` up to permutation: `j` copies of `l` after `n - j` copies of `s`.
fn patterns(s: u64, l: u64, n: usize) -> Vec<ExponentVector> {
    (0..=n)
        .map(|j| ev(&(0..n).map(|i| if i < n - j { s } else { l }).collect::<Vec<_>>()))
        .collect()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for l in 2..=7u64 {
        for s in 1..l {
            for n in 2..=4usize {
                for alpha in patterns(s, l, n) {
                    cases += 1;
                    let r = pure_power_normality(&alpha, NormalityOptions::direct_only()).map_err(|e| e.to_string())?;
                    let powers: Vec<usize> = r.checked_powers.iter().map(|p| p.power).collect();
                    ensure(r.is_normal(), || format!("I({alpha}) reported not normal"))?;
                    ensure(r.shortcuts == vec![Shortcut::None], || {
                        format!("I({alpha}) used {:?}", r.shortcuts)
                    })?;
                    ensure(powers == (1..n).collect::<Vec<_>>(), || {
                        format!("I({alpha}) checked {powers:?}")
                    })?;
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(15 * 60))?;
    Ok(format!(
        "{cases} patterns normal by the direct route ({:.2?})",
        start.elapsed()
    ))
}

fn identity_specs() -> Vec<TwoExponentSpec> {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        for (s, l) in [(2, 3), (2, 7), (3, 5)] {
            for k in 1..=3 {
                out.push(TwoExponentSpec::new(m, n, s, l, k).unwrap());
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let specs = identity_specs();
    for sp in &specs {
        let e = |e: monideal::Error| e.to_string();
        let j1 = ideal_j(&sp.with_k(1).map_err(e)?).map_err(e)?;
        let jk = ideal_j(sp).map_err(e)?;
        let power = j1.power(sp.k as usize);
        let cl = closure(&ideal_i(sp)).map_err(e)?;
        ensure(power == jk, || format!("{sp:?}: J^k != J_k"))?;
        ensure(cl == jk, || format!("{sp:?}: closure(I_k) != J_k"))?;
    }
    within(start.elapsed(), Duration::from_secs(5 * 60))?;
    Ok(format!(
        "{} specs: J^k = J_k = closure(I_k) ({:.2?})",
        specs.len(),
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let e = |e: monideal::Error| e.to_string();
    let sp = TwoExponentSpec::new(1, 1, 2, 7, 3).map_err(e)?;
    let i3 = ideal_i(&sp);
    ensure(i3 == MonomialIdeal::pure_powers(&ev(&[6, 21])), || {
        format!("I_3 = {i3}")
    })?;
    let i3_three = ideal_i(&TwoExponentSpec::new(2, 1, 2, 7, 3).map_err(e)?);
    ensure(i3_three == MonomialIdeal::pure_powers(&ev(&[6, 6, 21])), || {
        format!("I_3 (m=2) = {i3_three}")
    })?;
    let mut f = generators_f(&sp).map_err(e)?;
    f.sort();
    let mut want: Vec<ExponentVector> = [[6, 0], [5, 4], [4, 7], [3, 11], [2, 14], [1, 18], [0, 21]]
        .iter()
        .map(|c| ev(c))
        .collect();
    want.sort();
    ensure(f == want, || format!("F_3 = {f:?}"))?;
    let c = closure(&i3).map_err(e)?;
    ensure(c.generators() == want.as_slice(), || format!("closure(I_3) = {c}"))?;
    Ok("F_3 = {(6,0),(5,4),(4,7),(3,11),(2,14),(1,18),(0,21)} minimally generates closure(x^6, y^21)".into())
}

fn criterion_5() -> Outcome {
    let mut triples = 0;
    let mut inequalities = 0;
    for s in 1..=6u32 {
        for l in s..=12 {
            for k in 1..=4 {
                triples += 1;
                let ws = check_lambda_inequality(s, l, k).map_err(|e| format!("s={s} l={l} k={k}: {e}"))?;
                ensure(ws.len() as u32 == k * s + 1 && ws.iter().all(|w| w.holds()), || {
                    format!("s={s} l={l} k={k}: incomplete witnesses")
                })?;
                inequalities += ws.len();
                if let Some((a, b)) = lambda_subadditivity_violation(s, l, k) {
                    return Err(format!("subadditivity fails at s={s} l={l} a={a} b={b}"));
                }
                if let Some(r) = lambda_shift_violation(s, l, k) {
                    return Err(format!("shift fails at s={s} l={l} k={k} r={r}"));
                }
            }
        }
    }
    Ok(format!(
        "{triples} (s,l,k) triples, {inequalities} inequalities, subadditivity and shift hold"
    ))
}

/// Outside verdicts are searched up to this power even when the separator
/// allows more.
const OUTSIDE_SEARCH_CAP: u64 = 24;

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut inside, mut outside, mut by_power, mut ideals) = (0, 0, 0, 0);
    let mut largest_k = 0;
    while ideals < 1000 {
        let dim = rng.gen_range(1..=4);
        let gens: Vec<Vec<u64>> = (0..rng.gen_range(1..=6))
            .map(|_| (0..dim).map(|_| rng.gen_range(0..=10)).collect())
            .filter(|g: &Vec<u64>| g.iter().any(|&x| x > 0))
            .collect();
        if gens.is_empty() {
            continue;
        }
        ideals += 1;
        let ideal = MonomialIdeal::minimalize(gens.iter().map(|g| ev(g)), dim).unwrap();
        let minimal: Vec<Vec<u64>> = ideal.generators().iter().map(small).collect();
        let top = small(&ideal.max_exponents().unwrap());
        for _ in 0..3 {
            let v: Vec<u64> = top.iter().map(|&m| rng.gen_range(0..=m)).collect();
            let point = ev(&v);
            let verdict = np_member(&ideal, &point).map_err(|e| e.to_string())?;
            ensure(validate_certificate(&ideal, &point, &verdict), || {
                format!("certificate rejected: {ideal} at {point}")
            })?;
            match &verdict {
                MembershipVerdict::Inside { .. } => {
                    inside += 1;
                    let w = dependence_witness(&ideal, &point).map_err(|e| e.to_string())?;
                    ensure(w.validate(&ideal, &point), || {
                        format!("witness rejected: {ideal} at {point}")
                    })?;
                    let k = w.power.to_u64().unwrap();
                    largest_k = largest_k.max(k);
                    let found = oracle::least_power(&minimal, &v, k);
                    ensure(found.is_some(), || {
                        format!("oracle finds no k <= {k}: {ideal} at {point}")
                    })?;
                    let k0 = found.unwrap();
                    if k0 <= 4 {
                        by_power += 1;
                        let target = point.scale(&BigUint::from(k0));
                        ensure(ideal.power(k0 as usize).contains_monomial(&target).unwrap(), || {
                            format!("power route disagrees: {ideal} at {point}, k={k0}")
                        })?;
                    }
                }
                MembershipVerdict::Outside { separator } => {
                    outside += 1;
                    let lcd = separator.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                    let bound = lcd.to_u64().unwrap_or(u64::MAX).min(OUTSIDE_SEARCH_CAP);
                    ensure(oracle::least_power(&minimal, &v, bound).is_none(), || {
                        format!("oracle finds a power for an outside point: {ideal} at {point}")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{ideals} ideals, {} queries ({inside} inside, {outside} outside), all certificates valid, \
         oracle agrees; {by_power} inside cases re-confirmed via ideal powers, largest k = {largest_k} ({:.2?})",
        inside + outside,
        start.elapsed()
    ))
}

/// m-primary ideals appearing in criteria 1-4.
fn corpus() -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    let i = MonomialIdeal::pure_powers(&ev(&[4, 5, 7]));
    let j = closure(&i).unwrap();
    out.extend([i, j.clone(), j.power(2)]);
    for l in 2..=7u64 {
        for s in 1..l {
            for n in 2..=4usize {
                for alpha in patterns(s, l, n) {
                    let base = closure(&MonomialIdeal::pure_powers(&alpha)).unwrap();
                    for k in 1..n {
                        out.push(base.power(k));
                    }
                }
            }
        }
    }
    for sp in identity_specs() {
        out.push(ideal_i(&sp));
        out.push(ideal_j(&sp).unwrap());
    }
    out.push(MonomialIdeal::pure_powers(&ev(&[6, 21])));
    out.push(MonomialIdeal::pure_powers(&ev(&[6, 6, 21])));
    out.sort_by_key(|x| x.to_string());
    out.dedup();
    out
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let ideals = corpus();
    let mut not_closed = 0;
    for i in &ideals {
        ensure(i.is_m_primary(), || format!("{i} is not m-primary"))?;
        let (closed, _) = is_integrally_closed(i).map_err(|e| e.to_string())?;
        let socle = socle_criterion_check(i).map_err(|e| e.to_string())?;
        ensure(closed == socle, || {
            format!("routes disagree on {i}: closure {closed}, socle {socle}")
        })?;
        not_closed += usize::from(!closed);
    }
    Ok(format!(
        "{} ideals ({not_closed} not integrally closed), both routes agree ({:.2?})",
        ideals.len(),
        start.elapsed()
    ))
}

fn direct(alpha: &ExponentVector) -> Result<bool, String> {
    pure_power_normality(alpha, NormalityOptions::direct_only())
        .map(|r| r.is_normal())
        .map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (mut gcd_cases, mut shift_cases, mut not_normal) = (0, 0, 0);
    for a in 1..=9u64 {
        for b in 1..=9u64 {
            for c in 1..=9u64 {
                let alpha = ev(&[a, b, c]);
                let truth = direct(&alpha)?;
                not_normal += usize::from(!truth);
                if gcd_condition(&alpha) {
                    gcd_cases += 1;
                    ensure(truth, || format!("gcd shortcut says normal, direct says not: {alpha}"))?;
                }
                if let Some(rep) = lcm_shift_representative(&alpha) {
                    shift_cases += 1;
                    let reduced = direct(&rep)?;
                    ensure(reduced == truth, || {
                        format!("lcm shift {alpha} -> {rep} changes the verdict")
                    })?;
                }
                let default = pure_power_normality(&alpha, NormalityOptions::default()).map_err(|e| e.to_string())?;
                ensure(default.is_normal() == truth, || {
                    format!("shortcut route disagrees on {alpha}")
                })?;
            }
        }
    }
    let big = ev(&[2, 3, 13]);
    let rep = lcm_shift_representative(&big);
    ensure(rep == Some(ev(&[2, 3, 7])), || {
        format!("representative of (2,3,13) is {rep:?}")
    })?;
    let shortcut = pure_power_normality(&big, NormalityOptions::default()).map_err(|e| e.to_string())?;
    let (unreduced, reduced) = (direct(&big)?, direct(&ev(&[2, 3, 7]))?);
    ensure(unreduced == reduced && shortcut.is_normal() == reduced, || {
        format!(
            "(2,3,13): direct {unreduced}, (2,3,7) direct {reduced}, shortcut {}",
            shortcut.is_normal()
        )
    })?;
    Ok(format!(
        "729 vectors ({not_normal} not normal), gcd shortcut on {gcd_cases}, lcm shift on {shift_cases}, \
         all agree with the direct route; (2,3,13) and (2,3,7) both {} ({:.2?})",
        if reduced { "normal" } else { "not normal" },
        start.elapsed()
    ))
}

fn criterion_9() -> Outcome {
    let e = |e: monideal::Error| e.to_string();
    let q = quasinormality_check(&ev(&[4, 5, 7]), 20).map_err(e)?;
    ensure(q.verdict == Quasinormality::CounterexampleFound && q.validate(), || {
        format!("(4,5,7): {:?}", q.verdict)
    })?;
    let w = q.witness.clone().unwrap();
    let p = quasinormality_check(&ev(&[2, 3]), 10).map_err(e)?;
    ensure(p.verdict == Quasinormality::QuasinormalUpToBound, || {
        format!("(2,3): {:?}", p.verdict)
    })?;
    Ok(format!(
        "(4,5,7) counterexample x = {}, p = {} re-validated; (2,3) quasinormal up to 10",
        w.x, w.parts
    ))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(summary) => println!("PASS criterion {n}: {summary}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {why}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
