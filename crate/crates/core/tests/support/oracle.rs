//! Brute-force integral dependence: `x^v` is integral over `I` iff
//! `x^{kv} ∈ I^k` for some `k >= 1`, and `x^{kv} ∈ I^k` iff some choice of
//! `k` generators (with repetition) has exponent sum dividing `kv`.
//! Nothing here touches linear programming.

#![allow(dead_code)]

/// Whether `k` generators, repetition allowed, sum to something `<= target`.
pub fn power_contains(gens: &[Vec<u64>], target: &[u64], k: u64) -> bool {
    // floor[j][i]: least i-th coordinate among gens[j..]
    let dim = target.len();
    let mut floor = vec![vec![u64::MAX; dim]; gens.len() + 1];
    for j in (0..gens.len()).rev() {
        for i in 0..dim {
            floor[j][i] = floor[j + 1][i].min(gens[j][i]);
        }
    }
    let mut room = target.to_vec();
    search(gens, &floor, 0, k, &mut room)
}

fn search(gens: &[Vec<u64>], floor: &[Vec<u64>], j: usize, left: u64, room: &mut [u64]) -> bool {
    if left == 0 {
        return true;
    }
    if j == gens.len() {
        return false;
    }
    if room.iter().zip(&floor[j]).any(|(&r, &f)| f.saturating_mul(left) > r) {
        return false;
    }
    let g = &gens[j];
    let most = g
        .iter()
        .zip(room.iter())
        .filter(|(&a, _)| a > 0)
        .map(|(&a, &r)| r / a)
        .min()
        .unwrap_or(left)
        .min(left);
    for c in (0..=most).rev() {
        for (r, &a) in room.iter_mut().zip(g) {
            *r -= a * c;
        }
        let found = search(gens, floor, j + 1, left - c, room);
        for (r, &a) in room.iter_mut().zip(g) {
            *r += a * c;
        }
        if found {
            return true;
        }
    }
    false
}

/// Least `k` in `1..=bound` with `x^{kv} ∈ I^k`.
pub fn least_power(gens: &[Vec<u64>], v: &[u64], bound: u64) -> Option<u64> {
    (1..=bound).find(|&k| {
        let target: Vec<u64> = v.iter().map(|&x| x * k).collect();
        power_contains(gens, &target, k)
    })
}
