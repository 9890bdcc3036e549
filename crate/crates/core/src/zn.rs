//! Arithmetic in `Z_N` and roots of unity.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;

/// Canonical representative of `k mod n` in `0..n`.
pub fn reduce(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// `e^{2πik/n}` with `k` reduced first, so large exponents stay accurate.
pub fn root(n: usize, k: i64) -> C64 {
    let r = reduce(k, n);
    if (4 * r).is_multiple_of(n) {
        return quarter_turn(4 * r / n);
    }
    C64::from_polar(1.0, TAU * r as f64 / n as f64)
}

// i^q, exact.
fn quarter_turn(q: usize) -> C64 {
    match q % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `e^{iπ k / n}` for an integer `k`, reduced mod `2n`.
pub fn half_root(n: usize, k: i64) -> C64 {
    let r = k.rem_euclid(2 * n as i64) as usize;
    if (2 * r).is_multiple_of(n) {
        return quarter_turn(2 * r / n);
    }
    C64::from_polar(1.0, PI * r as f64 / n as f64)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of 2 in `Z_n`, `n` odd.
pub fn inv2(n: usize) -> usize {
    debug_assert!(n % 2 == 1);
    n.div_ceil(2) % n.max(1)
}
