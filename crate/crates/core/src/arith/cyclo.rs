//! Divisor and Möbius helpers, and the binomial recipe for cyclotomic
//! polynomials.
//!
//! For `d > 1`, `Φ_d(q) = ∏_{m | d} (1 - q^m)^{μ(d/m)}` and `Φ_1(q) = -(1 - q)`.
//! Multiplying or dividing by `1 - q^m` costs one pass over the coefficients,
//! so products and quotients of cyclotomic polynomials are applied through
//! these recipes instead of through dense polynomial multiplication.

use alloc::vec::Vec;

/// All positive divisors of `n`, ascending. Empty for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function; `mobius(1) == 1`. Panics on 0.
pub fn mobius(n: u64) -> i32 {
    assert!(n > 0, "mobius(0) is undefined");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Binomial exponents of `Φ_d`: `(m, μ(d/m))` for every divisor `m` with a
/// nonzero Möbius value, plus the overall sign (`-1` only for `d == 1`).
pub(crate) fn recipe(d: u64) -> (i32, Vec<(u64, i32)>) {
    assert!(d > 0);
    if d == 1 {
        return (-1, alloc::vec![(1, 1)]);
    }
    let parts = divisors(d)
        .into_iter()
        .filter_map(|m| {
            let mu = mobius(d / m);
            (mu != 0).then_some((m, mu))
        })
        .collect();
    (1, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_and_mobius() {
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), alloc::vec![1]);
        assert!(divisors(0).is_empty());
        let mu: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(mu, alloc::vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn recipe_degrees_match_totient() {
        // Σ m·μ(d/m) over divisors is φ(d).
        for d in 2..60u64 {
            let (_, parts) = recipe(d);
            let deg: i64 = parts.iter().map(|&(m, mu)| m as i64 * mu as i64).sum();
            let phi = (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count() as i64;
            assert_eq!(deg, phi, "d = {d}");
        }
    }
}
