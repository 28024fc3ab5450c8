//! Closed-form group orders, in exact integers.

use num_bigint::BigUint;

fn pow2(e: usize) -> BigUint {
    BigUint::from(1u8) << e
}

fn prod_four_pow_minus_one(upto: usize) -> BigUint {
    (1..=upto).fold(BigUint::from(1u8), |acc, i| acc * (pow2(2 * i) - 1u8))
}

/// `|C_n| = 2^{n^2+2n} prod_{i=1}^{n} (4^i - 1)`
pub fn clifford_order(n: usize) -> BigUint {
    pow2(n * n + 2 * n) * prod_four_pow_minus_one(n)
}

/// `|IN_n| = 2^{n^2+2n} prod_{i=1}^{n-1} (4^i - 1)`
pub fn inertia_order(n: usize) -> BigUint {
    pow2(n * n + 2 * n) * prod_four_pow_minus_one(n.saturating_sub(1))
}

/// Order of the centraliser of `s_1`, `|IN_n| / 2`.
pub fn phase_centralizer_order(n: usize) -> BigUint {
    inertia_order(n) >> 1
}

/// Size of the conjugacy class of `s_1`, `2(4^n - 1)`.
pub fn class_size(n: usize) -> BigUint {
    (pow2(2 * n) - 1u8) * 2u8
}

/// `|P_n| = 4^n`
pub fn pauli_order(n: usize) -> BigUint {
    pow2(2 * n)
}

/// Number of normal-form parameter tuples, `prod_{k=1}^{n} 2(4^k - 1) 4^k`.
pub fn normal_form_count(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u8), |acc, k| acc * level_count(k))
}

/// Number of `(L, M)` blocks at level `k`, `2(4^k - 1) 4^k`.
pub fn level_count(k: usize) -> BigUint {
    (pow2(2 * k) - 1u8) * 2u8 * pow2(2 * k)
}
