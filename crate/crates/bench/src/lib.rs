//! Inputs shared by the benchmarks.

use homcurve::{BinaryForm, LinearMap, Rational};

/// `x^(tau-k) y^k` pulled back by a fixed integer matrix, so the
/// classifier has real work to do.
pub fn conjugated_monomial(tau: usize, k: usize) -> BinaryForm<Rational> {
    BinaryForm::monomial(tau, k)
        .pullback(&LinearMap::from_ints([[2, -1], [3, 1]]))
        .expect("the matrix is invertible")
}

pub fn random_like(tau: usize) -> BinaryForm<Rational> {
    let coeffs: Vec<i64> = (0..=tau as i64).map(|i| (i * 7 + 3) % 11 - 5).collect();
    BinaryForm::from_ints(&coeffs)
}
