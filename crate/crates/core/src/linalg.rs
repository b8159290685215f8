//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Clears denominators row by row.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) row echelon form. Returns the pivot columns.
pub fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_echelon(&mut integer_rows(rows)).len()
}

/// A basis of `{v : M v = 0}`. Each vector is a primitive integer vector
/// whose first nonzero entry is positive.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = integer_rows(rows);
    let pivots = bareiss_echelon(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for j in pc + 1..ncols {
                if !m[r][j].is_zero() {
                    acc += Rational::from_integer(m[r][j].clone()) * &v[j];
                }
            }
            v[pc] = -acc / Rational::from_integer(m[r][pc].clone());
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Scales a nonzero rational vector to coprime integers with a positive
/// leading entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let x = x / &g;
            Rational::from_integer(if lead_negative { -x } else { x })
        })
        .collect()
}
