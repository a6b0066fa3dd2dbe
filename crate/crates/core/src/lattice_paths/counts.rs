//! Closed-form rational Catalan, Narayana and Kreweras numbers.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("block count {k} outside 1..={a}")]
    InvalidBlockCount { k: u32, a: u32 },
    #[error("vector {r:?} does not satisfy sum of i*r_i = {a}")]
    InvalidVector { r: Vec<u32>, a: u32 },
}

pub(crate) fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `Cat(a,b) = C(a+b, a) / (a+b)`.
pub fn catalan(slope: Slope) -> BigUint {
    let (a, b) = (slope.a() as u64, slope.b() as u64);
    big_binomial(a + b, a) / (a + b)
}

/// `Nar(a,b;k) = C(a,k) C(b-1,k-1) / a`, the number of paths with `k` vertical runs.
pub fn narayana(slope: Slope, k: u32) -> Result<BigUint, CountError> {
    let a = slope.a();
    if k == 0 || k > a {
        return Err(CountError::InvalidBlockCount { k, a });
    }
    let b = slope.b() as u64;
    Ok(big_binomial(a as u64, k as u64) * big_binomial(b - 1, k as u64 - 1) / a)
}

/// `Krew(a,b;r) = (b-1)! / (r_1! ... r_a! (b-k)!)` with `k = r_1 + ... + r_a`.
/// `r[i-1]` is the number of vertical runs of length `i`.
pub fn kreweras(slope: Slope, r: &[u32]) -> Result<BigUint, CountError> {
    let a = slope.a();
    let weight: u64 = r.iter().enumerate().map(|(i, &ri)| (i as u64 + 1) * ri as u64).sum();
    if weight != a as u64 {
        return Err(CountError::InvalidVector { r: r.to_vec(), a });
    }
    let k: u64 = r.iter().map(|&x| x as u64).sum();
    let b = slope.b() as u64;
    if k > b {
        return Ok(BigUint::zero());
    }
    let denom = r.iter().fold(factorial(b - k), |acc, &ri| acc * factorial(ri as u64));
    Ok(factorial(b - 1) / denom)
}

/// Every vector `r` with `sum i*r_i = a` (multiplicities of the parts of a
/// partition of `a`), largest parts first.
pub fn kreweras_vectors(a: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur[part as usize - 1] += 1;
            go(rem - part, part, cur, out);
            cur[part as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(a, a, &mut vec![0; a as usize], &mut out);
    out
}
