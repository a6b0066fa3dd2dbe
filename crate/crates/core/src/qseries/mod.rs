//! Exact `q`-analogs, cyclotomic reduction and cyclic sieving checks.

mod csp;
mod poly;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice_paths::{CountError, Slope};

pub use csp::{
    catalan_instance, csp_verify, homogeneous_instance, kreweras_instance, narayana_instance, CspInstance, CspReport,
    CspRow,
};
pub use poly::QPolynomial;
pub(crate) use csp::rank_profile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left remainder {remainder}")]
    DivisionRemainder { remainder: String },
    #[error("polynomial quotient has a non-integer coefficient")]
    NonIntegralQuotient,
    #[error("negative coefficient in {0}")]
    NegativeCoefficient(String),
    #[error("value at a primitive {k}-th root of unity is not an integer (residue {residue})")]
    NonIntegerValue { k: u32, residue: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_int(n: u32) -> QPolynomial {
    QPolynomial::from(vec![BigInt::from(1); n as usize])
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> QPolynomial {
    (1..=n).fold(QPolynomial::one(), |acc, i| &acc * &q_int(i))
}

/// The Gaussian binomial `[n choose k]_q`, by exact division of `q`-factorials.
pub fn q_binomial(n: u32, k: u32) -> Result<QPolynomial, QError> {
    if k > n {
        return Err(QError::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    q_factorial(n).div_exact(&(&q_factorial(k) * &q_factorial(n - k)))
}

fn nonnegative(p: QPolynomial) -> Result<QPolynomial, QError> {
    if p.has_nonnegative_coeffs() {
        Ok(p)
    } else {
        Err(QError::NegativeCoefficient(p.to_string()))
    }
}

/// `Cat_q(a,b) = [a+b-1]!_q / ([a]!_q [b]!_q)`.
pub fn q_catalan(slope: Slope) -> Result<QPolynomial, QError> {
    let (a, b) = (slope.a(), slope.b());
    nonnegative(q_factorial(a + b - 1).div_exact(&(&q_factorial(a) * &q_factorial(b)))?)
}

/// `Nar_q(a,b,k) = [a choose k]_q [b-1 choose k-1]_q / [a]_q`.
pub fn q_narayana(slope: Slope, k: u32) -> Result<QPolynomial, QError> {
    let (a, b) = (slope.a(), slope.b());
    if k == 0 || k > a {
        return Err(CountError::InvalidBlockCount { k, a }.into());
    }
    let num = &q_binomial(a, k)? * &q_binomial(b - 1, k - 1)?;
    nonnegative(num.div_exact(&q_int(a))?)
}

/// `Krew_q(a,b,r) = [b-1]!_q / ([r_1]!_q ... [r_a]!_q [b-k]!_q)`.
pub fn q_kreweras(slope: Slope, r: &[u32]) -> Result<QPolynomial, QError> {
    let (a, b) = (slope.a(), slope.b());
    let weight: u64 = r.iter().enumerate().map(|(i, &ri)| (i as u64 + 1) * ri as u64).sum();
    if weight != a as u64 {
        return Err(CountError::InvalidVector { r: r.to_vec(), a }.into());
    }
    let k: u32 = r.iter().sum();
    if k > b {
        return Ok(QPolynomial::zero());
    }
    let denom = r.iter().fold(q_factorial(b - k), |acc, &ri| &acc * &q_factorial(ri));
    nonnegative(q_factorial(b - 1).div_exact(&denom)?)
}

/// The cyclotomic polynomial `Phi_k = (q^k - 1) / prod_{d | k, d < k} Phi_d`.
pub fn cyclotomic(k: u32) -> QPolynomial {
    assert!(k >= 1, "cyclotomic polynomials start at k = 1");
    let mut p = &QPolynomial::monomial(k as usize) - &QPolynomial::one();
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        p = p.div_exact(&cyclotomic(d)).expect("Phi_d divides q^k - 1 for d | k");
    }
    p
}

/// The exact value of `p` at a primitive `k`-th root of unity, which exists as an
/// integer exactly when the residue of `p` modulo `Phi_k` is constant.
pub fn eval_at_primitive_root(p: &QPolynomial, k: u32) -> Result<BigInt, QError> {
    if k == 0 {
        return Err(QError::InvalidArgument("k must be positive".into()));
    }
    if k == 1 {
        return Ok(p.at_one());
    }
    let (_, residue) = p.div_rem(&cyclotomic(k))?;
    match residue.degree() {
        None => Ok(BigInt::zero()),
        Some(0) => Ok(residue.coeffs()[0].clone()),
        Some(_) => Err(QError::NonIntegerValue { k, residue: residue.to_string() }),
    }
}
