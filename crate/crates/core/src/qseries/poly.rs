use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::QError;

/// A polynomial in `q` with integer coefficients; `coeffs[i]` multiplies `q^i`.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

/// JSON coefficient: a plain number when it fits in 64 bits, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Small(i64),
    Big(String),
}

impl Serialize for QPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Coeff> = self
            .coeffs
            .iter()
            .map(|c| i64::try_from(c).map_or_else(|_| Coeff::Big(c.to_string()), Coeff::Small))
            .collect();
        out.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Coeff>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Small(v) => Ok(BigInt::from(v)),
                Coeff::Big(t) => t.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPolynomial::from(coeffs))
    }
}

impl From<Vec<BigInt>> for QPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPolynomial { coeffs };
        p.trim();
        p
    }
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from(vec![BigInt::from(c)])
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from(coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Long division by `divisor`, requiring every quotient coefficient to be an integer.
    /// Returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &QPolynomial) -> Result<(QPolynomial, QPolynomial), QError> {
        let dd = divisor.degree().ok_or(QError::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(QError::NonIntegralQuotient);
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &c * dc;
            }
            quot[shift] = c;
        }
        Ok((QPolynomial::from(quot), QPolynomial::from(rem)))
    }

    /// Exact quotient; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial, QError> {
        let (quot, rem) = self.div_rem(divisor)?;
        if !rem.is_zero() {
            return Err(QError::DivisionRemainder { remainder: rem.to_string() });
        }
        Ok(quot)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let x = self.coeffs.get(i).cloned().unwrap_or_default();
                x + rhs.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect::<Vec<_>>();
        QPolynomial::from(coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        QPolynomial::from(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let m = c.abs();
            match (i, m.is_one()) {
                (0, _) => write!(f, "{m}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{m}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{m}*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QPolynomial {
    type Err = QError;

    /// Parses sums of terms `c`, `q`, `c*q`, `q^k`, `c*q^k`, e.g. `1+q+2*q^2` or `-1+q`.
    fn from_str(s: &str) -> Result<Self, QError> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(QError::Parse("empty input".into()));
        }
        let bad = |t: &str| QError::Parse(format!("bad term {t:?}"));
        let mut total = QPolynomial::zero();
        let mut start = 0;
        let bytes = text.as_bytes();
        for end in 1..=bytes.len() {
            if end < bytes.len() && bytes[end] != b'+' && bytes[end] != b'-' {
                continue;
            }
            let term = &text[start..end];
            start = end;
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, power) = match body.split_once('q') {
                None => (body, None),
                Some(("", p)) => ("", Some(p)),
                Some((c, p)) => (c.strip_suffix('*').filter(|c| !c.is_empty()).ok_or_else(|| bad(term))?, Some(p)),
            };
            let coef: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad(term))? };
            let k: usize = match power {
                None => 0,
                Some("") => 1,
                Some(p) => p.strip_prefix('^').ok_or_else(|| bad(term))?.parse().map_err(|_| bad(term))?,
            };
            if body.is_empty() {
                return Err(bad(term));
            }
            total = &total + &(&QPolynomial::monomial(k) * &QPolynomial::constant(sign * coef));
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64(c)
    }

    #[test]
    fn trimming_and_degree() {
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(poly(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(QPolynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(&a * &b, poly(&[-1, 0, 1]));
        assert_eq!(&a - &a, QPolynomial::zero());
        assert_eq!(&a + &b, poly(&[0, 2]));
    }

    #[test]
    fn division() {
        let p = poly(&[-1, 0, 0, 1]);
        assert_eq!(p.div_exact(&poly(&[-1, 1])).unwrap(), poly(&[1, 1, 1]));
        let (q, r) = poly(&[1, 0, 1]).div_rem(&poly(&[1, 1])).unwrap();
        assert_eq!((q, r), (poly(&[-1, 1]), poly(&[2])));
        assert!(matches!(poly(&[1, 0, 1]).div_exact(&poly(&[1, 1])), Err(QError::DivisionRemainder { .. })));
        assert_eq!(poly(&[1, 1]).div_rem(&poly(&[0, 2])), Err(QError::NonIntegralQuotient));
        assert_eq!(poly(&[1]).div_rem(&QPolynomial::zero()), Err(QError::DivisionByZero));
    }

    #[test]
    fn text_round_trip() {
        for c in [&[1, 1, 2][..], &[-1, 1], &[0, 0, 3], &[1, -2, 0, 1], &[5]] {
            let p = poly(c);
            assert_eq!(p.to_string().parse::<QPolynomial>().unwrap(), p, "{p}");
        }
        assert_eq!(poly(&[1, 1, 2]).to_string(), "1+q+2*q^2");
        assert_eq!(poly(&[-1, 1]).to_string(), "-1+q");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert!("1+*q".parse::<QPolynomial>().is_err());
        assert_eq!(serde_json::to_string(&poly(&[1, 0, 1])).unwrap(), "[1,0,1]");
        let big = QPolynomial::from(vec![BigInt::from(1), BigInt::from(10).pow(30)]);
        let j = serde_json::to_string(&big).unwrap();
        assert_eq!(j, r#"[1,"1000000000000000000000000000000"]"#);
        assert_eq!(serde_json::from_str::<QPolynomial>(&j).unwrap(), big);
    }
}
