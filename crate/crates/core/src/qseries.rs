//! Truncated q-expansions of cusp forms with exact integer coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `sum_{n=1}^{prec} a(n) q^n + O(q^{prec+1})`; the constant term is always zero.
///
/// `coeffs[i]` holds `a(i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a q-series needs prec >= 1".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(prec: usize) -> Self {
        assert!(prec >= 1);
        Self { coeffs: vec![BigInt::zero(); prec] }
    }

    /// `q^k` truncated at `prec`.
    pub fn monomial(k: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if (1..=prec).contains(&k) {
            s.coeffs[k - 1] = BigInt::one();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`; `n = 0` gives the (zero) constant term.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if n == 0 {
            return Some(ZERO.get_or_init(BigInt::zero));
        }
        self.coeffs.get(n - 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1 && prec <= self.prec(), "cannot truncate to {prec}");
        Self { coeffs: self.coeffs[..prec].to_vec() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1);
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// True iff `a(1), ..., a(n)` all vanish. Asking past the horizon is an error.
    pub fn is_zero_to(&self, n: usize) -> Result<bool> {
        if n > self.prec() {
            return Err(Error::InsufficientPrecision { needed: n, available: self.prec() });
        }
        Ok(self.coeffs[..n].iter().all(Zero::is_zero))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// Cauchy product. Both factors start at `q^1`, so every coefficient up to the
/// common horizon only involves known terms.
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let mut out = vec![BigInt::zero(); prec];
        // a(i+1) b(j+1) contributes to q^{i+j+2}, stored at index i+j+1.
        for (i, a) in self.coeffs.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(prec.saturating_sub(i + 1)).enumerate() {
                if !b.is_zero() {
                    out[i + j + 1] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

/// `prod_i basis[i]^exponents[i]`.
pub fn monomial_eval(basis: &[QSeries], exponents: &[u32]) -> Result<QSeries> {
    if basis.len() != exponents.len() {
        return Err(Error::Precondition(format!("{} exponents for {} series", exponents.len(), basis.len())));
    }
    let mut acc: Option<QSeries> = None;
    for (f, &e) in basis.iter().zip(exponents) {
        if e == 0 {
            continue;
        }
        let p = f.pow(e);
        acc = Some(match acc {
            None => p,
            Some(a) => &a * &p,
        });
    }
    acc.ok_or_else(|| Error::Precondition("monomial of total degree 0".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> QSeries {
        QSeries::from_i64(c).unwrap()
    }

    #[test]
    fn add_and_scale() {
        assert_eq!(&s(&[1, 2]) + &s(&[1, -1]), s(&[2, 1]));
        assert_eq!(s(&[1, 0, 1]).scale(&BigInt::zero()), QSeries::zero(3));
        let f = s(&[3, -1, 4, 1, -5]);
        assert_eq!(&f + &f.scale(&BigInt::from(-1)), QSeries::zero(5));
    }

    #[test]
    fn products() {
        assert_eq!(&s(&[1, 0]) * &s(&[1, 0]), s(&[0, 1]));
        assert_eq!(&s(&[1, -1, 0, 0]) * &s(&[1, 1, 0, 0]), s(&[0, 1, 0, -1]));
        assert_eq!(&s(&[1, 1, 1, 0]) * &s(&[1, 1, 1, 0]), s(&[0, 1, 2, 3]));
        // horizon is the smaller precision
        assert_eq!((&s(&[1, 1, 1]) * &s(&[1, 1])).prec(), 2);
    }

    #[test]
    fn monomials() {
        let basis = [s(&[1, 0, 0, 0]), s(&[1, 1, 0, 0]), s(&[0, 0, 1, 0])];
        assert_eq!(monomial_eval(&basis, &[1, 0, 0]).unwrap(), basis[0]);
        assert_eq!(monomial_eval(&basis, &[2, 0, 0]).unwrap(), s(&[0, 1, 0, 0]));
        assert_eq!(monomial_eval(&basis, &[1, 1, 0]).unwrap(), s(&[0, 1, 1, 0]));
        assert!(monomial_eval(&basis, &[0, 0, 0]).is_err());
        assert!(monomial_eval(&basis, &[1, 0]).is_err());
    }

    #[test]
    fn zero_checks() {
        assert!(QSeries::zero(10).is_zero_to(10).unwrap());
        let q50 = QSeries::monomial(50, 60);
        assert!(q50.is_zero_to(49).unwrap());
        assert!(!q50.is_zero_to(50).unwrap());
        assert!(matches!(q50.is_zero_to(61), Err(Error::InsufficientPrecision { needed: 61, available: 60 })));
        let f = s(&[2, -7, 1, 8]);
        assert!((&f - &f).is_zero_to(4).unwrap());
    }
}
