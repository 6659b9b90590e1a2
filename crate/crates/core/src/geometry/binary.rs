use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::fundamental_discriminant_of;
use crate::error::{Error, Result};
use crate::model::HomogeneousPoly;
use crate::poly::{factor, UPoly};

/// A binary form `sum_i c[i] s^(d-i) t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BinaryForm {
    #[serde(with = "crate::serde_int::vec")]
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Coefficients of `s^d, s^(d-1) t, ..., t^d`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has at least one coefficient");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From a homogeneous polynomial in two variables `(s, t)`.
    pub fn from_poly(p: &HomogeneousPoly) -> Self {
        assert_eq!(p.nvars(), 2);
        let d = p.degree() as usize;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for t in p.terms() {
            coeffs[t.exponents[1] as usize] = t.coeff.clone();
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, s: &BigInt, t: &BigInt) -> BigInt {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(s.clone(), d - i) * num_traits::pow(t.clone(), i))
            .sum()
    }

    /// `f(x, 1)` as a univariate polynomial.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    fn homogenize(p: &UPoly) -> Self {
        Self::new(p.coeffs().iter().rev().cloned().collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// The root `(s : t)` of a linear form.
    pub fn linear_root(&self) -> (BigInt, BigInt) {
        assert_eq!(self.degree(), 1);
        (-self.coeffs[1].clone(), self.coeffs[0].clone())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree() as u32;
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| (vec![d - i as u32, i as u32], c.clone()));
        let p = HomogeneousPoly::new(2, d, terms).expect("binary form is homogeneous");
        f.write_str(&p.display_with(&["s", "t"]))
    }
}

/// `B = content * prod f_i^(e_i)` with primitive irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryFactorization {
    #[serde(with = "crate::serde_int")]
    pub content: BigInt,
    pub factors: Vec<(BinaryForm, usize)>,
}

impl BinaryFactorization {
    pub fn expand(&self) -> BinaryForm {
        self.factors
            .iter()
            .fold(BinaryForm::new(vec![self.content.clone()]), |acc, (f, e)| (0..*e).fold(acc, |a, _| a.mul(f)))
    }
}

/// Complete factorization over Q. Factors are sorted by degree, then by
/// coefficients; the root `(1 : 0)` appears as the factor `t`.
pub fn factor_binary_form(b: &BinaryForm) -> Result<BinaryFactorization> {
    if b.is_zero() {
        return Err(Error::ZeroForm);
    }
    let m = b.coeffs.iter().take_while(|c| c.is_zero()).count();
    let rest = BinaryForm::new(b.coeffs[m..].to_vec());
    let fact = factor(&rest.dehomogenize());
    let mut factors: Vec<(BinaryForm, usize)> =
        fact.factors.iter().map(|(g, e)| (BinaryForm::homogenize(g), *e)).collect();
    if m > 0 {
        factors.push((BinaryForm::from_i64(&[0, 1]), m));
    }
    factors.sort_by(|(a, ea), (b, eb)| a.degree().cmp(&b.degree()).then(a.cmp(b)).then(ea.cmp(eb)));
    Ok(BinaryFactorization { content: fact.content, factors })
}

/// Fundamental discriminant of the quadratic field split by an irreducible
/// quadratic form.
pub fn fundamental_discriminant(q: &BinaryForm) -> Result<BigInt> {
    if q.degree() != 2 {
        return Err(Error::Precondition(format!("expected a quadratic form, got degree {}", q.degree())));
    }
    let [a, b, c] = [&q.coeffs[0], &q.coeffs[1], &q.coeffs[2]];
    fundamental_discriminant_of(&(b * b - BigInt::from(4) * a * c))
}
