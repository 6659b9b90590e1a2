//! Univariate polynomials over the integers and their factorization.

mod modp;
mod zassenhaus;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use zassenhaus::factor_squarefree;

/// Dense integer polynomial, coefficients from the constant term upward.
/// The representation is always trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly(Vec<BigInt>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        crate::linalg::content(&self.0)
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() - other.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    /// Pseudo-remainder `lc(b)^k a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let lb = b.lc();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            let shift = dr - db;
            let mut next: Vec<BigInt> = r.0.iter().map(|c| c * &lb).collect();
            for (i, c) in b.0.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = Self::new(next);
        }
        r
    }

    /// Exact quotient over Z, or `None` if `b` does not divide `self` in Z[x].
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        let lb = b.lc();
        for k in (0..=da - db).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let (qk, rem) = c.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[k + i] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient over Q, returned as a primitive integer polynomial.
    pub fn div_primitive(&self, b: &Self) -> Self {
        let lb = b.lc();
        let k = self.degree().unwrap_or(0) + 1;
        let scaled = self.scale(&num_traits::pow(lb, k));
        scaled.div_exact(b).expect("divisor does not divide over Q").primitive_part()
    }

    /// Squarefree decomposition `f = c * prod_i g_i^i` (Musser), primitive factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_primitive(&c);
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_primitive(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            c = c.div_primitive(&y);
            w = y;
            i += 1;
        }
        out
    }

    /// Rational root of a degree-1 polynomial.
    pub fn linear_root(&self) -> BigRational {
        assert_eq!(self.degree(), Some(1));
        BigRational::new(-self.0[0].clone(), self.0[1].clone())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if !first {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let show_mag = !mag.is_one() || i == 0;
            match (show_mag, i) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}*x")?,
                (false, 1) => write!(f, "x")?,
                (true, _) => write!(f, "{mag}*x^{i}")?,
                (false, _) => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Complete factorization over Q: `f = content * prod g^e` with primitive,
/// irreducible `g` of positive leading coefficient, sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(UPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly {
        self.factors.iter().fold(UPoly::constant(self.content.clone()), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }
}

/// Factor a nonzero integer polynomial into irreducibles over Q.
pub fn factor(f: &UPoly) -> Factorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut factors = Vec::new();
    for (part, e) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            factors.push((g, e));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| a.degree().cmp(&b.degree()).then(a.cmp(b)).then(ea.cmp(eb)));
    let product = factors.iter().fold(UPoly::constant(BigInt::one()), |acc, (g, e)| acc.mul(&g.pow(*e)));
    let content = f.lc() / product.lc();
    let out = Factorization { content, factors };
    debug_assert_eq!(&out.expand(), f);
    out
}
