//! Arithmetic in simple number fields `Q[x]/(m)` and polynomials over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg;
use crate::poly::UPoly;

pub type Elem = Vec<BigRational>;

/// `Q(theta)` with `theta` a root of an irreducible polynomial of degree >= 1.
#[derive(Clone, Debug)]
pub struct NumberField {
    /// Monic defining polynomial, constant term first.
    modulus: Vec<BigRational>,
    defining: UPoly,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

impl NumberField {
    pub fn new(defining: &UPoly) -> Self {
        let lc = rat(&defining.lc());
        let modulus = defining.coeffs().iter().map(|c| rat(c) / &lc).collect();
        Self { modulus, defining: defining.primitive_part() }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn defining(&self) -> &UPoly {
        &self.defining
    }

    pub fn zero(&self) -> Elem {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn from_rational(&self, q: BigRational) -> Elem {
        let mut e = self.zero();
        e[0] = q;
        e
    }

    pub fn from_int(&self, x: &BigInt) -> Elem {
        self.from_rational(rat(x))
    }

    pub fn theta(&self) -> Elem {
        if self.degree() == 1 {
            return self.from_rational(-self.modulus[0].clone());
        }
        let mut e = self.zero();
        e[1] = BigRational::one();
        e
    }

    pub fn is_zero(a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn rational_value(a: &Elem) -> Option<BigRational> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    fn reduce(&self, mut prod: Vec<BigRational>) -> Elem {
        let n = self.degree();
        for k in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.modulus[..n].iter().enumerate() {
                prod[k - n + i] -= &c * m;
            }
        }
        prod.truncate(n);
        prod.resize(n, BigRational::zero());
        prod
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut prod = vec![BigRational::zero(); 2 * self.degree()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    pub fn scale(&self, a: &Elem, c: &BigRational) -> Elem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        (0..e).fold(self.from_rational(BigRational::one()), |acc, _| self.mul(&acc, a))
    }

    /// Inverse of a nonzero element, by solving `a x = 1` with the
    /// multiplication matrix of `a`.
    pub fn inv(&self, a: &Elem) -> Elem {
        let n = self.degree();
        let cols: Vec<Elem> = (0..n)
            .map(|j| {
                let mut e = self.zero();
                e[j] = BigRational::one();
                self.mul(a, &e)
            })
            .collect();
        let m: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        let inv = linalg::invert_rational(&m).expect("inverse of zero in a number field");
        (0..n).map(|i| inv[i][0].clone()).collect()
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    /// Minimal polynomial over Q of `a`: primitive, positive leading coefficient.
    pub fn min_poly(&self, a: &Elem) -> UPoly {
        let n = self.degree();
        let mut powers = vec![self.from_rational(BigRational::one())];
        for d in 1..=n {
            powers.push(self.mul(&powers[d - 1], a));
            let m: Vec<Vec<BigRational>> = (0..n).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect();
            let ker = linalg::kernel_rational(&m, d + 1);
            if let Some(v) = ker.first() {
                return UPoly::new(v.clone()).primitive_part();
            }
        }
        unreachable!("1, a, ..., a^n are always dependent")
    }

    /// Coordinates of `b` in the power basis of `a`, when `a` generates the field.
    pub fn in_power_basis(&self, a: &Elem, b: &Elem) -> Option<Vec<BigRational>> {
        let n = self.degree();
        let mut powers = vec![self.from_rational(BigRational::one())];
        for d in 1..n {
            powers.push(self.mul(&powers[d - 1], a));
        }
        let m: Vec<Vec<BigRational>> = (0..n).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect();
        let inv = linalg::invert_rational(&m)?;
        Some((0..n).map(|i| inv[i].iter().zip(b).map(|(x, y)| x * y).sum()).collect())
    }
}

/// Polynomial over a number field, constant term first, trimmed.
pub type KPoly = Vec<Elem>;

fn trim(mut p: KPoly) -> KPoly {
    while p.last().is_some_and(NumberField::is_zero) {
        p.pop();
    }
    p
}

impl NumberField {
    /// Lift an integer polynomial.
    pub fn lift_poly(&self, p: &UPoly) -> KPoly {
        p.coeffs().iter().map(|c| self.from_int(c)).collect()
    }

    fn poly_rem(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let db = b.len() - 1;
        let lead_inv = self.inv(&b[db]);
        let mut r = a.clone();
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &lead_inv);
            for (i, bc) in b.iter().enumerate() {
                r[k - db + i] = self.sub(&r[k - db + i], &self.mul(&c, bc));
            }
            r = trim(r);
        }
        trim(r)
    }

    pub fn poly_monic(&self, a: &KPoly) -> KPoly {
        let inv = self.inv(a.last().expect("zero polynomial"));
        a.iter().map(|c| self.mul(c, &inv)).collect()
    }

    pub fn poly_gcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return a;
        }
        self.poly_monic(&a)
    }

    pub fn poly_derivative(&self, a: &KPoly) -> KPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, &BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Exact quotient `a / b` (b divides a).
    pub fn poly_div(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let db = b.len() - 1;
        let lead_inv = self.inv(&b[db]);
        let mut r = a.clone();
        let mut q = vec![self.zero(); a.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &lead_inv);
            for (i, bc) in b.iter().enumerate() {
                r[k - db + i] = self.sub(&r[k - db + i], &self.mul(&c, bc));
            }
            q[k - db] = c;
            r.pop();
        }
        debug_assert!(trim(r).is_empty(), "inexact polynomial division");
        trim(q)
    }

    /// Monic squarefree part.
    pub fn poly_squarefree(&self, a: &KPoly) -> KPoly {
        let g = self.poly_gcd(a, &self.poly_derivative(a));
        self.poly_monic(&self.poly_div(a, &g))
    }
}

/// Clear denominators of a rational vector: primitive integer vector.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * rat(&l)).to_integer()).collect()
}
