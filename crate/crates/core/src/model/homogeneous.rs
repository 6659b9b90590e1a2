use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// All exponent vectors of total degree `degree` in `nvars` variables,
/// in graded-lex order (`x0^d` first).
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    assert!(nvars >= 1, "need at least one variable");
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    #[serde(with = "crate::serde_int")]
    pub coeff: BigInt,
}

/// A homogeneous polynomial with integer coefficients. Terms are kept in
/// graded-lex order without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: Vec<Term>,
}

impl HomogeneousPoly {
    pub fn new(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars || e.iter().sum::<u32>() != degree {
                return Err(Error::Precondition(format!(
                    "exponent vector {e:?} is not of degree {degree} in {nvars} variables"
                )));
            }
            *map.entry(e).or_default() += c;
        }
        // BTreeMap ascends; graded-lex with x0 first is the reverse.
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coeff)| Term { exponents, coeff })
            .collect();
        Ok(Self { nvars, degree, terms })
    }

    /// Coefficients listed against [`monomials`]`(nvars, degree)`.
    pub fn from_dense(nvars: usize, degree: u32, coeffs: &[BigInt]) -> Self {
        let mons = monomials(nvars, degree);
        assert_eq!(mons.len(), coeffs.len());
        Self::new(nvars, degree, mons.into_iter().zip(coeffs.iter().cloned())).expect("monomials are homogeneous")
    }

    pub fn dense(&self) -> Vec<BigInt> {
        let lookup: BTreeMap<&Vec<u32>, &BigInt> = self.terms.iter().map(|t| (&t.exponents, &t.coeff)).collect();
        monomials(self.nvars, self.degree)
            .iter()
            .map(|m| lookup.get(m).map_or_else(BigInt::zero, |c| (*c).clone()))
            .collect()
    }

    /// Parse e.g. `"XY + WY + 2Y^2 - 3*W*Z"` over single-letter variables `vars`.
    pub fn parse(src: &str, vars: &[char]) -> Result<Self> {
        let err = |m: String| Error::Precondition(format!("cannot parse polynomial {src:?}: {m}"));
        let mut terms = Vec::new();
        let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        let mut degree = None;
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: BigInt =
                if i > start { chars[start..i].iter().collect::<String>().parse().unwrap() } else { BigInt::one() };
            let mut exps = vec![0u32; vars.len()];
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                let c = chars[i];
                i += 1;
                if c == '*' {
                    continue;
                }
                let v = vars.iter().position(|&x| x == c).ok_or_else(|| err(format!("unknown symbol {c:?}")))?;
                let mut e = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = chars[s..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent".into()))?;
                }
                exps[v] += e;
            }
            let d: u32 = exps.iter().sum();
            if *degree.get_or_insert(d) != d {
                return Err(err("not homogeneous".into()));
            }
            terms.push((exps, sign * coeff));
        }
        Self::new(vars.len(), degree.ok_or_else(|| err("empty".into()))?, terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, t| num_integer::Integer::gcd(&g, &t.coeff))
    }

    /// Content 1 and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.terms[0].coeff.is_negative() {
            g = -g;
        }
        Self {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|t| Term { exponents: t.exponents.clone(), coeff: &t.coeff / &g }).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.terms[0].coeff.is_positive()
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|t| {
                t.exponents
                    .iter()
                    .zip(x)
                    .fold(t.coeff.clone(), |acc, (&e, xi)| acc * num_traits::pow(xi.clone(), e as usize))
            })
            .sum()
    }

    /// Compact form for fast exact evaluation at small integer points.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|t| (t.exponents.clone(), t.coeff.to_i128().expect("coefficient fits in i128")))
                .collect(),
            source: self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        if self.degree == 0 {
            return Self { nvars: self.nvars, degree: 0, terms: Vec::new() };
        }
        let terms = self.terms.iter().filter(|t| t.exponents[var] > 0).map(|t| {
            let mut e = t.exponents.clone();
            let k = e[var];
            e[var] -= 1;
            (e, &t.coeff * BigInt::from(k))
        });
        Self::new(self.nvars, self.degree - 1, terms).expect("derivative stays homogeneous")
    }

    pub fn gradient(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.nvars).map(|v| self.derivative(v).eval(x)).collect()
    }

    /// Multiply by the variable `x_var`.
    pub fn mul_var(&self, var: usize) -> Self {
        Self::new(
            self.nvars,
            self.degree + 1,
            self.terms.iter().map(|t| {
                let mut e = t.exponents.clone();
                e[var] += 1;
                (e, t.coeff.clone())
            }),
        )
        .expect("degree shift")
    }

    /// Pull back along the linear map sending `x_i` to the linear form
    /// `images[i]` (coefficients in `k` new variables).
    pub fn substitute(&self, images: &[Vec<BigInt>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let k = images.first().map_or(0, Vec::len);
        assert!(images.iter().all(|l| l.len() == k));
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for t in &self.terms {
            let mut partial: BTreeMap<Vec<u32>, BigInt> = BTreeMap::from([(vec![0; k], t.coeff.clone())]);
            for (var, &e) in t.exponents.iter().enumerate() {
                for _ in 0..e {
                    let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
                    for (mono, c) in &partial {
                        for (j, a) in images[var].iter().enumerate() {
                            if a.is_zero() {
                                continue;
                            }
                            let mut m = mono.clone();
                            m[j] += 1;
                            *next.entry(m).or_default() += c * a;
                        }
                    }
                    partial = next;
                }
            }
            for (m, c) in partial {
                *acc.entry(m).or_default() += c;
            }
        }
        Self::new(k, self.degree, acc).expect("substitution preserves homogeneity")
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || self.degree == 0 {
                factors.push(mag.to_string());
            }
            for (v, &e) in t.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// The normalized polynomial whose dense coefficients are `v`.
    pub fn from_kernel_vector(nvars: usize, degree: u32, v: &[BigInt]) -> Self {
        Self::from_dense(nvars, degree, &linalg::primitive(v).expect("nonzero kernel vector")).normalized()
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

/// A polynomial with `i128` coefficients for hot-loop evaluation; falls back
/// to big integers when an intermediate overflows.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Vec<u32>, i128)>,
    source: HomogeneousPoly,
}

impl CompiledPoly {
    pub fn eval(&self, x: &[i64]) -> BigInt {
        match self.eval_checked(x) {
            Some(v) => v.into(),
            None => self.source.eval(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()),
        }
    }

    pub fn is_zero_at(&self, x: &[i64]) -> bool {
        self.eval(x).is_zero()
    }

    fn eval_checked(&self, x: &[i64]) -> Option<i128> {
        let mut sum: i128 = 0;
        for (e, c) in &self.terms {
            let mut v = *c;
            for (&k, &xi) in e.iter().zip(x) {
                for _ in 0..k {
                    v = v.checked_mul(xi as i128)?;
                }
            }
            sum = sum.checked_add(v)?;
        }
        Some(sum)
    }

    /// Coefficients (constant first) of the univariate polynomial in the last
    /// variable obtained by fixing the others to `prefix`.
    pub fn specialize_last(&self, prefix: &[i64]) -> Option<Vec<i128>> {
        let d = self.source.degree as usize;
        let mut out = vec![0i128; d + 1];
        let last = prefix.len();
        for (e, c) in &self.terms {
            let mut v = *c;
            for (&k, &xi) in e[..last].iter().zip(prefix) {
                for _ in 0..k {
                    v = v.checked_mul(xi as i128)?;
                }
            }
            let slot = e[last] as usize;
            out[slot] = out[slot].checked_add(v)?;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 4).len(), 15);
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
        assert_eq!(monomials(3, 2)[1], vec![1, 1, 0]);
        assert_eq!(*monomials(3, 2).last().unwrap(), vec![0, 0, 2]);
    }

    #[test]
    fn parse_and_eval() {
        let q = HomogeneousPoly::parse("XY + WY + 2Y^2 + 2WZ + XZ + 6YZ + 3Z^2", &['W', 'X', 'Y', 'Z']).unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(q.terms().len(), 7);
        assert!(q.is_normalized());
        assert!(q.eval(&[b(2), b(-4), b(-3), b(2)]).is_zero());
        assert!(HomogeneousPoly::parse("X^2 + Y", &['X', 'Y']).is_err());
        assert_eq!(q.display_with(&["W", "X", "Y", "Z"]), "W*Y + 2*W*Z + X*Y + X*Z + 2*Y^2 + 6*Y*Z + 3*Z^2");
    }

    #[test]
    fn substitution() {
        // F = X^4 + Y^3 Z - Y Z^3 on the line X = 0, (0, s, t)
        let f = HomogeneousPoly::parse("X^4 + Y^3Z - YZ^3", &['X', 'Y', 'Z']).unwrap();
        let g = f.substitute(&[vec![b(0), b(0)], vec![b(1), b(0)], vec![b(0), b(1)]]);
        assert_eq!(g, HomogeneousPoly::parse("s^3t - st^3", &['s', 't']).unwrap());
    }

    #[test]
    fn normalization_and_gradient() {
        let f = HomogeneousPoly::parse("-2X^2 + 4XY", &['X', 'Y']).unwrap();
        assert_eq!(f.normalized(), HomogeneousPoly::parse("X^2 - 2XY", &['X', 'Y']).unwrap());
        let quartic = HomogeneousPoly::parse("X^4 + Y^4 - Z^4", &['X', 'Y', 'Z']).unwrap();
        assert_eq!(quartic.gradient(&[b(0), b(1), b(1)]), vec![b(0), b(4), b(-4)]);
        let c = quartic.compile();
        assert_eq!(c.specialize_last(&[1, 2]), Some(vec![17, 0, 0, 0, -1]));
        assert!(c.is_zero_at(&[0, 1, 1]));
    }
}
