//! Class numbers, genus formulas and Sturm bounds for prime levels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A negative discriminant of an imaginary quadratic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 || d.rem_euclid(4) > 1 {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(Self(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    num_integer::gcd(num_integer::gcd(a, b), c)
}

/// Primitive reduced forms `(a, b, c)` of discriminant `d`:
/// `|b| <= a <= c`, and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(d: Discriminant) -> Vec<(i64, i64, i64)> {
    let d = d.value();
    let mut forms = Vec::new();
    let bmax = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    let parity = d.rem_euclid(2);
    let mut b = -bmax;
    while b <= bmax {
        if b.rem_euclid(2) != parity {
            b += 1;
            continue;
        }
        let ac = (b * b - d) / 4;
        let mut a = b.abs().max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                let boundary = b.abs() == a || a == c;
                if !(boundary && b < 0) && gcd3(a, b, c) == 1 {
                    forms.push((a, b, c));
                }
            }
            a += 1;
        }
        b += 1;
    }
    forms.sort_unstable();
    forms
}

/// Class number of the order of discriminant `d`, counting primitive reduced forms.
pub fn class_number(d: Discriminant) -> u64 {
    reduced_forms(d).len() as u64
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

fn check_level(n: u64) -> Result<()> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if n <= 3 {
        return Err(Error::LevelTooSmall(n));
    }
    Ok(())
}

/// Genus of X0(N) for prime N > 3.
pub fn genus_x0(n: u64) -> Result<u64> {
    check_level(n)?;
    Ok(if n % 12 == 1 { (n - 1) / 12 - 1 } else { (n + 1) / 12 })
}

/// Number of fixed points H(N) of the Fricke involution on X0(N).
pub fn h_count(n: u64) -> Result<u64> {
    check_level(n)?;
    let n_i = n as i64;
    let h4n = class_number(Discriminant::new(-4 * n_i)?);
    let twice = if n % 4 == 1 { h4n } else { h4n + class_number(Discriminant::new(-n_i)?) };
    if twice % 2 != 0 {
        return Err(Error::Internal { op: "h_count", detail: format!("odd class number sum {twice} for N = {n}") });
    }
    Ok(twice / 2)
}

/// Genus of X0+(N) = X0(N)/w_N.
pub fn genus_plus(n: u64) -> Result<u64> {
    let numerator = genus_x0(n)? + 1;
    let h = h_count(n)?;
    if h > numerator || (numerator - h) % 2 != 0 {
        return Err(Error::Internal {
            op: "genus_plus",
            detail: format!("g_N + 1 - H(N) = {numerator} - {h} is not a nonnegative even number"),
        });
    }
    Ok((numerator - h) / 2)
}

/// Genus data for one prime level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelProfile {
    pub level: u64,
    pub genus_x0: u64,
    pub ramification: u64,
    pub genus_plus: u64,
}

impl LevelProfile {
    pub fn new(level: u64) -> Result<Self> {
        Ok(Self { level, genus_x0: genus_x0(level)?, ramification: h_count(level)?, genus_plus: genus_plus(level)? })
    }
}

/// All primes `5 <= N <= bound` whose quotient X0+(N) has genus `target`.
pub fn enumerate_levels(target: u64, bound: u64) -> Vec<u64> {
    (5..=bound).filter(|&n| is_prime(n)).filter(|&n| genus_plus(n).map(|g| g == target).unwrap_or(false)).collect()
}

/// Index through which a weight-`weight` form on Gamma0(N) must vanish to vanish identically.
pub fn sturm_bound(n: u64, weight: u32) -> usize {
    (weight as u64 * (n + 1) / 12) as usize + 1
}

const SMALL_PRIME_LIMIT: u64 = 100_000;
const RHO_STEPS: u64 = 1 << 22;

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let bases = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &b in &bases {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &b in &bases {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Pollard-Brent).
fn rho(n: &BigInt) -> Option<BigInt> {
    for c in 1u32..20 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut g) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        let mut steps = 0u64;
        while g.is_one() && steps < RHO_STEPS {
            let mut q = BigInt::one();
            let ys = y.clone();
            for _ in 0..64 {
                x = f(&x);
                y = f(&f(&y));
                q = q * (&x - &y).abs() % n;
            }
            steps += 64;
            g = q.gcd(n);
            if g == *n {
                // Backtrack one step at a time over the last batch.
                let mut x2 = x.clone();
                let mut y2 = ys;
                g = BigInt::one();
                for _ in 0..64 {
                    x2 = f(&x2);
                    y2 = f(&f(&y2));
                    g = (&x2 - &y2).abs().gcd(n);
                    if !g.is_one() {
                        break;
                    }
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut found: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p < SMALL_PRIME_LIMIT && !n.is_one() {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            found.push(pb.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.to_u64().is_some_and(|v| v < SMALL_PRIME_LIMIT * SMALL_PRIME_LIMIT) || is_probable_prime(&m) {
            found.push(m);
            continue;
        }
        let d = rho(&m).ok_or_else(|| Error::TooLargeToFactor(m.to_string()))?;
        stack.push(&m / &d);
        stack.push(d);
    }
    found.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in found {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Fundamental discriminant of `Q(sqrt(d))` for a nonsquare integer `d`.
pub fn fundamental_discriminant_of(d: &BigInt) -> Result<BigInt> {
    if d.is_zero() || (!d.is_negative() && d.sqrt().pow(2) == *d) {
        return Err(Error::Reducible);
    }
    let core: BigInt =
        factor_integer(d)?.into_iter().filter(|(_, e)| e % 2 == 1).fold(BigInt::one(), |acc, (p, _)| acc * p);
    let core = if d.is_negative() { -core } else { core };
    Ok(if core.mod_floor(&BigInt::from(4)) == BigInt::one() { core } else { core * 4 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> u64 {
        class_number(Discriminant::new(d).unwrap())
    }

    #[test]
    fn class_numbers() {
        assert_eq!(h(-3), 1);
        assert_eq!(h(-4), 1);
        assert_eq!(h(-23), 3);
        assert_eq!(h(-163), 1);
        assert_eq!(h(-44), 3);
        assert_eq!(h(-548), 8);
        assert_eq!(h(-388), 4);
        assert_eq!(h(-16), 1);
    }

    #[test]
    fn bad_discriminants() {
        assert!(matches!(Discriminant::new(5), Err(Error::InvalidDiscriminant(5))));
        assert!(Discriminant::new(0).is_err());
        assert!(Discriminant::new(-5).is_err());
        assert!(Discriminant::new(-6).is_err());
    }

    #[test]
    fn genera() {
        assert_eq!(genus_x0(97).unwrap(), 7);
        assert_eq!(genus_x0(137).unwrap(), 11);
        assert_eq!(genus_x0(13).unwrap(), 0);
        assert!(matches!(genus_x0(91), Err(Error::NotPrime(91))));
        assert_eq!(h_count(11).unwrap(), 2);
        assert_eq!(h_count(137).unwrap(), 4);
        assert_eq!(h_count(97).unwrap(), 2);
        assert_eq!(genus_plus(137).unwrap(), 4);
        assert_eq!(genus_plus(97).unwrap(), 3);
        assert_eq!(genus_plus(11).unwrap(), 0);
    }

    #[test]
    fn level_lists() {
        assert_eq!(enumerate_levels(0, 12), vec![5, 7, 11]);
        assert_eq!(enumerate_levels(3, 1000), vec![97, 109, 113, 127, 139, 149, 151, 179, 239]);
        assert_eq!(enumerate_levels(4, 1000), vec![137, 173, 199, 251, 311]);
    }

    #[test]
    fn sturm() {
        assert_eq!(sturm_bound(97, 8), 66);
        assert_eq!(sturm_bound(137, 4), 47);
        assert_eq!(sturm_bound(137, 6), 70);
    }

    #[test]
    fn genus_plus_integral_below_1000() {
        for n in (5..1000).filter(|&n| is_prime(n)) {
            let num = genus_x0(n).unwrap() + 1;
            let h = h_count(n).unwrap();
            assert_eq!((num - h) % 2, 0, "N = {n}");
        }
    }

    #[test]
    fn integer_factorization() {
        let f = |n: i128| {
            factor_integer(&BigInt::from(n)).unwrap().into_iter().map(|(p, e)| (p.to_string(), e)).collect::<Vec<_>>()
        };
        assert_eq!(f(360), vec![("2".into(), 3), ("3".into(), 2), ("5".into(), 1)]);
        // 1000003 * 1000033 * 2^5
        assert_eq!(f(1_000_036_000_099 * 32), vec![("2".into(), 5), ("1000003".into(), 1), ("1000033".into(), 1)]);
        let big = BigInt::from(4_294_967_311u64) * BigInt::from(1_099_511_627_791u64);
        let got = factor_integer(&big).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(&got[0].0 * &got[1].0, big);
    }

    #[test]
    fn fundamental_discriminants() {
        let fd = |d: i64| fundamental_discriminant_of(&BigInt::from(d)).unwrap();
        assert_eq!(fd(-8), BigInt::from(-8));
        assert_eq!(fd(-12), BigInt::from(-3));
        assert_eq!(fd(-44), BigInt::from(-11));
        assert_eq!(fd(8), BigInt::from(8));
        assert_eq!(fd(20), BigInt::from(5));
        assert_eq!(fd(-16), BigInt::from(-4));
        assert!(fundamental_discriminant_of(&BigInt::from(49)).is_err());
    }
}
