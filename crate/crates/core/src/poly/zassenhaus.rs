//! Factorization of squarefree integer polynomials: modular factorization,
//! linear Hensel lifting and exhaustive recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;

use super::modp::{self, Fp};
use super::UPoly;

const PRIMES: [u64; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn reduce(f: &UPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn to_big(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

fn mul_big(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn modulo(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|c| c.mod_floor(m)).collect()
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Lift `f = g h (mod p)` with `g` monic to `f = G H (mod p^k)`.
fn lift_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    assert_eq!(one, vec![1], "factors are not coprime mod p");
    let pb = BigInt::from(p);
    let mut big_g = to_big(g);
    let mut big_h = to_big(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = mul_big(&big_g, &big_h);
        let n = f.len().max(gh.len());
        let diff: Vec<BigInt> =
            (0..n).map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default()).collect();
        let e: Fp = {
            let mut e: Fp = diff.iter().map(|c| (c.mod_floor(&next) / &pj).to_u64().unwrap()).collect();
            while e.last() == Some(&0) {
                e.pop();
            }
            e
        };
        if !e.is_empty() {
            let (q, r) = modp::divrem(&modp::mul(&t, &e, p), g, p);
            let dh = modp::add(&modp::mul(&s, &e, p), &modp::mul(&q, h, p), p);
            add_scaled(&mut big_g, &r, &pj);
            add_scaled(&mut big_h, &dh, &pj);
        }
        big_g = modulo(&big_g, &next);
        big_h = modulo(&big_h, &next);
        pj = next;
    }
    (big_g, big_h)
}

fn add_scaled(target: &mut Vec<BigInt>, delta: &Fp, scale: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (t, &d) in target.iter_mut().zip(delta) {
        *t += scale * BigInt::from(d);
    }
}

/// Coefficient bound for any factor of `f` (Mignotte-style, generous).
fn factor_bound(f: &UPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    let n = f.degree().unwrap();
    (root << n) * f.lc().abs()
}

fn choose_prime(f: &UPoly) -> (u64, Vec<Fp>) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let n = f.degree().unwrap();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fp = reduce(f, p);
        if modp::deg(&fp) != Some(n) {
            continue;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        if modp::deg(&g) != Some(0) {
            continue;
        }
        let factors = modp::factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried == 4 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("no suitable prime below 100 for the modular factorization")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a squarefree polynomial of positive degree.
/// Factors are primitive with positive leading coefficient.
pub fn factor_squarefree(f: &UPoly) -> Vec<UPoly> {
    let f = f.primitive_part();
    let n = f.degree().expect("zero polynomial");
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f];
    }
    let (p, modular) = choose_prime(&f);
    if modular.len() == 1 {
        return vec![f];
    }
    let pb = BigInt::from(p);
    let bound = factor_bound(&f) * 2u32;
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }

    // Lift one factor at a time: f = g1 * (lc * g2 ... gr).
    let mut lifted = Vec::with_capacity(modular.len());
    let mut rest: Vec<BigInt> = modulo(f.coeffs(), &pk);
    let lc_mod = f.lc().mod_floor(&pb).to_u64().unwrap();
    for i in 0..modular.len() - 1 {
        let g = &modular[i];
        let h = modular[i + 1..].iter().fold(vec![lc_mod], |acc, x| modp::mul(&acc, x, p));
        let (big_g, big_h) = lift_pair(&rest, g, &h, p, k);
        lifted.push(big_g);
        rest = big_h;
    }
    // The last factor is the monic part of the remaining cofactor.
    let lc_inv = f.lc().modinv(&pk).expect("lc invertible mod p^k");
    lifted.push(modulo(&rest.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &pk));

    let mut remaining = f;
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in combinations(pool.len(), size) {
            let lc = remaining.lc();
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| modulo(&mul_big(&acc, &pool[i]), &pk));
            let candidate = UPoly::new(symmetric(&prod, &pk)).primitive_part();
            if let Some(q) = remaining.div_exact(&candidate) {
                found = Some((subset, candidate, q));
                break;
            }
        }
        match found {
            Some((subset, candidate, q)) => {
                out.push(candidate);
                remaining = q.primitive_part();
                pool = pool.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if remaining.degree().unwrap_or(0) > 0 {
        out.push(remaining);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    #[test]
    fn recombines_true_factors() {
        // (x^2 - 2)(x^2 + x + 7)(3x - 5)(x^3 - 2x + 11)
        let f = p(&[-2, 0, 1]).mul(&p(&[7, 1, 1])).mul(&p(&[-5, 3])).mul(&p(&[11, -2, 0, 1]));
        let mut got = factor_squarefree(&f);
        got.sort_by_key(|g| g.degree());
        assert_eq!(got.len(), 4);
        let prod = got.iter().fold(p(&[1]), |a, g| a.mul(g));
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_everywhere_reducible_mod_p() {
        // x^4 - 10 x^2 + 1 is irreducible over Q but splits mod every prime
        assert_eq!(factor_squarefree(&p(&[1, 0, -10, 0, 1])), vec![p(&[1, 0, -10, 0, 1])]);
    }

    #[test]
    fn large_coefficients() {
        let a = p(&[123456789, -987654321, 1]);
        let b = p(&[-1000000007, 0, 0, 999999937]);
        let mut got = factor_squarefree(&a.mul(&b));
        got.sort_by_key(|g| g.degree());
        assert_eq!(got, vec![a, b]);
    }
}
