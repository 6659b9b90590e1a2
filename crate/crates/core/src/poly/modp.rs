//! Polynomials over a small prime field F_p (p < 2^31).

use rand::Rng;

pub(crate) type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn deg(a: &Fp) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial mod p");
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * bc % p) % p;
            }
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

fn powmod(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// Monic irreducible factors of a squarefree polynomial with `p` odd.
pub(crate) fn factor_squarefree(f: &Fp, p: u64, rng: &mut impl Rng) -> Vec<Fp> {
    assert!(p > 2);
    let mut f = monic(f, p);
    let mut out = Vec::new();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    // distinct-degree split
    while deg(&f).unwrap_or(0) >= 2 * d {
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g).unwrap_or(0) > 0 {
            equal_degree(&g, d, p, rng, &mut out);
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
        d += 1;
    }
    if deg(&f).unwrap_or(0) > 0 {
        out.push(monic(&f, p));
    }
    out.sort();
    out
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut impl Rng, out: &mut Vec<Fp>) {
    let n = deg(g).unwrap();
    if n == d {
        out.push(monic(g, p));
        return;
    }
    let e = (p as u128).pow(d as u32).saturating_sub(1) / 2;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&powmod(&a, e, g, p), &vec![1], p);
        let c = gcd(&b, g, p);
        let dc = deg(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            equal_degree(&c, d, p, rng, out);
            equal_degree(&divrem(g, &c, p).0, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_p() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // x^4 + 1 splits into two quadratics mod 3
        let f = vec![1, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, 3, &mut rng);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| deg(g) == Some(2)));
        assert_eq!(mul(&fs[0], &fs[1], 3), f);
        // (x-1)(x-2)(x-3)(x^2+1) mod 7
        let f = mul(&mul(&mul(&vec![6, 1], &vec![5, 1], 7), &vec![4, 1], 7), &vec![1, 0, 1], 7);
        let fs = factor_squarefree(&f, 7, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![4, 1], vec![5, 1], vec![6, 1]]);
    }

    #[test]
    fn bezout() {
        let a = vec![6, 1];
        let b = vec![1, 0, 1];
        let (g, s, t) = ext_gcd(&a, &b, 7);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, 7), &mul(&t, &b, 7), 7), vec![1]);
    }
}
