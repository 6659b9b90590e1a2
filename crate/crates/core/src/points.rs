//! Rational points of bounded height on a canonical model.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{CanonicalModel, CompiledPoly};

/// A point of projective space with coprime integer coordinates whose first
/// nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    #[serde(with = "crate::serde_int::vec")]
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Scale an integer vector to the normalized representative.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        linalg::primitive(&coords).map(|coords| Self { coords }).ok_or(Error::ZeroVector)
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.coords.iter().map(Signed::abs).max().unwrap_or_default()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Integer roots in `[-h, h]` of `c[0] + c[1] z + ... + c[d] z^d`.
fn integer_roots(c: &[i128], h: i64, exact: impl Fn(i64) -> bool) -> Vec<i64> {
    let mut c = c.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    match c.len() {
        0 => (-h..=h).collect(),
        1 => Vec::new(),
        2 => {
            if c[0] % c[1] != 0 {
                return Vec::new();
            }
            let z = -c[0] / c[1];
            if z.abs() <= h as i128 {
                vec![z as i64]
            } else {
                Vec::new()
            }
        }
        3 => {
            let disc = c[1].checked_mul(c[1]).zip(c[2].checked_mul(c[0]).and_then(|x| x.checked_mul(4)));
            let Some(disc) = disc.and_then(|(a, b)| a.checked_sub(b)) else {
                return (-h..=h).filter(|&z| exact(z)).collect();
            };
            if disc < 0 {
                return Vec::new();
            }
            let s = BigInt::from(disc).sqrt().to_i128().unwrap();
            if s * s != disc {
                return Vec::new();
            }
            let mut out: Vec<i64> = [-c[1] + s, -c[1] - s]
                .into_iter()
                .filter(|num| num % (2 * c[2]) == 0)
                .map(|num| num / (2 * c[2]))
                .filter(|z| z.abs() <= h as i128)
                .map(|z| z as i64)
                .collect();
            out.dedup();
            out
        }
        _ => (-h..=h).filter(|&z| exact(z)).collect(),
    }
}

/// Prefixes `(x0, ..., x_{g-2})` in `[-h, h]` starting with `first`, in which
/// the first nonzero entry (if any) is positive.
fn prefixes(first: i64, len: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![first]];
    for _ in 1..len {
        let mut next = Vec::with_capacity(out.len() * (2 * h as usize + 1));
        for p in out {
            let lo = if p.iter().all(|&x| x == 0) { 0 } else { -h };
            for v in lo..=h {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn gcd_is_one(x: &[i64]) -> bool {
    x.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1
}

/// All points of `model` with coprime coordinates of absolute value at most
/// `height`, sorted lexicographically by normalized coordinates.
pub fn search(model: &CanonicalModel, height: u64) -> Result<Vec<ProjPoint>> {
    if height == 0 {
        return Err(Error::Precondition("search height must be positive".into()));
    }
    let h = i64::try_from(height).map_err(|_| Error::Precondition("search height too large".into()))?;
    let compiled: Vec<CompiledPoly> = model.polys.iter().map(|p| p.compile()).collect();
    let (pilot, others) = compiled.split_first().expect("models have at least one equation");
    let g = model.genus;

    let mut points: Vec<ProjPoint> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            for prefix in prefixes(first, g - 1, h) {
                let mut full = prefix.clone();
                full.push(0);
                let exact = |z: i64| {
                    let mut x = prefix.clone();
                    x.push(z);
                    pilot.is_zero_at(&x)
                };
                let zero_prefix = prefix.iter().all(|&x| x == 0);
                let roots = if zero_prefix {
                    if exact(1) {
                        vec![1]
                    } else {
                        Vec::new()
                    }
                } else {
                    match pilot.specialize_last(&prefix) {
                        Some(c) => integer_roots(&c, h, exact),
                        None => (-h..=h).filter(|&z| exact(z)).collect(),
                    }
                };
                for z in roots {
                    full[g - 1] = z;
                    if !gcd_is_one(&full) || !others.iter().all(|p| p.is_zero_at(&full)) {
                        continue;
                    }
                    found.push(ProjPoint::from_i64(&full).expect("nonzero"));
                }
            }
            found
        })
        .collect();
    points.sort();
    points.dedup();
    Ok(points)
}

/// Exact membership test.
pub fn on_model(model: &CanonicalModel, p: &ProjPoint) -> bool {
    p.dim() == model.genus && model.contains(p.coords())
}
