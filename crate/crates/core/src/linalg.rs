//! Exact linear algebra over the integers and rationals.
//!
//! Integer matrices are eliminated fraction-free (Bareiss), so no rational
//! arithmetic is needed for ranks, echelon forms or kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Content (gcd of entries, nonnegative) of an integer vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide by the content and make the first nonzero entry positive.
/// Returns `None` for the zero vector.
pub fn primitive(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = content(v);
    if g.is_zero() {
        return None;
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_neg { -g } else { g };
    Some(v.iter().map(|x| x / &g).collect())
}

/// In-place fraction-free forward elimination. Returns the pivot columns.
///
/// After the call the first `rank` rows form an integer row-echelon matrix
/// whose pivots are leading principal minors of the (row-permuted) input.
fn bareiss_forward(m: &mut IntMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                for j in c + 1..cols {
                    let v = &m[r][c] * &m[i][j];
                    m[i][j] = v / &prev;
                }
            } else {
                for j in c + 1..cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][c] = BigInt::zero();
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let mut work = m.to_vec();
    bareiss_forward(&mut work).len()
}

/// Determinant of a square integer matrix.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut work = m.to_vec();
    // Track row swaps for the sign.
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !work[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            work.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &work[k][k] * &work[i][j] - &work[i][k] * &work[k][j];
                work[i][j] = v / &prev;
            }
            work[i][k] = BigInt::zero();
        }
        prev = work[k][k].clone();
    }
    sign * &work[n - 1][n - 1]
}

/// Reduced row-echelon form over Q, each row scaled to a primitive integer
/// vector with positive pivot. Zero rows are dropped. Unique for the row space.
pub fn rref_primitive(m: &[Vec<BigInt>]) -> (IntMatrix, Vec<usize>) {
    let mut work = m.to_vec();
    let pivots = bareiss_forward(&mut work);
    work.truncate(pivots.len());
    for i in (0..pivots.len()).rev() {
        work[i] = primitive(&work[i]).expect("pivot row is nonzero");
        let pc = pivots[i];
        for k in 0..i {
            if work[k][pc].is_zero() {
                continue;
            }
            let a = work[i][pc].clone();
            let b = work[k][pc].clone();
            let row: Vec<BigInt> = work[k].iter().zip(&work[i]).map(|(x, y)| &a * x - &b * y).collect();
            work[k] = row;
        }
    }
    for row in work.iter_mut() {
        *row = primitive(row).expect("pivot row is nonzero");
    }
    (work, pivots)
}

/// Basis of the right kernel `{x : m x = 0}`, as primitive integer vectors in
/// reduced echelon form.
pub fn kernel(m: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let (r, pivots) = if m.is_empty() { (Vec::new(), Vec::new()) } else { rref_primitive(m) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Vec::new();
    }
    let l = pivots.iter().zip(&r).fold(BigInt::one(), |acc, (&p, row)| acc.lcm(&row[p]));
    let vecs: IntMatrix = free
        .iter()
        .map(|&f| {
            let mut x = vec![BigInt::zero(); ncols];
            x[f] = l.clone();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -(&row[f] * &l) / &row[p];
            }
            x
        })
        .collect();
    rref_primitive(&vecs).0
}

/// Basis of the left kernel `{y : y m = 0}`.
pub fn left_kernel(m: &[Vec<BigInt>]) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    kernel(&transpose(m), m.len())
}

pub fn transpose(m: &[Vec<BigInt>]) -> IntMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intersection of the row spaces of `a` and `b`, in canonical `rref_primitive` form.
pub fn intersect_row_spaces(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let mut stacked = a.to_vec();
    stacked.extend(b.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
    let combos = left_kernel(&stacked);
    let ncols = a.first().or(b.first()).map_or(0, Vec::len);
    let vecs: IntMatrix = combos
        .iter()
        .map(|y| (0..ncols).map(|j| a.iter().zip(y).map(|(row, c)| &row[j] * c).sum()).collect())
        .collect();
    if vecs.is_empty() {
        return Vec::new();
    }
    rref_primitive(&vecs).0
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn invert_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot_row = aug[c].clone();
                for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Kernel of a rational matrix, as integer vectors (denominators cleared per row first).
pub fn kernel_rational(m: &[Vec<BigRational>], ncols: usize) -> IntMatrix {
    let int_rows: IntMatrix = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    kernel(&int_rows, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[2, -1, -2, 1], &[1, 1, -1, 0], &[1, -2, -1, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&m(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), BigInt::from(0));
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 4]])), BigInt::from(18));
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(&[&[2, 4, 6], &[1, 1, 1]]);
        let b = m(&[&[3, 5, 7], &[0, 2, 4]]);
        assert_eq!(rref_primitive(&a), rref_primitive(&b));
        assert_eq!(rref_primitive(&a).0, m(&[&[1, 0, -1], &[0, 1, 2]]));
    }

    #[test]
    fn kernels() {
        let a = m(&[&[0, 0, 0, 1], &[1, 1, 2, 3], &[0, 1, 1, 3]]);
        let k = kernel(&a, 4);
        assert_eq!(k, m(&[&[1, 1, -1, 0]]));
        assert_eq!(mat_vec(&a, &k[0]), vec![BigInt::zero(); 3]);
        let full = m(&[&[1, 0], &[0, 1]]);
        assert!(kernel(&full, 2).is_empty());
        assert_eq!(left_kernel(&m(&[&[1, 2], &[2, 4]])), m(&[&[2, -1]]));
    }

    #[test]
    fn row_space_intersection() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[0, 1, 1], &[1, 1, 0]]);
        assert_eq!(intersect_row_spaces(&a, &b), m(&[&[1, 1, 0]]));
    }

    #[test]
    fn rational_inverse() {
        let r = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![r(2), r(1)], vec![r(7), r(4)]];
        let inv = invert_rational(&a).unwrap();
        assert_eq!(inv, vec![vec![r(4), r(-1)], vec![r(-7), r(2)]]);
        assert!(invert_rational(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }
}
