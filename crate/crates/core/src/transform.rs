//! Projective changes of coordinates between models of the same curve.
//!
//! A matrix `M` acts on column vectors, so a point `x` maps to `M x` and a
//! polynomial `G` in the target coordinates pulls back to `G(M x)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Hyperplane;
use crate::linalg::{self, IntMatrix};
use crate::model::{CanonicalModel, HomogeneousPoly};
use crate::points::ProjPoint;

/// Image of a point; fails when `M` sends it to zero.
pub fn apply(m: &[Vec<BigInt>], p: &ProjPoint) -> Result<ProjPoint> {
    ProjPoint::new(linalg::mat_vec(m, p.coords()))
}

/// The image of the hyperplane `n . x = 0` under `x -> M x`, whose normal
/// is `M^(-T) n`.
pub fn map_hyperplane(m: &[Vec<BigInt>], h: &Hyperplane) -> Result<Hyperplane> {
    let mt: Vec<Vec<BigRational>> = linalg::transpose(m).iter().map(|r| r.iter().map(rational).collect()).collect();
    let inv =
        linalg::invert_rational(&mt).ok_or_else(|| Error::Precondition("singular change of coordinates".into()))?;
    let n: Vec<BigRational> =
        inv.iter().map(|row| row.iter().zip(h.normal()).map(|(a, b)| a * rational(b)).sum()).collect();
    Hyperplane::new(crate::field::clear_denominators(&n))
}

/// `G(M x)` for `G` written in the target coordinates.
pub fn pull_back(g: &HomogeneousPoly, m: &[Vec<BigInt>]) -> HomogeneousPoly {
    g.substitute(m)
}

fn rational(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Columns are the first `n` points; also returns the coefficients of the
/// last point in that basis, or `None` if the points are not a frame.
fn frame_basis(pts: &[&ProjPoint]) -> Option<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let n = pts[0].dim();
    let cols: Vec<Vec<BigRational>> = (0..n).map(|r| (0..n).map(|c| rational(&pts[c].coords()[r])).collect()).collect();
    let inv = linalg::invert_rational(&cols)?;
    let last: Vec<BigRational> = pts[n].coords().iter().map(rational).collect();
    let coeffs: Vec<BigRational> = inv.iter().map(|row| row.iter().zip(&last).map(|(a, b)| a * b).sum()).collect();
    if coeffs.iter().any(Zero::is_zero) {
        return None;
    }
    let scaled = (0..n).map(|r| (0..n).map(|c| &cols[r][c] * &coeffs[c]).collect()).collect();
    Some((scaled, coeffs))
}

/// The unique projective map (up to scale) with `M src[i] ~ dst[i]`, where
/// both lists are frames of `n + 1` points in `P^(n-1)`.
pub fn frame_map(src: &[&ProjPoint], dst: &[&ProjPoint]) -> Option<IntMatrix> {
    let n = src.first()?.dim();
    if src.len() != n + 1 || dst.len() != n + 1 {
        return None;
    }
    let (p, _) = frame_basis(src)?;
    let (q, _) = frame_basis(dst)?;
    let p_inv = linalg::invert_rational(&p)?;
    let m: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &q[i][k] * &p_inv[k][j]).sum()).collect()).collect();
    let l = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let flat: Vec<BigInt> = m.iter().flatten().map(|x| (x * rational(&l)).to_integer()).collect();
    let flat = linalg::primitive(&flat)?;
    Some(flat.chunks(n).map(<[BigInt]>::to_vec).collect())
}

/// First `n + 1` points of `pts` (in index order) forming a frame.
fn find_frame(pts: &[ProjPoint]) -> Option<Vec<usize>> {
    let n = pts.first()?.dim();
    let mut idx: Vec<usize> = (0..=n).collect();
    if pts.len() <= n {
        return None;
    }
    loop {
        let chosen: Vec<&ProjPoint> = idx.iter().map(|&i| &pts[i]).collect();
        if frame_basis(&chosen).is_some() {
            return Some(idx);
        }
        // Next combination in lexicographic order.
        let k = idx.len();
        let mut i = k;
        while i > 0 && idx[i - 1] == pts.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n)
                    .filter(|i| !t.contains(i))
                    .map(|i| {
                        let mut u = t.clone();
                        u.push(i);
                        u
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Every projective map carrying the point set `src` bijectively onto `dst`.
pub fn set_equivalences(src: &[ProjPoint], dst: &[ProjPoint]) -> Result<Vec<IntMatrix>> {
    if src.len() != dst.len() || src.is_empty() {
        return Ok(Vec::new());
    }
    let n = src[0].dim();
    let frame = find_frame(dst)
        .ok_or_else(|| Error::Precondition(format!("no {} of the target points are in general position", n + 1)))?;
    let targets: Vec<&ProjPoint> = frame.iter().map(|&i| &dst[i]).collect();
    let dst_set: BTreeSet<&ProjPoint> = dst.iter().collect();
    let mut found: Vec<IntMatrix> = ordered_tuples(src.len(), n + 1)
        .into_par_iter()
        .filter_map(|t| {
            let chosen: Vec<&ProjPoint> = t.iter().map(|&i| &src[i]).collect();
            let m = frame_map(&chosen, &targets)?;
            let images: BTreeSet<ProjPoint> = src.iter().map(|p| apply(&m, p)).collect::<Result<_>>().ok()?;
            (images.len() == src.len() && images.iter().all(|p| dst_set.contains(p))).then_some(m)
        })
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

/// Whether `x -> M x` carries the curve of `src` onto the curve of `dst`:
/// every defining polynomial of `dst` pulls back into the ideal of `src`.
pub fn maps_model(m: &[Vec<BigInt>], src: &CanonicalModel, dst: &CanonicalModel) -> bool {
    linalg::determinant(m) != BigInt::zero() && dst.polys.iter().all(|g| src.ideal_contains(&pull_back(g, m)))
}

/// A change of coordinates taking `src` with its points onto `dst` with its
/// points, if one exists.
pub fn model_equivalence(
    src: &CanonicalModel,
    src_pts: &[ProjPoint],
    dst: &CanonicalModel,
    dst_pts: &[ProjPoint],
) -> Result<Option<IntMatrix>> {
    if src.genus != dst.genus {
        return Ok(None);
    }
    Ok(set_equivalences(src_pts, dst_pts)?.into_iter().find(|m| maps_model(m, src, dst)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn frames_determine_maps() {
        let m = mat(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let src = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1]), pt(&[1, 1, 1]), pt(&[2, -1, 5])];
        let dst: Vec<ProjPoint> = src.iter().map(|p| apply(&m, p).unwrap()).collect();
        fn refs(v: &[ProjPoint]) -> Vec<&ProjPoint> {
            v.iter().take(4).collect()
        }
        assert_eq!(frame_map(&refs(&src), &refs(&dst)), Some(m.clone()));
        assert_eq!(set_equivalences(&src, &dst).unwrap(), vec![m]);
        let collinear = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0]), pt(&[0, 0, 1])];
        assert_eq!(frame_map(&collinear.iter().collect::<Vec<_>>(), &refs(&src)), None);
    }

    #[test]
    fn hyperplanes_follow_points() {
        let m = mat(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let h = Hyperplane::from_i64(&[1, -1, 2]).unwrap();
        let image = map_hyperplane(&m, &h).unwrap();
        for p in [pt(&[1, 1, 0]), pt(&[2, 0, -1]), pt(&[0, 2, 1])] {
            assert!(h.contains(&p));
            assert!(image.contains(&apply(&m, &p).unwrap()));
        }
    }

    #[test]
    fn models_transport() {
        let vars = ['X', 'Y', 'Z'];
        let f = HomogeneousPoly::parse("X^4 + Y^4 - Z^4", &vars).unwrap();
        let src = CanonicalModel::with_default_names(0, 3, vec![f.clone()]).unwrap();
        // Swapping X and Y is an automorphism; a shear is not.
        assert!(maps_model(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), &src, &src));
        assert!(!maps_model(&mat(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]), &src, &src));
        let m = mat(&[&[1, -1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let dst = CanonicalModel::with_default_names(0, 3, vec![pull_back(&f, &m)]).unwrap();
        assert!(maps_model(&m, &dst, &src));
        assert!(!maps_model(&m, &src, &dst));
    }
}
