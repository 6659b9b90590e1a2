//! Lines and planes through rational points, and their exact intersections
//! with the canonical curve.

mod binary;
mod divisor;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use binary::{factor_binary_form, fundamental_discriminant, BinaryFactorization, BinaryForm};
pub use divisor::{
    conic_cubic_divisor, conic_cubic_divisor_with_shears, line_divisor, plane_section, restrict_to_line,
    section_may_split, AlgebraicPoint, DivisorEntry, DivisorPoint, IntersectionDivisor, PlaneSection,
};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::CanonicalModel;
use crate::points::ProjPoint;

/// The projective span of some integer vectors, stored as the canonical
/// reduced echelon basis (primitive rows, positive pivots).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearSubspace {
    #[serde(serialize_with = "serialize_rows")]
    span: Vec<Vec<BigInt>>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&ProjPoint::new(r.clone()).expect("echelon rows are nonzero"))?;
    }
    seq.end()
}

impl LinearSubspace {
    /// Span of arbitrary vectors (any rank >= 1).
    pub fn span_of(vectors: &[Vec<BigInt>]) -> Result<Self> {
        let (span, _) = linalg::rref_primitive(vectors);
        if span.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { span })
    }

    /// The subspace cut out by linear forms.
    pub fn from_equations(normals: &[Vec<BigInt>], ambient: usize) -> Result<Self> {
        let ker = linalg::kernel(normals, ambient);
        Self::span_of(&ker)
    }

    pub fn span(&self) -> &[Vec<BigInt>] {
        &self.span
    }

    /// Projective dimension plus one: 2 for a line, 3 for a plane.
    pub fn rank(&self) -> usize {
        self.span.len()
    }

    pub fn ambient(&self) -> usize {
        self.span[0].len()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut rows = self.span.clone();
        rows.push(p.coords().to_vec());
        linalg::rank(&rows) == self.rank()
    }

    pub fn contains_subspace(&self, other: &LinearSubspace) -> bool {
        let mut rows = self.span.clone();
        rows.extend(other.span.iter().cloned());
        linalg::rank(&rows) == self.rank()
    }

    /// Linear forms vanishing on the subspace, canonical echelon basis.
    pub fn equations(&self) -> Vec<Vec<BigInt>> {
        linalg::kernel(&self.span, self.ambient())
    }

    /// Intersection, or `None` when it is empty in projective space.
    pub fn intersect(&self, other: &LinearSubspace) -> Option<LinearSubspace> {
        let rows = linalg::intersect_row_spaces(&self.span, &other.span);
        (!rows.is_empty()).then_some(LinearSubspace { span: rows })
    }

    /// The single point of a rank-1 subspace.
    pub fn as_point(&self) -> Option<ProjPoint> {
        (self.rank() == 1).then(|| ProjPoint::new(self.span[0].clone()).expect("nonzero"))
    }

    /// Normal vector of a hyperplane.
    pub fn as_hyperplane(&self) -> Option<Hyperplane> {
        (self.rank() + 1 == self.ambient()).then(|| {
            let eq = self.equations();
            Hyperplane { normal: linalg::primitive(&eq[0]).expect("nonzero normal") }
        })
    }
}

fn point_rows(pts: &[ProjPoint]) -> Vec<Vec<BigInt>> {
    pts.iter().map(|p| p.coords().to_vec()).collect()
}

/// The line (two points) or plane (three points) spanned by `pts`, which
/// must be linearly independent.
pub fn subspace_through(pts: &[ProjPoint]) -> Result<LinearSubspace> {
    if !(2..=3).contains(&pts.len()) {
        return Err(Error::Precondition(format!("expected 2 or 3 points, got {}", pts.len())));
    }
    let rows = point_rows(pts);
    let r = linalg::rank(&rows);
    if r != pts.len() {
        return Err(Error::RankDeficient { expected: pts.len(), found: r });
    }
    LinearSubspace::span_of(&rows)
}

/// A hyperplane `n . x = 0` with primitive normal, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    #[serde(with = "crate::serde_int::vec")]
    normal: Vec<BigInt>,
}

impl Hyperplane {
    pub fn new(normal: Vec<BigInt>) -> Result<Self> {
        Ok(Self { normal: linalg::primitive(&normal).ok_or(Error::ZeroVector)? })
    }

    pub fn from_i64(normal: &[i64]) -> Result<Self> {
        Self::new(normal.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        linalg::dot(&self.normal, p.coords()).is_zero()
    }

    pub fn subspace(&self) -> LinearSubspace {
        LinearSubspace::from_equations(std::slice::from_ref(&self.normal), self.normal.len()).expect("hyperplane is nonempty")
    }

    /// `n0 x0 + n1 x1 + ...` with the given variable names.
    pub fn equation(&self, names: &[&str]) -> String {
        let lin = crate::model::HomogeneousPoly::from_dense(self.normal.len(), 1, &self.normal);
        format!("{} = 0", lin.display_with(names))
    }
}

/// The hyperplane through points spanning a subspace of rank `g - 1`.
pub fn hyperplane_through(pts: &[ProjPoint]) -> Result<Hyperplane> {
    let g = pts.first().ok_or(Error::Precondition("no points given".into()))?.dim();
    let rows = point_rows(pts);
    let r = linalg::rank(&rows);
    if r != g - 1 {
        return Err(Error::RankDeficient { expected: g - 1, found: r });
    }
    Hyperplane::new(linalg::kernel(&rows, g).swap_remove(0))
}

/// Tangent line to a plane quartic at a smooth point.
pub fn tangent_line(model: &CanonicalModel, p: &ProjPoint) -> Result<LinearSubspace> {
    let f = model.quartic().ok_or_else(|| Error::Precondition("tangent lines need a plane quartic model".into()))?;
    if !f.eval(p.coords()).is_zero() {
        return Err(Error::Precondition(format!("{p} is not on the curve")));
    }
    let grad = f.gradient(p.coords());
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint(p.to_string()));
    }
    LinearSubspace::from_equations(&[grad], 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HomogeneousPoly;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    #[test]
    fn spans_and_ranks() {
        let l = subspace_through(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        assert_eq!(l.span(), &[vec![BigInt::from(1), 0.into(), 0.into()], vec![0.into(), 1.into(), 0.into()]]);
        let pts = [pt(&[2, -1, -2, 1]), pt(&[1, 1, -1, 0]), pt(&[1, -2, -1, 1])];
        assert!(matches!(subspace_through(&pts), Err(Error::RankDeficient { expected: 3, found: 2 })));
        assert_eq!(LinearSubspace::span_of(&point_rows(&pts)).unwrap().rank(), 2);
        let h = hyperplane_through(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(h, Hyperplane::from_i64(&[0, 0, 0, 1]).unwrap());
        assert_eq!(h.subspace().as_hyperplane(), Some(h));
    }

    #[test]
    fn intersections() {
        let a = Hyperplane::from_i64(&[0, 0, 0, 1]).unwrap().subspace();
        let b = Hyperplane::from_i64(&[1, 1, 2, 3]).unwrap().subspace();
        let l = a.intersect(&b).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(a.contains_subspace(&l) && b.contains_subspace(&l));
        let p = subspace_through(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])])
            .unwrap()
            .intersect(&subspace_through(&[pt(&[1, 1, 0]), pt(&[0, 0, 1])]).unwrap())
            .unwrap();
        assert_eq!(p.as_point(), Some(pt(&[1, 1, 0])));
    }

    #[test]
    fn tangents() {
        let f = HomogeneousPoly::parse("X^4 + Y^4 - Z^4", &['X', 'Y', 'Z']).unwrap();
        let m = CanonicalModel::with_default_names(0, 3, vec![f]).unwrap();
        let t = tangent_line(&m, &pt(&[0, 1, 1])).unwrap();
        assert_eq!(t.as_hyperplane(), Some(Hyperplane::from_i64(&[0, 1, -1]).unwrap()));
        assert!(t.contains(&pt(&[0, 1, 1])));
        let g = HomogeneousPoly::parse("X^2Z^2 - Y^4 + X^4", &['X', 'Y', 'Z']).unwrap();
        let m = CanonicalModel::with_default_names(0, 3, vec![g]).unwrap();
        assert!(matches!(tangent_line(&m, &pt(&[0, 0, 1])), Err(Error::SingularPoint(_))));
    }
}
