use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use super::binary::{factor_binary_form, fundamental_discriminant, BinaryForm};
use super::LinearSubspace;
use crate::error::{Error, Result};
use crate::field::{clear_denominators, Elem, KPoly, NumberField};
use crate::linalg;
use crate::model::{CanonicalModel, HomogeneousPoly};
use crate::points::ProjPoint;
use crate::poly::UPoly;

const MAX_SHEARS: usize = 32;
const SHEAR_SEED: u64 = 0x5eed;

/// A closed point of degree > 1, described canonically: the point is scaled
/// so its first nonzero coordinate is 1, `coordinate` is the first coordinate
/// generating the residue field, `min_poly` its minimal polynomial, and
/// `coords` (when available) every coordinate as a polynomial in that
/// generator, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraicPoint {
    pub degree: usize,
    pub coordinate: usize,
    #[serde(serialize_with = "serialize_upoly")]
    pub min_poly: UPoly,
    #[serde(serialize_with = "serialize_coords")]
    pub coords: Option<Vec<Vec<BigRational>>>,
}

fn serialize_upoly<S: Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn serialize_coords<S: Serializer>(c: &Option<Vec<Vec<BigRational>>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Option<Vec<Vec<String>>> =
        c.as_ref().map(|rows| rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect());
    strings.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DivisorPoint {
    Rational {
        point: ProjPoint,
    },
    Quadratic {
        #[serde(flatten)]
        point: AlgebraicPoint,
        #[serde(with = "crate::serde_int")]
        discriminant: BigInt,
    },
    Higher {
        #[serde(flatten)]
        point: AlgebraicPoint,
    },
}

impl DivisorPoint {
    /// Number of geometric points (the residue field degree).
    pub fn degree(&self) -> usize {
        match self {
            Self::Rational { .. } => 1,
            Self::Quadratic { point, .. } | Self::Higher { point } => point.degree,
        }
    }

    pub fn as_rational(&self) -> Option<&ProjPoint> {
        match self {
            Self::Rational { point } => Some(point),
            _ => None,
        }
    }
}

impl fmt::Display for DivisorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational { point } => write!(f, "{point}"),
            Self::Quadratic { point, discriminant } => {
                write!(f, "quadratic[x{}: {}; disc {}]", point.coordinate, point.min_poly, discriminant)
            }
            Self::Higher { point } => {
                write!(f, "degree-{}[x{}: {}]", point.degree, point.coordinate, point.min_poly)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorEntry {
    pub point: DivisorPoint,
    pub multiplicity: usize,
}

/// An effective divisor on the curve cut out by a line or plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionDivisor {
    pub entries: Vec<DivisorEntry>,
}

impl IntersectionDivisor {
    fn from_entries(mut entries: Vec<DivisorEntry>) -> Self {
        entries.sort_by(|a, b| a.point.cmp(&b.point));
        let mut merged: Vec<DivisorEntry> = Vec::with_capacity(entries.len());
        for e in entries {
            match merged.last_mut() {
                Some(last) if last.point == e.point => last.multiplicity += e.multiplicity,
                _ => merged.push(e),
            }
        }
        Self { entries: merged }
    }

    /// Total degree, counting every conjugate point.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity * e.point.degree()).sum()
    }

    pub fn rational_points(&self) -> impl Iterator<Item = (&ProjPoint, usize)> {
        self.entries.iter().filter_map(|e| e.point.as_rational().map(|p| (p, e.multiplicity)))
    }

    pub fn multiplicity_of(&self, p: &ProjPoint) -> usize {
        self.rational_points().find(|(q, _)| *q == p).map_or(0, |(_, m)| m)
    }
}

/// Canonical descriptor of the point with coordinates `x` in the field `k`.
fn describe(k: &NumberField, x: &[Elem]) -> Result<DivisorPoint> {
    let i0 = x.iter().position(|c| !NumberField::is_zero(c)).ok_or(Error::ZeroVector)?;
    let inv = k.inv(&x[i0]);
    let y: Vec<Elem> = x.iter().map(|c| k.mul(c, &inv)).collect();
    let rational: Option<Vec<BigRational>> = y.iter().map(NumberField::rational_value).collect();
    if let Some(r) = rational {
        return Ok(DivisorPoint::Rational { point: ProjPoint::new(clear_denominators(&r))? });
    }
    let polys: Vec<Option<UPoly>> =
        y.iter().map(|c| NumberField::rational_value(c).is_none().then(|| k.min_poly(c))).collect();
    let full = polys.iter().position(|p| p.as_ref().and_then(UPoly::degree) == Some(k.degree()));
    let coordinate = full.unwrap_or_else(|| polys.iter().position(Option::is_some).expect("irrational coordinate"));
    let min_poly = polys[coordinate].clone().expect("irrational coordinate");
    let coords =
        full.map(|j| y.iter().map(|c| k.in_power_basis(&y[j], c).expect("generator spans the field")).collect());
    let degree = min_poly.degree().expect("nonzero minimal polynomial");
    let point = AlgebraicPoint { degree, coordinate, min_poly, coords };
    if degree == 2 {
        let q = BinaryForm::new(point.min_poly.coeffs().iter().rev().cloned().collect());
        let discriminant = fundamental_discriminant(&q)?;
        Ok(DivisorPoint::Quadratic { point, discriminant })
    } else {
        Ok(DivisorPoint::Higher { point })
    }
}

/// `F(s A + t B)` for a line spanned by `A, B`.
pub fn restrict_to_line(f: &HomogeneousPoly, line: &LinearSubspace) -> Result<BinaryForm> {
    if line.rank() != 2 || line.ambient() != f.nvars() {
        return Err(Error::Precondition("expected a line in the ambient space of the polynomial".into()));
    }
    let images: Vec<Vec<BigInt>> = (0..f.nvars()).map(|i| line.span().iter().map(|r| r[i].clone()).collect()).collect();
    let g = f.substitute(&images);
    if g.is_zero() {
        return Err(Error::LineOnCurve);
    }
    Ok(BinaryForm::from_poly(&g))
}

/// Point of the subspace with parameters `params` in the field `k`.
fn param_point(k: &NumberField, span: &[Vec<BigInt>], params: &[Elem]) -> Vec<Elem> {
    (0..span[0].len())
        .map(|i| {
            span.iter()
                .zip(params)
                .fold(k.zero(), |acc, (row, p)| k.add(&acc, &k.scale(p, &BigRational::from_integer(row[i].clone()))))
        })
        .collect()
}

/// The divisor cut on a plane quartic by a line.
pub fn line_divisor(model: &CanonicalModel, line: &LinearSubspace) -> Result<IntersectionDivisor> {
    let f = model.quartic().ok_or_else(|| Error::Precondition("line divisors need a plane quartic model".into()))?;
    let form = restrict_to_line(f, line)?;
    let fact = factor_binary_form(&form)?;
    let mut entries = Vec::new();
    for (g, e) in &fact.factors {
        let point = if g.degree() == 1 {
            let (s, t) = g.linear_root();
            let v: Vec<BigInt> = (0..3).map(|i| &s * &line.span()[0][i] + &t * &line.span()[1][i]).collect();
            DivisorPoint::Rational { point: ProjPoint::new(v)? }
        } else {
            let k = NumberField::new(&g.dehomogenize());
            let one = k.from_rational(BigRational::one());
            describe(&k, &param_point(&k, line.span(), &[k.theta(), one]))?
        };
        entries.push(DivisorEntry { point, multiplicity: *e });
    }
    let d = IntersectionDivisor::from_entries(entries);
    if d.degree() != 4 {
        return Err(Error::Internal { op: "line_divisor", detail: format!("degree {} != 4", d.degree()) });
    }
    Ok(d)
}

/// A plane parametrized by `(s, t, u) -> s A + t B + u C`, with the quadric
/// and cubic of a genus-4 model pulled back to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSection {
    pub plane: LinearSubspace,
    pub conic: HomogeneousPoly,
    pub cubic: HomogeneousPoly,
}

pub fn plane_section(model: &CanonicalModel, plane: &LinearSubspace) -> Result<PlaneSection> {
    let (Some(q), Some(c)) = (model.quadric(), model.cubic()) else {
        return Err(Error::Precondition("plane sections need a quadric and cubic model".into()));
    };
    if plane.rank() != 3 || plane.ambient() != 4 {
        return Err(Error::Precondition(format!("expected a plane in P^3, got a subspace of rank {}", plane.rank())));
    }
    let images: Vec<Vec<BigInt>> = (0..4).map(|i| plane.span().iter().map(|r| r[i].clone()).collect()).collect();
    let conic = q.substitute(&images);
    let cubic = c.substitute(&images);
    if conic.is_zero() || cubic.is_zero() {
        return Err(Error::PlaneOnSurface);
    }
    Ok(PlaneSection { plane: plane.clone(), conic, cubic })
}

/// `p(s, t, u)` as a polynomial in `u` with coefficients in `k`, at `(s, t)`.
fn specialize(k: &NumberField, p: &HomogeneousPoly, s: &Elem, t: &Elem) -> KPoly {
    let mut out = vec![k.zero(); p.degree() as usize + 1];
    for term in p.terms() {
        let e = &term.exponents;
        let c = k.mul(&k.pow(s, e[0]), &k.pow(t, e[1]));
        let c = k.scale(&c, &BigRational::from_integer(term.coeff.clone()));
        out[e[2] as usize] = k.add(&out[e[2] as usize], &c);
    }
    while out.last().is_some_and(NumberField::is_zero) {
        out.pop();
    }
    out
}

fn specialize_int(p: &HomogeneousPoly, s: &BigInt, t: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.degree() as usize + 1];
    for term in p.terms() {
        let e = &term.exponents;
        out[e[2] as usize] +=
            &term.coeff * num_traits::pow(s.clone(), e[0] as usize) * num_traits::pow(t.clone(), e[1] as usize);
    }
    out
}

/// Sylvester resultant in `u` of a quadratic `a` and a cubic `b` (dense, constant first).
fn resultant_2_3(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let n = 5;
    let mut rows = Vec::with_capacity(n);
    for shift in 0..3 {
        let mut r = vec![BigInt::zero(); n];
        for (i, c) in a.iter().rev().enumerate() {
            r[shift + i] = c.clone();
        }
        rows.push(r);
    }
    for shift in 0..2 {
        let mut r = vec![BigInt::zero(); n];
        for (i, c) in b.iter().rev().enumerate() {
            r[shift + i] = c.clone();
        }
        rows.push(r);
    }
    linalg::determinant(&rows)
}

/// `Res_u(conic, cubic)` as a sextic binary form in `(s, t)`, by
/// interpolation at `(1, j)`, `j = 0..6`.
fn resultant_form(conic: &HomogeneousPoly, cubic: &HomogeneousPoly) -> BinaryForm {
    let one = BigInt::one();
    let values: Vec<BigRational> = (0..=6)
        .map(|j| {
            let j = BigInt::from(j);
            BigRational::from_integer(resultant_2_3(&specialize_int(conic, &one, &j), &specialize_int(cubic, &one, &j)))
        })
        .collect();
    let vandermonde: Vec<Vec<BigRational>> =
        (0..=6i64).map(|j| (0..=6u32).map(|i| BigRational::from_integer(BigInt::from(j).pow(i))).collect()).collect();
    let inv = linalg::invert_rational(&vandermonde).expect("Vandermonde matrix is invertible");
    let coeffs: Vec<BigInt> = inv
        .iter()
        .map(|row| {
            let c: BigRational = row.iter().zip(&values).map(|(x, y)| x * y).sum();
            assert!(c.is_integer(), "resultant interpolation is integral");
            c.to_integer()
        })
        .collect();
    BinaryForm::new(coeffs)
}

fn shear(p: &HomogeneousPoly, a: i64, b: i64) -> HomogeneousPoly {
    let z = BigInt::zero;
    let o = BigInt::one;
    p.substitute(&[vec![o(), z(), BigInt::from(a)], vec![z(), o(), BigInt::from(b)], vec![z(), z(), o()]])
}

/// Outcome of one projection attempt.
enum Attempt {
    Done(IntersectionDivisor),
    Retry,
}

fn try_shear(section: &PlaneSection, a: i64, b: i64) -> Result<Attempt> {
    let conic = shear(&section.conic, a, b);
    let cubic = shear(&section.cubic, a, b);
    let apex = [BigInt::zero(), BigInt::zero(), BigInt::one()];
    if conic.eval(&apex).is_zero() || cubic.eval(&apex).is_zero() {
        return Ok(Attempt::Retry);
    }
    let res = resultant_form(&conic, &cubic);
    if res.is_zero() {
        return Err(Error::CommonFactor);
    }
    let fact = factor_binary_form(&res)?;
    let mut entries = Vec::new();
    for (g, e) in &fact.factors {
        let (k, s, t) = if g.degree() == 1 {
            let (s, t) = g.linear_root();
            let k = NumberField::new(&UPoly::from_i64(&[0, 1]));
            (k.clone(), k.from_int(&s), k.from_int(&t))
        } else {
            let k = NumberField::new(&g.dehomogenize());
            let (theta, one) = (k.theta(), k.from_rational(BigRational::one()));
            (k, theta, one)
        };
        let ga = specialize(&k, &conic, &s, &t);
        let gb = specialize(&k, &cubic, &s, &t);
        let common = k.poly_gcd(&ga, &gb);
        if common.len() < 2 {
            return Err(Error::Internal {
                op: "conic_cubic_divisor",
                detail: "resultant root without a common solution".into(),
            });
        }
        if k.poly_squarefree(&common).len() != 2 {
            return Ok(Attempt::Retry);
        }
        let sq = k.poly_squarefree(&common);
        let u = k.neg(&sq[0]);
        let a_k = k.from_int(&BigInt::from(a));
        let b_k = k.from_int(&BigInt::from(b));
        let s0 = k.add(&s, &k.mul(&a_k, &u));
        let t0 = k.add(&t, &k.mul(&b_k, &u));
        let x = param_point(&k, section.plane.span(), &[s0, t0, u]);
        entries.push(DivisorEntry { point: describe(&k, &x)?, multiplicity: *e });
    }
    let d = IntersectionDivisor::from_entries(entries);
    if d.degree() != 6 {
        return Err(Error::Internal { op: "conic_cubic_divisor", detail: format!("degree {} != 6", d.degree()) });
    }
    Ok(Attempt::Done(d))
}

/// Whether every intersection point of the plane with the curve could be
/// rational: false as soon as the projected resultant has a nonlinear
/// irreducible factor. Much cheaper than [`conic_cubic_divisor`].
pub fn section_may_split(section: &PlaneSection) -> Result<bool> {
    let apex = [BigInt::zero(), BigInt::zero(), BigInt::one()];
    for (a, b) in default_shears() {
        let conic = shear(&section.conic, a, b);
        let cubic = shear(&section.cubic, a, b);
        if conic.eval(&apex).is_zero() || cubic.eval(&apex).is_zero() {
            continue;
        }
        let res = resultant_form(&conic, &cubic);
        if res.is_zero() {
            return Err(Error::CommonFactor);
        }
        return Ok(factor_binary_form(&res)?.factors.iter().all(|(g, _)| g.degree() == 1));
    }
    Err(Error::NoSeparatingShear { attempts: MAX_SHEARS })
}

/// Default shear sequence: the identity, then seeded random shears.
fn default_shears() -> Vec<(i64, i64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SHEAR_SEED);
    std::iter::once((0, 0))
        .chain((1..MAX_SHEARS).map(|i| {
            let r = 2 + i as i64;
            (rng.gen_range(-r..=r), rng.gen_range(-r..=r))
        }))
        .collect()
}

/// The degree-6 divisor cut on the curve by a plane, with multiplicities.
pub fn conic_cubic_divisor(section: &PlaneSection) -> Result<IntersectionDivisor> {
    conic_cubic_divisor_with_shears(section, &default_shears())
}

/// As [`conic_cubic_divisor`], trying the shears `(s, t) -> (s + a u, t + b u)` in order.
pub fn conic_cubic_divisor_with_shears(section: &PlaneSection, shears: &[(i64, i64)]) -> Result<IntersectionDivisor> {
    for &(a, b) in shears {
        if let Attempt::Done(d) = try_shear(section, a, b)? {
            return Ok(d);
        }
    }
    Err(Error::NoSeparatingShear { attempts: shears.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::subspace_through;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    fn fermat() -> CanonicalModel {
        let f = HomogeneousPoly::parse("X^4 + Y^4 - Z^4", &['X', 'Y', 'Z']).unwrap();
        CanonicalModel::with_default_names(0, 3, vec![f]).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let m = fermat();
        let l = subspace_through(&[pt(&[0, 1, 1]), pt(&[1, 0, 0])]).unwrap();
        let d = line_divisor(&m, &l).unwrap();
        assert_eq!(
            d.entries,
            vec![DivisorEntry { point: DivisorPoint::Rational { point: pt(&[0, 1, 1]) }, multiplicity: 4 }]
        );
        let z0 = subspace_through(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        let d = line_divisor(&m, &z0).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert!(matches!(&d.entries[0].point, DivisorPoint::Higher { point } if point.degree == 4));
        let f = HomogeneousPoly::parse("XYZ^2", &['X', 'Y', 'Z']).unwrap();
        let x0 = subspace_through(&[pt(&[0, 1, 0]), pt(&[0, 0, 1])]).unwrap();
        assert!(matches!(restrict_to_line(&f, &x0), Err(Error::LineOnCurve)));
    }

    #[test]
    fn quadratic_points_on_a_line() {
        // on Z = 0 the quartic is (X^2 - 2Y^2)(X^2 + 2Y^2)
        let f = HomogeneousPoly::parse("X^4 - 4Y^4 + Z^4 + XZ^3", &['X', 'Y', 'Z']).unwrap();
        let m = CanonicalModel::with_default_names(0, 3, vec![f]).unwrap();
        let z0 = subspace_through(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        let d = line_divisor(&m, &z0).unwrap();
        let mut discs: Vec<BigInt> = d
            .entries
            .iter()
            .map(|e| match &e.point {
                DivisorPoint::Quadratic { discriminant, .. } => discriminant.clone(),
                other => panic!("unexpected {other}"),
            })
            .collect();
        discs.sort();
        assert_eq!(discs, vec![BigInt::from(-8), BigInt::from(8)]);
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn plane_through_a_cone() {
        // the quadric W^2 - X^2 contains the plane W = X
        let q = HomogeneousPoly::parse("W^2 - X^2", &['W', 'X', 'Y', 'Z']).unwrap();
        let c = HomogeneousPoly::parse("Y^3 - Z^3 + W^2Z", &['W', 'X', 'Y', 'Z']).unwrap();
        let m = CanonicalModel::with_default_names(0, 4, vec![q, c]).unwrap();
        let plane = super::super::Hyperplane::from_i64(&[1, -1, 0, 0]).unwrap().subspace();
        assert!(matches!(plane_section(&m, &plane), Err(Error::PlaneOnSurface)));
        let line = subspace_through(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])]).unwrap();
        assert!(matches!(plane_section(&m, &line), Err(Error::Precondition(_))));
    }
}
