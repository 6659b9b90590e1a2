//! Canonical models from q-expansions: equations are integer relations among
//! monomials in the basis forms, certified by the Sturm bound.

mod homogeneous;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use homogeneous::{monomials, CompiledPoly, HomogeneousPoly, Term};

use crate::arith::sturm_bound;
use crate::error::{Error, Result};
use crate::ingest::BasisRecord;
use crate::linalg;
use crate::qseries::{monomial_eval, QSeries};

/// Equations cutting out the canonical image of X0+(N) in P^{g-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalModel {
    pub level: u64,
    pub genus: usize,
    pub variables: Vec<String>,
    pub polys: Vec<HomogeneousPoly>,
}

impl CanonicalModel {
    pub fn new(level: u64, genus: usize, variables: Vec<String>, polys: Vec<HomogeneousPoly>) -> Result<Self> {
        let mut degrees: Vec<u32> = polys.iter().map(HomogeneousPoly::degree).collect();
        degrees.sort_unstable();
        let expected: &[u32] = match genus {
            3 => &[4],
            4 => &[2, 3],
            g => return Err(Error::UnsupportedGenus(g)),
        };
        if degrees != expected || polys.iter().any(|p| p.nvars() != genus) || variables.len() != genus {
            return Err(Error::Precondition(format!(
                "genus {genus} models need polynomials of degrees {expected:?} in {genus} variables"
            )));
        }
        let mut polys = polys;
        polys.sort_by_key(HomogeneousPoly::degree);
        Ok(Self { level, genus, variables, polys })
    }

    /// Model with the default variable names `x0, ..., x{g-1}`.
    pub fn with_default_names(level: u64, genus: usize, polys: Vec<HomogeneousPoly>) -> Result<Self> {
        Self::new(level, genus, (0..genus).map(|i| format!("x{i}")).collect(), polys)
    }

    /// Degree of the canonical curve, `2g - 2`.
    pub fn curve_degree(&self) -> usize {
        2 * self.genus - 2
    }

    pub fn quartic(&self) -> Option<&HomogeneousPoly> {
        (self.genus == 3).then(|| &self.polys[0])
    }

    pub fn quadric(&self) -> Option<&HomogeneousPoly> {
        (self.genus == 4).then(|| &self.polys[0])
    }

    pub fn cubic(&self) -> Option<&HomogeneousPoly> {
        (self.genus == 4).then(|| &self.polys[1])
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.polys.iter().all(|p| p.eval(x).is_zero())
    }

    pub fn display_polys(&self) -> Vec<String> {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        self.polys.iter().map(|p| p.display_with(&names)).collect()
    }

    /// Whether `poly` lies in the degree-`deg(poly)` part of the ideal generated by the model.
    pub fn ideal_contains(&self, poly: &HomogeneousPoly) -> bool {
        let d = poly.degree();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for p in self.polys.iter().filter(|p| p.degree() <= d) {
            for m in monomials(self.genus, d - p.degree()) {
                let mut g = p.clone();
                for (v, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        g = g.mul_var(v);
                    }
                }
                gens.push(g.dense());
            }
        }
        if poly.is_zero() {
            return true;
        }
        let r = linalg::rank(&gens);
        gens.push(poly.dense());
        linalg::rank(&gens) == r
    }
}

/// Integer relations of the given degree among the basis forms: a reduced
/// echelon basis of the kernel of the monomial coefficient matrix, with
/// coordinates listed against [`monomials`]`(g, degree)`.
pub fn relation_space(basis: &BasisRecord, degree: u32) -> Result<Vec<Vec<BigInt>>> {
    let bound = sturm_bound(basis.level, 2 * degree);
    if basis.prec() < bound {
        return Err(Error::InsufficientPrecision { needed: bound, available: basis.prec() });
    }
    let truncated: Vec<QSeries> = basis.forms.iter().map(|f| f.truncate(bound)).collect();
    let mons = monomials(basis.genus(), degree);
    let columns: Vec<QSeries> = mons.iter().map(|m| monomial_eval(&truncated, m)).collect::<Result<_>>()?;
    let matrix: Vec<Vec<BigInt>> =
        (0..bound).map(|n| columns.iter().map(|c| c.coeffs()[n].clone()).collect()).collect();
    Ok(linalg::kernel(&matrix, mons.len()))
}

fn expect_dim(space: &[Vec<BigInt>], degree: u32, expected: usize) -> Result<()> {
    if space.len() != expected {
        return Err(Error::KernelDimension { degree, expected, found: space.len() });
    }
    Ok(())
}

fn size_key(v: &[BigInt]) -> (BigInt, BigInt) {
    let max = v.iter().map(|c| c.abs()).max().unwrap_or_default();
    let sum = v.iter().map(|c| c.abs()).sum();
    (max, sum)
}

/// A small-coefficient cubic generating the degree-3 relations modulo the
/// multiples of the quadric.
fn reduce_cubic(cubics: &[Vec<BigInt>], quadric: &HomogeneousPoly) -> Result<HomogeneousPoly> {
    let g = quadric.nvars();
    let multiples: Vec<Vec<BigInt>> = (0..g).map(|v| quadric.mul_var(v).dense()).collect();
    let (lq, pivots) = linalg::rref_primitive(&multiples);
    let reduced: Vec<Vec<BigInt>> = cubics
        .iter()
        .filter_map(|v| {
            let mut v = v.clone();
            for (row, &p) in lq.iter().zip(&pivots) {
                if v[p].is_zero() {
                    continue;
                }
                let a = row[p].clone();
                let b = v[p].clone();
                v = v.iter().zip(row).map(|(x, y)| &a * x - &b * y).collect();
            }
            linalg::primitive(&v)
        })
        .collect();
    let (quotient, _) = if reduced.is_empty() { (Vec::new(), Vec::new()) } else { linalg::rref_primitive(&reduced) };
    expect_dim(&quotient, 3, 1)?;
    let mut best = quotient[0].clone();
    // Greedy descent on (max |c|, sum |c|) by adding +-x_i Q.
    let mut key = size_key(&best);
    loop {
        let mut improved = false;
        for m in &multiples {
            for sign in [1i32, -1] {
                let cand: Vec<BigInt> = best.iter().zip(m).map(|(x, y)| x + y * BigInt::from(sign)).collect();
                let ck = size_key(&cand);
                if ck < key {
                    best = cand;
                    key = ck;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(HomogeneousPoly::from_kernel_vector(g, 3, &best))
}

/// Synthesize the canonical model: a plane quartic for genus 3, a quadric
/// and a cubic in P^3 for genus 4.
pub fn build_model(basis: &BasisRecord) -> Result<CanonicalModel> {
    let g = basis.genus();
    if g != 3 && g != 4 {
        return Err(Error::UnsupportedGenus(g));
    }
    expect_dim(&relation_space(basis, 1)?, 1, 0)?;
    let quadrics = relation_space(basis, 2)?;
    let polys = if g == 3 {
        if !quadrics.is_empty() {
            return Err(Error::Degenerate(format!(
                "{} quadric relations in genus 3: the canonical map is not an embedding",
                quadrics.len()
            )));
        }
        let quartics = relation_space(basis, 4)?;
        expect_dim(&quartics, 4, 1)?;
        vec![HomogeneousPoly::from_kernel_vector(3, 4, &quartics[0])]
    } else {
        expect_dim(&quadrics, 2, 1)?;
        let quadric = HomogeneousPoly::from_kernel_vector(4, 2, &quadrics[0]);
        let cubics = relation_space(basis, 3)?;
        expect_dim(&cubics, 3, 5)?;
        let cubic = reduce_cubic(&cubics, &quadric)?;
        vec![quadric, cubic]
    };
    CanonicalModel::with_default_names(basis.level, g, polys)
}

/// True iff every model polynomial, evaluated on the basis, vanishes through
/// its Sturm bound (hence identically).
pub fn verify_model(model: &CanonicalModel, basis: &BasisRecord) -> Result<bool> {
    if basis.genus() != model.genus {
        return Err(Error::Precondition("basis and model have different genus".into()));
    }
    for p in &model.polys {
        let bound = sturm_bound(basis.level, 2 * p.degree());
        if basis.prec() < bound {
            return Err(Error::InsufficientPrecision { needed: bound, available: basis.prec() });
        }
        let truncated: Vec<QSeries> = basis.forms.iter().map(|f| f.truncate(bound)).collect();
        let mut acc = QSeries::zero(bound);
        for t in p.terms() {
            acc = &acc + &monomial_eval(&truncated, &t.exponents)?.scale(&t.coeff);
        }
        if !acc.is_zero_to(bound)? {
            return Ok(false);
        }
    }
    Ok(true)
}
