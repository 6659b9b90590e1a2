//! Loading and validating fixture bases of S2+(Gamma0(N)).
//!
//! A fixture is one JSON file per level:
//!
//! ```json
//! { "level": 137, "genus_plus": 4, "prec": 2000, "provenance": "...",
//!   "forms": [[1, 0, 0, 0, -5, ...], ...] }
//! ```
//!
//! `forms[i][n-1]` is the coefficient of `q^n` in the i-th basis form. The
//! forms are in reduced row-echelon form over Q, each row scaled to a
//! primitive integer vector, pivots ascending.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{genus_plus, sturm_bound};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numeric::{eval_truncated, growth_constant, tail_sum};
use crate::qseries::QSeries;

/// A validated basis of the Fricke +1 eigenspace at a prime level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRecord {
    pub level: u64,
    pub forms: Vec<QSeries>,
    pub provenance: String,
}

#[derive(Serialize, Deserialize)]
struct RawRecord {
    level: u64,
    genus_plus: usize,
    prec: usize,
    #[serde(default)]
    provenance: String,
    forms: Vec<RawForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawForm(#[serde(with = "crate::serde_int::vec")] Vec<BigInt>);

/// Precision a basis needs so every relation used downstream is certified.
pub fn required_precision(level: u64, genus: usize) -> usize {
    match genus {
        3 => sturm_bound(level, 8),
        4 => sturm_bound(level, 6),
        _ => sturm_bound(level, 2),
    }
}

impl BasisRecord {
    /// Build a record, enforcing: form count equals the genus of X0+(N), one
    /// shared precision, and enough precision for the model relations.
    pub fn new(level: u64, forms: Vec<QSeries>, provenance: impl Into<String>) -> Result<Self> {
        let expected = genus_plus(level)? as usize;
        if forms.len() != expected {
            return Err(Error::GenusMismatch { level, expected, found: forms.len() });
        }
        let prec = forms[0].prec();
        if forms.iter().any(|f| f.prec() != prec) {
            return Err(Error::MalformedBasis("forms have different precisions".into()));
        }
        let needed = required_precision(level, expected);
        if prec < needed {
            return Err(Error::InsufficientPrecision { needed, available: prec });
        }
        Ok(Self { level, forms, provenance: provenance.into() })
    }

    pub fn genus(&self) -> usize {
        self.forms.len()
    }

    pub fn prec(&self) -> usize {
        self.forms[0].prec()
    }

    /// Constant `K` with `|a(n)| <= K n^2` for every stored coefficient.
    pub fn growth_constant(&self) -> f64 {
        self.forms.iter().map(|f| growth_constant(f.coeffs())).fold(1.0, f64::max)
    }

    /// Forms in coordinates `y = M x`: the i-th new form is `sum_j M[i][j] f_j`.
    /// Used to move a basis onto another model's coordinates.
    pub fn transformed(&self, m: &[Vec<BigInt>]) -> Result<Self> {
        let forms = m
            .iter()
            .map(|row| row.iter().zip(&self.forms).fold(QSeries::zero(self.prec()), |acc, (c, f)| &acc + &f.scale(c)))
            .collect();
        Self::new(self.level, forms, format!("{} (linear change of coordinates)", self.provenance))
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out += &format!("  \"level\": {},\n", self.level);
        out += &format!("  \"genus_plus\": {},\n", self.genus());
        out += &format!("  \"prec\": {},\n", self.prec());
        out += &format!("  \"provenance\": {},\n", serde_json::to_string(&self.provenance).unwrap());
        out += "  \"forms\": [\n";
        let rows: Vec<String> = self
            .forms
            .iter()
            .map(|f| {
                let coeffs = serde_json::to_string(&RawForm(f.coeffs().to_vec())).unwrap();
                format!("    {coeffs}")
            })
            .collect();
        out += &rows.join(",\n");
        out += "\n  ]\n}\n";
        out
    }
}

/// Conventional fixture file for a level.
pub fn fixture_path(data_dir: &Path, level: u64) -> PathBuf {
    data_dir.join(format!("x0plus_{level}.json"))
}

fn parse_raw(path: &Path) -> Result<RawRecord> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { path: path.into(), detail: e.to_string() })
}

/// Raw form coefficients of a fixture file without any validation.
pub fn read_forms_unchecked(path: &Path) -> Result<Vec<QSeries>> {
    parse_raw(path)?.forms.into_iter().map(|f| QSeries::new(f.0)).collect()
}

fn check_echelon(forms: &[QSeries]) -> Result<()> {
    let rows: Vec<Vec<BigInt>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    let mut last_pivot = None;
    for (i, row) in rows.iter().enumerate() {
        let p =
            row.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::MalformedBasis(format!("form {i} is zero")))?;
        if last_pivot.is_some_and(|lp| p <= lp) {
            return Err(Error::MalformedBasis("pivot columns are not strictly ascending".into()));
        }
        if row[p].is_negative() || linalg::primitive(row).as_ref() != Some(row) {
            return Err(Error::MalformedBasis(format!("form {i} is not a primitive row with positive pivot")));
        }
        if rows.iter().enumerate().any(|(j, r)| j != i && !r[p].is_zero()) {
            return Err(Error::MalformedBasis(format!("pivot column of form {i} is not cleared")));
        }
        last_pivot = Some(p);
    }
    Ok(())
}

/// Read and validate a fixture.
pub fn load_basis(path: &Path) -> Result<BasisRecord> {
    let raw = parse_raw(path)?;
    let parse_err = |detail: String| Error::Parse { path: path.into(), detail };
    if raw.forms.len() != raw.genus_plus {
        return Err(parse_err(format!("header declares {} forms but {} are present", raw.genus_plus, raw.forms.len())));
    }
    if raw.forms.iter().any(|f| f.0.len() != raw.prec) {
        return Err(parse_err(format!("every form must list exactly prec = {} coefficients", raw.prec)));
    }
    let forms = raw.forms.into_iter().map(|f| QSeries::new(f.0)).collect::<Result<Vec<_>>>()?;
    let record = BasisRecord::new(raw.level, forms, raw.provenance)?;
    check_echelon(&record.forms)?;
    Ok(record)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrickeStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrickeReport {
    pub form: usize,
    pub max_relative_deviation: f64,
    pub max_relative_tail: f64,
    pub status: FrickeStatus,
}

/// Sample points on `|tau| = 1/sqrt(N)` with argument in `[pi/6, pi/2)`,
/// never the fixed point `i/sqrt(N)`.
pub fn fricke_samples(level: u64, count: usize) -> Vec<Complex64> {
    let r = 1.0 / (level as f64).sqrt();
    (0..count)
        .map(|k| {
            let theta = PI / 2.0 - (PI / 3.0) * (k + 1) as f64 / count as f64;
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Numerically test `f(-1/(N tau)) = N tau^2 f(tau)` for every form.
pub fn fricke_check(basis: &BasisRecord, sample_count: usize, tol: f64) -> Vec<FrickeReport> {
    let n = basis.level as f64;
    let terms = basis.prec();
    let k = basis.growth_constant();
    let samples = fricke_samples(basis.level, sample_count);
    basis
        .forms
        .iter()
        .enumerate()
        .map(|(idx, f)| {
            let mut dev: f64 = 0.0;
            let mut tail: f64 = 0.0;
            for &tau in &samples {
                let w = -1.0 / (n * tau);
                let lhs = eval_truncated(f.coeffs(), w, terms);
                let rhs = n * tau * tau * eval_truncated(f.coeffs(), tau, terms);
                let scale = lhs.norm().max(rhs.norm());
                let err = k * (tail_sum(w.im, terms) + n * tau.norm_sqr() * tail_sum(tau.im, terms));
                dev = dev.max((lhs - rhs).norm() / scale);
                tail = tail.max(err / scale);
            }
            let status = if tail > tol / 10.0 {
                FrickeStatus::Inconclusive
            } else if dev < tol {
                FrickeStatus::Pass
            } else {
                FrickeStatus::Fail
            };
            FrickeReport { form: idx, max_relative_deviation: dev, max_relative_tail: tail, status }
        })
        .collect()
}
