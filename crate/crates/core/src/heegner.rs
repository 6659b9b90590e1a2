//! Heegner points, numerical evaluation of the canonical map, and CM labels
//! for rational points.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::Discriminant;
use crate::error::{Error, Result};
use crate::ingest::BasisRecord;
use crate::numeric::{eval_derivative, tail_sum_power};
use crate::points::ProjPoint;

/// Discriminants of the CM points that can be rational on these quotients.
pub const ADMISSIBLE_DISCRIMINANTS: [i64; 13] = [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163];

/// A positive definite form `A x^2 + B x y + C y^2` with `N | A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HeegnerForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeegnerForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }
}

/// Primitive Heegner forms `(N, B, C)` of discriminant `d`, one per residue
/// `B mod 2N` with `B^2 = d (mod 4N)`, `B` reduced to `-N < B <= N`.
/// Sorted by `|B|`, then `B`.
pub fn heegner_forms(level: u64, d: Discriminant) -> Vec<HeegnerForm> {
    let n = level as i64;
    let d = d.value();
    let mut out: Vec<HeegnerForm> = (0..2 * n)
        .filter(|b| (b * b - d).rem_euclid(4 * n) == 0)
        .map(|b| if b > n { b - 2 * n } else { b })
        .map(|b| HeegnerForm { a: n, b, c: (b * b - d) / (4 * n) })
        .filter(|f| f.a.gcd(&f.b).gcd(&f.c) == 1)
        .collect();
    out.sort_by_key(|f| (f.b.abs(), f.b));
    out
}

/// The CM point `(-B + i sqrt|D|) / (2A)`.
pub fn tau_of(f: &HeegnerForm) -> Complex64 {
    let d = f.discriminant() as f64;
    Complex64::new(-(f.b as f64) / (2.0 * f.a as f64), (-d).sqrt() / (2.0 * f.a as f64))
}

/// A numerically evaluated point of the canonical image, with a rigorous
/// bound `err` on the absolute error of every coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexProjPoint {
    #[serde(serialize_with = "serialize_complex")]
    pub coords: Vec<Complex64>,
    pub err: f64,
    pub terms: usize,
}

fn serialize_complex<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

impl ComplexProjPoint {
    /// Index of the largest coordinate.
    pub fn pivot(&self) -> usize {
        (0..self.coords.len())
            .max_by(|&i, &j| self.coords[i].norm().total_cmp(&self.coords[j].norm()))
            .expect("nonempty point")
    }

    /// Error bound after dividing by the largest coordinate.
    pub fn normalized_err(&self) -> f64 {
        let m = self.coords[self.pivot()].norm();
        if m <= self.err {
            return f64::INFINITY;
        }
        2.0 * self.err / (m - self.err)
    }

    /// Max-norm distance to `p`, both normalized at the pivot of `self`.
    pub fn distance(&self, p: &ProjPoint) -> f64 {
        let m = self.pivot();
        let c = p.to_f64();
        if c[m] == 0.0 {
            return f64::INFINITY;
        }
        let zm = self.coords[m];
        self.coords.iter().zip(&c).map(|(z, ci)| (z / zm - ci / c[m]).norm()).fold(0.0, f64::max)
    }
}

/// Order to which every weight-2 form vanishes at a Heegner point of
/// discriminant `d`: these points are elliptic for Gamma0(N) exactly when
/// the order has extra units.
pub fn elliptic_vanishing_order(d: i64) -> u32 {
    match d {
        -4 => 1,
        -3 => 2,
        _ => 0,
    }
}

/// Evaluate the basis at `tau` with `terms` coefficients.
pub fn eval_map(basis: &BasisRecord, tau: Complex64, terms: usize, ceiling: f64) -> Result<ComplexProjPoint> {
    eval_map_derivative(basis, tau, terms, ceiling, 0)
}

/// The image of `tau` through the `k`-th derivatives of the basis forms,
/// which is the canonical image when every form vanishes to order `k` at `tau`.
pub fn eval_map_derivative(
    basis: &BasisRecord,
    tau: Complex64,
    terms: usize,
    ceiling: f64,
    k: u32,
) -> Result<ComplexProjPoint> {
    if terms > basis.prec() {
        return Err(Error::Precondition(format!("{terms} terms requested but the basis has {}", basis.prec())));
    }
    if tau.im <= 0.0 {
        return Err(Error::Precondition("tau must lie in the upper half-plane".into()));
    }
    let err = basis.growth_constant() * tail_sum_power(tau.im, terms, 2 + k as i32);
    if err.is_nan() || err > ceiling {
        return Err(Error::InconclusivePrecision { err, ceiling, terms });
    }
    let coords = basis.forms.iter().map(|f| eval_derivative(f.coeffs(), tau, terms, k as i32)).collect();
    Ok(ComplexProjPoint { coords, err, terms })
}

/// Distances from `z` to the nearest and second-nearest candidates.
#[derive(Clone, Debug, Serialize)]
pub struct MatchDetail {
    pub point: Option<ProjPoint>,
    pub nearest: Option<f64>,
    pub second_nearest: Option<f64>,
}

pub fn match_point_detailed(z: &ComplexProjPoint, candidates: &[ProjPoint], tol: f64) -> Result<MatchDetail> {
    let nerr = z.normalized_err();
    if nerr.is_nan() || tol <= 10.0 * nerr {
        return Err(Error::Precondition(format!(
            "tolerance {tol:e} does not exceed ten times the normalized error {nerr:e}"
        )));
    }
    let mut dist: Vec<(f64, &ProjPoint)> = candidates.iter().map(|p| (z.distance(p), p)).collect();
    dist.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let within = dist.iter().take_while(|(d, _)| *d < tol).count();
    if within > 1 {
        return Err(Error::AmbiguousMatch { count: within, tol });
    }
    Ok(MatchDetail {
        point: (within == 1).then(|| dist[0].1.clone()),
        nearest: dist.first().map(|x| x.0),
        second_nearest: dist.get(1).map(|x| x.0),
    })
}

/// The unique candidate within `tol` of `z`, if any.
pub fn match_point(z: &ComplexProjPoint, candidates: &[ProjPoint], tol: f64) -> Result<Option<ProjPoint>> {
    Ok(match_point_detailed(z, candidates, tol)?.point)
}

/// Label of a rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    /// CM discriminant; 0 is the cusp.
    Cm(i64),
    Exceptional,
    Unknown,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cm(d) => write!(f, "{d}"),
            Self::Exceptional => f.write_str("exceptional"),
            Self::Unknown => f.write_str("unknown"),
        }
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Cm(d) => s.serialize_i64(*d),
            other => s.collect_str(other),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabelConfig {
    pub admissible: Vec<i64>,
    /// Initial number of coefficients; doubled up to the basis precision
    /// until the tail bound certifies the match.
    pub terms: usize,
    pub tol: f64,
    pub ceiling: f64,
    /// Imaginary part of the sample point standing in for the cusp.
    pub cusp_height: f64,
}

impl Default for LabelConfig {
    fn default() -> Self {
        Self { admissible: ADMISSIBLE_DISCRIMINANTS.to_vec(), terms: 400, tol: 1e-6, ceiling: 1e-8, cusp_height: 5.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticStatus {
    Matched,
    NoMatch,
    NoHeegnerPoints,
    Inconclusive,
}

/// What happened for one discriminant (0 for the cusp).
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub d: i64,
    pub forms: usize,
    pub status: DiagnosticStatus,
    pub terms: Option<usize>,
    pub err: Option<f64>,
    pub nearest: Option<f64>,
    pub second_nearest: Option<f64>,
    pub point: Option<ProjPoint>,
    /// Second-nearest distance is at least 1000 times the tolerance.
    pub separated: Option<bool>,
    pub detail: String,
}

impl Diagnostic {
    fn new(d: i64, forms: usize, status: DiagnosticStatus, detail: impl Into<String>) -> Self {
        Self {
            d,
            forms,
            status,
            terms: None,
            err: None,
            nearest: None,
            second_nearest: None,
            point: None,
            separated: None,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledPoint {
    pub point: ProjPoint,
    pub label: PointLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelTable {
    pub level: u64,
    pub labels: Vec<LabeledPoint>,
    pub diagnostics: Vec<Diagnostic>,
}

impl LabelTable {
    pub fn label_of(&self, p: &ProjPoint) -> Option<PointLabel> {
        self.labels.iter().find(|l| &l.point == p).map(|l| l.label)
    }

    pub fn point_of(&self, d: i64) -> Option<&ProjPoint> {
        self.labels.iter().find(|l| l.label == PointLabel::Cm(d)).map(|l| &l.point)
    }

    pub fn as_map(&self) -> BTreeMap<ProjPoint, PointLabel> {
        self.labels.iter().map(|l| (l.point.clone(), l.label)).collect()
    }
}

/// Evaluate with as many coefficients as needed for a certified match.
fn eval_adaptive(basis: &BasisRecord, tau: Complex64, k: u32, cfg: &LabelConfig) -> Result<ComplexProjPoint> {
    let prec = basis.prec();
    let mut terms = cfg.terms.clamp(1, prec);
    loop {
        let attempt = eval_map_derivative(basis, tau, terms, cfg.ceiling, k);
        let done = match &attempt {
            Ok(z) => 10.0 * z.normalized_err() < cfg.tol,
            Err(Error::InconclusivePrecision { .. }) => false,
            Err(_) => true,
        };
        if done {
            return attempt;
        }
        if terms == prec {
            return match attempt {
                Ok(z) => Err(Error::InconclusivePrecision { err: z.err, ceiling: cfg.ceiling, terms }),
                Err(e) => Err(e),
            };
        }
        terms = (2 * terms).min(prec);
    }
}

fn locate(
    basis: &BasisRecord,
    tau: Complex64,
    k: u32,
    pts: &[ProjPoint],
    cfg: &LabelConfig,
) -> Result<(ComplexProjPoint, MatchDetail)> {
    let z = eval_adaptive(basis, tau, k, cfg)?;
    let m = match_point_detailed(&z, pts, cfg.tol)?;
    Ok((z, m))
}

fn fill(diag: &mut Diagnostic, z: &ComplexProjPoint, m: &MatchDetail, tol: f64) {
    diag.terms = Some(z.terms);
    diag.err = Some(z.err);
    diag.nearest = m.nearest;
    diag.second_nearest = m.second_nearest;
    diag.point = m.point.clone();
    if m.point.is_some() {
        diag.separated = Some(m.second_nearest.is_none_or(|d| d >= 1e3 * tol));
    }
}

fn diagnose(level: u64, basis: &BasisRecord, pts: &[ProjPoint], d: i64, cfg: &LabelConfig) -> Diagnostic {
    if d == 0 {
        let tau = Complex64::new(0.0, cfg.cusp_height);
        return match locate(basis, tau, 0, pts, cfg) {
            Ok((z, m)) => {
                let status = if m.point.is_some() { DiagnosticStatus::Matched } else { DiagnosticStatus::NoMatch };
                let mut diag = Diagnostic::new(0, 0, status, format!("cusp sampled at tau = {}i", cfg.cusp_height));
                fill(&mut diag, &z, &m, cfg.tol);
                diag
            }
            Err(e) => Diagnostic::new(0, 0, DiagnosticStatus::Inconclusive, e.to_string()),
        };
    }
    let disc = match Discriminant::new(d) {
        Ok(disc) => disc,
        Err(e) => return Diagnostic::new(d, 0, DiagnosticStatus::Inconclusive, e.to_string()),
    };
    let forms = heegner_forms(level, disc);
    let k = elliptic_vanishing_order(d);
    if forms.is_empty() {
        return Diagnostic::new(
            d,
            0,
            DiagnosticStatus::NoHeegnerPoints,
            format!("{d} is not a square mod {}", 4 * level),
        );
    }
    let (z, m) = match locate(basis, tau_of(&forms[0]), k, pts, cfg) {
        Ok(r) => r,
        Err(e) => return Diagnostic::new(d, forms.len(), DiagnosticStatus::Inconclusive, e.to_string()),
    };
    // The other representatives must agree with the first.
    for f in &forms[1..] {
        match locate(basis, tau_of(f), k, pts, cfg) {
            Ok((_, other)) if other.point == m.point => {}
            Ok((_, other)) => {
                let mut diag = Diagnostic::new(
                    d,
                    forms.len(),
                    DiagnosticStatus::Inconclusive,
                    format!("representatives disagree: {:?} vs {:?}", m.point, other.point),
                );
                fill(&mut diag, &z, &m, cfg.tol);
                return diag;
            }
            Err(e) => return Diagnostic::new(d, forms.len(), DiagnosticStatus::Inconclusive, e.to_string()),
        }
    }
    let status = if m.point.is_some() { DiagnosticStatus::Matched } else { DiagnosticStatus::NoMatch };
    let mut diag = Diagnostic::new(d, forms.len(), status, format!("{} representative(s) agree", forms.len()));
    fill(&mut diag, &z, &m, cfg.tol);
    diag
}

/// Label each point by the CM discriminant of the Heegner point landing on
/// it, 0 for the cusp. Points no admissible discriminant lands on are
/// exceptional, provided every evaluation was conclusive.
pub fn label_points(basis: &BasisRecord, pts: &[ProjPoint], cfg: &LabelConfig) -> LabelTable {
    let level = basis.level;
    let mut ds = vec![0i64];
    ds.extend(cfg.admissible.iter().copied().filter(|&d| d != 0));
    let mut diagnostics: Vec<Diagnostic> = ds.par_iter().map(|&d| diagnose(level, basis, pts, d, cfg)).collect();
    diagnostics.sort_by_key(|x| std::cmp::Reverse(x.d));

    let conclusive = diagnostics.iter().all(|x| x.status != DiagnosticStatus::Inconclusive);
    let mut hits: BTreeMap<&ProjPoint, Vec<i64>> = BTreeMap::new();
    for diag in &diagnostics {
        if let Some(p) = &diag.point {
            hits.entry(p).or_default().push(diag.d);
        }
    }
    let mut labels: Vec<LabeledPoint> = pts
        .iter()
        .map(|p| {
            let label = match hits.get(p).map(Vec::as_slice) {
                Some([d]) => PointLabel::Cm(*d),
                Some(_) => PointLabel::Unknown,
                None if conclusive => PointLabel::Exceptional,
                None => PointLabel::Unknown,
            };
            LabeledPoint { point: p.clone(), label }
        })
        .collect();
    labels.sort_by(|a, b| a.point.cmp(&b.point));
    labels.dedup_by(|a, b| a.point == b.point);
    LabelTable { level, labels, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn forms_for_137() {
        let f = heegner_forms(137, disc(-4));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.discriminant() == -4 && x.a == 137));
        assert!(heegner_forms(137, disc(-3)).is_empty());
        for d in ADMISSIBLE_DISCRIMINANTS {
            for f in heegner_forms(137, disc(d)) {
                assert_eq!(f.discriminant(), d);
                assert!(f.b.abs() <= f.a);
            }
        }
    }

    #[test]
    fn tau_values() {
        let t = tau_of(&HeegnerForm { a: 137, b: 0, c: 1 });
        assert!((t.im - 1.0 / 137f64.sqrt()).abs() < 1e-15 && t.re == 0.0);
        let t = tau_of(&HeegnerForm { a: 137, b: 0, c: 137 });
        assert!((t - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn matching_rules() {
        let pts: Vec<ProjPoint> =
            [[1, 0, 0, 0], [19, 2, -16, 4], [1, 1, -1, 0]].iter().map(|c| ProjPoint::from_i64(c).unwrap()).collect();
        let z = ComplexProjPoint {
            coords: [19.0, 2.0, -16.0, 4.0].iter().map(|&x| Complex64::new(x / 19.0, 0.0)).collect(),
            err: 1e-9,
            terms: 1,
        };
        assert_eq!(match_point(&z, &pts, 1e-6).unwrap(), Some(pts[1].clone()));
        let far = ComplexProjPoint {
            coords: vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.1), 0.3.into(), 0.2.into()],
            ..z.clone()
        };
        assert_eq!(match_point(&far, &pts, 1e-6).unwrap(), None);
        let twins = [pts[1].clone(), pts[1].clone()];
        assert!(matches!(match_point(&z, &twins, 1e-6), Err(Error::AmbiguousMatch { count: 2, .. })));
        assert!(matches!(match_point(&z, &pts, 1e-9), Err(Error::Precondition(_))));
    }
}
