//! Lines and planes spanned by rational points, which of them meet the curve
//! only in rational points, and how those subspaces sit relative to each other.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    conic_cubic_divisor, line_divisor, plane_section, section_may_split, subspace_through, tangent_line, DivisorPoint,
    Hyperplane, IntersectionDivisor, LinearSubspace,
};
use crate::heegner::PointLabel;
use crate::linalg;
use crate::model::CanonicalModel;
use crate::points::ProjPoint;

pub type Labels = BTreeMap<ProjPoint, PointLabel>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceReport {
    /// The line of a plane quartic, or the plane of a space sextic.
    pub hyperplane: Hyperplane,
    pub subspace: LinearSubspace,
    pub divisor: IntersectionDivisor,
    /// Label of each divisor entry, where known.
    pub labels: Vec<Option<PointLabel>>,
    pub fully_rational: bool,
    pub notation: String,
}

impl IncidenceReport {
    fn new(subspace: LinearSubspace, divisor: IntersectionDivisor, labels: &Labels) -> Self {
        let hyperplane = subspace.as_hyperplane().expect("reports are built from hyperplanes");
        let entry_labels =
            divisor.entries.iter().map(|e| e.point.as_rational().and_then(|p| labels.get(p).copied())).collect();
        let fully_rational = divisor.entries.iter().all(|e| e.point.as_rational().is_some());
        let notation = divisor_notation(&divisor, labels);
        Self { hyperplane, subspace, divisor, labels: entry_labels, fully_rational, notation }
    }
}

fn sort_key(point: &DivisorPoint, labels: &Labels) -> (u8, i64) {
    match point {
        DivisorPoint::Rational { point } => match labels.get(point) {
            Some(PointLabel::Cm(d)) => (0, -d),
            _ => (1, 0),
        },
        _ => (2, 0),
    }
}

/// Divisor written as `2(0) + (-7) + ...`, CM points first by decreasing
/// discriminant, then other rational points by coordinates, then the rest.
pub fn divisor_notation(divisor: &IntersectionDivisor, labels: &Labels) -> String {
    let mut entries: Vec<_> = divisor.entries.iter().collect();
    entries.sort_by(|a, b| sort_key(&a.point, labels).cmp(&sort_key(&b.point, labels)).then(a.point.cmp(&b.point)));
    let parts: Vec<String> = entries
        .iter()
        .map(|e| {
            let inner = match &e.point {
                DivisorPoint::Rational { point } => match labels.get(point) {
                    Some(PointLabel::Cm(d)) => d.to_string(),
                    _ => point.to_string(),
                },
                DivisorPoint::Quadratic { discriminant, .. } => format!("quadratic pair, disc {discriminant}"),
                DivisorPoint::Higher { point } => format!("degree-{} point", point.degree),
            };
            let m = if e.multiplicity > 1 { e.multiplicity.to_string() } else { String::new() };
            format!("{m}({inner})")
        })
        .collect();
    parts.join(" + ")
}

/// Lines through pairs of the points and tangent lines at each point, with
/// their divisors on a plane quartic.
pub fn rational_lines(model: &CanonicalModel, pts: &[ProjPoint], labels: &Labels) -> Result<Vec<IncidenceReport>> {
    if pts.is_empty() {
        return Err(Error::Precondition("no points given".into()));
    }
    if model.quartic().is_none() {
        return Err(Error::Precondition("line reports need a plane quartic model".into()));
    }
    let mut candidates = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        candidates.insert(tangent_line(model, p)?);
        for q in &pts[i + 1..] {
            candidates.insert(subspace_through(&[p.clone(), q.clone()])?);
        }
    }
    let candidates: Vec<LinearSubspace> = candidates.into_iter().collect();
    candidates
        .into_par_iter()
        .map(|l| {
            let d = line_divisor(model, &l)?;
            Ok(IncidenceReport::new(l, d, labels))
        })
        .collect()
}

/// A triple of points that does not span a plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedTriple {
    pub points: [ProjPoint; 3],
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneScan {
    pub reports: Vec<IncidenceReport>,
    pub skipped: Vec<SkippedTriple>,
}

impl PlaneScan {
    pub fn fully_rational(&self) -> impl Iterator<Item = &IncidenceReport> {
        self.reports.iter().filter(|r| r.fully_rational)
    }
}

fn plane_report(model: &CanonicalModel, h: &Hyperplane, labels: &Labels) -> Result<IncidenceReport> {
    let plane = h.subspace();
    let d = conic_cubic_divisor(&plane_section(model, &plane)?)?;
    Ok(IncidenceReport::new(plane, d, labels))
}

/// Planes through triples of the points, with their divisors on a
/// quadric-cubic model. Collinear triples are reported in `skipped`.
pub fn rational_planes(model: &CanonicalModel, pts: &[ProjPoint], labels: &Labels) -> Result<PlaneScan> {
    if pts.len() < 3 {
        return Err(Error::Precondition(format!("need at least 3 points, got {}", pts.len())));
    }
    if model.quadric().is_none() {
        return Err(Error::Precondition("plane reports need a quadric-cubic model".into()));
    }
    let mut normals = BTreeSet::new();
    let mut skipped = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let triple = [pts[i].clone(), pts[j].clone(), pts[k].clone()];
                match subspace_through(&triple) {
                    Ok(s) => {
                        normals.insert(s.as_hyperplane().expect("rank 3 in P^3"));
                    }
                    Err(Error::RankDeficient { found, .. }) => {
                        skipped.push(SkippedTriple { points: triple, rank: found })
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let normals: Vec<Hyperplane> = normals.into_iter().collect();
    let reports = normals.par_iter().map(|h| plane_report(model, h, labels)).collect::<Result<_>>()?;
    Ok(PlaneScan { reports, skipped })
}

/// Every plane with primitive normal of max-norm at most `bound` that meets
/// the curve only in rational points.
pub fn plane_sweep(model: &CanonicalModel, bound: i64, labels: &Labels) -> Result<Vec<IncidenceReport>> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut normals = BTreeSet::new();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    if let Ok(h) = Hyperplane::from_i64(&[a, b, c, d]) {
                        normals.insert(h);
                    }
                }
            }
        }
    }
    let normals: Vec<Hyperplane> = normals.into_iter().collect();
    let found: Vec<Option<IncidenceReport>> = normals
        .par_iter()
        .map(|h| {
            let section = match plane_section(model, &h.subspace()) {
                Ok(s) => s,
                Err(Error::PlaneOnSurface) => return Ok(None),
                Err(e) => return Err(e),
            };
            if !section_may_split(&section)? {
                return Ok(None);
            }
            let r = IncidenceReport::new(section.plane.clone(), conic_cubic_divisor(&section)?, labels);
            Ok(r.fully_rational.then_some(r))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Points lying together on a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollinearSet {
    pub line: LinearSubspace,
    pub points: Vec<ProjPoint>,
}

/// Maximal sets of at least three collinear points.
pub fn collinear_subsets(pts: &[ProjPoint]) -> Vec<CollinearSet> {
    let mut lines = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if let Ok(l) = subspace_through(&[p.clone(), q.clone()]) {
                lines.insert(l);
            }
        }
    }
    lines
        .into_iter()
        .filter_map(|line| {
            let on: Vec<ProjPoint> = pts.iter().filter(|p| line.contains(p)).cloned().collect();
            (on.len() >= 3).then_some(CollinearSet { line, points: on })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedSubspace {
    pub name: String,
    pub subspace: LinearSubspace,
}

/// A nonempty intersection of two or three of the named subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coincidence {
    pub members: Vec<String>,
    pub intersection: LinearSubspace,
    pub point: Option<ProjPoint>,
    pub label: Option<PointLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub inner: String,
    pub outer: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationSummary {
    pub subspaces: Vec<NamedSubspace>,
    pub collinear: Vec<CollinearSet>,
    pub intersections: Vec<Coincidence>,
    pub containments: Vec<Containment>,
}

impl ConfigurationSummary {
    pub fn intersection_of(&self, names: &[&str]) -> Option<&Coincidence> {
        self.intersections
            .iter()
            .find(|c| c.members.len() == names.len() && names.iter().all(|n| c.members.iter().any(|m| m == n)))
    }

    pub fn contains(&self, inner: &str, outer: &str) -> bool {
        self.containments.iter().any(|c| c.inner == inner && c.outer == outer)
    }
}

/// Intersections among the report subspaces (named `H1, H2, ...`) and the
/// collinear lines (`L1, L2, ...`): every nonempty pairwise intersection,
/// every nonempty triple intersection of report subspaces, and every
/// containment of a line in a report subspace.
pub fn configuration(reports: &[IncidenceReport], lines: &[CollinearSet], labels: &Labels) -> ConfigurationSummary {
    let mut named: Vec<NamedSubspace> = reports
        .iter()
        .enumerate()
        .map(|(i, r)| NamedSubspace { name: format!("H{}", i + 1), subspace: r.subspace.clone() })
        .collect();
    let hyper_count = named.len();
    named.extend(
        lines.iter().enumerate().map(|(i, l)| NamedSubspace { name: format!("L{}", i + 1), subspace: l.line.clone() }),
    );
    let coincidence = |members: Vec<String>, s: LinearSubspace| {
        let point = s.as_point();
        let label = point.as_ref().and_then(|p| labels.get(p).copied());
        Coincidence { members, intersection: s, point, label }
    };
    let mut intersections = Vec::new();
    let mut containments = Vec::new();
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            let (a, b) = (&named[i], &named[j]);
            let same_dim = a.subspace.rank() == b.subspace.rank();
            if !same_dim && b.subspace.rank() < a.subspace.rank() && a.subspace.contains_subspace(&b.subspace) {
                containments.push(Containment { inner: b.name.clone(), outer: a.name.clone() });
                continue;
            }
            if let Some(s) = a.subspace.intersect(&b.subspace) {
                intersections.push(coincidence(vec![a.name.clone(), b.name.clone()], s));
            }
        }
    }
    for i in 0..hyper_count {
        for j in i + 1..hyper_count {
            for k in j + 1..hyper_count {
                let Some(s) =
                    named[i].subspace.intersect(&named[j].subspace).and_then(|s| s.intersect(&named[k].subspace))
                else {
                    continue;
                };
                let members = [i, j, k].iter().map(|&x| named[x].name.clone()).collect();
                intersections.push(coincidence(members, s));
            }
        }
    }
    debug_assert!(intersections.iter().all(|c| linalg::rank(c.intersection.span()) == c.intersection.rank()));
    ConfigurationSummary { subspaces: named, collinear: lines.to_vec(), intersections, containments }
}
