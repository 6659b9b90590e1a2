//! The published model of X0+(137) with its rational points and the
//! incidences among them, kept independent of the q-expansion fixtures.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{DivisorPoint, Hyperplane, LinearSubspace};
use crate::heegner::PointLabel;
use crate::incidence::{collinear_subsets, rational_planes};
use crate::model::{CanonicalModel, HomogeneousPoly};
use crate::points::{search, ProjPoint};

pub const LEVEL: u64 = 137;
pub const VARIABLES: [char; 4] = ['W', 'X', 'Y', 'Z'];

pub const QUADRIC: &str = "XY + WY + 2Y^2 + 2WZ + XZ + 6YZ + 3Z^2";
pub const CUBIC: &str = "X^3 + WX^2 + 6X^2Z - 2XY^2 - 5XYZ + XZW + 13XZ^2 + 2Y^3 + 3WY^2 + W^2Y + 3WYZ - 6YZ^2 \
                         + ZW^2 - 4Z^2W + 14Z^3";

/// Rational points in `(W, X, Y, Z)` order; `None` marks the exceptional point.
pub const POINTS: [(Option<i64>, [i64; 4]); 9] = [
    (Some(0), [1, 0, 0, 0]),
    (Some(-4), [2, -4, -3, 2]),
    (Some(-7), [2, -1, -2, 1]),
    (Some(-8), [-1, 1, 0, 0]),
    (Some(-11), [1, 1, -1, 0]),
    (Some(-16), [2, 0, -1, 0]),
    (Some(-19), [1, -2, -1, 1]),
    (Some(-28), [0, 1, 2, -1]),
    (None, [19, 2, -16, 4]),
];

/// Planes meeting the curve only in rational points, with their divisors.
pub const RATIONAL_PLANES: [([i64; 4], &str); 3] = [
    ([0, 0, 0, 1], "2(0) + 2(-8) + (-11) + (-16)"),
    ([1, 1, 2, 3], "(-7) + (-8) + 2(-11) + (-16) + (-19)"),
    ([0, 1, 1, 3], "(0) + 2(-7) + (-11) + (-19) + (-28)"),
];

/// The plane through the exceptional point that also passes through the
/// cusp and the CM points of discriminants -4 and -11.
pub const EXCEPTIONAL_PLANE: [i64; 4] = [0, 2, 2, 7];
/// Labels of the rational points on that plane other than the exceptional one.
pub const EXCEPTIONAL_PLANE_CM: [i64; 3] = [0, -4, -11];
/// Fundamental discriminant of the residual conjugate pair.
pub const EXCEPTIONAL_PLANE_PAIR: i64 = 8;

/// Lines containing three of the points, by label.
pub const LINES: [[i64; 3]; 2] = [[-7, -11, -19], [-8, -11, -16]];
/// The common point of both lines and of the three rational planes.
pub const MEETING_POINT: i64 = -11;

pub fn model() -> CanonicalModel {
    let parse = |s| HomogeneousPoly::parse(s, &VARIABLES).expect("embedded equation parses");
    let names = VARIABLES.iter().map(|c| c.to_string()).collect();
    CanonicalModel::new(LEVEL, 4, names, vec![parse(QUADRIC), parse(CUBIC)]).expect("embedded model is well formed")
}

pub fn points() -> Vec<ProjPoint> {
    POINTS.iter().map(|(_, c)| ProjPoint::from_i64(c).expect("nonzero")).collect()
}

pub fn label(entry: Option<i64>) -> PointLabel {
    entry.map_or(PointLabel::Exceptional, PointLabel::Cm)
}

pub fn labels() -> BTreeMap<ProjPoint, PointLabel> {
    POINTS.iter().map(|(d, c)| (ProjPoint::from_i64(c).expect("nonzero"), label(*d))).collect()
}

/// The point carrying CM label `d`.
pub fn point_of(d: i64) -> ProjPoint {
    let (_, c) = POINTS.iter().find(|(l, _)| *l == Some(d)).expect("label in table");
    ProjPoint::from_i64(c).expect("nonzero")
}

pub fn exceptional_point() -> ProjPoint {
    let (_, c) = POINTS.iter().find(|(l, _)| l.is_none()).expect("exceptional point in table");
    ProjPoint::from_i64(c).expect("nonzero")
}

/// One checked statement about the embedded model.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn claim(id: &'static str, statement: &'static str, passed: bool, detail: impl Into<String>) -> Claim {
    Claim { id, statement, passed, detail: detail.into() }
}

fn show(pts: &[ProjPoint]) -> String {
    pts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Check every incidence statement about the embedded model with exact
/// arithmetic. `height` bounds the point search.
pub fn check_claims(height: u64) -> Result<Vec<Claim>> {
    let m = model();
    let pts = points();
    let labels = labels();
    let mut out = Vec::new();

    let off: Vec<ProjPoint> = pts.iter().filter(|p| !m.contains(p.coords())).cloned().collect();
    out.push(claim(
        "equations",
        "all nine listed points satisfy both equations",
        off.is_empty(),
        format!("off the model: [{}]", show(&off)),
    ));

    let mut found = search(&m, height)?;
    found.sort();
    let mut want = pts.clone();
    want.sort();
    out.push(claim(
        "search",
        "the point search returns exactly the nine listed points",
        found == want,
        format!("height {height}: {} points: {}", found.len(), show(&found)),
    ));

    let scan = rational_planes(&m, &pts, &labels)?;
    let rational: Vec<_> = scan.fully_rational().collect();
    let mut published_ok = true;
    let mut details = Vec::new();
    for (normal, notation) in RATIONAL_PLANES {
        let h = Hyperplane::from_i64(&normal)?;
        let hit = rational.iter().find(|r| r.hyperplane == h);
        let ok = hit.is_some_and(|r| r.notation == notation);
        published_ok &= ok;
        details.push(format!("{normal:?}: {}", hit.map_or("not fully rational".to_string(), |r| r.notation.clone())));
    }
    out.push(claim(
        "planes",
        "each listed plane meets the curve in its listed rational divisor",
        published_ok,
        details.join("; "),
    ));
    let extra: Vec<String> = rational
        .iter()
        .filter(|r| !RATIONAL_PLANES.iter().any(|(n, _)| Hyperplane::from_i64(n).ok().as_ref() == Some(&r.hyperplane)))
        .map(|r| {
            format!("{:?}: {}", r.hyperplane.normal().iter().map(ToString::to_string).collect::<Vec<_>>(), r.notation)
        })
        .collect();
    out.push(claim(
        "planes-exhaustive",
        "no other plane through three of the points meets the curve only in rational points",
        extra.is_empty(),
        if extra.is_empty() { "none".to_string() } else { format!("also fully rational: {}", extra.join("; ")) },
    ));

    let pe = Hyperplane::from_i64(&EXCEPTIONAL_PLANE)?;
    let report = scan.reports.iter().find(|r| r.hyperplane == pe);
    let pe_ok = report.is_some_and(|r| {
        let cm_ok = EXCEPTIONAL_PLANE_CM.iter().all(|&d| r.divisor.multiplicity_of(&point_of(d)) == 1);
        let exc_ok = r.divisor.multiplicity_of(&exceptional_point()) == 1;
        let quad: Vec<_> = r
            .divisor
            .entries
            .iter()
            .filter_map(|e| match &e.point {
                DivisorPoint::Quadratic { discriminant, .. } => Some((discriminant.clone(), e.multiplicity)),
                _ => None,
            })
            .collect();
        cm_ok && exc_ok && r.divisor.entries.len() == 5 && quad == [(EXCEPTIONAL_PLANE_PAIR.into(), 1)]
    });
    out.push(claim(
        "exceptional-plane",
        "the plane through the cusp, -4 and -11 contains the exceptional point and a conjugate pair over Q(sqrt 2)",
        pe_ok,
        report.map_or("plane not spanned by the points".to_string(), |r| r.notation.clone()),
    ));

    let sets = collinear_subsets(&pts);
    let listed: Vec<Vec<ProjPoint>> = LINES
        .iter()
        .map(|ds| {
            let mut v: Vec<ProjPoint> = ds.iter().map(|&d| point_of(d)).collect();
            v.sort();
            v
        })
        .collect();
    let found: Vec<Vec<ProjPoint>> = sets
        .iter()
        .map(|s| {
            let mut v = s.points.clone();
            v.sort();
            v
        })
        .collect();
    let missing = listed.iter().filter(|l| !found.contains(l)).count();
    out.push(claim(
        "lines",
        "{-7, -11, -19} and {-8, -11, -16} are maximal collinear sets",
        missing == 0,
        format!("{missing} of {} not found", listed.len()),
    ));
    let extra: Vec<String> = found.iter().filter(|l| !listed.contains(l)).map(|v| format!("{{{}}}", show(v))).collect();
    out.push(claim(
        "lines-exhaustive",
        "no other three of the points are collinear",
        extra.is_empty(),
        if extra.is_empty() { "none".to_string() } else { format!("also collinear: {}", extra.join(" ")) },
    ));

    let meeting = point_of(MEETING_POINT);
    let plane = |i: usize| Hyperplane::from_i64(&RATIONAL_PLANES[i].0).map(|h| h.subspace());
    let (p1, p2, p3) = (plane(0)?, plane(1)?, plane(2)?);
    let line = |i: usize| {
        LinearSubspace::span_of(&LINES[i].iter().map(|&d| point_of(d).coords().to_vec()).collect::<Vec<_>>())
    };
    let (l1, l2) = (line(0)?, line(1)?);
    let as_point = |s: Option<LinearSubspace>| s.and_then(|s| s.as_point());
    let describe = |p: &Option<ProjPoint>| p.as_ref().map_or("not a single point".to_string(), ToString::to_string);
    let lines_meet = as_point(l1.intersect(&l2));
    out.push(claim(
        "lines-meet",
        "the two lines meet at the point -11",
        lines_meet.as_ref() == Some(&meeting),
        describe(&lines_meet),
    ));
    let inside = p2.contains_subspace(&l1) && p2.contains_subspace(&l2);
    out.push(claim("lines-in-plane", "both lines lie in the plane W + X + 2Y + 3Z = 0", inside, format!("{inside}")));
    let triple = as_point(p1.intersect(&p2).and_then(|s| s.intersect(&p3)));
    out.push(claim(
        "planes-meet",
        "the three listed planes meet exactly at the point -11",
        triple.as_ref() == Some(&meeting),
        describe(&triple),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lies_on_the_model() {
        let m = model();
        for p in points() {
            assert!(m.contains(p.coords()), "{p}");
        }
        assert_eq!(labels().len(), 9);
        assert_eq!(point_of(-8), ProjPoint::from_i64(&[1, -1, 0, 0]).unwrap());
    }
}
