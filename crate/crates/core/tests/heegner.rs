mod common;

use std::collections::BTreeSet;

use num_complex::Complex64;

use common::{basis, data_dir, GENUS3, GENUS4};
use x0plus_core::heegner::{
    eval_map, heegner_forms, label_points, DiagnosticStatus, LabelConfig, PointLabel, ADMISSIBLE_DISCRIMINANTS,
};
use x0plus_core::ingest::{fricke_check, read_forms_unchecked, FrickeStatus};
use x0plus_core::{build_model, load_basis, search, BasisRecord, Discriminant, Error, ProjPoint};

fn pt(c: &[i64]) -> ProjPoint {
    ProjPoint::from_i64(c).unwrap()
}

#[test]
fn labels_at_level_97() {
    let b = basis(97);
    let pts = search(&build_model(&b).unwrap(), 30).unwrap();
    let t = label_points(&b, &pts, &LabelConfig::default());
    let want = [
        ([0, 1, 0], -43),
        ([1, 0, 0], 0),
        ([1, 0, 1], -12),
        ([1, 1, 0], -11),
        ([1, 1, 1], -4),
        ([1, 2, 1], -3),
        ([2, 1, 1], -8),
        ([3, 1, 1], -16),
        ([4, 2, 1], -27),
        ([12, 5, 2], -163),
    ];
    assert_eq!(t.labels.len(), want.len());
    for (c, d) in want {
        assert_eq!(t.label_of(&pt(&c)), Some(PointLabel::Cm(d)), "{c:?}");
    }
    assert!(t.diagnostics.iter().all(|d| d.separated != Some(false)));
}

/// A class-number-one discriminant that is a square mod 4N gives a rational
/// CM point, so the matched discriminants must be exactly those.
#[test]
fn matched_discriminants_are_the_split_ones() {
    for &level in GENUS3.iter().chain(&GENUS4) {
        let b = basis(level);
        let pts = search(&build_model(&b).unwrap(), 60).unwrap();
        let t = label_points(&b, &pts, &LabelConfig::default());
        let matched: BTreeSet<i64> =
            t.diagnostics.iter().filter(|d| d.status == DiagnosticStatus::Matched).map(|d| d.d).collect();
        let mut expected: BTreeSet<i64> = ADMISSIBLE_DISCRIMINANTS
            .iter()
            .copied()
            .filter(|&d| !heegner_forms(level, Discriminant::new(d).unwrap()).is_empty())
            .collect();
        expected.insert(0);
        assert_eq!(matched, expected, "level {level}");
        assert!(t.diagnostics.iter().all(|d| d.status != DiagnosticStatus::Inconclusive), "level {level}");
        let cm: BTreeSet<&ProjPoint> = t.diagnostics.iter().filter_map(|d| d.point.as_ref()).collect();
        assert_eq!(cm.len(), expected.len(), "distinct CM points at level {level}");
        let exceptional: Vec<String> =
            t.labels.iter().filter(|l| l.label == PointLabel::Exceptional).map(|l| format!("{}", l.point)).collect();
        println!("{level}: {} points, exceptional {exceptional:?}", pts.len());
        assert!(t.labels.iter().all(|l| l.label != PointLabel::Unknown));
    }
}

#[test]
fn truncation_bound_at_height_one() {
    let b = basis(97);
    let z = eval_map(&b, Complex64::new(0.1, 1.0), 50, 1e-8).unwrap();
    assert!(z.err < 1e-100, "{}", z.err);
    assert!(matches!(eval_map(&b, Complex64::new(0.0, 0.001), 400, 1e-8), Err(Error::InconclusivePrecision { .. })));
    assert!(matches!(eval_map(&b, Complex64::new(0.0, -1.0), 50, 1e-8), Err(Error::Precondition(_))));
}

#[test]
fn fixtures_are_fricke_invariant() {
    for &level in GENUS3.iter().chain(&GENUS4) {
        let reports = fricke_check(&basis(level), 4, 1e-8);
        assert!(reports.iter().all(|r| r.status == FrickeStatus::Pass), "level {level}: {reports:?}");
    }
}

#[test]
fn minus_eigenforms_are_rejected() {
    let path = data_dir().join("../crates/core/tests/data/x0minus_97.json");
    assert!(matches!(load_basis(&path), Err(Error::GenusMismatch { level: 97, expected: 3, found: 4 })));
    let forms = read_forms_unchecked(&path).unwrap();
    let b = BasisRecord::new(97, forms[..3].to_vec(), "minus space").unwrap();
    let reports = fricke_check(&b, 4, 1e-8);
    assert!(reports.iter().all(|r| r.status == FrickeStatus::Fail), "{reports:?}");
}
