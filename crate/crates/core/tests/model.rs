mod common;

use common::{basis, GENUS3, GENUS4};
use x0plus_core::model::relation_space;
use x0plus_core::{build_model, verify_model};

#[test]
fn every_fixture_yields_a_certified_model() {
    for level in GENUS3.iter().chain(&GENUS4) {
        let b = basis(*level);
        let m = build_model(&b).unwrap();
        assert!(verify_model(&m, &b).unwrap(), "level {level}");
        assert!(m.polys.iter().all(|p| p.is_normalized()));
    }
}

#[test]
fn relation_dimensions_match_canonical_curves() {
    let b = basis(97);
    assert_eq!(relation_space(&b, 2).unwrap().len(), 0);
    assert_eq!(relation_space(&b, 4).unwrap().len(), 1);
    let b = basis(137);
    assert_eq!(relation_space(&b, 2).unwrap().len(), 1);
    assert_eq!(relation_space(&b, 3).unwrap().len(), 5);
}

#[test]
fn point_search_on_fixtures() {
    for (level, count) in [(97u64, 10), (137, 9)] {
        let b = basis(level);
        let m = build_model(&b).unwrap();
        let pts = x0plus_core::points::search(&m, 30).unwrap();
        assert_eq!(pts.len(), count, "level {level}");
        assert!(pts.iter().all(|p| m.contains(p.coords())));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn genus_four_model_rejects_foreign_points() {
    let m = build_model(&basis(137)).unwrap();
    let off = x0plus_core::ProjPoint::from_i64(&[1, 1, 1, 1]).unwrap();
    assert!(!m.contains(off.coords()));
    assert!(m.ideal_contains(&m.quadric().unwrap().mul_var(2)));
    assert!(!m.ideal_contains(&m.cubic().unwrap().mul_var(0).mul_var(1).derivative(3)));
}
