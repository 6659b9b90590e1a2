//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Exits nonzero if any criterion fails other than through a discrepancy
//! pinned in `KNOWN`.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{basis, GENUS3};
use x0plus_core::arith::is_prime;
use x0plus_core::geometry::{
    conic_cubic_divisor, conic_cubic_divisor_with_shears, factor_binary_form, plane_section, BinaryForm, Hyperplane,
    LinearSubspace,
};
use x0plus_core::heegner::{DiagnosticStatus, LabelConfig, PointLabel};
use x0plus_core::incidence::{collinear_subsets, configuration, rational_lines, rational_planes, IncidenceReport};
use x0plus_core::transform::model_equivalence;
use x0plus_core::{
    build_model, class_number, enumerate_levels, genus_plus, golden, label_points, search, verify_model, Discriminant,
    ProjPoint,
};

/// Criteria whose failure is a confirmed disagreement with the published
/// data, with the exact outcome that is expected instead.
const KNOWN: [(u32, &str); 2] = [
    (4, "extra fully-rational plane [0, 0, 1, 2]: 3(0) + (-7) + (-8) + (-28)"),
    (6, "published lines meet at -11; both in the plane [1, 1, 2, 3]: true; the three planes meet at [1:1:-1:0]; extra collinear triple [-28, -7, 0]"),
];

struct Outcome {
    id: u32,
    passed: bool,
    detail: String,
}

fn run(id: u32, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (passed, detail) = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|e| {
        (false, format!("panicked: {:?}", e.downcast_ref::<String>().cloned().unwrap_or_default()))
    });
    let o = Outcome { id, passed, detail: format!("{detail} [{:.2?}]", t.elapsed()) };
    println!("{} criterion {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.detail);
    o
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool").install(f)
}

fn criterion_1() -> (bool, String) {
    let t = Instant::now();
    let g3 = enumerate_levels(3, 250);
    let g4 = enumerate_levels(4, 320);
    let elapsed = t.elapsed();
    let ok = g3 == [97, 109, 113, 127, 139, 149, 151, 179, 239]
        && g4 == [137, 173, 199, 251, 311]
        && elapsed < Duration::from_secs(1);
    (ok, format!("genus 3: {g3:?}; genus 4: {g4:?}; {elapsed:.2?} (limit 1 s)"))
}

fn criterion_2() -> (bool, String) {
    let m = golden::model();
    let values: Vec<(BigInt, BigInt)> = golden::points()
        .iter()
        .map(|p| (m.quadric().unwrap().eval(p.coords()), m.cubic().unwrap().eval(p.coords())))
        .collect();
    let ok = values.len() == 9 && values.iter().all(|(a, b)| a == &BigInt::from(0) && b == &BigInt::from(0));
    (ok, format!("9 points, quadric and cubic values {values:?}"))
}

fn criterion_3() -> (bool, String) {
    let m = golden::model();
    let t = Instant::now();
    let mut found = single_threaded(|| search(&m, 25)).expect("search");
    let elapsed = t.elapsed();
    found.sort();
    let mut want = golden::points();
    want.sort();
    let ok = found == want && elapsed < Duration::from_secs(60);
    (ok, format!("{} points at height 25, single thread, {elapsed:.2?} (limit 60 s)", found.len()))
}

fn published_plane_reports(scan: &[IncidenceReport]) -> Vec<Option<&IncidenceReport>> {
    golden::RATIONAL_PLANES
        .iter()
        .map(|(n, _)| {
            let h = Hyperplane::from_i64(n).unwrap();
            scan.iter().find(|r| r.hyperplane == h)
        })
        .collect()
}

fn normal_string(h: &Hyperplane) -> String {
    format!("[{}]", h.normal().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn criterion_4() -> (bool, String) {
    let scan = rational_planes(&golden::model(), &golden::points(), &golden::labels()).expect("planes");
    let rational: Vec<IncidenceReport> = scan.fully_rational().cloned().collect();
    let published = published_plane_reports(&rational);
    let patterns_ok = published
        .iter()
        .zip(golden::RATIONAL_PLANES)
        .all(|(r, (_, notation))| r.is_some_and(|r| r.notation == notation));
    let extra: Vec<String> = rational
        .iter()
        .filter(|r| !published.iter().flatten().any(|p| p.hyperplane == r.hyperplane))
        .map(|r| format!("extra fully-rational plane {}: {}", normal_string(&r.hyperplane), r.notation))
        .collect();
    let found: Vec<String> =
        rational.iter().map(|r| format!("{} {}", normal_string(&r.hyperplane), r.notation)).collect();
    let detail = format!(
        "{} fully-rational planes [{}]; published three with exact patterns: {patterns_ok}{}",
        rational.len(),
        found.join("; "),
        if extra.is_empty() { String::new() } else { format!("; {}", extra.join("; ")) }
    );
    (patterns_ok && extra.is_empty(), detail)
}

fn criterion_5() -> (bool, String) {
    let m = golden::model();
    let h = Hyperplane::from_i64(&golden::EXCEPTIONAL_PLANE).unwrap();
    let d = conic_cubic_divisor(&plane_section(&m, &h.subspace()).unwrap()).unwrap();
    let rational_ok = golden::EXCEPTIONAL_PLANE_CM.iter().all(|&x| d.multiplicity_of(&golden::point_of(x)) == 1)
        && d.multiplicity_of(&golden::exceptional_point()) == 1;
    let pairs: Vec<String> = d
        .entries
        .iter()
        .filter_map(|e| match &e.point {
            x0plus_core::geometry::DivisorPoint::Quadratic { discriminant, .. } if e.multiplicity == 1 => {
                Some(discriminant.to_string())
            }
            _ => None,
        })
        .collect();
    let ok = rational_ok && d.entries.len() == 5 && pairs == ["8"] && d.degree() == 6;
    let notation = x0plus_core::incidence::divisor_notation(&d, &golden::labels());
    (ok, format!("normal {:?}: {notation}", golden::EXCEPTIONAL_PLANE))
}

fn criterion_6() -> (bool, String) {
    let pts = golden::points();
    let labels = golden::labels();
    let lines = collinear_subsets(&pts);
    let label_set = |v: &[ProjPoint]| {
        let mut l: Vec<i64> = v
            .iter()
            .map(|p| match labels[p] {
                PointLabel::Cm(d) => d,
                _ => i64::MIN,
            })
            .collect();
        l.sort();
        l
    };
    let got: Vec<Vec<i64>> = lines.iter().map(|s| label_set(&s.points)).collect();
    let want: Vec<Vec<i64>> = golden::LINES
        .iter()
        .map(|l| {
            let mut v = l.to_vec();
            v.sort();
            v
        })
        .collect();
    let mut sorted = got.clone();
    sorted.sort();
    let mut sorted_want = want.clone();
    sorted_want.sort();
    let exactly = sorted == sorted_want;
    let extra: Vec<&Vec<i64>> = got.iter().filter(|l| !want.contains(l)).collect();

    let scan = rational_planes(&golden::model(), &pts, &labels).expect("planes");
    let reports: Vec<IncidenceReport> =
        published_plane_reports(&scan.reports).into_iter().map(|r| r.expect("published plane").clone()).collect();
    let summary = configuration(&reports, &lines, &labels);
    let name = |w: &Vec<i64>| got.iter().position(|l| l == w).map(|i| format!("L{}", i + 1));
    let (Some(l1), Some(l2)) = (name(&want[0]), name(&want[1])) else {
        return (false, format!("collinear {got:?}: a published line is missing"));
    };
    let meet = PointLabel::Cm(golden::MEETING_POINT);
    let lines_meet = summary.intersection_of(&[&l1, &l2]).and_then(|c| c.label);
    let contained = summary.contains(&l1, "H2") && summary.contains(&l2, "H2");
    let planes_meet = summary.intersection_of(&["H1", "H2", "H3"]);
    let planes_meet_ok = planes_meet.is_some_and(|c| c.label == Some(meet) && c.point == Some(golden::point_of(-11)));
    let ok = exactly && lines_meet == Some(meet) && contained && planes_meet_ok;
    (
        ok,
        format!(
            "collinear {got:?}; published lines meet at {}; both in the plane {:?}: {contained}; the three planes meet at {}{}",
            lines_meet.map_or("-".into(), |l| l.to_string()),
            golden::RATIONAL_PLANES[1].0,
            planes_meet.and_then(|c| c.point.as_ref()).map_or("-".into(), |p| p.to_string()),
            extra.iter().map(|l| format!("; extra collinear triple {l:?}")).collect::<String>(),
        ),
    )
}

fn criterion_7() -> (bool, String) {
    let b = basis(golden::LEVEL);
    let ours = build_model(&b).expect("model");
    let pts = search(&ours, 25).expect("search");
    let m = model_equivalence(&ours, &pts, &golden::model(), &golden::points())
        .expect("equivalence search")
        .expect("fixture model is equivalent to the published one");
    let moved = b.transformed(&m).expect("transform");
    let cfg = LabelConfig { terms: 400, tol: 1e-6, ..LabelConfig::default() };
    let table = label_points(&moved, &golden::points(), &cfg);
    let want = golden::labels();
    let got: BTreeMap<ProjPoint, PointLabel> = table.as_map();
    let margin = table
        .diagnostics
        .iter()
        .filter(|d| d.status == DiagnosticStatus::Matched)
        .filter_map(|d| d.second_nearest)
        .fold(f64::INFINITY, f64::min);
    let separated = margin >= 1e3 * cfg.tol;
    let ok = got == want && separated;
    let rows: Vec<String> = table.labels.iter().map(|l| format!("{}->{}", l.label, l.point)).collect();
    (ok, format!("{}; min second-nearest distance {margin:.3e} (need >= {:.0e})", rows.join(" "), 1e3 * cfg.tol))
}

fn criterion_8(reports: &mut Vec<IncidenceReport>) -> (bool, String) {
    let t = Instant::now();
    let mut ok = true;
    let mut rows = Vec::new();
    for &level in &GENUS3 {
        let b = basis(level);
        let m = build_model(&b).expect("model");
        let single = m.polys.len() == 1 && m.polys[0].degree() == 4 && m.polys[0].is_normalized();
        let verified = verify_model(&m, &b).unwrap_or(false);
        let pts = search(&m, 50).expect("search");
        let labels = label_points(&b, &pts, &LabelConfig::default()).as_map();
        let lines = rational_lines(&m, &pts, &labels).expect("lines");
        let full = lines.iter().filter(|r| r.fully_rational).count();
        ok &= single && verified && pts.len() >= 2 && full >= 1;
        rows.push(format!(
            "{level}: quartic {}, {} points, {full} fully-rational lines",
            single && verified,
            pts.len()
        ));
        reports.extend(lines);
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    (ok, format!("{}; {elapsed:.2?} (limit 10 min)", rows.join("; ")))
}

fn random_form(rng: &mut ChaCha8Rng) -> BinaryForm {
    // Products of small factors exercise repeated and mixed-degree factors.
    let mut f = BinaryForm::from_i64(&[rng.gen_range(-5..=5i64).max(1)]);
    while f.degree() < 6 {
        let d = rng.gen_range(0..=(6 - f.degree()).min(3));
        if d == 0 {
            break;
        }
        let g: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if g.iter().all(|&c| c == 0) {
            continue;
        }
        f = f.mul(&BinaryForm::from_i64(&g));
    }
    if rng.gen_bool(0.3) {
        let d = rng.gen_range(0..=6);
        let g: Vec<i64> = (0..=d).map(|_| rng.gen_range(-1000..=1000)).collect();
        if g.iter().any(|&c| c != 0) {
            return BinaryForm::from_i64(&g);
        }
    }
    f
}

fn criterion_9(line_reports: &[IncidenceReport]) -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;

    let g = golden::model();
    let scan = rational_planes(&g, &golden::points(), &golden::labels()).expect("planes");
    let degrees_ok =
        line_reports.iter().all(|r| r.divisor.degree() == 4) && scan.reports.iter().all(|r| r.divisor.degree() == 6);
    ok &= degrees_ok;
    notes.push(format!(
        "degrees of {} line and {} plane divisors: {degrees_ok}",
        line_reports.len(),
        scan.reports.len()
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    for _ in 0..1000 {
        let f = random_form(&mut rng);
        if f.is_zero() {
            continue;
        }
        let fact = factor_binary_form(&f).expect("factor");
        if fact.expand() != f {
            bad += 1;
        }
    }
    ok &= bad == 0;
    notes.push(format!("1000 random forms, {bad} failed to reconstruct"));

    let pts = golden::points();
    let mut mismatched = 0;
    let mut planes = 0;
    while planes < 100 {
        let i = rng.gen_range(0..pts.len());
        let j = rng.gen_range(0..pts.len());
        let third = if rng.gen_bool(0.5) {
            pts[rng.gen_range(0..pts.len())].clone()
        } else {
            let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
            match ProjPoint::from_i64(&c) {
                Ok(p) => p,
                Err(_) => continue,
            }
        };
        let Ok(plane) =
            LinearSubspace::span_of(&[pts[i].coords().to_vec(), pts[j].coords().to_vec(), third.coords().to_vec()])
        else {
            continue;
        };
        if plane.rank() != 3 {
            continue;
        }
        let Ok(section) = plane_section(&g, &plane) else { continue };
        let reference = conic_cubic_divisor(&section).expect("divisor");
        let shears: Vec<(i64, i64)> =
            (0..32).map(|k| (rng.gen_range(-(3 + k)..=3 + k), rng.gen_range(-(3 + k)..=3 + k))).collect();
        let other = conic_cubic_divisor_with_shears(&section, &shears).expect("divisor");
        if reference != other {
            mismatched += 1;
        }
        planes += 1;
    }
    ok &= mismatched == 0;
    notes.push(format!("{planes} random planes, {mismatched} shear-dependent divisors"));

    let h: Vec<u64> = [-3, -4, -163, -23].iter().map(|&d| class_number(Discriminant::new(d).unwrap())).collect();
    ok &= h == [1, 1, 1, 3];
    notes.push(format!("h(-3), h(-4), h(-163), h(-23) = {h:?}"));

    let primes: Vec<u64> = (5..1000).filter(|&n| is_prime(n)).collect();
    let failures: Vec<u64> = primes.iter().copied().filter(|&n| genus_plus(n).is_err()).collect();
    ok &= failures.is_empty();
    notes.push(format!("genus_plus integral for {} primes below 1000, failures {failures:?}", primes.len()));
    (ok, notes.join("; "))
}

fn main() {
    let mut line_reports = Vec::new();
    let outcomes = [
        run(1, criterion_1),
        run(2, criterion_2),
        run(3, criterion_3),
        run(4, criterion_4),
        run(5, criterion_5),
        run(6, criterion_6),
        run(7, criterion_7),
        run(8, || criterion_8(&mut line_reports)),
        run(9, || criterion_9(&line_reports)),
    ];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        if o.passed {
            continue;
        }
        match KNOWN.iter().find(|(id, _)| *id == o.id) {
            Some((_, expected)) if o.detail.contains(expected) => {
                println!("note: criterion {} fails as documented: {expected}", o.id);
            }
            _ => unexpected.push(o.id),
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
