//! Plain-text rendering of the pipeline documents.

use std::fmt::Write;

use x0plus_core::heegner::DiagnosticStatus;
use x0plus_core::incidence::Labels;
use x0plus_core::{LevelProfile, PointLabel, ProjPoint};

use crate::pipeline::{
    HeegnerDoc, IncidenceDoc, IncidenceSection, LabelSection, LevelsDoc, ModelDoc, ModelSection, PointsDoc,
    PointsSection, ReportDoc, VerifyDoc,
};

fn profile(out: &mut String, p: &LevelProfile) {
    let _ = writeln!(
        out,
        "N = {}: genus X0(N) = {}, fixed points of w_N = {}, genus X0+(N) = {}",
        p.level, p.genus_x0, p.ramification, p.genus_plus
    );
}

pub fn levels(d: &LevelsDoc) -> String {
    let mut out = format!("primes N <= {} with X0+(N) of genus {}: {}\n", d.bound, d.genus, d.levels.len());
    for p in &d.levels {
        profile(&mut out, p);
    }
    out
}

fn model_section(out: &mut String, m: &ModelSection) {
    let _ = writeln!(out, "canonical model in P^{} ({}):", m.genus - 1, m.variables.join(", "));
    for e in &m.equations {
        let _ = writeln!(out, "  {e} = 0");
    }
    let _ = writeln!(out, "verified through the Sturm bound with {} coefficients", m.precision);
}

pub fn model(d: &ModelDoc) -> String {
    let mut out = String::new();
    profile(&mut out, &d.profile);
    model_section(&mut out, &d.model);
    out
}

fn label_text(labels: &Labels, p: &ProjPoint) -> String {
    labels.get(p).map_or(String::new(), |l| match l {
        PointLabel::Cm(0) => "cusp (0)".to_string(),
        PointLabel::Cm(d) => format!("CM {d}"),
        other => other.to_string(),
    })
}

fn points_section(out: &mut String, s: &PointsSection, labels: &Labels) {
    let _ = writeln!(out, "{} rational points of height <= {}:", s.points.len(), s.height);
    for p in &s.points {
        let _ = writeln!(out, "  {:<24} {}", p.to_string(), label_text(labels, p));
    }
}

pub fn points(d: &PointsDoc) -> String {
    let mut out = format!("N = {}\n", d.level);
    points_section(&mut out, &d.points, &Labels::new());
    out
}

fn opt(x: Option<f64>) -> String {
    x.map_or("-".to_string(), |v| format!("{v:.2e}"))
}

fn diagnostics(out: &mut String, s: &LabelSection) {
    let _ = writeln!(out, "Heegner evaluation (start {} terms, tolerance {:e}):", s.terms, s.tol);
    let _ = writeln!(
        out,
        "  {:>5} {:>5} {:<18} {:>6} {:>9} {:>9} {:>9}",
        "D", "forms", "status", "terms", "error", "nearest", "second"
    );
    for x in &s.diagnostics {
        let status = match x.status {
            DiagnosticStatus::Matched => "matched",
            DiagnosticStatus::NoMatch => "no match",
            DiagnosticStatus::NoHeegnerPoints => "no Heegner points",
            DiagnosticStatus::Inconclusive => "inconclusive",
        };
        let terms = x.terms.map_or("-".to_string(), |t| t.to_string());
        let _ = writeln!(
            out,
            "  {:>5} {:>5} {:<18} {:>6} {:>9} {:>9} {:>9}",
            x.d,
            x.forms,
            status,
            terms,
            opt(x.err),
            opt(x.nearest),
            opt(x.second_nearest)
        );
        if x.status == DiagnosticStatus::Inconclusive {
            let _ = writeln!(out, "        {}", x.detail);
        }
    }
}

pub fn heegner(d: &HeegnerDoc) -> String {
    let mut out = format!("N = {}\n", d.level);
    points_section(&mut out, &d.points, &d.heegner.map());
    diagnostics(&mut out, &d.heegner);
    out
}

fn incidence_section(out: &mut String, s: &IncidenceSection, variables: &[String]) {
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let _ = writeln!(
        out,
        "{} {}s through the points, {} meeting the curve only in rational points:",
        s.reports.len(),
        s.kind,
        s.fully_rational.len()
    );
    for (k, &i) in s.fully_rational.iter().enumerate() {
        let r = &s.reports[i];
        let _ = writeln!(out, "  H{:<3} {:<32} {}", k + 1, r.hyperplane.equation(&names), r.notation);
    }
    if !s.skipped.is_empty() {
        let _ = writeln!(out, "{} collinear triples span no plane", s.skipped.len());
    }
    if !s.exceptional.is_empty() {
        let _ = writeln!(out, "{}s through an exceptional point:", s.kind);
        for &i in &s.exceptional {
            let r = &s.reports[i];
            let _ = writeln!(out, "  {:<37} {}", r.hyperplane.equation(&names), r.notation);
        }
    }
    let c = &s.configuration;
    if !s.collinear.is_empty() {
        let _ = writeln!(out, "collinear points:");
        for (i, set) in s.collinear.iter().enumerate() {
            let pts: Vec<String> = set.points.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  L{:<4} {}", i + 1, pts.join(" "));
        }
    }
    if !c.intersections.is_empty() || !c.containments.is_empty() {
        let _ = writeln!(out, "configuration:");
        for x in &c.intersections {
            let at = match (&x.point, x.label) {
                (Some(p), Some(l)) => format!("{p} ({l})"),
                (Some(p), None) => p.to_string(),
                (None, _) => format!("a subspace of rank {}", x.intersection.rank()),
            };
            let _ = writeln!(out, "  {} meet at {at}", x.members.join(" & "));
        }
        for x in &c.containments {
            let _ = writeln!(out, "  {} lies in {}", x.inner, x.outer);
        }
    }
    if let Some(sw) = &s.sweep {
        let _ =
            writeln!(out, "sweep over normals of height <= {}: {} fully rational planes", sw.bound, sw.planes.len());
        for r in &sw.planes {
            let _ = writeln!(out, "  {:<37} {}", r.hyperplane.equation(&names), r.notation);
        }
    }
    if let Some(p) = &s.published {
        let rows: Vec<String> = p.matrix.iter().map(|r| format!("{r:?}")).collect();
        let _ = writeln!(out, "published coordinates (W, X, Y, Z) = M x with M = [{}]:", rows.join(", "));
        for e in &p.equations {
            let _ = writeln!(out, "  {e} = 0");
        }
        for x in &p.points {
            let _ = writeln!(out, "  {:<24} -> {:<20} {}", x.fixture.to_string(), x.published.to_string(), x.label);
        }
        for x in &p.planes {
            let _ = writeln!(out, "  {:<37} {}", x.equation, x.notation);
        }
    }
}

pub fn incidence(d: &IncidenceDoc) -> String {
    let mut out = format!("N = {}\n", d.level);
    let labels: Labels = d.labels.iter().map(|l| (l.point.clone(), l.label)).collect();
    points_section(&mut out, &d.points, &labels);
    incidence_section(&mut out, &d.incidence, &d.variables);
    out
}

pub fn report(d: &ReportDoc) -> String {
    let mut out = String::new();
    profile(&mut out, &d.profile);
    model_section(&mut out, &d.model);
    points_section(&mut out, &d.points, &d.heegner.map());
    diagnostics(&mut out, &d.heegner);
    incidence_section(&mut out, &d.incidence, &d.model.variables);
    out
}

pub fn verify(d: &VerifyDoc) -> String {
    let mut out = format!("published model of X0+({}), point search height {}:\n", d.level, d.height);
    for c in &d.claims {
        let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.statement);
        let _ = writeln!(out, "     {}", c.detail);
    }
    let failed = d.claims.iter().filter(|c| !c.passed).count();
    let _ = writeln!(out, "{} of {} claims hold", d.claims.len() - failed, d.claims.len());
    out
}
