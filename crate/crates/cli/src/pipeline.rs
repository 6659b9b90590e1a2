//! The stages behind each subcommand and the documents they produce.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use x0plus_core::golden::{self, Claim};
use x0plus_core::heegner::{Diagnostic, LabeledPoint};
use x0plus_core::incidence::{
    configuration, plane_sweep, rational_planes, CollinearSet, ConfigurationSummary, Labels, SkippedTriple,
};
use x0plus_core::transform::{apply, map_hyperplane, model_equivalence};
use x0plus_core::{
    build_model, collinear_subsets, enumerate_levels, fixture_path, label_points, load_basis, rational_lines, search,
    verify_model, BasisRecord, CanonicalModel, Error, HomogeneousPoly, Hyperplane, IncidenceReport, LabelConfig,
    LabelTable, LevelProfile, PointLabel, ProjPoint,
};

pub const SCHEMA: &str = "x0plus/1";

/// A library error tagged with the pipeline step that raised it.
#[derive(Debug)]
pub struct StageError {
    pub op: &'static str,
    pub source: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.op, self.source)
    }
}

impl std::error::Error for StageError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

pub type Result<T> = std::result::Result<T, StageError>;

fn stage<T>(op: &'static str, r: x0plus_core::Result<T>) -> Result<T> {
    r.map_err(|source| StageError { op, source })
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub height: u64,
    pub label: LabelConfig,
    pub sweep: Option<i64>,
}

#[derive(Serialize)]
pub struct LevelsDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub genus: u64,
    pub bound: u64,
    pub levels: Vec<LevelProfile>,
}

pub fn levels(genus: u64, bound: u64) -> Result<LevelsDoc> {
    let levels = enumerate_levels(genus, bound)
        .into_iter()
        .map(|n| stage("genus profile", LevelProfile::new(n)))
        .collect::<Result<_>>()?;
    Ok(LevelsDoc { schema: SCHEMA, command: "levels", genus, bound, levels })
}

/// Everything derived from the fixture alone.
pub struct Loaded {
    pub profile: LevelProfile,
    pub basis: BasisRecord,
    pub model: CanonicalModel,
}

pub fn load(data_dir: &Path, level: u64) -> Result<Loaded> {
    let profile = stage("level", LevelProfile::new(level))?;
    if !matches!(profile.genus_plus, 3 | 4) {
        return Err(StageError { op: "level", source: Error::UnsupportedGenus(profile.genus_plus as usize) });
    }
    let basis = stage("load fixture", load_basis(&fixture_path(data_dir, level)))?;
    if basis.level != level {
        return Err(StageError {
            op: "load fixture",
            source: Error::MalformedBasis(format!("fixture is for level {}, not {level}", basis.level)),
        });
    }
    let model = stage("build model", build_model(&basis))?;
    if !stage("verify model", verify_model(&model, &basis))? {
        return Err(StageError {
            op: "verify model",
            source: Error::Degenerate("the equations do not vanish on the basis through the Sturm bound".into()),
        });
    }
    Ok(Loaded { profile, basis, model })
}

#[derive(Serialize)]
pub struct ModelSection {
    pub genus: usize,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub polys: Vec<HomogeneousPoly>,
    pub precision: usize,
    pub provenance: String,
}

impl ModelSection {
    fn new(l: &Loaded) -> Self {
        Self {
            genus: l.model.genus,
            variables: l.model.variables.clone(),
            equations: l.model.display_polys(),
            polys: l.model.polys.clone(),
            precision: l.basis.prec(),
            provenance: l.basis.provenance.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ModelDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub profile: LevelProfile,
    pub model: ModelSection,
}

pub fn model(data_dir: &Path, level: u64) -> Result<ModelDoc> {
    let l = load(data_dir, level)?;
    Ok(ModelDoc { schema: SCHEMA, command: "model", level, profile: l.profile, model: ModelSection::new(&l) })
}

#[derive(Serialize)]
pub struct PointsSection {
    pub height: u64,
    pub points: Vec<ProjPoint>,
}

fn find_points(l: &Loaded, height: u64) -> Result<PointsSection> {
    Ok(PointsSection { height, points: stage("point search", search(&l.model, height))? })
}

#[derive(Serialize)]
pub struct PointsDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub points: PointsSection,
}

pub fn points(data_dir: &Path, level: u64, height: u64) -> Result<PointsDoc> {
    let l = load(data_dir, level)?;
    Ok(PointsDoc { schema: SCHEMA, command: "points", level, points: find_points(&l, height)? })
}

#[derive(Serialize)]
pub struct LabelSection {
    pub terms: usize,
    pub tol: f64,
    pub labels: Vec<LabeledPoint>,
    pub diagnostics: Vec<Diagnostic>,
}

impl LabelSection {
    fn new(table: LabelTable, cfg: &LabelConfig) -> Self {
        Self { terms: cfg.terms, tol: cfg.tol, labels: table.labels, diagnostics: table.diagnostics }
    }

    pub fn map(&self) -> Labels {
        self.labels.iter().map(|l| (l.point.clone(), l.label)).collect()
    }
}

#[derive(Serialize)]
pub struct HeegnerDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub points: PointsSection,
    pub heegner: LabelSection,
}

pub fn heegner(data_dir: &Path, level: u64, s: &Settings) -> Result<HeegnerDoc> {
    let l = load(data_dir, level)?;
    let points = find_points(&l, s.height)?;
    let table = label_points(&l.basis, &points.points, &s.label);
    Ok(HeegnerDoc { schema: SCHEMA, command: "heegner", level, points, heegner: LabelSection::new(table, &s.label) })
}

#[derive(Serialize)]
pub struct SweepSection {
    pub bound: i64,
    pub planes: Vec<IncidenceReport>,
}

#[derive(Serialize)]
pub struct PublishedPoint {
    pub label: PointLabel,
    pub fixture: ProjPoint,
    pub published: ProjPoint,
}

#[derive(Serialize)]
pub struct PublishedPlane {
    pub fixture: Hyperplane,
    pub published: Hyperplane,
    pub equation: String,
    pub notation: String,
}

/// The fixture model moved onto the published coordinates `W, X, Y, Z`.
#[derive(Serialize)]
pub struct PublishedFrame {
    pub matrix: Vec<Vec<i64>>,
    pub equations: Vec<String>,
    pub points: Vec<PublishedPoint>,
    pub planes: Vec<PublishedPlane>,
}

#[derive(Serialize)]
pub struct IncidenceSection {
    /// `line` for plane quartics, `plane` for space sextics.
    pub kind: &'static str,
    pub reports: Vec<IncidenceReport>,
    pub skipped: Vec<SkippedTriple>,
    pub collinear: Vec<CollinearSet>,
    pub configuration: ConfigurationSummary,
    /// Fully rational reports only, in the order named in `configuration`.
    pub fully_rational: Vec<usize>,
    /// Reports through an exceptional point and at least `genus - 1` CM points.
    pub exceptional: Vec<usize>,
    pub sweep: Option<SweepSection>,
    pub published: Option<PublishedFrame>,
}

fn incidence_section(l: &Loaded, pts: &[ProjPoint], labels: &Labels, sweep: Option<i64>) -> Result<IncidenceSection> {
    let g = l.model.genus;
    let (kind, reports, skipped) = if g == 3 {
        if sweep.is_some() {
            return Err(StageError {
                op: "incidence",
                source: Error::Precondition("--sweep applies to genus-4 levels only".into()),
            });
        }
        ("line", stage("line divisors", rational_lines(&l.model, pts, labels))?, Vec::new())
    } else {
        let scan = stage("plane divisors", rational_planes(&l.model, pts, labels))?;
        ("plane", scan.reports, scan.skipped)
    };
    let fully_rational: Vec<usize> = (0..reports.len()).filter(|&i| reports[i].fully_rational).collect();
    let exceptional = (0..reports.len())
        .filter(|&i| {
            let on = |want: fn(&PointLabel) -> bool| {
                reports[i].divisor.rational_points().filter(|(p, _)| labels.get(*p).is_some_and(want)).count()
            };
            on(|x| *x == PointLabel::Exceptional) > 0 && on(|x| matches!(x, PointLabel::Cm(_))) + 1 >= g
        })
        .collect();
    let collinear = collinear_subsets(pts);
    let rational: Vec<IncidenceReport> = fully_rational.iter().map(|&i| reports[i].clone()).collect();
    // On a plane quartic the collinear sets are already among the lines.
    let configuration = configuration(&rational, if g == 3 { &[] } else { &collinear }, labels);
    let sweep = match sweep {
        Some(bound) => {
            Some(SweepSection { bound, planes: stage("plane sweep", plane_sweep(&l.model, bound, labels))? })
        }
        None => None,
    };
    let published = if l.profile.level == golden::LEVEL { published_frame(l, pts, labels, &rational)? } else { None };
    Ok(IncidenceSection {
        kind,
        reports,
        skipped,
        collinear,
        configuration,
        fully_rational,
        exceptional,
        sweep,
        published,
    })
}

fn small(x: &x0plus_core::linalg::IntMatrix) -> Option<Vec<Vec<i64>>> {
    x.iter().map(|r| r.iter().map(|v| i64::try_from(v).ok()).collect()).collect()
}

fn published_frame(
    l: &Loaded,
    pts: &[ProjPoint],
    labels: &Labels,
    rational: &[IncidenceReport],
) -> Result<Option<PublishedFrame>> {
    let target = golden::model();
    let Some(m) = stage("align with published model", model_equivalence(&l.model, pts, &target, &golden::points()))?
    else {
        return Ok(None);
    };
    let names: Vec<String> = golden::VARIABLES.iter().map(char::to_string).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let points = pts
        .iter()
        .map(|p| {
            let label = labels.get(p).copied().unwrap_or(PointLabel::Unknown);
            Ok(PublishedPoint { label, fixture: p.clone(), published: stage("align", apply(&m, p))? })
        })
        .collect::<Result<_>>()?;
    let planes = rational
        .iter()
        .map(|r| {
            let published = stage("align", map_hyperplane(&m, &r.hyperplane))?;
            let equation = published.equation(&names);
            Ok(PublishedPlane { fixture: r.hyperplane.clone(), published, equation, notation: r.notation.clone() })
        })
        .collect::<Result<_>>()?;
    let Some(matrix) = small(&m) else { return Ok(None) };
    let equations = target.polys.iter().map(|p| p.display_with(&names)).collect();
    Ok(Some(PublishedFrame { matrix, equations, points, planes }))
}

#[derive(Serialize)]
pub struct IncidenceDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub variables: Vec<String>,
    pub points: PointsSection,
    pub labels: Vec<LabeledPoint>,
    pub incidence: IncidenceSection,
}

pub fn incidence(data_dir: &Path, level: u64, s: &Settings) -> Result<IncidenceDoc> {
    let l = load(data_dir, level)?;
    let points = find_points(&l, s.height)?;
    let table = label_points(&l.basis, &points.points, &s.label);
    let incidence = incidence_section(&l, &points.points, &table.as_map(), s.sweep)?;
    let variables = l.model.variables.clone();
    Ok(IncidenceDoc { schema: SCHEMA, command: "incidence", level, variables, points, labels: table.labels, incidence })
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub profile: LevelProfile,
    pub model: ModelSection,
    pub points: PointsSection,
    pub heegner: LabelSection,
    pub incidence: IncidenceSection,
}

pub fn report(data_dir: &Path, level: u64, s: &Settings) -> Result<ReportDoc> {
    let l = load(data_dir, level)?;
    let points = find_points(&l, s.height)?;
    let heegner = LabelSection::new(label_points(&l.basis, &points.points, &s.label), &s.label);
    let incidence = incidence_section(&l, &points.points, &heegner.map(), s.sweep)?;
    Ok(ReportDoc {
        schema: SCHEMA,
        command: "report",
        level,
        profile: l.profile,
        model: ModelSection::new(&l),
        points,
        heegner,
        incidence,
    })
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub level: u64,
    pub height: u64,
    pub passed: bool,
    pub claims: Vec<Claim>,
}

pub fn verify(height: u64) -> Result<VerifyDoc> {
    let claims = stage("check published claims", golden::check_claims(height))?;
    let passed = claims.iter().all(|c| c.passed);
    Ok(VerifyDoc { schema: SCHEMA, command: "verify", level: golden::LEVEL, height, passed, claims })
}
