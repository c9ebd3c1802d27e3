//! Check orchestration and reports for loaded presentations.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::antipode::{check_antipode_duoidal_with, check_antipode_with, compute_antipode};
use crate::hopf::fusion::is_hopf;
use crate::hopf::{check_monad, check_opmonoidal, Kind, LawReport};
use crate::io::{load, vect_image_file, vect_to_file, LoadedPolyad, LoadedVect, MatrixAt, PresentationFile, Presentation};
use crate::linalg::format_scalar;
use crate::monoidale::{self, axiom_interchange_circ, axiom_interchange_star, axiom_unit_objects, axiom_units};
use crate::polyad::{check_polyad, check_polyad_opmonoidal, polyad_is_hopf, Polyad, PolyadBackend};
use crate::random;
use crate::vect::VObject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub laws: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub kind: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<CheckOutcome>,
    /// Determinants of the left fusion components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinants: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<MatrixAt>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.kind);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let _ = write!(s, "{:<12} {status:<8} {:>9.3} ms", c.check, c.elapsed.as_secs_f64() * 1e3);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  {w}");
            }
            s.push('\n');
        }
        if let Some(d) = &self.determinants {
            let _ = writeln!(s, "fusion determinants: {}", d.join(" "));
        }
        if let Some(a) = &self.antipode {
            for m in a {
                let rows: Vec<String> = m.matrix.iter().map(|r| r.join(" ")).collect();
                let _ = writeln!(s, "σ at {}: [{}]", m.at.join(","), rows.join("; "));
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub monad: bool,
    pub opmonoidal: bool,
    pub hopf: bool,
    pub antipode: bool,
    pub duoidal: bool,
    pub frobenius: bool,
}

impl Selection {
    pub fn all() -> Self {
        Selection {
            monad: true,
            opmonoidal: true,
            hopf: true,
            antipode: true,
            duoidal: true,
            frobenius: true,
        }
    }

    /// No flags means every check.
    pub fn or_all(self) -> Self {
        if self == Selection::default() {
            Selection::all()
        } else {
            self
        }
    }
}

enum Verdict {
    Pass(Vec<String>),
    Fail(Vec<String>, String),
    NotApplicable(String),
}

fn from_laws(r: LawReport) -> Verdict {
    match r.failure {
        None => Verdict::Pass(r.checked),
        Some((law, w)) => Verdict::Fail(r.checked, format!("{law}: {w}")),
    }
}

/// Runs selected checks in order; after a pipeline failure the remaining
/// pipeline checks are skipped.
struct Runner {
    report: Report,
    failed: bool,
}

impl Runner {
    fn run(&mut self, check: &'static str, selected: bool, pipeline: bool, f: impl FnOnce() -> Result<Verdict>) -> Result<()> {
        if !selected {
            return Ok(());
        }
        if pipeline && self.failed {
            self.report.checks.push(CheckOutcome {
                check,
                status: Status::Skipped,
                witness: Some("an earlier check failed".into()),
                laws: Vec::new(),
                elapsed: Duration::ZERO,
            });
            return Ok(());
        }
        let start = Instant::now();
        let v = f()?;
        let elapsed = start.elapsed();
        let (status, laws, witness) = match v {
            Verdict::Pass(l) => (Status::Pass, l, None),
            Verdict::Fail(l, w) => (Status::Fail, l, Some(w)),
            Verdict::NotApplicable(w) => (Status::Fail, Vec::new(), Some(w)),
        };
        if status == Status::Fail && pipeline {
            self.failed = true;
        }
        self.report.checks.push(CheckOutcome {
            check,
            status,
            witness,
            laws,
            elapsed,
        });
        Ok(())
    }
}

fn vect_checks(v: &LoadedVect, sel: Selection, seed: u64) -> Result<Report> {
    let m = &v.monad;
    let mut r = Runner {
        report: Report {
            kind: match m.kind {
                Kind::GroupMonoid => "group_monoid",
                Kind::Enriched => "enriched_category",
                Kind::General => "general",
            }
            .into(),
            ..Report::default()
        },
        failed: false,
    };
    if v.synthesized {
        r.report.notes.push("comonoid synthesized from the grouplike basis".into());
    }
    let no_comonoid = || Verdict::Fail(Vec::new(), "no comonoid structure: give delta and epsilon or flag the basis grouplike".into());
    r.run("monad", sel.monad, true, || Ok(from_laws(check_monad(m)?)))?;
    r.run("opmonoidal", sel.opmonoidal, true, || {
        if m.comonoid.is_none() {
            return Ok(no_comonoid());
        }
        Ok(from_laws(check_opmonoidal(m)?))
    })?;
    let mut determinants = None;
    r.run("hopf", sel.hopf, true, || {
        if m.comonoid.is_none() {
            return Ok(no_comonoid());
        }
        let h = is_hopf(m)?;
        let laws = vec!["left fusion".to_string(), "right fusion".to_string()];
        if h.is_hopf() {
            determinants = Some(h.determinants().iter().map(format_scalar).collect());
        }
        Ok(match h.witness {
            None => Verdict::Pass(laws),
            Some(w) => Verdict::Fail(laws, w.to_string()),
        })
    })?;
    r.report.determinants = determinants;
    let mut solved = None;
    r.run("antipode", sel.antipode, true, || {
        if m.comonoid.is_none() {
            return Ok(no_comonoid());
        }
        let (sigma, given) = match &m.antipode {
            Some(s) => (s.clone(), true),
            None => match compute_antipode(m)? {
                Ok(s) => (s, false),
                Err(e) => return Ok(Verdict::Fail(vec!["solve".into()], e.to_string())),
            },
        };
        let laws = vec!["componentwise".to_string(), "duoidal".to_string()];
        if let Some(f) = check_antipode_with(m, &sigma)? {
            return Ok(Verdict::Fail(laws, f.to_string()));
        }
        let d = check_antipode_duoidal_with(m, &sigma)?;
        if let Some((axiom, w)) = d.failure {
            return Ok(Verdict::Fail(laws, format!("duoidal axiom {axiom}: {w}")));
        }
        if !given {
            solved = Some(sigma);
        }
        Ok(Verdict::Pass(laws))
    })?;
    if let Some(s) = solved {
        let with = m.clone().with_antipode(s)?;
        let file = vect_to_file(&LoadedVect {
            monad: with,
            grouplike: v.grouplike.clone(),
            synthesized: v.synthesized,
        });
        r.report.antipode = file.antipode;
    }
    r.run("duoidal", sel.duoidal, false, || duoidal(v, seed))?;
    r.run("frobenius", sel.frobenius, false, || {
        let sv = m.spanv();
        let c = m.cells(&sv)?;
        let f = monoidale::check_frobenius(&sv, c.x.carrier())?;
        let laws = vec!["triangles".to_string(), "left".to_string(), "right".to_string()];
        Ok(if f.passed() {
            Verdict::Pass(laws)
        } else {
            Verdict::Fail(laws, format!("{f:?}"))
        })
    })?;
    Ok(r.report)
}

/// The duoidal axioms of the endohom on the presentation's carrier, tested
/// on the monad's own 1-cell and seeded random endo-cells.
fn duoidal(v: &LoadedVect, seed: u64) -> Result<Verdict> {
    let m = &v.monad;
    let sv = m.spanv();
    let c = m.cells(&sv)?;
    let u = monoidale::duoidal_units(&sv, c.x.carrier())?;
    let mut rng = random::rng(seed);
    let mut cells = vec![c.t.clone()];
    for _ in 0..2 {
        cells.push(random::cell1(&sv, &mut rng, &c.x, &c.x, 2, 2));
    }
    let mut laws = vec!["unit objects".to_string()];
    if let Some(w) = axiom_unit_objects(&sv, &u)? {
        return Ok(Verdict::Fail(laws, w));
    }
    laws.push("units".into());
    for a in &cells {
        for b in &cells {
            if let Some(w) = axiom_units(&sv, &u, a, b)? {
                return Ok(Verdict::Fail(laws, w));
            }
        }
    }
    laws.push("interchange associativity".into());
    let [a, b, d] = [&cells[0], &cells[1], &cells[2]];
    for six in [[a, b, d, a, b, d], [b, a, a, d, d, b]] {
        if let Some(w) = axiom_interchange_circ(&sv, six)?.or(axiom_interchange_star(&sv, six)?) {
            return Ok(Verdict::Fail(laws, w));
        }
    }
    Ok(Verdict::Pass(laws))
}

fn polyad_checks<B: PolyadBackend>(p: &Polyad<B>, kind: &str, sel: Selection, comparison: Option<&dyn Fn() -> Result<()>>) -> Result<Report> {
    let mut r = Runner {
        report: Report {
            kind: kind.into(),
            ..Report::default()
        },
        failed: false,
    };
    if let Some(c) = comparison {
        r.run("comparison", true, true, || {
            let laws = vec!["pseudofunctor comparison cells".to_string()];
            Ok(match c() {
                Ok(()) => Verdict::Pass(laws),
                Err(e) => Verdict::Fail(laws, e.to_string()),
            })
        })?;
    }
    r.run("monad", sel.monad, true, || Ok(from_laws(check_polyad(p)?)))?;
    let no_opmonoidal = || Verdict::Fail(Vec::new(), "no opmonoidal structure: give d2 and d0".into());
    r.run("opmonoidal", sel.opmonoidal, true, || {
        if p.opmonoidal.is_none() {
            return Ok(no_opmonoidal());
        }
        Ok(from_laws(check_polyad_opmonoidal(p)?))
    })?;
    r.run("hopf", sel.hopf, true, || {
        if p.opmonoidal.is_none() {
            return Ok(no_opmonoidal());
        }
        let v = polyad_is_hopf(p)?;
        let laws = vec!["groupoid shape".to_string(), format!("{} fusion components", v.components_checked)];
        Ok(match (v.not_groupoid, v.singular) {
            (None, None) => Verdict::Pass(laws),
            (Some(a), _) => Verdict::Fail(laws, format!("shape morphism {a} has no inverse")),
            (None, Some(s)) => Verdict::Fail(laws, format!("{s} is not invertible")),
        })
    })?;
    // Inapplicable checks are dropped from a full run and fail when asked for.
    let sel = if sel == Selection::all() {
        Selection {
            antipode: false,
            duoidal: false,
            frobenius: false,
            ..sel
        }
    } else {
        sel
    };
    let na = |what: &str| Ok(Verdict::NotApplicable(format!("{what} is checked on vect presentations only")));
    r.run("antipode", sel.antipode, true, || na("the antipode"))?;
    r.run("duoidal", sel.duoidal, false, || na("the duoidal structure"))?;
    r.run("frobenius", sel.frobenius, false, || na("the Frobenius property"))?;
    Ok(r.report)
}

pub fn run_checks(p: &Presentation, sel: Selection, seed: u64) -> Result<Report> {
    match p {
        Presentation::Vect(v) => vect_checks(v, sel, seed),
        Presentation::Polyad(LoadedPolyad::Finite(p)) => polyad_checks(&**p, "polyad (finite)", sel, None),
        Presentation::Polyad(LoadedPolyad::VectImage { source, probes, polyad }) => {
            let comparison = || crate::cat::lazy::vect_as_lazy_category(&source.monad.q, probes).and_then(|(_, pf)| pf.check_laws());
            let mut r = polyad_checks(&**polyad, "polyad (vect image)", sel, Some(&comparison))?;
            r.notes.push(format!("checked pointwise on {} probe objects", probes.len()));
            Ok(r)
        }
    }
}

/// The polyad image of a vect presentation at the given probe objects, as a
/// file; the image is rebuilt once to validate it.
pub fn export_polyad(p: &Presentation, probes: &[VObject]) -> Result<PresentationFile> {
    let Presentation::Vect(source) = p else {
        return Err(Error::Invalid("export-polyad needs a vect presentation".into()));
    };
    let out = vect_image_file(source, probes);
    load(&out)?;
    Ok(out)
}

/// Solves for the antipode and returns the report together with the input
/// presentation carrying the solution.
pub fn run_antipode(p: &Presentation) -> Result<(Report, Option<PresentationFile>)> {
    let Presentation::Vect(v) = p else {
        return Err(Error::Invalid("antipodes are computed for vect presentations".into()));
    };
    let mut stripped = v.clone();
    stripped.monad.antipode = None;
    let sel = Selection {
        antipode: true,
        ..Selection::default()
    };
    let report = vect_checks(&stripped, sel, 0)?;
    let file = report.antipode.as_ref().map(|a| {
        let mut f = vect_to_file(&stripped);
        f.antipode = Some(a.clone());
        f
    });
    Ok((report, file))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cat::FinCategory;
    use crate::hopf::{constant_group_algebra, idempotent_monoid, trivial_group_monoid};
    use crate::io::to_json;
    use crate::vect::BraidParam;

    fn loaded(m: crate::hopf::VectMonad) -> Presentation {
        let n = m.labels.len();
        Presentation::Vect(LoadedVect {
            monad: m,
            grouplike: vec![false; n],
            synthesized: false,
        })
    }

    #[test]
    fn z2_passes_everything() {
        let m = constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2)), |_| 0).unwrap();
        let r = run_checks(&loaded(m), Selection::all(), 1).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.determinants.as_ref().unwrap().len(), 4);
        assert_eq!(r.to_json(), run_checks(&r_again(), Selection::all(), 1).unwrap().to_json());
    }

    fn r_again() -> Presentation {
        loaded(constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2)), |_| 0).unwrap())
    }

    #[test]
    fn non_group_fails_hopf_and_skips_antipode() {
        let m = trivial_group_monoid(BraidParam::one(), idempotent_monoid()).unwrap();
        let sel = Selection {
            hopf: true,
            antipode: true,
            ..Selection::default()
        };
        let r = run_checks(&loaded(m), sel, 0).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.checks[0].status, Status::Fail);
        assert!(r.checks[0].witness.as_ref().unwrap().contains("z"));
        assert_eq!(r.checks[1].status, Status::Skipped);
    }

    #[test]
    fn antipode_round_trip() {
        let m = constant_group_algebra(BraidParam::int(2), Arc::new(FinCategory::cyclic_group(3)), |_| 0).unwrap();
        let (r, file) = run_antipode(&loaded(m)).unwrap();
        assert!(r.passed());
        let file = file.unwrap();
        let back = load(&crate::io::parse_file(&to_json(&file)).unwrap()).unwrap();
        let sel = Selection {
            antipode: true,
            ..Selection::default()
        };
        assert!(run_checks(&back, sel, 0).unwrap().passed());
    }
}
