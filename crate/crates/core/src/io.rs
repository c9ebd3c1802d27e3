//! The JSON presentation format.
//!
//! Scalars are fraction strings, matrices are row-major arrays of rows with
//! one row per basis vector of the codomain, and every entry is addressed by
//! the atom names in `at`. Unknown fields are rejected.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{CategoryTable, FinCategory, FinMonoidalCategory, FunctorData, NatTransData};
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};
use crate::hopf::{Comonoid, Kind, VectMonad};
use crate::linalg::{format_scalar, parse_scalar, Matrix};
use crate::polyad::{vect_image, Polyad, PolyadBackend, PolyadOpmonoidal, VectPolyad};
use crate::spanv::CatBackend;
use crate::vect::{BraidParam, VMorphism, VObject};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileKind {
    GroupMonoid,
    EnrichedCategory,
    Polyad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Vect,
    Cat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub format_version: u32,
    pub kind: FileKind,
    pub backend: BackendKind,
    pub q: String,
    /// The monoid of a G-monoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeSpec>,
    /// The object set of an enriched category.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<LabelSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mu: Vec<MatrixAt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eta: Vec<MatrixAt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<MatrixAt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<MatrixAt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<MatrixAt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyad: Option<PolyadSpec>,
}

/// A finite category: morphisms as `[name, source, target]`, one identity
/// per object in object order, composition as `[g, f, g∘f]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<[String; 3]>,
    pub identities: Vec<String>,
    pub composition: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub grouplike: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelSpec {
    pub at: Vec<String>,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub grouplike: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixAt {
    pub at: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolyadSpec {
    Finite(FinitePolyadSpec),
    /// The image of a vect presentation, sampled on probe objects.
    VectImage {
        source: Box<PresentationFile>,
        probes: Vec<ObjectSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinitePolyadSpec {
    pub shape: ShapeSpec,
    pub categories: Vec<MonoidalSpec>,
    pub functors: Vec<FunctorSpec>,
    pub mu: Vec<NatSpec>,
    pub eta: Vec<NatSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<Vec<SplitSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<Vec<[String; 2]>>,
}

/// A strict monoidal category on a finite category; tensors as `[a, b, a⊗b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalSpec {
    pub at: String,
    pub category: ShapeSpec,
    pub unit: String,
    pub tensor: Vec<[String; 3]>,
    pub tensor_morphisms: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub at: String,
    pub objects: Vec<[String; 2]>,
    pub morphisms: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatSpec {
    pub at: Vec<String>,
    pub components: Vec<[String; 2]>,
}

/// `d²_f(A, B)` as `[A, B, morphism]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub at: String,
    pub components: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbesFile {
    pub format_version: u32,
    pub probes: Vec<ObjectSpec>,
}

/// A vect presentation together with the bookkeeping needed to write it
/// back unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedVect {
    pub monad: VectMonad,
    pub grouplike: Vec<bool>,
    /// The comonoid was synthesized from grouplike flags.
    pub synthesized: bool,
}

#[derive(Clone, Debug)]
pub enum LoadedPolyad {
    Finite(Box<Polyad<CatBackend>>),
    VectImage {
        source: Box<LoadedVect>,
        probes: Vec<VObject>,
        polyad: Box<VectPolyad>,
    },
}

#[derive(Clone, Debug)]
pub enum Presentation {
    Vect(LoadedVect),
    Polyad(LoadedPolyad),
}

fn schema(path: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        detail: detail.into(),
    }
}

fn at_path(path: &str, e: Error) -> Error {
    match e {
        Error::Schema { .. } => e,
        other => schema(path, other.to_string()),
    }
}

pub fn parse_file(text: &str) -> Result<PresentationFile> {
    let f: PresentationFile = serde_json::from_str(text).map_err(json_error)?;
    check_version(f.format_version)?;
    Ok(f)
}

fn json_error(e: serde_json::Error) -> Error {
    let msg = e.to_string();
    let detail = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(d, _)| d);
    schema(format!("line {} column {}", e.line(), e.column()), detail.to_string())
}

pub fn parse_probes(text: &str) -> Result<Vec<VObject>> {
    let f: ProbesFile = serde_json::from_str(text).map_err(json_error)?;
    check_version(f.format_version)?;
    if f.probes.is_empty() {
        return Err(schema("probes", "at least one probe object is needed"));
    }
    f.probes
        .iter()
        .enumerate()
        .map(|(i, o)| object(&format!("probes[{i}]"), &o.basis, &o.grades))
        .collect()
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(schema("format_version", format!("unsupported version {v}")));
    }
    Ok(())
}

pub fn to_json(f: &PresentationFile) -> String {
    serde_json::to_string_pretty(f).expect("serializable") + "\n"
}

fn parse_q(s: &str) -> Result<BraidParam> {
    let q = parse_scalar(s).map_err(|e| schema("q", e.to_string()))?;
    BraidParam::new(q).map_err(|e| schema("q", e.to_string()))
}

/// Always `"n/d"`.
fn format_q(q: &BraidParam) -> String {
    let v = q.value();
    format!("{}/{}", v.numer(), v.denom())
}

fn object(path: &str, basis: &[String], grades: &Option<Vec<i64>>) -> Result<VObject> {
    let grades = match grades {
        Some(g) if g.len() != basis.len() => {
            return Err(schema(format!("{path}.grades"), format!("{} grades for {} basis vectors", g.len(), basis.len())))
        }
        Some(g) => g.clone(),
        None => vec![0; basis.len()],
    };
    VObject::new(basis.iter().map(|b| atom(b)).zip(grades).collect()).map_err(|e| schema(format!("{path}.basis"), e.to_string()))
}

fn object_spec(v: &VObject) -> (Vec<String>, Option<Vec<i64>>) {
    let basis = v.basis().iter().map(|(a, _)| a.to_string()).collect();
    let grades: Vec<i64> = v.basis().iter().map(|(_, g)| *g).collect();
    (basis, if grades.iter().all(|&g| g == 0) { None } else { Some(grades) })
}

fn matrix(path: &str, rows: &[Vec<String>], dom: &VObject, cod: &VObject) -> Result<VMorphism> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| parse_scalar(x).map_err(|e| schema(format!("{path}[{i}][{j}]"), e.to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.len() != cod.dim() || parsed.iter().any(|r| r.len() != dom.dim()) {
        return Err(schema(
            path,
            format!("expected {} rows of {} entries for a map {} -> {}", cod.dim(), dom.dim(), dom.dim(), cod.dim()),
        ));
    }
    let m = Matrix::from_fn(cod.dim(), dom.dim(), |i, j| parsed[i][j].clone());
    VMorphism::new(dom.clone(), cod.clone(), m).map_err(|e| at_path(path, e))
}

fn matrix_spec(f: &VMorphism) -> Vec<Vec<String>> {
    let m = f.matrix();
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| format_scalar(m.get(i, j))).collect()).collect()
}

fn atom(name: &str) -> Atom {
    Atom::name(name)
}

fn atoms(names: &[String]) -> Result<FinSet> {
    FinSet::new(names.iter().map(|n| atom(n)).collect())
}

fn lookup(path: &str, set: &FinSet, name: &str) -> Result<usize> {
    set.index_of(&atom(name))
        .ok_or_else(|| schema(path, format!("undeclared atom {name:?}")))
}

fn shape(path: &str, s: &ShapeSpec) -> Result<FinCategory> {
    let objects = atoms(&s.objects)
        .map_err(|e| schema(format!("{path}.objects"), e.to_string()))?;
    let morphisms = FinSet::new(s.morphisms.iter().map(|m| atom(&m[0])).collect())
        .map_err(|e| schema(format!("{path}.morphisms"), e.to_string()))?;
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (i, [_, a, b]) in s.morphisms.iter().enumerate() {
        src.push(lookup(&format!("{path}.morphisms[{i}]"), &objects, a)?);
        tgt.push(lookup(&format!("{path}.morphisms[{i}]"), &objects, b)?);
    }
    if s.identities.len() != objects.len() {
        return Err(schema(format!("{path}.identities"), "one identity per object"));
    }
    let identities = s
        .identities
        .iter()
        .enumerate()
        .map(|(i, m)| lookup(&format!("{path}.identities[{i}]"), &morphisms, m))
        .collect::<Result<Vec<_>>>()?;
    let n = morphisms.len();
    let mut composition = vec![None; n * n];
    for (i, [g, f, gf]) in s.composition.iter().enumerate() {
        let p = format!("{path}.composition[{i}]");
        let (g, f, gf) = (lookup(&p, &morphisms, g)?, lookup(&p, &morphisms, f)?, lookup(&p, &morphisms, gf)?);
        if composition[g * n + f].replace(gf).is_some() {
            return Err(schema(p, "composite given twice"));
        }
    }
    FinCategory::new(CategoryTable {
        objects,
        morphisms,
        src,
        tgt,
        identities,
        composition,
    })
    .map_err(|e| at_path(path, e))
}

fn shape_spec(c: &FinCategory) -> ShapeSpec {
    let name = |f: usize| c.morphisms().atom(f).to_string();
    ShapeSpec {
        objects: c.objects().elements().iter().map(ToString::to_string).collect(),
        morphisms: (0..c.num_morphisms())
            .map(|f| [name(f), c.objects().atom(c.src(f)).to_string(), c.objects().atom(c.tgt(f)).to_string()])
            .collect(),
        identities: (0..c.num_objects()).map(|x| name(c.identity(x))).collect(),
        composition: c
            .composable_pairs()
            .into_iter()
            .filter_map(|(g, f)| c.compose(g, f).map(|gf| [name(g), name(f), name(gf)]))
            .collect(),
    }
}

/// Resolves `at` arrays: a morphism name for G-monoids, an object pair for
/// enriched categories.
struct Addressing<'a> {
    kind: Kind,
    shape: &'a FinCategory,
    objects: FinSet,
}

impl Addressing<'_> {
    fn morphism(&self, path: &str, at: &[String]) -> Result<usize> {
        match (self.kind == Kind::Enriched, at) {
            (false, [m]) => lookup(path, self.shape.morphisms(), m),
            (true, [x, y]) => Ok(lookup(path, &self.objects, x)? * self.objects.len() + lookup(path, &self.objects, y)?),
            _ => Err(schema(path, "wrong number of atoms in `at`")),
        }
    }

    fn pair(&self, path: &str, at: &[String]) -> Result<(usize, usize)> {
        match (self.kind == Kind::Enriched, at) {
            (false, [g, h]) => Ok((lookup(path, self.shape.morphisms(), g)?, lookup(path, self.shape.morphisms(), h)?)),
            (true, [x, y, z]) => {
                let n = self.objects.len();
                let (x, y, z) = (lookup(path, &self.objects, x)?, lookup(path, &self.objects, y)?, lookup(path, &self.objects, z)?);
                Ok((x * n + y, y * n + z))
            }
            _ => Err(schema(path, "wrong number of atoms in `at`")),
        }
    }

    fn object(&self, path: &str, at: &[String]) -> Result<usize> {
        match at {
            [x] => lookup(path, self.shape.objects(), x),
            _ => Err(schema(path, "wrong number of atoms in `at`")),
        }
    }

    fn morphism_at(&self, h: usize) -> Vec<String> {
        if self.kind == Kind::Enriched {
            let n = self.objects.len();
            vec![self.objects.atom(h / n).to_string(), self.objects.atom(h % n).to_string()]
        } else {
            vec![self.shape.morphisms().atom(h).to_string()]
        }
    }

    fn pair_at(&self, g: usize, h: usize) -> Vec<String> {
        if self.kind == Kind::Enriched {
            let n = self.objects.len();
            [g / n, g % n, h % n].iter().map(|&i| self.objects.atom(i).to_string()).collect()
        } else {
            vec![self.shape.morphisms().atom(g).to_string(), self.shape.morphisms().atom(h).to_string()]
        }
    }
}

/// Fills one slot per key, rejecting duplicates and gaps.
fn table<K: Ord + Copy, V>(path: &str, keys: &[K], entries: Vec<(K, V)>) -> Result<BTreeMap<K, V>> {
    let mut out = BTreeMap::new();
    for (i, (k, v)) in entries.into_iter().enumerate() {
        if !keys.contains(&k) {
            return Err(schema(format!("{path}[{i}]"), "entry is not addressable here"));
        }
        if out.insert(k, v).is_some() {
            return Err(schema(format!("{path}[{i}]"), "entry given twice"));
        }
    }
    if out.len() != keys.len() {
        return Err(schema(path, format!("{} entries for {} slots", out.len(), keys.len())));
    }
    Ok(out)
}

fn load_vect(f: &PresentationFile) -> Result<LoadedVect> {
    if f.backend != BackendKind::Vect {
        return Err(schema("backend", "this kind needs the vect backend"));
    }
    if f.polyad.is_some() {
        return Err(schema("polyad", "only polyad files carry a polyad section"));
    }
    let q = parse_q(&f.q)?;
    let (kind, cat, objects) = match (f.kind, &f.shape, &f.objects) {
        (FileKind::GroupMonoid, Some(s), None) => {
            let c = shape("shape", s)?;
            if c.num_objects() != 1 {
                return Err(schema("shape.objects", "a G-monoid has exactly one object"));
            }
            (Kind::GroupMonoid, c, FinSet::empty())
        }
        (FileKind::EnrichedCategory, None, Some(o)) => {
            let objects = atoms(o)
                .map_err(|e| schema("objects", e.to_string()))?;
            (Kind::Enriched, FinCategory::indiscrete(&objects), objects)
        }
        (FileKind::GroupMonoid, _, _) => return Err(schema("shape", "a G-monoid needs `shape` and no `objects`")),
        (FileKind::EnrichedCategory, _, _) => {
            return Err(schema("objects", "an enriched category needs `objects` and no `shape`"))
        }
        (FileKind::Polyad, _, _) => unreachable!(),
    };
    let cat = Arc::new(cat);
    let addr = Addressing {
        kind: kind.clone(),
        shape: &cat,
        objects,
    };
    let n = cat.num_morphisms();
    let all: Vec<usize> = (0..n).collect();

    let mut entries = Vec::new();
    for (i, l) in f.labels.iter().enumerate() {
        let p = format!("labels[{i}]");
        entries.push((addr.morphism(&p, &l.at)?, (object(&p, &l.basis, &l.grades)?, l.grouplike)));
    }
    let labels = table("labels", &all, entries)?;
    let grouplike: Vec<bool> = labels.values().map(|(_, g)| *g).collect();
    let labels: Vec<VObject> = labels.into_values().map(|(o, _)| o).collect();

    let pairs = cat.composable_pairs();
    let mut entries = Vec::new();
    for (i, m) in f.mu.iter().enumerate() {
        let p = format!("mu[{i}]");
        let (g, h) = addr.pair(&p, &m.at)?;
        let gh = cat.compose(g, h).ok_or_else(|| schema(&p, "not composable"))?;
        let dom = crate::vect::tensor_obj(&labels[g], &labels[h]);
        entries.push(((g, h), matrix(&format!("{p}.matrix"), &m.matrix, &dom, &labels[gh])?));
    }
    let mu = table("mu", &pairs, entries)?;

    let objs: Vec<usize> = (0..cat.num_objects()).collect();
    let mut entries = Vec::new();
    for (i, m) in f.eta.iter().enumerate() {
        let p = format!("eta[{i}]");
        let x = addr.object(&p, &m.at)?;
        entries.push((x, matrix(&format!("{p}.matrix"), &m.matrix, &VObject::unit(), &labels[cat.identity(x)])?));
    }
    let eta = table("eta", &objs, entries)?.into_values().collect();

    let mut monad = VectMonad::new(kind, q, cat.clone(), labels.clone(), mu, eta).map_err(|e| at_path("mu", e))?;
    let per_morphism = |name: &str, list: &[MatrixAt], cod: &dyn Fn(usize) -> VObject| -> Result<Vec<VMorphism>> {
        let mut entries = Vec::new();
        for (i, m) in list.iter().enumerate() {
            let p = format!("{name}[{i}]");
            let h = addr.morphism(&p, &m.at)?;
            entries.push((h, matrix(&format!("{p}.matrix"), &m.matrix, &labels[h], &cod(h))?));
        }
        Ok(table(name, &all, entries)?.into_values().collect())
    };
    let synthesized = match (&f.delta, &f.epsilon) {
        (Some(d), Some(e)) => {
            let delta = per_morphism("delta", d, &|h| crate::vect::tensor_obj(&labels[h], &labels[h]))?;
            let eps = per_morphism("epsilon", e, &|_| VObject::unit())?;
            monad = monad.with_comonoid(Comonoid { delta, eps }).map_err(|e| at_path("delta", e))?;
            false
        }
        (None, None) if !grouplike.is_empty() && grouplike.iter().all(|&g| g) => {
            monad = monad.with_grouplike()?;
            true
        }
        (None, None) => false,
        _ => return Err(schema("delta", "delta and epsilon must be given together")),
    };
    if let Some(s) = &f.antipode {
        let sigma = per_morphism("antipode", s, &|h| {
            cat.inverse_of(h).map_or_else(VObject::zero, |k| labels[k].clone())
        })?;
        monad = monad.with_antipode(sigma).map_err(|e| at_path("antipode", e))?;
    }
    Ok(LoadedVect {
        monad,
        grouplike,
        synthesized,
    })
}

pub fn vect_to_file(v: &LoadedVect) -> PresentationFile {
    let m = &v.monad;
    let objects = if m.kind == Kind::Enriched {
        // the indiscrete shape has the objects in order
        m.shape.objects().clone()
    } else {
        FinSet::empty()
    };
    let addr = Addressing {
        kind: m.kind.clone(),
        shape: &m.shape,
        objects,
    };
    let labels = m
        .labels
        .iter()
        .enumerate()
        .map(|(h, l)| {
            let (basis, grades) = object_spec(l);
            LabelSpec {
                at: addr.morphism_at(h),
                basis,
                grades,
                grouplike: v.grouplike.get(h).copied().unwrap_or(false),
            }
        })
        .collect();
    let per_morphism = |fs: &[VMorphism]| -> Vec<MatrixAt> {
        fs.iter()
            .enumerate()
            .map(|(h, f)| MatrixAt {
                at: addr.morphism_at(h),
                matrix: matrix_spec(f),
            })
            .collect()
    };
    let (delta, epsilon) = match (&m.comonoid, v.synthesized) {
        (Some(c), false) => (Some(per_morphism(&c.delta)), Some(per_morphism(&c.eps))),
        _ => (None, None),
    };
    PresentationFile {
        format_version: FORMAT_VERSION,
        kind: if m.kind == Kind::Enriched {
            FileKind::EnrichedCategory
        } else {
            FileKind::GroupMonoid
        },
        backend: BackendKind::Vect,
        q: format_q(&m.q),
        shape: (m.kind != Kind::Enriched).then(|| shape_spec(&m.shape)),
        objects: (m.kind == Kind::Enriched).then(|| addr.objects.elements().iter().map(ToString::to_string).collect()),
        labels,
        mu: m
            .mu
            .iter()
            .map(|(&(g, h), f)| MatrixAt {
                at: addr.pair_at(g, h),
                matrix: matrix_spec(f),
            })
            .collect(),
        eta: m
            .eta
            .iter()
            .enumerate()
            .map(|(x, f)| MatrixAt {
                at: vec![m.shape.objects().atom(x).to_string()],
                matrix: matrix_spec(f),
            })
            .collect(),
        delta,
        epsilon,
        antipode: m.antipode.as_deref().map(per_morphism),
        polyad: None,
    }
}

fn load_polyad(f: &PresentationFile) -> Result<LoadedPolyad> {
    if f.backend != BackendKind::Cat {
        return Err(schema("backend", "polyads need the cat backend"));
    }
    if f.shape.is_some() || f.objects.is_some() || !f.labels.is_empty() || !f.mu.is_empty() || !f.eta.is_empty() {
        return Err(schema("polyad", "polyad data belongs in the `polyad` section"));
    }
    if f.delta.is_some() || f.epsilon.is_some() || f.antipode.is_some() {
        return Err(schema("polyad", "polyad files carry no comonoid or antipode data"));
    }
    parse_q(&f.q)?;
    match f.polyad.as_ref().ok_or_else(|| schema("polyad", "missing"))? {
        PolyadSpec::VectImage { source, probes } => {
            let source = load_vect(source).map_err(|e| match e {
                Error::Schema { path, detail } => schema(format!("polyad.source.{path}"), detail),
                e => e,
            })?;
            if probes.is_empty() {
                return Err(schema("polyad.probes", "at least one probe object is needed"));
            }
            let probes = probes
                .iter()
                .enumerate()
                .map(|(i, o)| object(&format!("polyad.probes[{i}]"), &o.basis, &o.grades))
                .collect::<Result<Vec<_>>>()?;
            let polyad = vect_image(&source.monad, &probes)?;
            Ok(LoadedPolyad::VectImage {
                source: Box::new(source),
                probes,
                polyad: Box::new(polyad),
            })
        }
        PolyadSpec::Finite(s) => Ok(LoadedPolyad::Finite(Box::new(load_finite(s)?))),
    }
}

fn load_finite(s: &FinitePolyadSpec) -> Result<Polyad<CatBackend>> {
    let d = Arc::new(shape("polyad.shape", &s.shape)?);
    let k = d.num_objects();
    let objs: Vec<usize> = (0..k).collect();
    let mut entries = Vec::new();
    for (i, m) in s.categories.iter().enumerate() {
        let p = format!("polyad.categories[{i}]");
        let x = lookup(&p, d.objects(), &m.at)?;
        entries.push((x, monoidal(&p, m)?));
    }
    let mons: Vec<FinMonoidalCategory> = table("polyad.categories", &objs, entries)?.into_values().collect();
    let cat_of = |x: usize| mons[x].category().clone();

    let all: Vec<usize> = (0..d.num_morphisms()).collect();
    let mut entries = Vec::new();
    for (i, fs) in s.functors.iter().enumerate() {
        let p = format!("polyad.functors[{i}]");
        let f = lookup(&p, d.morphisms(), &fs.at)?;
        let (dom, cod) = (cat_of(d.src(f)), cat_of(d.tgt(f)));
        let omap = assignment(&format!("{p}.objects"), &fs.objects, dom.objects(), cod.objects())?;
        let mmap = assignment(&format!("{p}.morphisms"), &fs.morphisms, dom.morphisms(), cod.morphisms())?;
        entries.push((f, FunctorData::new(dom, cod, omap, mmap).map_err(|e| at_path(&p, e))?));
    }
    let functors: Vec<FunctorData> = table("polyad.functors", &all, entries)?.into_values().collect();

    let pairs = d.composable_pairs();
    let mut entries = Vec::new();
    for (i, n) in s.mu.iter().enumerate() {
        let p = format!("polyad.mu[{i}]");
        let [g, h] = &n.at[..] else { return Err(schema(p, "`at` names two morphisms")) };
        let (g, h) = (lookup(&p, d.morphisms(), g)?, lookup(&p, d.morphisms(), h)?);
        let gh = d.compose(g, h).ok_or_else(|| schema(&p, "not composable"))?;
        let from = functors[g].after(&functors[h]).map_err(|e| at_path(&p, e))?;
        entries.push(((g, h), nat(&p, &n.components, from, functors[gh].clone())?));
    }
    let mu = table("polyad.mu", &pairs, entries)?;
    let mut entries = Vec::new();
    for (i, n) in s.eta.iter().enumerate() {
        let p = format!("polyad.eta[{i}]");
        let [x] = &n.at[..] else { return Err(schema(p, "`at` names one object")) };
        let x = lookup(&p, d.objects(), x)?;
        let from = FunctorData::identity(&cat_of(x));
        entries.push((x, nat(&p, &n.components, from, functors[d.identity(x)].clone())?));
    }
    let eta = table("polyad.eta", &objs, entries)?;
    let polyad = Polyad::finite(d.clone(), mons.clone(), functors.clone(), |g, h| mu[&(g, h)].clone(), |x| eta[&x].clone())
        .map_err(|e| at_path("polyad", e))?;
    match (&s.d2, &s.d0) {
        (None, None) => Ok(polyad),
        (Some(d2), Some(d0)) => {
            let mut split = HashMap::new();
            for (i, sp) in d2.iter().enumerate() {
                let p = format!("polyad.d2[{i}]");
                let f = lookup(&p, d.morphisms(), &sp.at)?;
                let (c, t) = (cat_of(d.src(f)), &mons[d.tgt(f)]);
                for (j, [a, b, m]) in sp.components.iter().enumerate() {
                    let p = format!("{p}.components[{j}]");
                    let (a, b) = (lookup(&p, c.objects(), a)?, lookup(&p, c.objects(), b)?);
                    let m = lookup(&p, t.category().morphisms(), m)?;
                    let fa = functors[f].on_object(a);
                    let fb = functors[f].on_object(b);
                    let from = functors[f].on_object(CatBackend::tensor(&mons[d.src(f)], &a, &b));
                    let to = CatBackend::tensor(t, &fa, &fb);
                    if t.category().src(m) != from || t.category().tgt(m) != to {
                        return Err(schema(p, "morphism has the wrong boundary"));
                    }
                    if split.insert((f, a, b), m).is_some() {
                        return Err(schema(p, "component given twice"));
                    }
                }
                let n = c.num_objects();
                if (0..n).any(|a| (0..n).any(|b| !split.contains_key(&(f, a, b)))) {
                    return Err(schema(p, "components must cover every pair of objects"));
                }
            }
            let mut counit = BTreeMap::new();
            for (i, [f, m]) in d0.iter().enumerate() {
                let p = format!("polyad.d0[{i}]");
                let f = lookup(&p, d.morphisms(), f)?;
                let t = &mons[d.tgt(f)];
                let m = lookup(&p, t.category().morphisms(), m)?;
                let from = functors[f].on_object(CatBackend::unit(&mons[d.src(f)]));
                if t.category().src(m) != from || t.category().tgt(m) != CatBackend::unit(t) {
                    return Err(schema(p, "morphism has the wrong boundary"));
                }
                counit.insert(f, m);
            }
            if (0..d.num_morphisms()).any(|f| !split.keys().any(|k| k.0 == f)) || counit.len() != d.num_morphisms() {
                return Err(schema("polyad.d2", "opmonoidal data must cover every morphism"));
            }
            Ok(polyad.with_opmonoidal(PolyadOpmonoidal {
                d2: Arc::new(move |f, a, b| split[&(f, *a, *b)]),
                d0: Arc::new(move |f| counit[&f]),
            }))
        }
        _ => Err(schema("polyad.d2", "d2 and d0 must be given together")),
    }
}

fn monoidal(path: &str, m: &MonoidalSpec) -> Result<FinMonoidalCategory> {
    let c = Arc::new(shape(&format!("{path}.category"), &m.category)?);
    let (k, n) = (c.num_objects(), c.num_morphisms());
    let unit = lookup(&format!("{path}.unit"), c.objects(), &m.unit)?;
    let product = |name: &str, rows: &[[String; 3]], set: &FinSet| -> Result<Vec<usize>> {
        let size = set.len();
        let mut out = vec![None; size * size];
        for (i, [a, b, ab]) in rows.iter().enumerate() {
            let p = format!("{path}.{name}[{i}]");
            let (a, b, ab) = (lookup(&p, set, a)?, lookup(&p, set, b)?, lookup(&p, set, ab)?);
            if out[a * size + b].replace(ab).is_some() {
                return Err(schema(p, "entry given twice"));
            }
        }
        out.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| schema(format!("{path}.{name}"), "table is not total"))
    };
    let to = product("tensor", &m.tensor, c.objects())?;
    let tm = product("tensor_morphisms", &m.tensor_morphisms, c.morphisms())?;
    debug_assert_eq!((to.len(), tm.len()), (k * k, n * n));
    FinMonoidalCategory::new(c, unit, to, tm).map_err(|e| at_path(path, e))
}

fn assignment(path: &str, rows: &[[String; 2]], dom: &FinSet, cod: &FinSet) -> Result<Vec<usize>> {
    let mut out = vec![None; dom.len()];
    for (i, [a, b]) in rows.iter().enumerate() {
        let p = format!("{path}[{i}]");
        if out[lookup(&p, dom, a)?].replace(lookup(&p, cod, b)?).is_some() {
            return Err(schema(p, "assigned twice"));
        }
    }
    out.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| schema(path, "map is not total"))
}

fn nat(path: &str, rows: &[[String; 2]], from: FunctorData, to: FunctorData) -> Result<NatTransData> {
    let comps = assignment(&format!("{path}.components"), rows, from.dom().objects(), from.cod().morphisms())?;
    NatTransData::new(from, to, comps).map_err(|e| at_path(path, e))
}

fn monoidal_spec(at: &str, m: &FinMonoidalCategory) -> MonoidalSpec {
    let c = m.category();
    let (k, n) = (c.num_objects(), c.num_morphisms());
    let ob = |x: usize| c.objects().atom(x).to_string();
    let mo = |f: usize| c.morphisms().atom(f).to_string();
    MonoidalSpec {
        at: at.to_string(),
        category: shape_spec(c),
        unit: ob(CatBackend::unit(m)),
        tensor: (0..k * k).map(|i| [ob(i / k), ob(i % k), ob(CatBackend::tensor(m, &(i / k), &(i % k)))]).collect(),
        tensor_morphisms: (0..n * n)
            .map(|i| [mo(i / n), mo(i % n), mo(CatBackend::tensor_hom(m, &(i / n), &(i % n)))])
            .collect(),
    }
}

pub fn finite_polyad_to_file(p: &Polyad<CatBackend>) -> PresentationFile {
    let d = &p.shape;
    let mname = |f: usize| d.morphisms().atom(f).to_string();
    let oname = |x: usize| d.objects().atom(x).to_string();
    let cat = |x: usize| p.mons[x].category().clone();
    let comps = |n: &NatTransData, x: usize, y: usize| -> Vec<[String; 2]> {
        let (c, t) = (cat(x), cat(y));
        (0..c.num_objects())
            .map(|a| [c.objects().atom(a).to_string(), t.morphisms().atom(n.component(a)).to_string()])
            .collect()
    };
    let functors = (0..d.num_morphisms())
        .map(|f| {
            let (c, t) = (cat(d.src(f)), cat(d.tgt(f)));
            let func = p.d(f);
            FunctorSpec {
                at: mname(f),
                objects: (0..c.num_objects())
                    .map(|a| [c.objects().atom(a).to_string(), t.objects().atom(func.on_object(a)).to_string()])
                    .collect(),
                morphisms: (0..c.num_morphisms())
                    .map(|g| [c.morphisms().atom(g).to_string(), t.morphisms().atom(func.on_morphism(g)).to_string()])
                    .collect(),
            }
        })
        .collect();
    let (d2, d0) = match &p.opmonoidal {
        Some(o) => {
            let d2 = (0..d.num_morphisms())
                .map(|f| {
                    let (c, t) = (cat(d.src(f)), cat(d.tgt(f)));
                    let n = c.num_objects();
                    SplitSpec {
                        at: mname(f),
                        components: (0..n * n)
                            .map(|i| {
                                let (a, b) = (i / n, i % n);
                                [
                                    c.objects().atom(a).to_string(),
                                    c.objects().atom(b).to_string(),
                                    t.morphisms().atom((o.d2)(f, &a, &b)).to_string(),
                                ]
                            })
                            .collect(),
                    }
                })
                .collect();
            let d0 = (0..d.num_morphisms())
                .map(|f| [mname(f), cat(d.tgt(f)).morphisms().atom((o.d0)(f)).to_string()])
                .collect();
            (Some(d2), Some(d0))
        }
        None => (None, None),
    };
    let spec = FinitePolyadSpec {
        shape: shape_spec(d),
        categories: (0..d.num_objects()).map(|x| monoidal_spec(&oname(x), &p.mons[x])).collect(),
        functors,
        mu: d
            .composable_pairs()
            .into_iter()
            .map(|(g, h)| NatSpec {
                at: vec![mname(g), mname(h)],
                components: comps(p.mu_at(g, h).expect("composable"), d.src(h), d.tgt(g)),
            })
            .collect(),
        eta: (0..d.num_objects())
            .map(|x| NatSpec {
                at: vec![oname(x)],
                components: comps(p.eta_at(x), x, x),
            })
            .collect(),
        d2,
        d0,
    };
    polyad_file(PolyadSpec::Finite(spec))
}

fn polyad_file(spec: PolyadSpec) -> PresentationFile {
    PresentationFile {
        format_version: FORMAT_VERSION,
        kind: FileKind::Polyad,
        backend: BackendKind::Cat,
        q: "1/1".into(),
        shape: None,
        objects: None,
        labels: Vec::new(),
        mu: Vec::new(),
        eta: Vec::new(),
        delta: None,
        epsilon: None,
        antipode: None,
        polyad: Some(spec),
    }
}

/// The polyad file for the image of `source` sampled on `probes`.
pub fn vect_image_file(source: &LoadedVect, probes: &[VObject]) -> PresentationFile {
    let mut f = polyad_file(PolyadSpec::VectImage {
        source: Box::new(vect_to_file(source)),
        probes: probes
            .iter()
            .map(|o| {
                let (basis, grades) = object_spec(o);
                ObjectSpec {
                    basis,
                    grades,
                    grouplike: false,
                }
            })
            .collect(),
    });
    f.q = format_q(&source.monad.q);
    f
}

pub fn load(f: &PresentationFile) -> Result<Presentation> {
    check_version(f.format_version)?;
    match f.kind {
        FileKind::Polyad => Ok(Presentation::Polyad(load_polyad(f)?)),
        _ => Ok(Presentation::Vect(load_vect(f)?)),
    }
}

pub fn to_file(p: &Presentation) -> PresentationFile {
    match p {
        Presentation::Vect(v) => vect_to_file(v),
        Presentation::Polyad(LoadedPolyad::Finite(p)) => finite_polyad_to_file(p),
        Presentation::Polyad(LoadedPolyad::VectImage { source, probes, .. }) => vect_image_file(source, probes),
    }
}

pub fn read(text: &str) -> Result<Presentation> {
    load(&parse_file(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{constant_group_algebra, group_hom_category, idempotent_monoid, trivial_group_monoid};
    use crate::polyad::translation_polyad;

    fn loaded(m: VectMonad) -> LoadedVect {
        let n = m.labels.len();
        LoadedVect {
            monad: m,
            grouplike: vec![false; n],
            synthesized: false,
        }
    }

    #[test]
    fn vect_round_trip() {
        let shape = Arc::new(FinCategory::cyclic_group(2));
        for m in [
            constant_group_algebra(BraidParam::new(crate::linalg::frac(-1, 2)).unwrap(), shape, |g| g as i64).unwrap(),
            group_hom_category(BraidParam::int(2), &FinSet::range(2), &FinCategory::cyclic_group(2)).unwrap(),
            trivial_group_monoid(BraidParam::one(), idempotent_monoid()).unwrap(),
        ] {
            let f = vect_to_file(&loaded(m.clone()));
            let text = to_json(&f);
            let back = read(&text).unwrap();
            let Presentation::Vect(v) = &back else { panic!() };
            // atoms come back as names; everything else is unchanged
            assert_eq!(v.monad.labels, m.labels);
            assert_eq!(v.monad.mu.values().collect::<Vec<_>>(), m.mu.values().collect::<Vec<_>>());
            assert_eq!(v.monad.comonoid, m.comonoid);
            assert_eq!(v.monad.antipode, m.antipode);
            assert_eq!(parse_file(&text).unwrap(), f);
            assert_eq!(to_json(&to_file(&back)), text);
            let Presentation::Vect(again) = read(&to_json(&to_file(&back))).unwrap() else { panic!() };
            assert_eq!(&again, v);
        }
    }

    #[test]
    fn grouplike_synthesis() {
        let m = constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2)), |_| 0).unwrap();
        let mut f = vect_to_file(&loaded(m.clone()));
        f.delta = None;
        f.epsilon = None;
        let Presentation::Vect(v) = load(&f).unwrap() else { panic!() };
        assert!(v.monad.comonoid.is_none());
        for l in &mut f.labels {
            l.grouplike = true;
        }
        let Presentation::Vect(v) = load(&f).unwrap() else { panic!() };
        assert!(v.synthesized);
        assert_eq!(v.monad.comonoid, m.comonoid);
        assert_eq!(vect_to_file(&v), f);
    }

    #[test]
    fn schema_errors() {
        let m = constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2)), |_| 0).unwrap();
        let f = vect_to_file(&loaded(m));
        let mut bad = f.clone();
        bad.mu[0].matrix[0][0] = "1/0".into();
        let e = load(&bad).unwrap_err();
        assert!(matches!(&e, Error::Schema { path, .. } if path == "mu[0].matrix[0][0]"), "{e}");
        let mut bad = f.clone();
        bad.mu[1].matrix.pop();
        assert!(matches!(load(&bad), Err(Error::Schema { .. })));
        let mut bad = f.clone();
        bad.labels[0].at = vec!["nope".into()];
        assert!(matches!(load(&bad), Err(Error::Schema { path, .. }) if path == "labels[0]"));
        let text = to_json(&f).replacen("\"kind\"", "\"extra\": 1,\n  \"kind\"", 1);
        assert!(matches!(parse_file(&text), Err(Error::Schema { .. })));
        let mut bad = f;
        bad.format_version = 7;
        assert!(load(&bad).is_err());
    }

    #[test]
    fn polyad_round_trip() {
        let p = translation_polyad().unwrap();
        let f = finite_polyad_to_file(&p);
        let text = to_json(&f);
        let back = read(&text).unwrap();
        assert_eq!(to_json(&to_file(&back)), text);
        let Presentation::Polyad(LoadedPolyad::Finite(q)) = back else { panic!() };
        assert!(crate::polyad::polyad_is_hopf(&*q).unwrap().is_hopf());

        let m = constant_group_algebra(BraidParam::int(2), Arc::new(FinCategory::cyclic_group(2)), |g| g as i64).unwrap();
        let f = vect_image_file(&loaded(m), &[VObject::unit(), VObject::graded(&[("a", 1)])]);
        let text = to_json(&f);
        let back = read(&text).unwrap();
        assert_eq!(to_json(&to_file(&back)), text);
        assert!(matches!(back, Presentation::Polyad(LoadedPolyad::VectImage { .. })));
    }
}
