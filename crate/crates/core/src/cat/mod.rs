//! Finite categories, functors and natural transformations, plus a generic
//! [`Category`] interface shared with lazily evaluated categories.

pub mod lazy;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet};

/// Raw composition data, possibly violating the category axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryTable {
    pub objects: FinSet,
    pub morphisms: FinSet,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub identities: Vec<usize>,
    /// `composition[g * n + f] = g ∘ f`, defined exactly when `tgt(f) = src(g)`.
    pub composition: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    BadIdentity(Atom),
    MissingComposite { g: Atom, f: Atom },
    SpuriousComposite { g: Atom, f: Atom },
    CompositeBoundary { g: Atom, f: Atom },
    NotUnital(Atom),
    NotAssociative { h: Atom, g: Atom, f: Atom },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryViolation::BadIdentity(x) => write!(f, "identity at {x} is not an endomorphism"),
            CategoryViolation::MissingComposite { g, f: h } => write!(f, "{g}∘{h} unassigned"),
            CategoryViolation::SpuriousComposite { g, f: h } => {
                write!(f, "{g}∘{h} assigned for a non-composable pair")
            }
            CategoryViolation::CompositeBoundary { g, f: h } => {
                write!(f, "{g}∘{h} has the wrong source or target")
            }
            CategoryViolation::NotUnital(m) => write!(f, "identity law fails at {m}"),
            CategoryViolation::NotAssociative { h, g, f: k } => {
                write!(f, "associativity fails at ({h},{g},{k})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks totality on composable pairs, associativity and unitality.
pub fn check_category(t: &CategoryTable) -> CategoryReport {
    let n = t.morphisms.len();
    let m = |i: usize| t.morphisms.atom(i).clone();
    let mut violations = Vec::new();
    if t.src.len() != n || t.tgt.len() != n || t.identities.len() != t.objects.len() {
        violations.push(CategoryViolation::BadIdentity(Atom::name("<shape>")));
        return CategoryReport { violations };
    }
    if t.composition.len() != n * n {
        violations.push(CategoryViolation::MissingComposite {
            g: Atom::name("<table>"),
            f: Atom::name("<size>"),
        });
        return CategoryReport { violations };
    }
    for (x, &e) in t.identities.iter().enumerate() {
        if t.src[e] != x || t.tgt[e] != x {
            violations.push(CategoryViolation::BadIdentity(t.objects.atom(x).clone()));
        }
    }
    let comp = |g: usize, f: usize| t.composition[g * n + f];
    for g in 0..n {
        for f in 0..n {
            match (t.tgt[f] == t.src[g], comp(g, f)) {
                (true, None) => violations.push(CategoryViolation::MissingComposite { g: m(g), f: m(f) }),
                (false, Some(_)) => {
                    violations.push(CategoryViolation::SpuriousComposite { g: m(g), f: m(f) })
                }
                (true, Some(gf)) => {
                    if t.src[gf] != t.src[f] || t.tgt[gf] != t.tgt[g] {
                        violations.push(CategoryViolation::CompositeBoundary { g: m(g), f: m(f) });
                    }
                }
                (false, None) => {}
            }
        }
    }
    if !violations.is_empty() {
        return CategoryReport { violations };
    }
    for f in 0..n {
        let l = comp(t.identities[t.tgt[f]], f);
        let r = comp(f, t.identities[t.src[f]]);
        if l != Some(f) || r != Some(f) {
            violations.push(CategoryViolation::NotUnital(m(f)));
        }
    }
    for h in 0..n {
        for g in 0..n {
            let Some(hg) = comp(h, g) else { continue };
            for f in 0..n {
                let Some(gf) = comp(g, f) else { continue };
                if comp(hg, f) != comp(h, gf) {
                    violations.push(CategoryViolation::NotAssociative {
                        h: m(h),
                        g: m(g),
                        f: m(f),
                    });
                }
            }
        }
    }
    CategoryReport { violations }
}

/// A finite category that passed [`check_category`].
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    table: CategoryTable,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory(objects {}, morphisms {})",
            self.table.objects, self.table.morphisms
        )
    }
}

impl FinCategory {
    pub fn new(table: CategoryTable) -> Result<Self> {
        let report = check_category(&table);
        if let Some(v) = report.violations.first() {
            return Err(Error::CategoryAxiom(v.to_string()));
        }
        Ok(FinCategory { table })
    }

    /// Builds from named morphisms `(name, src, tgt)` and a composition rule
    /// on names; identities are looked up among the morphisms.
    pub fn from_named(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[&str],
        compose: impl Fn(&str, &str) -> Option<String>,
    ) -> Result<Self> {
        let obs = FinSet::from_names(objects)?;
        let mors = FinSet::new(morphisms.iter().map(|(n, _, _)| Atom::name(n)).collect())?;
        let src = morphisms
            .iter()
            .map(|(_, s, _)| obs.require(&Atom::name(s)))
            .collect::<Result<Vec<_>>>()?;
        let tgt = morphisms
            .iter()
            .map(|(_, _, t)| obs.require(&Atom::name(t)))
            .collect::<Result<Vec<_>>>()?;
        let ids = identities
            .iter()
            .map(|i| mors.require(&Atom::name(i)))
            .collect::<Result<Vec<_>>>()?;
        let n = morphisms.len();
        let mut composition = vec![None; n * n];
        for (g, (gn, gs, _)) in morphisms.iter().enumerate() {
            for (f, (fname, _, ft)) in morphisms.iter().enumerate() {
                if ft == gs {
                    if let Some(r) = compose(gn, fname) {
                        composition[g * n + f] = Some(mors.require(&Atom::name(&r))?);
                    }
                }
            }
        }
        Self::new(CategoryTable {
            objects: obs,
            morphisms: mors,
            src,
            tgt,
            identities: ids,
            composition,
        })
    }

    /// A monoid as a one-object category; `g ∘ f = mul(g, f)`.
    pub fn one_object(elements: &[&str], unit: &str, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mors = FinSet::from_names(elements)?;
        let n = mors.len();
        let e = mors.require(&Atom::name(unit))?;
        let mut composition = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                let r = mul(g, f);
                if r >= n {
                    return Err(Error::Invalid(format!("product index {r} out of range")));
                }
                composition[g * n + f] = Some(r);
            }
        }
        Self::new(CategoryTable {
            objects: FinSet::singleton(),
            morphisms: mors,
            src: vec![0; n],
            tgt: vec![0; n],
            identities: vec![e],
            composition,
        })
    }

    /// The cyclic group of order `n` on elements `g0, .., g{n-1}`.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::one_object(&refs, "g0", |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Every pair of objects has exactly one morphism `(x, y): y -> x`.
    pub fn indiscrete(objects: &FinSet) -> Self {
        let k = objects.len();
        let mors = objects.product(objects);
        let n = k * k;
        let mut composition = vec![None; n * n];
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    // (x,y) ∘ (y,z) = (x,z)
                    composition[(x * k + y) * n + (y * k + z)] = Some(x * k + z);
                }
            }
        }
        Self::new(CategoryTable {
            objects: objects.clone(),
            morphisms: mors,
            src: (0..n).map(|i| i % k).collect(),
            tgt: (0..n).map(|i| i / k).collect(),
            identities: (0..k).map(|x| x * k + x).collect(),
            composition,
        })
        .expect("indiscrete category")
    }

    pub fn discrete(objects: &FinSet) -> Self {
        let k = objects.len();
        let mut composition = vec![None; k * k];
        for x in 0..k {
            composition[x * k + x] = Some(x);
        }
        let mors = FinSet::new(
            objects
                .elements()
                .iter()
                .map(|a| Atom::tuple(vec![Atom::name("id"), a.clone()]))
                .collect(),
        )
        .expect("distinct");
        Self::new(CategoryTable {
            objects: objects.clone(),
            morphisms: mors,
            src: (0..k).collect(),
            tgt: (0..k).collect(),
            identities: (0..k).collect(),
            composition,
        })
        .expect("discrete category")
    }

    pub fn terminal() -> Self {
        Self::discrete(&FinSet::singleton())
    }

    pub fn table(&self) -> &CategoryTable {
        &self.table
    }

    pub fn objects(&self) -> &FinSet {
        &self.table.objects
    }

    pub fn morphisms(&self) -> &FinSet {
        &self.table.morphisms
    }

    pub fn num_objects(&self) -> usize {
        self.table.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.table.morphisms.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.table.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.table.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.table.identities[x]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table.composition[g * self.num_morphisms() + f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.num_morphisms())
            .filter(|&f| self.src(f) == x && self.tgt(f) == y)
            .collect()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity(self.src(f)) == f
    }

    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        self.hom(self.tgt(f), self.src(f)).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(self.src(f)))
                && self.compose(f, g) == Some(self.identity(self.tgt(f)))
        })
    }

    /// Composable pairs `(g, f)` with `tgt(f) = src(g)`, lexicographic.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.num_morphisms();
        let mut out = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if self.tgt(f) == self.src(g) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    pub fn object_named(&self, name: &str) -> Option<usize> {
        self.objects().index_of(&Atom::name(name))
    }

    pub fn morphism_named(&self, name: &str) -> Option<usize> {
        self.morphisms().index_of(&Atom::name(name))
    }

    /// Product category, objects and morphisms as lexicographic pairs.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (n1, n2) = (self.num_morphisms(), other.num_morphisms());
        let k2 = other.num_objects();
        let n = n1 * n2;
        let mut composition = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                let (g1, g2, f1, f2) = (g / n2, g % n2, f / n2, f % n2);
                if let (Some(a), Some(b)) = (self.compose(g1, f1), other.compose(g2, f2)) {
                    composition[g * n + f] = Some(a * n2 + b);
                }
            }
        }
        FinCategory::new(CategoryTable {
            objects: self.objects().product(other.objects()),
            morphisms: self.morphisms().product(other.morphisms()),
            src: (0..n).map(|f| self.src(f / n2) * k2 + other.src(f % n2)).collect(),
            tgt: (0..n).map(|f| self.tgt(f / n2) * k2 + other.tgt(f % n2)).collect(),
            identities: (0..self.num_objects() * k2)
                .map(|x| self.identity(x / k2) * n2 + other.identity(x % k2))
                .collect(),
            composition,
        })
        .expect("product of categories")
    }
}

/// Whether every morphism is invertible; otherwise a non-invertible one.
pub fn is_groupoid(c: &FinCategory) -> std::result::Result<(), Atom> {
    match (0..c.num_morphisms()).find(|&f| c.inverse_of(f).is_none()) {
        None => Ok(()),
        Some(f) => Err(c.morphisms().atom(f).clone()),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FunctorData {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    omap: Vec<usize>,
    mmap: Vec<usize>,
}

impl fmt::Debug for FunctorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor(objects {:?}, morphisms {:?})", self.omap, self.mmap)
    }
}

impl FunctorData {
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        omap: Vec<usize>,
        mmap: Vec<usize>,
    ) -> Result<Self> {
        if omap.len() != dom.num_objects() || mmap.len() != dom.num_morphisms() {
            return Err(Error::FunctorLaw("object or morphism map is not total".into()));
        }
        if omap.iter().any(|&x| x >= cod.num_objects()) || mmap.iter().any(|&f| f >= cod.num_morphisms()) {
            return Err(Error::FunctorLaw("value outside codomain".into()));
        }
        let fun = FunctorData { dom, cod, omap, mmap };
        if let Some(w) = fun.violation() {
            return Err(Error::FunctorLaw(w));
        }
        Ok(fun)
    }

    fn violation(&self) -> Option<String> {
        let (d, c) = (&self.dom, &self.cod);
        for f in 0..d.num_morphisms() {
            let ff = self.mmap[f];
            if c.src(ff) != self.omap[d.src(f)] || c.tgt(ff) != self.omap[d.tgt(f)] {
                return Some(format!("boundary of {}", d.morphisms().atom(f)));
            }
        }
        for x in 0..d.num_objects() {
            if self.mmap[d.identity(x)] != c.identity(self.omap[x]) {
                return Some(format!("identity at {}", d.objects().atom(x)));
            }
        }
        for (g, f) in d.composable_pairs() {
            let gf = d.compose(g, f).expect("composable");
            if c.compose(self.mmap[g], self.mmap[f]) != Some(self.mmap[gf]) {
                return Some(format!(
                    "composite {}∘{}",
                    d.morphisms().atom(g),
                    d.morphisms().atom(f)
                ));
            }
        }
        None
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FunctorData {
            dom: c.clone(),
            cod: c.clone(),
            omap: (0..c.num_objects()).collect(),
            mmap: (0..c.num_morphisms()).collect(),
        }
    }

    /// The functor from the terminal category picking out `x`.
    pub fn point(terminal: &Arc<FinCategory>, c: &Arc<FinCategory>, x: usize) -> Self {
        FunctorData {
            dom: terminal.clone(),
            cod: c.clone(),
            omap: vec![x],
            mmap: vec![c.identity(x)],
        }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.omap[x]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.mmap[f]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FunctorData) -> Result<FunctorData> {
        if *first.cod != *self.dom {
            return Err(Error::FunctorLaw("composing functors with mismatched categories".into()));
        }
        Ok(FunctorData {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            omap: first.omap.iter().map(|&x| self.omap[x]).collect(),
            mmap: first.mmap.iter().map(|&f| self.mmap[f]).collect(),
        })
    }

    pub fn product(&self, other: &FunctorData) -> FunctorData {
        let ko = other.cod.num_objects();
        let km = other.cod.num_morphisms();
        FunctorData {
            dom: Arc::new(self.dom.product(&other.dom)),
            cod: Arc::new(self.cod.product(&other.cod)),
            omap: self
                .omap
                .iter()
                .flat_map(|&a| other.omap.iter().map(move |&b| a * ko + b))
                .collect(),
            mmap: self
                .mmap
                .iter()
                .flat_map(|&a| other.mmap.iter().map(move |&b| a * km + b))
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NatTransData {
    from: FunctorData,
    to: FunctorData,
    components: Vec<usize>,
}

impl NatTransData {
    pub fn new(from: FunctorData, to: FunctorData, components: Vec<usize>) -> Result<Self> {
        if *from.dom != *to.dom || *from.cod != *to.cod {
            return Err(Error::Naturality("functors are not parallel".into()));
        }
        let (d, c) = (from.dom.clone(), from.cod.clone());
        if components.len() != d.num_objects() {
            return Err(Error::Naturality("component family is not total".into()));
        }
        for x in 0..d.num_objects() {
            let a = components[x];
            if a >= c.num_morphisms() || c.src(a) != from.omap[x] || c.tgt(a) != to.omap[x] {
                return Err(Error::Naturality(format!(
                    "component at {} has the wrong boundary",
                    d.objects().atom(x)
                )));
            }
        }
        for f in 0..d.num_morphisms() {
            let lhs = c.compose(to.mmap[f], components[d.src(f)]);
            let rhs = c.compose(components[d.tgt(f)], from.mmap[f]);
            if lhs != rhs {
                return Err(Error::Naturality(format!(
                    "square at {} does not commute",
                    d.morphisms().atom(f)
                )));
            }
        }
        Ok(NatTransData { from, to, components })
    }

    pub fn identity(f: &FunctorData) -> Self {
        let c = &f.cod;
        NatTransData {
            from: f.clone(),
            to: f.clone(),
            components: f.omap.iter().map(|&x| c.identity(x)).collect(),
        }
    }

    pub fn from(&self) -> &FunctorData {
        &self.from
    }

    pub fn to(&self) -> &FunctorData {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    /// Vertical composite `self ∗ first`.
    pub fn vcomp(&self, first: &NatTransData) -> Result<NatTransData> {
        if first.to != self.from {
            return Err(Error::Naturality("vertical composite of non-matching transformations".into()));
        }
        let c = &self.from.cod;
        let components = (0..self.components.len())
            .map(|x| c.compose(self.components[x], first.components[x]).expect("composable"))
            .collect();
        Ok(NatTransData {
            from: first.from.clone(),
            to: self.to.clone(),
            components,
        })
    }

    /// Horizontal composite `self ∘ first` for `first: F ⇒ F'` on `C -> D`
    /// and `self: G ⇒ G'` on `D -> E`: component `G'(α_x) ∘ β_{F x}`.
    pub fn hcomp(&self, first: &NatTransData) -> Result<NatTransData> {
        let from = self.from.after(&first.from)?;
        let to = self.to.after(&first.to)?;
        let e = &self.from.cod;
        let components = (0..first.components.len())
            .map(|x| {
                let beta = self.components[first.from.omap[x]];
                let galpha = self.to.mmap[first.components[x]];
                e.compose(galpha, beta).expect("composable")
            })
            .collect();
        Ok(NatTransData { from, to, components })
    }

    pub fn product(&self, other: &NatTransData) -> NatTransData {
        let km = other.from.cod.num_morphisms();
        NatTransData {
            from: self.from.product(&other.from),
            to: self.to.product(&other.to),
            components: self
                .components
                .iter()
                .flat_map(|&a| other.components.iter().map(move |&b| a * km + b))
                .collect(),
        }
    }
}

/// Whether every component is invertible; otherwise the first bad object.
pub fn nat_is_iso(n: &NatTransData) -> std::result::Result<(), Atom> {
    let c = &n.from.cod;
    match (0..n.components.len()).find(|&x| c.inverse_of(n.components[x]).is_none()) {
        None => Ok(()),
        Some(x) => Err(n.from.dom.objects().atom(x).clone()),
    }
}

/// Uniform interface over finite and lazily evaluated categories.
pub trait Category {
    type Obj: Clone + PartialEq + fmt::Debug;
    type Mor: Clone + PartialEq + fmt::Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn id(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`, if composable.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;
    /// Objects on which laws are checked: all of them for finite categories.
    fn probe_objects(&self) -> Vec<Self::Obj>;
    fn probe_morphisms(&self) -> Vec<Self::Mor>;
    /// True when the probes exhaust the category.
    fn is_exhaustive(&self) -> bool;
}

pub trait MonoidalCategory: Category {
    fn unit(&self) -> Self::Obj;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
}

impl Category for FinCategory {
    type Obj = usize;
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        self.src(*f)
    }
    fn cod(&self, f: &usize) -> usize {
        self.tgt(*f)
    }
    fn id(&self, x: &usize) -> usize {
        self.identity(*x)
    }
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        FinCategory::compose(self, *g, *f)
    }
    fn inverse(&self, f: &usize) -> Option<usize> {
        self.inverse_of(*f)
    }
    fn probe_objects(&self) -> Vec<usize> {
        (0..self.num_objects()).collect()
    }
    fn probe_morphisms(&self) -> Vec<usize> {
        (0..self.num_morphisms()).collect()
    }
    fn is_exhaustive(&self) -> bool {
        true
    }
}

/// A finite category with a strict monoidal structure given by tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinMonoidalCategory {
    cat: Arc<FinCategory>,
    unit: usize,
    tensor_obj: Vec<usize>,
    tensor_mor: Vec<usize>,
}

impl FinMonoidalCategory {
    pub fn new(cat: Arc<FinCategory>, unit: usize, tensor_obj: Vec<usize>, tensor_mor: Vec<usize>) -> Result<Self> {
        let (k, n) = (cat.num_objects(), cat.num_morphisms());
        if tensor_obj.len() != k * k || tensor_mor.len() != n * n || unit >= k {
            return Err(Error::Invalid("monoidal tables have the wrong size".into()));
        }
        let m = FinMonoidalCategory {
            cat,
            unit,
            tensor_obj,
            tensor_mor,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.cat;
        let (k, n) = (c.num_objects(), c.num_morphisms());
        let bad = |s: String| Err(Error::Invalid(format!("monoidal structure: {s}")));
        for f in 0..n {
            for g in 0..n {
                let fg = self.tensor_mor[f * n + g];
                if c.src(fg) != self.tensor_obj[c.src(f) * k + c.src(g)]
                    || c.tgt(fg) != self.tensor_obj[c.tgt(f) * k + c.tgt(g)]
                {
                    return bad(format!("boundary of tensor at ({f},{g})"));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if self.tensor_mor[c.identity(a) * n + c.identity(b)] != c.identity(self.tensor_obj[a * k + b]) {
                    return bad(format!("tensor of identities at ({a},{b})"));
                }
            }
            if self.tensor_obj[self.unit * k + a] != a || self.tensor_obj[a * k + self.unit] != a {
                return bad("unit is not strict".into());
            }
            for b in 0..k {
                for d in 0..k {
                    let l = self.tensor_obj[self.tensor_obj[a * k + b] * k + d];
                    let r = self.tensor_obj[a * k + self.tensor_obj[b * k + d]];
                    if l != r {
                        return bad("tensor is not strictly associative".into());
                    }
                }
            }
        }
        for (g1, f1) in c.composable_pairs() {
            for (g2, f2) in c.composable_pairs() {
                let lhs = self.tensor_mor[c.compose(g1, f1).unwrap() * n + c.compose(g2, f2).unwrap()];
                let rhs = c.compose(self.tensor_mor[g1 * n + g2], self.tensor_mor[f1 * n + f2]);
                if rhs != Some(lhs) {
                    return bad("tensor is not functorial".into());
                }
            }
        }
        Ok(())
    }

    /// The discrete category on a monoid's elements, tensored by `mul`.
    pub fn discrete_monoid(elements: &FinSet, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cat = Arc::new(FinCategory::discrete(elements));
        let k = elements.len();
        let tensor: Vec<usize> = (0..k * k).map(|i| mul(i / k, i % k)).collect();
        Self::new(cat, unit, tensor.clone(), tensor)
    }

    /// The terminal category with its unique monoidal structure.
    pub fn terminal() -> Self {
        Self::new(Arc::new(FinCategory::terminal()), 0, vec![0], vec![0]).expect("terminal")
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }
}

impl Category for FinMonoidalCategory {
    type Obj = usize;
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        self.cat.src(*f)
    }
    fn cod(&self, f: &usize) -> usize {
        self.cat.tgt(*f)
    }
    fn id(&self, x: &usize) -> usize {
        self.cat.identity(*x)
    }
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        self.cat.compose(*g, *f)
    }
    fn inverse(&self, f: &usize) -> Option<usize> {
        self.cat.inverse_of(*f)
    }
    fn probe_objects(&self) -> Vec<usize> {
        self.cat.probe_objects()
    }
    fn probe_morphisms(&self) -> Vec<usize> {
        self.cat.probe_morphisms()
    }
    fn is_exhaustive(&self) -> bool {
        true
    }
}

impl MonoidalCategory for FinMonoidalCategory {
    fn unit(&self) -> usize {
        self.unit
    }
    fn tensor(&self, a: &usize, b: &usize) -> usize {
        self.tensor_obj[a * self.cat.num_objects() + b]
    }
    fn tensor_mor(&self, f: &usize, g: &usize) -> usize {
        self.tensor_mor[f * self.cat.num_morphisms() + g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent_monoid_table(broken: bool) -> CategoryTable {
        // {1, z | z·z = z}
        let mut composition = vec![Some(0), Some(1), Some(1), Some(1)];
        if broken {
            composition[3] = None;
        }
        CategoryTable {
            objects: FinSet::singleton(),
            morphisms: FinSet::from_names(&["1", "z"]).unwrap(),
            src: vec![0, 0],
            tgt: vec![0, 0],
            identities: vec![0],
            composition,
        }
    }

    #[test]
    fn idempotent_monoid_is_a_category_but_not_a_groupoid() {
        assert!(check_category(&idempotent_monoid_table(false)).passed());
        let c = FinCategory::new(idempotent_monoid_table(false)).unwrap();
        assert_eq!(is_groupoid(&c), Err(Atom::name("z")));
    }

    #[test]
    fn missing_composite_is_reported() {
        let r = check_category(&idempotent_monoid_table(true));
        assert_eq!(
            r.violations,
            vec![CategoryViolation::MissingComposite {
                g: Atom::name("z"),
                f: Atom::name("z")
            }]
        );
    }

    #[test]
    fn indiscrete_on_two_objects() {
        let c = FinCategory::indiscrete(&FinSet::from_names(&["x", "y"]).unwrap());
        assert_eq!(c.num_morphisms(), 4);
        assert!(check_category(c.table()).passed());
        assert!(is_groupoid(&c).is_ok());
        let z2 = FinCategory::cyclic_group(2);
        assert!(is_groupoid(&z2).is_ok());
    }

    #[test]
    fn translation_transformation_is_iso() {
        let g = Arc::new(FinCategory::cyclic_group(3));
        let id = FunctorData::identity(&g);
        // component g1 is natural since the group is abelian
        let n = NatTransData::new(id.clone(), id.clone(), vec![1]).unwrap();
        assert!(nat_is_iso(&n).is_ok());
        assert!(nat_is_iso(&NatTransData::identity(&id)).is_ok());
    }

    #[test]
    fn non_invertible_component() {
        let m = Arc::new(FinCategory::new(idempotent_monoid_table(false)).unwrap());
        let id = FunctorData::identity(&m);
        let n = NatTransData::new(id.clone(), id, vec![1]).unwrap();
        assert_eq!(nat_is_iso(&n), Err(Atom::unit()));
    }

    #[test]
    fn functor_law_violation_is_rejected() {
        let g = Arc::new(FinCategory::cyclic_group(2));
        assert!(matches!(
            FunctorData::new(g.clone(), g.clone(), vec![0], vec![1, 1]),
            Err(Error::FunctorLaw(_))
        ));
    }

    #[test]
    fn discrete_group_monoidal() {
        let els = FinSet::from_names(&["e", "z"]).unwrap();
        let m = FinMonoidalCategory::discrete_monoid(&els, 0, |a, b| a ^ b).unwrap();
        assert_eq!(m.tensor(&1, &1), 0);
    }
}
