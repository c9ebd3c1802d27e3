//! Polyads: monads in Span|Cat. A shape `D`, a monoidal category `C_x` per
//! object, functors `d(f): C_{s(f)} → C_{t(f)}` and transformations
//! `μ_{f,g}: d(f)∘d(g) ⇒ d(f·g)`, `η_x: 1 ⇒ d(e_x)`.

pub mod modules;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cat::lazy::{LazyCategory, LazyFunctor, LazyNat, Value, VectPseudofunctor};
use crate::cat::{is_groupoid, Category, FinCategory, FinMonoidalCategory, FunctorData, MonoidalCategory, NatTransData};
use crate::error::{Error, Result};
use crate::finset::{pullback, pullback_index, FinSet, Span};
use crate::hopf::{check_monad_cells, LawReport, VectMonad};
use crate::spanv::{Backend, CatBackend, Cell0, Cell1, Cell2, LazyCatBackend, SpanF, SpanV, VLazyCat};
use crate::vect::{braiding, invert, tensor_mor_all, VMorphism, VObject};

/// A backend whose 0-cells are categories that can carry a monoidal
/// structure, with functors and transformations evaluable at objects.
pub trait PolyadBackend: Backend {
    type Mon: Clone + fmt::Debug;
    type Ob: Clone + PartialEq + fmt::Debug;
    type Hom: Clone + PartialEq + fmt::Debug;

    fn underlying(m: &Self::Mon) -> Self::Obj;
    /// Objects to check at, and whether they are all of them.
    fn probes(m: &Self::Mon) -> (Vec<Self::Ob>, bool);
    fn tensor(m: &Self::Mon, a: &Self::Ob, b: &Self::Ob) -> Self::Ob;
    fn unit(m: &Self::Mon) -> Self::Ob;
    fn id(m: &Self::Mon, a: &Self::Ob) -> Self::Hom;
    fn tensor_hom(m: &Self::Mon, f: &Self::Hom, g: &Self::Hom) -> Self::Hom;
    fn compose(m: &Self::Mon, g: &Self::Hom, f: &Self::Hom) -> Option<Self::Hom>;
    fn is_iso(m: &Self::Mon, f: &Self::Hom) -> bool;
    fn on_obj(f: &Self::Mor1, a: &Self::Ob) -> Self::Ob;
    fn on_hom(f: &Self::Mor1, h: &Self::Hom) -> Self::Hom;
    fn component(n: &Self::Mor2, a: &Self::Ob) -> Self::Hom;
}

impl PolyadBackend for CatBackend {
    type Mon = FinMonoidalCategory;
    type Ob = usize;
    type Hom = usize;

    fn underlying(m: &FinMonoidalCategory) -> Arc<FinCategory> {
        m.category().clone()
    }
    fn probes(m: &FinMonoidalCategory) -> (Vec<usize>, bool) {
        (m.probe_objects(), true)
    }
    fn tensor(m: &FinMonoidalCategory, a: &usize, b: &usize) -> usize {
        MonoidalCategory::tensor(m, a, b)
    }
    fn unit(m: &FinMonoidalCategory) -> usize {
        MonoidalCategory::unit(m)
    }
    fn id(m: &FinMonoidalCategory, a: &usize) -> usize {
        Category::id(m, a)
    }
    fn tensor_hom(m: &FinMonoidalCategory, f: &usize, g: &usize) -> usize {
        m.tensor_mor(f, g)
    }
    fn compose(m: &FinMonoidalCategory, g: &usize, f: &usize) -> Option<usize> {
        Category::compose(m, g, f)
    }
    fn is_iso(m: &FinMonoidalCategory, f: &usize) -> bool {
        Category::inverse(m, f).is_some()
    }
    fn on_obj(f: &FunctorData, a: &usize) -> usize {
        f.on_object(*a)
    }
    fn on_hom(f: &FunctorData, h: &usize) -> usize {
        f.on_morphism(*h)
    }
    fn component(n: &NatTransData, a: &usize) -> usize {
        n.component(*a)
    }
}

impl<O: Value, M: Value> PolyadBackend for LazyCatBackend<O, M> {
    type Mon = Arc<LazyCategory<O, M>>;
    type Ob = O;
    type Hom = M;

    fn underlying(m: &Self::Mon) -> Self::Obj {
        m.clone()
    }
    fn probes(m: &Self::Mon) -> (Vec<O>, bool) {
        (m.probe_objects(), m.is_exhaustive())
    }
    fn tensor(m: &Self::Mon, a: &O, b: &O) -> O {
        MonoidalCategory::tensor(&**m, a, b)
    }
    fn unit(m: &Self::Mon) -> O {
        MonoidalCategory::unit(&**m)
    }
    fn id(m: &Self::Mon, a: &O) -> M {
        Category::id(&**m, a)
    }
    fn tensor_hom(m: &Self::Mon, f: &M, g: &M) -> M {
        MonoidalCategory::tensor_mor(&**m, f, g)
    }
    fn compose(m: &Self::Mon, g: &M, f: &M) -> Option<M> {
        Category::compose(&**m, g, f)
    }
    fn is_iso(m: &Self::Mon, f: &M) -> bool {
        Category::inverse(&**m, f).is_some()
    }
    fn on_obj(f: &LazyFunctor<O, M>, a: &O) -> O {
        f.on_object(a)
    }
    fn on_hom(f: &LazyFunctor<O, M>, h: &M) -> M {
        f.on_morphism(h)
    }
    fn component(n: &LazyNat<O, M>, a: &O) -> M {
        n.component(a)
    }
}

type BinaryCell<B> = Arc<dyn Fn(usize, &<B as PolyadBackend>::Ob, &<B as PolyadBackend>::Ob) -> <B as PolyadBackend>::Hom + Send + Sync>;

/// Opmonoidal structure of every `d(f)`:
/// `d²_f(A,B): d(f)(A⊗B) → d(f)A ⊗ d(f)B` and `d⁰_f: d(f)I → I`.
#[derive(Clone)]
pub struct PolyadOpmonoidal<B: PolyadBackend> {
    pub d2: BinaryCell<B>,
    pub d0: Arc<dyn Fn(usize) -> B::Hom + Send + Sync>,
}

impl<B: PolyadBackend> fmt::Debug for PolyadOpmonoidal<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyadOpmonoidal")
    }
}

#[derive(Clone, Debug)]
pub struct Polyad<B: PolyadBackend> {
    pub sv: SpanV<B>,
    pub shape: Arc<FinCategory>,
    pub mons: Vec<B::Mon>,
    pub x: Cell0<B>,
    pub t: Cell1<B>,
    pub mu: Cell2<B>,
    pub eta: Cell2<B>,
    pub opmonoidal: Option<PolyadOpmonoidal<B>>,
    /// Index of `(f, g)` in the apex of `t∘t`.
    pairs: BTreeMap<(usize, usize), usize>,
}

fn shape_span(shape: &FinCategory) -> Result<Span> {
    Span::from_indices(
        shape.objects(),
        shape.objects(),
        shape.morphisms(),
        (0..shape.num_morphisms()).map(|h| shape.tgt(h)).collect(),
        (0..shape.num_morphisms()).map(|h| shape.src(h)).collect(),
    )
}

impl<B: PolyadBackend> Polyad<B> {
    /// Assembles a polyad from its monad cells; `t` must live on the shape's
    /// span.
    pub fn from_cells(
        sv: SpanV<B>,
        shape: Arc<FinCategory>,
        mons: Vec<B::Mon>,
        t: Cell1<B>,
        mu: Cell2<B>,
        eta: Cell2<B>,
    ) -> Result<Self> {
        if t.span() != &shape_span(&shape)? {
            return Err(Error::Invalid("the 1-cell does not live on the shape".into()));
        }
        if mons.len() != shape.num_objects() {
            return Err(Error::Dimension("one monoidal category per object".into()));
        }
        let pb = pullback(t.span(), t.span())?;
        let pairs = pullback_index(&pb).into_iter().collect();
        Ok(Polyad {
            sv,
            shape,
            mons,
            x: t.src().clone(),
            t,
            mu,
            eta,
            opmonoidal: None,
            pairs,
        })
    }

    pub fn with_opmonoidal(mut self, o: PolyadOpmonoidal<B>) -> Self {
        self.opmonoidal = Some(o);
        self
    }

    pub fn d(&self, f: usize) -> &B::Mor1 {
        self.t.label(f)
    }

    /// `μ_{f,g}`.
    pub fn mu_at(&self, f: usize, g: usize) -> Option<&B::Mor2> {
        self.pairs.get(&(f, g)).map(|&i| self.mu.component(i))
    }

    pub fn eta_at(&self, x: usize) -> &B::Mor2 {
        self.eta.component(x)
    }
}

impl Polyad<CatBackend> {
    /// A polyad over finite monoidal categories.
    pub fn finite(
        shape: Arc<FinCategory>,
        mons: Vec<FinMonoidalCategory>,
        d: Vec<FunctorData>,
        mu: impl Fn(usize, usize) -> NatTransData,
        eta: impl Fn(usize) -> NatTransData,
    ) -> Result<Self> {
        let sv = SpanV::new(CatBackend);
        let x = Cell0::new(shape.objects().clone(), mons.iter().map(CatBackend::underlying).collect())?;
        let t = sv.cell1(&x, &x, shape_span(&shape)?, d)?;
        let tt = sv.hcomp1(&t, &t)?;
        let pb = pullback(t.span(), t.span())?;
        let mut map = Vec::new();
        let mut comps = Vec::new();
        for (&f, &g) in pb.outer.iter().zip(&pb.inner) {
            map.push(shape.compose(f, g).expect("composable"));
            comps.push(mu(f, g));
        }
        let mu = sv.cell2(&tt, &t, map, comps)?;
        let id = sv.id1(&x);
        let eta = sv.cell2(
            &id,
            &t,
            (0..shape.num_objects()).map(|o| shape.identity(o)).collect(),
            (0..shape.num_objects()).map(eta).collect(),
        )?;
        Self::from_cells(sv, shape, mons, t, mu, eta)
    }
}

/// Associativity and unitality of the polyad, exactly on finite targets and
/// on probes for lazy ones.
pub fn check_polyad<B: PolyadBackend>(p: &Polyad<B>) -> Result<LawReport> {
    check_monad_cells(&p.sv, &p.t, &p.mu, &p.eta)
}

/// Every `d(f)` is an opmonoidal functor and `μ`, `η` are opmonoidal
/// transformations, on all triples of probe objects.
pub fn check_polyad_opmonoidal<B: PolyadBackend>(p: &Polyad<B>) -> Result<LawReport> {
    let o = p
        .opmonoidal
        .as_ref()
        .ok_or_else(|| Error::Invalid("no opmonoidal structure".into()))?;
    let mut r = LawReport::default();
    let compose = |m: &B::Mon, hs: &[B::Hom]| -> Result<B::Hom> {
        let mut acc = hs[0].clone();
        for h in &hs[1..] {
            acc = B::compose(m, h, &acc).ok_or_else(|| Error::Invalid("morphisms do not compose".into()))?;
        }
        Ok(acc)
    };
    let d = &p.shape;
    let mut coassoc = None;
    let mut counit = None;
    for f in 0..d.num_morphisms() {
        let (c, m) = (&p.mons[d.src(f)], &p.mons[d.tgt(f)]);
        let name = d.morphisms().atom(f);
        let (probes, _) = B::probes(c);
        for a in &probes {
            for b in &probes {
                let (fa, fb) = (B::on_obj(p.d(f), a), B::on_obj(p.d(f), b));
                let unit = B::unit(c);
                if *a == unit {
                    let left = compose(m, &[(o.d2)(f, a, b), B::tensor_hom(m, &(o.d0)(f), &B::id(m, &fb))])?;
                    if left != B::id(m, &fb) {
                        counit.get_or_insert(format!("at {name} on ({a:?}, {b:?})"));
                    }
                }
                if *b == unit {
                    let right = compose(m, &[(o.d2)(f, a, b), B::tensor_hom(m, &B::id(m, &fa), &(o.d0)(f))])?;
                    if right != B::id(m, &fa) {
                        counit.get_or_insert(format!("at {name} on ({a:?}, {b:?})"));
                    }
                }
                for e in &probes {
                    let fe = B::on_obj(p.d(f), e);
                    let lhs = compose(m, &[(o.d2)(f, &B::tensor(c, a, b), e), B::tensor_hom(m, &(o.d2)(f, a, b), &B::id(m, &fe))])?;
                    let rhs = compose(m, &[(o.d2)(f, a, &B::tensor(c, b, e)), B::tensor_hom(m, &B::id(m, &fa), &(o.d2)(f, b, e))])?;
                    if lhs != rhs {
                        coassoc.get_or_insert(format!("at {name} on ({a:?}, {b:?}, {e:?})"));
                    }
                }
            }
        }
    }
    if !r.run("d² coassociativity", coassoc) || !r.run("d⁰ counit", counit) {
        return Ok(r);
    }
    let mut mu_fail = None;
    for (f, g) in d.composable_pairs() {
        let (c, m) = (&p.mons[d.src(g)], &p.mons[d.tgt(f)]);
        let mu = p.mu_at(f, g).expect("composable");
        let fg = d.compose(f, g).expect("composable");
        let (probes, _) = B::probes(c);
        for a in &probes {
            for b in &probes {
                let ab = B::tensor(c, a, b);
                let lhs = compose(m, &[B::component(mu, &ab), (o.d2)(fg, a, b)])?;
                let (ga, gb) = (B::on_obj(p.d(g), a), B::on_obj(p.d(g), b));
                let rhs = compose(
                    m,
                    &[
                        B::on_hom(p.d(f), &(o.d2)(g, a, b)),
                        (o.d2)(f, &ga, &gb),
                        B::tensor_hom(m, &B::component(mu, a), &B::component(mu, b)),
                    ],
                )?;
                if lhs != rhs && mu_fail.is_none() {
                    mu_fail = Some(format!("μ at ({}, {}) on ({a:?}, {b:?})", d.morphisms().atom(f), d.morphisms().atom(g)));
                }
            }
        }
        let unit = B::unit(c);
        let lhs = compose(m, &[B::component(mu, &unit), (o.d0)(fg)])?;
        let rhs = compose(m, &[B::on_hom(p.d(f), &(o.d0)(g)), (o.d0)(f)])?;
        if lhs != rhs && mu_fail.is_none() {
            mu_fail = Some(format!("μ at ({}, {}) on the unit", d.morphisms().atom(f), d.morphisms().atom(g)));
        }
    }
    if !r.run("μ opmonoidal", mu_fail) {
        return Ok(r);
    }
    let mut eta_fail = None;
    for x in 0..d.num_objects() {
        let (m, e) = (&p.mons[x], d.identity(x));
        let eta = p.eta_at(x);
        let (probes, _) = B::probes(m);
        for a in &probes {
            for b in &probes {
                let lhs = compose(m, &[B::component(eta, &B::tensor(m, a, b)), (o.d2)(e, a, b)])?;
                if lhs != B::tensor_hom(m, &B::component(eta, a), &B::component(eta, b)) && eta_fail.is_none() {
                    eta_fail = Some(format!("η at {} on ({a:?}, {b:?})", d.objects().atom(x)));
                }
            }
        }
        let u = B::unit(m);
        if compose(m, &[B::component(eta, &u), (o.d0)(e)])? != B::id(m, &u) && eta_fail.is_none() {
            eta_fail = Some(format!("η at {} on the unit", d.objects().atom(x)));
        }
    }
    r.run("η opmonoidal", eta_fail);
    Ok(r)
}

/// One fusion component: `(μ_{f,g,A} ⊗ 1_{d(f)B}) ∘ d²_f(d(g)A, B)`.
#[derive(Clone, Debug)]
pub struct FusionEntry<B: PolyadBackend> {
    pub f: usize,
    pub g: usize,
    pub a: B::Ob,
    pub b: B::Ob,
    pub hom: B::Hom,
}

/// All fusion components over composable pairs `(f, g)` and probe objects
/// `A ∈ C_{s(g)}`, `B ∈ C_{s(f)}`.
pub fn polyad_fusion<B: PolyadBackend>(p: &Polyad<B>) -> Result<Vec<FusionEntry<B>>> {
    let o = p
        .opmonoidal
        .as_ref()
        .ok_or_else(|| Error::Invalid("no opmonoidal structure".into()))?;
    let mut out = Vec::new();
    for (f, g) in p.shape.composable_pairs() {
        let m = &p.mons[p.shape.tgt(f)];
        let mu = p.mu_at(f, g).expect("composable");
        let (as_, _) = B::probes(&p.mons[p.shape.src(g)]);
        let (bs, _) = B::probes(&p.mons[p.shape.src(f)]);
        for a in &as_ {
            for b in &bs {
                let dga = B::on_obj(p.d(g), a);
                let split = (o.d2)(f, &dga, b);
                let right = B::tensor_hom(m, &B::component(mu, a), &B::id(m, &B::on_obj(p.d(f), b)));
                let hom = B::compose(m, &right, &split).ok_or_else(|| {
                    Error::Invalid(format!("fusion at ({f},{g}) does not compose"))
                })?;
                out.push(FusionEntry {
                    f,
                    g,
                    a: a.clone(),
                    b: b.clone(),
                    hom,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyadVerdict {
    /// A morphism of the shape without inverse.
    pub not_groupoid: Option<String>,
    /// A fusion component that is not invertible.
    pub singular: Option<String>,
    pub components_checked: usize,
    /// Whether the probes exhaust every target category.
    pub exhaustive: bool,
}

impl PolyadVerdict {
    pub fn is_hopf(&self) -> bool {
        self.not_groupoid.is_none() && self.singular.is_none()
    }
}

/// Hopf iff the shape is a groupoid and every fusion component is invertible.
pub fn polyad_is_hopf<B: PolyadBackend>(p: &Polyad<B>) -> Result<PolyadVerdict> {
    let not_groupoid = is_groupoid(&p.shape).err().map(|a| a.to_string());
    let entries = polyad_fusion(p)?;
    let singular = entries
        .iter()
        .find(|e| !B::is_iso(&p.mons[p.shape.tgt(e.f)], &e.hom))
        .map(|e| {
            format!(
                "fusion at ({}, {}) on ({:?}, {:?})",
                p.shape.morphisms().atom(e.f),
                p.shape.morphisms().atom(e.g),
                e.a,
                e.b
            )
        });
    Ok(PolyadVerdict {
        not_groupoid,
        singular,
        components_checked: entries.len(),
        exhaustive: p.mons.iter().all(|m| B::probes(m).1),
    })
}

pub type VectPolyad = Polyad<VLazyCat>;

/// The image of a vect presentation under the pseudofunctor `p ↦ p⊗(−)`.
/// Labels, `μ` and `η` are pushed through the functor and corrected by its
/// comparison cells; `d²_h(A,B) = (1⊗c⁻¹_{A,F(h)}⊗1)∘(δ_h⊗1⊗1)` and
/// `d⁰_h = ε_h`.
pub fn vect_image(monad: &VectMonad, probes: &[VObject]) -> Result<VectPolyad> {
    if probes.is_empty() {
        return Err(Error::Invalid("at least one probe object is needed".into()));
    }
    let (cat, pf) = crate::cat::lazy::vect_as_lazy_category(&monad.q, probes)?;
    let vsv = monad.spanv();
    let cells = monad.cells(&vsv)?;
    let f = SpanF::new(&pf);
    let sv = SpanV::new(VLazyCat::new());
    let t = f.cell1(&cells.t)?;
    let mu = sv.vcomp2(&f.cell2(&cells.mu)?, &f.comp_comparison(&vsv, &cells.t, &cells.t)?)?;
    let eta = sv.vcomp2(&f.cell2(&cells.eta)?, &f.unit_comparison(&vsv, &cells.x)?)?;
    let mons = vec![cat; monad.shape.num_objects()];
    let p = Polyad::from_cells(sv, monad.shape.clone(), mons, t, mu, eta)?;
    match &monad.comonoid {
        Some(c) => Ok(p.with_opmonoidal(vect_opmonoidal(&pf, monad, c))),
        None => Ok(p),
    }
}

fn vect_opmonoidal(pf: &VectPseudofunctor, monad: &VectMonad, c: &crate::hopf::Comonoid) -> PolyadOpmonoidal<VLazyCat> {
    let labels = monad.labels.clone();
    let delta = c.delta.clone();
    let eps = c.eps.clone();
    let pf2 = pf.clone();
    let d2 = move |h: usize, a: &VObject, b: &VObject| {
        let fh = &labels[h];
        let c = invert(&braiding(a, fh, pf2.braid())).expect("braiding is invertible");
        let split = tensor_mor_all([&delta[h], &VMorphism::identity(a), &VMorphism::identity(b)]);
        let swap = tensor_mor_all([&VMorphism::identity(fh), &c, &VMorphism::identity(b)]);
        swap.after(&split).expect("composable")
    };
    PolyadOpmonoidal {
        d2: Arc::new(d2),
        d0: Arc::new(move |h| eps[h].clone()),
    }
}

/// The discrete monoidal category on `Z₂`, with every `d(f)` the identity
/// and strict structure cells.
pub fn discrete_z2_polyad(shape: Arc<FinCategory>) -> Result<Polyad<CatBackend>> {
    let z2 = FinSet::from_names(&["0", "1"])?;
    let c = FinMonoidalCategory::discrete_monoid(&z2, 0, |a, b| (a + b) % 2)?;
    let id = FunctorData::identity(c.category());
    let n = shape.num_morphisms();
    let p = Polyad::finite(
        shape,
        vec![c.clone(); 1],
        vec![id.clone(); n],
        |_, _| NatTransData::identity(&id),
        |_| NatTransData::identity(&id),
    )?;
    Ok(p.with_opmonoidal(PolyadOpmonoidal {
        d2: Arc::new(move |_, a, b| Category::id(&c, &MonoidalCategory::tensor(&c, a, b))),
        d0: Arc::new(|_| 0),
    }))
}

/// `Z₂` acting by translation `A ↦ g+A` on the indiscrete monoidal category
/// on `Z₂`; `d²` and `d⁰` are the unique morphisms `g+A+B → A+B`, `g → 0`.
pub fn translation_polyad() -> Result<Polyad<CatBackend>> {
    let shape = Arc::new(FinCategory::cyclic_group(2));
    let objs = FinSet::from_names(&["0", "1"])?;
    let cat = Arc::new(FinCategory::indiscrete(&objs));
    // morphism (x, y): y → x sits at x*2 + y
    let mor = |x: usize, y: usize| x * 2 + y;
    let tensor_obj: Vec<usize> = (0..4).map(|i| (i / 2 + i % 2) % 2).collect();
    let tensor_mor: Vec<usize> = (0..16)
        .map(|i| {
            let (f, g) = (i / 4, i % 4);
            mor((f / 2 + g / 2) % 2, (f % 2 + g % 2) % 2)
        })
        .collect();
    let c = FinMonoidalCategory::new(cat.clone(), 0, tensor_obj, tensor_mor)?;
    let shift = |g: usize| {
        FunctorData::new(
            cat.clone(),
            cat.clone(),
            (0..2).map(|a| (a + g) % 2).collect(),
            (0..4).map(|f| mor((f / 2 + g) % 2, (f % 2 + g) % 2)).collect(),
        )
    };
    let d = vec![shift(0)?, shift(1)?];
    let ids = |f: &FunctorData| NatTransData::identity(f);
    let p = Polyad::finite(shape, vec![c], d.clone(), |g, h| ids(&d[(g + h) % 2]), |_| ids(&d[0]))?;
    Ok(p.with_opmonoidal(PolyadOpmonoidal {
        d2: Arc::new(move |g, a, b| mor((a + b) % 2, (g + a + b) % 2)),
        d0: Arc::new(move |g| mor(0, g)),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{constant_group_algebra, group_hom_category, idempotent_monoid, trivial_group_monoid};
    use crate::vect::BraidParam;

    #[test]
    fn discrete_z2_is_hopf() {
        let p = discrete_z2_polyad(Arc::new(FinCategory::cyclic_group(2))).unwrap();
        assert!(check_polyad(&p).unwrap().passed());
        let v = polyad_is_hopf(&p).unwrap();
        assert!(v.is_hopf(), "{v:?}");
        assert_eq!(v.components_checked, 4 * 4);
    }

    #[test]
    fn non_group_shape_is_not_hopf() {
        let p = discrete_z2_polyad(idempotent_monoid()).unwrap();
        assert!(check_polyad(&p).unwrap().passed());
        let v = polyad_is_hopf(&p).unwrap();
        assert_eq!(v.not_groupoid.as_deref(), Some("z"));
        assert!(v.singular.is_none());
    }

    #[test]
    fn translation_is_hopf() {
        let p = translation_polyad().unwrap();
        assert!(check_polyad(&p).unwrap().passed());
        let r = check_polyad_opmonoidal(&p).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(polyad_is_hopf(&p).unwrap().is_hopf());
        // d(g) is not the identity
        assert_eq!(p.d(1).on_object(0), 1);
    }

    fn probes() -> Vec<VObject> {
        vec![
            VObject::unit(),
            VObject::graded(&[("a", 0), ("b", 1)]),
            VObject::graded(&[("c", 1), ("d", 1), ("e", 2)]),
        ]
    }

    #[test]
    fn image_of_z2_group_algebra() {
        for (q, graded) in [(1, false), (-1, false), (2, false), (2, true), (-1, true)] {
            let grade = move |g: usize| if graded { g as i64 } else { 0 };
            let m = constant_group_algebra(BraidParam::int(q), Arc::new(FinCategory::cyclic_group(2)), grade).unwrap();
            let p = vect_image(&m, &probes()).unwrap();
            assert!(check_polyad(&p).unwrap().passed());
            // grouplike δ does not preserve a nontrivial grading, so only
            // the ungraded images are opmonoidal
            let r = check_polyad_opmonoidal(&p).unwrap();
            assert_eq!(r.passed(), !graded || q == 1, "q = {q}, graded = {graded}: {r:?}");
            let v = polyad_is_hopf(&p).unwrap();
            assert!(v.is_hopf(), "{v:?}");
            assert!(!v.exhaustive);
            assert_eq!(v.components_checked, 4 * 9);
        }
    }

    #[test]
    fn image_of_hopf_category_and_non_group() {
        let m = group_hom_category(BraidParam::int(2), &FinSet::range(2), &FinCategory::cyclic_group(2)).unwrap();
        let p = vect_image(&m, &probes()).unwrap();
        assert!(check_polyad(&p).unwrap().passed());
        assert!(polyad_is_hopf(&p).unwrap().is_hopf());
        let t = trivial_group_monoid(BraidParam::one(), idempotent_monoid()).unwrap();
        let p = vect_image(&t, &probes()).unwrap();
        assert!(check_polyad(&p).unwrap().passed());
        let v = polyad_is_hopf(&p).unwrap();
        assert!(!v.is_hopf());
        assert!(vect_image(&t, &[]).is_err());
    }
}
