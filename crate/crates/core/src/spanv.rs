//! The bicategory Span|V over a pluggable base bicategory.
//!
//! A 0-cell is a finite set labeled by base 0-cells, a 1-cell is a span whose
//! apex is labeled by base 1-cells, and a 2-cell is a span map together with
//! one base 2-cell per apex element.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::cat::lazy::{LazyCategory, LazyFunctor, LazyNat, Value, VectPseudofunctor};
use crate::cat::{self, FinCategory, FunctorData, NatTransData};
use crate::error::{Error, Result};
use crate::finset::{
    self, cartesian_product, compose_span_morphisms_h, pullback, Atom, FinFn, FinSet, Span,
    SpanMorphism,
};
use crate::vect::{self, braiding, tensor_mor, tensor_obj, BraidParam, VMorphism, VObject};

/// A base bicategory.
pub trait Backend: Clone + fmt::Debug {
    type Obj: Clone + PartialEq + fmt::Debug;
    type Mor1: Clone + PartialEq + fmt::Debug;
    type Mor2: Clone + PartialEq + fmt::Debug;

    fn src1(&self, a: &Self::Mor1) -> Self::Obj;
    fn tgt1(&self, a: &Self::Mor1) -> Self::Obj;
    fn id1(&self, x: &Self::Obj) -> Self::Mor1;
    /// `b ∘ a`.
    fn comp1(&self, b: &Self::Mor1, a: &Self::Mor1) -> Result<Self::Mor1>;
    fn dom2(&self, f: &Self::Mor2) -> Self::Mor1;
    fn cod2(&self, f: &Self::Mor2) -> Self::Mor1;
    fn id2(&self, a: &Self::Mor1) -> Self::Mor2;
    /// `second ∗ first`.
    fn vcomp(&self, second: &Self::Mor2, first: &Self::Mor2) -> Result<Self::Mor2>;
    /// `g ∘ f`.
    fn hcomp(&self, g: &Self::Mor2, f: &Self::Mor2) -> Result<Self::Mor2>;
    fn invert2(&self, f: &Self::Mor2) -> std::result::Result<Self::Mor2, String>;
    /// `None` when equal, otherwise where the two 2-cells first differ.
    fn diff2(&self, u: &Self::Mor2, v: &Self::Mor2) -> Option<String>;
}

/// A base bicategory with a monoidal structure.
pub trait MonoidalBackend: Backend {
    fn unit0(&self) -> Self::Obj;
    fn tensor0(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn tensor1(&self, a: &Self::Mor1, b: &Self::Mor1) -> Self::Mor1;
    fn tensor2(&self, f: &Self::Mor2, g: &Self::Mor2) -> Self::Mor2;
    /// `(b⊗b')∘(a⊗a') ⇒ (b∘a)⊗(b'∘a')`.
    fn tensor_interchange(
        &self,
        b: &Self::Mor1,
        b2: &Self::Mor1,
        a: &Self::Mor1,
        a2: &Self::Mor1,
    ) -> Result<Self::Mor2>;
}

/// V as a one-object bicategory: 1-cells are objects of V, composed by ⊗.
#[derive(Clone, Debug, PartialEq)]
pub struct Vect {
    pub q: BraidParam,
}

impl Vect {
    pub fn new(q: BraidParam) -> Self {
        Vect { q }
    }

    pub fn braiding(&self, a: &VObject, b: &VObject) -> VMorphism {
        braiding(a, b, &self.q)
    }
}

impl Backend for Vect {
    type Obj = ();
    type Mor1 = VObject;
    type Mor2 = VMorphism;

    fn src1(&self, _: &VObject) {}
    fn tgt1(&self, _: &VObject) {}
    fn id1(&self, _: &()) -> VObject {
        VObject::unit()
    }
    fn comp1(&self, b: &VObject, a: &VObject) -> Result<VObject> {
        Ok(tensor_obj(b, a))
    }
    fn dom2(&self, f: &VMorphism) -> VObject {
        f.dom().clone()
    }
    fn cod2(&self, f: &VMorphism) -> VObject {
        f.cod().clone()
    }
    fn id2(&self, a: &VObject) -> VMorphism {
        VMorphism::identity(a)
    }
    fn vcomp(&self, second: &VMorphism, first: &VMorphism) -> Result<VMorphism> {
        second.after(first)
    }
    fn hcomp(&self, g: &VMorphism, f: &VMorphism) -> Result<VMorphism> {
        Ok(tensor_mor(g, f))
    }
    fn invert2(&self, f: &VMorphism) -> std::result::Result<VMorphism, String> {
        vect::invert(f).map_err(|w| w.to_string())
    }
    fn diff2(&self, u: &VMorphism, v: &VMorphism) -> Option<String> {
        if u.dom() != v.dom() || u.cod() != v.cod() {
            return Some(format!("boundaries {:?} -> {:?} and {:?} -> {:?}", u.dom(), u.cod(), v.dom(), v.cod()));
        }
        u.matrix().first_difference(v.matrix()).map(|(i, j)| {
            format!(
                "matrix entry ({i},{j}): {} vs {}",
                u.matrix().get(i, j),
                v.matrix().get(i, j)
            )
        })
    }
}

impl MonoidalBackend for Vect {
    fn unit0(&self) {}
    fn tensor0(&self, _: &(), _: &()) {}
    fn tensor1(&self, a: &VObject, b: &VObject) -> VObject {
        tensor_obj(a, b)
    }
    fn tensor2(&self, f: &VMorphism, g: &VMorphism) -> VMorphism {
        tensor_mor(f, g)
    }
    /// `1⊗c_{b',a}⊗1 : b⊗b'⊗a⊗a' → b⊗a⊗b'⊗a'`.
    fn tensor_interchange(&self, b: &VObject, b2: &VObject, a: &VObject, a2: &VObject) -> Result<VMorphism> {
        Ok(vect::tensor_mor_all([
            &VMorphism::identity(b),
            &self.braiding(b2, a),
            &VMorphism::identity(a2),
        ]))
    }
}

/// Finite categories, functors and natural transformations.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CatBackend;

impl Backend for CatBackend {
    type Obj = Arc<FinCategory>;
    type Mor1 = FunctorData;
    type Mor2 = NatTransData;

    fn src1(&self, a: &FunctorData) -> Arc<FinCategory> {
        a.dom().clone()
    }
    fn tgt1(&self, a: &FunctorData) -> Arc<FinCategory> {
        a.cod().clone()
    }
    fn id1(&self, x: &Arc<FinCategory>) -> FunctorData {
        FunctorData::identity(x)
    }
    fn comp1(&self, b: &FunctorData, a: &FunctorData) -> Result<FunctorData> {
        b.after(a)
    }
    fn dom2(&self, f: &NatTransData) -> FunctorData {
        f.from().clone()
    }
    fn cod2(&self, f: &NatTransData) -> FunctorData {
        f.to().clone()
    }
    fn id2(&self, a: &FunctorData) -> NatTransData {
        NatTransData::identity(a)
    }
    fn vcomp(&self, second: &NatTransData, first: &NatTransData) -> Result<NatTransData> {
        second.vcomp(first)
    }
    fn hcomp(&self, g: &NatTransData, f: &NatTransData) -> Result<NatTransData> {
        g.hcomp(f)
    }
    fn invert2(&self, f: &NatTransData) -> std::result::Result<NatTransData, String> {
        cat::nat_is_iso(f).map_err(|x| format!("component at {x} is not invertible"))?;
        let c = f.from().cod();
        let comps = f
            .components()
            .iter()
            .map(|&m| c.inverse_of(m).expect("invertible"))
            .collect();
        NatTransData::new(f.to().clone(), f.from().clone(), comps).map_err(|e| e.to_string())
    }
    fn diff2(&self, u: &NatTransData, v: &NatTransData) -> Option<String> {
        if u.from() != v.from() || u.to() != v.to() {
            return Some("transformations are not parallel".into());
        }
        let d = u.from().dom();
        (0..d.num_objects())
            .find(|&x| u.component(x) != v.component(x))
            .map(|x| format!("component at {}", d.objects().atom(x)))
    }
}

impl MonoidalBackend for CatBackend {
    fn unit0(&self) -> Arc<FinCategory> {
        Arc::new(FinCategory::terminal())
    }
    fn tensor0(&self, x: &Arc<FinCategory>, y: &Arc<FinCategory>) -> Arc<FinCategory> {
        Arc::new(x.product(y))
    }
    fn tensor1(&self, a: &FunctorData, b: &FunctorData) -> FunctorData {
        a.product(b)
    }
    fn tensor2(&self, f: &NatTransData, g: &NatTransData) -> NatTransData {
        f.product(g)
    }
    fn tensor_interchange(
        &self,
        b: &FunctorData,
        b2: &FunctorData,
        a: &FunctorData,
        a2: &FunctorData,
    ) -> Result<NatTransData> {
        let lhs = b.product(b2).after(&a.product(a2))?;
        let rhs = b.after(a)?.product(&b2.after(a2)?);
        if lhs != rhs {
            return Err(Error::FunctorLaw("product of functors is not strictly functorial".into()));
        }
        Ok(NatTransData::identity(&lhs))
    }
}

/// Lazily evaluated categories; laws and equalities hold on probes.
pub struct LazyCatBackend<O, M>(PhantomData<fn() -> (O, M)>);

impl<O, M> LazyCatBackend<O, M> {
    pub fn new() -> Self {
        LazyCatBackend(PhantomData)
    }
}

impl<O, M> Default for LazyCatBackend<O, M> {
    fn default() -> Self {
        Self::new()
    }
}

impl<O, M> Clone for LazyCatBackend<O, M> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<O, M> fmt::Debug for LazyCatBackend<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyCat")
    }
}

impl<O: Value, M: Value> Backend for LazyCatBackend<O, M> {
    type Obj = Arc<LazyCategory<O, M>>;
    type Mor1 = LazyFunctor<O, M>;
    type Mor2 = LazyNat<O, M>;

    fn src1(&self, a: &LazyFunctor<O, M>) -> Self::Obj {
        a.dom().clone()
    }
    fn tgt1(&self, a: &LazyFunctor<O, M>) -> Self::Obj {
        a.cod().clone()
    }
    fn id1(&self, x: &Self::Obj) -> LazyFunctor<O, M> {
        LazyFunctor::identity(x)
    }
    fn comp1(&self, b: &LazyFunctor<O, M>, a: &LazyFunctor<O, M>) -> Result<LazyFunctor<O, M>> {
        b.after(a)
    }
    fn dom2(&self, f: &LazyNat<O, M>) -> LazyFunctor<O, M> {
        f.from().clone()
    }
    fn cod2(&self, f: &LazyNat<O, M>) -> LazyFunctor<O, M> {
        f.to().clone()
    }
    fn id2(&self, a: &LazyFunctor<O, M>) -> LazyNat<O, M> {
        LazyNat::identity(a)
    }
    fn vcomp(&self, second: &LazyNat<O, M>, first: &LazyNat<O, M>) -> Result<LazyNat<O, M>> {
        second.vcomp(first)
    }
    fn hcomp(&self, g: &LazyNat<O, M>, f: &LazyNat<O, M>) -> Result<LazyNat<O, M>> {
        g.hcomp(f)
    }
    fn invert2(&self, f: &LazyNat<O, M>) -> std::result::Result<LazyNat<O, M>, String> {
        f.inverse().map_err(|e| e.to_string())
    }
    fn diff2(&self, u: &LazyNat<O, M>, v: &LazyNat<O, M>) -> Option<String> {
        if u.from() != v.from() || u.to() != v.to() {
            return Some("transformations are not parallel on probes".into());
        }
        use crate::cat::Category;
        u.from()
            .dom()
            .probe_objects()
            .into_iter()
            .find(|x| u.component(x) != v.component(x))
            .map(|x| format!("component at probe {x:?}"))
    }
}

/// A set labeled by base 0-cells.
#[derive(Clone, Debug)]
pub struct Cell0<B: Backend> {
    carrier: FinSet,
    labels: Vec<B::Obj>,
}

impl<B: Backend> Cell0<B> {
    pub fn new(carrier: FinSet, labels: Vec<B::Obj>) -> Result<Self> {
        if labels.len() != carrier.len() {
            return Err(Error::NotTotal(labels.len(), carrier.len()));
        }
        Ok(Cell0 { carrier, labels })
    }

    pub fn constant(carrier: &FinSet, x: B::Obj) -> Self {
        Cell0 {
            carrier: carrier.clone(),
            labels: vec![x; carrier.len()],
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn label(&self, i: usize) -> &B::Obj {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[B::Obj] {
        &self.labels
    }
}

impl<B: Backend> PartialEq for Cell0<B> {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.labels == other.labels
    }
}

/// A span with apex labeled by base 1-cells.
#[derive(Clone, Debug)]
pub struct Cell1<B: Backend> {
    src: Cell0<B>,
    tgt: Cell0<B>,
    span: Span,
    labels: Vec<B::Mor1>,
}

impl<B: Backend> Cell1<B> {
    /// Checks `src(a(c)) = x(r(c))` and `tgt(a(c)) = y(l(c))` for every `c`.
    pub fn new(base: &B, src: Cell0<B>, tgt: Cell0<B>, span: Span, labels: Vec<B::Mor1>) -> Result<Self> {
        span.src().ensure_eq(&src.carrier)?;
        span.tgt().ensure_eq(&tgt.carrier)?;
        if labels.len() != span.apex().len() {
            return Err(Error::NotTotal(labels.len(), span.apex().len()));
        }
        for (c, a) in labels.iter().enumerate() {
            let at = || span.apex().atom(c).clone();
            if base.src1(a) != src.labels[span.right().at(c)] {
                return Err(Error::LabelBoundary {
                    at: at(),
                    detail: format!("source of {a:?} differs from the label of {}", src.carrier.atom(span.right().at(c))),
                });
            }
            if base.tgt1(a) != tgt.labels[span.left().at(c)] {
                return Err(Error::LabelBoundary {
                    at: at(),
                    detail: format!("target of {a:?} differs from the label of {}", tgt.carrier.atom(span.left().at(c))),
                });
            }
        }
        Ok(Cell1 { src, tgt, span, labels })
    }

    pub fn src(&self) -> &Cell0<B> {
        &self.src
    }

    pub fn tgt(&self) -> &Cell0<B> {
        &self.tgt
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn label(&self, c: usize) -> &B::Mor1 {
        &self.labels[c]
    }

    pub fn labels(&self) -> &[B::Mor1] {
        &self.labels
    }

    pub fn apex(&self) -> &FinSet {
        self.span.apex()
    }
}

impl<B: Backend> PartialEq for Cell1<B> {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.span == other.span && self.labels == other.labels
    }
}

/// A span map with one base 2-cell per source apex element.
#[derive(Clone, Debug)]
pub struct Cell2<B: Backend> {
    from: Cell1<B>,
    to: Cell1<B>,
    map: SpanMorphism,
    comps: Vec<B::Mor2>,
}

impl<B: Backend> Cell2<B> {
    /// Checks that each `φ_c` runs from `a(c)` to `a'(f(c))`.
    pub fn new(base: &B, from: Cell1<B>, to: Cell1<B>, map: SpanMorphism, comps: Vec<B::Mor2>) -> Result<Self> {
        if from.src != to.src || from.tgt != to.tgt {
            return Err(Error::Invalid("2-cell between non-parallel 1-cells".into()));
        }
        if *map.from() != from.span || *map.to() != to.span {
            return Err(Error::Invalid("span map does not match the 1-cells".into()));
        }
        if comps.len() != from.apex().len() {
            return Err(Error::NotTotal(comps.len(), from.apex().len()));
        }
        for (c, phi) in comps.iter().enumerate() {
            let fc = map.map().at(c);
            if base.dom2(phi) != from.labels[c] || base.cod2(phi) != to.labels[fc] {
                return Err(Error::LabelBoundary {
                    at: from.apex().atom(c).clone(),
                    detail: format!("component {phi:?} has the wrong boundary"),
                });
            }
        }
        Ok(Cell2 { from, to, map, comps })
    }

    pub fn from(&self) -> &Cell1<B> {
        &self.from
    }

    pub fn to(&self) -> &Cell1<B> {
        &self.to
    }

    pub fn map(&self) -> &SpanMorphism {
        &self.map
    }

    pub fn component(&self, c: usize) -> &B::Mor2 {
        &self.comps[c]
    }

    pub fn components(&self) -> &[B::Mor2] {
        &self.comps
    }
}

impl<B: Backend> PartialEq for Cell2<B> {
    fn eq(&self, other: &Self) -> bool {
        self.from == other.from && self.to == other.to && self.map == other.map && self.comps == other.comps
    }
}

/// Where two 2-cells first differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell2Difference {
    Boundary(String),
    SpanMap { at: Atom, left: Atom, right: Atom },
    Component { at: Atom, detail: String },
}

impl fmt::Display for Cell2Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell2Difference::Boundary(s) => write!(f, "boundaries differ: {s}"),
            Cell2Difference::SpanMap { at, left, right } => {
                write!(f, "span maps differ at {at}: {left} vs {right}")
            }
            Cell2Difference::Component { at, detail } => write!(f, "components differ at {at}: {detail}"),
        }
    }
}

/// Why a 2-cell is not invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonInvertible {
    /// Two apex elements with the same image.
    Collision { first: Atom, second: Atom },
    /// A target apex element outside the image.
    Missed(Atom),
    /// A component with no inverse.
    Component { at: Atom, detail: String },
}

impl fmt::Display for NonInvertible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonInvertible::Collision { first, second } => {
                write!(f, "span map identifies {first} and {second}")
            }
            NonInvertible::Missed(a) => write!(f, "span map misses {a}"),
            NonInvertible::Component { at, detail } => write!(f, "component at {at}: {detail}"),
        }
    }
}

/// Operations of Span|V over the base `B`.
#[derive(Clone, Debug)]
pub struct SpanV<B: Backend> {
    pub base: B,
}

impl<B: Backend> SpanV<B> {
    pub fn new(base: B) -> Self {
        SpanV { base }
    }

    pub fn cell1(&self, src: &Cell0<B>, tgt: &Cell0<B>, span: Span, labels: Vec<B::Mor1>) -> Result<Cell1<B>> {
        Cell1::new(&self.base, src.clone(), tgt.clone(), span, labels)
    }

    pub fn cell2(&self, from: &Cell1<B>, to: &Cell1<B>, map: Vec<usize>, comps: Vec<B::Mor2>) -> Result<Cell2<B>> {
        let m = SpanMorphism::from_indices(from.span(), to.span(), map)?;
        Cell2::new(&self.base, from.clone(), to.clone(), m, comps)
    }

    /// The identity 1-cell `X = X = X` labeled by identities.
    pub fn id1(&self, x: &Cell0<B>) -> Cell1<B> {
        let labels = x.labels.iter().map(|o| self.base.id1(o)).collect();
        Cell1::new(&self.base, x.clone(), x.clone(), Span::identity(&x.carrier), labels)
            .expect("identity 1-cell")
    }

    pub fn id2(&self, a: &Cell1<B>) -> Cell2<B> {
        Cell2 {
            from: a.clone(),
            to: a.clone(),
            map: SpanMorphism::identity(&a.span),
            comps: a.labels.iter().map(|l| self.base.id2(l)).collect(),
        }
    }

    /// `(f'∘f, φ'_{f(c)} ∗ φ_c)`.
    pub fn vcomp2(&self, second: &Cell2<B>, first: &Cell2<B>) -> Result<Cell2<B>> {
        if first.to != second.from {
            return Err(Error::Invalid("vertical composite of non-matching 2-cells".into()));
        }
        let map = second.map.after(&first.map)?;
        let comps = first
            .comps
            .iter()
            .enumerate()
            .map(|(c, phi)| self.base.vcomp(&second.comps[first.map.map().at(c)], phi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell2 {
            from: first.from.clone(),
            to: second.to.clone(),
            map,
            comps,
        })
    }

    /// Vertical composite of a chain given in application order.
    pub fn vchain(&self, steps: &[&Cell2<B>]) -> Result<Cell2<B>> {
        let (first, rest) = steps
            .split_first()
            .ok_or_else(|| Error::Invalid("empty chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, s| self.vcomp2(s, &acc))
    }

    /// Pullback composite, labels `(d,c) ↦ b(d) ∘ a(c)`.
    pub fn hcomp1(&self, b: &Cell1<B>, a: &Cell1<B>) -> Result<Cell1<B>> {
        if b.src != a.tgt {
            return Err(Error::BoundaryMismatch {
                expected: a.tgt.carrier.clone(),
                found: b.src.carrier.clone(),
            });
        }
        let p = pullback(&b.span, &a.span)?;
        let labels = p
            .outer
            .iter()
            .zip(&p.inner)
            .map(|(&d, &c)| self.base.comp1(&b.labels[d], &a.labels[c]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell1 {
            src: a.src.clone(),
            tgt: b.tgt.clone(),
            span: p.span,
            labels,
        })
    }

    /// `(g ∧ f, γ_d ∘ φ_c)`.
    pub fn hcomp2(&self, g: &Cell2<B>, f: &Cell2<B>) -> Result<Cell2<B>> {
        let from = self.hcomp1(&g.from, &f.from)?;
        let to = self.hcomp1(&g.to, &f.to)?;
        let map = compose_span_morphisms_h(&g.map, &f.map)?;
        let p = pullback(&g.from.span, &f.from.span)?;
        let comps = p
            .outer
            .iter()
            .zip(&p.inner)
            .map(|(&d, &c)| self.base.hcomp(&g.comps[d], &f.comps[c]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell2 { from, to, map, comps })
    }

    /// Whiskering `g ∘ 1_a`.
    pub fn whisker_right(&self, g: &Cell2<B>, a: &Cell1<B>) -> Result<Cell2<B>> {
        self.hcomp2(g, &self.id2(a))
    }

    /// Whiskering `1_b ∘ f`.
    pub fn whisker_left(&self, b: &Cell1<B>, f: &Cell2<B>) -> Result<Cell2<B>> {
        self.hcomp2(&self.id2(b), f)
    }

    /// The 2-cell given by a span map whose labels already agree, with
    /// identity components.
    pub fn canonical(&self, from: &Cell1<B>, to: &Cell1<B>, map: &SpanMorphism) -> Result<Cell2<B>> {
        let comps = (0..from.apex().len())
            .map(|c| {
                let fc = map.map().at(c);
                if from.labels[c] != to.labels[fc] {
                    return Err(Error::LabelBoundary {
                        at: from.apex().atom(c).clone(),
                        detail: format!("labels {:?} and {:?} differ", from.labels[c], to.labels[fc]),
                    });
                }
                Ok(self.base.id2(&from.labels[c]))
            })
            .collect::<Result<Vec<_>>>()?;
        Cell2::new(&self.base, from.clone(), to.clone(), map.clone(), comps)
    }

    /// The coherence cell between two 1-cells whose apex elements are
    /// determined by their legs; fails if some element has no match or
    /// several.
    pub fn by_legs(&self, from: &Cell1<B>, to: &Cell1<B>) -> Result<Cell2<B>> {
        let (fs, ts) = (from.span(), to.span());
        let mut index = std::collections::HashMap::new();
        for k in 0..ts.apex().len() {
            let key = (ts.left().at(k), ts.right().at(k));
            if index.insert(key, k).is_some() {
                return Err(Error::Invalid(format!(
                    "apex element {} is not determined by its legs",
                    ts.apex().atom(k)
                )));
            }
        }
        let map = (0..fs.apex().len())
            .map(|c| {
                index
                    .get(&(fs.left().at(c), fs.right().at(c)))
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("no counterpart for {}", fs.apex().atom(c))))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = SpanMorphism::from_indices(fs, ts, map)?;
        self.canonical(from, to, &m)
    }

    /// `(c∘b)∘a ⇒ c∘(b∘a)`.
    pub fn associator(&self, c: &Cell1<B>, b: &Cell1<B>, a: &Cell1<B>) -> Result<Cell2<B>> {
        let lhs = self.hcomp1(&self.hcomp1(c, b)?, a)?;
        let rhs = self.hcomp1(c, &self.hcomp1(b, a)?)?;
        let map = finset::associator_iso(&c.span, &b.span, &a.span)?;
        self.canonical(&lhs, &rhs, &map)
    }

    /// `1∘a ⇒ a`.
    pub fn left_unitor(&self, a: &Cell1<B>) -> Result<Cell2<B>> {
        let lhs = self.hcomp1(&self.id1(&a.tgt), a)?;
        self.canonical(&lhs, a, &finset::left_unitor(&a.span)?)
    }

    /// `a∘1 ⇒ a`.
    pub fn right_unitor(&self, a: &Cell1<B>) -> Result<Cell2<B>> {
        let lhs = self.hcomp1(a, &self.id1(&a.src))?;
        self.canonical(&lhs, a, &finset::right_unitor(&a.span)?)
    }

    pub fn is_invertible2(&self, u: &Cell2<B>) -> std::result::Result<(), NonInvertible> {
        let m = u.map.map();
        if let Some((i, j)) = m.first_collision() {
            return Err(NonInvertible::Collision {
                first: u.from.apex().atom(i).clone(),
                second: u.from.apex().atom(j).clone(),
            });
        }
        if let Some(k) = m.first_missed() {
            return Err(NonInvertible::Missed(u.to.apex().atom(k).clone()));
        }
        for (c, phi) in u.comps.iter().enumerate() {
            if let Err(detail) = self.base.invert2(phi) {
                return Err(NonInvertible::Component {
                    at: u.from.apex().atom(c).clone(),
                    detail,
                });
            }
        }
        Ok(())
    }

    pub fn inverse2(&self, u: &Cell2<B>) -> Result<Cell2<B>> {
        self.is_invertible2(u)
            .map_err(|w| Error::NotInvertible(w.to_string()))?;
        let inv = u.map.inverse().expect("bijective span map");
        let comps = (0..u.to.apex().len())
            .map(|k| {
                let c = inv.map().at(k);
                self.base.invert2(&u.comps[c]).map_err(Error::NotInvertible)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cell2 {
            from: u.to.clone(),
            to: u.from.clone(),
            map: inv,
            comps,
        })
    }

    /// First difference between two parallel 2-cells, if any.
    pub fn diff2(&self, u: &Cell2<B>, v: &Cell2<B>) -> Option<Cell2Difference> {
        if u.from != v.from || u.to != v.to {
            return Some(Cell2Difference::Boundary(format!(
                "apexes {} => {} and {} => {}",
                u.from.apex(),
                u.to.apex(),
                v.from.apex(),
                v.to.apex()
            )));
        }
        for c in 0..u.from.apex().len() {
            let (i, j) = (u.map.map().at(c), v.map.map().at(c));
            if i != j {
                return Some(Cell2Difference::SpanMap {
                    at: u.from.apex().atom(c).clone(),
                    left: u.to.apex().atom(i).clone(),
                    right: v.to.apex().atom(j).clone(),
                });
            }
        }
        for c in 0..u.from.apex().len() {
            if let Some(detail) = self.base.diff2(&u.comps[c], &v.comps[c]) {
                return Some(Cell2Difference::Component {
                    at: u.from.apex().atom(c).clone(),
                    detail,
                });
            }
        }
        None
    }

    /// Compares `t_n ∗ … ∗ t_1 ∗ u` with `v`. Every transport cell must be
    /// invertible. Returns the first difference, or `None` when equal.
    pub fn eq2(&self, u: &Cell2<B>, v: &Cell2<B>, transport: &[Cell2<B>]) -> Result<Option<Cell2Difference>> {
        let mut w = u.clone();
        for t in transport {
            self.is_invertible2(t)
                .map_err(|e| Error::NotInvertible(e.to_string()))?;
            w = self.vcomp2(t, &w)?;
        }
        Ok(self.diff2(&w, v))
    }
}

impl<B: MonoidalBackend> SpanV<B> {
    /// The singleton labeled by the unit 0-cell.
    pub fn unit0(&self) -> Cell0<B> {
        Cell0::constant(&FinSet::singleton(), self.base.unit0())
    }

    pub fn tensor0(&self, x: &Cell0<B>, y: &Cell0<B>) -> Cell0<B> {
        let mut labels = Vec::with_capacity(x.labels.len() * y.labels.len());
        for a in &x.labels {
            for b in &y.labels {
                labels.push(self.base.tensor0(a, b));
            }
        }
        Cell0 {
            carrier: x.carrier.product(&y.carrier),
            labels,
        }
    }

    pub fn tensor1(&self, a: &Cell1<B>, b: &Cell1<B>) -> Cell1<B> {
        let mut labels = Vec::with_capacity(a.labels.len() * b.labels.len());
        for x in &a.labels {
            for y in &b.labels {
                labels.push(self.base.tensor1(x, y));
            }
        }
        Cell1 {
            src: self.tensor0(&a.src, &b.src),
            tgt: self.tensor0(&a.tgt, &b.tgt),
            span: cartesian_product(&a.span, &b.span),
            labels,
        }
    }

    pub fn tensor2(&self, f: &Cell2<B>, g: &Cell2<B>) -> Cell2<B> {
        let mut comps = Vec::with_capacity(f.comps.len() * g.comps.len());
        for x in &f.comps {
            for y in &g.comps {
                comps.push(self.base.tensor2(x, y));
            }
        }
        Cell2 {
            from: self.tensor1(&f.from, &g.from),
            to: self.tensor1(&f.to, &g.to),
            map: f.map.product(&g.map),
            comps,
        }
    }

    /// `(b⊗b')∘(a⊗a') ⇒ (b∘a)⊗(b'∘a')`, sending `((d,d'),(c,c'))` to
    /// `((d,c),(d',c'))`.
    pub fn tensor_interchange(&self, b: &Cell1<B>, b2: &Cell1<B>, a: &Cell1<B>, a2: &Cell1<B>) -> Result<Cell2<B>> {
        let lhs = self.hcomp1(&self.tensor1(b, b2), &self.tensor1(a, a2))?;
        let ba = pullback(&b.span, &a.span)?;
        let ba2 = pullback(&b2.span, &a2.span)?;
        let rhs = self.tensor1(&self.hcomp1(b, a)?, &self.hcomp1(b2, a2)?);
        let pl = pullback(&cartesian_product(&b.span, &b2.span), &cartesian_product(&a.span, &a2.span))?;
        let ib = finset::pullback_index(&ba);
        let ib2 = finset::pullback_index(&ba2);
        let n2b = b2.apex().len();
        let n2a = a2.apex().len();
        let width = ba2.outer.len();
        let mut map = Vec::with_capacity(pl.outer.len());
        let mut comps = Vec::with_capacity(pl.outer.len());
        for (&dd, &cc) in pl.outer.iter().zip(&pl.inner) {
            let (d, d2) = (dd / n2b, dd % n2b);
            let (c, c2) = (cc / n2a, cc % n2a);
            map.push(ib[&(d, c)] * width + ib2[&(d2, c2)]);
            comps.push(self.base.tensor_interchange(&b.labels[d], &b2.labels[d2], &a.labels[c], &a2.labels[c2])?);
        }
        let m = SpanMorphism::from_indices(lhs.span(), rhs.span(), map)?;
        Cell2::new(&self.base, lhs, rhs, m, comps)
    }
}

/// A lax functor between base bicategories.
pub trait LaxFunctor<S: Backend, T: Backend> {
    fn target(&self) -> &T;
    fn on_obj(&self, x: &S::Obj) -> T::Obj;
    fn on_mor1(&self, a: &S::Mor1) -> T::Mor1;
    fn on_mor2(&self, f: &S::Mor2) -> T::Mor2;
    /// `F(b) ∘ F(a) ⇒ F(b ∘ a)`.
    fn comp_cell(&self, b: &S::Mor1, a: &S::Mor1) -> Result<T::Mor2>;
    /// `1_{F x} ⇒ F(1_x)`.
    fn unit_cell(&self, x: &S::Obj) -> Result<T::Mor2>;
}

/// The identity lax functor.
#[derive(Clone, Debug)]
pub struct IdentityFunctor<B>(pub B);

impl<B: Backend> LaxFunctor<B, B> for IdentityFunctor<B> {
    fn target(&self) -> &B {
        &self.0
    }
    fn on_obj(&self, x: &B::Obj) -> B::Obj {
        x.clone()
    }
    fn on_mor1(&self, a: &B::Mor1) -> B::Mor1 {
        a.clone()
    }
    fn on_mor2(&self, f: &B::Mor2) -> B::Mor2 {
        f.clone()
    }
    fn comp_cell(&self, b: &B::Mor1, a: &B::Mor1) -> Result<B::Mor2> {
        Ok(self.0.id2(&self.0.comp1(b, a)?))
    }
    fn unit_cell(&self, x: &B::Obj) -> Result<B::Mor2> {
        Ok(self.0.id2(&self.0.id1(x)))
    }
}

pub type VLazyCat = LazyCatBackend<VObject, VMorphism>;

impl LaxFunctor<Vect, VLazyCat> for VectPseudofunctor {
    fn target(&self) -> &VLazyCat {
        static_lazy_backend()
    }
    fn on_obj(&self, _: &()) -> Arc<LazyCategory<VObject, VMorphism>> {
        self.category().clone()
    }
    fn on_mor1(&self, a: &VObject) -> LazyFunctor<VObject, VMorphism> {
        self.functor_of(a)
    }
    fn on_mor2(&self, f: &VMorphism) -> LazyNat<VObject, VMorphism> {
        self.nat_of(f)
    }
    fn comp_cell(&self, b: &VObject, a: &VObject) -> Result<LazyNat<VObject, VMorphism>> {
        self.composition_comparison(b, a)
    }
    fn unit_cell(&self, _: &()) -> Result<LazyNat<VObject, VMorphism>> {
        Ok(self.unit_comparison())
    }
}

fn static_lazy_backend() -> &'static VLazyCat {
    static B: VLazyCat = LazyCatBackend(PhantomData);
    &B
}

/// Pushes cells of Span|S through a lax functor `F: S → T`; span data is
/// unchanged.
pub struct SpanF<'a, S, T, F> {
    pub functor: &'a F,
    _marker: PhantomData<fn() -> (S, T)>,
}

impl<'a, S: Backend, T: Backend, F: LaxFunctor<S, T>> SpanF<'a, S, T, F> {
    pub fn new(functor: &'a F) -> Self {
        SpanF {
            functor,
            _marker: PhantomData,
        }
    }

    pub fn cell0(&self, x: &Cell0<S>) -> Cell0<T> {
        Cell0 {
            carrier: x.carrier.clone(),
            labels: x.labels.iter().map(|o| self.functor.on_obj(o)).collect(),
        }
    }

    pub fn cell1(&self, a: &Cell1<S>) -> Result<Cell1<T>> {
        Cell1::new(
            self.functor.target(),
            self.cell0(&a.src),
            self.cell0(&a.tgt),
            a.span.clone(),
            a.labels.iter().map(|l| self.functor.on_mor1(l)).collect(),
        )
    }

    pub fn cell2(&self, u: &Cell2<S>) -> Result<Cell2<T>> {
        Cell2::new(
            self.functor.target(),
            self.cell1(&u.from)?,
            self.cell1(&u.to)?,
            u.map.clone(),
            u.comps.iter().map(|f| self.functor.on_mor2(f)).collect(),
        )
    }

    /// `F(b) ∘ F(a) ⇒ F(b ∘ a)`, identity on spans.
    pub fn comp_comparison(&self, sv: &SpanV<S>, b: &Cell1<S>, a: &Cell1<S>) -> Result<Cell2<T>> {
        let t = SpanV::new(self.functor.target().clone());
        let from = t.hcomp1(&self.cell1(b)?, &self.cell1(a)?)?;
        let to = self.cell1(&sv.hcomp1(b, a)?)?;
        let p = pullback(&b.span, &a.span)?;
        let comps = p
            .outer
            .iter()
            .zip(&p.inner)
            .map(|(&d, &c)| self.functor.comp_cell(&b.labels[d], &a.labels[c]))
            .collect::<Result<Vec<_>>>()?;
        let map = SpanMorphism::identity(from.span());
        Cell2::new(&t.base, from, to, map, comps)
    }

    /// `1_{F X} ⇒ F(1_X)`.
    pub fn unit_comparison(&self, sv: &SpanV<S>, x: &Cell0<S>) -> Result<Cell2<T>> {
        let t = SpanV::new(self.functor.target().clone());
        let from = t.id1(&self.cell0(x));
        let to = self.cell1(&sv.id1(x))?;
        let comps = x
            .labels
            .iter()
            .map(|o| self.functor.unit_cell(o))
            .collect::<Result<Vec<_>>>()?;
        let map = SpanMorphism::identity(from.span());
        Cell2::new(&t.base, from, to, map, comps)
    }
}

/// A span given by a bijection between finite sets, as a map of spans.
pub fn span_map(from: &Span, to: &Span, f: impl Fn(usize) -> usize) -> Result<SpanMorphism> {
    let map = FinFn::from_fn(from.apex().clone(), to.apex().clone(), f)?;
    SpanMorphism::new(from.clone(), to.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Matrix};

    fn v() -> SpanV<Vect> {
        SpanV::new(Vect::new(BraidParam::int(2)))
    }

    fn point() -> Cell0<Vect> {
        Cell0::constant(&FinSet::singleton(), ())
    }

    fn single(sv: &SpanV<Vect>, o: VObject) -> Cell1<Vect> {
        let x = point();
        sv.cell1(&x, &x, Span::identity(&FinSet::singleton()), vec![o]).unwrap()
    }

    #[test]
    fn labels_multiply_dimensions() {
        let sv = v();
        let a = single(&sv, VObject::ungraded(&["a", "b"]));
        let b = single(&sv, VObject::ungraded(&["x", "y", "z"]));
        let ba = sv.hcomp1(&b, &a).unwrap();
        assert_eq!(ba.label(0).dim(), 6);
    }

    #[test]
    fn hcomp2_is_kronecker() {
        let sv = v();
        let o = VObject::ungraded(&["a", "b"]);
        let a = single(&sv, o.clone());
        let f = VMorphism::new(o.clone(), o.clone(), Matrix::from_ints(&[&[1, 2], &[3, 4]])).unwrap();
        let g = VMorphism::new(o.clone(), o.clone(), Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        let cf = sv.cell2(&a, &a, vec![0], vec![f.clone()]).unwrap();
        let cg = sv.cell2(&a, &a, vec![0], vec![g.clone()]).unwrap();
        let h = sv.hcomp2(&cg, &cf).unwrap();
        assert_eq!(h.component(0), &tensor_mor(&g, &f));
    }

    #[test]
    fn label_boundary_violation_is_located() {
        let cb = CatBackend;
        let c1 = Arc::new(FinCategory::cyclic_group(2));
        let c2 = Arc::new(FinCategory::terminal());
        let x = Cell0::<CatBackend>::constant(&FinSet::singleton(), c1.clone());
        let y = Cell0::<CatBackend>::constant(&FinSet::singleton(), c2);
        let err = Cell1::new(&cb, x, y, Span::identity(&FinSet::singleton()), vec![FunctorData::identity(&c1)]);
        assert!(matches!(err, Err(Error::LabelBoundary { .. })));
    }

    #[test]
    fn perturbed_entry_is_reported() {
        let sv = v();
        let o = VObject::ungraded(&["a", "b"]);
        let a = single(&sv, o.clone());
        let id = sv.id2(&a);
        let mut m = Matrix::identity(2);
        m.set(1, 0, int(7));
        let bad = sv.cell2(&a, &a, vec![0], vec![VMorphism::new(o.clone(), o, m).unwrap()]).unwrap();
        assert_eq!(sv.eq2(&id, &id, &[]).unwrap(), None);
        match sv.eq2(&id, &bad, &[]).unwrap() {
            Some(Cell2Difference::Component { detail, .. }) => assert!(detail.contains("(1,0)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unitors_and_associator_are_invertible() {
        let sv = v();
        let a = single(&sv, VObject::graded(&[("x", 1)]));
        sv.is_invertible2(&sv.left_unitor(&a).unwrap()).unwrap();
        sv.is_invertible2(&sv.right_unitor(&a).unwrap()).unwrap();
        sv.is_invertible2(&sv.associator(&a, &a, &a).unwrap()).unwrap();
    }

    #[test]
    fn v_to_cat_sends_object_to_tensor_functor() {
        let probes = [VObject::ungraded(&["u"]), VObject::ungraded(&["u", "w"])];
        let (_, pf) = crate::cat::lazy::vect_as_lazy_category(&BraidParam::one(), &probes).unwrap();
        let sv = v();
        let a = single(&sv, VObject::ungraded(&["a", "b"]));
        let fa = SpanF::new(&pf).cell1(&a).unwrap();
        assert_eq!(fa.label(0).on_object(&probes[1]).dim(), 4);
        assert_eq!(fa.span(), a.span());
    }
}
