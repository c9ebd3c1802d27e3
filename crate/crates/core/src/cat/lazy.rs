//! Categories given by procedures rather than tables. Laws are checked on a
//! finite list of probe objects and morphisms only.

use std::fmt;
use std::sync::Arc;

use super::{Category, MonoidalCategory};
use crate::error::{Error, Result};
use crate::vect::{self, braiding, tensor_mor, tensor_obj, BraidParam, VMorphism, VObject};

/// Values usable as objects or morphisms of a lazy category.
pub trait Value: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + PartialEq + fmt::Debug + Send + Sync + 'static> Value for T {}

type ObjFn<O> = Arc<dyn Fn(&O) -> O + Send + Sync>;
type MorFn<M> = Arc<dyn Fn(&M) -> M + Send + Sync>;

#[derive(Clone)]
pub struct LazyCategory<O, M> {
    name: String,
    dom: Arc<dyn Fn(&M) -> O + Send + Sync>,
    cod: Arc<dyn Fn(&M) -> O + Send + Sync>,
    id: Arc<dyn Fn(&O) -> M + Send + Sync>,
    compose: Arc<dyn Fn(&M, &M) -> Option<M> + Send + Sync>,
    inverse: Arc<dyn Fn(&M) -> Option<M> + Send + Sync>,
    unit: O,
    tensor: Arc<dyn Fn(&O, &O) -> O + Send + Sync>,
    tensor_mor: Arc<dyn Fn(&M, &M) -> M + Send + Sync>,
    probe_objects: Vec<O>,
    probe_morphisms: Vec<M>,
}

impl<O, M> fmt::Debug for LazyCategory<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyCategory({})", self.name)
    }
}

/// Lazy categories are identified by name.
impl<O, M> PartialEq for LazyCategory<O, M> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl<O, M> LazyCategory<O, M>
where
    O: Value,
    M: Value,
{
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Identity and associativity laws on all probe morphisms, plus closure
    /// of identities on probe objects.
    pub fn check_probes(&self) -> Result<()> {
        let ms = &self.probe_morphisms;
        for x in &self.probe_objects {
            let e = (self.id)(x);
            if (self.dom)(&e) != *x || (self.cod)(&e) != *x {
                return Err(Error::CategoryAxiom(format!("identity on {x:?} has wrong boundary")));
            }
        }
        for f in ms {
            let l = (self.compose)(&(self.id)(&(self.cod)(f)), f);
            let r = (self.compose)(f, &(self.id)(&(self.dom)(f)));
            if l.as_ref() != Some(f) || r.as_ref() != Some(f) {
                return Err(Error::CategoryAxiom(format!("identity law fails at {f:?}")));
            }
        }
        for h in ms {
            for g in ms {
                let Some(hg) = (self.compose)(h, g) else { continue };
                for f in ms {
                    let Some(gf) = (self.compose)(g, f) else { continue };
                    if (self.compose)(&hg, f) != (self.compose)(h, &gf) {
                        return Err(Error::CategoryAxiom(format!(
                            "associativity fails at ({h:?},{g:?},{f:?})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn hom_probes(&self, a: &O, b: &O) -> Vec<M> {
        self.probe_morphisms
            .iter()
            .filter(|f| (self.dom)(f) == *a && (self.cod)(f) == *b)
            .cloned()
            .collect()
    }
}

impl<O, M> Category for LazyCategory<O, M>
where
    O: Value,
    M: Value,
{
    type Obj = O;
    type Mor = M;

    fn dom(&self, f: &M) -> O {
        (self.dom)(f)
    }
    fn cod(&self, f: &M) -> O {
        (self.cod)(f)
    }
    fn id(&self, x: &O) -> M {
        (self.id)(x)
    }
    fn compose(&self, g: &M, f: &M) -> Option<M> {
        (self.compose)(g, f)
    }
    fn inverse(&self, f: &M) -> Option<M> {
        (self.inverse)(f)
    }
    fn probe_objects(&self) -> Vec<O> {
        self.probe_objects.clone()
    }
    fn probe_morphisms(&self) -> Vec<M> {
        self.probe_morphisms.clone()
    }
    fn is_exhaustive(&self) -> bool {
        false
    }
}

impl<O, M> MonoidalCategory for LazyCategory<O, M>
where
    O: Value,
    M: Value,
{
    fn unit(&self) -> O {
        self.unit.clone()
    }
    fn tensor(&self, a: &O, b: &O) -> O {
        (self.tensor)(a, b)
    }
    fn tensor_mor(&self, f: &M, g: &M) -> M {
        (self.tensor_mor)(f, g)
    }
}

/// A functor between lazy categories, given by its action.
#[derive(Clone)]
pub struct LazyFunctor<O, M> {
    name: String,
    dom: Arc<LazyCategory<O, M>>,
    cod: Arc<LazyCategory<O, M>>,
    obj: ObjFn<O>,
    mor: MorFn<M>,
}

impl<O, M> fmt::Debug for LazyFunctor<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Equality on the probes of the domain.
impl<O, M> PartialEq for LazyFunctor<O, M>
where
    O: Value,
    M: Value,
{
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.dom.probe_objects.iter().all(|x| self.on_object(x) == other.on_object(x))
            && self.dom.probe_morphisms.iter().all(|f| self.on_morphism(f) == other.on_morphism(f))
    }
}

impl<O, M> LazyFunctor<O, M>
where
    O: Value,
    M: Value,
{
    pub fn new(
        name: impl Into<String>,
        dom: Arc<LazyCategory<O, M>>,
        cod: Arc<LazyCategory<O, M>>,
        obj: impl Fn(&O) -> O + Send + Sync + 'static,
        mor: impl Fn(&M) -> M + Send + Sync + 'static,
    ) -> Self {
        LazyFunctor {
            name: name.into(),
            dom,
            cod,
            obj: Arc::new(obj),
            mor: Arc::new(mor),
        }
    }

    pub fn identity(c: &Arc<LazyCategory<O, M>>) -> Self {
        Self::new("1", c.clone(), c.clone(), |x: &O| x.clone(), |f: &M| f.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dom(&self) -> &Arc<LazyCategory<O, M>> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<LazyCategory<O, M>> {
        &self.cod
    }

    pub fn on_object(&self, x: &O) -> O {
        (self.obj)(x)
    }

    pub fn on_morphism(&self, f: &M) -> M {
        (self.mor)(f)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LazyFunctor<O, M>) -> Result<Self> {
        if first.cod != self.dom {
            return Err(Error::FunctorLaw(format!(
                "cannot compose {} after {}",
                self.name, first.name
            )));
        }
        let (g, f) = (self.clone(), first.clone());
        let (g2, f2) = (self.clone(), first.clone());
        Ok(Self::new(
            format!("{}∘{}", self.name, first.name),
            first.dom.clone(),
            self.cod.clone(),
            move |x| g.on_object(&f.on_object(x)),
            move |m| g2.on_morphism(&f2.on_morphism(m)),
        ))
    }

    /// Functor laws on the probes of the domain.
    pub fn check(&self) -> Result<()> {
        let (d, c) = (&*self.dom, &*self.cod);
        for x in &d.probe_objects {
            if self.on_morphism(&d.id(x)) != c.id(&self.on_object(x)) {
                return Err(Error::FunctorLaw(format!("{} fails on the identity of {x:?}", self.name)));
            }
        }
        for f in &d.probe_morphisms {
            let ff = self.on_morphism(f);
            if c.dom(&ff) != self.on_object(&d.dom(f)) || c.cod(&ff) != self.on_object(&d.cod(f)) {
                return Err(Error::FunctorLaw(format!("{} moves the boundary of {f:?}", self.name)));
            }
            for g in &d.probe_morphisms {
                if let Some(gf) = d.compose(g, f) {
                    if c.compose(&self.on_morphism(g), &ff) != Some(self.on_morphism(&gf)) {
                        return Err(Error::FunctorLaw(format!(
                            "{} does not preserve {g:?}∘{f:?}",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A natural transformation between lazy functors.
#[derive(Clone)]
pub struct LazyNat<O, M> {
    from: LazyFunctor<O, M>,
    to: LazyFunctor<O, M>,
    comp: Arc<dyn Fn(&O) -> M + Send + Sync>,
}

impl<O, M> fmt::Debug for LazyNat<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⇒ {:?}", self.from, self.to)
    }
}

impl<O, M> PartialEq for LazyNat<O, M>
where
    O: Value,
    M: Value,
{
    fn eq(&self, other: &Self) -> bool {
        self.from == other.from
            && self.to == other.to
            && self
                .from
                .dom
                .probe_objects
                .iter()
                .all(|x| (self.comp)(x) == (other.comp)(x))
    }
}

impl<O, M> LazyNat<O, M>
where
    O: Value,
    M: Value,
{
    pub fn new(
        from: LazyFunctor<O, M>,
        to: LazyFunctor<O, M>,
        comp: impl Fn(&O) -> M + Send + Sync + 'static,
    ) -> Self {
        LazyNat {
            from,
            to,
            comp: Arc::new(comp),
        }
    }

    pub fn identity(f: &LazyFunctor<O, M>) -> Self {
        let g = f.clone();
        Self::new(f.clone(), f.clone(), move |x| g.cod.id(&g.on_object(x)))
    }

    pub fn from(&self) -> &LazyFunctor<O, M> {
        &self.from
    }

    pub fn to(&self) -> &LazyFunctor<O, M> {
        &self.to
    }

    pub fn component(&self, x: &O) -> M {
        (self.comp)(x)
    }

    /// Boundaries and naturality squares on the probes.
    pub fn check(&self) -> Result<()> {
        let (d, c) = (&*self.from.dom, &*self.from.cod);
        if self.from.dom != self.to.dom || self.from.cod != self.to.cod {
            return Err(Error::Naturality("functors are not parallel".into()));
        }
        for x in &d.probe_objects {
            let a = self.component(x);
            if c.dom(&a) != self.from.on_object(x) || c.cod(&a) != self.to.on_object(x) {
                return Err(Error::Naturality(format!("component at {x:?} has the wrong boundary")));
            }
        }
        for f in &d.probe_morphisms {
            let lhs = c.compose(&self.to.on_morphism(f), &self.component(&d.dom(f)));
            let rhs = c.compose(&self.component(&d.cod(f)), &self.from.on_morphism(f));
            if lhs.is_none() || lhs != rhs {
                return Err(Error::Naturality(format!("square at {f:?} does not commute")));
            }
        }
        Ok(())
    }

    /// Vertical composite `self ∗ first`.
    pub fn vcomp(&self, first: &LazyNat<O, M>) -> Result<Self> {
        if first.to != self.from {
            return Err(Error::Naturality(format!(
                "cannot stack {:?} on {:?}",
                self, first
            )));
        }
        let (s, f) = (self.clone(), first.clone());
        Ok(Self::new(first.from.clone(), self.to.clone(), move |x| {
            s.from
                .cod
                .compose(&s.component(x), &f.component(x))
                .expect("components compose")
        }))
    }

    /// Horizontal composite `self ∘ first`, component `G'(α_x) ∘ β_{F x}`.
    pub fn hcomp(&self, first: &LazyNat<O, M>) -> Result<Self> {
        let from = self.from.after(&first.from)?;
        let to = self.to.after(&first.to)?;
        let (b, a) = (self.clone(), first.clone());
        Ok(Self::new(from, to, move |x| {
            let beta = b.component(&a.from.on_object(x));
            let galpha = b.to.on_morphism(&a.component(x));
            b.from.cod.compose(&galpha, &beta).expect("components compose")
        }))
    }

    /// Invertibility on the probes, or the first probe where it fails.
    pub fn is_iso_on_probes(&self) -> std::result::Result<(), O> {
        let c = &self.from.cod;
        for x in &self.from.dom.probe_objects {
            if c.inverse(&self.component(x)).is_none() {
                return Err(x.clone());
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<Self> {
        if let Err(x) = self.is_iso_on_probes() {
            return Err(Error::NotInvertible(format!("component at {x:?}")));
        }
        let s = self.clone();
        Ok(Self::new(self.to.clone(), self.from.clone(), move |x| {
            s.from.cod.inverse(&s.component(x)).expect("invertible component")
        }))
    }
}

pub type VCategory = LazyCategory<VObject, VMorphism>;
pub type VFunctor = LazyFunctor<VObject, VMorphism>;
pub type VNat = LazyNat<VObject, VMorphism>;

/// The category V with braiding parameter `q`, probed on the given objects.
/// Probe morphisms are identities, braidings and zero maps between probes.
pub fn vect_category(q: &BraidParam, probes: &[VObject]) -> Result<VCategory> {
    if probes.is_empty() {
        return Err(Error::Invalid("probe list is empty".into()));
    }
    let mut probe_morphisms = Vec::new();
    for a in probes {
        probe_morphisms.push(VMorphism::identity(a));
        for b in probes {
            probe_morphisms.push(VMorphism::zero(a, b));
            probe_morphisms.push(braiding(a, b, q));
        }
    }
    Ok(LazyCategory {
        name: format!("V[q={}]", q.value()),
        dom: Arc::new(|f: &VMorphism| f.dom().clone()),
        cod: Arc::new(|f: &VMorphism| f.cod().clone()),
        id: Arc::new(VMorphism::identity),
        compose: Arc::new(|g: &VMorphism, f: &VMorphism| g.after(f).ok()),
        inverse: Arc::new(|f: &VMorphism| vect::invert(f).ok()),
        unit: VObject::unit(),
        tensor: Arc::new(tensor_obj),
        tensor_mor: Arc::new(tensor_mor),
        probe_objects: probes.to_vec(),
        probe_morphisms,
    })
}

/// The monoidal pseudofunctor from V, seen as a one-object bicategory, to
/// Cat: `p ↦ p⊗(−)` and `f ↦ f⊗(−)`.
#[derive(Clone, Debug)]
pub struct VectPseudofunctor {
    q: BraidParam,
    category: Arc<VCategory>,
}

pub fn vect_as_lazy_category(q: &BraidParam, probes: &[VObject]) -> Result<(Arc<VCategory>, VectPseudofunctor)> {
    let category = Arc::new(vect_category(q, probes)?);
    Ok((
        category.clone(),
        VectPseudofunctor {
            q: q.clone(),
            category,
        },
    ))
}

impl VectPseudofunctor {
    pub fn category(&self) -> &Arc<VCategory> {
        &self.category
    }

    pub fn braid(&self) -> &BraidParam {
        &self.q
    }

    pub fn functor_of(&self, p: &VObject) -> VFunctor {
        let (p1, p2) = (p.clone(), p.clone());
        LazyFunctor::new(
            format!("{p:?}⊗(−)"),
            self.category.clone(),
            self.category.clone(),
            move |x| tensor_obj(&p1, x),
            move |g| tensor_mor(&VMorphism::identity(&p2), g),
        )
    }

    pub fn nat_of(&self, f: &VMorphism) -> VNat {
        let f1 = f.clone();
        LazyNat::new(self.functor_of(f.dom()), self.functor_of(f.cod()), move |x| {
            tensor_mor(&f1, &VMorphism::identity(x))
        })
    }

    /// `(p⊗(−)) ∘ (p'⊗(−)) ⇒ (p⊗p')⊗(−)`; the identity since V is strict.
    pub fn composition_comparison(&self, p: &VObject, p2: &VObject) -> Result<VNat> {
        let from = self.functor_of(p).after(&self.functor_of(p2))?;
        let to = self.functor_of(&tensor_obj(p, p2));
        Ok(LazyNat::new(from, to, {
            let (p, p2) = (p.clone(), p2.clone());
            move |x| VMorphism::identity(&tensor_all3(&p, &p2, x))
        }))
    }

    /// `1 ⇒ K⊗(−)`.
    pub fn unit_comparison(&self) -> VNat {
        LazyNat::new(
            LazyFunctor::identity(&self.category),
            self.functor_of(&VObject::unit()),
            VMorphism::identity,
        )
    }

    /// The isomorphism `K⊗K ≅ K`.
    pub fn unit_object_iso(&self) -> VMorphism {
        VMorphism::identity(&VObject::unit())
    }

    /// Product compatibility at `(p, q)` on probes `(x, y)`:
    /// `1⊗c_{x,q}⊗1 : p⊗x⊗q⊗y → p⊗q⊗x⊗y`.
    pub fn product_compat(&self, p: &VObject, qo: &VObject, x: &VObject, y: &VObject) -> VMorphism {
        vect::tensor_mor_all([
            &VMorphism::identity(p),
            &braiding(x, qo, &self.q),
            &VMorphism::identity(y),
        ])
    }

    /// Pointwise laws on the probes: functoriality of every `p⊗(−)`,
    /// naturality of every `f⊗(−)`, and invertibility of all comparisons.
    pub fn check_laws(&self) -> Result<()> {
        self.category.check_probes()?;
        let probes = &self.category.probe_objects;
        for p in probes {
            self.functor_of(p).check()?;
            for p2 in probes {
                let c = self.composition_comparison(p, p2)?;
                c.check()?;
                c.is_iso_on_probes()
                    .map_err(|x| Error::NotInvertible(format!("composition comparison at {x:?}")))?;
                for x in probes {
                    for y in probes {
                        let m = self.product_compat(p, p2, x, y);
                        vect::invert(&m).map_err(|w| {
                            Error::NotInvertible(format!("product compatibility at ({p:?},{p2:?}): {w}"))
                        })?;
                    }
                }
            }
        }
        for f in &self.category.probe_morphisms {
            self.nat_of(f).check()?;
        }
        let u = self.unit_comparison();
        u.check()?;
        u.is_iso_on_probes()
            .map_err(|x| Error::NotInvertible(format!("unit comparison at {x:?}")))?;
        Ok(())
    }
}

fn tensor_all3(a: &VObject, b: &VObject, c: &VObject) -> VObject {
    tensor_obj(&tensor_obj(a, b), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_probe_acts_as_identity() {
        let (_, f) = vect_as_lazy_category(&BraidParam::one(), &[VObject::unit()]).unwrap();
        let k = f.functor_of(&VObject::unit());
        assert_eq!(k.on_object(&VObject::unit()), VObject::unit());
        f.check_laws().unwrap();
    }

    #[test]
    fn dimension_doubles() {
        let x = VObject::ungraded(&["a", "b", "c"]);
        let (_, f) = vect_as_lazy_category(&BraidParam::int(2), &[x.clone()]).unwrap();
        let p = VObject::ungraded(&["u", "v"]);
        assert_eq!(f.functor_of(&p).on_object(&x).dim(), 6);
    }

    #[test]
    fn product_compat_is_braiding_built() {
        let g = VObject::graded(&[("x", 1), ("y", 0)]);
        let (_, f) = vect_as_lazy_category(&BraidParam::int(2), &[g.clone()]).unwrap();
        let m = f.product_compat(&g, &g, &g, &g);
        assert_eq!(m.matrix().rows(), 16);
        assert!(vect::invert(&m).is_ok());
        f.check_laws().unwrap();
    }

    #[test]
    fn empty_probes_rejected() {
        assert!(vect_as_lazy_category(&BraidParam::one(), &[]).is_err());
    }
}
