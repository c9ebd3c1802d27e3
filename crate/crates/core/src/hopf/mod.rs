//! Monads in Span|V over the vect backend: G-monoids and enriched categories,
//! their comonoid structure, fusion cells, Hopf verdicts and antipodes.
//!
//! A presentation is a finite shape category `D` with a V-object on every
//! morphism. As a 1-cell it is the span `D⁰ ←t D¹ →s D⁰` over the 0-cell
//! `(D⁰, *)`; composable pairs `(h, k)` carry `μ_{h,k}: F(h)⊗F(k) → F(h·k)`.

pub mod antipode;
pub mod bcv;
pub mod fusion;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::FinCategory;
use crate::error::{Error, Result};
use crate::finset::{pullback, FinSet, Span};
use crate::linalg::{int, Matrix};
use crate::monoidale::{self, DuoidalUnits, SV};
use crate::spanv::{Backend, Cell0, Cell1, Cell2, SpanV, Vect};
use crate::vect::{BraidParam, VMorphism, VObject};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    GroupMonoid,
    Enriched,
    General,
}

/// Per-morphism comonoid data `δ_h: F(h) → F(h)⊗F(h)`, `ε_h: F(h) → K`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comonoid {
    pub delta: Vec<VMorphism>,
    pub eps: Vec<VMorphism>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectMonad {
    pub kind: Kind,
    pub q: BraidParam,
    pub shape: Arc<FinCategory>,
    pub labels: Vec<VObject>,
    /// Keyed by `(h, k)` with `h·k` defined.
    pub mu: BTreeMap<(usize, usize), VMorphism>,
    /// `η_x: K → F(e_x)`, per object.
    pub eta: Vec<VMorphism>,
    pub comonoid: Option<Comonoid>,
    /// `σ_h: F(h) → F(h⁻¹)`, per morphism.
    pub antipode: Option<Vec<VMorphism>>,
}

impl VectMonad {
    pub fn new(
        kind: Kind,
        q: BraidParam,
        shape: Arc<FinCategory>,
        labels: Vec<VObject>,
        mu: BTreeMap<(usize, usize), VMorphism>,
        eta: Vec<VMorphism>,
    ) -> Result<Self> {
        if labels.len() != shape.num_morphisms() {
            return Err(Error::Dimension(format!(
                "{} labels for {} morphisms",
                labels.len(),
                shape.num_morphisms()
            )));
        }
        if eta.len() != shape.num_objects() {
            return Err(Error::Dimension(format!("{} units for {} objects", eta.len(), shape.num_objects())));
        }
        for (g, f) in shape.composable_pairs() {
            if !mu.contains_key(&(g, f)) {
                return Err(Error::Invalid(format!(
                    "missing multiplication at ({}, {})",
                    shape.morphisms().atom(g),
                    shape.morphisms().atom(f)
                )));
            }
        }
        let m = VectMonad {
            kind,
            q,
            shape,
            labels,
            mu,
            eta,
            comonoid: None,
            antipode: None,
        };
        // boundary checks happen when the cells are built
        m.cells(&m.spanv())?;
        Ok(m)
    }

    /// A monoid `G` (one-object shape) with `g(p)`, `μ_{p,q}` and `η`.
    pub fn group_monoid(
        q: BraidParam,
        shape: Arc<FinCategory>,
        labels: Vec<VObject>,
        mu: impl Fn(usize, usize) -> VMorphism,
        eta: VMorphism,
    ) -> Result<Self> {
        if shape.num_objects() != 1 {
            return Err(Error::Invalid("a G-monoid needs a one-object shape".into()));
        }
        let mu = shape.composable_pairs().into_iter().map(|(g, f)| ((g, f), mu(g, f))).collect();
        Self::new(Kind::GroupMonoid, q, shape, labels, mu, vec![eta])
    }

    /// A V-category on `objects`: `a(x,y)`, `μ_{x,y,z}: a(x,y)⊗a(y,z) → a(x,z)`,
    /// `η_x: K → a(x,x)`. The shape is indiscrete; `(x,y)` has target `x`.
    pub fn enriched(
        q: BraidParam,
        objects: &FinSet,
        a: impl Fn(usize, usize) -> VObject,
        mu: impl Fn(usize, usize, usize) -> VMorphism,
        eta: impl Fn(usize) -> VMorphism,
    ) -> Result<Self> {
        let shape = Arc::new(FinCategory::indiscrete(objects));
        let n = objects.len();
        let labels = (0..n * n).map(|i| a(i / n, i % n)).collect();
        let mut table = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    table.insert((x * n + y, y * n + z), mu(x, y, z));
                }
            }
        }
        Self::new(Kind::Enriched, q, shape, labels, table, (0..n).map(eta).collect())
    }

    pub fn with_comonoid(mut self, c: Comonoid) -> Result<Self> {
        let n = self.labels.len();
        if c.delta.len() != n || c.eps.len() != n {
            return Err(Error::Dimension("comonoid data must cover every morphism".into()));
        }
        for (h, l) in self.labels.iter().enumerate() {
            let ll = crate::vect::tensor_obj(l, l);
            if c.delta[h].dom() != l || c.delta[h].cod() != &ll {
                return Err(Error::Dimension(format!("δ at {}", self.shape.morphisms().atom(h))));
            }
            if c.eps[h].dom() != l || c.eps[h].cod() != &VObject::unit() {
                return Err(Error::Dimension(format!("ε at {}", self.shape.morphisms().atom(h))));
            }
        }
        self.comonoid = Some(c);
        Ok(self)
    }

    /// Grouplike comonoid on every label: `δ(e_i) = e_i⊗e_i`, `ε(e_i) = 1`.
    pub fn with_grouplike(self) -> Result<Self> {
        let c = grouplike_comonoid(&self.labels);
        self.with_comonoid(c)
    }

    pub fn with_antipode(mut self, sigma: Vec<VMorphism>) -> Result<Self> {
        if sigma.len() != self.labels.len() {
            return Err(Error::Dimension("antipode must cover every morphism".into()));
        }
        for (h, s) in sigma.iter().enumerate() {
            let inv = self.shape.inverse_of(h).ok_or_else(|| {
                Error::Invalid(format!("{} has no inverse", self.shape.morphisms().atom(h)))
            })?;
            if s.dom() != &self.labels[h] || s.cod() != &self.labels[inv] {
                return Err(Error::Dimension(format!("σ at {}", self.shape.morphisms().atom(h))));
            }
        }
        self.antipode = Some(sigma);
        Ok(self)
    }

    pub fn spanv(&self) -> SV {
        SpanV::new(Vect::new(self.q.clone()))
    }

    pub fn morphism_name(&self, h: usize) -> String {
        self.shape.morphisms().atom(h).to_string()
    }

    pub fn mu_at(&self, h: usize, k: usize) -> &VMorphism {
        &self.mu[&(h, k)]
    }

    /// The presentation as a monad `(T, μ, η)` in Span|V.
    pub fn cells(&self, sv: &SV) -> Result<MonadCells> {
        let d = &self.shape;
        let x = Cell0::constant(d.objects(), ());
        let span = Span::from_indices(
            d.objects(),
            d.objects(),
            d.morphisms(),
            (0..d.num_morphisms()).map(|h| d.tgt(h)).collect(),
            (0..d.num_morphisms()).map(|h| d.src(h)).collect(),
        )?;
        let t = sv.cell1(&x, &x, span, self.labels.clone())?;
        let tt = sv.hcomp1(&t, &t)?;
        let p = pullback(t.span(), t.span())?;
        let mut map = Vec::with_capacity(p.outer.len());
        let mut comps = Vec::with_capacity(p.outer.len());
        for (&h, &k) in p.outer.iter().zip(&p.inner) {
            map.push(d.compose(h, k).expect("composable"));
            comps.push(self.mu_at(h, k).clone());
        }
        let mu = sv.cell2(&tt, &t, map, comps)?;
        let id = sv.id1(&x);
        let eta = sv.cell2(
            &id,
            &t,
            (0..d.num_objects()).map(|o| d.identity(o)).collect(),
            self.eta.clone(),
        )?;
        Ok(MonadCells { x, t, mu, eta })
    }

    /// `δ: T ⇒ T•T` and `ε: T ⇒ J`.
    pub fn comonoid_cells(&self, sv: &SV, cells: &MonadCells, units: &DuoidalUnits) -> Result<(Cell2<Vect>, Cell2<Vect>)> {
        let c = self
            .comonoid
            .as_ref()
            .ok_or_else(|| Error::Invalid("no comonoid structure".into()))?;
        let t = &cells.t;
        let tt = monoidale::star1(sv, t, t)?;
        let n = t.apex().len();
        // T•T has one element per pair with equal legs; (h,h) is among them
        let mut index = std::collections::HashMap::new();
        for i in 0..tt.apex().len() {
            index.insert(tt.apex().atom(i).clone(), i);
        }
        let map = (0..n)
            .map(|h| index[&crate::finset::Atom::pair(t.apex().atom(h), t.apex().atom(h))])
            .collect();
        let delta = sv.cell2(t, &tt, map, c.delta.clone())?;
        let k = self.shape.num_objects();
        let emap = (0..n).map(|h| self.shape.tgt(h) * k + self.shape.src(h)).collect();
        let eps = sv.cell2(t, &units.j, emap, c.eps.clone())?;
        Ok((delta, eps))
    }
}

#[derive(Clone, Debug)]
pub struct MonadCells {
    pub x: Cell0<Vect>,
    pub t: Cell1<Vect>,
    pub mu: Cell2<Vect>,
    pub eta: Cell2<Vect>,
}

pub fn grouplike_comonoid(labels: &[VObject]) -> Comonoid {
    let mut delta = Vec::new();
    let mut eps = Vec::new();
    for l in labels {
        let n = l.dim();
        let ll = crate::vect::tensor_obj(l, l);
        let d = Matrix::from_fn(n * n, n, |r, c| if r == c * n + c { int(1) } else { int(0) });
        delta.push(VMorphism::new(l.clone(), ll, d).expect("dimensions"));
        let e = Matrix::from_fn(1, n, |_, _| int(1));
        eps.push(VMorphism::new(l.clone(), VObject::unit(), e).expect("dimensions"));
    }
    Comonoid { delta, eps }
}

/// Outcome of a law check: the first failing law and where it fails.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LawReport {
    pub checked: Vec<String>,
    pub failure: Option<(String, String)>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn run(&mut self, law: &str, outcome: Option<String>) -> bool {
        self.checked.push(law.to_string());
        if let Some(w) = outcome {
            self.failure = Some((law.to_string(), w));
            return false;
        }
        true
    }
}

/// Associativity over all composable triples and both unit laws.
pub fn check_monad(p: &VectMonad) -> Result<LawReport> {
    let sv = p.spanv();
    let c = p.cells(&sv)?;
    check_monad_cells(&sv, &c.t, &c.mu, &c.eta)
}

/// The monad laws for `(t, μ, η)` in Span|B.
pub fn check_monad_cells<B: Backend>(sv: &SpanV<B>, t: &Cell1<B>, mu: &Cell2<B>, eta: &Cell2<B>) -> Result<LawReport> {
    let mut r = LawReport::default();
    let lhs = sv.vcomp2(mu, &sv.hcomp2(mu, &sv.id2(t))?)?;
    let rhs = sv.vchain(&[&sv.associator(t, t, t)?, &sv.hcomp2(&sv.id2(t), mu)?, mu])?;
    if !r.run("associativity", sv.diff2(&lhs, &rhs).map(|d| d.to_string())) {
        return Ok(r);
    }
    let left = sv.vchain(&[
        &sv.inverse2(&sv.left_unitor(t)?)?,
        &sv.whisker_right(eta, t)?,
        mu,
    ])?;
    if !r.run("left unit", sv.diff2(&left, &sv.id2(t)).map(|d| d.to_string())) {
        return Ok(r);
    }
    let right = sv.vchain(&[
        &sv.inverse2(&sv.right_unitor(t)?)?,
        &sv.whisker_left(t, eta)?,
        mu,
    ])?;
    r.run("right unit", sv.diff2(&right, &sv.id2(t)).map(|d| d.to_string()));
    Ok(r)
}

/// The comonoid laws for `(δ, ε)` in `(Span|V(X,X), •, J)`, and `μ`, `η` as
/// comonoid morphisms; i.e. `T` is a bimonoid in the duoidal endohom.
pub fn check_opmonoidal(p: &VectMonad) -> Result<LawReport> {
    let sv = p.spanv();
    let c = p.cells(&sv)?;
    let u = monoidale::duoidal_units(&sv, c.x.carrier())?;
    let (delta, eps) = p.comonoid_cells(&sv, &c, &u)?;
    let t = &c.t;
    let idt = sv.id2(t);
    let mut r = LawReport::default();
    let d = |a: &Cell2<Vect>, b: &Cell2<Vect>| sv.diff2(a, b).map(|x| x.to_string());

    let lhs = sv.vcomp2(&monoidale::star2(&sv, &delta, &idt)?, &delta)?;
    let rhs = sv.vchain(&[
        &delta,
        &monoidale::star2(&sv, &idt, &delta)?,
        &sv.inverse2(&monoidale::star_associator(&sv, t, t, t)?)?,
    ])?;
    if !r.run("coassociativity", d(&lhs, &rhs)) {
        return Ok(r);
    }
    let left = sv.vchain(&[
        &delta,
        &monoidale::star2(&sv, &eps, &idt)?,
        &monoidale::star_unitor(&sv, &u.j, t, true)?,
    ])?;
    if !r.run("left counit", d(&left, &idt)) {
        return Ok(r);
    }
    let right = sv.vchain(&[
        &delta,
        &monoidale::star2(&sv, &idt, &eps)?,
        &monoidale::star_unitor(&sv, &u.j, t, false)?,
    ])?;
    if !r.run("right counit", d(&right, &idt)) {
        return Ok(r);
    }
    let lhs = sv.vcomp2(&delta, &c.mu)?;
    let rhs = sv.vchain(&[
        &sv.hcomp2(&delta, &delta)?,
        &monoidale::interchange(&sv, t, t, t, t)?,
        &monoidale::star2(&sv, &c.mu, &c.mu)?,
    ])?;
    if !r.run("multiplication preserves δ", d(&lhs, &rhs)) {
        return Ok(r);
    }
    let lhs = sv.vcomp2(&eps, &c.mu)?;
    let rhs = sv.vcomp2(&u.mu_j, &sv.hcomp2(&eps, &eps)?)?;
    if !r.run("multiplication preserves ε", d(&lhs, &rhs)) {
        return Ok(r);
    }
    let lhs = sv.vcomp2(&delta, &c.eta)?;
    let rhs = sv.vcomp2(&monoidale::star2(&sv, &c.eta, &c.eta)?, &u.delta_i)?;
    if !r.run("unit preserves δ", d(&lhs, &rhs)) {
        return Ok(r);
    }
    let lhs = sv.vcomp2(&eps, &c.eta)?;
    r.run("unit preserves ε", d(&lhs, &u.iota));
    Ok(r)
}

/// `K[G]` with basis `e_g`, grades from `grade`.
pub fn group_algebra_object(shape: &FinCategory, grade: impl Fn(usize) -> i64) -> VObject {
    let basis = (0..shape.num_morphisms())
        .map(|g| (shape.morphisms().atom(g).clone(), grade(g)))
        .collect();
    VObject::new(basis).expect("distinct morphisms")
}

/// The constant G-monoid `g(p) = K[G]` with `μ_{p,q}(e_a⊗e_b) = e_{ab}`,
/// `η = e_1`, grouplike comonoid, and, for groups, `σ_p(e_a) = e_{a⁻¹}`.
pub fn constant_group_algebra(q: BraidParam, shape: Arc<FinCategory>, grade: impl Fn(usize) -> i64) -> Result<VectMonad> {
    let a = group_algebra_object(&shape, grade);
    let n = shape.num_morphisms();
    let e = shape.identity(0);
    let mul = Matrix::from_fn(n, n * n, |r, c| {
        if shape.compose(c / n, c % n) == Some(r) {
            int(1)
        } else {
            int(0)
        }
    });
    let aa = crate::vect::tensor_obj(&a, &a);
    let mu = VMorphism::new(aa, a.clone(), mul)?;
    let eta = VMorphism::new(
        VObject::unit(),
        a.clone(),
        Matrix::from_fn(n, 1, |r, _| if r == e { int(1) } else { int(0) }),
    )?;
    let p = VectMonad::group_monoid(q, shape.clone(), vec![a.clone(); n], |_, _| mu.clone(), eta)?.with_grouplike()?;
    if crate::cat::is_groupoid(&shape).is_err() {
        return Ok(p);
    }
    let inv = Matrix::from_fn(n, n, |r, c| {
        if shape.inverse_of(c) == Some(r) {
            int(1)
        } else {
            int(0)
        }
    });
    let s = VMorphism::new(a.clone(), a, inv)?;
    p.with_antipode(vec![s; n])
}

/// The trivial G-monoid: every `g(p) = K`, identity structure maps.
pub fn trivial_group_monoid(q: BraidParam, shape: Arc<FinCategory>) -> Result<VectMonad> {
    let k = VObject::unit();
    let id = VMorphism::identity(&k);
    let n = shape.num_morphisms();
    let p = VectMonad::group_monoid(q, shape.clone(), vec![k; n], |_, _| id.clone(), id.clone())?.with_grouplike()?;
    if crate::cat::is_groupoid(&shape).is_ok() {
        p.with_antipode(vec![id; n])
    } else {
        Ok(p)
    }
}

/// `a(x,y) = K`, all structure maps identities.
pub fn indiscrete_hopf_category(q: BraidParam, objects: &FinSet) -> Result<VectMonad> {
    let k = VObject::unit();
    let id = VMorphism::identity(&k);
    let p = VectMonad::enriched(q, objects, |_, _| k.clone(), |_, _, _| id.clone(), |_| id.clone())?.with_grouplike()?;
    let n = p.labels.len();
    p.with_antipode(vec![id; n])
}

/// The groupoid construction on objects `X` with every hom the group algebra
/// `K[G]`: `μ_{x,y,z}(e_a⊗e_b) = e_{ab}`, `η_x = e_1`, `σ(e_a) = e_{a⁻¹}`.
pub fn group_hom_category(q: BraidParam, objects: &FinSet, group: &FinCategory) -> Result<VectMonad> {
    let a = group_algebra_object(group, |_| 0);
    let n = group.num_morphisms();
    let mul = Matrix::from_fn(n, n * n, |r, c| {
        if group.compose(c / n, c % n) == Some(r) {
            int(1)
        } else {
            int(0)
        }
    });
    let mu = VMorphism::new(crate::vect::tensor_obj(&a, &a), a.clone(), mul)?;
    let e = group.identity(0);
    let eta = VMorphism::new(
        VObject::unit(),
        a.clone(),
        Matrix::from_fn(n, 1, |r, _| if r == e { int(1) } else { int(0) }),
    )?;
    let p = VectMonad::enriched(q, objects, |_, _| a.clone(), |_, _, _| mu.clone(), |_| eta.clone())?.with_grouplike()?;
    let inv = Matrix::from_fn(n, n, |r, c| if group.inverse_of(c) == Some(r) { int(1) } else { int(0) });
    let s = VMorphism::new(a.clone(), a, inv)?;
    let m = p.labels.len();
    p.with_antipode(vec![s; m])
}

/// The monoid `{1, z | z² = z}`.
pub fn idempotent_monoid() -> Arc<FinCategory> {
    Arc::new(FinCategory::one_object(&["1", "z"], "1", |a, b| a.max(b)).expect("monoid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FinCategory> {
        Arc::new(FinCategory::cyclic_group(2))
    }

    #[test]
    fn trivial_and_group_algebra_are_monads() {
        let t = trivial_group_monoid(BraidParam::one(), z2()).unwrap();
        assert!(check_monad(&t).unwrap().passed());
        let g = constant_group_algebra(BraidParam::one(), z2(), |_| 0).unwrap();
        let r = check_monad(&g).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked.len(), 3);
    }

    #[test]
    fn corrupted_multiplication_names_a_triple() {
        let mut g = constant_group_algebra(BraidParam::one(), z2(), |_| 0).unwrap();
        let m = g.mu[&(1, 1)].clone();
        let mut mat = m.matrix().clone();
        mat.set(0, 0, int(0));
        g.mu.insert((1, 1), VMorphism::new(m.dom().clone(), m.cod().clone(), mat).unwrap());
        let r = check_monad(&g).unwrap();
        let (law, at) = r.failure.unwrap();
        assert_eq!(law, "associativity");
        assert!(at.contains("g1"), "{at}");
    }

    #[test]
    fn grouplike_bimonoid() {
        let g = constant_group_algebra(BraidParam::int(2), z2(), |_| 0).unwrap();
        let r = check_opmonoidal(&g).unwrap();
        assert!(r.passed(), "{r:?}");
        let t = trivial_group_monoid(BraidParam::one(), z2()).unwrap();
        assert!(check_opmonoidal(&t).unwrap().passed());
        let h = indiscrete_hopf_category(BraidParam::one(), &FinSet::range(2)).unwrap();
        assert!(check_monad(&h).unwrap().passed());
        assert!(check_opmonoidal(&h).unwrap().passed());
    }

    #[test]
    fn swapped_delta_entry_breaks_coassociativity() {
        let mut g = constant_group_algebra(BraidParam::one(), z2(), |_| 0).unwrap();
        let c = g.comonoid.as_mut().unwrap();
        let d = c.delta[0].clone();
        let mut mat = d.matrix().clone();
        // e_0 ↦ e_0⊗e_1 instead of e_0⊗e_0
        mat.set(0, 0, int(0));
        mat.set(1, 0, int(1));
        c.delta[0] = VMorphism::new(d.dom().clone(), d.cod().clone(), mat).unwrap();
        let r = check_opmonoidal(&g).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn group_hom_category_is_a_bimonoid() {
        let p = group_hom_category(BraidParam::one(), &FinSet::range(2), &FinCategory::cyclic_group(2)).unwrap();
        assert!(check_monad(&p).unwrap().passed());
        let r = check_opmonoidal(&p).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
