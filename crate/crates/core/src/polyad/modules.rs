//! Modules and representations of a finite polyad, enumerated directly and
//! as restricted Eilenberg–Moore algebras of the induced monad on
//! `Span|Cat((1,𝟏),(D⁰,C))`.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::cat::{CategoryTable, FinCategory, FunctorData, NatTransData};
use crate::error::{Error, Result};
use crate::finset::{pullback, FinSet, Span};
use crate::spanv::{CatBackend, Cell0, Cell1, Cell2};

use super::Polyad;

/// Where the carrier objects and action morphisms of an algebra live.
/// Carrier slot `a` is an object of `C_{slots[a]}`; action `(g, a, b)` is a
/// morphism `d(g)W_a → W_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionShape {
    pub slots: Vec<usize>,
    pub actions: Vec<(usize, usize, usize)>,
}

impl ActionShape {
    /// One slot per object, one action `ϱ_f : d(f)q_{s f} → q_{t f}` per
    /// morphism.
    pub fn modules(shape: &FinCategory) -> Self {
        ActionShape {
            slots: (0..shape.num_objects()).collect(),
            actions: (0..shape.num_morphisms()).map(|f| (f, shape.src(f), shape.tgt(f))).collect(),
        }
    }

    /// One slot `W_k ∈ C_{t k}` per morphism, one action
    /// `ϱ_{g,k} : d(g)W_k → W_{g·k}` per composable pair.
    pub fn representations(shape: &FinCategory) -> Self {
        ActionShape {
            slots: (0..shape.num_morphisms()).map(|k| shape.tgt(k)).collect(),
            actions: shape
                .composable_pairs()
                .into_iter()
                .map(|(g, k)| (g, k, shape.compose(g, k).expect("composable")))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionObject {
    pub carrier: Vec<usize>,
    pub action: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionMorphism {
    pub src: usize,
    pub tgt: usize,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ActionCategory {
    pub shape: ActionShape,
    pub objects: Vec<ActionObject>,
    pub morphisms: Vec<ActionMorphism>,
    pub category: FinCategory,
}

fn slot_categories(p: &Polyad<CatBackend>, s: &ActionShape) -> Vec<Arc<FinCategory>> {
    s.slots.iter().map(|&x| p.mons[x].category().clone()).collect()
}

/// Componentwise composition; the result is a category by construction.
fn assemble(
    cats: &[Arc<FinCategory>],
    shape: ActionShape,
    objects: Vec<ActionObject>,
    morphisms: Vec<ActionMorphism>,
) -> Result<ActionCategory> {
    let index: HashMap<&ActionMorphism, usize> = morphisms.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = morphisms.len();
    let mut composition = vec![None; n * n];
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, f) in morphisms.iter().enumerate() {
            if f.tgt != g.src {
                continue;
            }
            let components = g
                .components
                .iter()
                .zip(&f.components)
                .zip(cats)
                .map(|((&b, &a), c)| c.compose(b, a).expect("components compose"))
                .collect();
            let gf = ActionMorphism {
                src: f.src,
                tgt: g.tgt,
                components,
            };
            let k = index
                .get(&gf)
                .ok_or_else(|| Error::Invalid("composite of module morphisms is missing".into()))?;
            composition[gi * n + fi] = Some(*k);
        }
    }
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let id = ActionMorphism {
                src: i,
                tgt: i,
                components: o.carrier.iter().zip(cats).map(|(&w, c)| c.identity(w)).collect(),
            };
            index.get(&id).copied().ok_or_else(|| Error::Invalid("identity is missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let category = FinCategory::new(CategoryTable {
        objects: FinSet::range(objects.len()),
        morphisms: FinSet::range(n),
        src: morphisms.iter().map(|m| m.src).collect(),
        tgt: morphisms.iter().map(|m| m.tgt).collect(),
        identities,
        composition,
    })?;
    Ok(ActionCategory {
        shape,
        objects,
        morphisms,
        category,
    })
}

/// All algebras of the given action shape with their morphisms, by search
/// over carriers and hom-sets.
pub fn enumerate_actions(p: &Polyad<CatBackend>, shape: ActionShape) -> Result<ActionCategory> {
    let d = &p.shape;
    let cats = slot_categories(p, &shape);
    let by_start: HashMap<(usize, usize), usize> =
        shape.actions.iter().enumerate().map(|(j, &(g, a, _))| ((g, a), j)).collect();
    let laws_hold = |carrier: &[usize], rho: &[usize]| {
        for (j2, &(h, a, b)) in shape.actions.iter().enumerate() {
            for (j1, &(g, b1, c)) in shape.actions.iter().enumerate() {
                if b1 != b {
                    continue;
                }
                let Some(gh) = d.compose(g, h) else { continue };
                let Some(&j3) = by_start.get(&(gh, a)) else { return false };
                let cat = &cats[c];
                let mu = p.mu_at(g, h).expect("composable").component(carrier[a]);
                let lhs = cat.compose(rho[j3], mu);
                let rhs = cat.compose(rho[j1], p.d(g).on_morphism(rho[j2]));
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
            }
        }
        shape.actions.iter().enumerate().all(|(j, &(g, a, b))| {
            if !d.is_identity(g) {
                return true;
            }
            let x = d.src(g);
            a == b && cats[a].compose(rho[j], p.eta_at(x).component(carrier[a])) == Some(cats[a].identity(carrier[a]))
        })
    };

    let mut objects = Vec::new();
    let carriers = cats.iter().map(|c| 0..c.num_objects()).multi_cartesian_product();
    for carrier in with_empty(carriers, cats.is_empty()) {
        let homs = shape.actions.iter().map(|&(g, a, b)| {
            let from = p.d(g).on_object(carrier[a]);
            cats[b].hom(from, carrier[b])
        });
        for rho in with_empty(homs.multi_cartesian_product(), shape.actions.is_empty()) {
            if laws_hold(&carrier, &rho) {
                objects.push(ActionObject {
                    carrier: carrier.clone(),
                    action: rho,
                });
            }
        }
    }

    let mut morphisms = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        for (k, o2) in objects.iter().enumerate() {
            let homs = cats.iter().enumerate().map(|(a, c)| c.hom(o.carrier[a], o2.carrier[a]));
            for chi in with_empty(homs.multi_cartesian_product(), cats.is_empty()) {
                let natural = shape.actions.iter().enumerate().all(|(j, &(g, a, b))| {
                    cats[b].compose(chi[b], o.action[j]) == cats[b].compose(o2.action[j], p.d(g).on_morphism(chi[a]))
                });
                if natural {
                    morphisms.push(ActionMorphism {
                        src: i,
                        tgt: k,
                        components: chi,
                    });
                }
            }
        }
    }
    assemble(&cats, shape, objects, morphisms)
}

/// `multi_cartesian_product` of zero factors yields nothing; the empty
/// product has one element.
fn with_empty<I: Iterator<Item = Vec<usize>>>(it: I, empty: bool) -> Box<dyn Iterator<Item = Vec<usize>>>
where
    I: 'static,
{
    if empty {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(it)
    }
}

pub fn enumerate_modules(p: &Polyad<CatBackend>) -> Result<ActionCategory> {
    enumerate_actions(p, ActionShape::modules(&p.shape))
}

pub fn enumerate_representations(p: &Polyad<CatBackend>) -> Result<ActionCategory> {
    enumerate_actions(p, ActionShape::representations(&p.shape))
}

/// An isomorphism of categories given by index maps on objects and
/// morphisms, in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub objects: (usize, usize),
    pub morphisms: (usize, usize),
    pub forward: (Vec<usize>, Vec<usize>),
    pub backward: (Vec<usize>, Vec<usize>),
    /// Both maps are functors and mutually inverse.
    pub verified: bool,
}

fn is_functor(c: &FinCategory, d: &FinCategory, objs: &[usize], mors: &[usize]) -> bool {
    let boundary = (0..c.num_morphisms()).all(|f| d.src(mors[f]) == objs[c.src(f)] && d.tgt(mors[f]) == objs[c.tgt(f)]);
    let ids = (0..c.num_objects()).all(|x| mors[c.identity(x)] == d.identity(objs[x]));
    let comp = c
        .composable_pairs()
        .into_iter()
        .all(|(g, f)| d.compose(mors[g], mors[f]) == Some(mors[c.compose(g, f).expect("composable")]));
    boundary && ids && comp
}

fn compare(a: &ActionCategory, b: &ActionCategory) -> Comparison {
    let find = |xs: &[ActionObject], x: &ActionObject| xs.iter().position(|y| y == x);
    let objs = |from: &ActionCategory, to: &ActionCategory| -> Option<Vec<usize>> {
        from.objects.iter().map(|o| find(&to.objects, o)).collect()
    };
    let mors = |from: &ActionCategory, to: &ActionCategory, om: &[usize]| -> Option<Vec<usize>> {
        from.morphisms
            .iter()
            .map(|m| {
                let image = ActionMorphism {
                    src: om[m.src],
                    tgt: om[m.tgt],
                    components: m.components.clone(),
                };
                to.morphisms.iter().position(|y| *y == image)
            })
            .collect()
    };
    let counts = Comparison {
        objects: (a.objects.len(), b.objects.len()),
        morphisms: (a.morphisms.len(), b.morphisms.len()),
        forward: (Vec::new(), Vec::new()),
        backward: (Vec::new(), Vec::new()),
        verified: false,
    };
    let (Some(fo), Some(bo)) = (objs(a, b), objs(b, a)) else { return counts };
    let (Some(fm), Some(bm)) = (mors(a, b, &fo), mors(b, a, &bo)) else { return counts };
    let inverse = |f: &[usize], g: &[usize]| f.iter().enumerate().all(|(i, &j)| g[j] == i);
    let verified = is_functor(&a.category, &b.category, &fo, &fm)
        && is_functor(&b.category, &a.category, &bo, &bm)
        && inverse(&fo, &bo)
        && inverse(&bo, &fo)
        && inverse(&fm, &bm)
        && inverse(&bm, &fm);
    Comparison {
        forward: (fo, fm),
        backward: (bo, bm),
        verified,
        ..counts
    }
}

/// The induced monad `T∘(−)` on 1-cells `Q: 1 → X` restricted to spans
/// `D⁰ ← A → 1` with the given left leg, and algebra structure maps with
/// span map among `r_candidates`.
struct Restricted<'a> {
    p: &'a Polyad<CatBackend>,
    one: Cell0<CatBackend>,
    terminal: Arc<FinCategory>,
    apex: FinSet,
    leg: Vec<usize>,
}

impl Restricted<'_> {
    fn q(&self, carrier: &[usize]) -> Result<Cell1<CatBackend>> {
        let span = Span::from_indices(self.one.carrier(), self.p.x.carrier(), &self.apex, self.leg.clone(), vec![0; self.leg.len()])?;
        let labels = carrier
            .iter()
            .zip(&self.leg)
            .map(|(&w, &x)| FunctorData::point(&self.terminal, self.p.mons[x].category(), w))
            .collect();
        self.p.sv.cell1(&self.one, &self.p.x, span, labels)
    }

    fn is_algebra(&self, q: &Cell1<CatBackend>, rho: &Cell2<CatBackend>) -> Result<bool> {
        let sv = &self.p.sv;
        let t = &self.p.t;
        let lhs = sv.vcomp2(rho, &sv.whisker_right(&self.p.mu, q)?)?;
        let rhs = sv.vchain(&[&sv.associator(t, t, q)?, &sv.whisker_left(t, rho)?, rho])?;
        if sv.diff2(&lhs, &rhs).is_some() {
            return Ok(false);
        }
        let unit = sv.vchain(&[&sv.inverse2(&sv.left_unitor(q)?)?, &sv.whisker_right(&self.p.eta, q)?, rho])?;
        Ok(sv.diff2(&unit, &sv.id2(q)).is_none())
    }

    /// Algebras `(Q, ϱ)` as 2-cells, over all carriers, span maps and
    /// components accepted by the constructors.
    fn algebras(&self, r_candidates: &[Vec<usize>]) -> Result<Vec<(Cell1<CatBackend>, Cell2<CatBackend>)>> {
        let sv = &self.p.sv;
        let cats: Vec<_> = self.leg.iter().map(|&x| self.p.mons[x].category().clone()).collect();
        let mut out = Vec::new();
        for carrier in with_empty(cats.iter().map(|c| 0..c.num_objects()).multi_cartesian_product(), cats.is_empty()) {
            let q = self.q(&carrier)?;
            let tq = sv.hcomp1(&self.p.t, &q)?;
            for r in r_candidates {
                let candidates: Vec<Vec<NatTransData>> = (0..tq.apex().len())
                    .map(|i| {
                        let c = &cats[r[i]];
                        (0..c.num_morphisms())
                            .filter_map(|m| NatTransData::new(tq.label(i).clone(), q.label(r[i]).clone(), vec![m]).ok())
                            .collect()
                    })
                    .collect();
                let empty = candidates.is_empty();
                for comps in with_empty_nat(candidates.into_iter().multi_cartesian_product(), empty) {
                    let Ok(rho) = sv.cell2(&tq, &q, r.clone(), comps) else { break };
                    if self.is_algebra(&q, &rho)? {
                        out.push((q.clone(), rho));
                    }
                }
            }
        }
        Ok(out)
    }

    fn morphisms(&self, algebras: &[(Cell1<CatBackend>, Cell2<CatBackend>)]) -> Result<Vec<(usize, usize, Cell2<CatBackend>)>> {
        let sv = &self.p.sv;
        let identity: Vec<usize> = (0..self.apex.len()).collect();
        let mut out = Vec::new();
        for (i, (q, rho)) in algebras.iter().enumerate() {
            for (k, (q2, rho2)) in algebras.iter().enumerate() {
                let candidates: Vec<Vec<NatTransData>> = (0..self.apex.len())
                    .map(|a| {
                        let n = self.p.mons[self.leg[a]].category().num_morphisms();
                        (0..n)
                            .filter_map(|m| NatTransData::new(q.label(a).clone(), q2.label(a).clone(), vec![m]).ok())
                            .collect()
                    })
                    .collect();
                let empty = candidates.is_empty();
                for comps in with_empty_nat(candidates.into_iter().multi_cartesian_product(), empty) {
                    let chi = sv.cell2(q, q2, identity.clone(), comps)?;
                    let lhs = sv.vcomp2(&chi, rho)?;
                    let rhs = sv.vcomp2(rho2, &sv.whisker_left(&self.p.t, &chi)?)?;
                    if sv.diff2(&lhs, &rhs).is_none() {
                        out.push((i, k, chi));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn with_empty_nat<I: Iterator<Item = Vec<NatTransData>> + 'static>(
    it: I,
    empty: bool,
) -> Box<dyn Iterator<Item = Vec<NatTransData>>> {
    if empty {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(it)
    }
}

/// Reads algebras and their morphisms back as action data: the action of
/// `(g, a)` is the component of `ϱ` at the pair `(g, a)` of `T∘Q`.
fn decode(
    p: &Polyad<CatBackend>,
    shape: ActionShape,
    algebras: &[(Cell1<CatBackend>, Cell2<CatBackend>)],
    morphisms: &[(usize, usize, Cell2<CatBackend>)],
) -> Result<ActionCategory> {
    let cats = slot_categories(p, &shape);
    let by_start: HashMap<(usize, usize), usize> =
        shape.actions.iter().enumerate().map(|(j, &(g, a, _))| ((g, a), j)).collect();
    let mut objects = Vec::new();
    for (q, rho) in algebras {
        let pb = pullback(p.t.span(), q.span())?;
        let mut action = vec![usize::MAX; shape.actions.len()];
        for (i, (&g, &a)) in pb.outer.iter().zip(&pb.inner).enumerate() {
            let j = by_start[&(g, a)];
            if rho.map().map().at(i) != shape.actions[j].2 {
                return Err(Error::Invalid("algebra span map differs from the action shape".into()));
            }
            action[j] = rho.component(i).component(0);
        }
        objects.push(ActionObject {
            carrier: q.labels().iter().map(|f| f.on_object(0)).collect(),
            action,
        });
    }
    let morphisms = morphisms
        .iter()
        .map(|(i, k, chi)| ActionMorphism {
            src: *i,
            tgt: *k,
            components: chi.components().iter().map(|n| n.component(0)).collect(),
        })
        .collect();
    assemble(&cats, shape, objects, morphisms)
}

fn restricted(p: &Polyad<CatBackend>, leg: Vec<usize>) -> Result<Restricted<'_>> {
    let terminal = Arc::new(FinCategory::terminal());
    Ok(Restricted {
        p,
        one: Cell0::new(FinSet::singleton(), vec![terminal.clone()])?,
        terminal,
        apex: FinSet::range(leg.len()),
        leg,
    })
}

/// Algebras on spans `D⁰ = D⁰ → 1`; every span map `T∘Q → Q` is tried and
/// the 2-cell constructor keeps those over `D⁰`.
pub fn em_algebras_restricted(p: &Polyad<CatBackend>) -> Result<(ActionCategory, Comparison)> {
    let d = &p.shape;
    let k = d.num_objects();
    let ctx = restricted(p, (0..k).collect())?;
    let size = pullback(p.t.span(), ctx.q(&vec![0; k])?.span())?.outer.len();
    let rs: Vec<Vec<usize>> = with_empty((0..size).map(|_| 0..k).multi_cartesian_product(), size == 0).collect();
    let algebras = ctx.algebras(&rs)?;
    let morphisms = ctx.morphisms(&algebras)?;
    let em = decode(p, ActionShape::modules(d), &algebras, &morphisms)?;
    let direct = enumerate_modules(p)?;
    let c = compare(&direct, &em);
    Ok((em, c))
}

/// Algebras on spans `D⁰ ←t D¹ → 1` with structure span map the
/// composition `(g, k) ↦ g·k`, and morphisms over the identity span map.
pub fn em_representations_restricted(p: &Polyad<CatBackend>) -> Result<(ActionCategory, Comparison)> {
    let d = &p.shape;
    let ctx = restricted(p, (0..d.num_morphisms()).map(|k| d.tgt(k)).collect())?;
    let pb = pullback(p.t.span(), ctx.q(&vec![0; d.num_morphisms()])?.span())?;
    let r: Vec<usize> = pb
        .outer
        .iter()
        .zip(&pb.inner)
        .map(|(&g, &k)| d.compose(g, k).expect("composable"))
        .collect();
    let algebras = ctx.algebras(&[r])?;
    let morphisms = ctx.morphisms(&algebras)?;
    let em = decode(p, ActionShape::representations(d), &algebras, &morphisms)?;
    let direct = enumerate_representations(p)?;
    let c = compare(&direct, &em);
    Ok((em, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinMonoidalCategory;
    use crate::hopf::idempotent_monoid;
    use crate::polyad::{discrete_z2_polyad, translation_polyad};

    fn trivial() -> Polyad<CatBackend> {
        let c = FinMonoidalCategory::terminal();
        let id = FunctorData::identity(c.category());
        Polyad::finite(
            Arc::new(FinCategory::terminal()),
            vec![c],
            vec![id.clone()],
            |_, _| NatTransData::identity(&id),
            |_| NatTransData::identity(&id),
        )
        .unwrap()
    }

    #[test]
    fn trivial_polyad_has_one_module() {
        let m = enumerate_modules(&trivial()).unwrap();
        assert_eq!((m.objects.len(), m.morphisms.len()), (1, 1));
        let (em, c) = em_algebras_restricted(&trivial()).unwrap();
        assert_eq!((em.objects.len(), em.morphisms.len()), (1, 1));
        assert!(c.verified);
    }

    #[test]
    fn discrete_shape_gives_product_of_object_sets() {
        let objs = FinSet::from_names(&["x", "y"]).unwrap();
        let shape = Arc::new(FinCategory::discrete(&objs));
        let z2 = FinSet::from_names(&["0", "1"]).unwrap();
        let c = FinMonoidalCategory::discrete_monoid(&z2, 0, |a, b| (a + b) % 2).unwrap();
        let id = FunctorData::identity(c.category());
        let p = Polyad::finite(
            shape,
            vec![c.clone(), c],
            vec![id.clone(); 2],
            |_, _| NatTransData::identity(&id),
            |_| NatTransData::identity(&id),
        )
        .unwrap();
        let m = enumerate_modules(&p).unwrap();
        assert_eq!(m.objects.len(), 4);
        assert_eq!(m.morphisms.len(), 4);
    }

    #[test]
    fn restricted_algebras_match_modules() {
        for p in [
            discrete_z2_polyad(Arc::new(FinCategory::cyclic_group(2))).unwrap(),
            discrete_z2_polyad(idempotent_monoid()).unwrap(),
            translation_polyad().unwrap(),
        ] {
            let (em, c) = em_algebras_restricted(&p).unwrap();
            assert!(c.verified, "{c:?}");
            assert_eq!(c.objects.0, c.objects.1);
            assert!(!em.objects.is_empty());
            let (_, c) = em_representations_restricted(&p).unwrap();
            assert!(c.verified, "{c:?}");
        }
    }

    #[test]
    fn translation_modules() {
        // each carrier object determines the action uniquely
        let m = enumerate_modules(&translation_polyad().unwrap()).unwrap();
        assert_eq!(m.objects.len(), 2);
        assert_eq!(m.morphisms.len(), 4);
    }
}
