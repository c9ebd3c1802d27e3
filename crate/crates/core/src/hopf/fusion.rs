//! Fusion cells of an opmonoidal monad on the induced monoidale, assembled
//! from the generic Span|V operations.

use crate::error::Result;
use crate::finset::pullback;
use crate::monoidale::{induced_monoidale, InducedMonoidale, SV};
use crate::spanv::{Cell1, Cell2, NonInvertible, Vect};

use super::{MonadCells, VectMonad};

/// A fusion cell with its domain elements decoded as pairs `(h, p)` of
/// morphisms of the shape (`h` outer, `p` inner), and its codomain elements
/// likewise as pairs.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub cell: Cell2<Vect>,
    pub from_pairs: Vec<(usize, usize)>,
    pub to_pairs: Vec<(usize, usize)>,
}

impl Fusion {
    /// Image of the domain pair `(h, p)`.
    pub fn image(&self, h: usize, p: usize) -> Option<(usize, usize)> {
        let i = self.from_pairs.iter().position(|&x| x == (h, p))?;
        Some(self.to_pairs[self.cell.map().map().at(i)])
    }

    pub fn component_at(&self, h: usize, p: usize) -> Option<&crate::vect::VMorphism> {
        let i = self.from_pairs.iter().position(|&x| x == (h, p))?;
        Some(self.cell.component(i))
    }
}

/// `f₂: f∘m ⇒ m∘(f⊗f)`, `h ↦ (t(h), (h, h))` with component `δ_h`.
pub fn binary_opmonoidal(sv: &SV, p: &VectMonad, c: &MonadCells, mon: &InducedMonoidale) -> Result<Cell2<Vect>> {
    let delta = &p
        .comonoid
        .as_ref()
        .ok_or_else(|| crate::error::Error::Invalid("no comonoid structure".into()))?
        .delta;
    let f = &c.t;
    let fm = sv.hcomp1(f, &mon.m)?;
    let ff = sv.tensor1(f, f);
    let mff = sv.hcomp1(&mon.m, &ff)?;
    let src = pullback(f.span(), mon.m.span())?;
    let dst = crate::finset::pullback_index(&pullback(mon.m.span(), ff.span())?);
    let n = f.apex().len();
    let mut map = Vec::new();
    let mut comps = Vec::new();
    for &h in &src.outer {
        map.push(dst[&(p.shape.tgt(h), h * n + h)]);
        comps.push(delta[h].clone());
    }
    sv.cell2(&fm, &mff, map, comps)
}

fn decode_domain(f: &Cell1<Vect>, inner: &Cell1<Vect>, m: &Cell1<Vect>, f1: &Cell1<Vect>, right: bool) -> Result<Vec<(usize, usize)>> {
    let outer = pullback(f.span(), inner.span())?;
    let mid = pullback(m.span(), f1.span())?;
    let n = f.apex().len();
    let k = f1.apex().len() / n.max(1);
    Ok(outer
        .outer
        .iter()
        .zip(&outer.inner)
        .map(|(&h, &j)| {
            let e = mid.inner[j];
            (h, if right { e % n } else { e / k })
        })
        .collect())
}

fn decode_target(m: &Cell1<Vect>, ff: &Cell1<Vect>, n: usize) -> Result<Vec<(usize, usize)>> {
    let pb = pullback(m.span(), ff.span())?;
    Ok(pb.inner.iter().map(|&e| (e / n, e % n)).collect())
}

/// `f∘(m∘(f⊗1)) ⇒ m∘(f⊗f)`:
/// associator, `f₂` whiskered by `f⊗1`, associator, the tensor interchange
/// `(f⊗f)∘(f⊗1) ⇒ (f∘f)⊗(f∘1)`, then `μ ⊗ ρ_f`.
pub fn left_fusion(p: &VectMonad) -> Result<Fusion> {
    let sv = p.spanv();
    let c = p.cells(&sv)?;
    let mon = induced_monoidale(&sv, c.x.carrier());
    let f = &c.t;
    let m = &mon.m;
    let i = sv.id1(&c.x);
    let f1 = sv.tensor1(f, &i);
    let inner = sv.hcomp1(m, &f1)?;
    let f2 = binary_opmonoidal(&sv, p, &c, &mon)?;
    let ff = sv.tensor1(f, f);
    let steps = [
        sv.inverse2(&sv.associator(f, m, &f1)?)?,
        sv.whisker_right(&f2, &f1)?,
        sv.associator(m, &ff, &f1)?,
        sv.whisker_left(m, &sv.tensor_interchange(f, f, f, &i)?)?,
        sv.whisker_left(m, &sv.tensor2(&c.mu, &sv.right_unitor(f)?))?,
    ];
    let cell = sv.vchain(&steps.iter().collect::<Vec<_>>())?;
    let n = f.apex().len();
    Ok(Fusion {
        from_pairs: decode_domain(f, &inner, m, &f1, false)?,
        to_pairs: decode_target(m, &ff, n)?,
        cell,
    })
}

/// The mirror image: `f∘(m∘(1⊗f)) ⇒ m∘(f⊗f)`, with `ρ_f ⊗ μ`, so that the
/// multiplication acts on the second factor: `(h, p) ↦ (h, h·p)`.
pub fn right_fusion(p: &VectMonad) -> Result<Fusion> {
    let sv = p.spanv();
    let c = p.cells(&sv)?;
    let mon = induced_monoidale(&sv, c.x.carrier());
    let f = &c.t;
    let m = &mon.m;
    let i = sv.id1(&c.x);
    let f1 = sv.tensor1(&i, f);
    let inner = sv.hcomp1(m, &f1)?;
    let f2 = binary_opmonoidal(&sv, p, &c, &mon)?;
    let ff = sv.tensor1(f, f);
    let steps = [
        sv.inverse2(&sv.associator(f, m, &f1)?)?,
        sv.whisker_right(&f2, &f1)?,
        sv.associator(m, &ff, &f1)?,
        sv.whisker_left(m, &sv.tensor_interchange(f, f, &i, f)?)?,
        sv.whisker_left(m, &sv.tensor2(&sv.right_unitor(f)?, &c.mu))?,
    ];
    let cell = sv.vchain(&steps.iter().collect::<Vec<_>>())?;
    let n = f.apex().len();
    Ok(Fusion {
        from_pairs: decode_domain(f, &inner, m, &f1, true)?,
        to_pairs: decode_target(m, &ff, n)?,
        cell,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HopfWitness {
    /// Two domain pairs with the same image.
    Collision { side: &'static str, first: (String, String), second: (String, String) },
    /// A codomain pair outside the image.
    Missed { side: &'static str, at: (String, String) },
    /// A singular component.
    Component { side: &'static str, at: (String, String), detail: String },
}

impl std::fmt::Display for HopfWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HopfWitness::Collision { side, first, second } => write!(
                f,
                "{side} fusion sends ({}, {}) and ({}, {}) to the same element",
                first.0, first.1, second.0, second.1
            ),
            HopfWitness::Missed { side, at } => write!(f, "{side} fusion misses ({}, {})", at.0, at.1),
            HopfWitness::Component { side, at, detail } => {
                write!(f, "{side} fusion component at ({}, {}) is singular: {detail}", at.0, at.1)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct HopfVerdict {
    pub left: Fusion,
    pub right: Fusion,
    pub witness: Option<HopfWitness>,
}

impl HopfVerdict {
    pub fn is_hopf(&self) -> bool {
        self.witness.is_none()
    }

    /// Determinants of the left fusion components, in domain order.
    pub fn determinants(&self) -> Vec<crate::linalg::Scalar> {
        self.left
            .cell
            .components()
            .iter()
            .map(|c| c.matrix().determinant().expect("square"))
            .collect()
    }
}

fn witness(p: &VectMonad, side: &'static str, fu: &Fusion, sv: &SV) -> Option<HopfWitness> {
    let name = |(h, q): (usize, usize)| (p.morphism_name(h), p.morphism_name(q));
    match sv.is_invertible2(&fu.cell) {
        Ok(()) => None,
        Err(NonInvertible::Collision { first, second }) => {
            let pos = |a: &crate::finset::Atom| fu.cell.from().apex().index_of(a).expect("domain atom");
            Some(HopfWitness::Collision {
                side,
                first: name(fu.from_pairs[pos(&first)]),
                second: name(fu.from_pairs[pos(&second)]),
            })
        }
        Err(NonInvertible::Missed(a)) => {
            let k = fu.cell.to().apex().index_of(&a).expect("codomain atom");
            Some(HopfWitness::Missed { side, at: name(fu.to_pairs[k]) })
        }
        Err(NonInvertible::Component { at, detail }) => {
            let k = fu.cell.from().apex().index_of(&at).expect("domain atom");
            Some(HopfWitness::Component { side, at: name(fu.from_pairs[k]), detail })
        }
    }
}

/// Hopf iff both fusion cells are invertible: bijective span maps and
/// invertible components.
pub fn is_hopf(p: &VectMonad) -> Result<HopfVerdict> {
    let sv = p.spanv();
    let left = left_fusion(p)?;
    let right = right_fusion(p)?;
    let w = witness(p, "left", &left, &sv).or_else(|| witness(p, "right", &right, &sv));
    Ok(HopfVerdict { left, right, witness: w })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cat::FinCategory;
    use crate::hopf::{constant_group_algebra, idempotent_monoid, trivial_group_monoid};
    use crate::linalg::{abs_is_one, int, Matrix};
    use crate::vect::{BraidParam, VMorphism, VObject};

    #[test]
    fn z2_fusion_is_a_permutation() {
        let shape = Arc::new(FinCategory::cyclic_group(2));
        let p = constant_group_algebra(BraidParam::one(), shape.clone(), |_| 0).unwrap();
        let v = is_hopf(&p).unwrap();
        assert!(v.is_hopf());
        for (h, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let hq = shape.compose(h, q).unwrap();
            assert_eq!(v.left.image(h, q), Some((hq, h)));
            assert_eq!(v.right.image(h, q), Some((h, hq)));
            // (g, k) ↦ (gk, g), evaluated on basis vectors
            let c = v.left.component_at(h, q).unwrap();
            let expected = Matrix::from_fn(4, 4, |r, col| {
                let (g, k) = (col / 2, col % 2);
                let target = shape.compose(g, k).unwrap() * 2 + g;
                if r == target {
                    int(1)
                } else {
                    int(0)
                }
            });
            assert_eq!(c.matrix(), &expected);
        }
        assert!(v.determinants().iter().all(abs_is_one));
    }

    #[test]
    fn idempotent_monoid_collides() {
        let p = trivial_group_monoid(BraidParam::one(), idempotent_monoid()).unwrap();
        let v = is_hopf(&p).unwrap();
        match v.witness.unwrap() {
            HopfWitness::Collision { side, first, second } => {
                assert_eq!(side, "left");
                assert_eq!(first.0, "z");
                assert_eq!(second.0, "z");
            }
            w => panic!("unexpected {w:?}"),
        }
    }

    #[test]
    fn singular_multiplication_is_a_component_witness() {
        let shape = Arc::new(FinCategory::cyclic_group(2));
        let k = VObject::unit();
        let zero = VMorphism::new(k.clone(), k.clone(), Matrix::zeros(1, 1)).unwrap();
        let id = VMorphism::identity(&k);
        let p = crate::hopf::VectMonad::group_monoid(
            BraidParam::one(),
            shape,
            vec![k.clone(), k.clone()],
            |g, f| if g == 1 && f == 1 { zero.clone() } else { id.clone() },
            id.clone(),
        )
        .unwrap()
        .with_grouplike()
        .unwrap();
        let v = is_hopf(&p).unwrap();
        assert!(matches!(v.witness, Some(HopfWitness::Component { .. })));
    }
}
