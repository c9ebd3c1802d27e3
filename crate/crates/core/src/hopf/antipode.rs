//! Antipodes for groupoid-shaped presentations: the componentwise axioms,
//! the same axioms as a composite of Span|V 2-cells, and an exact solver.

use crate::cat::is_groupoid;
use crate::error::{Error, Result};
use crate::finset::{Atom, FinSet, Span};
use crate::linalg::{int, solve, LinearSolution, Matrix, Scalar};
use crate::monoidale::SV;
use crate::spanv::{Cell1, Cell2, Vect};
use crate::vect::{tensor_mor, tensor_obj, VMorphism, VObject};

use super::{Kind, VectMonad};

/// The first failing antipode equation: morphism name, which equation
/// (1: `μ(1⊗σ)δ`, 2: `μ(σ⊗1)δ`), and the first differing entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeFailure {
    pub at: String,
    pub axiom: u8,
    pub detail: String,
}

impl std::fmt::Display for AntipodeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "antipode axiom {} fails at {}: {}", self.axiom, self.at, self.detail)
    }
}

fn inverse(p: &VectMonad, h: usize) -> Result<usize> {
    p.shape
        .inverse_of(h)
        .ok_or_else(|| Error::Invalid(format!("{} has no inverse", p.morphism_name(h))))
}

fn sides(p: &VectMonad, sigma: &[VMorphism], h: usize) -> Result<[(VMorphism, VMorphism); 2]> {
    let c = p.comonoid.as_ref().ok_or_else(|| Error::Invalid("no comonoid structure".into()))?;
    let hi = inverse(p, h)?;
    let (t, s) = (p.shape.tgt(h), p.shape.src(h));
    let id = VMorphism::identity(&p.labels[h]);
    let first = VMorphism::chain(&[&c.delta[h], &tensor_mor(&id, &sigma[h]), p.mu_at(h, hi)])?;
    let second = VMorphism::chain(&[&c.delta[h], &tensor_mor(&sigma[h], &id), p.mu_at(hi, h)])?;
    Ok([
        (first, p.eta[t].after(&c.eps[h])?),
        (second, p.eta[s].after(&c.eps[h])?),
    ])
}

fn first_entry_difference(a: &VMorphism, b: &VMorphism) -> Option<String> {
    a.matrix().first_difference(b.matrix()).map(|(i, j)| {
        format!("entry ({i},{j}) is {} but should be {}", a.matrix().get(i, j), b.matrix().get(i, j))
    })
}

/// `μ_{h,h⁻¹}∘(1⊗σ_h)∘δ_h = η_{t(h)}∘ε_h` and
/// `μ_{h⁻¹,h}∘(σ_h⊗1)∘δ_h = η_{s(h)}∘ε_h` for every `h`.
pub fn check_antipode_with(p: &VectMonad, sigma: &[VMorphism]) -> Result<Option<AntipodeFailure>> {
    for h in 0..p.labels.len() {
        for (k, (lhs, rhs)) in sides(p, sigma, h)?.iter().enumerate() {
            if let Some(detail) = first_entry_difference(lhs, rhs) {
                return Ok(Some(AntipodeFailure {
                    at: p.morphism_name(h),
                    axiom: k as u8 + 1,
                    detail,
                }));
            }
        }
    }
    Ok(None)
}

fn stored(p: &VectMonad) -> Result<&[VMorphism]> {
    p.antipode
        .as_deref()
        .ok_or_else(|| Error::Invalid("no antipode given".into()))
}

/// The hexagon for a G-monoid, for every `p ∈ G`.
pub fn check_antipode_group(p: &VectMonad) -> Result<Option<AntipodeFailure>> {
    if p.kind != Kind::GroupMonoid {
        return Err(Error::Invalid("not a G-monoid".into()));
    }
    check_antipode_with(p, stored(p)?)
}

/// The two squares of a Hopf V-category, for every pair `(p, q)`.
pub fn check_antipode_enriched(p: &VectMonad) -> Result<Option<AntipodeFailure>> {
    if p.kind != Kind::Enriched {
        return Err(Error::Invalid("not an enriched presentation".into()));
    }
    check_antipode_with(p, stored(p)?)
}

fn pair_cell(
    sv: &SV,
    p: &VectMonad,
    x: &crate::spanv::Cell0<Vect>,
    pairs: &[(usize, usize)],
    legs: impl Fn(usize, usize) -> (usize, usize),
) -> Result<Cell1<Vect>> {
    let names = p.shape.morphisms();
    let apex = FinSet::new(pairs.iter().map(|&(h, k)| Atom::pair(names.atom(h), names.atom(k))).collect())?;
    let (left, right): (Vec<usize>, Vec<usize>) = pairs.iter().map(|&(h, k)| legs(h, k)).unzip();
    let span = Span::from_indices(x.carrier(), x.carrier(), &apex, left, right)?;
    let labels = pairs.iter().map(|&(h, k)| tensor_obj(&p.labels[h], &p.labels[k])).collect();
    sv.cell1(x, x, span, labels)
}

/// Both sides of one antipode axiom as 2-cells between the same 1-cells.
#[derive(Clone, Debug)]
pub struct AxiomCells {
    pub via_antipode: Cell2<Vect>,
    pub via_unit: Cell2<Vect>,
}

/// The first antipode axiom as a diagram of 2-cells in Span|V:
/// along the bottom `δ`, the diagonal `h ↦ (h,h)`, `(h,k) ↦ (h,k⁻¹)` with
/// `1⊗σ_k`, and composition with `μ`; along the top `ε`, the target leg, and
/// the identities with `η`. `second = true` gives the mirrored axiom.
pub fn antipode_axiom_cells(p: &VectMonad, sigma: &[VMorphism], second: bool) -> Result<AxiomCells> {
    let sv = p.spanv();
    let cells = p.cells(&sv)?;
    let c = p.comonoid.as_ref().ok_or_else(|| Error::Invalid("no comonoid structure".into()))?;
    let d = &p.shape;
    let x = &cells.x;
    let n = d.num_morphisms();
    let leg = |h: usize| if second { d.src(h) } else { d.tgt(h) };
    let diag_span = Span::from_indices(
        x.carrier(),
        x.carrier(),
        d.morphisms(),
        (0..n).map(leg).collect(),
        (0..n).map(leg).collect(),
    )?;
    let a = sv.cell1(x, x, diag_span.clone(), p.labels.clone())?;
    let b = sv.cell1(x, x, diag_span.clone(), vec![VObject::unit(); n])?;
    let a2 = sv.cell1(x, x, diag_span, p.labels.iter().map(|l| tensor_obj(l, l)).collect())?;
    let i = sv.id1(x);

    let mut spread = Vec::new();
    let mut composable = Vec::new();
    for h in 0..n {
        for k in 0..n {
            let ok = if second { d.tgt(h) == d.tgt(k) } else { d.src(h) == d.src(k) };
            if ok {
                spread.push((h, k));
            }
            if d.src(h) == d.tgt(k) {
                composable.push((h, k));
            }
        }
    }
    let dd = pair_cell(&sv, p, x, &spread, |h, k| {
        if second {
            (d.src(h), d.src(k))
        } else {
            (d.tgt(h), d.tgt(k))
        }
    })?;
    let e = pair_cell(&sv, p, x, &composable, |h, k| (d.tgt(h), d.src(k)))?;
    let pos = |v: &[(usize, usize)], pr: (usize, usize)| v.iter().position(|&z| z == pr).expect("pair present");

    let to_b = sv.cell2(&a, &b, (0..n).collect(), c.eps.clone())?;
    let to_i = sv.cell2(&b, &i, (0..n).map(leg).collect(), vec![VMorphism::identity(&VObject::unit()); n])?;
    let via_unit = sv.vchain(&[&to_b, &to_i, &cells.eta])?;

    let split = sv.cell2(&a, &a2, (0..n).collect(), c.delta.clone())?;
    let spread_cell = sv.cell2(
        &a2,
        &dd,
        (0..n).map(|h| pos(&spread, (h, h))).collect(),
        p.labels.iter().map(|l| VMorphism::identity(&tensor_obj(l, l))).collect(),
    )?;
    let mut map = Vec::new();
    let mut comps = Vec::new();
    for &(h, k) in &spread {
        if second {
            map.push(pos(&composable, (inverse(p, h)?, k)));
            comps.push(tensor_mor(&sigma[h], &VMorphism::identity(&p.labels[k])));
        } else {
            map.push(pos(&composable, (h, inverse(p, k)?)));
            comps.push(tensor_mor(&VMorphism::identity(&p.labels[h]), &sigma[k]));
        }
    }
    let flip = sv.cell2(&dd, &e, map, comps)?;
    let compose = sv.cell2(
        &e,
        &cells.t,
        composable.iter().map(|&(h, k)| d.compose(h, k).expect("composable")).collect(),
        composable.iter().map(|&(h, k)| p.mu_at(h, k).clone()).collect(),
    )?;
    let via_antipode = sv.vchain(&[&split, &spread_cell, &flip, &compose])?;
    Ok(AxiomCells { via_antipode, via_unit })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuoidalAntipodeReport {
    /// First failing diagram (1 or 2) and where it differs.
    pub failure: Option<(u8, String)>,
    /// Whether the componentwise check reaches the same verdict.
    pub agrees_with_componentwise: bool,
}

impl DuoidalAntipodeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_antipode_duoidal_with(p: &VectMonad, sigma: &[VMorphism]) -> Result<DuoidalAntipodeReport> {
    let sv = p.spanv();
    let mut failure = None;
    for (k, second) in [(1u8, false), (2, true)] {
        let cells = antipode_axiom_cells(p, sigma, second)?;
        if let Some(d) = sv.diff2(&cells.via_antipode, &cells.via_unit) {
            failure = Some((k, d.to_string()));
            break;
        }
    }
    let componentwise = check_antipode_with(p, sigma)?.is_none();
    Ok(DuoidalAntipodeReport {
        agrees_with_componentwise: componentwise == failure.is_none(),
        failure,
    })
}

pub fn check_antipode_duoidal(p: &VectMonad) -> Result<DuoidalAntipodeReport> {
    check_antipode_duoidal_with(p, stored(p)?)
}

/// Why no antipode was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoAntipode {
    /// The shape is not a groupoid.
    NotInvertible(String),
    /// The equations at this morphism have no solution.
    Inconsistent(String),
    /// The equations at this morphism have a solution space of this dimension.
    Ambiguous(String, usize),
}

impl std::fmt::Display for NoAntipode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoAntipode::NotInvertible(h) => write!(f, "{h} has no inverse in the shape"),
            NoAntipode::Inconsistent(h) => write!(f, "the antipode equations at {h} have no solution"),
            NoAntipode::Ambiguous(h, k) => write!(f, "the antipode equations at {h} leave {k} degrees of freedom"),
        }
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

/// Solves both antipode equations for each `σ_h` as one exact linear
/// system in the entries of `σ_h`.
pub fn compute_antipode(p: &VectMonad) -> Result<std::result::Result<Vec<VMorphism>, NoAntipode>> {
    if let Err(h) = is_groupoid(&p.shape) {
        return Ok(Err(NoAntipode::NotInvertible(h.to_string())));
    }
    let n = p.labels.len();
    let mut out = Vec::with_capacity(n);
    for h in 0..n {
        let hi = inverse(p, h)?;
        let (rows, cols) = (p.labels[hi].dim(), p.labels[h].dim());
        let unknowns = rows * cols;
        // probe the linear map on each basis matrix; other σ entries are unused
        let mut probe: Vec<VMorphism> = p
            .labels
            .iter()
            .enumerate()
            .map(|(k, l)| VMorphism::zero(l, &p.labels[p.shape.inverse_of(k).unwrap_or(k)]))
            .collect();
        let mut columns = Vec::with_capacity(unknowns);
        let mut rhs = Vec::new();
        for v in 0..unknowns {
            probe[h] = VMorphism::new(
                p.labels[h].clone(),
                p.labels[hi].clone(),
                Matrix::from_fn(rows, cols, |i, j| if i * cols + j == v { int(1) } else { int(0) }),
            )?;
            let [(a, ra), (b, rb)] = sides(p, &probe, h)?;
            let mut col = flatten(a.matrix());
            col.extend(flatten(b.matrix()));
            columns.push(col);
            if rhs.is_empty() {
                rhs = flatten(ra.matrix());
                rhs.extend(flatten(rb.matrix()));
            }
        }
        if unknowns == 0 {
            out.push(VMorphism::zero(&p.labels[h], &p.labels[hi]));
            continue;
        }
        let eqs = columns[0].len();
        let a = Matrix::from_fn(eqs, unknowns, |i, j| columns[j][i].clone());
        match solve(&a, &rhs)? {
            LinearSolution::Unique(x) => out.push(VMorphism::new(
                p.labels[h].clone(),
                p.labels[hi].clone(),
                Matrix::from_fn(rows, cols, |i, j| x[i * cols + j].clone()),
            )?),
            LinearSolution::Inconsistent(_) => return Ok(Err(NoAntipode::Inconsistent(p.morphism_name(h)))),
            LinearSolution::Many(_, k) => return Ok(Err(NoAntipode::Ambiguous(p.morphism_name(h), k))),
        }
    }
    Ok(Ok(out))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cat::FinCategory;
    use crate::hopf::{constant_group_algebra, group_hom_category, idempotent_monoid, indiscrete_hopf_category, trivial_group_monoid};
    use crate::vect::BraidParam;

    #[test]
    fn z2_inversion_antipode() {
        let p = constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2)), |_| 0).unwrap();
        assert_eq!(check_antipode_group(&p).unwrap(), None);
        let r = check_antipode_duoidal(&p).unwrap();
        assert!(r.passed() && r.agrees_with_componentwise);
        let s = compute_antipode(&p).unwrap().unwrap();
        assert_eq!(&s, p.antipode.as_ref().unwrap());
    }

    #[test]
    fn z3_identity_is_not_an_antipode() {
        let p = constant_group_algebra(BraidParam::one(), Arc::new(FinCategory::cyclic_group(3)), |_| 0).unwrap();
        let ids: Vec<VMorphism> = p.labels.iter().map(VMorphism::identity).collect();
        let f = check_antipode_with(&p, &ids).unwrap().unwrap();
        assert_eq!(f.axiom, 1);
        let r = check_antipode_duoidal_with(&p, &ids).unwrap();
        assert!(!r.passed());
        assert!(r.agrees_with_componentwise);
        let s = compute_antipode(&p).unwrap().unwrap();
        assert_eq!(&s, p.antipode.as_ref().unwrap());
    }

    #[test]
    fn trivial_and_indiscrete() {
        let t = trivial_group_monoid(BraidParam::one(), Arc::new(FinCategory::cyclic_group(2))).unwrap();
        assert_eq!(check_antipode_group(&t).unwrap(), None);
        assert_eq!(compute_antipode(&t).unwrap().unwrap(), t.antipode.clone().unwrap());
        let h = indiscrete_hopf_category(BraidParam::one(), &FinSet::range(2)).unwrap();
        assert_eq!(check_antipode_enriched(&h).unwrap(), None);
        assert!(check_antipode_duoidal(&h).unwrap().passed());
    }

    #[test]
    fn group_hom_category_and_perturbation() {
        let p = group_hom_category(BraidParam::int(2), &FinSet::range(2), &FinCategory::cyclic_group(2)).unwrap();
        assert_eq!(check_antipode_enriched(&p).unwrap(), None);
        assert!(check_antipode_duoidal(&p).unwrap().passed());
        let mut s = p.antipode.clone().unwrap();
        s[1] = s[1].scale(&int(2));
        let f = check_antipode_with(&p, &s).unwrap().unwrap();
        assert_eq!(f.at, p.morphism_name(1));
        let r = check_antipode_duoidal_with(&p, &s).unwrap();
        assert!(!r.passed() && r.agrees_with_componentwise);
    }

    #[test]
    fn non_group_has_no_antipode() {
        let t = trivial_group_monoid(BraidParam::one(), idempotent_monoid()).unwrap();
        assert!(matches!(compute_antipode(&t).unwrap(), Err(NoAntipode::NotInvertible(_))));
    }
}
