//! Finite-dimensional Z-graded rational vector spaces with a grade-weighted
//! braiding. The tensor product is strict: objects compare by their grade
//! sequence, so `(a⊗b)⊗c` and `a⊗(b⊗c)` are the same object and `K⊗a = a`.
//! Basis labels are carried along for display and serialization only.

use std::fmt;

use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::finset::Atom;
use crate::linalg::{InverseWitness, Matrix, Scalar};

#[derive(Clone)]
pub struct VObject {
    basis: Vec<(Atom, i64)>,
}

impl VObject {
    pub fn new(basis: Vec<(Atom, i64)>) -> Result<Self> {
        for (i, (a, _)) in basis.iter().enumerate() {
            if basis[..i].iter().any(|(b, _)| b == a) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        Ok(VObject { basis })
    }

    /// An ungraded space with the given basis labels.
    pub fn ungraded(labels: &[&str]) -> Self {
        Self::new(labels.iter().map(|l| (Atom::name(l), 0)).collect()).expect("distinct labels")
    }

    pub fn graded(basis: &[(&str, i64)]) -> Self {
        Self::new(basis.iter().map(|(l, g)| (Atom::name(l), *g)).collect())
            .expect("distinct labels")
    }

    /// The monoidal unit: one basis vector of grade zero.
    pub fn unit() -> Self {
        VObject {
            basis: vec![(Atom::unit(), 0)],
        }
    }

    pub fn zero() -> Self {
        VObject { basis: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(Atom, i64)] {
        &self.basis
    }

    pub fn grade(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn label(&self, i: usize) -> &Atom {
        &self.basis[i].0
    }

    pub fn index_of(&self, label: &Atom) -> Option<usize> {
        self.basis.iter().position(|(a, _)| a == label)
    }

    pub fn is_unit(&self) -> bool {
        self.dim() == 1 && self.grade(0) == 0
    }
}

impl PartialEq for VObject {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.basis.iter().zip(&other.basis).all(|(a, b)| a.1 == b.1)
    }
}

impl Eq for VObject {}

impl fmt::Debug for VObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V[")?;
        for (i, (a, g)) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *g == 0 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}:{g}")?;
            }
        }
        write!(f, "]")
    }
}

/// Row-major tensor of objects; grades add.
pub fn tensor_obj(a: &VObject, b: &VObject) -> VObject {
    if a.is_unit() && a.label(0) == &Atom::unit() {
        return b.clone();
    }
    if b.is_unit() && b.label(0) == &Atom::unit() {
        return a.clone();
    }
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for (x, g) in &a.basis {
        for (y, h) in &b.basis {
            basis.push((flat_pair(x, y), g + h));
        }
    }
    VObject { basis }
}

fn flat_pair(x: &Atom, y: &Atom) -> Atom {
    let mut items = Vec::new();
    for a in [x, y] {
        match a {
            Atom::Tuple(t) => items.extend(t.iter().cloned()),
            other => items.push(other.clone()),
        }
    }
    Atom::tuple(items)
}

pub fn tensor_all<'a>(objs: impl IntoIterator<Item = &'a VObject>) -> VObject {
    objs.into_iter()
        .fold(VObject::unit(), |acc, o| tensor_obj(&acc, o))
}

/// A linear map; rows indexed by the codomain basis, columns by the domain.
#[derive(Clone, PartialEq, Eq)]
pub struct VMorphism {
    dom: VObject,
    cod: VObject,
    matrix: Matrix,
}

impl VMorphism {
    pub fn new(dom: VObject, cod: VObject, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != cod.dim() || matrix.cols() != dom.dim() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but map is {} -> {}",
                matrix.rows(),
                matrix.cols(),
                dom.dim(),
                cod.dim()
            )));
        }
        Ok(VMorphism { dom, cod, matrix })
    }

    pub fn identity(a: &VObject) -> Self {
        VMorphism {
            dom: a.clone(),
            cod: a.clone(),
            matrix: Matrix::identity(a.dim()),
        }
    }

    pub fn zero(dom: &VObject, cod: &VObject) -> Self {
        VMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix: Matrix::zeros(cod.dim(), dom.dim()),
        }
    }

    pub fn dom(&self) -> &VObject {
        &self.dom
    }

    pub fn cod(&self) -> &VObject {
        &self.cod
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &VMorphism) -> Result<VMorphism> {
        if first.cod != self.dom {
            return Err(Error::Dimension(format!(
                "cannot compose: {:?} is not {:?}",
                first.cod, self.dom
            )));
        }
        Ok(VMorphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    /// Composes a chain given in application order.
    pub fn chain(steps: &[&VMorphism]) -> Result<VMorphism> {
        let (first, rest) = steps
            .split_first()
            .ok_or_else(|| Error::Invalid("empty chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, f| f.after(&acc))
    }

    pub fn scale(&self, s: &Scalar) -> VMorphism {
        VMorphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.scale(s),
        }
    }
}

impl fmt::Debug for VMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.dom, self.cod, self.matrix)
    }
}

/// Kronecker product, consistent with [`tensor_obj`].
pub fn tensor_mor(f: &VMorphism, g: &VMorphism) -> VMorphism {
    VMorphism {
        dom: tensor_obj(&f.dom, &g.dom),
        cod: tensor_obj(&f.cod, &g.cod),
        matrix: f.matrix.kron(&g.matrix),
    }
}

pub fn tensor_mor_all<'a>(fs: impl IntoIterator<Item = &'a VMorphism>) -> VMorphism {
    let unit = VMorphism::identity(&VObject::unit());
    fs.into_iter().fold(unit, |acc, f| tensor_mor(&acc, f))
}

/// The braiding scalar `q`; never zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidParam(Scalar);

impl BraidParam {
    pub fn new(q: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Invalid("braid parameter must be nonzero".into()));
        }
        Ok(BraidParam(q))
    }

    pub fn one() -> Self {
        BraidParam(Scalar::one())
    }

    pub fn int(q: i64) -> Self {
        Self::new(crate::linalg::int(q)).expect("nonzero")
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn weight(&self, m: i64, n: i64) -> Scalar {
        let e = m * n;
        Pow::pow(&self.0, e as i32)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.is_one() || self.0 == -Scalar::one()
    }
}

/// `c_{a,b}: a⊗b -> b⊗a`, `(a_i, b_j) ↦ q^(|a_i||b_j|) (b_j, a_i)`.
pub fn braiding(a: &VObject, b: &VObject, q: &BraidParam) -> VMorphism {
    let (m, n) = (a.dim(), b.dim());
    let mut mat = Matrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            mat.set(j * m + i, i * n + j, q.weight(a.grade(i), b.grade(j)));
        }
    }
    VMorphism {
        dom: tensor_obj(a, b),
        cod: tensor_obj(b, a),
        matrix: mat,
    }
}

/// Exact inverse, or why there is none.
pub fn invert(f: &VMorphism) -> std::result::Result<VMorphism, InverseWitness> {
    let inv = f.matrix.inverse()?;
    Ok(VMorphism {
        dom: f.cod.clone(),
        cod: f.dom.clone(),
        matrix: inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn unit_is_strict() {
        let a = VObject::graded(&[("x", 1), ("y", 0)]);
        assert_eq!(tensor_obj(&VObject::unit(), &a), a);
        assert_eq!(tensor_obj(&a, &VObject::unit()), a);
    }

    #[test]
    fn tensor_row_major() {
        let a = VObject::ungraded(&["a0", "a1"]);
        let b = VObject::ungraded(&["b0", "b1", "b2"]);
        let ab = tensor_obj(&a, &b);
        assert_eq!(ab.dim(), 6);
        for i in 0..2 {
            for j in 0..3 {
                let expected = Atom::tuple(vec![a.label(i).clone(), b.label(j).clone()]);
                assert_eq!(ab.label(i * 3 + j), &expected);
            }
        }
        let g = tensor_obj(&VObject::graded(&[("u", 1)]), &VObject::graded(&[("v", 2)]));
        assert_eq!(g.grade(0), 3);
    }

    #[test]
    fn ungraded_braiding_is_swap() {
        let a = VObject::ungraded(&["a0", "a1"]);
        let b = VObject::ungraded(&["b0", "b1"]);
        let c = braiding(&a, &b, &BraidParam::int(5));
        let swap = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(c.matrix(), &swap);
        let g = VObject::graded(&[("x", 1), ("y", 3)]);
        assert_eq!(braiding(&g, &g, &BraidParam::one()).matrix().clone(), swap);
    }

    #[test]
    fn graded_braiding_scales_by_q_power() {
        let a = VObject::graded(&[("x", 1)]);
        let c = braiding(&a, &a, &BraidParam::int(2));
        assert_eq!(c.matrix().get(0, 0), &int(2));
    }

    #[test]
    fn tensor_with_zero_and_identity() {
        let a = VObject::ungraded(&["a0", "a1"]);
        let id = VMorphism::identity(&a);
        assert_eq!(tensor_mor(&id, &id), VMorphism::identity(&tensor_obj(&a, &a)));
        let z = VMorphism::zero(&a, &a);
        assert!(tensor_mor(&id, &z).matrix().is_zero());
    }
}
