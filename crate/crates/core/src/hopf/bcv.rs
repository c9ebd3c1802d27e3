//! Modules over a V-category `a` on objects `X`: families `v(x,y)` with
//! actions `ψ_{x,y,z}: a(x,y)⊗v(y,z) → v(x,z)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::vect::{tensor_mor, tensor_mor_all, tensor_obj, VMorphism, VObject};

use super::{Kind, VectMonad};

#[derive(Clone, Debug, PartialEq)]
pub struct BcvModule {
    pub n: usize,
    /// `v(x,y)` at `x*n + y`.
    pub v: Vec<VObject>,
    pub psi: BTreeMap<(usize, usize, usize), VMorphism>,
}

impl BcvModule {
    pub fn at(&self, x: usize, y: usize) -> &VObject {
        &self.v[x * self.n + y]
    }

    /// `v = K`, `ψ = ε`.
    pub fn unit(e: &VectMonad) -> Result<Self> {
        let n = objects(e)?;
        let c = e.comonoid.as_ref().ok_or_else(|| Error::Invalid("no comonoid structure".into()))?;
        let mut psi = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    psi.insert((x, y, z), c.eps[x * n + y].clone());
                }
            }
        }
        Ok(BcvModule { n, v: vec![VObject::unit(); n * n], psi })
    }

    /// `v = a`, `ψ = μ`.
    pub fn regular(e: &VectMonad) -> Result<Self> {
        let n = objects(e)?;
        let mut psi = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    psi.insert((x, y, z), e.mu_at(x * n + y, y * n + z).clone());
                }
            }
        }
        Ok(BcvModule { n, v: e.labels.clone(), psi })
    }
}

fn objects(e: &VectMonad) -> Result<usize> {
    if e.kind != Kind::Enriched {
        return Err(Error::Invalid("modules need an enriched presentation".into()));
    }
    Ok(e.shape.num_objects())
}

fn mu(e: &VectMonad, x: usize, y: usize, z: usize) -> &VMorphism {
    let n = e.shape.num_objects();
    e.mu_at(x * n + y, y * n + z)
}

fn differ(a: &VMorphism, b: &VMorphism) -> bool {
    a != b
}

/// Associativity for all `(x,y,z,u)` and unitality for all `(x,y)`; the
/// witness names the failing indices.
pub fn check_bcv_module(e: &VectMonad, m: &BcvModule) -> Result<Option<String>> {
    let n = objects(e)?;
    let a = |x: usize, y: usize| &e.labels[x * n + y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    let lhs = m.psi[&(x, z, u)].after(&tensor_mor(mu(e, x, y, z), &VMorphism::identity(m.at(z, u))))?;
                    let rhs = m.psi[&(x, y, u)].after(&tensor_mor(&VMorphism::identity(a(x, y)), &m.psi[&(y, z, u)]))?;
                    if differ(&lhs, &rhs) {
                        return Ok(Some(format!("associativity at ({x},{y},{z},{u})")));
                    }
                }
            }
            let unit = m.psi[&(x, x, y)].after(&tensor_mor(&e.eta[x], &VMorphism::identity(m.at(x, y))))?;
            if differ(&unit, &VMorphism::identity(m.at(x, y))) {
                return Ok(Some(format!("unitality at ({x},{y})")));
            }
        }
    }
    Ok(None)
}

/// `φ_{x,z}∘ψ_{x,y,z} = ψ'_{x,y,z}∘(1⊗φ_{y,z})`.
pub fn check_bcv_morphism(e: &VectMonad, m: &BcvModule, m2: &BcvModule, phi: &[VMorphism]) -> Result<Option<String>> {
    let n = objects(e)?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = phi[x * n + z].after(&m.psi[&(x, y, z)])?;
                let rhs = m2.psi[&(x, y, z)].after(&tensor_mor(&VMorphism::identity(&e.labels[x * n + y]), &phi[y * n + z]))?;
                if differ(&lhs, &rhs) {
                    return Ok(Some(format!("naturality at ({x},{y},{z})")));
                }
            }
        }
    }
    Ok(None)
}

/// `(v⊗v')(x,y) = v(x,y)⊗v'(x,y)` with action
/// `(ψ⊗ψ')∘(1⊗c⊗1)∘(δ⊗1)`.
pub fn tensor_modules(e: &VectMonad, m: &BcvModule, m2: &BcvModule) -> Result<BcvModule> {
    let n = objects(e)?;
    let c = e.comonoid.as_ref().ok_or_else(|| Error::Invalid("no comonoid structure".into()))?;
    let sv = e.spanv();
    let mut psi = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = &e.labels[x * n + y];
                let (v, w) = (m.at(y, z), m2.at(y, z));
                let split = tensor_mor_all([&c.delta[x * n + y], &VMorphism::identity(v), &VMorphism::identity(w)]);
                let swap = tensor_mor_all([&VMorphism::identity(a), &sv.base.braiding(a, v), &VMorphism::identity(w)]);
                let act = tensor_mor(&m.psi[&(x, y, z)], &m2.psi[&(x, y, z)]);
                psi.insert((x, y, z), VMorphism::chain(&[&split, &swap, &act])?);
            }
        }
    }
    let v = m.v.iter().zip(&m2.v).map(|(a, b)| tensor_obj(a, b)).collect();
    Ok(BcvModule { n, v, psi })
}
