//! Seeded random cells of Span|V for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finset::{FinSet, Span};
use crate::linalg::{int, Matrix};
use crate::monoidale::SV;
use crate::spanv::{Cell0, Cell1, Cell2, Vect};
use crate::vect::{VMorphism, VObject};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dimension in `1..=max_dim`, grades in `0..=max_grade`.
pub fn object(rng: &mut Rng8, max_dim: usize, max_grade: i64) -> VObject {
    let n = rng.gen_range(1..=max_dim);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let basis: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), rng.gen_range(0..=max_grade))).collect();
    VObject::graded(&basis)
}

pub fn carrier(rng: &mut Rng8, max: usize) -> Cell0<Vect> {
    Cell0::constant(&FinSet::range(rng.gen_range(1..=max)), ())
}

pub fn cell1(sv: &SV, rng: &mut Rng8, src: &Cell0<Vect>, tgt: &Cell0<Vect>, max_apex: usize, max_dim: usize) -> Cell1<Vect> {
    let n = rng.gen_range(0..=max_apex);
    let left = (0..n).map(|_| rng.gen_range(0..tgt.carrier().len())).collect();
    let right = (0..n).map(|_| rng.gen_range(0..src.carrier().len())).collect();
    let span = Span::from_indices(src.carrier(), tgt.carrier(), &FinSet::range(n), left, right).expect("legs in range");
    let labels = (0..n).map(|_| object(rng, max_dim, 1)).collect();
    sv.cell1(src, tgt, span, labels).expect("well-formed 1-cell")
}

/// Entries in `-2..=2`, zero between basis vectors of different grades.
pub fn endomorphism(rng: &mut Rng8, v: &VObject) -> VMorphism {
    let n = v.dim();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if v.grade(i) == v.grade(j) {
                out.set(i, j, int(rng.gen_range(-2..=2)));
            }
        }
    }
    VMorphism::new(v.clone(), v.clone(), out).expect("square")
}

/// A 2-cell `a ⇒ a` over the identity span map with random grade-preserving
/// components.
pub fn endo2(sv: &SV, rng: &mut Rng8, a: &Cell1<Vect>) -> Cell2<Vect> {
    let comps = a.labels().iter().map(|l| endomorphism(rng, l)).collect();
    sv.cell2(a, a, (0..a.apex().len()).collect(), comps).expect("identity span map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanv::SpanV;
    use crate::vect::BraidParam;

    #[test]
    fn seeded_cells_repeat() {
        let sv = SpanV::new(Vect::new(BraidParam::int(2)));
        let draw = |seed| {
            let mut r = rng(seed);
            let x = carrier(&mut r, 3);
            let a = cell1(&sv, &mut r, &x, &x, 3, 3);
            (a.clone(), endo2(&sv, &mut r, &a))
        };
        assert_eq!(draw(7), draw(7));
        let (a, f) = draw(11);
        assert_eq!(f.from(), &a);
    }
}
