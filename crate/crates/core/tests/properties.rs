use std::sync::Arc;

use proptest::prelude::*;

use spanv::cat::FinCategory;
use spanv::finset::FinSet;
use spanv::hopf::antipode::{check_antipode_duoidal_with, check_antipode_group, check_antipode_with, compute_antipode};
use spanv::hopf::fusion::is_hopf;
use spanv::hopf::{check_monad, constant_group_algebra, indiscrete_hopf_category};
use spanv::io::{self, LoadedVect, Presentation};
use spanv::linalg::int;
use spanv::random;
use spanv::spanv::{SpanV, Vect};
use spanv::vect::{BraidParam, VMorphism};

fn q() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![1i64, -1, 2, 3])
}

fn group_algebra(n: usize, q: i64, grades: &[i64]) -> spanv::hopf::VectMonad {
    let grades = grades.to_vec();
    constant_group_algebra(BraidParam::int(q), Arc::new(FinCategory::cyclic_group(n)), move |g| grades[g % grades.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn files_round_trip(n in 1usize..4, q in q(), grades in prop::collection::vec(0i64..2, 1..4), grouplike in any::<bool>()) {
        let m = group_algebra(n, q, &grades);
        let labels = m.labels.len();
        let p = Presentation::Vect(LoadedVect { monad: m, grouplike: vec![grouplike; labels], synthesized: grouplike });
        let text = io::to_json(&io::to_file(&p));
        let back = io::read(&text).unwrap();
        prop_assert_eq!(io::to_json(&io::to_file(&back)), text.clone());
        prop_assert_eq!(io::to_json(&io::parse_file(&text).unwrap()), text);
    }

    #[test]
    fn cyclic_group_algebras_are_hopf(n in 1usize..4, q in q()) {
        let m = group_algebra(n, q, &[0]);
        prop_assert!(check_monad(&m).unwrap().passed());
        prop_assert!(is_hopf(&m).unwrap().is_hopf());
        prop_assert!(compute_antipode(&m).unwrap().is_ok());
    }

    /// Componentwise, duoidal and solved antipodes reach the same verdict,
    /// also for perturbed candidates.
    #[test]
    fn antipode_checks_agree(n in 1usize..4, q in q(), perturb in prop::option::of((0usize..3, 0usize..3, 0usize..3))) {
        let m = group_algebra(n, q, &[0]);
        let mut sigma = compute_antipode(&m).unwrap().unwrap();
        prop_assert!(check_antipode_group(&m).unwrap().is_none());
        if let Some((h, i, j)) = perturb {
            let s = &sigma[h % n];
            let mut mat = s.matrix().clone();
            let (i, j) = (i % mat.rows(), j % mat.cols());
            let v = mat.get(i, j) + int(1);
            mat.set(i, j, v);
            sigma[h % n] = VMorphism::new(s.dom().clone(), s.cod().clone(), mat).unwrap();
        }
        let componentwise = check_antipode_with(&m, &sigma).unwrap().is_none();
        let d = check_antipode_duoidal_with(&m, &sigma).unwrap();
        prop_assert!(d.agrees_with_componentwise);
        prop_assert_eq!(componentwise, perturb.is_none());
    }

    #[test]
    fn indiscrete_categories_are_hopf(n in 1usize..4, q in q()) {
        let m = indiscrete_hopf_category(BraidParam::int(q), &FinSet::range(n)).unwrap();
        prop_assert!(is_hopf(&m).unwrap().is_hopf());
        prop_assert!(compute_antipode(&m).unwrap().is_ok());
    }

    #[test]
    fn composition_is_associative_up_to_transport(seed in any::<u64>(), q in q()) {
        let sv = SpanV::new(Vect::new(BraidParam::int(q)));
        let mut rng = random::rng(seed);
        let xs: Vec<_> = (0..4).map(|_| random::carrier(&mut rng, 3)).collect();
        let a = random::cell1(&sv, &mut rng, &xs[0], &xs[1], 3, 2);
        let b = random::cell1(&sv, &mut rng, &xs[1], &xs[2], 3, 2);
        let c = random::cell1(&sv, &mut rng, &xs[2], &xs[3], 3, 2);
        let alpha = sv.associator(&c, &b, &a).unwrap();
        let (fa, fb, fc) = (random::endo2(&sv, &mut rng, &a), random::endo2(&sv, &mut rng, &b), random::endo2(&sv, &mut rng, &c));
        let lhs = sv.hcomp2(&sv.hcomp2(&fc, &fb).unwrap(), &fa).unwrap();
        let rhs = sv.hcomp2(&fc, &sv.hcomp2(&fb, &fa).unwrap()).unwrap();
        let rhs = sv.vcomp2(&rhs, &alpha).unwrap();
        prop_assert_eq!(sv.eq2(&lhs, &rhs, &[alpha]).unwrap(), None);
    }
}
