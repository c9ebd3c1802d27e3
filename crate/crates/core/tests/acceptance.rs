//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one pass/fail line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Pow, Zero};

use spanv::cat::{FinCategory, FunctorData};
use spanv::finset::FinSet;
use spanv::hopf::antipode::{
    check_antipode_duoidal, check_antipode_enriched, check_antipode_group, check_antipode_with, compute_antipode,
};
use spanv::hopf::bcv::{check_bcv_module, BcvModule};
use spanv::hopf::fusion::{is_hopf, left_fusion, right_fusion};
use spanv::hopf::{
    check_monad, check_opmonoidal, constant_group_algebra, group_hom_category, idempotent_monoid,
    indiscrete_hopf_category, trivial_group_monoid, VectMonad,
};
use spanv::io::{self, LoadedPolyad, Presentation};
use spanv::linalg::{abs_is_one, Matrix, Scalar};
use spanv::monoidale::{
    axiom_interchange_circ, axiom_interchange_natural, axiom_interchange_star, axiom_unit_objects, axiom_units,
    check_frobenius, duoidal_units, zunino_check, SV,
};
use spanv::polyad::modules::{em_algebras_restricted, enumerate_modules};
use spanv::polyad::{check_polyad, check_polyad_opmonoidal, discrete_z2_polyad, polyad_is_hopf, translation_polyad, Polyad};
use spanv::random;
use spanv::report::export_polyad;
use spanv::spanv::{CatBackend, Cell1, Cell2, SpanV, Vect};
use spanv::vect::{BraidParam, VMorphism, VObject};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const QS: [i64; 3] = [1, -1, 2];

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn z2() -> Arc<FinCategory> {
    Arc::new(FinCategory::cyclic_group(2))
}

// 1

fn coherence_case(seed: u64) -> Outcome {
    let q = QS[seed as usize % 3];
    let sv = SpanV::new(Vect::new(BraidParam::int(q)));
    let mut rng = random::rng(seed);
    let xs: Vec<_> = (0..5).map(|_| random::carrier(&mut rng, 3)).collect();
    let mut cell = |i: usize| random::cell1(&sv, &mut rng, &xs[i], &xs[i + 1], 3, 3);
    let (a, b, c, d) = (cell(0), cell(1), cell(2), cell(3));
    let (a1, a2) = (random::endo2(&sv, &mut rng, &a), random::endo2(&sv, &mut rng, &a));
    let (b1, b2) = (random::endo2(&sv, &mut rng, &b), random::endo2(&sv, &mut rng, &b));
    let c1 = random::endo2(&sv, &mut rng, &c);
    let same = |what: &str, u: &Cell2<Vect>, v: &Cell2<Vect>| match sv.diff2(u, v) {
        None => Ok(()),
        Some(diff) => Err(format!("seed {seed} q={q} {what}: {diff}")),
    };

    let lhs = ok(sv.hcomp2(&ok(sv.vcomp2(&b2, &b1))?, &ok(sv.vcomp2(&a2, &a1))?))?;
    let rhs = ok(sv.vcomp2(&ok(sv.hcomp2(&b2, &a2))?, &ok(sv.hcomp2(&b1, &a1))?))?;
    same("interchange", &lhs, &rhs)?;

    let alpha = ok(sv.associator(&c, &b, &a))?;
    ok(sv.is_invertible2(&alpha).map_err(|e| format!("{e:?}")))?;
    let lhs = ok(sv.vcomp2(&alpha, &ok(sv.hcomp2(&ok(sv.hcomp2(&c1, &b1))?, &a1))?))?;
    let rhs = ok(sv.vcomp2(&ok(sv.hcomp2(&c1, &ok(sv.hcomp2(&b1, &a1))?))?, &alpha))?;
    same("associator naturality", &lhs, &rhs)?;
    let back = ok(sv.vcomp2(&ok(sv.inverse2(&alpha))?, &alpha))?;
    same("associator inverse", &back, &sv.id2(alpha.from()))?;

    let lam = ok(sv.left_unitor(&a))?;
    let rho = ok(sv.right_unitor(&a))?;
    let one_y = sv.id2(&sv.id1(a.tgt()));
    let one_x = sv.id2(&sv.id1(a.src()));
    same(
        "left unitor naturality",
        &ok(sv.vcomp2(&lam, &ok(sv.hcomp2(&one_y, &a1))?))?,
        &ok(sv.vcomp2(&a1, &lam))?,
    )?;
    same(
        "right unitor naturality",
        &ok(sv.vcomp2(&rho, &ok(sv.hcomp2(&a1, &one_x))?))?,
        &ok(sv.vcomp2(&a1, &rho))?,
    )?;

    let i_y = sv.id1(a.tgt());
    let lhs = ok(sv.vcomp2(&ok(sv.whisker_left(&b, &lam))?, &ok(sv.associator(&b, &i_y, &a))?))?;
    let rhs = ok(sv.whisker_right(&ok(sv.right_unitor(&b))?, &a))?;
    same("triangle", &lhs, &rhs)?;

    if seed % 4 == 0 {
        let ba = ok(sv.hcomp1(&b, &a))?;
        let dc = ok(sv.hcomp1(&d, &c))?;
        let cb = ok(sv.hcomp1(&c, &b))?;
        let lhs = ok(sv.vcomp2(&ok(sv.associator(&d, &c, &ba))?, &ok(sv.associator(&dc, &b, &a))?))?;
        let rhs = ok(sv.vchain(&[
            &ok(sv.whisker_right(&ok(sv.associator(&d, &c, &b))?, &a))?,
            &ok(sv.associator(&d, &cb, &a))?,
            &ok(sv.whisker_left(&d, &ok(sv.associator(&c, &b, &a))?))?,
        ]))?;
        same("pentagon", &lhs, &rhs)?;
    }
    Ok(())
}

fn coherence() -> Outcome {
    for seed in 0..500 {
        coherence_case(seed)?;
    }
    Ok(())
}

// 2

fn frobenius() -> Outcome {
    for q in QS {
        let sv = SpanV::new(Vect::new(BraidParam::int(q)));
        for n in 1..=3 {
            let r = ok(check_frobenius(&sv, &FinSet::range(n)))?;
            ensure!(r.passed(), "|X|={n} q={q}: {r:?}");
        }
    }
    Ok(())
}

// 3

/// Endo-cells whose labels carry their grouplike comonoid.
fn endo_cells(sv: &SV, rng: &mut random::Rng8, x: &spanv::spanv::Cell0<Vect>, n: usize) -> Vec<Cell1<Vect>> {
    (0..n).map(|_| random::cell1(sv, rng, x, x, 2, 2)).collect()
}

fn duoidal() -> Outcome {
    for seed in 0..24u64 {
        let q = QS[seed as usize % 3];
        let sv = SpanV::new(Vect::new(BraidParam::int(q)));
        let mut rng = random::rng(1000 + seed);
        let x = random::carrier(&mut rng, 2);
        let u = ok(duoidal_units(&sv, x.carrier()))?;
        if let Some(w) = ok(axiom_unit_objects(&sv, &u))? {
            return Err(format!("seed {seed}: {w}"));
        }
        let c = endo_cells(&sv, &mut rng, &x, 6);
        for (a, b) in [(&c[0], &c[1]), (&c[2], &c[3]), (&c[4], &c[4])] {
            if let Some(w) = ok(axiom_units(&sv, &u, a, b))? {
                return Err(format!("seed {seed}: {w}"));
            }
        }
        let six = [&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]];
        if let Some(w) = ok(axiom_interchange_circ(&sv, six))?.or(ok(axiom_interchange_star(&sv, six))?) {
            return Err(format!("seed {seed}: {w}"));
        }
        let f: Vec<_> = c[..4].iter().map(|a| random::endo2(&sv, &mut rng, a)).collect();
        if let Some(w) = ok(axiom_interchange_natural(&sv, [&f[0], &f[1], &f[2], &f[3]]))? {
            return Err(format!("seed {seed}: {w}"));
        }
    }
    for seed in 0..6u64 {
        let sv = SpanV::new(Vect::new(BraidParam::int(QS[seed as usize % 3])));
        let mut rng = random::rng(2000 + seed);
        let one = spanv::spanv::Cell0::constant(&FinSet::singleton(), ());
        let cells = endo_cells(&sv, &mut rng, &one, 3);
        let r = ok(zunino_check(&sv, &cells))?;
        ensure!(r.passed(), "zunino seed {seed}: {r:?}");
    }
    Ok(())
}

// 4

fn is_permutation(m: &Matrix) -> bool {
    let unit = |x: &Scalar| x.is_zero() || x.is_one();
    let ones = |v: Vec<&Scalar>| v.iter().filter(|x| x.is_one()).count() == 1;
    (0..m.rows()).all(|i| m.row(i).iter().all(unit) && ones(m.row(i).iter().collect()))
        && (0..m.cols()).all(|j| ones((0..m.rows()).map(|i| m.get(i, j)).collect()))
}

/// `σ(e_a) = e_{a⁻¹}`, from the multiplication table alone.
fn inversion_oracle(shape: &FinCategory) -> Matrix {
    let n = shape.num_morphisms();
    Matrix::from_fn(n, n, |r, c| {
        let e = shape.identity(shape.src(c));
        let inverse = shape.compose(r, c) == Some(e) && shape.compose(c, r) == Some(e);
        if inverse {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

fn group_monoid() -> Outcome {
    let m = ok(constant_group_algebra(BraidParam::one(), z2(), |_| 0))?;
    ensure!(ok(check_monad(&m))?.passed(), "monad laws");
    ensure!(ok(check_opmonoidal(&m))?.passed(), "opmonoidal laws");
    for fu in [ok(left_fusion(&m))?, ok(right_fusion(&m))?] {
        for c in fu.cell.components() {
            let mat = c.matrix();
            ensure!(mat.rows() == 4 && mat.cols() == 4, "fusion component is {}x{}", mat.rows(), mat.cols());
            ensure!(is_permutation(mat), "not a permutation: {mat:?}");
            ensure!(abs_is_one(&mat.determinant().unwrap()), "determinant");
        }
    }
    ensure!(ok(is_hopf(&m))?.is_hopf(), "is_hopf");
    let sigma = ok(compute_antipode(&m))?.map_err(|e| e.to_string())?;
    let oracle = inversion_oracle(&m.shape);
    for s in &sigma {
        ensure!(s.matrix() == &oracle, "computed antipode is not the inversion");
    }
    let m = ok(m.with_antipode(sigma))?;
    ensure!(ok(check_antipode_group(&m))?.is_none(), "group antipode diagram");
    let d = ok(check_antipode_duoidal(&m))?;
    ensure!(d.passed() && d.agrees_with_componentwise, "duoidal antipode: {d:?}");
    Ok(())
}

// 5

fn negative_control() -> Outcome {
    let m = ok(trivial_group_monoid(BraidParam::one(), idempotent_monoid()))?;
    let v = ok(is_hopf(&m))?;
    let w = v.witness.ok_or("idempotent monoid judged Hopf")?;
    ensure!(w.to_string().contains('z'), "witness does not name z: {w}");
    ensure!(ok(compute_antipode(&m))?.is_err(), "an antipode was produced");
    Ok(())
}

// 6

fn hopf_category(m: &VectMonad, name: &str) -> Outcome {
    ensure!(ok(check_monad(m))?.passed(), "{name}: monad laws");
    ensure!(ok(check_opmonoidal(m))?.passed(), "{name}: opmonoidal laws");
    for module in [ok(BcvModule::unit(m))?, ok(BcvModule::regular(m))?] {
        if let Some(w) = ok(check_bcv_module(m, &module))? {
            return Err(format!("{name}: module {w}"));
        }
    }
    let v = ok(is_hopf(m))?;
    ensure!(v.is_hopf(), "{name}: fusion not invertible: {:?}", v.witness);
    let stored = check_antipode_enriched(m);
    let duo = ok(check_antipode_duoidal(m))?;
    let sigma = ok(compute_antipode(m))?.map_err(|e| format!("{name}: {e}"))?;
    let solved = ok(check_antipode_with(m, &sigma))?;
    ensure!(ok(stored)?.is_none() && duo.passed() && solved.is_none(), "{name}: antipode checks fail");
    ensure!(duo.agrees_with_componentwise, "{name}: duoidal and componentwise checks disagree");
    Ok(())
}

fn hopf_categories() -> Outcome {
    let pair = FinSet::range(2);
    hopf_category(&ok(indiscrete_hopf_category(BraidParam::one(), &pair))?, "indiscrete")?;
    hopf_category(&ok(group_hom_category(BraidParam::one(), &pair, &z2()))?, "K[Z2] homs")
}

// 7

/// Modules by exhaustive search over carriers, actions and component
/// families.
fn module_counts(p: &Polyad<CatBackend>) -> (usize, usize) {
    let shape = &p.shape;
    let cats: Vec<_> = p.mons.iter().map(|m| m.category().clone()).collect();
    let nobj = shape.num_objects();
    let nmor = shape.num_morphisms();
    let d = |f: usize| -> &FunctorData { p.d(f) };
    let mut modules: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let carriers = product((0..nobj).map(|x| (0..cats[x].num_objects()).collect()).collect());
    for a in carriers {
        let choices = (0..nmor)
            .map(|f| cats[shape.tgt(f)].hom(d(f).on_object(a[shape.src(f)]), a[shape.tgt(f)]))
            .collect();
        for act in product(choices) {
            let assoc = shape.composable_pairs().into_iter().all(|(g, f)| {
                let y = shape.tgt(g);
                let gf = shape.compose(g, f).unwrap();
                let mu = p.mu_at(g, f).unwrap().component(a[shape.src(f)]);
                let lhs = cats[y].compose(act[gf], mu);
                let rhs = cats[y].compose(act[g], d(g).on_morphism(act[f]));
                lhs.is_some() && lhs == rhs
            });
            let unit = (0..nobj).all(|x| {
                let e = shape.identity(x);
                cats[x].compose(act[e], p.eta_at(x).component(a[x])) == Some(cats[x].identity(a[x]))
            });
            if assoc && unit {
                modules.push((a.clone(), act));
            }
        }
    }
    let mut morphisms = 0;
    for (a, alpha) in &modules {
        for (b, beta) in &modules {
            let families = product((0..nobj).map(|x| cats[x].hom(a[x], b[x])).collect());
            morphisms += families
                .into_iter()
                .filter(|phi| {
                    (0..nmor).all(|f| {
                        let y = shape.tgt(f);
                        cats[y].compose(phi[y], alpha[f]) == cats[y].compose(beta[f], d(f).on_morphism(phi[shape.src(f)]))
                    })
                })
                .count();
        }
    }
    (modules.len(), morphisms)
}

fn product(choices: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    choices.into_iter().fold(vec![Vec::new()], |acc, c| {
        acc.into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

fn polyads() -> Outcome {
    let discrete = ok(discrete_z2_polyad(z2()))?;
    let v = ok(polyad_is_hopf(&discrete))?;
    ensure!(v.is_hopf() && v.exhaustive, "discrete Z2 polyad: {v:?}");
    let idem = ok(discrete_z2_polyad(idempotent_monoid()))?;
    let v = ok(polyad_is_hopf(&idem))?;
    ensure!(!v.is_hopf() && v.not_groupoid.is_some(), "non-group shape: {v:?}");
    let translation = ok(translation_polyad())?;
    for (name, p) in [("discrete", &discrete), ("idempotent", &idem), ("translation", &translation)] {
        ensure!(ok(check_polyad(p))?.passed(), "{name}: polyad laws");
        let direct = ok(enumerate_modules(p))?;
        let (em, cmp) = ok(em_algebras_restricted(p))?;
        ensure!(cmp.verified, "{name}: comparison is not an isomorphism");
        let oracle = module_counts(p);
        let counts = (direct.objects.len(), direct.morphisms.len());
        ensure!(counts == oracle, "{name}: modules {counts:?}, oracle {oracle:?}");
        ensure!((em.objects.len(), em.morphisms.len()) == oracle, "{name}: algebras differ from the oracle");
    }
    Ok(())
}

// 8

fn probes() -> Vec<VObject> {
    vec![
        VObject::unit(),
        VObject::graded(&[("a", 0), ("b", 1)]),
        VObject::graded(&[("a", 0), ("b", 1), ("c", 1)]),
    ]
}

fn export(name: &str) -> Outcome {
    let text = ok(std::fs::read_to_string(fixture(name)))?;
    let source = ok(io::load(&ok(io::parse_file(&text))?))?;
    let file = ok(export_polyad(&source, &probes()))?;
    let Presentation::Polyad(LoadedPolyad::VectImage { source, probes, polyad }) = ok(io::load(&file))? else {
        return Err(format!("{name}: export did not produce a vect image"));
    };
    ensure!(probes.len() >= 3, "{name}: {} probes", probes.len());
    ensure!(ok(check_polyad(&polyad))?.passed(), "{name}: pointwise monad laws");
    ensure!(ok(check_polyad_opmonoidal(&polyad))?.passed(), "{name}: pointwise opmonoidal laws");
    let v = ok(polyad_is_hopf(&*polyad))?;
    ensure!(v.is_hopf(), "{name}: pointwise Hopf: {v:?}");
    let (_, pf) = ok(spanv::cat::lazy::vect_as_lazy_category(&source.monad.q, &probes))?;
    ok(pf.check_laws())
}

fn functoriality() -> Outcome {
    for name in ["z2_group_algebra.json", "indiscrete_groupoid.json", "z2_hom_groupoid.json"] {
        export(name)?;
    }
    Ok(())
}

// 9

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        a.get(r / b.rows(), c / b.cols()) * b.get(r % b.rows(), c % b.cols())
    })
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), b.cols(), |r, c| (0..a.cols()).map(|k| a.get(r, k) * b.get(k, c)).sum())
}

/// `c(x_i ⊗ y_j) = q^(|x_i||y_j|) y_j ⊗ x_i`.
fn braid(x: &VObject, y: &VObject, q: i64) -> Matrix {
    let (m, n) = (x.dim(), y.dim());
    Matrix::from_fn(m * n, m * n, |r, c| {
        let (i, j) = (c / n, c % n);
        if r == j * m + i {
            Pow::pow(Scalar::from_integer(q.into()), (x.grade(i) * y.grade(j)) as i32)
        } else {
            Scalar::zero()
        }
    })
}

fn fusion_oracle() -> Outcome {
    for q in QS {
        for graded in [false, true] {
            let m = ok(constant_group_algebra(BraidParam::int(q), z2(), |g| if graded { g as i64 } else { 0 }))?;
            let fu = ok(left_fusion(&m))?;
            let delta = &m.comonoid.as_ref().ok_or("no comonoid")?.delta;
            for h in 0..2 {
                for p in 0..2 {
                    let (fh, fp) = (&m.labels[h], &m.labels[p]);
                    let id = |v: &VObject| Matrix::identity(v.dim());
                    let expected = mul(
                        &kron(m.mu_at(h, p).matrix(), &id(fh)),
                        &mul(&kron(&id(fh), &braid(fh, fp, q)), &kron(delta[h].matrix(), &id(fp))),
                    );
                    let got: &VMorphism = fu.component_at(h, p).ok_or("missing component")?;
                    ensure!(got.matrix() == &expected, "q={q} graded={graded} at ({h},{p})");
                    ensure!(fu.image(h, p) == m.shape.compose(h, p).map(|hp| (hp, h)), "span map at ({h},{p})");
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("bicategory coherence", coherence, 30),
        ("naturally Frobenius", frobenius, 5),
        ("duoidal axioms", duoidal, 30),
        ("Hopf group monoid", group_monoid, 1),
        ("negative control", negative_control, 1),
        ("Hopf categories", hopf_categories, 2),
        ("polyads", polyads, 10),
        ("functoriality", functoriality, 10),
        ("fusion oracle", fusion_oracle, 10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= Duration::from_secs(limit) {
                Ok(())
            } else {
                Err(format!("took longer than {limit} s"))
            }
        });
        match result {
            Ok(()) => println!("criterion {} {name}: PASS ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({:.2} s) {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
