mod common;

use common::{all_invertible, all_vectors, finite_rings, pick, pick_form, pick_vec};
use formwitt::forms::{include, QuadraticForm, RingHom};
use formwitt::rings::{linalg, parse_ring, Matrix, Ring};
use formwitt::witt::{self, IsometryVerdict, IsotropyResult, Representation};
use proptest::prelude::*;

fn random_invertible(r: &Ring, n: usize, seeds: &[u64]) -> Option<Matrix> {
    let m: Matrix = (0..n).map(|i| pick_vec(r, &seeds[i * n..(i + 1) * n])).collect();
    r.is_unit(&linalg::ring_det(r, &m)).then_some(m)
}

fn brute_isometric(q: &QuadraticForm, q2: &QuadraticForm, group: &[Matrix]) -> bool {
    group.iter().any(|f| &q2.transport(f).unwrap() == q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isotropic_witnesses_verify(ring in 0usize..7, n in 1usize..4, c in prop::collection::vec(any::<u64>(), 6)) {
        let r = &finite_rings()[ring];
        let q = pick_form(r, n, &c);
        if let IsotropyResult::Isotropic { witness, certificate } = witt::find_isotropic(&q).unwrap() {
            prop_assert!(r.is_zero(&q.evaluate(&witness).unwrap()));
            prop_assert!(witt::is_unimodular(r, &witness));
            prop_assert_eq!(certificate.len(), r.residues().unwrap().len());
        }
    }

    #[test]
    fn witt_index_is_basis_independent(
        ring in prop::sample::select(vec!["GF(3)", "GF(5)", "GF(2)", "GF(2^2)", "GF(5)[X]/(X^2+3*X+2)"]),
        n in 2usize..5,
        c in prop::collection::vec(any::<u64>(), 10),
        t in prop::collection::vec(any::<u64>(), 16),
    ) {
        let r = parse_ring(ring).unwrap();
        let q = pick_form(&r, n, &c);
        prop_assume!(q.is_nonsingular().unwrap());
        let Some(f) = random_invertible(&r, n, &t) else { return Ok(()) };
        let dec = witt::witt_decompose(&q).unwrap();
        let expected = QuadraticForm::hyperbolic_space(&r, dec.index).direct_sum(&dec.kernel).unwrap();
        prop_assert_eq!(q.transport(&dec.transform).unwrap(), expected);
        prop_assert_eq!(witt::witt_decompose(&q.transport(&f).unwrap()).unwrap().index, dec.index);
    }

    #[test]
    fn form_plus_negative_is_hyperbolic(
        ring in prop::sample::select(vec!["GF(3)", "GF(5)", "GF(2)", "GF(5)[X]/(X^2+3*X+2)", "GF(3)[X]/(X^2)"]),
        n in 1usize..4,
        c in prop::collection::vec(any::<u64>(), 6),
    ) {
        let r = parse_ring(ring).unwrap();
        let q = pick_form(&r, n, &c);
        prop_assume!(q.is_regular());
        let sum = q.direct_sum(&q.neg()).unwrap();
        let lag = witt::is_hyperbolic(&sum).unwrap();
        prop_assert!(lag.is_some());
        for v in lag.unwrap() {
            prop_assert!(r.is_zero(&sum.evaluate(&v).unwrap()));
        }
    }

    #[test]
    fn values_persist_after_extension(c in prop::collection::vec(any::<u64>(), 6), a in any::<u64>()) {
        let k = Ring::gf(3).unwrap();
        let s = parse_ring("GF(3)[X]/(X^3+2*X+1)").unwrap();
        let q = pick_form(&k, 3, &c);
        let a = pick(&k, a);
        if let Representation::Represented(m) = witt::represents(&q, &a).unwrap() {
            prop_assert_eq!(&q.evaluate(&m).unwrap(), &a);
            let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
            let ms: Vec<_> = m.iter().map(|x| include(&k, &s, x).unwrap()).collect();
            prop_assert_eq!(qs.evaluate(&ms).unwrap(), include(&k, &s, &a).unwrap());
        }
    }
}

fn check_isometry_against_brute(k: &Ring, n: usize, forms: &[QuadraticForm]) {
    let group = all_invertible(k, n);
    for q in forms {
        for q2 in forms {
            let verdict = witt::is_isometric(q, q2).unwrap();
            let brute = brute_isometric(q, q2, &group);
            match verdict {
                IsometryVerdict::NotIsometric => assert!(!brute, "{q:?} vs {q2:?}"),
                IsometryVerdict::Isometric(f) => {
                    assert!(brute, "{q:?} vs {q2:?}");
                    if let Some(f) = f {
                        assert_eq!(&q2.transport(&f).unwrap(), q);
                    }
                }
            }
        }
    }
}

fn regular_forms(k: &Ring, n: usize) -> Vec<QuadraticForm> {
    all_vectors(k, n * (n + 1) / 2)
        .into_iter()
        .map(|c| pick_form_exact(k, n, &c))
        .filter(QuadraticForm::is_regular)
        .collect()
}

fn pick_form_exact(k: &Ring, n: usize, c: &[formwitt::rings::RingElement]) -> QuadraticForm {
    let mut m = linalg::zeros(k, n, n);
    let mut it = c.iter();
    for i in 0..n {
        for j in i..n {
            m[i][j] = it.next().unwrap().clone();
        }
    }
    QuadraticForm::new(k, m).unwrap()
}

#[test]
fn isometry_matches_brute_force_small_rank() {
    for p in [2, 3] {
        let k = Ring::gf(p).unwrap();
        for n in 1..=2 {
            check_isometry_against_brute(&k, n, &regular_forms(&k, n));
        }
    }
}

#[test]
fn isometry_matches_brute_force_rank_three() {
    let k = Ring::gf(3).unwrap();
    let forms: Vec<QuadraticForm> = regular_forms(&k, 3).into_iter().step_by(23).collect();
    check_isometry_against_brute(&k, 3, &forms);
}
