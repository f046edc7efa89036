mod common;

use common::{all_vectors, finite_rings, pick, pick_form, pick_vec};
use formwitt::forms::{include, pure_tensor, tensor_bq, unit_vector, vec_add, BilinearForm, QuadraticForm, RingHom};
use formwitt::rings::{linalg, parse_ring, Ring};
use formwitt::rings::ring::rat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_identity(
        ring in 0usize..7,
        n in 1usize..4,
        c in prop::collection::vec(any::<u64>(), 6),
        u in prop::collection::vec(any::<u64>(), 3),
        v in prop::collection::vec(any::<u64>(), 3),
    ) {
        let r = &finite_rings()[ring];
        let q = pick_form(r, n, &c);
        let (u, v) = (pick_vec(r, &u[..n]), pick_vec(r, &v[..n]));
        let lhs = q.polar_eval(&u, &v).unwrap();
        let rhs = r.sub(&r.sub(&q.evaluate(&vec_add(r, &u, &v)).unwrap(), &q.evaluate(&u).unwrap()), &q.evaluate(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_polar_identity(c in prop::collection::vec(-9i64..10, 6), u in prop::collection::vec(-9i64..10, 3), v in prop::collection::vec(-9i64..10, 3)) {
        let q_ring = Ring::rationals();
        let mut m = linalg::zeros(&q_ring, 3, 3);
        let mut it = c.iter();
        for i in 0..3 {
            for j in i..3 {
                m[i][j] = rat(*it.next().unwrap(), 1 + (i + j) as i64);
            }
        }
        let q = QuadraticForm::new(&q_ring, m).unwrap();
        let u: Vec<_> = u.iter().map(|&x| q_ring.from_int(x)).collect();
        let v: Vec<_> = v.iter().map(|&x| rat(x, 3)).collect();
        let r = &q_ring;
        let rhs = r.sub(&r.sub(&q.evaluate(&vec_add(r, &u, &v)).unwrap(), &q.evaluate(&u).unwrap()), &q.evaluate(&v).unwrap());
        prop_assert_eq!(q.polar_eval(&u, &v).unwrap(), rhs);
    }

    #[test]
    fn inclusion_then_reduction_is_evaluation(c in prop::collection::vec(any::<u64>(), 6), v in prop::collection::vec(any::<u64>(), 3)) {
        let k = Ring::gf(5).unwrap();
        let s = parse_ring("GF(5)[X]/(X^3+3*X^2+2*X)").unwrap();
        let q = pick_form(&k, 3, &c);
        let v = pick_vec(&k, &v);
        let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
        let vs: Vec<_> = v.iter().map(|x| include(&k, &s, x).unwrap()).collect();
        let direct = q.evaluate(&v).unwrap();
        for i in 0..s.residues().unwrap().len() {
            let down = qs.base_change(&RingHom::ToResidue(i)).unwrap();
            let vi: Vec<_> = vs.iter().map(|x| RingHom::ToResidue(i).apply(&s, x).unwrap()).collect();
            prop_assert_eq!(&down.evaluate(&vi).unwrap(), &direct);
        }
    }

    #[test]
    fn tensor_values_on_pure_tensors(
        ring in 0usize..7,
        bm in prop::collection::vec(any::<u64>(), 4),
        c in prop::collection::vec(any::<u64>(), 3),
        xs in prop::collection::vec(any::<u64>(), 8),
    ) {
        let r = &finite_rings()[ring];
        let e = pick_vec(r, &bm[..3]);
        let b = BilinearForm::new(r, vec![vec![e[0].clone(), e[1].clone()], vec![e[1].clone(), e[2].clone()]]).unwrap();
        let q = pick_form(r, 2, &c);
        let t = tensor_bq(&b, &q).unwrap();
        let (m, n, m2, n2) = (pick_vec(r, &xs[0..2]), pick_vec(r, &xs[2..4]), pick_vec(r, &xs[4..6]), pick_vec(r, &xs[6..8]));
        let x = pure_tensor(r, &m, &n);
        let y = pure_tensor(r, &m2, &n2);
        prop_assert_eq!(t.evaluate(&x).unwrap(), r.mul(&b.eval(&m, &m).unwrap(), &q.evaluate(&n).unwrap()));
        prop_assert_eq!(t.polar_eval(&x, &y).unwrap(), r.mul(&b.eval(&m, &m2).unwrap(), &q.polar_eval(&n, &n2).unwrap()));
    }

    #[test]
    fn tensor_with_regular_form_keeps_regularity(ring in 0usize..7, c in prop::collection::vec(any::<u64>(), 3), d in any::<u64>()) {
        let r = &finite_rings()[ring];
        let q = pick_form(r, 2, &c);
        let unit = pick(r, d);
        prop_assume!(r.is_unit(&unit));
        let b = BilinearForm::diagonal(r, &[r.one(), unit]);
        prop_assert_eq!(tensor_bq(&b, &q).unwrap().is_regular(), q.is_regular());
    }
}

#[test]
fn tensor_on_basis_tensors() {
    let r = parse_ring("GF(3)[X]/(X^2)").unwrap();
    let x = r.generator().unwrap();
    let b = BilinearForm::new(&r, vec![vec![r.one(), x.clone()], vec![x.clone(), r.add(&r.one(), &x)]]).unwrap();
    let q = QuadraticForm::new(&r, vec![vec![x.clone(), r.one()], vec![r.zero(), r.from_int(2)]]).unwrap();
    let t = tensor_bq(&b, &q).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let (m, n) = (unit_vector(&r, 2, i), unit_vector(&r, 2, j));
            let v = pure_tensor(&r, &m, &n);
            assert_eq!(t.evaluate(&v).unwrap(), r.mul(&b.eval(&m, &m).unwrap(), &q.evaluate(&n).unwrap()));
            for k in 0..2 {
                for l in 0..2 {
                    let (m2, n2) = (unit_vector(&r, 2, k), unit_vector(&r, 2, l));
                    let w = pure_tensor(&r, &m2, &n2);
                    assert_eq!(
                        t.polar_eval(&v, &w).unwrap(),
                        r.mul(&b.eval(&m, &m2).unwrap(), &q.polar_eval(&n, &n2).unwrap())
                    );
                }
            }
        }
    }
}

#[test]
fn nonsingularity_survives_extension() {
    for (base, ext) in [("GF(3)", "GF(3^3)"), ("GF(2)", "GF(2^3)"), ("GF(2)", "GF(2)[X]/(X^3+X^2)")] {
        let k = parse_ring(base).unwrap();
        let s = parse_ring(ext).unwrap();
        for q in all_forms(&k, 2).into_iter().chain(all_forms(&k, 3)) {
            if q.is_nonsingular().unwrap() {
                assert!(q.base_change(&RingHom::Include(s.clone())).unwrap().is_nonsingular().unwrap(), "{base} -> {ext}");
            }
        }
    }
}

fn all_forms(k: &Ring, n: usize) -> Vec<QuadraticForm> {
    let m = n * (n + 1) / 2;
    all_vectors(k, m)
        .into_iter()
        .map(|c| {
            let mut mat = linalg::zeros(k, n, n);
            let mut it = c.into_iter();
            for i in 0..n {
                for j in i..n {
                    mat[i][j] = it.next().unwrap();
                }
            }
            QuadraticForm::new(k, mat).unwrap()
        })
        .collect()
}

#[test]
fn radical_is_exact_and_maximal() {
    for (name, max_rank) in [("GF(2)", 4), ("GF(3)", 3), ("GF(2^2)", 2)] {
        let k = parse_ring(name).unwrap();
        let size = k.size().unwrap();
        for n in 1..=max_rank {
            for q in all_forms(&k, n) {
                let rad = q.radical().unwrap();
                let bm = q.polar();
                for m in &rad {
                    assert!(k.is_zero(&q.evaluate(m).unwrap()));
                    assert!(linalg::mat_vec(&k, bm.matrix(), m).iter().all(|x| k.is_zero(x)));
                }
                let brute = all_vectors(&k, n)
                    .iter()
                    .filter(|v| {
                        k.is_zero(&q.evaluate(v).unwrap()) && linalg::mat_vec(&k, bm.matrix(), v).iter().all(|x| k.is_zero(x))
                    })
                    .count() as u128;
                assert_eq!(brute, size.pow(rad.len() as u32), "{name} {q:?}");
            }
        }
    }
}
