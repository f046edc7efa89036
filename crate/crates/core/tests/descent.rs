use formwitt::descent::{construct_lemma_pr, descend_semilocal, springer, PolyVector};
use formwitt::forms::{include, QuadraticForm, RingHom, Vector};
use formwitt::rings::{linalg, parse_ring, Polynomial, Ring, RingElement};
use formwitt::witt;
use proptest::prelude::*;

fn embed(r: &Ring, s: &Ring, v: &[RingElement]) -> Vector {
    v.iter().map(|x| include(r, s, x).unwrap()).collect()
}

fn form(r: &Ring, c: &[i64], n: usize) -> QuadraticForm {
    let mut m = linalg::zeros(r, n, n);
    let mut it = c.iter();
    for i in 0..n {
        for j in i..n {
            m[i][j] = r.from_int(*it.next().unwrap());
        }
    }
    QuadraticForm::new(r, m).unwrap()
}

fn monic(r: &Ring, low: &[i64]) -> Polynomial {
    let mut c: Vec<i64> = low.to_vec();
    c.push(1);
    Polynomial::from_ints(r, &c)
}

/// First isotropic unimodular vector over `s` with last coordinate 1 and the
/// others drawn from a rotating start index.
fn extension_witness(q: &QuadraticForm, s: &Ring, start: usize) -> Option<Vector> {
    let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
    let elems: Vec<RingElement> = s.elements().collect();
    let n = q.rank();
    let total = elems.len().pow((n - 1) as u32);
    (0..total).map(|i| (i + start) % total).find_map(|mut idx| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n - 1 {
            v.push(elems[idx % elems.len()].clone());
            idx /= elems.len();
        }
        v.push(s.one());
        s.is_zero(&qs.evaluate(&v).unwrap()).then_some(v)
    })
}

fn exhaustive_isotropic(q: &QuadraticForm) -> bool {
    let r = q.ring();
    let elems: Vec<RingElement> = r.elements().collect();
    let n = q.rank();
    (1..elems.len().pow(n as u32)).any(|mut idx| {
        let v: Vec<RingElement> = (0..n)
            .map(|_| {
                let e = elems[idx % elems.len()].clone();
                idx /= elems.len();
                e
            })
            .collect();
        r.is_zero(&q.evaluate(&v).unwrap()) && witt::is_unimodular(r, &v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemma_vector_divisible_and_zero_free(
        diag in prop::array::uniform3(1i64..5),
        low in prop::collection::vec(0i64..5, 2..6),
    ) {
        let k = Ring::gf(5).unwrap();
        let q = QuadraticForm::diagonal(&k, &diag.iter().map(|&x| k.from_int(x)).collect::<Vec<_>>());
        let p = monic(&k, &low);
        let d = p.degree().unwrap();
        let l = construct_lemma_pr(&q, None, &p).unwrap();
        let value = l.vector.quadratic_value(&q).unwrap();
        prop_assert_eq!(value.degree(), Some(2 * d - 2));
        prop_assert!(value.euclidean_divide(&p).unwrap().1.is_zero());
        prop_assert!(l.cofactor.is_monic());
        prop_assert!(l.vector.zeros().is_empty());
    }

    #[test]
    fn springer_witness_is_sound(
        diag in prop::array::uniform3(1i64..5),
        low in prop::array::uniform3(0i64..5),
        start in 0usize..15625,
    ) {
        let k = Ring::gf(5).unwrap();
        let q = QuadraticForm::diagonal(&k, &diag.iter().map(|&x| k.from_int(x)).collect::<Vec<_>>());
        let p = monic(&k, &low);
        let s = Ring::quotient(&k, p.clone()).unwrap();
        let z = extension_witness(&q, &s, start).unwrap();
        let out = springer(&q, &p, &z).unwrap();
        prop_assert!(k.is_zero(&q.evaluate(&out.witness).unwrap()));
        prop_assert!(witt::is_unimodular(&k, &out.witness));
    }

    #[test]
    fn binary_isotropy_is_preserved(
        c in prop::array::uniform3(0i64..3),
        low in prop::array::uniform3(0i64..3),
    ) {
        let k = Ring::gf(3).unwrap();
        let q = form(&k, &c, 2);
        prop_assume!(q.is_nonsingular().unwrap());
        let p = monic(&k, &low);
        let s = Ring::quotient(&k, p.clone()).unwrap();
        let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
        let over_s = exhaustive_isotropic(&qs);
        prop_assert_eq!(over_s, exhaustive_isotropic(&q));
        if over_s {
            let z = extension_witness(&q, &s, 0)
                .or_else(|| Some(vec![s.one(), s.zero()]).filter(|v| s.is_zero(&qs.evaluate(v).unwrap())))
                .unwrap();
            let w = springer(&q, &p, &z).unwrap().witness;
            prop_assert!(k.is_zero(&q.evaluate(&w).unwrap()));
        }
    }
}

#[test]
fn trace_degrees_drop_by_two() {
    let r = parse_ring("GF(3)[X]/(X^2)").unwrap();
    let x = r.generator().unwrap();
    let q = QuadraticForm::diagonal(&r, &[r.one(), r.add(&r.one(), &x), r.one()]);
    let p = Polynomial::new(&r, vec![r.one(), x.clone(), r.from_int(2), r.zero(), r.zero(), r.one()]);
    let s = Ring::quotient(&r, p.clone()).unwrap();
    let th = s.generator().unwrap();
    // (1 + X)^2 + (1 + X) + 1 = 0 in GF(3)[X]/(X^2).
    let base = [r.add(&r.one(), &x), r.one(), r.one()];
    let z: Vector = embed(&r, &s, &base).iter().map(|c| s.mul(c, &th)).collect();
    let t = descend_semilocal(&q, &p, &z).unwrap();
    assert_eq!(t.degrees(), vec![5, 3, 1]);
    for step in &t.steps {
        let ring = Ring::quotient(&r, step.modulus.clone()).unwrap();
        let qs = q.base_change(&RingHom::Include(ring.clone())).unwrap();
        assert!(ring.is_zero(&qs.evaluate(&step.witness).unwrap()));
        if let Some(c) = &step.cofactor {
            assert_eq!(c.degree(), Some(step.degree - 2));
            assert!(c.is_monic());
        }
    }
    assert!(r.is_zero(&q.evaluate(&t.witness).unwrap()));
    assert!(witt::is_unimodular(&r, &t.witness));
}

#[test]
fn product_trace_is_componentwise() {
    let r = parse_ring("GF(3) x GF(5)").unwrap();
    let q = QuadraticForm::diagonal(&r, &[r.one(), r.one(), r.one()]);
    let p = Polynomial::new(
        &r,
        vec![
            RingElement::Tuple(vec![r.factors().unwrap()[0].one(), r.factors().unwrap()[1].one()]),
            RingElement::Tuple(vec![r.factors().unwrap()[0].from_int(2), r.factors().unwrap()[1].one()]),
            r.zero(),
            r.one(),
        ],
    );
    let s = Ring::quotient(&r, p.clone()).unwrap();
    let w0 = RingElement::Tuple(vec![r.factors().unwrap()[0].one(), r.factors().unwrap()[1].zero()]);
    let w1 = RingElement::Tuple(vec![r.factors().unwrap()[0].one(), r.factors().unwrap()[1].one()]);
    let w2 = RingElement::Tuple(vec![r.factors().unwrap()[0].one(), r.factors().unwrap()[1].from_int(2)]);
    let z = embed(&r, &s, &[w0, w1, w2]);
    let out = springer(&q, &p, &z).unwrap();
    assert!(r.is_zero(&q.evaluate(&out.witness).unwrap()));
    let t = descend_semilocal(&q, &p, &z).unwrap();
    assert_eq!(t.degrees(), vec![3, 1]);
    assert!(r.is_zero(&q.evaluate(&t.witness).unwrap()));
}

#[test]
fn polyvector_round_trip() {
    let k = Ring::gf(7).unwrap();
    let p = Polynomial::from_ints(&k, &[3, 0, 1, 1]);
    let s = Ring::quotient(&k, p.clone()).unwrap();
    let m = vec![vec![k.from_int(1), k.from_int(2)], vec![k.from_int(0), k.from_int(5)], vec![k.from_int(4), k.zero()]];
    let v = PolyVector::from_coefficients(&k, 2, &m).unwrap();
    assert_eq!(v.degree(), Some(2));
    assert_eq!(v.coefficients(), m);
    let back = PolyVector::from_algebra(&s, &v.to_algebra(&s).unwrap());
    assert_eq!(back, v);
    let q = form(&k, &[1, 0, 1], 2);
    let direct = q.base_change(&RingHom::Include(s.clone())).unwrap().evaluate(&v.to_algebra(&s).unwrap()).unwrap();
    assert_eq!(s.to_base_poly(&direct), v.quadratic_value(&q).unwrap().euclidean_divide(&p).unwrap().1);
}

fn extensions() -> Vec<(Ring, Ring)> {
    [(2, 3), (2, 5), (3, 3), (3, 5), (5, 3), (5, 5)]
        .iter()
        .map(|&(p, d)| (Ring::gf(p).unwrap(), Ring::gf_ext(p, d).unwrap()))
        .collect()
}

fn binary_forms(k: &Ring) -> Vec<QuadraticForm> {
    let e: Vec<RingElement> = k.elements().collect();
    let mut out = Vec::new();
    for a in &e {
        for b in &e {
            for c in &e {
                let m = vec![vec![a.clone(), b.clone()], vec![k.zero(), c.clone()]];
                let q = QuadraticForm::new(k, m).unwrap();
                if q.is_nonsingular().unwrap() {
                    out.push(q);
                }
            }
        }
    }
    out
}

fn include_form(q: &QuadraticForm, s: &Ring) -> QuadraticForm {
    q.base_change(&RingHom::Include(s.clone())).unwrap()
}

#[test]
fn anisotropic_kernels_stay_anisotropic() {
    for (k, s) in extensions() {
        let mut kernels: Vec<QuadraticForm> = binary_forms(&k).into_iter().filter(|q| witt::witt_decompose(q).unwrap().index == 0).collect();
        kernels.extend(k.elements().filter(|a| k.is_unit(a)).map(|a| QuadraticForm::diagonal(&k, &[a])));
        assert!(!kernels.is_empty());
        for q in &kernels {
            assert_eq!(witt::witt_decompose(&include_form(q, &s)).unwrap().index, 0, "{q:?} over {s}");
        }
    }
}

#[test]
fn hyperbolic_index_descends() {
    for (k, s) in extensions().into_iter().take(3) {
        let forms = binary_forms(&k);
        for q1 in forms.iter().step_by(3) {
            for q2 in forms.iter().step_by(5) {
                let q = q1.direct_sum(q2).unwrap();
                let down = witt::witt_decompose(&q).unwrap().index;
                let up = witt::witt_decompose(&include_form(&q, &s)).unwrap().index;
                assert_eq!(down, up);
                assert_eq!(witt::is_hyperbolic(&q).unwrap().is_some(), 2 * up == q.rank());
            }
        }
    }
}

#[test]
fn isometry_descends() {
    for (k, s) in extensions().into_iter().filter(|(_, s)| s.size().unwrap() <= 243) {
        let forms = binary_forms(&k);
        for (i, q1) in forms.iter().enumerate().step_by(2) {
            for q2 in forms.iter().skip(i).step_by(3) {
                let down = witt::is_isometric(q1, q2).unwrap() != witt::IsometryVerdict::NotIsometric;
                let up = witt::is_isometric(&include_form(q1, &s), &include_form(q2, &s)).unwrap()
                    != witt::IsometryVerdict::NotIsometric;
                assert_eq!(down, up, "{q1:?} {q2:?} over {s}");
            }
        }
    }
}
