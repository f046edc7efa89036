mod common;

use common::{finite_rings, pick, pick_monic, pick_poly};
use formwitt::rings::{algebra_norm, crt_combine, factor, parse_ring, FactorConfig, Polynomial, Ring};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_reconstructs(
        ring in 0usize..7,
        f in prop::collection::vec(any::<u64>(), 0..8),
        g in prop::collection::vec(any::<u64>(), 1..4),
    ) {
        let r = &finite_rings()[ring];
        let f = pick_poly(r, &f);
        let g = pick_monic(r, &g);
        let (q, rem) = f.euclidean_divide(&g).unwrap();
        prop_assert_eq!(g.mul(&q).add(&rem), f);
        prop_assert!(rem.degree().map_or(true, |d| d < g.degree().unwrap()));
    }

    #[test]
    fn factorization_multiplies_back(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        f in prop::collection::vec(any::<u64>(), 1..7),
        lead in 1u64..7,
    ) {
        let k = Ring::gf(p).unwrap();
        let mut f = pick_monic(&k, &f);
        f = f.scale(&k.from_int((lead % p).max(1) as i64));
        let fac = factor(&f, &FactorConfig::default()).unwrap();
        prop_assert_eq!(fac.expand(&k), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            if g.degree() > Some(1) {
                prop_assert!(k.elements().all(|x| !k.is_zero(&g.eval(&x))));
            }
        }
    }

    #[test]
    fn norm_detects_units(which in 0usize..4, s in any::<u64>()) {
        let (base, modulus) = [
            ("GF(3)", "X^3+2*X+1"),
            ("GF(5)", "X^3+3*X^2+2*X"),
            ("GF(3)", "X^3"),
            ("GF(2)", "X^3+X^2+X+1"),
        ][which];
        let r = parse_ring(base).unwrap();
        let s_ring = Ring::quotient(&r, formwitt::rings::parse_poly(&r, modulus).unwrap()).unwrap();
        let x = pick(&s_ring, s);
        let n = algebra_norm(&s_ring, &x).unwrap();
        prop_assert_eq!(r.is_unit(&n), s_ring.is_unit(&x));
    }

    #[test]
    fn crt_then_reduce_is_identity(ring in 0usize..7, seeds in prop::collection::vec(any::<u64>(), 4)) {
        let r = &finite_rings()[ring];
        let data = r.residues().unwrap();
        let vals: Vec<_> = data.residues.iter().zip(seeds.iter().cycle()).map(|(res, &s)| pick(&res.field, s)).collect();
        let x = crt_combine(r, &vals).unwrap();
        prop_assert_eq!(data.reduce_all(r, &x), vals);
    }

    #[test]
    fn product_ops_are_componentwise(a in any::<u64>(), b in any::<u64>()) {
        let r = parse_ring("GF(3) x GF(5)[X]/(X^2)").unwrap();
        let fs = r.factors().unwrap().to_vec();
        let (x, y) = (pick(&r, a), pick(&r, b));
        for (i, f) in fs.iter().enumerate() {
            let (xi, yi) = (r.project(&x, i), r.project(&y, i));
            prop_assert_eq!(r.project(&r.add(&x, &y), i), f.add(&xi, &yi));
            prop_assert_eq!(r.project(&r.mul(&x, &y), i), f.mul(&xi, &yi));
            prop_assert_eq!(r.project(&r.neg(&x), i), f.neg(&xi));
        }
        prop_assert_eq!(r.is_unit(&x), fs.iter().enumerate().all(|(i, f)| f.is_unit(&r.project(&x, i))));
    }
}

#[test]
fn rational_division_reconstructs() {
    let q = Ring::rationals();
    let f = Polynomial::from_ints(&q, &[3, -1, 4, 1, -5, 9]);
    let g = Polynomial::from_ints(&q, &[2, 6, 1]);
    let (quot, rem) = f.euclidean_divide(&g).unwrap();
    assert_eq!(g.mul(&quot).add(&rem), f);
    let fac = factor(&Polynomial::from_ints(&q, &[-2, 0, 0, 1]).mul(&g), &FactorConfig::default()).unwrap();
    assert_eq!(fac.expand(&q), Polynomial::from_ints(&q, &[-2, 0, 0, 1]).mul(&g));
}
