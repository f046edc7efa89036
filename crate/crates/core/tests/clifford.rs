mod common;

use common::{all_vectors, finite_rings, pick_form, pick_monic};
use formwitt::clifford::{even_clifford, is_split, rank2_springer, QuadraticEtale};
use formwitt::forms::QuadraticForm;
use formwitt::rings::{factor, parse_ring, FactorConfig, Ring};
use formwitt::witt::{self, IsotropyResult};
use proptest::prelude::*;

fn brute_isotropic(q: &QuadraticForm) -> bool {
    let r = q.ring();
    all_vectors(r, q.rank())
        .iter()
        .any(|v| witt::is_unimodular(r, v) && r.is_zero(&q.evaluate(v).unwrap()))
}

fn fields() -> Vec<Ring> {
    ["GF(2)", "GF(3)", "GF(5)", "GF(7)", "GF(2^2)"].iter().map(|s| parse_ring(s).unwrap()).collect()
}

#[test]
fn split_iff_isotropic_for_binary_forms() {
    for k in fields() {
        let size = k.size().unwrap() as u64;
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let q = pick_form(&k, 2, &[a, b, c]);
                    if !q.is_nonsingular().unwrap() {
                        continue;
                    }
                    let alg = even_clifford(&q).unwrap();
                    assert_eq!(is_split(&alg).unwrap().is_some(), brute_isotropic(&q), "{k} {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn odd_extensions_agree_with_brute_force() {
    for (k, low) in [("GF(2)", vec![1u64, 1, 0]), ("GF(3)", vec![1, 2, 0]), ("GF(5)", vec![1, 1, 0])] {
        let k = parse_ring(k).unwrap();
        let p = pick_monic(&k, &low);
        let s = Ring::quotient(&k, p).unwrap();
        let size = k.size().unwrap() as u64;
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let q = pick_form(&k, 2, &[a, b, c]);
                    if !q.is_nonsingular().unwrap() {
                        continue;
                    }
                    let got = matches!(rank2_springer(&q, &s, None).unwrap(), IsotropyResult::Isotropic { .. });
                    assert_eq!(got, brute_isotropic(&q), "{k} {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn idempotent_has_zero_norm() {
    for k in fields() {
        for beta in k.elements() {
            for gamma in k.elements() {
                let Ok(alg) = QuadraticEtale::new(&k, beta.clone(), gamma.clone()) else { continue };
                if let Some(root) = is_split(&alg).unwrap() {
                    let e = alg.idempotent(&root).unwrap();
                    assert!(k.is_zero(&alg.norm(&e)));
                    assert_eq!(alg.mul(&e, &e), e);
                }
            }
        }
    }
}

#[test]
fn irreducible_minimal_polynomial_is_not_split() {
    for k in fields() {
        for beta in k.elements() {
            for gamma in k.elements() {
                let Ok(alg) = QuadraticEtale::new(&k, beta.clone(), gamma.clone()) else { continue };
                let fac = factor(&alg.minimal_polynomial(), &FactorConfig::default()).unwrap();
                let irreducible = fac.factors.len() == 1 && fac.factors[0].1 == 1;
                assert_eq!(is_split(&alg).unwrap().is_none(), irreducible);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hensel_roots_are_exact(which in 0usize..7, beta in any::<u64>(), gamma in any::<u64>()) {
        let r = &finite_rings()[which];
        let (b, g) = (common::pick(r, beta), common::pick(r, gamma));
        let Ok(alg) = QuadraticEtale::new(r, b, g) else { return Ok(()) };
        if let Some(z) = is_split(&alg).unwrap() {
            prop_assert!(r.is_zero(&alg.minimal_polynomial().eval(&z)));
        }
    }
}
