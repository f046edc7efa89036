use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use formwitt::clifford::{even_clifford, is_split, rank2_springer};
use formwitt::descent::{construct_lemma_pr, represents_descend, springer};
use formwitt::error::Error;
use formwitt::forms::{pure_tensor, tensor_bq, unit_vector, BilinearForm, QuadraticForm, RingHom, Vector};
use formwitt::lifting::{is_complemented, lift_isotropic, LiftProblem};
use formwitt::rings::ring::rat;
use formwitt::rings::{linalg, parse_ring, Matrix, Polynomial, Ring, RingElement, RingKind};
use formwitt::witt::{self, IsometryVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{self, Algebra, Elem, Form, IsotropyCache, Local, Poly, Split};
use crate::{lib_elem, lib_form, lib_poly, lib_vector, oracle_poly, oracle_vector, Config, Report, Tally};

fn rng(cfg: &Config, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ id)
}

fn gf(p: u32) -> Ring {
    Ring::gf(p as u64).unwrap()
}

/// Every form of rank `n` over GF(p).
fn all_forms(p: u32, n: usize) -> Vec<Form> {
    let m = n * (n + 1) / 2;
    let total = (p as usize).pow(m as u32);
    (0..total)
        .map(|mut idx| {
            let e: Vec<u32> = (0..m)
                .map(|_| {
                    let x = (idx % p as usize) as u32;
                    idx /= p as usize;
                    x
                })
                .collect();
            Form::from_upper(p, n, &e)
        })
        .collect()
}

/// Forms with diagonal entries from `diag` and the listed off-diagonal
/// positions ranging over `off`.
fn grid(p: u32, n: usize, diag: &[u32], slots: &[(usize, usize)], off: &[u32]) -> Vec<Form> {
    let mut out = vec![Form::diagonal(p, &vec![0; n])];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                diag.iter().map(move |&d| {
                    let mut g = f.clone();
                    g.c[i][i] = d;
                    g
                })
            })
            .collect();
    }
    for &(i, j) in slots {
        out = out
            .into_iter()
            .flat_map(|f| {
                off.iter().map(move |&x| {
                    let mut g = f.clone();
                    g.c[i][j] = x;
                    g
                })
            })
            .collect();
    }
    out
}

/// The coefficient grid for the isotropy comparison.
fn springer_grid(p: u32, n: usize) -> Vec<Form> {
    let forms = match (p, n) {
        (2, _) | (3, 2) | (3, 3) | (5, 2) => all_forms(p, n),
        (3, 4) => grid(3, 4, &[1, 2], &[(0, 1), (2, 3)], &[0, 1]),
        (5, 3) => grid(5, 3, &[1, 2, 3, 4], &[(0, 1)], &[0, 1]),
        (5, 4) => grid(5, 4, &[1, 2], &[(0, 1)], &[0, 1]),
        _ => unreachable!(),
    };
    forms.into_iter().filter(Form::is_nonsingular).collect()
}

fn verified_over(k: &Ring, f: &Form, w: &[RingElement]) -> bool {
    let q = lib_form(k, f);
    let kk = Algebra::prime(f.p);
    let ow = oracle_vector(w);
    k.is_zero(&q.evaluate(w).unwrap()) && witt::is_unimodular(k, w) && kk.is_zero(&f.eval(&kk, &ow)) && oracle::is_unimodular(&kk, &ow)
}

/// Criteria 1 and 2: isotropy over `GF(p)[X]/(P)` against isotropy over
/// `GF(p)` for every monic `P` of degree 1, 3, 5, and the descended witness
/// for every isotropic instance.
pub fn springer_equivalence(cfg: &Config) -> (Report, Report) {
    let _ = cfg;
    let start = Instant::now();
    let mut t1 = Tally::new();
    let mut t2 = Tally::new();
    let mut descent_time = Duration::ZERO;
    let mut forms_total = 0usize;
    for p in [2u32, 3, 5] {
        let k = gf(p);
        let polys: Vec<Poly> = [1, 3, 5].iter().flat_map(|&d| oracle::monic_polys(p, d)).collect();
        let splits: Vec<Split> = polys.iter().map(|f| Split::new(p, f)).collect();
        let mut lib_rings: Vec<Option<(Ring, Polynomial)>> = vec![None; polys.len()];
        let mut locals = HashMap::new();
        let base = Local::new(p, &[0, 1], 1);
        for n in 2..=4 {
            for f in springer_grid(p, n) {
                forms_total += 1;
                let over_r = base.isotropic(&f);
                let q = lib_form(&k, &f);
                let lib_r = witt::find_isotropic(&q).map(|r| r.is_isotropic());
                t1.check(matches!(lib_r, Ok(b) if b == over_r.is_some()), || format!("library isotropy over GF({p}) for {:?}", f.c));
                let mut cache = IsotropyCache::new(&f, &mut locals);
                for (i, split) in splits.iter().enumerate() {
                    let over_s = cache.over(split);
                    t1.check(over_s.is_some() == over_r.is_some(), || format!("GF({p}) {:?} P={:?}", f.c, polys[i]));
                    let Some(w) = over_s else { continue };
                    let t = Instant::now();
                    let (s, pl) = lib_rings[i].get_or_insert_with(|| {
                        let pl = lib_poly(&k, &polys[i]);
                        (Ring::quotient(&k, pl.clone()).unwrap(), pl)
                    });
                    let z = lib_vector(&k, s, &w, split.whole.dim);
                    let ok = match springer(&q, pl, &z) {
                        Ok(out) => verified_over(&k, &f, &out.witness),
                        Err(_) => false,
                    };
                    t2.check(ok, || format!("springer over GF({p}) {:?} P={:?}", f.c, polys[i]));
                    descent_time += t.elapsed();
                }
            }
        }
    }
    t1.check(forms_total >= 1000, || format!("only {forms_total} forms enumerated"));
    let t = Instant::now();
    rational_instances(&mut t2);
    descent_time += t.elapsed();
    let r1 = Report {
        id: 1,
        name: "Springer equivalence: isotropy over R[X]/(P) iff over R",
        checked: t1.checked,
        failures: t1.failures,
        elapsed: start.elapsed().saturating_sub(descent_time),
    };
    let r2 = Report {
        id: 2,
        name: "descent soundness: exact unimodular witnesses over GF(p) and Q",
        checked: t2.checked,
        failures: t2.failures,
        elapsed: descent_time,
    };
    (r1, r2)
}

/// Isotropic forms over Q pushed through odd-degree number fields: the
/// extension witness is the second intersection of a line through a rational
/// zero with direction `(1, θ, θ^2, ...)`.
fn rational_instances(t: &mut Tally) {
    let qq = Ring::rationals();
    let forms: Vec<(Vec<i64>, Vec<i64>)> = vec![
        (vec![1, 1, -2], vec![1, 1, 1]),
        (vec![1, -1, 1], vec![1, 1, 0]),
        (vec![1, 1, -5], vec![1, 2, 1]),
        (vec![1, 2, -3], vec![1, 1, 1]),
        (vec![1, -2, -7], vec![3, 1, 1]),
        (vec![1, 1, 1, -3], vec![1, 1, 1, 1]),
    ];
    let moduli: Vec<Vec<i64>> = vec![vec![-2, 0, 0, 1], vec![-3, 0, 0, 1], vec![-1, -1, 0, 1], vec![-2, 0, 0, 0, 0, 1]];
    for (diag, w) in &forms {
        let q = QuadraticForm::diagonal(&qq, &diag.iter().map(|&a| rat(a, 1)).collect::<Vec<_>>());
        for m in &moduli {
            let p = Polynomial::new(&qq, m.iter().map(|&c| rat(c, 1)).collect());
            let s = Ring::quotient(&qq, p.clone()).unwrap();
            let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
            let th = s.generator().unwrap();
            let ws: Vector = w.iter().map(|&c| s.from_int(c)).collect();
            let dir: Vector = (0..q.rank()).map(|i| s.pow(&th, i as u128 + 1)).collect();
            let qd = qs.evaluate(&dir).unwrap();
            let b = qs.polar_eval(&ws, &dir).unwrap();
            let z: Vector = ws.iter().zip(&dir).map(|(x, y)| s.sub(&s.mul(&qd, x), &s.mul(&b, y))).collect();
            assert!(s.is_zero(&qs.evaluate(&z).unwrap()) && z.iter().any(|x| !s.is_zero(x)));
            let ok = match springer(&q, &p, &z) {
                Ok(out) => qq.is_zero(&q.evaluate(&out.witness).unwrap()) && out.witness.iter().any(|x| !qq.is_zero(x)),
                Err(_) => false,
            };
            t.check(ok, || format!("Q form {diag:?} through {m:?}"));
        }
    }
}

fn poly_eval(f: &[u32], x: u32, p: u32) -> u32 {
    f.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

fn random_form(r: &mut ChaCha8Rng, p: u32, n: usize) -> Form {
    let e: Vec<u32> = (0..n * (n + 1) / 2).map(|_| r.gen_range(0..p)).collect();
    Form::from_upper(p, n, &e)
}

fn random_monic(r: &mut ChaCha8Rng, p: u32, d: usize) -> Poly {
    let mut f: Poly = (0..d).map(|_| r.gen_range(0..p)).collect();
    f.push(1);
    f
}

/// Criterion 3: the explicit vector `v(X)` with `P | q(v(X))`.
pub fn lemma_contract(cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = rng(cfg, 3);
    let mut t = Tally::new();
    let primes = [2u32, 3, 5, 7];
    for i in 0..500 {
        let p = primes[i % primes.len()];
        let k = gf(p);
        let n = r.gen_range(3..=4);
        let f = loop {
            let f = random_form(&mut r, p, n);
            if f.is_nonsingular() {
                break f;
            }
        };
        let d = r.gen_range(2..=6);
        let big_p = random_monic(&mut r, p, d);
        let ok = match construct_lemma_pr(&lib_form(&k, &f), None, &lib_poly(&k, &big_p)) {
            Ok(l) => {
                let coords: Vec<Poly> = l.vector.coordinates().iter().map(oracle_poly).collect();
                let mut value = Vec::new();
                for a in 0..n {
                    for b in a..n {
                        if f.c[a][b] != 0 {
                            let term = oracle::poly_mul(&coords[a], &coords[b], p);
                            value = oracle::poly_add(&value, &term.iter().map(|x| x * f.c[a][b] % p).collect::<Vec<_>>(), p);
                        }
                    }
                }
                let unit = crate::residue_value(&l.unit);
                let claimed = oracle::poly_mul(&oracle::poly_mul(&big_p, &oracle_poly(&l.cofactor), p), &[unit], p);
                let degree_ok = value.len() == 2 * d - 1;
                let divisible = oracle::poly_rem(&value, &big_p, p).is_empty();
                let zero_free = (0..p).all(|x| coords.iter().any(|c| poly_eval(c, x, p) != 0));
                let unimodular = coords.iter().fold(Vec::new(), |g, c| oracle::poly_gcd(&g, c, p)) == vec![1];
                degree_ok && divisible && zero_free && unimodular && claimed == value && unit != 0
            }
            Err(_) => false,
        };
        t.check(ok, || format!("GF({p}) q={:?} P={big_p:?}", f.c));
    }
    t.finish(3, "lemma vector: degree 2d-2, divisible by P, no zeros, unimodular", start)
}

/// Form with coefficients in a small algebra.
struct AForm {
    c: Vec<Vec<Elem>>,
}

impl AForm {
    fn eval(&self, a: &Algebra, v: &[Elem]) -> Elem {
        let n = self.c.len();
        let mut acc = a.zero();
        for i in 0..n {
            for j in i..n {
                acc = a.add(&acc, &a.mul(&self.c[i][j], &a.mul(&v[i], &v[j])));
            }
        }
        acc
    }

    fn reduce(&self, b: &Algebra) -> AForm {
        AForm { c: self.c.iter().map(|row| row.iter().map(|x| b.from_poly(&oracle::trim(x.to_vec()))).collect()).collect() }
    }

    fn polar(&self, a: &Algebra, u: &[Elem], v: &[Elem]) -> Elem {
        let s: Vec<Elem> = u.iter().zip(v).map(|(x, y)| a.add(x, y)).collect();
        let t = a.add(&self.eval(a, &s), &a.neg(&self.eval(a, u)));
        a.add(&t, &a.neg(&self.eval(a, v)))
    }
}

/// Criterion 4: Newton lifting over `GF(p)[X]/(f^e)`.
pub fn hensel_lifting(cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = rng(cfg, 4);
    let mut t = Tally::new();
    let primes = [2u32, 3, 5];
    let mut done = 0;
    while done < 200 {
        let p = primes[r.gen_range(0..primes.len())];
        let k = gf(p);
        let fdeg = r.gen_range(1..=2);
        let irreducibles: Vec<Poly> = oracle::monic_polys(p, fdeg).into_iter().filter(|g| oracle::is_irreducible(g, p)).collect();
        let f = irreducibles[r.gen_range(0..irreducibles.len())].clone();
        let e = r.gen_range(2..=4);
        let a = Algebra::new(p, &oracle::poly_pow(&f, e, p));
        let b = Algebra::new(p, &f);
        let n = 3;
        let q = AForm {
            c: (0..n).map(|i| (0..n).map(|j| if j >= i { a.element(r.gen_range(0..a.size())) } else { a.zero() }).collect()).collect(),
        };
        let qb = q.reduce(&b);
        let vecs = oracle::all_vectors(&b, n);
        let basis: Vec<Vec<Elem>> = (0..n).map(|i| oracle::unit(&b, n, i)).collect();
        let nonsingular = vecs.iter().skip(1).all(|v| !b.is_zero(&qb.eval(&b, v)) || basis.iter().any(|u| !b.is_zero(&qb.polar(&b, v, u))));
        if !nonsingular {
            continue;
        }
        let smooth: Vec<&Vec<Elem>> = vecs
            .iter()
            .skip(1)
            .filter(|v| b.is_zero(&qb.eval(&b, v)) && basis.iter().any(|u| !b.is_zero(&qb.polar(&b, v, u))))
            .collect();
        let w0 = smooth[r.gen_range(0..smooth.len())].clone();
        done += 1;

        let ring = Ring::quotient(&k, lib_poly(&k, &a.modulus)).unwrap();
        let mut m = linalg::zeros(&ring, n, n);
        for i in 0..n {
            for j in i..n {
                m[i][j] = lib_elem(&k, &ring, &q.c[i][j], a.dim);
            }
        }
        let lq = QuadraticForm::new(&ring, m).unwrap();
        let data = ring.residues().unwrap();
        let res = &data.residues[0];
        let witness: Vector = w0.iter().map(|x| res.reduce(&ring, &lib_elem(&k, &ring, x, a.dim))).collect();
        let bound = (e as f64).log2().ceil() as usize;
        let ok = match lift_isotropic(&LiftProblem { form: lq.clone(), witnesses: vec![witness.clone()] }) {
            Ok(out) => {
                let ov: Vec<Elem> = out.vector.iter().map(|x| a.from_poly(&oracle_poly(&ring.to_base_poly(x)))).collect();
                let reduces = ov.iter().zip(&w0).all(|(x, y)| b.from_poly(&a.to_poly(x)) == *y);
                ring.is_zero(&lq.evaluate(&out.vector).unwrap())
                    && a.is_zero(&q.eval(&a, &ov))
                    && res.reduce_vec(&ring, &out.vector) == witness
                    && reduces
                    && out.nilpotency == e
                    && out.iterations <= bound
            }
            Err(_) => false,
        };
        t.check(ok, || format!("GF({p})[X]/(f^{e}) f={f:?}"));
    }
    t.finish(4, "Hensel lifting: exact lift, exact reductions, at most ceil(log2 e) steps", start)
}

fn random_element(r: &mut ChaCha8Rng, ring: &Ring) -> RingElement {
    ring.element_at(r.gen_range(0..ring.size().unwrap()))
}

fn random_lib_form(r: &mut ChaCha8Rng, ring: &Ring, n: usize) -> QuadraticForm {
    let mut m = linalg::zeros(ring, n, n);
    for i in 0..n {
        for j in i..n {
            m[i][j] = random_element(r, ring);
        }
    }
    QuadraticForm::new(ring, m).unwrap()
}

fn finite_rings(specs: &[&str]) -> Vec<Ring> {
    specs.iter().map(|s| parse_ring(s).unwrap()).collect()
}

fn all_lib_vectors(ring: &Ring, n: usize) -> Vec<Vector> {
    let elems: Vec<RingElement> = ring.elements().collect();
    let total = elems.len().pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = elems[idx % elems.len()].clone();
                    idx /= elems.len();
                    e
                })
                .collect()
        })
        .collect()
}

/// Criterion 5: `q ⊥ -q` is hyperbolic with an exactly verified Lagrangian.
pub fn hyperbolic_doubles(cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = rng(cfg, 5);
    let mut t = Tally::new();
    let rings = finite_rings(&[
        "GF(2)",
        "GF(3)",
        "GF(5)",
        "GF(2^2)",
        "GF(3)[X]/(X^2)",
        "GF(5)[X]/(X^2+3*X+2)",
        "GF(2)[X]/(X^2+X)",
        "GF(3) x GF(5)",
    ]);
    let mut done = 0;
    while done < 500 {
        let ring = &rings[done % rings.len()];
        let n = r.gen_range(1..=3);
        let q = random_lib_form(&mut r, ring, n);
        if !q.is_regular() {
            continue;
        }
        done += 1;
        let qq = q.direct_sum(&q.neg()).unwrap();
        let ok = (|| -> Option<bool> {
            let u = witt::is_hyperbolic(&qq).ok()??;
            let mut ok = u.len() == n;
            for (i, x) in u.iter().enumerate() {
                ok &= ring.is_zero(&qq.evaluate(x).ok()?);
                for y in &u[i..] {
                    ok &= ring.is_zero(&qq.polar_eval(x, y).ok()?);
                }
            }
            ok &= is_complemented(ring, &u).ok()?;
            if ring.size()?.pow(2 * n as u32) <= 1 << 16 {
                let perp: HashSet<Vector> = all_lib_vectors(ring, 2 * n)
                    .into_iter()
                    .filter(|x| u.iter().all(|y| ring.is_zero(&qq.polar_eval(x, y).unwrap())))
                    .collect();
                let span: HashSet<Vector> = all_lib_vectors(ring, n)
                    .into_iter()
                    .map(|c| {
                        c.iter().zip(&u).fold(vec![ring.zero(); 2 * n], |acc, (ci, y)| {
                            acc.iter().zip(y).map(|(a, b)| ring.add(a, &ring.mul(ci, b))).collect()
                        })
                    })
                    .collect();
                ok &= perp == span;
            }
            let hc = witt::hyperbolic_complete(&qq, &u).ok()?;
            ok &= hc.complement.is_empty();
            let moved = qq.transport(&hc.isometry).ok()?;
            let h = QuadraticForm::hyperbolic_space(ring, n);
            ok &= (0..2 * n).all(|i| (i..2 * n).all(|j| moved.coeff(i, j) == h.coeff(i, j)));
            Some(ok)
        })()
        .unwrap_or(false);
        t.check(ok, || format!("{ring}: {q:?}"));
    }
    t.finish(5, "q + (-q) hyperbolic: Lagrangian U = U^perp and H(U) isometry", start)
}

/// Criterion 6: `(b ⊗ q)(m ⊗ n) = b(m, m) q(n)` and the polar identity.
pub fn tensor_identity(cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = rng(cfg, 6);
    let mut t = Tally::new();
    let rings = finite_rings(&["GF(2)", "GF(2^2)", "GF(3)", "GF(5)[X]/(X^2+3*X+2)", "GF(3)[X]/(X^3)", "GF(3) x GF(5)"]);
    for ring in &rings {
        let pairs: Vec<(usize, usize)> = vec![(1, 2), (2, 2), (2, 3), (3, 1), (3, 3)];
        for (pi, &(m, n)) in pairs.iter().enumerate() {
            let mut bm = linalg::zeros(ring, m, m);
            for i in 0..m {
                for j in i..m {
                    let x = random_element(&mut r, ring);
                    bm[i][j] = x.clone();
                    bm[j][i] = x;
                }
            }
            let b = BilinearForm::new(ring, bm).unwrap();
            let q = random_lib_form(&mut r, ring, n);
            let tq = tensor_bq(&b, &q).unwrap();
            let check = |t: &mut Tally, x: &[RingElement], y: &[RingElement], x2: &[RingElement], y2: &[RingElement]| {
                let u = pure_tensor(ring, x, y);
                let v = pure_tensor(ring, x2, y2);
                let value = tq.evaluate(&u).unwrap() == ring.mul(&b.eval(x, x).unwrap(), &q.evaluate(y).unwrap());
                let polar = tq.polar_eval(&u, &v).unwrap() == ring.mul(&b.eval(x, x2).unwrap(), &q.polar_eval(y, y2).unwrap());
                t.check(value && polar, || format!("{ring}: b={b:?} q={q:?}"));
            };
            for i in 0..m {
                for j in 0..n {
                    for k in 0..m {
                        for l in 0..n {
                            let (ei, fj) = (unit_vector(ring, m, i), unit_vector(ring, n, j));
                            check(&mut t, &ei, &fj, &unit_vector(ring, m, k), &unit_vector(ring, n, l));
                        }
                    }
                }
            }
            let count = 1000 / pairs.len() + usize::from(pi < 1000 % pairs.len());
            for _ in 0..count {
                let x: Vector = (0..m).map(|_| random_element(&mut r, ring)).collect();
                let y: Vector = (0..n).map(|_| random_element(&mut r, ring)).collect();
                let x2: Vector = (0..m).map(|_| random_element(&mut r, ring)).collect();
                let y2: Vector = (0..n).map(|_| random_element(&mut r, ring)).collect();
                check(&mut t, &x, &y, &x2, &y2);
            }
        }
    }
    t.finish(6, "tensor identity b(m,m) q(n) and its polar, basis and random pure tensors", start)
}

fn extension_modulus(p: u32, d: usize) -> Poly {
    if d == 1 {
        vec![0, 1]
    } else {
        oracle::least_irreducible(p, d)
    }
}

/// Criterion 7: binary forms, the even Clifford algebra and odd degree.
pub fn binary_forms(cfg: &Config) -> Report {
    let _ = cfg;
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [2u32, 3, 5, 7] {
        let k = gf(p);
        let base = Local::new(p, &[0, 1], 1);
        let forms: Vec<Form> = all_forms(p, 2).into_iter().filter(Form::is_nonsingular).collect();
        for d in [1usize, 3, 5] {
            let modulus = extension_modulus(p, d);
            let ext = Local::new(p, &modulus, 1);
            let s = Ring::quotient(&k, lib_poly(&k, &modulus)).unwrap();
            for f in &forms {
                let q = lib_form(&k, f);
                let over_r = base.isotropic(f).is_some();
                let w_s = ext.isotropic(f);
                let alg = even_clifford(&q).unwrap();
                let split_r = is_split(&alg).map(|x| x.is_some());
                let split_s = alg.base_change(&s).and_then(|a| is_split(&a)).map(|x| x.is_some());
                let verdict = rank2_springer(&q, &s, None);
                let verdict_ok = match &verdict {
                    Ok(v) => v.is_isotropic() == over_r && v.witness().map_or(true, |w| verified_over(&k, f, w)),
                    Err(_) => false,
                };
                let guided_ok = match &w_s {
                    Some(w) => {
                        let z = lib_vector(&k, &s, w, d);
                        matches!(rank2_springer(&q, &s, Some(&z)), Ok(v) if v.witness().is_some_and(|w| verified_over(&k, f, w)))
                    }
                    None => true,
                };
                let ok = matches!(split_r, Ok(x) if x == over_r)
                    && matches!(split_s, Ok(x) if x == w_s.is_some())
                    && over_r == w_s.is_some()
                    && verdict_ok
                    && guided_ok;
                t.check(ok, || format!("GF({p}) d={d} {:?}", f.c));
            }
        }
    }
    // z^2 + 1 over GF(3) splits over GF(9): even degree breaks the descent.
    let k = gf(3);
    let f = Form::diagonal(3, &[1, 1]);
    let nine = Ring::quotient(&k, lib_poly(&k, &[1, 0, 1])).unwrap();
    let q = lib_form(&k, &f);
    let alg = even_clifford(&q).unwrap();
    let ok = Local::new(3, &[0, 1], 1).isotropic(&f).is_none()
        && Local::new(3, &[1, 0, 1], 1).isotropic(&f).is_some()
        && matches!(is_split(&alg), Ok(None))
        && matches!(alg.base_change(&nine).and_then(|a| is_split(&a)), Ok(Some(_)))
        && matches!(rank2_springer(&q, &nine, None), Err(Error::EvenDegree(2)));
    t.check(ok, || "even-degree counterexample over GF(9)".into());
    t.finish(7, "binary forms: Clifford verdict equals brute force on both sides", start)
}

/// Criterion 8: represented units descend.
pub fn value_descent(cfg: &Config) -> Report {
    let _ = cfg;
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3u32, 5] {
        let k = gf(p);
        let base = Local::new(p, &[0, 1], 1);
        let split_cubic = oracle::poly_mul(&oracle::poly_mul(&[0, 1], &[p - 1, 1], p), &[p - 2, 1], p);
        let moduli = vec![vec![0, 1], oracle::least_irreducible(p, 3), split_cubic];
        let splits: Vec<Split> = moduli.iter().map(|m| Split::new(p, m)).collect();
        let locals: Vec<Vec<Local>> = splits.iter().map(|s| s.parts.iter().map(|(f, e)| Local::new(p, f, *e)).collect()).collect();
        let rings: Vec<(Ring, Polynomial)> = moduli
            .iter()
            .map(|m| {
                let pl = lib_poly(&k, m);
                (Ring::quotient(&k, pl.clone()).unwrap(), pl)
            })
            .collect();
        for n in 1..=3 {
            for f in all_forms(p, n).into_iter().filter(Form::is_nonsingular) {
                let q = lib_form(&k, &f);
                for a in 1..p {
                    let over_r = base.represents(&f, &base.alg.scalar(a));
                    for (i, split) in splits.iter().enumerate() {
                        let comps: Option<Vec<Vec<Elem>>> = locals[i].iter().map(|l| l.represents(&f, &l.alg.scalar(a))).collect();
                        let over_s = comps.map(|c| split.combine_vectors(&c));
                        let mut ok = over_s.is_some() == over_r.is_some();
                        if let (true, Some(x)) = (ok, &over_s) {
                            let (s, pl) = &rings[i];
                            let z = lib_vector(&k, s, x, split.whole.dim);
                            let av = k.from_int(a as i64);
                            ok = match represents_descend(&q, &av, pl, &z) {
                                Ok(m) => {
                                    let kk = Algebra::prime(p);
                                    q.evaluate(&m).unwrap() == av && f.eval(&kk, &oracle_vector(&m)) == kk.scalar(a)
                                }
                                Err(_) => false,
                            };
                        }
                        t.check(ok, || format!("GF({p}) {:?} a={a} P={:?}", f.c, moduli[i]));
                    }
                }
            }
        }
    }
    t.finish(8, "value descent: a in D(q_S) iff a in D(q), exact representing vectors", start)
}

/// Criterion 9: anisotropic kernels over GF(p) stay pairwise non-isometric
/// over GF(p^d), d odd.
pub fn witt_monomorphism(cfg: &Config) -> Report {
    let _ = cfg;
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3u32, 5] {
        let k = gf(p);
        let base = Local::new(p, &[0, 1], 1);
        let kernels: Vec<Form> = (1..=2)
            .flat_map(|n| all_forms(p, n))
            .filter(|f| f.is_nonsingular() && base.isotropic(f).is_none())
            .collect();
        let mut classes: Vec<Vec<Form>> = Vec::new();
        for f in kernels {
            match classes.iter_mut().find(|c| oracle::isometric(&c[0], &f)) {
                Some(c) => c.push(f),
                None => classes.push(vec![f]),
            }
        }
        for d in [3usize, 5] {
            let modulus = oracle::least_irreducible(p, d);
            let ext = Local::new(p, &modulus, 1);
            let s = Ring::quotient(&k, lib_poly(&k, &modulus)).unwrap();
            let up = |f: &Form| lib_form(&k, f).base_change(&RingHom::Include(s.clone())).unwrap();
            for class in &classes {
                for f in class {
                    let index = witt::witt_decompose(&up(f)).map(|w| w.index);
                    t.check(ext.isotropic(f).is_none() && matches!(index, Ok(0)), || format!("GF({p}^{d}) kernel {:?}", f.c));
                }
            }
            for (i, ci) in classes.iter().enumerate() {
                for cj in &classes[i + 1..] {
                    for f in ci {
                        for g in cj {
                            let lib = witt::is_isometric(&up(f), &up(g));
                            let oracle_ok = f.rank() != g.rank() || f.rank() != 1 || {
                                // <a> and <b> are isometric over S iff a y^2 = b has a solution.
                                let (a, b) = (ext.alg.scalar(f.c[0][0]), ext.alg.scalar(g.c[0][0]));
                                !ext.elems.iter().any(|y| ext.alg.mul(&a, &ext.alg.mul(y, y)) == b)
                            };
                            t.check(matches!(lib, Ok(IsometryVerdict::NotIsometric)) && oracle_ok, || {
                                format!("GF({p}^{d}) {:?} vs {:?}", f.c, g.c)
                            });
                        }
                    }
                }
            }
        }
    }
    t.finish(9, "Witt monomorphism: non-isometric kernels stay non-isometric over GF(p^d)", start)
}

/// Random invertible matrix as a product of elementary operations.
fn random_invertible(r: &mut ChaCha8Rng, ring: &Ring, n: usize) -> Matrix {
    let mut m = linalg::identity(ring, n);
    let units: Vec<RingElement> = ring.elements().filter(|x| ring.is_unit(x)).collect();
    for _ in 0..3 * n {
        let i = r.gen_range(0..n);
        let j = r.gen_range(0..n);
        if i == j {
            let u = &units[r.gen_range(0..units.len())];
            m[i] = m[i].iter().map(|x| ring.mul(u, x)).collect();
        } else {
            let c = random_element(r, ring);
            let row: Vec<RingElement> = m[j].iter().map(|x| ring.mul(&c, x)).collect();
            m[i] = m[i].iter().zip(&row).map(|(a, b)| ring.add(a, b)).collect();
        }
    }
    m
}

fn random_nonsingular(r: &mut ChaCha8Rng, ring: &Ring, n: usize) -> QuadraticForm {
    loop {
        let q = random_lib_form(r, ring, n);
        if q.is_nonsingular().unwrap() {
            return q;
        }
    }
}

/// Criterion 10: Witt cancellation against direct isometry of complements.
pub fn witt_cancellation(cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = rng(cfg, 10);
    let mut t = Tally::new();
    let rings = finite_rings(&["GF(3)", "GF(5)", "GF(2^2)", "GF(3)[X]/(X^2)", "GF(5)[X]/(X^2+3*X+2)", "GF(3) x GF(5)"]);
    for i in 0..300 {
        let ring = &rings[i % rings.len()];
        let q1 = loop {
            let n1 = r.gen_range(1..=2);
            let q = random_lib_form(&mut r, ring, n1);
            if q.is_regular() {
                break q;
            }
        };
        let n2 = r.gen_range(1..=2);
        let q2 = random_nonsingular(&mut r, ring, n2);
        let constructed = r.gen_bool(0.5);
        let q2p = if constructed {
            q2.transport(&random_invertible(&mut r, ring, n2)).unwrap()
        } else {
            random_nonsingular(&mut r, ring, n2)
        };
        let sum = q1.direct_sum(&q2).unwrap();
        let mut sum2 = q1.direct_sum(&q2p).unwrap();
        if r.gen_bool(0.5) {
            sum2 = sum2.transport(&random_invertible(&mut r, ring, sum2.rank())).unwrap();
        }
        let direct = witt::is_isometric(&q2, &q2p).map(|v| v != IsometryVerdict::NotIsometric);
        let expected = match (&direct, matches!(ring.kind(), RingKind::Prime(_))) {
            (Ok(x), true) => {
                let p = ring.characteristic() as u32;
                let to_form = |q: &QuadraticForm| {
                    let n = q.rank();
                    Form::new(p, (0..n).map(|a| (0..n).map(|b| if b >= a { crate::residue_value(q.coeff(a, b)) } else { 0 }).collect()).collect())
                };
                let truth = constructed || oracle::isometric(&to_form(&q2), &to_form(&q2p));
                (*x == truth).then_some(truth)
            }
            (Ok(x), false) => (!constructed || *x).then_some(*x),
            (Err(_), _) => None,
        };
        let ok = match (expected, witt::witt_cancel(&q1, &sum, &sum2)) {
            (Some(e), Ok(c)) => (c.verdict != IsometryVerdict::NotIsometric) == e,
            _ => false,
        };
        t.check(ok, || format!("{ring}: q1={q1:?} q2={q2:?} q2'={q2p:?}"));
    }
    t.finish(10, "Witt cancellation agrees with direct isometry of complements", start)
}
