//! Factorization over finite fields and over Q.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Polynomial;
use super::ring::{Ring, RingElement, RingKind};
use crate::error::{Error, Result};

/// Tuning knobs for [`factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Largest degree factored over Q.
    pub q_degree_bound: usize,
    /// Seed for randomized equal-degree splitting.
    pub seed: u64,
    /// Use trial division when `(field size)^degree` is at most this.
    pub brute_force_limit: u128,
    /// Cap on Kronecker candidates tried over Q.
    pub kronecker_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        let seed = std::env::var("FORMWITT_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        FactorConfig { q_degree_bound: 8, seed, brute_force_limit: 1_000_000, kronecker_budget: 2_000_000 }
    }
}

/// `unit * prod(f_i^{e_i})` with monic irreducible `f_i` sorted by degree,
/// then coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: RingElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self, ring: &Ring) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(ring, self.unit.clone()), |acc, (f, e)| acc.mul(&f.pow(*e as u64)))
    }
}

pub fn factor(f: &Polynomial, cfg: &FactorConfig) -> Result<Factorization> {
    let ring = f.ring().clone();
    let lead = f.leading().ok_or(Error::ZeroPolynomial)?.clone();
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    let monic = f.monic().ok_or(Error::NotAField)?;
    let mut factors = match ring.kind() {
        RingKind::Rational => factor_rational(&monic, cfg)?,
        _ if ring.is_finite() => factor_finite(&monic, cfg)?,
        _ => return Err(Error::Unsupported("factorization over number fields".into())),
    };
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    let mut merged: Vec<(Polynomial, usize)> = Vec::new();
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization { unit: lead, factors: merged })
}

/// Irreducible monic factors with multiplicity of a monic polynomial.
fn factor_finite(f: &Polynomial, cfg: &FactorConfig) -> Result<Vec<(Polynomial, usize)>> {
    let ring = f.ring();
    let q = ring.size().unwrap();
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(Vec::new());
    }
    let small = q.checked_pow(n as u32).is_some_and(|s| s <= cfg.brute_force_limit);
    if small {
        return Ok(trial_division(f));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_finite(f)? {
        for (d, part) in distinct_degree(&sqf, q)? {
            for g in equal_degree(&part, d, q, &mut rng)? {
                out.push((g, mult));
            }
        }
    }
    Ok(out)
}

/// Monic polynomials of degree `k` in canonical order.
fn monics_of_degree(ring: &Ring, k: usize) -> impl Iterator<Item = Polynomial> + '_ {
    let q = ring.size().unwrap();
    let count = q.pow(k as u32);
    (0..count).map(move |idx| {
        let mut coeffs = vec![ring.zero(); k + 1];
        let mut rest = idx;
        for i in (0..k).rev() {
            coeffs[i] = ring.element_at(rest % q);
            rest /= q;
        }
        coeffs[k] = ring.one();
        Polynomial::new(ring, coeffs)
    })
}

fn trial_division(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let ring = f.ring();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= rest.degree().unwrap() {
        for g in monics_of_degree(ring, k) {
            let mut e = 0;
            loop {
                let (quot, rem) = rest.euclidean_divide(&g).unwrap();
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
            if 2 * k > rest.degree().unwrap() {
                break;
            }
        }
        k += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest, 1));
    }
    out
}

fn field_char_and_size(ring: &Ring) -> (u64, u128) {
    (ring.characteristic(), ring.size().unwrap())
}

/// p-th root of a polynomial in X^p over a perfect finite field.
fn pth_root(f: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let (p, q) = field_char_and_size(ring);
    let p = p as usize;
    let coeffs = (0..=f.degree().unwrap() / p)
        .map(|i| ring.pow(&f.coeff(i * p), q / p as u128))
        .collect();
    Polynomial::new(ring, coeffs)
}

/// Square-free parts with multiplicities (monic input).
fn squarefree_finite(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let ring = f.ring();
    let p = ring.characteristic() as usize;
    let mut out = Vec::new();
    let mut stack = vec![(f.clone(), 1usize)];
    while let Some((g, scale)) = stack.pop() {
        if g.degree() == Some(0) {
            continue;
        }
        let d = g.derivative();
        if d.is_zero() {
            stack.push((pth_root(&g), scale * p));
            continue;
        }
        let c = g.gcd(&d)?;
        let mut w = g.div_rem(&c)?.0;
        let mut c = c;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd(&c)?;
            let z = w.div_rem(&y)?.0;
            if z.degree() != Some(0) {
                out.push((z, i * scale));
            }
            w = y;
            c = c.div_rem(&w)?.0;
            i += 1;
        }
        if c.degree() != Some(0) {
            stack.push((pth_root(&c), scale * p));
        }
    }
    Ok(out)
}

/// Split a square-free monic polynomial by the degree of its factors.
fn distinct_degree(f: &Polynomial, q: u128) -> Result<Vec<(usize, Polynomial)>> {
    let ring = f.ring();
    let x = Polynomial::x(ring);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = h.pow_mod(q, &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if g.degree() != Some(0) {
            rest = rest.div_rem(&g)?.0;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest.degree().unwrap(), rest));
    }
    Ok(out)
}

/// `a^(1 + q + ... + q^(d-1))` modulo `f`, computed through Frobenius powers.
fn frobenius_norm_power(a: &Polynomial, d: usize, q: u128, f: &Polynomial) -> Result<Polynomial> {
    let mut acc = a.rem(f)?;
    let mut cur = acc.clone();
    for _ in 1..d {
        cur = cur.pow_mod(q, f)?;
        acc = acc.mul(&cur).rem(f)?;
    }
    Ok(acc)
}

fn random_poly(ring: &Ring, deg: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let q = ring.size().unwrap();
    let coeffs = (0..deg).map(|_| ring.element_at(rng.gen_range(0..q))).collect();
    Polynomial::new(ring, coeffs)
}

/// Equal-degree splitting of a square-free product of degree-`d` factors.
fn equal_degree(f: &Polynomial, d: usize, q: u128, rng: &mut ChaCha8Rng) -> Result<Vec<Polynomial>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let ring = f.ring();
    let (p, _) = field_char_and_size(ring);
    loop {
        let a = random_poly(ring, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to GF(2) of the degree-d extension, k = log2 q
            let k = (q.trailing_zeros()) as usize;
            let mut t = a.rem(f)?;
            let mut cur = t.clone();
            for _ in 1..k * d {
                cur = cur.mul(&cur).rem(f)?;
                t = t.add(&cur);
            }
            t
        } else {
            let nrm = frobenius_norm_power(&a, d, q, f)?;
            nrm.pow_mod((q - 1) / 2, f)?.sub(&Polynomial::one(ring))
        };
        let g = b.gcd(f)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g)?.0;
            let mut out = equal_degree(&g, d, q, rng)?;
            out.extend(equal_degree(&h, d, q, rng)?);
            return Ok(out);
        }
    }
}

// ---- Q -------------------------------------------------------------------

fn integer_coeffs(f: &Polynomial) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            RingElement::Rational(r) => r,
            _ => unreachable!(),
        })
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|r| (*r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn from_integer_coeffs(ring: &Ring, c: &[BigInt]) -> Polynomial {
    Polynomial::new(ring, c.iter().map(|x| ring.from_bigint(x)).collect())
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn factor_rational(f: &Polynomial, cfg: &FactorConfig) -> Result<Vec<(Polynomial, usize)>> {
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > cfg.q_degree_bound {
        return Err(Error::DegreeBoundExceeded { degree: n, bound: cfg.q_degree_bound });
    }
    // square-free decomposition (Yun, characteristic zero)
    let mut parts = Vec::new();
    let d = f.derivative();
    let mut a = f.gcd(&d)?;
    let mut b = f.div_rem(&a)?.0;
    let mut c = d.div_rem(&a)?.0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() != Some(0) {
        a = b.gcd(&dd)?;
        if a.degree() != Some(0) {
            parts.push((a.clone(), i));
        }
        b = b.div_rem(&a)?.0;
        c = dd.div_rem(&a)?.0;
        dd = c.sub(&b.derivative());
        i += 1;
    }
    let mut out = Vec::new();
    for (part, mult) in parts {
        for g in factor_squarefree_rational(&part, cfg)? {
            out.push((g, mult));
        }
    }
    Ok(out)
}

fn factor_squarefree_rational(f: &Polynomial, cfg: &FactorConfig) -> Result<Vec<Polynomial>> {
    let ring = f.ring().clone();
    let mut c = integer_coeffs(f);
    let mut out = Vec::new();
    // rational roots p/q: p | c_0, q | c_n
    loop {
        if c.len() <= 1 {
            break;
        }
        if c[0].is_zero() {
            out.push(Polynomial::x(&ring));
            c.remove(0);
            continue;
        }
        let lead = c.last().unwrap().clone();
        let mut found = None;
        'search: for p in divisors(&c[0]) {
            for q in divisors(&lead) {
                for s in [1i32, -1] {
                    let num = &p * BigInt::from(s);
                    // q^n f(p/q) = sum c_i p^i q^(n-i)
                    let n = c.len() - 1;
                    let val = c.iter().enumerate().fold(BigInt::zero(), |acc, (i, ci)| {
                        acc + ci * num.pow(i as u32) * q.pow((n - i) as u32)
                    });
                    if val.is_zero() {
                        found = Some(BigRational::new(num, q.clone()));
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        let lin = Polynomial::new(&ring, vec![RingElement::Rational(-root), ring.one()]);
        out.push(lin.clone());
        let rest = from_integer_coeffs(&ring, &c).div_rem(&lin)?.0;
        c = integer_coeffs(&rest);
    }
    let rest = from_integer_coeffs(&ring, &c);
    out.extend(kronecker(&rest, cfg)?);
    Ok(out)
}

/// Lagrange interpolation through integer points; `None` unless the result
/// has integer coefficients and exact degree `s`.
fn interpolate(xs: &[BigInt], ys: &[BigInt], s: usize) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![BigRational::zero(); s + 1];
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if coeffs[s].is_zero() || coeffs.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

/// Kronecker's method on a square-free polynomial without rational roots.
fn kronecker(f: &Polynomial, cfg: &FactorConfig) -> Result<Vec<Polynomial>> {
    let ring = f.ring().clone();
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    if n <= 3 {
        return Ok(vec![f.monic().unwrap()]);
    }
    let c = integer_coeffs(f);
    let mut budget = cfg.kronecker_budget;
    for s in 2..=n / 2 {
        let xs: Vec<BigInt> = (0..=s as i64).map(|i| BigInt::from(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })).collect();
        let vals: Vec<BigInt> = xs.iter().map(|x| eval_int(&c, x)).collect();
        let divs: Vec<Vec<BigInt>> = vals
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let d = divisors(v);
                if i == 0 {
                    d
                } else {
                    d.iter().flat_map(|x| [x.clone(), -x]).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; s + 1];
        loop {
            if budget == 0 {
                return Err(Error::FactorizationBound);
            }
            budget -= 1;
            let ys: Vec<BigInt> = idx.iter().zip(&divs).map(|(&k, d)| d[k].clone()).collect();
            if let Some(g) = interpolate(&xs, &ys, s) {
                let gp = from_integer_coeffs(&ring, &g);
                let (quot, rem) = f.div_rem(&gp)?;
                if rem.is_zero() {
                    let mut out = kronecker(&gp, cfg)?;
                    out.extend(kronecker(&quot, cfg)?);
                    return Ok(out);
                }
            }
            let mut pos = 0;
            loop {
                if pos > s {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > s {
                break;
            }
        }
    }
    Ok(vec![f.monic().unwrap()])
}

/// Whether a root of `f` exists in its (finite) coefficient field.
pub fn has_root(f: &Polynomial) -> bool {
    f.ring().elements().any(|x| f.ring().is_zero(&f.eval(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> FactorConfig {
        FactorConfig::default()
    }

    #[test]
    fn x2_plus_1_over_gf5() {
        let k = Ring::gf(5).unwrap();
        let f = Polynomial::from_ints(&k, &[1, 0, 1]);
        let fac = factor(&f, &cfg()).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Polynomial::from_ints(&k, &[2, 1]), 1), (Polynomial::from_ints(&k, &[3, 1]), 1)]
        );
    }

    #[test]
    fn x3_minus_2_irreducible_over_q() {
        let q = Ring::rationals();
        let f = Polynomial::from_ints(&q, &[-2, 0, 0, 1]);
        let fac = factor(&f, &cfg()).unwrap();
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn kronecker_finds_quadratic_pair() {
        let q = Ring::rationals();
        let a = Polynomial::from_ints(&q, &[1, 0, 1]);
        let b = Polynomial::from_ints(&q, &[-2, 0, 1]);
        let f = a.mul(&b).scale(&q.from_int(3));
        let fac = factor(&f, &cfg()).unwrap();
        assert_eq!(fac.factors, vec![(b, 1), (a, 1)]);
        assert_eq!(fac.expand(&q), f);
    }

    #[test]
    fn q_degree_bound() {
        let q = Ring::rationals();
        let f = Polynomial::monomial(&q, q.one(), 9).add(&Polynomial::one(&q));
        assert_eq!(factor(&f, &cfg()), Err(Error::DegreeBoundExceeded { degree: 9, bound: 8 }));
    }

    #[test]
    fn large_finite_uses_berlekamp_free_path() {
        let k = Ring::gf(101).unwrap();
        let a = Polynomial::from_ints(&k, &[3, 0, 1]); // x^2+3
        let b = Polynomial::from_ints(&k, &[5, 1, 0, 1]);
        let c = Polynomial::from_ints(&k, &[7, 1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fac = factor(&f, &cfg()).unwrap();
        assert_eq!(fac.expand(&k), f);
        for (g, _) in &fac.factors {
            let d = g.degree().unwrap();
            assert!(d == 1 || !has_root(g) || d > 3);
        }
    }

    #[test]
    fn char_two_extension_splitting() {
        let k = Ring::gf_ext(2, 3).unwrap();
        let a = k.generator().unwrap();
        let mut f = Polynomial::one(&k);
        for e in k.elements().take(8) {
            if e != a {
                f = f.mul(&Polynomial::new(&k, vec![k.neg(&e), k.one()]));
            }
        }
        let cfg = FactorConfig { brute_force_limit: 10, ..cfg() };
        let fac = factor(&f, &cfg).unwrap();
        assert_eq!(fac.factors.len(), 7);
        assert_eq!(fac.expand(&k), f);
    }
}
