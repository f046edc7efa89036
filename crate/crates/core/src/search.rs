//! Exhaustive search kernels.
//!
//! Finite non-product rings are flattened to coordinates over GF(p). Vectors
//! are enumerated in lexicographic order: every prefix of the first `n - 1`
//! entries is visited in order (in parallel, chunk by chunk, keeping the first
//! hit), and the last entry `y` runs through the ring with `q` updated
//! incrementally as `A + B*y + c*y^2`.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::forms::{QuadraticForm, Vector};
use crate::par::{self, Parallelism};
use crate::rings::{linalg, Ring, RingElement};

/// Limits for the exhaustive and bounded searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of candidate vectors examined over a finite ring.
    pub budget: u64,
    /// Maximum number of primitive integer vectors tried over Q.
    pub height_bound: u64,
    pub parallelism: Parallelism,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 1_000_000_000, height_bound: 10_000, parallelism: Parallelism::default() }
    }
}

/// Result of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vector),
    Exhausted,
    BudgetExceeded,
}

/// A finite non-product ring as a GF(p)-algebra with structure constants.
pub struct FlatAlgebra {
    ring: Ring,
    p: u64,
    dim: usize,
    size: u64,
    /// `mult[(i * dim + j) * dim + k]`: k-th coordinate of `b_i * b_j`.
    mult: Vec<u64>,
    /// Per residue field, the GF(p)-matrix of the reduction map.
    residue_rows: Vec<Vec<Vec<u64>>>,
}

fn residue_value(e: &RingElement) -> u64 {
    match e {
        RingElement::Residue(r) => *r,
        _ => unreachable!("prime field coordinate"),
    }
}

impl FlatAlgebra {
    pub fn new(ring: &Ring) -> Result<FlatAlgebra> {
        let p = ring.characteristic();
        assert!(p != 0 && !ring.is_product(), "finite non-product ring expected");
        let dim = ring.dim();
        let size = ring.size().and_then(|s| u64::try_from(s).ok()).unwrap_or(u64::MAX);
        let mut mult = vec![0; dim * dim * dim];
        let basis: Vec<RingElement> = (0..dim).map(|i| ring.basis_element(i)).collect();
        for i in 0..dim {
            for j in 0..dim {
                let c = ring.to_coords(&ring.mul(&basis[i], &basis[j]));
                for (k, x) in c.iter().enumerate() {
                    mult[(i * dim + j) * dim + k] = residue_value(x);
                }
            }
        }
        let data = ring.residues()?;
        let mat = data.reduction_matrix.clone().unwrap_or_else(|| {
            linalg::identity(&ring.prime_subfield().unwrap(), dim)
        });
        let mut residue_rows = Vec::new();
        let mut offset = 0;
        for r in &data.residues {
            let rows = r.field.dim();
            residue_rows.push(
                mat[offset..offset + rows].iter().map(|row| row.iter().map(residue_value).collect()).collect(),
            );
            offset += rows;
        }
        Ok(FlatAlgebra { ring: ring.clone(), p, dim, size, mult, residue_rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn encode(&self, e: &RingElement) -> Vec<u64> {
        self.ring.to_coords(e).iter().map(residue_value).collect()
    }

    pub fn decode(&self, c: &[u64]) -> RingElement {
        let coords: Vec<RingElement> = c.iter().map(|&x| RingElement::Residue(x)).collect();
        self.ring.from_coords(&coords)
    }

    /// Coordinates of the element with the given canonical index.
    fn digits(&self, mut index: u64, out: &mut [u64]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.p;
            index /= self.p;
        }
    }

    fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let d = self.dim;
        let p = self.p;
        out.iter_mut().for_each(|x| *x = 0);
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                let s = a[i] * b[j] % p;
                let base = (i * d + j) * d;
                for k in 0..d {
                    out[k] = (out[k] + s * self.mult[base + k]) % p;
                }
            }
        }
    }

    fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = (*x + y) % self.p;
        }
    }

    /// Some coordinate survives in every residue field.
    fn is_unimodular(&self, entries: &[&[u64]]) -> bool {
        let p = self.p;
        self.residue_rows.iter().all(|rows| {
            entries.iter().any(|e| rows.iter().any(|row| row.iter().zip(e.iter()).fold(0, |acc, (r, x)| (acc + r * x) % p) != 0))
        })
    }
}

struct FlatForm {
    n: usize,
    /// Upper-triangular coefficients, `coeffs[i * n + j]`.
    coeffs: Vec<Vec<u64>>,
}

fn pow_u128(base: u64, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(exp as u32)
}

/// Lexicographically least vector with `q(v) = target` (unimodular when
/// `target` is `None`, meaning zero), over a finite non-product ring.
pub fn exhaustive_search(
    q: &QuadraticForm,
    target: Option<&RingElement>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let ring = q.ring();
    let n = q.rank();
    if n == 0 {
        let hit = target.is_some_and(|t| ring.is_zero(t));
        return Ok(if hit { SearchOutcome::Found(Vec::new()) } else { SearchOutcome::Exhausted });
    }
    let alg = FlatAlgebra::new(ring)?;
    let d = alg.dim;
    let size = alg.size;
    if size > (1 << 20) {
        return Ok(SearchOutcome::BudgetExceeded);
    }
    let form = FlatForm {
        n,
        coeffs: (0..n * n).map(|k| alg.encode(q.coeff(k / n, k % n))).collect(),
    };
    let goal: Vec<u64> = match target {
        Some(t) => alg.encode(t),
        None => vec![0; d],
    };
    let want_unimodular = target.is_none();

    // c_nn * y^2 for every y in canonical order
    let last = &form.coeffs[(n - 1) * n + (n - 1)];
    let mut sq = vec![0u64; size as usize * d];
    let mut y = vec![0u64; d];
    let mut t1 = vec![0u64; d];
    for idx in 0..size {
        alg.digits(idx, &mut y);
        alg.mul_into(&y, &y, &mut t1);
        alg.mul_into(last, &t1, &mut sq[idx as usize * d..(idx as usize + 1) * d]);
    }

    let prefixes = pow_u128(size, n - 1).unwrap_or(u128::MAX);
    let chunk = (1u128 << 18).div_ceil(size as u128).max(1);
    let mut start: u128 = 0;
    let mut consumed: u128 = 0;
    while start < prefixes {
        let len = chunk.min(prefixes - start);
        consumed += len * size as u128;
        if consumed > cfg.budget as u128 {
            return Ok(SearchOutcome::BudgetExceeded);
        }
        let hit = par::find_map_first(len as u64, cfg.parallelism, |off| {
            scan_prefix(&alg, &form, &sq, start + off as u128, &goal, want_unimodular)
        });
        if let Some((prefix, y)) = hit {
            let mut v: Vector = prefix.iter().map(|c| alg.decode(c)).collect();
            v.push(alg.decode(&y));
            return Ok(SearchOutcome::Found(v));
        }
        start += len;
    }
    Ok(SearchOutcome::Exhausted)
}

type Hit = (Vec<Vec<u64>>, Vec<u64>);

fn scan_prefix(alg: &FlatAlgebra, form: &FlatForm, sq: &[u64], index: u128, goal: &[u64], unimodular: bool) -> Option<Hit> {
    let n = form.n;
    let d = alg.dim;
    let p = alg.p;
    // prefix entries, most significant first
    let mut prefix = vec![vec![0u64; d]; n - 1];
    let mut rest = index;
    for v in prefix.iter_mut().rev() {
        let e = (rest % alg.size as u128) as u64;
        rest /= alg.size as u128;
        alg.digits(e, v);
    }
    let mut a = vec![0u64; d];
    let mut b = vec![0u64; d];
    let mut t1 = vec![0u64; d];
    let mut t2 = vec![0u64; d];
    for i in 0..n - 1 {
        if prefix[i].iter().all(|&x| x == 0) {
            continue;
        }
        let mut row = vec![0u64; d];
        for j in i..n - 1 {
            alg.mul_into(&form.coeffs[i * n + j], &prefix[j], &mut t1);
            alg.add_assign(&mut row, &t1);
        }
        alg.mul_into(&prefix[i], &row, &mut t2);
        alg.add_assign(&mut a, &t2);
        alg.mul_into(&form.coeffs[i * n + n - 1], &prefix[i], &mut t1);
        alg.add_assign(&mut b, &t1);
    }
    let prefix_unimodular = unimodular && {
        let refs: Vec<&[u64]> = prefix.iter().map(|v| v.as_slice()).collect();
        alg.is_unimodular(&refs)
    };
    // b * e_t for each coordinate t of y
    let mut be = vec![vec![0u64; d]; d];
    let mut unit = vec![0u64; d];
    for (t, slot) in be.iter_mut().enumerate() {
        unit.iter_mut().for_each(|x| *x = 0);
        unit[t] = 1;
        alg.mul_into(&b, &unit, slot);
    }
    let mut ydig = vec![0u64; d];
    let mut by = vec![0u64; d];
    for yi in 0..alg.size {
        let s = &sq[yi as usize * d..(yi as usize + 1) * d];
        let hit = (0..d).all(|k| (a[k] + by[k] + s[k]) % p == goal[k]);
        if hit {
            let ok = !unimodular || prefix_unimodular || {
                let mut refs: Vec<&[u64]> = prefix.iter().map(|v| v.as_slice()).collect();
                refs.push(&ydig);
                alg.is_unimodular(&refs)
            };
            if ok {
                return Some((prefix, ydig));
            }
        }
        // advance y in lexicographic order, updating b*y incrementally
        for t in (0..d).rev() {
            for k in 0..d {
                by[k] = (by[k] + be[t][k]) % p;
            }
            ydig[t] += 1;
            if ydig[t] < p {
                break;
            }
            ydig[t] = 0;
        }
    }
    None
}

// ---- Q -------------------------------------------------------------------

/// Least common denominator scaling of a rational form to integer
/// coefficients (upper triangular, `c_ij` for `i <= j`).
pub(crate) fn integer_coefficients(q: &QuadraticForm) -> Vec<Vec<BigInt>> {
    let n = q.rank();
    let rat = |e: &RingElement| match e {
        RingElement::Rational(r) => r.clone(),
        _ => unreachable!(),
    };
    let mut l = BigInt::one();
    for i in 0..n {
        for j in i..n {
            l = l.lcm(rat(q.coeff(i, j)).denom());
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| (rat(q.coeff(i, j)) * BigRational::from_integer(l.clone())).to_integer()).collect())
        .collect()
}

pub(crate) fn eval_int(c: &[Vec<BigInt>], x: &[BigInt]) -> BigInt {
    let n = x.len();
    let mut acc = BigInt::zero();
    for i in 0..n {
        for j in i..n {
            if !c[i][j].is_zero() {
                acc += &c[i][j] * &x[i] * &x[j];
            }
        }
    }
    acc
}

/// Outcome of the bounded-height search over Q.
pub enum HeightOutcome {
    Found(Vec<BigInt>),
    Unknown,
}

/// First primitive integer vector (by height, then lexicographically, first
/// nonzero entry positive) satisfying `pred`, trying at most `bound` vectors.
pub fn height_search(n: usize, bound: u64, pred: impl Fn(&[BigInt]) -> bool) -> HeightOutcome {
    if n == 0 {
        return HeightOutcome::Unknown;
    }
    let mut tried = 0u64;
    let mut h: i64 = 1;
    loop {
        let side = (2 * h + 1) as u64;
        let total = side.checked_pow(n as u32);
        if total.is_none() {
            return HeightOutcome::Unknown;
        }
        let mut x = vec![-h; n];
        loop {
            let height = x.iter().map(|v| v.abs()).max().unwrap();
            let first_pos = x.iter().find(|v| **v != 0).is_some_and(|v| *v > 0);
            if height == h && first_pos && x.iter().fold(0i64, |g, v| g.gcd(v)) == 1 {
                tried += 1;
                if tried > bound {
                    return HeightOutcome::Unknown;
                }
                let big: Vec<BigInt> = x.iter().map(|v| BigInt::from(*v)).collect();
                if pred(&big) {
                    return HeightOutcome::Found(big);
                }
            }
            // odometer over [-h, h]^n, last entry fastest
            let mut wrapped = true;
            for slot in x.iter_mut().rev() {
                *slot += 1;
                if *slot <= h {
                    wrapped = false;
                    break;
                }
                *slot = -h;
            }
            if wrapped {
                break;
            }
        }
        h += 1;
    }
}

/// Whether `x^T C x = 0 mod p^k` has a solution with some entry prime to p
/// (exhaustive; `None` when the residue space is too large).
pub fn primitive_solution_mod(c: &[Vec<BigInt>], p: u64, k: u32, limit: u64) -> Option<bool> {
    let n = c.len();
    let m = p.checked_pow(k)?;
    let total = m.checked_pow(n as u32)?;
    if total > limit {
        return None;
    }
    let cm: Vec<Vec<i128>> = c
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&BigInt::from(m)).to_i128().unwrap()).collect())
        .collect();
    let m = m as i128;
    let mut x = vec![0i128; n];
    for _ in 0..total {
        if x.iter().any(|v| v % p as i128 != 0) {
            let mut acc = 0i128;
            for i in 0..n {
                for j in i..n {
                    acc = (acc + cm[i][j] * x[i] % m * x[j]) % m;
                }
            }
            if acc == 0 {
                return Some(true);
            }
        }
        for slot in x.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    Some(false)
}

pub(crate) fn small_primes_dividing(n: &BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let n = n.abs();
    if n.is_zero() {
        return out;
    }
    for p in 2u64..200 {
        if crate::rings::ring::is_prime(p) && (&n % BigInt::from(p)).is_zero() {
            out.push(p);
        }
    }
    out
}

pub(crate) fn bigint_vector(ring: &Ring, x: &[BigInt]) -> Vector {
    x.iter().map(|v| ring.from_bigint(v)).collect()
}

pub(crate) fn signum(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring;

    fn ints(r: &Ring, v: &[i64]) -> Vector {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    fn brute(q: &QuadraticForm) -> Option<Vector> {
        let r = q.ring();
        let n = q.rank();
        let s = r.size().unwrap();
        let total = s.pow(n as u32);
        (0..total).find_map(|mut idx| {
            let mut v = vec![r.zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = r.element_at(idx % s);
                idx /= s;
            }
            let zero = r.is_zero(&q.evaluate(&v).unwrap());
            (zero && crate::rings::is_unimodular(r, &v).unwrap()).then_some(v)
        })
    }

    #[test]
    fn matches_brute_force_lex_least() {
        for rs in ["GF(5)", "GF(3^2)", "GF(3)[X]/(X^2)", "GF(2)[X]/(X^2+X)", "GF(2^2)"] {
            let r = parse_ring(rs).unwrap();
            let els: Vec<RingElement> = r.elements().collect();
            for seed in 0..12usize {
                let pick = |k: usize| els[(seed * 7 + k * 13 + k * k) % els.len()].clone();
                let c = vec![vec![pick(0), pick(1), pick(2)], vec![r.zero(), pick(3), pick(4)], vec![r.zero(), r.zero(), pick(5)]];
                let q = QuadraticForm::new(&r, c).unwrap();
                for mode in [Parallelism::Sequential, Parallelism::Parallel] {
                    let cfg = SearchConfig { parallelism: mode, ..Default::default() };
                    let got = match exhaustive_search(&q, None, &cfg).unwrap() {
                        SearchOutcome::Found(v) => Some(v),
                        _ => None,
                    };
                    assert_eq!(got, brute(&q), "{rs} seed {seed}");
                }
            }
        }
    }

    #[test]
    fn sum_of_two_squares_gf5() {
        let r = Ring::gf(5).unwrap();
        let q = QuadraticForm::diagonal(&r, &ints(&r, &[1, 1]));
        let got = exhaustive_search(&q, None, &SearchConfig::default()).unwrap();
        assert_eq!(got, SearchOutcome::Found(ints(&r, &[1, 2])));
    }

    #[test]
    fn represents_target() {
        let r = Ring::gf(3).unwrap();
        let q = QuadraticForm::one_dim(&r, r.one());
        let two = r.from_int(2);
        assert_eq!(exhaustive_search(&q, Some(&two), &SearchConfig::default()).unwrap(), SearchOutcome::Exhausted);
        let got = exhaustive_search(&q, Some(&r.one()), &SearchConfig::default()).unwrap();
        assert_eq!(got, SearchOutcome::Found(ints(&r, &[1])));
    }

    #[test]
    fn budget_is_respected() {
        let r = Ring::gf(7).unwrap();
        let q = QuadraticForm::diagonal(&r, &ints(&r, &[1, 1, 1, 1, 1, 1, 1, 1]));
        let cfg = SearchConfig { budget: 10, ..Default::default() };
        assert_eq!(exhaustive_search(&q, None, &cfg).unwrap(), SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn height_search_order() {
        let found = height_search(3, 1000, |x| {
            let s: BigInt = x[0].clone() * &x[0] + &x[1] * &x[1] - BigInt::from(2) * &x[2] * &x[2];
            s.is_zero()
        });
        match found {
            HeightOutcome::Found(v) => assert_eq!(v, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]),
            HeightOutcome::Unknown => panic!("no witness"),
        }
    }

    #[test]
    fn local_obstruction_mod_powers() {
        // x^2 + y^2 + z^2 + w^2... use x^2 + y^2 - 3 z^2: no primitive zero mod 9? check mod 3 level
        let c = vec![
            vec![BigInt::from(1), BigInt::zero(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(1), BigInt::zero()],
            vec![BigInt::zero(), BigInt::zero(), BigInt::from(-3)],
        ];
        assert_eq!(primitive_solution_mod(&c, 3, 2, 1_000_000), Some(false));
        assert_eq!(primitive_solution_mod(&c, 2, 1, 1_000_000), Some(true));
    }
}
