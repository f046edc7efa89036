//! Isotropy, hyperbolic completion, Witt decomposition, isometry and
//! cancellation, value sets.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{columns_to_matrix, matrix_columns, unit_vector, vec_add, vec_scale, vec_sub, QuadraticForm, Vector};
use crate::lifting::{complement_lift, is_complemented, residue_standard_complements};
use crate::rings::{linalg, Matrix, Ring, RingElement, RingKind};
use crate::search::{self, HeightOutcome, SearchConfig, SearchOutcome};

/// Why a form has no isotropic vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyCertificate {
    /// Every vector of a finite module was examined.
    Exhausted,
    /// The form is positive or negative definite over Q.
    Definite,
    /// No primitive solution modulo `prime^exponent`.
    LocalObstruction { prime: u64, exponent: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyResult {
    /// `certificate[i]` is a coordinate of the witness that is nonzero in the
    /// i-th residue field.
    Isotropic { witness: Vector, certificate: Vec<usize> },
    Anisotropic(AnisotropyCertificate),
    Unknown { bound: u64 },
}

impl IsotropyResult {
    pub fn witness(&self) -> Option<&Vector> {
        match self {
            IsotropyResult::Isotropic { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, IsotropyResult::Isotropic { .. })
    }
}

/// Nonzero image in every residue field.
pub fn is_unimodular(ring: &Ring, v: &[RingElement]) -> bool {
    crate::rings::is_unimodular(ring, v).unwrap_or(false)
}

/// For each residue field, the first coordinate of `v` with nonzero image.
pub fn unimodularity_certificate(ring: &Ring, v: &[RingElement]) -> Option<Vec<usize>> {
    let data = ring.residues().ok()?;
    data.residues
        .iter()
        .map(|r| v.iter().position(|x| !r.field.is_zero(&r.reduce(ring, x))))
        .collect()
}

fn isotropic(ring: &Ring, witness: Vector) -> Result<IsotropyResult> {
    let certificate = unimodularity_certificate(ring, &witness)
        .ok_or_else(|| Error::Inconsistent("isotropic witness is not unimodular".into()))?;
    Ok(IsotropyResult::Isotropic { witness, certificate })
}

pub fn find_isotropic(q: &QuadraticForm) -> Result<IsotropyResult> {
    find_isotropic_with(q, &SearchConfig::default())
}

/// Exhaustive (lexicographically least witness) over finite rings,
/// componentwise over products, certificate or bounded search over Q.
pub fn find_isotropic_with(q: &QuadraticForm, cfg: &SearchConfig) -> Result<IsotropyResult> {
    let ring = q.ring();
    match ring.kind() {
        RingKind::Product(_) => {
            let mut parts = Vec::new();
            for c in q.rank_decompose()? {
                match find_isotropic_with(&c, cfg)? {
                    IsotropyResult::Isotropic { witness, .. } => parts.push(witness),
                    other => return Ok(other),
                }
            }
            let witness = (0..q.rank())
                .map(|i| RingElement::Tuple(parts.iter().map(|p| p[i].clone()).collect()))
                .collect();
            isotropic(ring, witness)
        }
        RingKind::Rational => rational_isotropy(q, cfg),
        _ if ring.is_finite() => match search::exhaustive_search(q, None, cfg)? {
            SearchOutcome::Found(w) => isotropic(ring, w),
            SearchOutcome::Exhausted => Ok(IsotropyResult::Anisotropic(AnisotropyCertificate::Exhausted)),
            SearchOutcome::BudgetExceeded => Ok(IsotropyResult::Unknown { bound: cfg.budget }),
        },
        _ => Err(Error::Unsupported(format!("isotropy search over {ring}"))),
    }
}

fn rat(e: &RingElement) -> BigRational {
    match e {
        RingElement::Rational(r) => r.clone(),
        _ => unreachable!("rational entry"),
    }
}

/// Diagonal entries of a congruence diagonalization of a symmetric rational
/// matrix.
pub(crate) fn diagonalize(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut out = Vec::new();
    for k in 0..n {
        if (k..n).all(|i| a[i][i].is_zero()) {
            let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
            let Some((i, j)) = pair else {
                out.extend((k..n).map(|_| BigRational::zero()));
                return out;
            };
            for c in 0..n {
                let t = a[j][c].clone();
                a[i][c] += t;
            }
            for r in 0..n {
                let t = a[r][j].clone();
                a[r][i] += t;
            }
        }
        let p = (k..n).find(|&i| !a[i][i].is_zero()).unwrap();
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for r in 0..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
        out.push(piv);
    }
    out
}

fn gram_rational(q: &QuadraticForm) -> Vec<Vec<BigRational>> {
    q.polar().matrix().iter().map(|row| row.iter().map(rat).collect()).collect()
}

/// Sign of a definite rational form, `None` when indefinite or degenerate.
pub(crate) fn definite_sign(q: &QuadraticForm) -> Option<i32> {
    let d = diagonalize(&gram_rational(q));
    let first = search::signum(d.first()?);
    (first != 0 && d.iter().all(|x| search::signum(x) == first)).then_some(first)
}

fn primitive(x: Vec<BigInt>) -> Vec<BigInt> {
    let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return x;
    }
    let sign = x.iter().find(|v| !v.is_zero()).map_or(1, |v| if v.is_negative() { -1 } else { 1 });
    x.into_iter().map(|v| v / &g * sign).collect()
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn local_obstruction(c: &[Vec<BigInt>], primes: &[u64]) -> Option<AnisotropyCertificate> {
    for &p in primes {
        for k in 1..=3 {
            if search::primitive_solution_mod(c, p, k, 2_000_000) == Some(false) {
                return Some(AnisotropyCertificate::LocalObstruction { prime: p, exponent: k });
            }
        }
    }
    None
}

fn rational_isotropy(q: &QuadraticForm, cfg: &SearchConfig) -> Result<IsotropyResult> {
    let ring = q.ring();
    let n = q.rank();
    if n == 0 {
        return Ok(IsotropyResult::Anisotropic(AnisotropyCertificate::Definite));
    }
    let c = search::integer_coefficients(q);
    if let Some(r) = q.radical()?.into_iter().next() {
        let l = r.iter().map(|x| rat(x).denom().clone()).fold(BigInt::one(), |a, b| a.lcm(&b));
        let ints: Vec<BigInt> = r.iter().map(|x| (rat(x) * BigRational::from_integer(l.clone())).to_integer()).collect();
        return isotropic(ring, search::bigint_vector(ring, &primitive(ints)));
    }
    if definite_sign(q).is_some() {
        return Ok(IsotropyResult::Anisotropic(AnisotropyCertificate::Definite));
    }
    if n == 2 {
        let (a, b, cc) = (&c[0][0], &c[0][1], &c[1][1]);
        let disc = b * b - BigInt::from(4) * a * cc;
        if let Some(s) = int_sqrt(&disc) {
            let w = if a.is_zero() { vec![BigInt::one(), BigInt::zero()] } else { primitive(vec![-b + s, BigInt::from(2) * a]) };
            return isotropic(ring, search::bigint_vector(ring, &w));
        }
        let primes: Vec<u64> = (2..200).filter(|&p| crate::rings::ring::is_prime(p)).collect();
        return Ok(match local_obstruction(&c, &primes) {
            Some(cert) => IsotropyResult::Anisotropic(cert),
            None => IsotropyResult::Unknown { bound: 0 },
        });
    }
    if n <= 4 {
        let gram: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = if i == j { &c[i][i] * 2 } else { c[i.min(j)][i.max(j)].clone() };
                        ring.from_bigint(&v)
                    })
                    .collect()
            })
            .collect();
        let det = rat(&linalg::det_field(ring, &gram)).to_integer() * 2;
        if let Some(cert) = local_obstruction(&c, &search::small_primes_dividing(&det)) {
            return Ok(IsotropyResult::Anisotropic(cert));
        }
    }
    match search::height_search(n, cfg.height_bound, |x| search::eval_int(&c, x).is_zero()) {
        HeightOutcome::Found(x) => isotropic(ring, search::bigint_vector(ring, &x)),
        HeightOutcome::Unknown => Ok(IsotropyResult::Unknown { bound: cfg.height_bound }),
    }
}

/// Result of completing a totally isotropic `U` to hyperbolic pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicCompletion {
    pub v: Vec<Vector>,
    /// Columns `u_1, v_1, u_2, v_2, ...`; transports `q` to `H(R^r)`.
    pub isometry: Matrix,
    /// Basis of the orthogonal complement of `U + V`.
    pub complement: Vec<Vector>,
}

fn combine(ring: &Ring, coeffs: &[RingElement], vectors: &[Vector], n: usize) -> Vector {
    coeffs
        .iter()
        .zip(vectors)
        .fold(vec![ring.zero(); n], |acc, (c, v)| vec_add(ring, &acc, &vec_scale(ring, c, v)))
}

/// Basis of the orthogonal complement of the span of `x`, whose restricted
/// polar form must be invertible.
pub fn orthogonal_complement(q: &QuadraticForm, x: &[Vector]) -> Result<Vec<Vector>> {
    let ring = q.ring();
    let n = q.rank();
    let k = x.len();
    let gram: Matrix = (0..k).map(|i| (0..k).map(|j| q.polar_unchecked(&x[i], &x[j])).collect()).collect();
    let ginv = linalg::ring_inverse(ring, &gram).ok_or_else(|| Error::Singular("restricted polar form".into()))?;
    let targets = residue_standard_complements(ring, n, x)?;
    let cs = complement_lift(ring, n, x, &targets)?;
    Ok(cs
        .into_iter()
        .map(|c| {
            let pairings: Vec<RingElement> = x.iter().map(|xi| q.polar_unchecked(xi, &c)).collect();
            let a = linalg::mat_vec(ring, &ginv, &pairings);
            vec_sub(ring, &c, &combine(ring, &a, x, n))
        })
        .collect())
}

/// Hyperbolic partners `V` for a totally isotropic direct summand `U`.
pub fn hyperbolic_complete(q: &QuadraticForm, u: &[Vector]) -> Result<HyperbolicCompletion> {
    let ring = q.ring();
    let n = q.rank();
    let r = u.len();
    for x in u {
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
    }
    for i in 0..r {
        if !ring.is_zero(&q.eval_unchecked(&u[i])) || (i + 1..r).any(|j| !ring.is_zero(&q.polar_unchecked(&u[i], &u[j]))) {
            return Err(Error::NotTotallyIsotropic);
        }
    }
    if !is_complemented(ring, u)? {
        return Err(Error::NotComplemented);
    }
    let data = ring.residues()?;
    let mut targets = Vec::new();
    for res in &data.residues {
        let k = &res.field;
        let qk = q.reduce(res);
        let uk: Vec<Vector> = u.iter().map(|x| res.reduce_vec(ring, x)).collect();
        let rows: Matrix = uk
            .iter()
            .map(|x| (0..n).map(|j| qk.polar_unchecked(x, &unit_vector(k, n, j))).collect())
            .collect();
        let ws = (0..r)
            .map(|j| linalg::solve(k, &rows, &unit_vector(k, r, j)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Singular(format!("no dual partner at {}", res.label)))?;
        targets.push(ws);
    }
    let w = complement_lift(ring, n, u, &targets)?;
    let g: Matrix = (0..r).map(|i| (0..r).map(|j| q.polar_unchecked(&u[i], &w[j])).collect()).collect();
    let ginv = linalg::ring_inverse(ring, &g).ok_or_else(|| Error::Inconsistent("pairing not invertible".into()))?;
    let w: Vec<Vector> = (0..r)
        .map(|j| combine(ring, &(0..r).map(|k| ginv[k][j].clone()).collect::<Vec<_>>(), &w, n))
        .collect();
    let v: Vec<Vector> = (0..r)
        .map(|j| {
            let beta: Vec<RingElement> = (0..r).map(|k| q.b0_eval(&w[j], &w[k])).collect();
            vec_sub(ring, &w[j], &combine(ring, &beta, u, n))
        })
        .collect();
    let cols: Vec<Vector> = (0..r).flat_map(|i| [u[i].clone(), v[i].clone()]).collect();
    let isometry = columns_to_matrix(ring, n, &cols);
    if q.transport(&isometry)? != QuadraticForm::hyperbolic_space(ring, r) {
        return Err(Error::Inconsistent("hyperbolic completion check failed".into()));
    }
    let complement = orthogonal_complement(q, &cols)?;
    Ok(HyperbolicCompletion { v, isometry, complement })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub index: usize,
    pub kernel: QuadraticForm,
    /// Columns: `index` hyperbolic pairs, then a basis of the kernel.
    pub transform: Matrix,
    /// `None` for a kernel of rank zero.
    pub certificate: Option<AnisotropyCertificate>,
}

pub fn witt_decompose(q: &QuadraticForm) -> Result<WittDecomposition> {
    witt_decompose_with(q, &SearchConfig::default())
}

pub fn witt_decompose_with(q: &QuadraticForm, cfg: &SearchConfig) -> Result<WittDecomposition> {
    let ring = q.ring();
    let n = q.rank();
    if !q.is_nonsingular()? {
        return Err(Error::Singular("Witt decomposition needs a nonsingular form".into()));
    }
    let (index, transform, certificate) = if let Some(fs) = ring.factors() {
        let parts = q.rank_decompose()?.iter().map(|c| witt_decompose_with(c, cfg)).collect::<Result<Vec<_>>>()?;
        let index = parts.iter().map(|p| p.index).min().unwrap_or(0);
        let certificate = parts.iter().find(|p| p.index == index).and_then(|p| p.certificate.clone());
        let t = (0..n)
            .map(|i| (0..n).map(|j| RingElement::Tuple(parts.iter().map(|p| p.transform[i][j].clone()).collect())).collect())
            .collect();
        debug_assert_eq!(fs.len(), parts.len());
        (index, t, certificate)
    } else {
        let mut cols: Vec<Vector> = (0..n).map(|i| unit_vector(ring, n, i)).collect();
        let mut m = 0;
        loop {
            let kcols = cols[2 * m..].to_vec();
            let qk = q.restrict(&kcols)?;
            if qk.rank() == 0 {
                break (m, columns_to_matrix(ring, n, &cols), None);
            }
            match find_isotropic_with(&qk, cfg)? {
                IsotropyResult::Isotropic { witness, .. } => {
                    let hc = hyperbolic_complete(&qk, &[witness.clone()])?;
                    let lift = |x: &Vector| combine(ring, x, &kcols, n);
                    let mut next = cols[..2 * m].to_vec();
                    next.push(lift(&witness));
                    next.push(lift(&hc.v[0]));
                    next.extend(hc.complement.iter().map(lift));
                    cols = next;
                    m += 1;
                }
                IsotropyResult::Anisotropic(c) => break (m, columns_to_matrix(ring, n, &cols), Some(c)),
                IsotropyResult::Unknown { .. } => return Err(Error::UndecidableAnisotropy),
            }
        }
    };
    let kernel = q.restrict(&matrix_columns(&transform)[2 * index..])?;
    if q.transport(&transform)? != QuadraticForm::hyperbolic_space(ring, index).direct_sum(&kernel)? {
        return Err(Error::Inconsistent("Witt decomposition check failed".into()));
    }
    Ok(WittDecomposition { index, kernel, transform, certificate })
}

/// A Lagrangian `U = U^⊥` when the form is hyperbolic.
pub fn is_hyperbolic(q: &QuadraticForm) -> Result<Option<Vec<Vector>>> {
    if q.rank() % 2 == 1 {
        return Ok(None);
    }
    let d = witt_decompose(q)?;
    if 2 * d.index != q.rank() {
        return Ok(None);
    }
    let cols = matrix_columns(&d.transform);
    Ok(Some((0..d.index).map(|i| cols[2 * i].clone()).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryVerdict {
    NotIsometric,
    /// The matrix `F` satisfies `q'(F x) = q(x)`; `None` when only the
    /// hyperbolicity verdict is available.
    Isometric(Option<Matrix>),
}

/// Limit on `|R|^n` for the brute-force embedding search.
const EMBED_LIMIT: u128 = 1 << 20;

/// A matrix `F` (columns in `dst`'s module) with `dst.transport(F) = src`,
/// found by backtracking over all vectors of a finite ring.
pub fn find_embedding(src: &QuadraticForm, dst: &QuadraticForm, invertible: bool) -> Result<Option<Matrix>> {
    let ring = dst.ring();
    if src.ring() != ring {
        return Err(Error::MixedRings);
    }
    let n = dst.rank();
    let k = src.rank();
    let size = ring.size().ok_or_else(|| Error::Unsupported("embedding search needs a finite ring".into()))?;
    let total = size.checked_pow(n as u32).filter(|t| *t <= EMBED_LIMIT).ok_or(Error::SearchBoundExceeded)?;
    let elems: Vec<RingElement> = ring.elements().collect();
    let vector_at = |mut idx: u128| -> Vector {
        let mut v = vec![ring.zero(); n];
        for slot in v.iter_mut().rev() {
            *slot = elems[(idx % size) as usize].clone();
            idx /= size;
        }
        v
    };
    let mut buckets: std::collections::HashMap<RingElement, Vec<u128>> = std::collections::HashMap::new();
    for idx in 0..total {
        let v = vector_at(idx);
        buckets.entry(dst.eval_unchecked(&v)).or_default().push(idx);
    }
    let mut chosen: Vec<Vector> = Vec::new();
    let mut cursor = vec![0usize; k];
    let empty = Vec::new();
    let mut j = 0;
    while j < k {
        let cands = buckets.get(src.coeff(j, j)).unwrap_or(&empty);
        let mut found = false;
        while cursor[j] < cands.len() {
            let v = vector_at(cands[cursor[j]]);
            cursor[j] += 1;
            if (0..j).all(|i| dst.polar_unchecked(&chosen[i], &v) == *src.coeff(i, j)) {
                if invertible && j + 1 == k {
                    let mut cols = chosen.clone();
                    cols.push(v.clone());
                    let det = linalg::ring_det(ring, &columns_to_matrix(ring, n, &cols));
                    if !ring.is_unit(&det) {
                        continue;
                    }
                }
                chosen.push(v);
                found = true;
                break;
            }
        }
        if found {
            j += 1;
        } else {
            if j == 0 {
                return Ok(None);
            }
            cursor[j] = 0;
            chosen.pop();
            j -= 1;
        }
    }
    Ok(Some(columns_to_matrix(ring, n, &chosen)))
}

fn brute_isometry(q: &QuadraticForm, q2: &QuadraticForm) -> Result<Option<Matrix>> {
    find_embedding(q, q2, true)
}

/// Isometry test through hyperbolicity of `q ⊥ -q'`, with the isometry read
/// off the Lagrangian when it is a graph.
pub fn is_isometric(q: &QuadraticForm, q2: &QuadraticForm) -> Result<IsometryVerdict> {
    let ring = q.ring();
    if q2.ring() != ring {
        return Err(Error::MixedRings);
    }
    let n = q.rank();
    if q2.rank() != n {
        return Ok(IsometryVerdict::NotIsometric);
    }
    if q == q2 {
        return Ok(IsometryVerdict::Isometric(Some(linalg::identity(ring, n))));
    }
    let small_finite = ring.is_finite() && n <= 4;
    if !(q.is_regular() && q2.is_regular()) {
        if !small_finite {
            return Err(Error::NotRegular);
        }
        return Ok(match brute_isometry(q, q2)? {
            Some(f) => IsometryVerdict::Isometric(Some(f)),
            None => IsometryVerdict::NotIsometric,
        });
    }
    let Some(lagrangian) = is_hyperbolic(&q.direct_sum(&q2.neg())?)? else {
        return Ok(IsometryVerdict::NotIsometric);
    };
    let a: Matrix = (0..n).map(|i| lagrangian.iter().map(|l| l[i].clone()).collect()).collect();
    let b: Matrix = (0..n).map(|i| lagrangian.iter().map(|l| l[n + i].clone()).collect()).collect();
    if let Some(ainv) = linalg::ring_inverse(ring, &a) {
        let f = linalg::mat_mul(ring, &b, &ainv);
        if q2.transport(&f)? == *q {
            return Ok(IsometryVerdict::Isometric(Some(f)));
        }
    }
    if small_finite {
        if let Ok(found) = brute_isometry(q, q2) {
            let f = found.ok_or_else(|| Error::Inconsistent("hyperbolic difference but no isometry".into()))?;
            return Ok(IsometryVerdict::Isometric(Some(f)));
        }
    }
    Ok(IsometryVerdict::Isometric(None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cancellation {
    pub complement: QuadraticForm,
    pub complement_prime: QuadraticForm,
    pub verdict: IsometryVerdict,
}

fn embed_summand(q1: &QuadraticForm, sum: &QuadraticForm) -> Result<Vec<Vector>> {
    let k = q1.rank();
    let n = sum.rank();
    if k > n {
        return Err(Error::RankMismatch(format!("{k} exceeds {n}")));
    }
    let ring = sum.ring();
    let zero = ring.zero();
    let literal = (0..k).all(|i| (i..n).all(|j| sum.coeff(i, j) == if j < k { q1.coeff(i, j) } else { &zero }));
    if literal {
        return Ok((0..k).map(|i| unit_vector(ring, n, i)).collect());
    }
    let f = find_embedding(q1, sum, false)?.ok_or_else(|| Error::Inconsistent("first summand does not embed".into()))?;
    Ok(matrix_columns(&f))
}

/// Cancel a regular `q1` from `q1 ⊥ q2` and `q1 ⊥ q2'` and compare the
/// complements.
pub fn witt_cancel(q1: &QuadraticForm, sum: &QuadraticForm, sum2: &QuadraticForm) -> Result<Cancellation> {
    if !q1.is_regular() {
        return Err(Error::NotRegular);
    }
    let x = embed_summand(q1, sum)?;
    let y = embed_summand(q1, sum2)?;
    let complement = sum.restrict(&orthogonal_complement(sum, &x)?)?;
    let complement_prime = sum2.restrict(&orthogonal_complement(sum2, &y)?)?;
    let verdict = is_isometric(&complement, &complement_prime)?;
    Ok(Cancellation { complement, complement_prime, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Represented(Vector),
    NotRepresented,
    Unknown { bound: u64 },
}

pub fn represents(q: &QuadraticForm, a: &RingElement) -> Result<Representation> {
    represents_with(q, a, &SearchConfig::default())
}

/// A vector `m` with `q(m) = a`.
pub fn represents_with(q: &QuadraticForm, a: &RingElement, cfg: &SearchConfig) -> Result<Representation> {
    let ring = q.ring();
    if !ring.contains(a) {
        return Err(Error::InvalidElement(format!("value not in {ring}")));
    }
    match ring.kind() {
        RingKind::Product(_) => {
            let mut parts = Vec::new();
            for (i, c) in q.rank_decompose()?.iter().enumerate() {
                match represents_with(c, &ring.project(a, i), cfg)? {
                    Representation::Represented(m) => parts.push(m),
                    other => return Ok(other),
                }
            }
            Ok(Representation::Represented(
                (0..q.rank()).map(|i| RingElement::Tuple(parts.iter().map(|p| p[i].clone()).collect())).collect(),
            ))
        }
        RingKind::Rational => rational_represents(q, a, cfg),
        _ if ring.is_finite() => Ok(match search::exhaustive_search(q, Some(a), cfg)? {
            SearchOutcome::Found(m) => Representation::Represented(m),
            SearchOutcome::Exhausted => Representation::NotRepresented,
            SearchOutcome::BudgetExceeded => Representation::Unknown { bound: cfg.budget },
        }),
        _ => Err(Error::Unsupported(format!("representation search over {ring}"))),
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(int_sqrt(r.numer())?, int_sqrt(r.denom())?))
}

fn rational_represents(q: &QuadraticForm, a: &RingElement, cfg: &SearchConfig) -> Result<Representation> {
    let ring = q.ring();
    let n = q.rank();
    let av = rat(a);
    if av.is_zero() {
        return Ok(Representation::Represented(vec![ring.zero(); n]));
    }
    if n == 0 {
        return Ok(Representation::NotRepresented);
    }
    if n == 1 {
        let c = rat(q.coeff(0, 0));
        if c.is_zero() {
            return Ok(Representation::NotRepresented);
        }
        return Ok(match rational_sqrt(&(&av / &c)) {
            Some(s) => Representation::Represented(vec![RingElement::Rational(s)]),
            None => Representation::NotRepresented,
        });
    }
    if let Some(s) = definite_sign(q) {
        if search::signum(&av) != s {
            return Ok(Representation::NotRepresented);
        }
    }
    let c = search::integer_coefficients(q);
    let mut scale = BigInt::one();
    for i in 0..n {
        for j in i..n {
            scale = scale.lcm(rat(q.coeff(i, j)).denom());
        }
    }
    let target = av * BigRational::from_integer(scale);
    let (tn, td) = (target.numer().clone(), target.denom().clone());
    let hit = search::height_search(n + 1, cfg.height_bound, |x| {
        let t = &x[n];
        !t.is_zero() && search::eval_int(&c, &x[..n]) * &td == &tn * t * t
    });
    if let HeightOutcome::Found(x) = hit {
        let t = BigRational::from_integer(x[n].clone());
        return Ok(Representation::Represented(
            x[..n].iter().map(|v| RingElement::Rational(BigRational::from_integer(v.clone()) / &t)).collect(),
        ));
    }
    if q.is_regular() {
        if let IsotropyResult::Isotropic { witness, .. } = find_isotropic_with(q, cfg)? {
            let hc = hyperbolic_complete(q, &[witness.clone()])?;
            return Ok(Representation::Represented(vec_add(ring, &witness, &vec_scale(ring, a, &hc.v[0]))));
        }
    }
    Ok(Representation::Unknown { bound: cfg.height_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring;

    fn ints(r: &Ring, v: &[i64]) -> Vector {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    fn diag(r: &Ring, v: &[i64]) -> QuadraticForm {
        QuadraticForm::diagonal(r, &ints(r, v))
    }

    #[test]
    fn hyperbolic_plane_witness() {
        let k = Ring::gf(3).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k);
        assert!(k.is_zero(&h.evaluate(&ints(&k, &[1, 0])).unwrap()));
        let res = find_isotropic(&h).unwrap();
        assert_eq!(res.witness(), Some(&ints(&k, &[0, 1])));
    }

    #[test]
    fn sum_of_squares() {
        let k = Ring::gf(5).unwrap();
        assert_eq!(find_isotropic(&diag(&k, &[1, 1])).unwrap().witness(), Some(&ints(&k, &[1, 2])));
        let q = Ring::rationals();
        assert_eq!(
            find_isotropic(&diag(&q, &[1, 1])).unwrap(),
            IsotropyResult::Anisotropic(AnisotropyCertificate::Definite)
        );
    }

    #[test]
    fn rational_binary_and_ternary() {
        let q = Ring::rationals();
        let w = find_isotropic(&diag(&q, &[1, -4])).unwrap();
        assert_eq!(w.witness(), Some(&ints(&q, &[2, 1])));
        assert_eq!(
            find_isotropic(&diag(&q, &[1, -2])).unwrap(),
            IsotropyResult::Anisotropic(AnisotropyCertificate::LocalObstruction { prime: 2, exponent: 2 })
        );
        let f = diag(&q, &[1, 1, -2]);
        let w = find_isotropic(&f).unwrap();
        assert!(q.is_zero(&f.evaluate(w.witness().unwrap()).unwrap()));
        assert!(matches!(
            find_isotropic(&diag(&q, &[1, 1, -3])).unwrap(),
            IsotropyResult::Anisotropic(AnisotropyCertificate::LocalObstruction { .. })
        ));
    }

    #[test]
    fn unimodular_examples() {
        let r = parse_ring("GF(5)[X]/(X^2+3*X+2)").unwrap();
        let x = r.generator().unwrap();
        let v = vec![r.add(&x, &r.one()), r.add(&x, &r.from_int(2))];
        assert!(is_unimodular(&r, &v));
        assert!(!is_unimodular(&r, &ints(&r, &[0, 0])));
        assert!(is_unimodular(&r, &ints(&r, &[1, 0, 0])));
    }

    #[test]
    fn completion_in_hyperbolic_space() {
        let k = Ring::gf(3).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k);
        let hc = hyperbolic_complete(&h, &[ints(&k, &[1, 0])]).unwrap();
        assert_eq!(hc.v, vec![ints(&k, &[0, 1])]);
        let h2 = QuadraticForm::hyperbolic_space(&k, 2);
        let hc = hyperbolic_complete(&h2, &[ints(&k, &[1, 0, 0, 0])]).unwrap();
        assert!(k.is_zero(&h2.evaluate(&hc.v[0]).unwrap()));
        assert!(k.is_one(&h2.polar_eval(&ints(&k, &[1, 0, 0, 0]), &hc.v[0]).unwrap()));
        assert_eq!(hc.complement.len(), 2);
        let empty = hyperbolic_complete(&h2, &[]).unwrap();
        assert!(empty.v.is_empty());
        assert_eq!(hyperbolic_complete(&h, &[ints(&k, &[1, 1])]), Err(Error::NotTotallyIsotropic));
    }

    #[test]
    fn completion_over_local_ring() {
        let a = parse_ring("GF(3)[X]/(X^2)").unwrap();
        let x = a.generator().unwrap();
        let mut c = linalg::zeros(&a, 3, 3);
        c[0][0] = a.one();
        c[0][1] = x.clone();
        c[1][1] = a.from_int(-1);
        c[2][2] = a.add(&a.one(), &x);
        let q = QuadraticForm::new(&a, c).unwrap();
        let w = find_isotropic(&q).unwrap();
        let u = w.witness().unwrap().clone();
        let hc = hyperbolic_complete(&q, &[u]).unwrap();
        assert_eq!(hc.complement.len(), 1);
        let d = witt_decompose(&q).unwrap();
        assert_eq!(d.index, 1);
        assert_eq!(d.kernel.rank(), 1);
    }

    #[test]
    fn decompositions() {
        let k = Ring::gf(5).unwrap();
        let d = witt_decompose(&QuadraticForm::hyperbolic_space(&k, 2)).unwrap();
        assert_eq!((d.index, d.kernel.rank()), (2, 0));
        let d = witt_decompose(&diag(&k, &[1, 1])).unwrap();
        assert_eq!((d.index, d.kernel.rank()), (1, 0));
        let q = Ring::rationals();
        let d = witt_decompose(&diag(&q, &[1, 1, 1])).unwrap();
        assert_eq!(d.index, 0);
        assert_eq!(d.certificate, Some(AnisotropyCertificate::Definite));
        let k3 = Ring::gf(3).unwrap();
        assert!(is_hyperbolic(&diag(&k3, &[1, -1])).unwrap().is_some());
        assert!(is_hyperbolic(&diag(&k3, &[1, 1])).unwrap().is_none());
    }

    #[test]
    fn decomposition_over_product() {
        let r = parse_ring("GF(3) x GF(5)").unwrap();
        let q = diag(&r, &[1, 1, 1]);
        let d = witt_decompose(&q).unwrap();
        assert_eq!(d.index, 1);
        assert_eq!(d.kernel.rank(), 1);
    }

    #[test]
    fn isometries() {
        let k = Ring::gf(5).unwrap();
        let q = diag(&k, &[1, 1]);
        assert_eq!(is_isometric(&q, &q).unwrap(), IsometryVerdict::Isometric(Some(linalg::identity(&k, 2))));
        let q2 = diag(&k, &[2, 2]);
        match is_isometric(&q, &q2).unwrap() {
            IsometryVerdict::Isometric(Some(f)) => assert_eq!(q2.transport(&f).unwrap(), q),
            other => panic!("{other:?}"),
        }
        assert_eq!(is_isometric(&q, &diag(&k, &[1, 2])).unwrap(), IsometryVerdict::NotIsometric);
        assert_eq!(is_isometric(&q, &diag(&k, &[1])).unwrap(), IsometryVerdict::NotIsometric);
    }

    #[test]
    fn cancellation() {
        let k7 = Ring::gf(7).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k7);
        let s1 = h.direct_sum(&diag(&k7, &[1])).unwrap();
        let s2 = h.direct_sum(&diag(&k7, &[2])).unwrap();
        assert!(matches!(witt_cancel(&h, &s1, &s2).unwrap().verdict, IsometryVerdict::Isometric(Some(_))));
        let k5 = Ring::gf(5).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k5);
        let s1 = h.direct_sum(&diag(&k5, &[1])).unwrap();
        let s2 = h.direct_sum(&diag(&k5, &[2])).unwrap();
        assert_eq!(witt_cancel(&h, &s1, &s2).unwrap().verdict, IsometryVerdict::NotIsometric);
        assert!(matches!(witt_cancel(&h, &s1, &s1).unwrap().verdict, IsometryVerdict::Isometric(Some(_))));
    }

    #[test]
    fn value_sets() {
        let k = Ring::gf(3).unwrap();
        assert_eq!(represents(&diag(&k, &[1]), &k.from_int(2)).unwrap(), Representation::NotRepresented);
        let k7 = Ring::gf(7).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k7);
        assert_eq!(represents(&h, &k7.from_int(3)).unwrap(), Representation::Represented(ints(&k7, &[1, 3])));
        let q = Ring::rationals();
        assert_eq!(
            represents(&diag(&q, &[3]), &q.from_int(12)).unwrap(),
            Representation::Represented(ints(&q, &[2]))
        );
        assert_eq!(represents(&diag(&q, &[1, 1]), &q.from_int(-1)).unwrap(), Representation::NotRepresented);
        match represents(&diag(&q, &[1, 1]), &q.from_int(5)).unwrap() {
            Representation::Represented(m) => assert_eq!(diag(&q, &[1, 1]).evaluate(&m).unwrap(), q.from_int(5)),
            other => panic!("{other:?}"),
        }
    }
}
