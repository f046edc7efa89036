//! Brute-force arithmetic over `GF(p)[X]/(m)` with machine integers, kept
//! separate from the library so that its verdicts can be used as ground truth.

use std::collections::HashMap;

/// Largest algebra dimension handled.
pub const MAXD: usize = 8;

/// Element of a small algebra: coefficients lowest degree first.
pub type Elem = [u32; MAXD];

// ---- polynomials over GF(p) ------------------------------------------------

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse");
    (1..p).find(|&x| (a * x) % p == 1).unwrap()
}

pub fn poly_add(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` nonzero.
pub fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (r.last().unwrap() * lead) % p;
        q[shift] = c;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    poly_divrem(a, b, p).1
}

pub fn make_monic(a: &[u32], p: u32) -> Poly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

pub fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&a, p)
}

/// `(g, s)` with `s a = g (mod m)`, `g = gcd(a, m)` monic.
pub fn poly_inverse_mod(a: &[u32], m: &[u32], p: u32) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(m.to_vec()), poly_rem(a, m, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(poly_rem(&s0.iter().map(|x| x * c % p).collect::<Vec<_>>(), m, p))
}

/// Every monic polynomial of degree `d`, constant term varying fastest.
pub fn monic_polys(p: u32, d: usize) -> Vec<Poly> {
    let total = (p as usize).pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Factorization into monic irreducibles by trial division, smallest first.
pub fn factor(f: &[u32], p: u32) -> Vec<(Poly, usize)> {
    let mut f = make_monic(f, p);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut d = 1;
    while f.len() > 1 {
        if 2 * d > f.len() - 1 {
            out.push((f.clone(), 1));
            break;
        }
        for g in monic_polys(p, d) {
            let mut e = 0;
            loop {
                let (q, r) = poly_divrem(&f, &g, p);
                if !r.is_empty() {
                    break;
                }
                f = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        d += 1;
    }
    out
}

pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let fac = factor(f, p);
    fac.len() == 1 && fac[0].1 == 1
}

/// Lexicographically least monic irreducible of degree `d`.
pub fn least_irreducible(p: u32, d: usize) -> Poly {
    monic_polys(p, d).into_iter().find(|f| is_irreducible(f, p)).unwrap()
}

pub fn poly_pow(f: &[u32], e: usize, p: u32) -> Poly {
    (0..e).fold(vec![1], |acc, _| poly_mul(&acc, f, p))
}

// ---- algebras -------------------------------------------------------------

/// `GF(p)[X]/(modulus)` with `modulus` monic of degree at most [`MAXD`].
#[derive(Clone, Debug)]
pub struct Algebra {
    pub p: u32,
    pub modulus: Poly,
    pub dim: usize,
}

impl Algebra {
    pub fn new(p: u32, modulus: &[u32]) -> Algebra {
        let modulus = make_monic(modulus, p);
        let dim = modulus.len() - 1;
        assert!(dim >= 1 && dim <= MAXD);
        Algebra { p, modulus, dim }
    }

    pub fn prime(p: u32) -> Algebra {
        Algebra::new(p, &[0, 1])
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn zero(&self) -> Elem {
        [0; MAXD]
    }

    pub fn one(&self) -> Elem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> Elem {
        let mut e = [0; MAXD];
        e[0] = c % self.p;
        e
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn element(&self, mut idx: usize) -> Elem {
        let mut e = [0; MAXD];
        for x in e.iter_mut().take(self.dim) {
            *x = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        e
    }

    pub fn elements(&self) -> Vec<Elem> {
        (0..self.size()).map(|i| self.element(i)).collect()
    }

    pub fn from_poly(&self, f: &[u32]) -> Elem {
        let r = poly_rem(f, &self.modulus, self.p);
        let mut e = [0; MAXD];
        e[..r.len()].copy_from_slice(&r);
        e
    }

    pub fn to_poly(&self, a: &Elem) -> Poly {
        trim(a[..self.dim].to_vec())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut e = [0; MAXD];
        for i in 0..self.dim {
            e[i] = (a[i] + b[i]) % self.p;
        }
        e
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let mut e = [0; MAXD];
        for i in 0..self.dim {
            e[i] = (self.p - a[i]) % self.p;
        }
        e
    }

    pub fn scale(&self, c: u32, a: &Elem) -> Elem {
        let mut e = [0; MAXD];
        for i in 0..self.dim {
            e[i] = (c * a[i]) % self.p;
        }
        e
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let (p, n) = (self.p, self.dim);
        let mut t = [0u32; 2 * MAXD];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                t[i + j] += a[i] * b[j];
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = t[k] % p;
            if c != 0 {
                for i in 0..n {
                    t[k - n + i] += (p - self.modulus[i]) * c;
                }
            }
        }
        let mut e = [0; MAXD];
        for i in 0..n {
            e[i] = t[i] % p;
        }
        e
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        poly_gcd(&self.to_poly(a), &self.modulus, self.p).len() == 1
    }
}

// ---- quadratic forms with GF(p) coefficients ------------------------------

/// Upper-triangular coefficients `c[i][j]`, `i <= j`, over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub p: u32,
    pub c: Vec<Vec<u32>>,
}

impl Form {
    pub fn new(p: u32, c: Vec<Vec<u32>>) -> Form {
        Form { p, c }
    }

    /// From the `n(n+1)/2` upper entries read row by row.
    pub fn from_upper(p: u32, n: usize, entries: &[u32]) -> Form {
        let mut c = vec![vec![0; n]; n];
        let mut it = entries.iter();
        for (i, row) in c.iter_mut().enumerate() {
            for x in row.iter_mut().skip(i) {
                *x = *it.next().unwrap() % p;
            }
        }
        Form { p, c }
    }

    pub fn diagonal(p: u32, d: &[u32]) -> Form {
        let n = d.len();
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            c[i][i] = d[i] % p;
        }
        Form { p, c }
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    pub fn eval(&self, a: &Algebra, v: &[Elem]) -> Elem {
        let n = self.rank();
        let mut acc = a.zero();
        for i in 0..n {
            let mut row = a.zero();
            for j in i..n {
                if self.c[i][j] != 0 {
                    row = a.add(&row, &a.scale(self.c[i][j], &v[j]));
                }
            }
            acc = a.add(&acc, &a.mul(&v[i], &row));
        }
        acc
    }

    /// Polar form `q(u + v) - q(u) - q(v)`.
    pub fn polar(&self, a: &Algebra, u: &[Elem], v: &[Elem]) -> Elem {
        let s: Vec<Elem> = u.iter().zip(v).map(|(x, y)| a.add(x, y)).collect();
        let t = a.add(&self.eval(a, &s), &a.neg(&self.eval(a, u)));
        a.add(&t, &a.neg(&self.eval(a, v)))
    }

    /// Nonsingular over the field GF(p): the radical of `(k^n, q)` is zero,
    /// by exhaustion.
    pub fn is_nonsingular(&self) -> bool {
        let k = Algebra::prime(self.p);
        let n = self.rank();
        let vecs = all_vectors(&k, n);
        let basis: Vec<Vec<Elem>> = (0..n).map(|i| unit(&k, n, i)).collect();
        vecs.iter().skip(1).all(|v| {
            !k.is_zero(&self.eval(&k, v)) || basis.iter().any(|e| !k.is_zero(&self.polar(&k, v, e)))
        })
    }

    pub fn neg(&self) -> Form {
        Form { p: self.p, c: self.c.iter().map(|r| r.iter().map(|x| (self.p - x) % self.p).collect()).collect() }
    }

    /// `x -> q(T x)` for a matrix over GF(p) given by columns.
    pub fn transport(&self, cols: &[Vec<u32>]) -> Form {
        let k = Algebra::prime(self.p);
        let n = cols.len();
        let col = |j: usize| -> Vec<Elem> { cols[j].iter().map(|&x| k.scalar(x)).collect() };
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            c[i][i] = self.eval(&k, &col(i))[0];
            for j in i + 1..n {
                c[i][j] = self.polar(&k, &col(i), &col(j))[0];
            }
        }
        Form { p: self.p, c }
    }
}

pub fn unit(a: &Algebra, n: usize, i: usize) -> Vec<Elem> {
    (0..n).map(|j| if i == j { a.one() } else { a.zero() }).collect()
}

pub fn all_vectors(a: &Algebra, n: usize) -> Vec<Vec<Elem>> {
    let elems = a.elements();
    let total = elems.len().pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = elems[idx % elems.len()];
                    idx /= elems.len();
                    e
                })
                .collect()
        })
        .collect()
}

/// Unimodular: the coordinates generate the unit ideal.
pub fn is_unimodular(a: &Algebra, v: &[Elem]) -> bool {
    let g = v.iter().fold(a.modulus.clone(), |g, x| poly_gcd(&g, &a.to_poly(x), a.p));
    g.len() == 1
}

/// Odometer over `lists[0] x lists[1] x ...`, last index fastest; stops when
/// `f` returns `Some`.
fn scan<T>(lists: &[&[Elem]], mut f: impl FnMut(&[Elem]) -> Option<T>) -> Option<T> {
    if lists.iter().any(|l| l.is_empty()) {
        return None;
    }
    let n = lists.len();
    let mut idx = vec![0usize; n];
    let mut cur: Vec<Elem> = lists.iter().map(|l| l[0]).collect();
    loop {
        if let Some(t) = f(&cur) {
            return Some(t);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                cur[k] = lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = lists[k][0];
        }
    }
}

/// Algebra `GF(p)[X]/(f^e)` with `f` irreducible: a local ring whose maximal
/// ideal is generated by `f`.
pub struct Local {
    pub alg: Algebra,
    pub elems: Vec<Elem>,
    pub ideal: Vec<Elem>,
}

impl Local {
    pub fn new(p: u32, f: &[u32], e: usize) -> Local {
        let alg = Algebra::new(p, &poly_pow(f, e, p));
        let elems = alg.elements();
        let ideal = elems.iter().filter(|x| !alg.is_unit(x)).copied().collect();
        Local { alg, elems, ideal }
    }

    /// Every unimodular vector up to a unit multiple: the first unit
    /// coordinate is normalized to 1.
    fn normalized<T>(&self, n: usize, mut f: impl FnMut(&[Elem]) -> Option<T>) -> Option<T> {
        let one = [self.alg.one()];
        for k in 0..n {
            let lists: Vec<&[Elem]> = (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => self.ideal.as_slice(),
                    std::cmp::Ordering::Equal => one.as_slice(),
                    std::cmp::Ordering::Greater => self.elems.as_slice(),
                })
                .collect();
            if let Some(t) = scan(&lists, &mut f) {
                return Some(t);
            }
        }
        None
    }

    /// An isotropic unimodular vector, by exhaustion.
    pub fn isotropic(&self, q: &Form) -> Option<Vec<Elem>> {
        let a = &self.alg;
        self.normalized(q.rank(), |v| a.is_zero(&q.eval(a, v)).then(|| v.to_vec()))
    }

    /// A vector with `q(v) = t`, by exhaustion over all vectors.
    pub fn represents(&self, q: &Form, t: &Elem) -> Option<Vec<Elem>> {
        let a = &self.alg;
        let lists: Vec<&[Elem]> = (0..q.rank()).map(|_| self.elems.as_slice()).collect();
        scan(&lists, |v| (q.eval(a, v) == *t).then(|| v.to_vec()))
    }
}

/// `GF(p)[X]/(P)` split into its local factors `GF(p)[X]/(f^e)` with the CRT
/// idempotents.
pub struct Split {
    pub whole: Algebra,
    pub parts: Vec<(Poly, usize)>,
    idempotents: Vec<Elem>,
}

impl Split {
    pub fn new(p: u32, modulus: &[u32]) -> Split {
        let whole = Algebra::new(p, modulus);
        let parts = factor(&whole.modulus, p);
        let idempotents = parts
            .iter()
            .map(|(f, e)| {
                let m = poly_pow(f, *e, p);
                let cof = poly_divrem(&whole.modulus, &m, p).0;
                let inv = poly_inverse_mod(&cof, &m, p).expect("coprime factors");
                whole.from_poly(&poly_mul(&cof, &inv, p))
            })
            .collect();
        Split { whole, parts, idempotents }
    }

    /// The element of the whole algebra with the given local components.
    pub fn combine(&self, comps: &[Elem]) -> Elem {
        let a = &self.whole;
        comps.iter().zip(&self.idempotents).fold(a.zero(), |acc, (c, e)| a.add(&acc, &a.mul(&a.from_poly(&trim(c.to_vec())), e)))
    }

    pub fn combine_vectors(&self, vs: &[Vec<Elem>]) -> Vec<Elem> {
        let n = vs[0].len();
        (0..n).map(|i| self.combine(&vs.iter().map(|v| v[i]).collect::<Vec<_>>())).collect()
    }
}

/// Isotropy verdicts of one form over many local algebras, memoized by the
/// local factor `(f, e)`.
pub struct IsotropyCache<'a> {
    pub form: &'a Form,
    memo: HashMap<(Poly, usize), Option<Vec<Elem>>>,
    locals: &'a mut HashMap<(Poly, usize), Local>,
}

impl<'a> IsotropyCache<'a> {
    pub fn new(form: &'a Form, locals: &'a mut HashMap<(Poly, usize), Local>) -> IsotropyCache<'a> {
        IsotropyCache { form, memo: HashMap::new(), locals }
    }

    /// Exhaustive isotropy over `GF(p)[X]/(P)`, with the combined witness.
    pub fn over(&mut self, split: &Split) -> Option<Vec<Elem>> {
        let p = self.form.p;
        let mut comps = Vec::new();
        for key in &split.parts {
            let w = match self.memo.get(key) {
                Some(w) => w.clone(),
                None => {
                    let local = self.locals.entry(key.clone()).or_insert_with(|| Local::new(p, &key.0, key.1));
                    let w = local.isotropic(self.form);
                    self.memo.insert(key.clone(), w.clone());
                    w
                }
            };
            comps.push(w?);
        }
        Some(split.combine_vectors(&comps))
    }
}

/// Brute-force isometry over GF(p): some invertible `T` with `q2(T x) = q1(x)`.
pub fn isometric(q1: &Form, q2: &Form) -> bool {
    let p = q1.p;
    let n = q1.rank();
    if n != q2.rank() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let k = Algebra::prime(p);
    let cols: Vec<Vec<u32>> = all_vectors(&k, n).iter().map(|v| v.iter().map(|x| x[0]).collect()).collect();
    let total = cols.len().pow(n as u32);
    (0..total).any(|mut idx| {
        let t: Vec<Vec<u32>> = (0..n)
            .map(|_| {
                let c = cols[idx % cols.len()].clone();
                idx /= cols.len();
                c
            })
            .collect();
        det(&t, p) != 0 && q2.transport(&t) == *q1
    })
}

/// Determinant over GF(p) by elimination.
pub fn det(m: &[Vec<u32>], p: u32) -> u32 {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m.to_vec();
    let mut d = 1u32;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if r != c {
            a.swap(r, c);
            d = (p - d) % p;
        }
        d = d * a[c][c] % p;
        let inv = inv_mod(a[c][c], p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            for j in c..n {
                a[r][j] = (a[r][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_round_trip() {
        for p in [2, 3, 5] {
            for f in monic_polys(p, 4) {
                let back = factor(&f, p).iter().fold(vec![1], |acc, (g, e)| poly_mul(&acc, &poly_pow(g, *e, p), p));
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree d over GF(p)
        assert_eq!(monic_polys(2, 5).iter().filter(|f| is_irreducible(f, 2)).count(), 6);
        assert_eq!(monic_polys(3, 3).iter().filter(|f| is_irreducible(f, 3)).count(), 8);
        assert_eq!(monic_polys(5, 2).iter().filter(|f| is_irreducible(f, 5)).count(), 10);
    }

    #[test]
    fn field_multiplication_has_inverses() {
        let a = Algebra::new(3, &least_irreducible(3, 3));
        for x in a.elements().into_iter().skip(1) {
            assert!(a.elements().iter().any(|y| a.mul(&x, y) == a.one()));
        }
    }

    #[test]
    fn idempotents_split_the_algebra() {
        let s = Split::new(5, &[0, 0, 1, 1]);
        assert_eq!(s.parts.len(), 2);
        let e0 = s.combine(&[s.whole.one(), s.whole.zero()]);
        assert_eq!(s.whole.mul(&e0, &e0), e0);
    }

    #[test]
    fn sums_of_two_squares() {
        let q = Form::diagonal(3, &[1, 1]);
        assert!(Local::new(3, &[0, 1], 1).isotropic(&q).is_none());
        assert!(Local::new(3, &[1, 0, 1], 1).isotropic(&q).is_some());
        assert!(isometric(&Form::diagonal(5, &[1, 1]), &Form::diagonal(5, &[2, 3])));
        assert!(!isometric(&Form::diagonal(5, &[1]), &Form::diagonal(5, &[2])));
    }
}
