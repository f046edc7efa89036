use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

use super::factor::{factor, FactorConfig};
use super::linalg;
use super::poly::Polynomial;
use super::residue::{compute_residues, ResidueData};
use crate::error::{Error, Result};

/// Payload of a ring element. The owning [`Ring`] gives it meaning; every
/// payload produced by ring operations is in canonical form, so structural
/// equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
    /// Least non-negative residue modulo p.
    Residue(u64),
    /// Coefficients (lowest degree first) of the representative of degree
    /// below the modulus degree, padded to exactly that many entries.
    Poly(Vec<RingElement>),
    /// One component per factor of a product ring.
    Tuple(Vec<RingElement>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rational,
    Prime(u64),
    /// GF(p^n) = GF(p)[X]/(modulus), modulus irreducible of degree n >= 2.
    Extension { p: u64, modulus: Polynomial },
    /// base[X]/(modulus), modulus monic of degree >= 1. The base is never a
    /// product ring (quotients of products are split at construction).
    Quotient { base: Ring, modulus: Polynomial },
    /// Flat, nonempty list of factors.
    Product(Vec<Ring>),
}

struct RingInner {
    kind: RingKind,
    field: bool,
    residues: OnceLock<Result<Arc<ResidueData>>>,
}

/// Shared handle to a coefficient ring descriptor.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

/// Largest prime accepted; keeps products of residues inside u64.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Ring {
    fn wrap(kind: RingKind, field: bool) -> Ring {
        Ring(Arc::new(RingInner { kind, field, residues: OnceLock::new() }))
    }

    pub fn rationals() -> Ring {
        Ring::wrap(RingKind::Rational, true)
    }

    pub fn gf(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::Unsupported(format!("prime {p} too large")));
        }
        Ok(Ring::wrap(RingKind::Prime(p), true))
    }

    /// GF(p^n) with the lexicographically smallest irreducible monic modulus
    /// (coefficients compared lowest degree first).
    pub fn gf_ext(p: u64, n: usize) -> Result<Ring> {
        let base = Ring::gf(p)?;
        if n == 0 {
            return Err(Error::InvalidRing("extension degree 0".into()));
        }
        if n == 1 {
            return Ok(base);
        }
        let modulus = smallest_irreducible(&base, n)?;
        Ring::gf_ext_with(p, modulus)
    }

    pub fn gf_ext_with(p: u64, modulus: Polynomial) -> Result<Ring> {
        let base = Ring::gf(p)?;
        if modulus.ring() != &base {
            return Err(Error::MixedRings);
        }
        let n = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if n < 2 {
            return Err(Error::InvalidRing("extension modulus must have degree >= 2".into()));
        }
        if !modulus.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if !is_irreducible(&modulus)? {
            return Err(Error::Reducible);
        }
        Ok(Ring::wrap(RingKind::Extension { p, modulus }, true))
    }

    /// `base[X]/(modulus)`. Quotients of a product ring are returned as the
    /// product of the componentwise quotients.
    pub fn quotient(base: &Ring, modulus: Polynomial) -> Result<Ring> {
        if modulus.ring() != base {
            return Err(Error::MixedRings);
        }
        let d = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::InvalidRing("quotient modulus must have degree >= 1".into()));
        }
        if !modulus.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if let RingKind::Product(factors) = base.kind() {
            let parts = factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let m = modulus.map_coeffs(f, |c| base.project(c, i));
                    Ring::quotient(f, m)
                })
                .collect::<Result<Vec<_>>>()?;
            return Ring::product(parts);
        }
        let field = base.is_field() && is_irreducible(&modulus).unwrap_or(false);
        Ok(Ring::wrap(RingKind::Quotient { base: base.clone(), modulus }, field))
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        let mut flat = Vec::new();
        for f in factors {
            match f.kind() {
                RingKind::Product(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(f),
            }
        }
        if flat.is_empty() {
            return Err(Error::InvalidRing("empty product".into()));
        }
        Ok(Ring::wrap(RingKind::Product(flat), false))
    }

    /// Maximal ideals, residue fields and the radical's nilpotency exponent
    /// (computed once per descriptor).
    pub fn residues(&self) -> Result<Arc<ResidueData>> {
        self.0.residues.get_or_init(|| compute_residues(self).map(Arc::new)).clone()
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn is_field(&self) -> bool {
        self.0.field
    }

    pub fn is_product(&self) -> bool {
        matches!(self.kind(), RingKind::Product(_))
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match self.kind() {
            RingKind::Product(f) => Some(f),
            _ => None,
        }
    }

    /// Coefficient ring of an extension or quotient presentation.
    pub fn base(&self) -> Option<Ring> {
        match self.kind() {
            RingKind::Extension { modulus, .. } | RingKind::Quotient { modulus, .. } => {
                Some(modulus.ring().clone())
            }
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        match self.kind() {
            RingKind::Extension { modulus, .. } | RingKind::Quotient { modulus, .. } => {
                Some(modulus)
            }
            _ => None,
        }
    }

    /// 0 for characteristic zero; the lcm of the factor characteristics for
    /// products (0 if any factor has characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            RingKind::Rational => 0,
            RingKind::Prime(p) | RingKind::Extension { p, .. } => *p,
            RingKind::Quotient { base, .. } => base.characteristic(),
            RingKind::Product(fs) => {
                let mut acc = 1u64;
                for f in fs {
                    let c = f.characteristic();
                    if c == 0 {
                        return 0;
                    }
                    acc = num::integer::lcm(acc, c);
                }
                acc
            }
        }
    }

    /// Number of elements, `None` when infinite or beyond u128.
    pub fn size(&self) -> Option<u128> {
        match self.kind() {
            RingKind::Rational => None,
            RingKind::Prime(p) => Some(*p as u128),
            RingKind::Extension { .. } | RingKind::Quotient { .. } => {
                let b = self.base().expect("presented ring").size()?;
                let d = self.degree_over_base() as u32;
                b.checked_pow(d)
            }
            RingKind::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.size()?)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    fn degree_over_base(&self) -> usize {
        self.modulus().and_then(|m| m.degree()).unwrap_or(1)
    }

    /// GF(p) or Q for every non-product ring; products have none.
    pub fn prime_subfield(&self) -> Option<Ring> {
        match self.kind() {
            RingKind::Rational | RingKind::Prime(_) => Some(self.clone()),
            RingKind::Extension { modulus, .. } => Some(modulus.ring().clone()),
            RingKind::Quotient { base, .. } => base.prime_subfield(),
            RingKind::Product(_) => None,
        }
    }

    /// Dimension over the prime subfield (sum over factors for products).
    pub fn dim(&self) -> usize {
        match self.kind() {
            RingKind::Rational | RingKind::Prime(_) => 1,
            RingKind::Extension { .. } => self.degree_over_base(),
            RingKind::Quotient { base, .. } => base.dim() * self.degree_over_base(),
            RingKind::Product(fs) => fs.iter().map(Ring::dim).sum(),
        }
    }

    // ---- element construction -------------------------------------------

    pub fn zero(&self) -> RingElement {
        match self.kind() {
            RingKind::Rational => RingElement::Rational(BigRational::zero()),
            RingKind::Prime(_) => RingElement::Residue(0),
            RingKind::Extension { .. } | RingKind::Quotient { .. } => {
                let b = self.base().unwrap();
                RingElement::Poly(vec![b.zero(); self.degree_over_base()])
            }
            RingKind::Product(fs) => RingElement::Tuple(fs.iter().map(Ring::zero).collect()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        match self.kind() {
            RingKind::Rational => RingElement::Rational(BigRational::from_integer(n.clone())),
            RingKind::Prime(p) => {
                let pb = BigInt::from(*p);
                let mut r = n % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                RingElement::Residue(r.to_u64().unwrap())
            }
            RingKind::Extension { .. } | RingKind::Quotient { .. } => {
                let b = self.base().unwrap();
                let mut v = vec![b.zero(); self.degree_over_base()];
                v[0] = b.from_bigint(n);
                RingElement::Poly(v)
            }
            RingKind::Product(fs) => {
                RingElement::Tuple(fs.iter().map(|f| f.from_bigint(n)).collect())
            }
        }
    }

    /// Image of a rational number; `None` if the denominator is not invertible.
    pub fn from_rational(&self, q: &BigRational) -> Option<RingElement> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }

    /// The class of X in an extension or quotient presentation.
    pub fn generator(&self) -> Option<RingElement> {
        let b = self.base()?;
        let d = self.degree_over_base();
        let mut v = vec![b.zero(); d];
        if d == 1 {
            // X = -m_0 in base[X]/(X + m_0)
            v[0] = b.neg(&self.modulus().unwrap().coeff(0));
        } else {
            v[1] = b.one();
        }
        Some(RingElement::Poly(v))
    }

    /// Reduce a polynomial over the base into an element of this presented ring.
    pub fn from_base_poly(&self, f: &Polynomial) -> Result<RingElement> {
        let b = self.base().ok_or_else(|| Error::Unsupported("ring has no presentation".into()))?;
        if f.ring() != &b {
            return Err(Error::MixedRings);
        }
        let (_, r) = f.euclidean_divide(self.modulus().unwrap())?;
        let d = self.degree_over_base();
        Ok(RingElement::Poly((0..d).map(|i| r.coeff(i)).collect()))
    }

    /// Representative polynomial over the base (degree below the modulus degree).
    pub fn to_base_poly(&self, e: &RingElement) -> Polynomial {
        let b = self.base().expect("presented ring");
        match e {
            RingElement::Poly(c) => Polynomial::new(&b, c.clone()),
            _ => panic!("element is not a polynomial residue"),
        }
    }

    /// Embed a base element as a constant.
    pub fn embed_base(&self, c: &RingElement) -> RingElement {
        let b = self.base().expect("presented ring");
        let mut v = vec![b.zero(); self.degree_over_base()];
        v[0] = c.clone();
        RingElement::Poly(v)
    }

    pub fn project(&self, e: &RingElement, i: usize) -> RingElement {
        match e {
            RingElement::Tuple(c) => c[i].clone(),
            _ => panic!("element is not a tuple"),
        }
    }

    /// Whether `e` is a canonical payload for this ring.
    pub fn contains(&self, e: &RingElement) -> bool {
        match (self.kind(), e) {
            (RingKind::Rational, RingElement::Rational(_)) => true,
            (RingKind::Prime(p), RingElement::Residue(r)) => r < p,
            (RingKind::Extension { .. } | RingKind::Quotient { .. }, RingElement::Poly(c)) => {
                let b = self.base().unwrap();
                c.len() == self.degree_over_base() && c.iter().all(|x| b.contains(x))
            }
            (RingKind::Product(fs), RingElement::Tuple(c)) => {
                c.len() == fs.len() && fs.iter().zip(c).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    // ---- arithmetic ------------------------------------------------------

    pub fn is_zero(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Rational(q) => q.is_zero(),
            RingElement::Residue(r) => *r == 0,
            RingElement::Poly(c) => {
                let b = self.base().unwrap();
                c.iter().all(|x| b.is_zero(x))
            }
            RingElement::Tuple(c) => {
                let fs = self.factors().unwrap();
                fs.iter().zip(c).all(|(f, x)| f.is_zero(x))
            }
        }
    }

    pub fn is_one(&self, a: &RingElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self.kind(), a, b) {
            (RingKind::Rational, RingElement::Rational(x), RingElement::Rational(y)) => {
                RingElement::Rational(x + y)
            }
            (RingKind::Prime(p), RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue((x + y) % p)
            }
            (_, RingElement::Poly(x), RingElement::Poly(y)) => {
                let r = self.base().unwrap();
                RingElement::Poly(x.iter().zip(y).map(|(s, t)| r.add(s, t)).collect())
            }
            (RingKind::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => {
                RingElement::Tuple(
                    fs.iter().zip(x.iter().zip(y)).map(|(f, (s, t))| f.add(s, t)).collect(),
                )
            }
            _ => panic!("ring element mismatch in add"),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (self.kind(), a) {
            (RingKind::Rational, RingElement::Rational(x)) => RingElement::Rational(-x),
            (RingKind::Prime(p), RingElement::Residue(x)) => RingElement::Residue((p - x) % p),
            (_, RingElement::Poly(x)) => {
                let r = self.base().unwrap();
                RingElement::Poly(x.iter().map(|s| r.neg(s)).collect())
            }
            (RingKind::Product(fs), RingElement::Tuple(x)) => {
                RingElement::Tuple(fs.iter().zip(x).map(|(f, s)| f.neg(s)).collect())
            }
            _ => panic!("ring element mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self.kind(), a, b) {
            (RingKind::Rational, RingElement::Rational(x), RingElement::Rational(y)) => {
                RingElement::Rational(x * y)
            }
            (RingKind::Prime(p), RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(x * y % p)
            }
            (_, RingElement::Poly(x), RingElement::Poly(y)) => {
                let m = self.modulus().unwrap();
                RingElement::Poly(mul_mod(m.ring(), x, y, m.coeffs()))
            }
            (RingKind::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => {
                RingElement::Tuple(
                    fs.iter().zip(x.iter().zip(y)).map(|(f, (s, t))| f.mul(s, t)).collect(),
                )
            }
            _ => panic!("ring element mismatch in mul"),
        }
    }

    pub fn pow(&self, a: &RingElement, mut exp: u128) -> RingElement {
        if let (RingKind::Prime(p), RingElement::Residue(x)) = (self.kind(), a) {
            return RingElement::Residue(mod_pow(*x, exp, *p));
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a RingElement>) -> RingElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Multiplicative inverse, `None` for non-units.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        match (self.kind(), a) {
            (RingKind::Rational, RingElement::Rational(x)) => {
                (!x.is_zero()).then(|| RingElement::Rational(x.recip()))
            }
            (RingKind::Prime(p), RingElement::Residue(x)) => {
                (*x != 0).then(|| RingElement::Residue(mod_pow(*x, (*p - 2) as u128, *p)))
            }
            (RingKind::Product(fs), RingElement::Tuple(x)) => fs
                .iter()
                .zip(x)
                .map(|(f, s)| f.inverse(s))
                .collect::<Option<Vec<_>>>()
                .map(RingElement::Tuple),
            (_, RingElement::Poly(_)) => {
                if self.is_zero(a) {
                    return None;
                }
                // solve a * x = 1 over the prime subfield
                let k = self.prime_subfield().unwrap();
                let mat = self.mult_matrix(a);
                let rhs = self.to_coords(&self.one());
                linalg::solve(&k, &mat, &rhs).map(|x| self.from_coords(&x))
            }
            _ => panic!("ring element mismatch in inverse"),
        }
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        match (self.kind(), a) {
            (RingKind::Rational, RingElement::Rational(x)) => !x.is_zero(),
            (RingKind::Prime(_), RingElement::Residue(x)) => *x != 0,
            (RingKind::Product(fs), RingElement::Tuple(x)) => {
                fs.iter().zip(x).all(|(f, s)| f.is_unit(s))
            }
            _ if self.is_field() => !self.is_zero(a),
            _ => self.inverse(a).is_some(),
        }
    }

    pub fn div(&self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        self.inverse(b).map(|bi| self.mul(a, &bi))
    }

    /// Matrix (over the prime subfield, row-major) of multiplication by `a`.
    pub fn mult_matrix(&self, a: &RingElement) -> Vec<Vec<RingElement>> {
        let d = self.dim();
        let k = self.prime_subfield().expect("non-product ring");
        let mut m = vec![vec![k.zero(); d]; d];
        for j in 0..d {
            let col = self.to_coords(&self.mul(a, &self.basis_element(j)));
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    // ---- prime-subfield coordinates --------------------------------------

    /// Coordinates over the prime subfield; presented rings flatten their
    /// coefficients lowest degree first, products concatenate factors.
    pub fn to_coords(&self, e: &RingElement) -> Vec<RingElement> {
        let mut out = Vec::with_capacity(self.dim());
        self.push_coords(e, &mut out);
        out
    }

    fn push_coords(&self, e: &RingElement, out: &mut Vec<RingElement>) {
        match (self.kind(), e) {
            (RingKind::Rational | RingKind::Prime(_), _) => out.push(e.clone()),
            (RingKind::Product(fs), RingElement::Tuple(c)) => {
                for (f, x) in fs.iter().zip(c) {
                    f.push_coords(x, out);
                }
            }
            (_, RingElement::Poly(c)) => {
                let b = self.base().unwrap();
                for x in c {
                    b.push_coords(x, out);
                }
            }
            _ => panic!("ring element mismatch in to_coords"),
        }
    }

    pub fn from_coords(&self, coords: &[RingElement]) -> RingElement {
        let mut it = coords.iter();
        let e = self.take_coords(&mut it);
        debug_assert!(it.next().is_none());
        e
    }

    fn take_coords<'a>(&self, it: &mut impl Iterator<Item = &'a RingElement>) -> RingElement {
        match self.kind() {
            RingKind::Rational | RingKind::Prime(_) => it.next().expect("coordinate").clone(),
            RingKind::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.take_coords(it)).collect()),
            _ => {
                let b = self.base().unwrap();
                RingElement::Poly((0..self.degree_over_base()).map(|_| b.take_coords(it)).collect())
            }
        }
    }

    pub fn basis_element(&self, j: usize) -> RingElement {
        let k = self.prime_subfield().expect("non-product ring");
        let mut c = vec![k.zero(); self.dim()];
        c[j] = k.one();
        self.from_coords(&c)
    }

    // ---- ordering and enumeration ----------------------------------------

    /// Canonical total order: numeric on Q and GF(p), lexicographic on the
    /// coordinate tuple (constant term most significant) otherwise.
    pub fn cmp_elements(&self, a: &RingElement, b: &RingElement) -> Ordering {
        match (self.kind(), a, b) {
            (RingKind::Rational, RingElement::Rational(x), RingElement::Rational(y)) => x.cmp(y),
            (RingKind::Prime(_), RingElement::Residue(x), RingElement::Residue(y)) => x.cmp(y),
            (RingKind::Product(fs), RingElement::Tuple(x), RingElement::Tuple(y)) => fs
                .iter()
                .zip(x.iter().zip(y))
                .map(|(f, (s, t))| f.cmp_elements(s, t))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            (_, RingElement::Poly(x), RingElement::Poly(y)) => {
                let r = self.base().unwrap();
                x.iter()
                    .zip(y)
                    .map(|(s, t)| r.cmp_elements(s, t))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }
            _ => panic!("ring element mismatch in cmp"),
        }
    }

    /// Element with the given position in the canonical order (finite rings).
    pub fn element_at(&self, mut index: u128) -> RingElement {
        match self.kind() {
            RingKind::Rational => panic!("Q is infinite"),
            RingKind::Prime(_) => RingElement::Residue(index as u64),
            _ => {
                let parts: Vec<Ring> = match self.kind() {
                    RingKind::Product(fs) => fs.clone(),
                    _ => vec![self.base().unwrap(); self.degree_over_base()],
                };
                let mut comps = vec![RingElement::Residue(0); parts.len()];
                for (slot, r) in comps.iter_mut().zip(&parts).rev() {
                    let s = r.size().expect("finite");
                    *slot = r.element_at(index % s);
                    index /= s;
                }
                if self.is_product() {
                    RingElement::Tuple(comps)
                } else {
                    RingElement::Poly(comps)
                }
            }
        }
    }

    pub fn index_of(&self, e: &RingElement) -> u128 {
        match (self.kind(), e) {
            (RingKind::Prime(_), RingElement::Residue(r)) => *r as u128,
            (RingKind::Product(fs), RingElement::Tuple(c)) => fs
                .iter()
                .zip(c)
                .fold(0u128, |acc, (f, x)| acc * f.size().unwrap() + f.index_of(x)),
            (_, RingElement::Poly(c)) => {
                let b = self.base().unwrap();
                let s = b.size().expect("finite");
                c.iter().fold(0u128, |acc, x| acc * s + b.index_of(x))
            }
            _ => panic!("index_of on infinite ring"),
        }
    }

    /// All elements in canonical order (finite rings only).
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let n = self.size().expect("finite ring");
        (0..n).map(move |i| self.element_at(i))
    }
}

/// Product of two reduced representatives modulo a monic polynomial given by
/// its full coefficient list.
fn mul_mod(base: &Ring, a: &[RingElement], b: &[RingElement], m: &[RingElement]) -> Vec<RingElement> {
    let d = a.len();
    if d == 1 {
        return vec![base.mul(&a[0], &b[0])];
    }
    let mut prod = vec![base.zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
        }
    }
    for k in (d..2 * d - 1).rev() {
        let c = prod[k].clone();
        if base.is_zero(&c) {
            continue;
        }
        for t in 0..d {
            let s = base.mul(&c, &m[t]);
            prod[k - d + t] = base.sub(&prod[k - d + t], &s);
        }
    }
    prod.truncate(d);
    prod
}

fn is_irreducible(f: &Polynomial) -> Result<bool> {
    let fac = factor(f, &FactorConfig::default())?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Lexicographically smallest (low degree first) irreducible monic
/// polynomial of degree n over a finite field.
pub fn smallest_irreducible(field: &Ring, n: usize) -> Result<Polynomial> {
    let q = field.size().ok_or(Error::NotAField)?;
    let count = q.checked_pow(n as u32).ok_or(Error::Unsupported("search too large".into()))?;
    for idx in 0..count {
        // idx enumerates (c_0, ..., c_{n-1}) with c_0 most significant
        let mut coeffs = vec![field.zero(); n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            coeffs[i] = field.element_at(rest % q);
            rest /= q;
        }
        coeffs[n] = field.one();
        let f = Polynomial::new(field, coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Inconsistent("no irreducible polynomial found".into()))
}

/// Helper for tests and parsers: `BigRational` from a pair of integers.
pub fn rat(n: i64, d: i64) -> RingElement {
    RingElement::Rational(BigRational::new(n.into(), d.into()))
}
