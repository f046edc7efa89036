use std::cmp::Ordering;

use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    coeffs: Vec<RingElement>,
}

impl Polynomial {
    pub fn new(ring: &Ring, mut coeffs: Vec<RingElement>) -> Polynomial {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { ring: ring.clone(), coeffs }
    }

    pub fn from_ints(ring: &Ring, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.one())
    }

    pub fn constant(ring: &Ring, c: RingElement) -> Polynomial {
        Polynomial::new(ring, vec![c])
    }

    /// `c * X^k`
    pub fn monomial(ring: &Ring, c: RingElement, k: usize) -> Polynomial {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = c;
        Polynomial::new(ring, v)
    }

    pub fn x(ring: &Ring) -> Polynomial {
        Polynomial::monomial(ring, ring.one(), 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElement> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::MixedRings)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Polynomial::new(&self.ring, c)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(&self.ring, self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Polynomial::new(r, out)
    }

    pub fn scale(&self, c: &RingElement) -> Polynomial {
        Polynomial::new(&self.ring, self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial::new(&self.ring, v)
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Division by a monic polynomial (valid over any commutative ring).
    pub fn euclidean_divide(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
        if !g.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        Ok(self.divide_by_unit_leading(g, dg, None))
    }

    /// Division by a polynomial whose leading coefficient is a unit.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = g.leading().unwrap();
        let inv = self
            .ring
            .inverse(lead)
            .ok_or_else(|| Error::LeadingCoeffNotUnit(self.ring.format_element(lead)))?;
        Ok(self.divide_by_unit_leading(g, dg, Some(inv)))
    }

    fn divide_by_unit_leading(
        &self,
        g: &Polynomial,
        dg: usize,
        inv: Option<RingElement>,
    ) -> (Polynomial, Polynomial) {
        let r = &self.ring;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return (Polynomial::zero(r), self.clone());
        }
        let mut quot = vec![r.zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let mut c = rem[k].clone();
            if r.is_zero(&c) {
                continue;
            }
            if let Some(inv) = &inv {
                c = r.mul(&c, inv);
            }
            for (t, gc) in g.coeffs.iter().enumerate() {
                rem[k - dg + t] = r.sub(&rem[k - dg + t], &r.mul(&c, gc));
            }
            quot[k - dg] = c;
        }
        rem.truncate(dg);
        (Polynomial::new(r, quot), Polynomial::new(r, rem))
    }

    pub fn rem(&self, g: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(g)?.1)
    }

    /// Scale to leading coefficient 1 (the zero polynomial is returned as is).
    pub fn monic(&self) -> Option<Polynomial> {
        match self.leading() {
            None => Some(self.clone()),
            Some(l) => self.ring.inverse(l).map(|i| self.scale(&i)),
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic().ok_or(Error::NotAField)
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic, over a field.
    pub fn ext_gcd(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.check(other)?;
        let r = &self.ring;
        let (mut a, mut sa, mut ta) = (self.clone(), Polynomial::one(r), Polynomial::zero(r));
        let (mut b, mut sb, mut tb) = (other.clone(), Polynomial::zero(r), Polynomial::one(r));
        while !b.is_zero() {
            let (q, rem) = a.div_rem(&b)?;
            let ns = sa.sub(&q.mul(&sb));
            let nt = ta.sub(&q.mul(&tb));
            a = std::mem::replace(&mut b, rem);
            sa = std::mem::replace(&mut sb, ns);
            ta = std::mem::replace(&mut tb, nt);
        }
        match a.leading() {
            None => Ok((a, sa, ta)),
            Some(l) => {
                let inv = r.inverse(l).ok_or(Error::NotAField)?;
                Ok((a.scale(&inv), sa.scale(&inv), ta.scale(&inv)))
            }
        }
    }

    /// `self^e mod m` for a divisor with unit leading coefficient.
    pub fn pow_mod(&self, mut e: u128, m: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring).rem(m)?;
        let mut b = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &RingElement) -> RingElement {
        let r = &self.ring;
        self.coeffs.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// Evaluate at an element of an algebra over the coefficient ring, given
    /// the embedding of coefficients.
    pub fn eval_in(&self, target: &Ring, x: &RingElement, embed: impl Fn(&RingElement) -> RingElement) -> RingElement {
        self.coeffs
            .iter()
            .rev()
            .fold(target.zero(), |acc, c| target.add(&target.mul(&acc, x), &embed(c)))
    }

    pub fn derivative(&self) -> Polynomial {
        let r = &self.ring;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(&r.from_int(i as i64), c))
            .collect();
        Polynomial::new(r, c)
    }

    /// Coefficientwise image under a map into another ring.
    pub fn map_coeffs(&self, target: &Ring, f: impl Fn(&RingElement) -> RingElement) -> Polynomial {
        Polynomial::new(target, self.coeffs.iter().map(f).collect())
    }

    /// `self(g(X))`
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(r), |acc, c| acc.mul(g).add(&Polynomial::constant(r, c.clone())))
    }

    /// Canonical order: degree first, then coefficients from the constant
    /// term upward.
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| self.ring.cmp_elements(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.ring.format_poly(self, "X"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Ring {
        Ring::gf(p).unwrap()
    }

    #[test]
    fn long_division_over_gf5() {
        let r = gf(5);
        let f = Polynomial::from_ints(&r, &[0, 0, 0, 0, 1]);
        let g = Polynomial::from_ints(&r, &[1, 1, 0, 1]);
        let (q, rem) = f.euclidean_divide(&g).unwrap();
        assert_eq!(q, Polynomial::from_ints(&r, &[0, 1]));
        assert_eq!(rem, Polynomial::from_ints(&r, &[0, 4, 4]));
    }

    #[test]
    fn division_edge_cases() {
        let r = gf(7);
        let f = Polynomial::from_ints(&r, &[3, 1, 4]);
        let (q, rem) = f.euclidean_divide(&Polynomial::one(&r)).unwrap();
        assert_eq!((q, rem.is_zero()), (f.clone(), true));
        let (q, rem) = Polynomial::zero(&r).euclidean_divide(&f.monic().unwrap()).unwrap();
        assert!(q.is_zero() && rem.is_zero());
        assert_eq!(f.euclidean_divide(&f), Err(Error::NonMonicDivisor));
        let other = Polynomial::one(&gf(5));
        assert_eq!(f.euclidean_divide(&other), Err(Error::MixedRings));
    }

    #[test]
    fn gcd_and_bezout() {
        let r = gf(5);
        let a = Polynomial::from_ints(&r, &[1, 0, 1]); // (X+2)(X+3)
        let b = Polynomial::from_ints(&r, &[2, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(a.gcd(&Polynomial::from_ints(&r, &[1, 1])).unwrap(), Polynomial::one(&r));
    }

    #[test]
    fn eval_derivative_compose() {
        let r = gf(7);
        let f = Polynomial::from_ints(&r, &[1, 2, 3]);
        assert_eq!(f.eval(&r.from_int(2)), r.from_int(17));
        assert_eq!(f.derivative(), Polynomial::from_ints(&r, &[2, 6]));
        let g = Polynomial::from_ints(&r, &[1, 1]);
        let h = f.compose(&g);
        assert_eq!(h.eval(&r.from_int(1)), f.eval(&r.from_int(2)));
    }

    #[test]
    fn pow_mod_matches_repeated_product() {
        let r = gf(3);
        let m = Polynomial::from_ints(&r, &[1, 2, 0, 1]);
        let x = Polynomial::x(&r);
        let direct = x.pow(27).rem(&m).unwrap();
        assert_eq!(x.pow_mod(27, &m).unwrap(), direct);
    }
}
