use super::linalg::{self, Matrix};
use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};

/// Matrix over the base ring of multiplication by `s`, in the basis
/// `1, θ, ..., θ^(d-1)`.
pub fn mult_matrix_over_base(s_ring: &Ring, s: &RingElement) -> Result<Matrix> {
    let base = s_ring.base().ok_or_else(|| Error::Unsupported("ring is not presented over a base".into()))?;
    let d = s_ring.modulus().unwrap().degree().unwrap();
    let theta = s_ring.generator().unwrap();
    let mut m = linalg::zeros(&base, d, d);
    let mut basis = s_ring.one();
    for j in 0..d {
        let col = s_ring.mul(s, &basis);
        let RingElement::Poly(c) = col else { unreachable!() };
        for (i, x) in c.into_iter().enumerate() {
            m[i][j] = x;
        }
        basis = s_ring.mul(&basis, &theta);
    }
    Ok(m)
}

/// Norm of `s` down to the base ring: the determinant of multiplication by
/// `s`. For products of presented rings the norm is taken componentwise.
pub fn algebra_norm(s_ring: &Ring, s: &RingElement) -> Result<RingElement> {
    if !s_ring.contains(s) {
        return Err(Error::MixedRings);
    }
    if let Some(fs) = s_ring.factors() {
        let parts = fs
            .iter()
            .enumerate()
            .map(|(i, f)| algebra_norm(f, &s_ring.project(s, i)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(RingElement::Tuple(parts));
    }
    let base = s_ring.base().ok_or_else(|| Error::Unsupported("ring is not presented over a base".into()))?;
    let m = mult_matrix_over_base(s_ring, s)?;
    Ok(linalg::berkowitz_det(&base, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Polynomial;

    #[test]
    fn norm_of_theta_in_gf25() {
        let k = Ring::gf(5).unwrap();
        let s = Ring::quotient(&k, Polynomial::from_ints(&k, &[1, 0, 1])).unwrap();
        let theta = s.generator().unwrap();
        assert_eq!(algebra_norm(&s, &theta).unwrap(), k.one());
    }

    #[test]
    fn scalar_norm_is_power() {
        let k = Ring::gf(7).unwrap();
        let s = Ring::quotient(&k, Polynomial::from_ints(&k, &[3, 1, 0, 1])).unwrap();
        let a = k.from_int(3);
        assert_eq!(algebra_norm(&s, &s.embed_base(&a)).unwrap(), k.pow(&a, 3));
    }
}
