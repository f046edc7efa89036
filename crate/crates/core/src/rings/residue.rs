//! Maximal ideals, residue fields, Jacobson radical and CRT.

use super::factor::{factor, FactorConfig};
use super::linalg::{self, Matrix};
use super::poly::Polynomial;
use super::ring::{Ring, RingElement, RingKind};
use crate::error::{Error, Result};

/// How an element of a ring is sent to one of its residue fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionMap {
    Identity,
    /// Project to product factor `index`, then reduce there.
    Project { index: usize, inner: Box<ReductionMap> },
    /// Reduce coefficients to `base_field` through `base_map`, then take the
    /// class modulo the irreducible `factor` (a polynomial over `base_field`).
    Quotient { base_map: Box<ReductionMap>, base_field: Ring, factor: Polynomial },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    /// Human-readable name of the maximal ideal.
    pub label: String,
    pub field: Ring,
    pub map: ReductionMap,
}

#[derive(Clone, Debug)]
pub struct ResidueData {
    pub residues: Vec<Residue>,
    /// Smallest `e` with `J^e = 0`.
    pub nilpotency: usize,
    /// For non-product rings: prime-subfield matrix of `x -> (x mod m_i)_i`,
    /// rows ordered by residue then residue-field coordinate.
    pub reduction_matrix: Option<Matrix>,
    /// For non-product rings: prime-subfield basis of the Jacobson radical.
    pub radical_basis: Vec<RingElement>,
}

impl ResidueData {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn reduce_all(&self, ring: &Ring, e: &RingElement) -> Vec<RingElement> {
        self.residues.iter().map(|r| r.reduce(ring, e)).collect()
    }
}

impl Residue {
    pub fn reduce(&self, ring: &Ring, e: &RingElement) -> RingElement {
        apply(&self.map, ring, &self.field, e)
    }

    pub fn reduce_vec(&self, ring: &Ring, v: &[RingElement]) -> Vec<RingElement> {
        v.iter().map(|x| self.reduce(ring, x)).collect()
    }

    pub fn reduce_poly(&self, f: &Polynomial) -> Polynomial {
        f.map_coeffs(&self.field, |c| self.reduce(f.ring(), c))
    }
}

fn apply(map: &ReductionMap, ring: &Ring, target: &Ring, e: &RingElement) -> RingElement {
    match map {
        ReductionMap::Identity => e.clone(),
        ReductionMap::Project { index, inner } => {
            let f = &ring.factors().expect("product")[*index];
            apply(inner, f, target, &ring.project(e, *index))
        }
        ReductionMap::Quotient { base_map, base_field, factor } => {
            let base = ring.base().expect("presented ring");
            let poly = ring.to_base_poly(e).map_coeffs(base_field, |c| apply(base_map, &base, base_field, c));
            let r = poly.euclidean_divide(factor).expect("monic factor").1;
            if factor.degree() == Some(1) {
                r.coeff(0)
            } else {
                target.from_base_poly(&r).expect("residue presentation")
            }
        }
    }
}

fn residue_field(kappa: &Ring, g: &Polynomial) -> Result<Ring> {
    if g.degree() == Some(1) {
        return Ok(kappa.clone());
    }
    match kappa.kind() {
        RingKind::Prime(p) => Ring::gf_ext_with(*p, g.clone()),
        _ => Ring::quotient(kappa, g.clone()),
    }
}

pub(crate) fn compute_residues(ring: &Ring) -> Result<ResidueData> {
    if ring.is_field() {
        return Ok(ResidueData {
            residues: vec![Residue { label: format!("{ring}"), field: ring.clone(), map: ReductionMap::Identity }],
            nilpotency: 1,
            reduction_matrix: ring.prime_subfield().map(|k| linalg::identity(&k, ring.dim())),
            radical_basis: Vec::new(),
        });
    }
    if let Some(fs) = ring.factors() {
        let mut residues = Vec::new();
        let mut e = 1;
        for (i, f) in fs.iter().enumerate() {
            let data = f.residues()?;
            e = e.max(data.nilpotency);
            for r in &data.residues {
                residues.push(Residue {
                    label: format!("{}:{}", i, r.label),
                    field: r.field.clone(),
                    map: ReductionMap::Project { index: i, inner: Box::new(r.map.clone()) },
                });
            }
        }
        return Ok(ResidueData { residues, nilpotency: e, reduction_matrix: None, radical_basis: Vec::new() });
    }
    let base = ring.base().expect("presented non-field ring");
    let modulus = ring.modulus().unwrap();
    let base_data = base.residues()?;
    let mut residues = Vec::new();
    for br in &base_data.residues {
        let m = br.reduce_poly(modulus);
        if matches!(br.field.kind(), RingKind::Quotient { .. }) && !br.field.is_finite() {
            return Err(Error::Unsupported("residues of quotients over number fields".into()));
        }
        let fac = factor(&m, &FactorConfig::default())?;
        for (g, _) in fac.factors {
            let field = residue_field(&br.field, &g)?;
            residues.push(Residue {
                label: if base_data.len() == 1 { format!("({g})") } else { format!("{}/({g})", br.label) },
                field,
                map: ReductionMap::Quotient {
                    base_map: Box::new(br.map.clone()),
                    base_field: br.field.clone(),
                    factor: g,
                },
            });
        }
    }
    let k = ring.prime_subfield().unwrap();
    let d = ring.dim();
    let mut mat: Matrix = Vec::new();
    for r in &residues {
        let rows = r.field.dim();
        let mut block = linalg::zeros(&k, rows, d);
        for j in 0..d {
            let img = r.field.to_coords(&r.reduce(ring, &ring.basis_element(j)));
            for (i, c) in img.into_iter().enumerate() {
                block[i][j] = c;
            }
        }
        mat.extend(block);
    }
    let radical: Vec<RingElement> = linalg::kernel(&k, &mat, d).iter().map(|c| ring.from_coords(c)).collect();
    let nilpotency = nilpotency_exponent(ring, &radical);
    Ok(ResidueData { residues, nilpotency, reduction_matrix: Some(mat), radical_basis: radical })
}

/// Prime-subfield basis of the span of the given elements.
pub(crate) fn span_basis(ring: &Ring, elems: &[RingElement]) -> Vec<RingElement> {
    if elems.is_empty() {
        return Vec::new();
    }
    let k = ring.prime_subfield().unwrap();
    let rows: Matrix = elems.iter().map(|e| ring.to_coords(e)).collect();
    let (red, piv) = linalg::rref(&k, &rows);
    red.into_iter().take(piv.len()).map(|c| ring.from_coords(&c)).collect()
}

fn nilpotency_exponent(ring: &Ring, radical: &[RingElement]) -> usize {
    let mut cur = radical.to_vec();
    let mut e = 1;
    while !cur.is_empty() {
        let prods: Vec<RingElement> = cur.iter().flat_map(|x| radical.iter().map(move |y| ring.mul(x, y))).collect();
        cur = span_basis(ring, &prods);
        e += 1;
    }
    e
}

/// An element reducing to `values[i]` at the i-th residue field.
pub fn crt_combine(ring: &Ring, values: &[RingElement]) -> Result<RingElement> {
    let data = ring.residues()?;
    if values.len() != data.len() {
        return Err(Error::CountMismatch { expected: data.len(), found: values.len() });
    }
    for (r, v) in data.residues.iter().zip(values) {
        if !r.field.contains(v) {
            return Err(Error::InvalidElement(format!("value does not lie in {}", r.field)));
        }
    }
    if ring.is_field() {
        return Ok(values[0].clone());
    }
    if let Some(fs) = ring.factors() {
        let mut parts = Vec::new();
        let mut offset = 0;
        for f in fs {
            let n = f.residues()?.len();
            parts.push(crt_combine(f, &values[offset..offset + n])?);
            offset += n;
        }
        return Ok(RingElement::Tuple(parts));
    }
    let k = ring.prime_subfield().unwrap();
    let rhs: Vec<RingElement> = data.residues.iter().zip(values).flat_map(|(r, v)| r.field.to_coords(v)).collect();
    let x = linalg::solve(&k, data.reduction_matrix.as_ref().unwrap(), &rhs)
        .ok_or_else(|| Error::Inconsistent("reduction map is not onto".into()))?;
    Ok(ring.from_coords(&x))
}

/// Whether every coordinate of `v` vanishes in some residue field.
pub fn is_unimodular(ring: &Ring, v: &[RingElement]) -> Result<bool> {
    let data = ring.residues()?;
    Ok(data.residues.iter().all(|r| v.iter().any(|x| !r.field.is_zero(&r.reduce(ring, x)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5_quot(coeffs: &[i64]) -> Ring {
        let k = Ring::gf(5).unwrap();
        Ring::quotient(&k, Polynomial::from_ints(&k, coeffs)).unwrap()
    }

    #[test]
    fn prime_field_single_residue() {
        let r = Ring::gf(7).unwrap();
        let d = r.residues().unwrap();
        assert_eq!((d.len(), d.nilpotency), (1, 1));
    }

    #[test]
    fn repeated_factor_gives_nilpotency_two() {
        // (X+1)^2 (X+2) = X^3 + 4X^2 + 5X + 2
        let r = gf5_quot(&[2, 0, 4, 1]);
        let d = r.residues().unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.nilpotency, 2);
        assert!(d.residues.iter().all(|x| x.field == Ring::gf(5).unwrap()));
    }

    #[test]
    fn product_concatenates() {
        let r = Ring::product(vec![Ring::gf(3).unwrap(), Ring::gf_ext(3, 2).unwrap()]).unwrap();
        let d = r.residues().unwrap();
        assert_eq!((d.len(), d.nilpotency), (2, 1));
    }

    #[test]
    fn crt_two_linear_factors() {
        // (X+1)(X+2) = X^2 + 3X + 2
        let r = gf5_quot(&[2, 3, 1]);
        let k = Ring::gf(5).unwrap();
        let v = crt_combine(&r, &[k.from_int(1), k.from_int(3)]).unwrap();
        let x = r.generator().unwrap();
        let expected = r.add(&r.mul(&r.from_int(3), &x), &r.from_int(4));
        assert_eq!(v, expected);
        assert_eq!(r.residues().unwrap().reduce_all(&r, &v), vec![k.from_int(1), k.from_int(3)]);
        assert_eq!(crt_combine(&r, &[k.one()]), Err(Error::CountMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn nested_quotient_residues() {
        // GF(5)[X]/(X^2)[Y]/(Y^2 - X)  has one residue GF(5) and J^4 = 0
        let s = gf5_quot(&[0, 0, 1]);
        let x = s.generator().unwrap();
        let m = Polynomial::new(&s, vec![s.neg(&x), s.zero(), s.one()]);
        let t = Ring::quotient(&s, m).unwrap();
        let d = t.residues().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.nilpotency, 4);
    }

    #[test]
    fn unimodular_vector_over_split_quotient() {
        let r = gf5_quot(&[2, 3, 1]);
        let x = r.generator().unwrap();
        let v = vec![r.add(&x, &r.one()), r.add(&x, &r.from_int(2))];
        assert!(is_unimodular(&r, &v).unwrap());
        assert!(!is_unimodular(&r, &[r.add(&x, &r.one()), r.zero()]).unwrap());
    }
}
