//! Quadratic and bilinear forms on free modules `R^n`.

use crate::error::{Error, Result};
use crate::rings::linalg::{self, Matrix};
use crate::rings::{Residue, Ring, RingElement, RingKind};

/// Element of `R^n`.
pub type Vector = Vec<RingElement>;

pub fn vec_add(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn vec_sub(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

pub fn vec_scale(ring: &Ring, c: &RingElement, a: &[RingElement]) -> Vector {
    a.iter().map(|x| ring.mul(c, x)).collect()
}

pub fn unit_vector(ring: &Ring, n: usize, i: usize) -> Vector {
    let mut v = vec![ring.zero(); n];
    v[i] = ring.one();
    v
}

/// Matrix whose columns are the given vectors.
pub fn columns_to_matrix(ring: &Ring, n: usize, cols: &[Vector]) -> Matrix {
    let mut m = linalg::zeros(ring, n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    m
}

pub fn matrix_columns(m: &Matrix) -> Vec<Vector> {
    linalg::transpose(m)
}

/// `q(x) = sum_{i <= j} c_ij x_i x_j`, stored as an upper-triangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    ring: Ring,
    coeffs: Matrix,
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    ring: Ring,
    matrix: Matrix,
}

/// Ring homomorphisms along which forms can be base-changed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingHom {
    Identity,
    /// Structure map into an algebra built from the source by extensions,
    /// quotients and products.
    Include(Ring),
    /// Reduction to the i-th residue field.
    ToResidue(usize),
    /// Projection of a product ring onto factor i.
    ProjectFactor(usize),
}

fn check_square(ring: &Ring, m: &Matrix) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        if let Some(x) = row.iter().find(|x| !ring.contains(x)) {
            return Err(Error::InvalidElement(format!("{x:?}")));
        }
    }
    Ok(n)
}

/// Image of `x` under the structure map `src -> dst`.
pub fn include(src: &Ring, dst: &Ring, x: &RingElement) -> Result<RingElement> {
    if src == dst {
        return Ok(x.clone());
    }
    if let Some(fs) = dst.factors() {
        let parts = match src.factors() {
            Some(ss) if ss.len() == fs.len() => fs
                .iter()
                .enumerate()
                .map(|(i, f)| include(&ss[i], f, &src.project(x, i)))
                .collect::<Result<Vec<_>>>()?,
            _ => fs.iter().map(|f| include(src, f, x)).collect::<Result<Vec<_>>>()?,
        };
        return Ok(RingElement::Tuple(parts));
    }
    match dst.base() {
        Some(b) => Ok(dst.embed_base(&include(src, &b, x)?)),
        None => Err(Error::UnsupportedHom(format!("{src} -> {dst}"))),
    }
}

impl RingHom {
    pub fn target(&self, src: &Ring) -> Result<Ring> {
        match self {
            RingHom::Identity => Ok(src.clone()),
            RingHom::Include(t) => {
                include(src, t, &src.one())?;
                Ok(t.clone())
            }
            RingHom::ToResidue(i) => Ok(self.residue(src, *i)?.field),
            RingHom::ProjectFactor(i) => src
                .factors()
                .and_then(|f| f.get(*i).cloned())
                .ok_or_else(|| Error::UnsupportedHom(format!("no factor {i} in {src}"))),
        }
    }

    fn residue(&self, src: &Ring, i: usize) -> Result<Residue> {
        src.residues()?
            .residues
            .get(i)
            .cloned()
            .ok_or_else(|| Error::UnsupportedHom(format!("no residue {i} of {src}")))
    }

    pub fn apply(&self, src: &Ring, x: &RingElement) -> Result<RingElement> {
        match self {
            RingHom::Identity => Ok(x.clone()),
            RingHom::Include(t) => include(src, t, x),
            RingHom::ToResidue(i) => Ok(self.residue(src, *i)?.reduce(src, x)),
            RingHom::ProjectFactor(i) => {
                self.target(src)?;
                Ok(src.project(x, *i))
            }
        }
    }
}

impl QuadraticForm {
    /// Form with the given upper-triangular coefficient matrix.
    pub fn new(ring: &Ring, coeffs: Matrix) -> Result<QuadraticForm> {
        let n = check_square(ring, &coeffs)?;
        for i in 0..n {
            for j in 0..i {
                if !ring.is_zero(&coeffs[i][j]) {
                    return Err(Error::InvalidElement(format!("entry ({i},{j}) below the diagonal")));
                }
            }
        }
        Ok(QuadraticForm { ring: ring.clone(), coeffs })
    }

    /// The form `x -> x^T M x` for an arbitrary square matrix.
    pub fn from_gram(ring: &Ring, m: &Matrix) -> Result<QuadraticForm> {
        let n = check_square(ring, m)?;
        let mut c = linalg::zeros(ring, n, n);
        for i in 0..n {
            c[i][i] = m[i][i].clone();
            for j in i + 1..n {
                c[i][j] = ring.add(&m[i][j], &m[j][i]);
            }
        }
        Ok(QuadraticForm { ring: ring.clone(), coeffs: c })
    }

    pub fn zero(ring: &Ring, n: usize) -> QuadraticForm {
        QuadraticForm { ring: ring.clone(), coeffs: linalg::zeros(ring, n, n) }
    }

    /// `<u_1, ..., u_n>_q = sum u_i x_i^2`
    pub fn diagonal(ring: &Ring, entries: &[RingElement]) -> QuadraticForm {
        let n = entries.len();
        let mut c = linalg::zeros(ring, n, n);
        for (i, u) in entries.iter().enumerate() {
            c[i][i] = u.clone();
        }
        QuadraticForm { ring: ring.clone(), coeffs: c }
    }

    /// `<u>_q : r -> u r^2`
    pub fn one_dim(ring: &Ring, u: RingElement) -> QuadraticForm {
        QuadraticForm::diagonal(ring, &[u])
    }

    pub fn hyperbolic_plane(ring: &Ring) -> QuadraticForm {
        QuadraticForm::hyperbolic_space(ring, 1)
    }

    /// `H(R^n) = sum x_i y_i` in the basis `x_1, y_1, x_2, y_2, ...`.
    pub fn hyperbolic_space(ring: &Ring, n: usize) -> QuadraticForm {
        let mut c = linalg::zeros(ring, 2 * n, 2 * n);
        for i in 0..n {
            c[2 * i][2 * i + 1] = ring.one();
        }
        QuadraticForm { ring: ring.clone(), coeffs: c }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &RingElement {
        &self.coeffs[i][j]
    }

    fn check_vec(&self, v: &[RingElement]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &[RingElement]) -> Result<RingElement> {
        self.check_vec(v)?;
        Ok(self.eval_unchecked(v))
    }

    pub(crate) fn eval_unchecked(&self, v: &[RingElement]) -> RingElement {
        let r = &self.ring;
        let mut acc = r.zero();
        for i in 0..v.len() {
            if r.is_zero(&v[i]) {
                continue;
            }
            let mut row = r.zero();
            for j in i..v.len() {
                if !r.is_zero(&self.coeffs[i][j]) {
                    row = r.add(&row, &r.mul(&self.coeffs[i][j], &v[j]));
                }
            }
            acc = r.add(&acc, &r.mul(&v[i], &row));
        }
        acc
    }

    /// `b_q(u, v) = q(u + v) - q(u) - q(v)`
    pub fn polar_eval(&self, u: &[RingElement], v: &[RingElement]) -> Result<RingElement> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        Ok(self.polar_unchecked(u, v))
    }

    pub(crate) fn polar_unchecked(&self, u: &[RingElement], v: &[RingElement]) -> RingElement {
        let r = &self.ring;
        let mut acc = r.zero();
        for i in 0..u.len() {
            for j in i..u.len() {
                let c = &self.coeffs[i][j];
                if r.is_zero(c) {
                    continue;
                }
                let t = if i == j {
                    r.mul(&r.from_int(2), &r.mul(&u[i], &v[i]))
                } else {
                    r.add(&r.mul(&u[i], &v[j]), &r.mul(&u[j], &v[i]))
                };
                acc = r.add(&acc, &r.mul(c, &t));
            }
        }
        acc
    }

    /// `b_0(u, v) = u^T C v`, the non-symmetric companion with `b_0(m, m) = q(m)`.
    pub fn b0_eval(&self, u: &[RingElement], v: &[RingElement]) -> RingElement {
        linalg::dot(&self.ring, u, &linalg::mat_vec(&self.ring, &self.coeffs, v))
    }

    /// Polar form, Gram matrix `C + C^T`.
    pub fn polar(&self) -> BilinearForm {
        let r = &self.ring;
        let n = self.rank();
        let mut b = linalg::zeros(r, n, n);
        for i in 0..n {
            b[i][i] = r.mul(&r.from_int(2), &self.coeffs[i][i]);
            for j in i + 1..n {
                b[i][j] = self.coeffs[i][j].clone();
                b[j][i] = self.coeffs[i][j].clone();
            }
        }
        BilinearForm { ring: r.clone(), matrix: b }
    }

    /// Coefficientwise image along a ring homomorphism.
    pub fn base_change(&self, hom: &RingHom) -> Result<QuadraticForm> {
        let target = hom.target(&self.ring)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|x| hom.apply(&self.ring, x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix>>()?;
        Ok(QuadraticForm { ring: target, coeffs })
    }

    /// Reduction to a residue field.
    pub fn reduce(&self, residue: &Residue) -> QuadraticForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|x| residue.reduce(&self.ring, x)).collect())
            .collect();
        QuadraticForm { ring: residue.field.clone(), coeffs }
    }

    /// Orthogonal sum, block diagonal.
    pub fn direct_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let (n, m) = (self.rank(), other.rank());
        let mut c = linalg::zeros(&self.ring, n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                c[i][j] = self.coeffs[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                c[n + i][n + j] = other.coeffs[i][j].clone();
            }
        }
        Ok(QuadraticForm { ring: self.ring.clone(), coeffs: c })
    }

    pub fn neg(&self) -> QuadraticForm {
        self.scale(&self.ring.from_int(-1))
    }

    pub fn scale(&self, c: &RingElement) -> QuadraticForm {
        let coeffs = self.coeffs.iter().map(|row| row.iter().map(|x| self.ring.mul(c, x)).collect()).collect();
        QuadraticForm { ring: self.ring.clone(), coeffs }
    }

    /// The form `y -> q(T y)`: the restriction of `q` to the span of the
    /// columns of `T` in that basis.
    pub fn transport(&self, t: &Matrix) -> Result<QuadraticForm> {
        if t.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: t.len() });
        }
        let cols = matrix_columns(t);
        let m = cols.len();
        let mut c = linalg::zeros(&self.ring, m, m);
        for i in 0..m {
            c[i][i] = self.eval_unchecked(&cols[i]);
            for j in i + 1..m {
                c[i][j] = self.polar_unchecked(&cols[i], &cols[j]);
            }
        }
        Ok(QuadraticForm { ring: self.ring.clone(), coeffs: c })
    }

    /// Restriction to the span of the given vectors, in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<QuadraticForm> {
        self.transport(&columns_to_matrix(&self.ring, self.rank(), basis))
    }

    /// Basis of `rad(q) = {m : q(m) = 0, b_q(m, -) = 0}` over a field.
    pub fn radical(&self) -> Result<Vec<Vector>> {
        let k = &self.ring;
        if !k.is_field() {
            return Err(Error::NotAField);
        }
        let n = self.rank();
        let ker = linalg::kernel(k, &self.polar().matrix, n);
        if k.characteristic() != 2 || ker.is_empty() {
            return Ok(ker);
        }
        // q is Frobenius-semilinear on ker B: q(sum l_i u_i) = sum l_i^2 q(u_i)
        let vals: Vec<RingElement> = ker.iter().map(|u| self.eval_unchecked(u)).collect();
        let mus = linalg::kernel(k, &vec![vals], ker.len());
        let half = k.size().expect("finite field") / 2;
        Ok(mus
            .iter()
            .map(|mu| {
                let lambda: Vec<RingElement> = mu.iter().map(|m| k.pow(m, half)).collect();
                (0..n)
                    .map(|i| {
                        lambda.iter().zip(&ker).fold(k.zero(), |acc, (l, u)| k.add(&acc, &k.mul(l, &u[i])))
                    })
                    .collect()
            })
            .collect())
    }

    /// Determinant of the polar matrix is a unit.
    pub fn is_regular(&self) -> bool {
        let det = linalg::ring_det(&self.ring, &self.polar().matrix);
        self.ring.is_unit(&det)
    }

    /// The radical vanishes over every residue field.
    pub fn is_nonsingular(&self) -> Result<bool> {
        let data = self.ring.residues()?;
        for r in &data.residues {
            if !self.reduce(r).radical()?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Components over the factors of a product ring.
    pub fn rank_decompose(&self) -> Result<Vec<QuadraticForm>> {
        match self.ring.kind() {
            RingKind::Product(fs) => (0..fs.len()).map(|i| self.base_change(&RingHom::ProjectFactor(i))).collect(),
            _ => Err(Error::Unsupported("rank decomposition needs a product ring".into())),
        }
    }

    /// Reassemble a form over a product ring from its components.
    pub fn from_components(ring: &Ring, parts: &[QuadraticForm]) -> Result<QuadraticForm> {
        let fs = ring.factors().ok_or_else(|| Error::Unsupported("not a product ring".into()))?;
        if fs.len() != parts.len() {
            return Err(Error::CountMismatch { expected: fs.len(), found: parts.len() });
        }
        let n = parts[0].rank();
        if parts.iter().any(|p| p.rank() != n) {
            return Err(Error::RankMismatch("components differ in rank".into()));
        }
        let coeffs = (0..n)
            .map(|i| (0..n).map(|j| RingElement::Tuple(parts.iter().map(|p| p.coeffs[i][j].clone()).collect())).collect())
            .collect();
        QuadraticForm::new(ring, coeffs)
    }
}

impl BilinearForm {
    pub fn new(ring: &Ring, matrix: Matrix) -> Result<BilinearForm> {
        let n = check_square(ring, &matrix)?;
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidElement("matrix is not symmetric".into()));
                }
            }
        }
        Ok(BilinearForm { ring: ring.clone(), matrix })
    }

    pub fn diagonal(ring: &Ring, entries: &[RingElement]) -> BilinearForm {
        let mut m = linalg::zeros(ring, entries.len(), entries.len());
        for (i, u) in entries.iter().enumerate() {
            m[i][i] = u.clone();
        }
        BilinearForm { ring: ring.clone(), matrix: m }
    }

    /// `M(U, b)` with Gram matrix `[[B, I], [I, 0]]`.
    pub fn metabolic(b: &BilinearForm) -> BilinearForm {
        let r = &b.ring;
        let m = b.rank();
        let mut g = linalg::zeros(r, 2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                g[i][j] = b.matrix[i][j].clone();
            }
            g[i][m + i] = r.one();
            g[m + i][i] = r.one();
        }
        BilinearForm { ring: r.clone(), matrix: g }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, u: &[RingElement], v: &[RingElement]) -> Result<RingElement> {
        if u.len() != self.rank() || v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: u.len().max(v.len()) });
        }
        Ok(linalg::dot(&self.ring, u, &linalg::mat_vec(&self.ring, &self.matrix, v)))
    }

    pub fn is_regular(&self) -> bool {
        self.ring.is_unit(&linalg::ring_det(&self.ring, &self.matrix))
    }

    /// The quadratic form `m -> b(m, m)`.
    pub fn to_quadratic(&self) -> QuadraticForm {
        let r = &self.ring;
        let n = self.rank();
        let mut c = linalg::zeros(r, n, n);
        for i in 0..n {
            c[i][i] = self.matrix[i][i].clone();
            for j in i + 1..n {
                c[i][j] = r.mul(&r.from_int(2), &self.matrix[i][j]);
            }
        }
        QuadraticForm { ring: r.clone(), coeffs: c }
    }
}

/// `b ⊗ q`, with `(b ⊗ q)(m ⊗ n) = b(m, m) q(n)`; basis `e_i ⊗ f_j` at
/// index `i * rank(q) + j`.
pub fn tensor_bq(b: &BilinearForm, q: &QuadraticForm) -> Result<QuadraticForm> {
    if b.ring != q.ring {
        return Err(Error::MixedRings);
    }
    let r = &q.ring;
    let (m, n) = (b.rank(), q.rank());
    let bq = q.polar();
    let mut c = linalg::zeros(r, m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            for l in j..n {
                c[i * n + j][i * n + l] = r.mul(&b.matrix[i][i], &q.coeffs[j][l]);
            }
        }
        for k in i + 1..m {
            for j in 0..n {
                for l in 0..n {
                    c[i * n + j][k * n + l] = r.mul(&b.matrix[i][k], &bq.matrix[j][l]);
                }
            }
        }
    }
    Ok(QuadraticForm { ring: r.clone(), coeffs: c })
}

/// Pure tensor `m ⊗ n` as a vector of length `rank(m) * rank(n)`.
pub fn pure_tensor(ring: &Ring, m: &[RingElement], n: &[RingElement]) -> Vector {
    m.iter().flat_map(|x| n.iter().map(move |y| ring.mul(x, y))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{parse_ring, Polynomial};

    fn ints(r: &Ring, v: &[i64]) -> Vector {
        v.iter().map(|&x| r.from_int(x)).collect()
    }

    #[test]
    fn hyperbolic_plane_values() {
        let r = Ring::gf(3).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&r);
        assert!(r.is_zero(&h.evaluate(&ints(&r, &[1, 0])).unwrap()));
        assert_eq!(h.polar().matrix, vec![ints(&r, &[0, 1]), ints(&r, &[1, 0])]);
        assert!(h.is_regular() && h.is_nonsingular().unwrap());
    }

    #[test]
    fn one_dim_polar_and_char_two() {
        let q = Ring::rationals();
        let f = QuadraticForm::one_dim(&q, q.from_int(5));
        assert_eq!(f.evaluate(&ints(&q, &[3])).unwrap(), q.from_int(45));
        assert_eq!(f.polar().matrix, vec![ints(&q, &[10])]);
        let k = Ring::gf(2).unwrap();
        let g = QuadraticForm::one_dim(&k, k.one());
        assert!(g.is_nonsingular().unwrap());
        assert!(!g.is_regular());
    }

    #[test]
    fn char_two_radical() {
        let k = Ring::gf(2).unwrap();
        let q = QuadraticForm::diagonal(&k, &ints(&k, &[1, 1]));
        assert_eq!(q.radical().unwrap(), vec![ints(&k, &[1, 1])]);
        let p = QuadraticForm::new(&k, vec![ints(&k, &[1, 1]), ints(&k, &[0, 0])]).unwrap();
        assert_eq!(p.polar().matrix, vec![ints(&k, &[0, 1]), ints(&k, &[1, 0])]);
        assert!(p.radical().unwrap().is_empty());
        let minus = QuadraticForm::diagonal(&k, &ints(&k, &[1, -1]));
        assert!(!minus.is_nonsingular().unwrap());
    }

    #[test]
    fn reduction_base_change() {
        let r = parse_ring("GF(5)[X]/(X^2+3*X+2)").unwrap();
        let x = r.generator().unwrap();
        let q = QuadraticForm::diagonal(&r, &[x.clone(), r.add(&x, &r.from_int(3))]);
        let data = r.residues().unwrap();
        // residue (X+1): X -> -1
        let idx = data.residues.iter().position(|res| res.label == "(X+1)").unwrap();
        let qk = q.base_change(&RingHom::ToResidue(idx)).unwrap();
        let k = Ring::gf(5).unwrap();
        assert_eq!(qk, QuadraticForm::diagonal(&k, &ints(&k, &[-1, 2])));
    }

    #[test]
    fn inclusion_base_change_and_tower() {
        let k = Ring::gf(5).unwrap();
        let s = Ring::quotient(&k, Polynomial::from_ints(&k, &[1, 1, 0, 1])).unwrap();
        let q = QuadraticForm::diagonal(&k, &ints(&k, &[1, 2, 3]));
        let qs = q.base_change(&RingHom::Include(s.clone())).unwrap();
        let v = ints(&k, &[1, 4, 2]);
        let vs: Vector = v.iter().map(|x| s.embed_base(x)).collect();
        assert_eq!(qs.evaluate(&vs).unwrap(), s.embed_base(&q.evaluate(&v).unwrap()));
        assert!(q.base_change(&RingHom::ProjectFactor(0)).is_err());
    }

    #[test]
    fn lemma_reference_form() {
        let k = Ring::gf(5).unwrap();
        let h = QuadraticForm::hyperbolic_plane(&k);
        let a = QuadraticForm::one_dim(&k, k.from_int(3));
        let s = h.direct_sum(&a).unwrap();
        assert_eq!(s.evaluate(&ints(&k, &[2, 3, 1])).unwrap(), k.from_int(6 + 3));
        assert_eq!(s.direct_sum(&QuadraticForm::zero(&k, 0)).unwrap(), s);
    }

    #[test]
    fn metabolic_is_regular() {
        let k = Ring::gf(3).unwrap();
        let b = BilinearForm::new(&k, vec![ints(&k, &[1, 2]), ints(&k, &[2, 0])]).unwrap();
        let m = BilinearForm::metabolic(&b);
        assert!(m.is_regular());
        let hb = BilinearForm::metabolic(&BilinearForm::diagonal(&k, &ints(&k, &[0])));
        assert_eq!(hb.matrix, vec![ints(&k, &[0, 1]), ints(&k, &[1, 0])]);
    }

    #[test]
    fn tensor_with_unit_forms() {
        let k = Ring::gf(7).unwrap();
        let q = QuadraticForm::new(&k, vec![ints(&k, &[1, 3]), ints(&k, &[0, 5])]).unwrap();
        let one = BilinearForm::diagonal(&k, &[k.one()]);
        assert_eq!(tensor_bq(&one, &q).unwrap(), q);
        let b = BilinearForm::new(&k, vec![ints(&k, &[2, 1]), ints(&k, &[1, 4])]).unwrap();
        let qb = tensor_bq(&b, &QuadraticForm::one_dim(&k, k.one())).unwrap();
        assert_eq!(qb, b.to_quadratic());
        assert_eq!(qb.polar().matrix, vec![ints(&k, &[4, 2]), ints(&k, &[2, 8])]);
    }

    #[test]
    fn product_components() {
        let r = parse_ring("GF(3) x GF(3)").unwrap();
        let e = |a, b| RingElement::Tuple(vec![RingElement::Residue(a), RingElement::Residue(b)]);
        let q = QuadraticForm::diagonal(&r, &[e(1, 2), e(1, 0)]);
        let parts = q.rank_decompose().unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_nonsingular().unwrap());
        assert!(!parts[1].is_nonsingular().unwrap());
        assert!(!q.is_nonsingular().unwrap());
        assert_eq!(QuadraticForm::from_components(&r, &parts).unwrap(), q);
    }
}
