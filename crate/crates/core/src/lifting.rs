//! Lifting isotropic vectors and submodule complements from residue fields
//! to finite semilocal rings: CRT on the reductions, then Newton steps on the
//! quadric through the powers of the Jacobson radical.

use crate::error::{Error, Result};
use crate::forms::{unit_vector, vec_add, vec_scale, QuadraticForm, Vector};
use crate::rings::{crt_combine, linalg, Ring};

/// Residue-field isotropic vectors (one per maximal ideal, in the order of
/// [`Ring::residues`]) to be lifted to an isotropic vector of `form`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub form: QuadraticForm,
    pub witnesses: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub vector: Vector,
    /// Newton iterations performed.
    pub iterations: usize,
    /// Nilpotency exponent of the radical of the base ring.
    pub nilpotency: usize,
}

/// Coordinatewise CRT of one vector per residue field.
pub fn crt_vector(ring: &Ring, per_residue: &[Vector]) -> Result<Vector> {
    let n = per_residue.first().map_or(0, Vec::len);
    if per_residue.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: per_residue.iter().map(Vec::len).max().unwrap_or(0) });
    }
    (0..n)
        .map(|i| {
            let vals: Vec<_> = per_residue.iter().map(|v| v[i].clone()).collect();
            crt_combine(ring, &vals)
        })
        .collect()
}

/// `ceil(log2(e))`
pub fn newton_bound(e: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < e {
        k += 1;
    }
    k
}

/// Newton iteration `v <- v - q(v) c` with `b_q(v, c) = 1`, starting from a
/// vector isotropic modulo the radical.
pub fn newton_lift(q: &QuadraticForm, v0: &[crate::rings::RingElement]) -> Result<Lifted> {
    let ring = q.ring();
    let n = q.rank();
    let data = ring.residues()?;
    let first = q.evaluate(v0)?;
    if data.residues.iter().any(|r| !r.field.is_zero(&r.reduce(ring, &first))) {
        return Err(Error::NotIsotropicInput);
    }
    let bound = newton_bound(data.nilpotency);
    let mut v: Vector = v0.to_vec();
    let mut iterations = 0;
    loop {
        let val = q.evaluate(&v)?;
        if ring.is_zero(&val) {
            return Ok(Lifted { vector: v, iterations, nilpotency: data.nilpotency });
        }
        if iterations >= bound {
            return Err(Error::Inconsistent(format!("Newton iteration did not converge in {bound} steps")));
        }
        let row: Vec<_> = (0..n).map(|j| q.polar_unchecked(&v, &unit_vector(ring, n, j))).collect();
        let c = linalg::ring_solve(ring, &vec![row], &[ring.one()], n).ok_or(Error::SingularPoint)?;
        let delta = vec_scale(ring, &ring.neg(&val), &c);
        v = vec_add(ring, &v, &delta);
        iterations += 1;
    }
}

/// An isotropic vector over the ring reducing exactly to each residue witness.
pub fn lift_isotropic(problem: &LiftProblem) -> Result<Lifted> {
    let q = &problem.form;
    let ring = q.ring();
    let data = ring.residues()?;
    if problem.witnesses.len() != data.len() {
        return Err(Error::CountMismatch { expected: data.len(), found: problem.witnesses.len() });
    }
    for (r, w) in data.residues.iter().zip(&problem.witnesses) {
        let qk = q.reduce(r);
        if !r.field.is_zero(&qk.evaluate(w)?) || w.iter().all(|x| r.field.is_zero(x)) {
            return Err(Error::NotIsotropicInput);
        }
        let n = w.len();
        if (0..n).all(|j| r.field.is_zero(&qk.polar_unchecked(w, &unit_vector(&r.field, n, j)))) {
            return Err(Error::SingularPoint);
        }
    }
    let v0 = crt_vector(ring, &problem.witnesses)?;
    newton_lift(q, &v0)
}

/// A free submodule `W` of rank `r` with prescribed reductions `W[m]`,
/// transversal to `U` with `U + W` a direct summand of `R^n`.
pub fn complement_lift(ring: &Ring, n: usize, u: &[Vector], targets: &[Vec<Vector>]) -> Result<Vec<Vector>> {
    let data = ring.residues()?;
    if targets.len() != data.len() {
        return Err(Error::CountMismatch { expected: data.len(), found: targets.len() });
    }
    let r = targets.first().map_or(0, Vec::len);
    if targets.iter().any(|t| t.len() != r) {
        return Err(Error::RankMismatch("residue complements differ in rank".into()));
    }
    if r + u.len() > n {
        return Err(Error::RankMismatch(format!("{} + {} exceeds {}", u.len(), r, n)));
    }
    for (res, w) in data.residues.iter().zip(targets) {
        let k = &res.field;
        if w.iter().any(|x| x.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: w.iter().map(Vec::len).max().unwrap_or(0) });
        }
        if linalg::rank(k, w) != r {
            return Err(Error::RankMismatch("residue complement is not of full rank".into()));
        }
        let mut rows: Vec<Vector> = u.iter().map(|x| res.reduce_vec(ring, x)).collect();
        rows.extend(w.iter().cloned());
        if linalg::rank(k, &rows) != u.len() + r {
            return Err(Error::NotTransverse);
        }
    }
    (0..r)
        .map(|j| {
            let per: Vec<Vector> = targets.iter().map(|t| t[j].clone()).collect();
            crt_vector(ring, &per)
        })
        .collect()
}

/// Whether the given vectors span a direct summand of rank equal to their
/// number (independent modulo every maximal ideal).
pub fn is_complemented(ring: &Ring, vectors: &[Vector]) -> Result<bool> {
    let data = ring.residues()?;
    Ok(data.residues.iter().all(|res| {
        let rows: Vec<Vector> = vectors.iter().map(|x| res.reduce_vec(ring, x)).collect();
        rows.is_empty() || linalg::rank(&res.field, &rows) == vectors.len()
    }))
}

/// Standard basis vectors completing the reductions of `span` to a basis of
/// `κ^n`, chosen greedily in index order, for every residue field.
pub fn residue_standard_complements(ring: &Ring, n: usize, span: &[Vector]) -> Result<Vec<Vec<Vector>>> {
    let data = ring.residues()?;
    Ok(data
        .residues
        .iter()
        .map(|res| {
            let k = &res.field;
            let mut rows: Vec<Vector> = span.iter().map(|x| res.reduce_vec(ring, x)).collect();
            let mut rank = linalg::rank(k, &rows);
            let mut out = Vec::new();
            for j in 0..n {
                let e = unit_vector(k, n, j);
                rows.push(e.clone());
                let nr = linalg::rank(k, &rows);
                if nr > rank {
                    rank = nr;
                    out.push(e);
                } else {
                    rows.pop();
                }
            }
            out
        })
        .collect())
}
