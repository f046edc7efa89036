#![allow(dead_code)]

use formwitt::forms::{QuadraticForm, Vector};
use formwitt::rings::{linalg, Matrix, Polynomial, Ring, RingElement};

pub fn ints(r: &Ring, v: &[i64]) -> Vector {
    v.iter().map(|&x| r.from_int(x)).collect()
}

/// Element of a finite ring picked by an arbitrary index.
pub fn pick(r: &Ring, idx: u64) -> RingElement {
    r.element_at(idx as u128 % r.size().expect("finite ring"))
}

pub fn pick_vec(r: &Ring, idx: &[u64]) -> Vector {
    idx.iter().map(|&i| pick(r, i)).collect()
}

pub fn pick_poly(r: &Ring, idx: &[u64]) -> Polynomial {
    Polynomial::new(r, pick_vec(r, idx))
}

pub fn pick_monic(r: &Ring, idx: &[u64]) -> Polynomial {
    let mut c = pick_vec(r, idx);
    c.push(r.one());
    Polynomial::new(r, c)
}

/// Upper-triangular form from `n(n+1)/2` indices.
pub fn pick_form(r: &Ring, n: usize, idx: &[u64]) -> QuadraticForm {
    let mut m = linalg::zeros(r, n, n);
    let mut it = idx.iter().cycle();
    for i in 0..n {
        for j in i..n {
            m[i][j] = pick(r, *it.next().unwrap());
        }
    }
    QuadraticForm::new(r, m).unwrap()
}

/// Every vector of `r^n` in index order.
pub fn all_vectors(r: &Ring, n: usize) -> Vec<Vector> {
    let elems: Vec<RingElement> = r.elements().collect();
    let total = elems.len().pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = elems[idx % elems.len()].clone();
                    idx /= elems.len();
                    e
                })
                .collect()
        })
        .collect()
}

/// Every `n x n` matrix over a finite field with nonzero determinant.
pub fn all_invertible(k: &Ring, n: usize) -> Vec<Matrix> {
    all_vectors(k, n * n)
        .into_iter()
        .map(|v| v.chunks(n).map(<[RingElement]>::to_vec).collect::<Matrix>())
        .filter(|m| !k.is_zero(&linalg::det_field(k, m)))
        .collect()
}

pub fn finite_rings() -> Vec<Ring> {
    use formwitt::rings::parse_ring;
    ["GF(2)", "GF(5)", "GF(2^2)", "GF(5)[X]/(X^2+3*X+2)", "GF(3)[X]/(X^3)", "GF(2)[X]/(X^2+X)", "GF(3) x GF(5)"]
        .iter()
        .map(|s| parse_ring(s).unwrap())
        .collect()
}
