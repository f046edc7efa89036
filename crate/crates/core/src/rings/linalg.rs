//! Dense matrices over the ring tower. Elimination routines require a field;
//! the `ring_*` variants work over any supported ring by flattening to the
//! prime subfield (products are handled componentwise).

use super::ring::{Ring, RingElement};

pub type Matrix = Vec<Vec<RingElement>>;

pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
    vec![vec![ring.zero(); cols]; rows]
}

pub fn identity(ring: &Ring, n: usize) -> Matrix {
    let mut m = zeros(ring, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ring.one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(ring: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(ring: &Ring, a: &Matrix, v: &[RingElement]) -> Vec<RingElement> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y))))
        .collect()
}

pub fn dot(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> RingElement {
    a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

/// Reduced row echelon form over a field and the pivot columns.
pub fn rref(k: &Ring, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = k.inverse(&a[r][c]).expect("field pivot");
        for x in a[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&a[i][c]) {
                let f = a[i][c].clone();
                for j in c..cols {
                    let s = k.mul(&f, &a[r][j]);
                    a[i][j] = k.sub(&a[i][j], &s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(k: &Ring, m: &Matrix) -> usize {
    rref(k, m).1.len()
}

/// Some solution of `m x = b` over a field.
pub fn solve(k: &Ring, m: &Matrix, b: &[RingElement]) -> Option<Vec<RingElement>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (red, piv) = rref(k, &aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = red[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : m x = 0}` over a field.
pub fn kernel(k: &Ring, m: &Matrix, cols: usize) -> Vec<Vec<RingElement>> {
    let (red, piv) = rref(k, m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (i, &c) in piv.iter().enumerate() {
                v[c] = k.neg(&red[i][f]);
            }
            v
        })
        .collect()
}

/// Determinant over a field by elimination.
pub fn det_field(k: &Ring, m: &Matrix) -> RingElement {
    let n = m.len();
    let mut a = m.clone();
    let mut det = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else {
            return k.zero();
        };
        if p != c {
            a.swap(p, c);
            det = k.neg(&det);
        }
        det = k.mul(&det, &a[c][c]);
        let inv = k.inverse(&a[c][c]).expect("field pivot");
        for i in c + 1..n {
            if k.is_zero(&a[i][c]) {
                continue;
            }
            let f = k.mul(&a[i][c], &inv);
            for j in c..n {
                let s = k.mul(&f, &a[c][j]);
                a[i][j] = k.sub(&a[i][j], &s);
            }
        }
    }
    det
}

/// Division-free determinant (Berkowitz) over any commutative ring.
pub fn berkowitz_det(ring: &Ring, m: &Matrix) -> RingElement {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    // characteristic polynomial coefficients, built leading principal minor by minor
    let mut c: Vec<RingElement> = vec![ring.one(), ring.neg(&m[0][0])];
    for r in 1..n {
        // partition of the (r+1)x(r+1) leading submatrix
        let a_rr = &m[r][r];
        let row: Vec<RingElement> = (0..r).map(|j| m[r][j].clone()).collect();
        let col: Vec<RingElement> = (0..r).map(|i| m[i][r].clone()).collect();
        let sub: Matrix = (0..r).map(|i| m[i][..r].to_vec()).collect();
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
        let mut t = vec![ring.one(), ring.neg(a_rr)];
        let mut v = col;
        for _ in 0..r {
            t.push(ring.neg(&dot(ring, &row, &v)));
            v = mat_vec(ring, &sub, &v);
        }
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = ring.zero();
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], cj));
                }
            }
            *slot = acc;
        }
        c = next;
    }
    // c is the characteristic polynomial det(xI - M) from the top; det(M) = (-1)^n c_n
    let last = c[n].clone();
    if n % 2 == 0 {
        last
    } else {
        ring.neg(&last)
    }
}

/// Prime-subfield matrix of `x -> a x` for `a` an m x n matrix over a
/// non-product ring.
fn flatten(ring: &Ring, a: &Matrix, cols: usize) -> Matrix {
    let k = ring.prime_subfield().expect("non-product ring");
    let d = ring.dim();
    let rows = a.len();
    let mut out = zeros(&k, rows * d, cols * d);
    for j in 0..cols {
        for t in 0..d {
            let bt = ring.basis_element(t);
            for i in 0..rows {
                let coords = ring.to_coords(&ring.mul(&a[i][j], &bt));
                for (s, c) in coords.into_iter().enumerate() {
                    out[i * d + s][j * d + t] = c;
                }
            }
        }
    }
    out
}

fn split_matrix(ring: &Ring, a: &Matrix, i: usize) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| ring.project(x, i)).collect()).collect()
}

/// Some solution of `a x = b` over any supported ring.
pub fn ring_solve(ring: &Ring, a: &Matrix, b: &[RingElement], cols: usize) -> Option<Vec<RingElement>> {
    if let Some(fs) = ring.factors() {
        let parts = fs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let bi: Vec<_> = b.iter().map(|x| ring.project(x, i)).collect();
                ring_solve(f, &split_matrix(ring, a, i), &bi, cols)
            })
            .collect::<Option<Vec<_>>>()?;
        return Some((0..cols).map(|j| RingElement::Tuple(parts.iter().map(|p| p[j].clone()).collect())).collect());
    }
    if ring.is_field() {
        return solve(ring, a, b);
    }
    let k = ring.prime_subfield().unwrap();
    let d = ring.dim();
    let flat = flatten(ring, a, cols);
    let rhs: Vec<_> = b.iter().flat_map(|x| ring.to_coords(x)).collect();
    let x = solve(&k, &flat, &rhs)?;
    Some(x.chunks(d).map(|c| ring.from_coords(c)).collect())
}

/// Inverse of a square matrix over any supported ring.
pub fn ring_inverse(ring: &Ring, a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let id = identity(ring, n);
    let cols = (0..n)
        .map(|j| {
            let e: Vec<_> = id.iter().map(|row| row[j].clone()).collect();
            ring_solve(ring, a, &e, n)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(transpose(&cols))
}

/// Determinant over any supported ring.
pub fn ring_det(ring: &Ring, a: &Matrix) -> RingElement {
    if ring.is_field() {
        det_field(ring, a)
    } else {
        berkowitz_det(ring, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Polynomial;

    fn m(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect()
    }

    #[test]
    fn kernel_and_solve_over_gf7() {
        let k = Ring::gf(7).unwrap();
        let a = m(&k, &[&[1, 2, 3], &[2, 4, 6]]);
        let ker = kernel(&k, &a, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mat_vec(&k, &a, v).iter().all(|x| k.is_zero(x)));
        }
        let b = vec![k.from_int(1), k.from_int(2)];
        let x = solve(&k, &a, &b).unwrap();
        assert_eq!(mat_vec(&k, &a, &x), b);
        assert!(solve(&k, &a, &[k.from_int(1), k.from_int(1)]).is_none());
    }

    #[test]
    fn berkowitz_agrees_with_elimination() {
        let k = Ring::gf(11).unwrap();
        let a = m(&k, &[&[2, 3, 5, 7], &[1, 0, 4, 9], &[6, 6, 1, 2], &[3, 8, 10, 0]]);
        assert_eq!(berkowitz_det(&k, &a), det_field(&k, &a));
        let q = Ring::rationals();
        let b = m(&q, &[&[1, 2], &[3, 4]]);
        assert_eq!(berkowitz_det(&q, &b), q.from_int(-2));
        assert_eq!(berkowitz_det(&q, &m(&q, &[&[5]])), q.from_int(5));
    }

    #[test]
    fn inverse_over_split_quotient() {
        let k = Ring::gf(5).unwrap();
        let r = Ring::quotient(&k, Polynomial::from_ints(&k, &[2, 3, 1])).unwrap();
        let x = r.generator().unwrap();
        // idempotent-like entries: no unit in the first column is needed
        let a = vec![vec![r.add(&x, &r.one()), r.from_int(1)], vec![r.from_int(0), r.add(&x, &r.from_int(3))]];
        let det = ring_det(&r, &a);
        let inv = ring_inverse(&r, &a);
        assert_eq!(inv.is_some(), r.is_unit(&det));
        let b = vec![vec![r.from_int(2), x.clone()], vec![r.mul(&x, &x), r.add(&x, &r.one())]];
        let bi = ring_inverse(&r, &b).unwrap();
        assert_eq!(mat_mul(&r, &b, &bi), identity(&r, 2));
    }
}
