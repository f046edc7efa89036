//! Odd-degree descent: isotropic vectors and represented values over
//! `S = R[X]/(P)` with `deg P` odd are brought down to `R`.
//!
//! Over a field the descent is either a direct search or the classical
//! factor-and-shrink recursion. Over a semilocal ring each step builds an
//! explicit `v(X)` with `q(v(X)) = u P Q` in every residue field, lifts it to
//! `R[X]/(P)` and continues with the monic cofactor `Q` of degree `d - 2`.

use crate::clifford;
use crate::error::{Error, Result};
use crate::forms::{include, vec_scale, QuadraticForm, RingHom, Vector};
use crate::lifting::{crt_vector, lift_isotropic, newton_lift, LiftProblem};
use crate::rings::{factor, FactorConfig, Polynomial, Residue, Ring, RingElement, RingKind};
use crate::witt::{self, IsotropyResult, Representation};

/// `v(X) = m_0 + m_1 X + ... + m_e X^e`, stored as coordinate polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVector {
    ring: Ring,
    coords: Vec<Polynomial>,
}

impl PolyVector {
    pub fn from_coordinates(ring: &Ring, coords: Vec<Polynomial>) -> Result<PolyVector> {
        if coords.iter().any(|c| c.ring() != ring) {
            return Err(Error::MixedRings);
        }
        Ok(PolyVector { ring: ring.clone(), coords })
    }

    /// From the coefficient vectors `m_0, ..., m_e`.
    pub fn from_coefficients(ring: &Ring, n: usize, m: &[Vector]) -> Result<PolyVector> {
        if let Some(bad) = m.iter().find(|x| x.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let coords = (0..n).map(|i| Polynomial::new(ring, m.iter().map(|x| x[i].clone()).collect())).collect();
        Ok(PolyVector { ring: ring.clone(), coords })
    }

    /// Coordinates of `v(θ)` expanded in `1, θ, ..., θ^(d-1)`.
    pub fn from_algebra(s: &Ring, v: &[RingElement]) -> PolyVector {
        let base = s.base().expect("presented ring");
        PolyVector { ring: base, coords: v.iter().map(|x| s.to_base_poly(x)).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coords
    }

    /// `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(Polynomial::degree).max()
    }

    pub fn coefficient(&self, j: usize) -> Vector {
        self.coords.iter().map(|c| c.coeff(j)).collect()
    }

    /// `m_0, ..., m_e`; empty for the zero vector.
    pub fn coefficients(&self) -> Vec<Vector> {
        self.degree().map_or_else(Vec::new, |e| (0..=e).map(|j| self.coefficient(j)).collect())
    }

    pub fn eval(&self, x: &RingElement) -> Vector {
        self.coords.iter().map(|c| c.eval(x)).collect()
    }

    pub fn reduce_mod(&self, m: &Polynomial) -> Result<PolyVector> {
        let coords = self.coords.iter().map(|c| Ok(c.euclidean_divide(m)?.1)).collect::<Result<_>>()?;
        Ok(PolyVector { ring: self.ring.clone(), coords })
    }

    /// `v(θ)` in `S^n` for `S` presented over the coefficient ring.
    pub fn to_algebra(&self, s: &Ring) -> Result<Vector> {
        self.coords.iter().map(|c| s.from_base_poly(c)).collect()
    }

    /// `q(v(X))` in `R[X]`.
    pub fn quadratic_value(&self, q: &QuadraticForm) -> Result<Polynomial> {
        if q.ring() != &self.ring {
            return Err(Error::MixedRings);
        }
        if q.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: q.rank(), found: self.rank() });
        }
        let mut acc = Polynomial::zero(&self.ring);
        for i in 0..self.rank() {
            for j in i..self.rank() {
                let c = q.coeff(i, j);
                if !self.ring.is_zero(c) {
                    acc = acc.add(&self.coords[i].mul(&self.coords[j]).scale(c));
                }
            }
        }
        Ok(acc)
    }

    /// Monic gcd of the coordinates (over a field).
    pub fn content(&self) -> Result<Polynomial> {
        let mut g = Polynomial::zero(&self.ring);
        for c in &self.coords {
            g = g.gcd(c)?;
        }
        Ok(g)
    }

    /// Points of a finite coefficient ring where `v` vanishes.
    pub fn zeros(&self) -> Vec<RingElement> {
        self.ring.elements().filter(|x| self.eval(x).iter().all(|c| self.ring.is_zero(c))).collect()
    }

    fn divide_exact(&self, g: &Polynomial) -> Result<PolyVector> {
        let mut coords = Vec::with_capacity(self.rank());
        for c in &self.coords {
            let (quot, rem) = c.euclidean_divide(g)?;
            if !rem.is_zero() {
                return Err(Error::Inconsistent("content does not divide a coordinate".into()));
            }
            coords.push(quot);
        }
        Ok(PolyVector { ring: self.ring.clone(), coords })
    }
}

/// One step of the semilocal recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub degree: usize,
    pub modulus: Polynomial,
    /// Isotropic unimodular vector over `R[X]/(modulus)`.
    pub witness: Vector,
    /// Monic `Q` of degree `degree - 2`; `None` at degree 1.
    pub cofactor: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace {
    pub steps: Vec<DescentStep>,
    pub witness: Vector,
}

impl DescentTrace {
    pub fn degrees(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.degree).collect()
    }
}

/// Result of [`springer`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub witness: Vector,
    /// Present when the semilocal recursion ran.
    pub trace: Option<DescentTrace>,
}

/// Output of [`construct_lemma_pr`]: `q(v(X)) = unit * P * cofactor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaVector {
    pub vector: PolyVector,
    pub unit: RingElement,
    pub cofactor: Polynomial,
}

/// Coordinates `(-a, R, X^(d-1))` for `xy + a z^2`, where
/// `X^(2d-2) = P Q + R`, together with `Q`.
pub fn reference_coordinates(a: &RingElement, p: &Polynomial) -> Result<(Vec<Polynomial>, Polynomial)> {
    let k = p.ring();
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::DegreeOne);
    }
    let (quot, rem) = Polynomial::monomial(k, k.one(), 2 * d - 2).euclidean_divide(p)?;
    let coords = vec![Polynomial::constant(k, k.neg(a)), rem, Polynomial::monomial(k, k.one(), d - 1)];
    Ok((coords, quot))
}

/// A vector `v(X)` of degree `d - 1` over a field with `P | q(v(X))`,
/// `deg q(v(X)) = 2d - 2` and no zeros in `k`.
pub fn construct_lemma_pr(q: &QuadraticForm, witness: Option<&[RingElement]>, p: &Polynomial) -> Result<LemmaVector> {
    let k = q.ring();
    let n = q.rank();
    if !k.is_field() {
        return Err(Error::NotAField);
    }
    if p.ring() != k {
        return Err(Error::MixedRings);
    }
    if n < 3 {
        return Err(Error::RankTooSmall { rank: n, needed: 3 });
    }
    if !p.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    match p.degree() {
        Some(0) | None => return Err(Error::DegreeMismatch("modulus must have positive degree".into())),
        Some(1) => return Err(Error::DegreeOne),
        _ => {}
    }
    let d = p.degree().unwrap();
    let u = match witness {
        Some(w) => {
            if w.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: w.len() });
            }
            if !k.is_zero(&q.evaluate(w)?) || w.iter().all(|x| k.is_zero(x)) {
                return Err(Error::NotIsotropic);
            }
            w.to_vec()
        }
        None => witt::find_isotropic(q)?.witness().cloned().ok_or(Error::NotIsotropic)?,
    };
    let hc = witt::hyperbolic_complete(q, std::slice::from_ref(&u))?;
    let v = &hc.v[0];
    let w = anisotropic_vector(q, &hc.complement)?;
    let a = q.eval_unchecked(&w);
    let (coords, cofactor) = reference_coordinates(&a, p)?;
    let basis = [&u, v, &w];
    let vector = PolyVector {
        ring: k.clone(),
        coords: (0..n)
            .map(|i| {
                basis
                    .iter()
                    .zip(&coords)
                    .fold(Polynomial::zero(k), |acc, (b, c)| acc.add(&c.scale(&b[i])))
            })
            .collect(),
    };
    let value = vector.quadratic_value(q)?;
    if value != p.mul(&cofactor).scale(&a) || value.degree() != Some(2 * d - 2) {
        return Err(Error::Inconsistent("q(v(X)) differs from a P Q".into()));
    }
    Ok(LemmaVector { vector, unit: a, cofactor })
}

fn anisotropic_vector(q: &QuadraticForm, basis: &[Vector]) -> Result<Vector> {
    let k = q.ring();
    if let Some(c) = basis.iter().find(|c| !k.is_zero(&q.eval_unchecked(c))) {
        return Ok(c.clone());
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = crate::forms::vec_add(k, &basis[i], &basis[j]);
            if !k.is_zero(&q.eval_unchecked(&s)) {
                return Ok(s);
            }
        }
    }
    Err(Error::Singular("complement of the hyperbolic plane represents no unit".into()))
}

/// Degree of an admissible modulus over `r`.
fn modulus_degree(r: &Ring, p: &Polynomial) -> Result<usize> {
    if p.ring() != r {
        return Err(Error::MixedRings);
    }
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    if !r.is_unit(lead) {
        return Err(Error::NonConstantDegree);
    }
    if !p.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    match p.degree().unwrap() {
        0 => Err(Error::DegreeMismatch("modulus must have positive degree".into())),
        d => Ok(d),
    }
}

fn odd_degree(r: &Ring, p: &Polynomial) -> Result<usize> {
    let d = modulus_degree(r, p)?;
    if d % 2 == 0 {
        return Err(Error::EvenDegree(d));
    }
    Ok(d)
}

/// `R[X]/(X - c) -> R`.
fn collapse(s: &Ring, r: &Ring, x: &RingElement) -> RingElement {
    if s == r {
        return x.clone();
    }
    match (s.factors(), r.factors()) {
        (Some(sf), Some(rf)) => {
            RingElement::Tuple(sf.iter().zip(rf).enumerate().map(|(i, (a, b))| collapse(a, b, &s.project(x, i))).collect())
        }
        _ => s.to_base_poly(x).coeff(0),
    }
}

fn check_witness(q: &QuadraticForm, s: &Ring, z: &[RingElement]) -> Result<QuadraticForm> {
    if z.len() != q.rank() {
        return Err(Error::DimensionMismatch { expected: q.rank(), found: z.len() });
    }
    if z.iter().any(|x| !s.contains(x)) {
        return Err(Error::MixedRings);
    }
    let qs = q.base_change(&RingHom::Include(s.clone()))?;
    if !s.is_zero(&qs.evaluate(z)?) || !witt::is_unimodular(s, z) {
        return Err(Error::Inconsistent("extension witness is not isotropic and unimodular".into()));
    }
    Ok(qs)
}

fn verify(q: &QuadraticForm, w: &[RingElement]) -> Result<()> {
    let r = q.ring();
    if !r.is_zero(&q.evaluate(w)?) || !witt::is_unimodular(r, w) {
        return Err(Error::Inconsistent("descended vector is not isotropic and unimodular".into()));
    }
    Ok(())
}

fn irreducible_factors(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let fac = factor(f, &FactorConfig::default()).map_err(|e| match e {
        Error::DegreeBoundExceeded { .. } if matches!(f.ring().kind(), RingKind::Rational) => Error::FactorizationBound,
        e => e,
    })?;
    let mut out: Vec<Polynomial> = fac.factors.into_iter().map(|(g, _)| g).collect();
    out.sort_by(Polynomial::cmp_canonical);
    Ok(out)
}

/// Factors are in canonical order, so the first match is the lowest degree,
/// then lexicographically least.
fn first_odd(fs: &[Polynomial], ok: impl Fn(&Polynomial) -> bool) -> Option<&Polynomial> {
    fs.iter().find(|g| g.degree().is_some_and(|e| e % 2 == 1) && ok(g))
}

/// Isotropic vector of `q` over a field `k` from one over `k[X]/(P)`.
pub fn descend_field(q: &QuadraticForm, p: &Polynomial, z: &[RingElement]) -> Result<Vector> {
    let k = q.ring();
    if !k.is_field() {
        return Err(Error::NotAField);
    }
    let d = odd_degree(k, p)?;
    let s = Ring::quotient(k, p.clone())?;
    check_witness(q, &s, z)?;
    let w = if d == 1 {
        z.iter().map(|x| collapse(&s, k, x)).collect()
    } else {
        match q.rank() {
            0 => return Err(Error::Inconsistent("rank 0 form has no unimodular vectors".into())),
            1 => vec![k.one()],
            2 => clifford::rank2_springer(q, &s, Some(z))?
                .witness()
                .cloned()
                .ok_or_else(|| Error::Inconsistent("binary form did not split".into()))?,
            _ => match witt::find_isotropic(q)? {
                IsotropyResult::Isotropic { witness, .. } => witness,
                IsotropyResult::Anisotropic(c) => {
                    return Err(Error::Inconsistent(format!("form is anisotropic over the base ({c:?})")))
                }
                IsotropyResult::Unknown { .. } => descend_field_constructive(q, p, z)?,
            },
        }
    };
    verify(q, &w)?;
    Ok(w)
}

/// The factor-and-shrink recursion, without the direct search shortcut.
pub fn descend_field_constructive(q: &QuadraticForm, p: &Polynomial, z: &[RingElement]) -> Result<Vector> {
    let k = q.ring();
    if !k.is_field() {
        return Err(Error::NotAField);
    }
    odd_degree(k, p)?;
    let s = Ring::quotient(k, p.clone())?;
    check_witness(q, &s, z)?;
    let start = PolyVector::from_algebra(&s, z);
    let factors = irreducible_factors(p)?;
    let mut g = first_odd(&factors, |g| start.reduce_mod(g).is_ok_and(|v| v.degree().is_some()))
        .cloned()
        .ok_or_else(|| Error::Inconsistent("witness vanishes modulo every odd-degree factor".into()))?;
    let mut v = start.reduce_mod(&g)?;
    loop {
        if g.degree() == Some(1) {
            let w = v.eval(&k.neg(&g.coeff(0)));
            verify(q, &w)?;
            return Ok(w);
        }
        v = v.divide_exact(&v.content()?)?;
        let e = v.degree().expect("nonzero");
        let top = v.coefficient(e);
        if k.is_zero(&q.eval_unchecked(&top)) {
            verify(q, &top)?;
            return Ok(top);
        }
        let (h, rem) = v.quadratic_value(q)?.euclidean_divide(&g)?;
        if !rem.is_zero() {
            return Err(Error::Inconsistent("modulus does not divide q(v(X))".into()));
        }
        let hf = irreducible_factors(&h)?;
        g = first_odd(&hf, |_| true)
            .cloned()
            .ok_or_else(|| Error::Inconsistent("cofactor has no odd-degree factor".into()))?;
        v = v.reduce_mod(&g)?;
    }
}

fn reduce_to_residue(res: &Residue, t: &Ring, tk: &Ring, x: &RingElement) -> Result<RingElement> {
    tk.from_base_poly(&res.reduce_poly(&t.to_base_poly(x)))
}

/// The `d -> d - 2` recursion over a semilocal ring.
pub fn descend_semilocal(q: &QuadraticForm, p: &Polynomial, z: &[RingElement]) -> Result<DescentTrace> {
    let r = q.ring();
    if q.rank() < 3 {
        return Err(Error::RankTooSmall { rank: q.rank(), needed: 3 });
    }
    odd_degree(r, p)?;
    let s = Ring::quotient(r, p.clone())?;
    check_witness(q, &s, z)?;
    if let Some(fs) = r.factors() {
        let parts = q.rank_decompose()?;
        let traces = fs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let pi = p.map_coeffs(f, |c| r.project(c, i));
                let zi: Vector = z.iter().map(|x| s.project(x, i)).collect();
                descend_semilocal(&parts[i], &pi, &zi)
            })
            .collect::<Result<Vec<_>>>()?;
        return combine_traces(r, &traces);
    }
    let mut steps = Vec::new();
    let mut p = p.clone();
    let mut z = z.to_vec();
    loop {
        let d = p.degree().unwrap();
        let t = Ring::quotient(r, p.clone())?;
        if d == 1 {
            let w: Vector = z.iter().map(|x| collapse(&t, r, x)).collect();
            verify(q, &w)?;
            steps.push(DescentStep { degree: 1, modulus: p, witness: z, cofactor: None });
            return Ok(DescentTrace { steps, witness: w });
        }
        let data = r.residues()?;
        let mut per = Vec::with_capacity(data.len());
        for res in &data.residues {
            let pk = res.reduce_poly(&p);
            let tk = Ring::quotient(&res.field, pk.clone())?;
            let zk = z.iter().map(|x| reduce_to_residue(res, &t, &tk, x)).collect::<Result<Vector>>()?;
            let qk = q.reduce(res);
            let wk = descend_field(&qk, &pk, &zk)?;
            let lemma = construct_lemma_pr(&qk, Some(&wk), &pk)?;
            per.push((0..d).map(|j| lemma.vector.coefficient(j)).collect::<Vec<_>>());
        }
        let coeffs = (0..d)
            .map(|j| crt_vector(r, &per.iter().map(|c| c[j].clone()).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let v0 = PolyVector::from_coefficients(r, q.rank(), &coeffs)?.to_algebra(&t)?;
        let qt = q.base_change(&RingHom::Include(t.clone()))?;
        let lifted = newton_lift(&qt, &v0)?;
        let v = PolyVector::from_algebra(&t, &lifted.vector);
        let (quot, rem) = v.quadratic_value(q)?.euclidean_divide(&p)?;
        if !rem.is_zero() {
            return Err(Error::Inconsistent("modulus does not divide q(v(X))".into()));
        }
        let lead = quot.leading().cloned().unwrap_or_else(|| r.zero());
        if quot.degree() != Some(d - 2) || !r.is_unit(&lead) {
            return Err(Error::LeadingCoeffNotUnit(format!(
                "q(v(X)) / P = {} at degree {d}",
                r.format_poly(&quot, "X")
            )));
        }
        let cofactor = quot.scale(&r.inverse(&lead).unwrap());
        let next = Ring::quotient(r, cofactor.clone())?;
        let nz = v.reduce_mod(&cofactor)?.to_algebra(&next)?;
        check_witness(q, &next, &nz)?;
        steps.push(DescentStep { degree: d, modulus: p, witness: z, cofactor: Some(cofactor.clone()) });
        p = cofactor;
        z = nz;
    }
}

fn tuple_poly(r: &Ring, parts: &[Polynomial]) -> Polynomial {
    let len = parts.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    Polynomial::new(r, (0..len).map(|j| RingElement::Tuple(parts.iter().map(|p| p.coeff(j)).collect())).collect())
}

fn tuple_vector(parts: &[&Vector]) -> Vector {
    let n = parts.first().map_or(0, |v| v.len());
    (0..n).map(|i| RingElement::Tuple(parts.iter().map(|v| v[i].clone()).collect())).collect()
}

fn combine_traces(r: &Ring, traces: &[DescentTrace]) -> Result<DescentTrace> {
    let degrees = traces[0].degrees();
    if traces.iter().any(|t| t.degrees() != degrees) {
        return Err(Error::Inconsistent("component traces differ in length".into()));
    }
    let steps = (0..degrees.len())
        .map(|j| {
            let st: Vec<&DescentStep> = traces.iter().map(|t| &t.steps[j]).collect();
            let moduli: Vec<Polynomial> = st.iter().map(|s| s.modulus.clone()).collect();
            let cofactor = st
                .iter()
                .map(|s| s.cofactor.clone())
                .collect::<Option<Vec<_>>>()
                .map(|c| tuple_poly(r, &c));
            DescentStep {
                degree: degrees[j],
                modulus: tuple_poly(r, &moduli),
                witness: tuple_vector(&st.iter().map(|s| &s.witness).collect::<Vec<_>>()),
                cofactor,
            }
        })
        .collect();
    let witness = tuple_vector(&traces.iter().map(|t| &t.witness).collect::<Vec<_>>());
    Ok(DescentTrace { steps, witness })
}

/// Isotropic unimodular vector over `R` from one over `R[X]/(P)`, `deg P` odd.
pub fn springer(q: &QuadraticForm, p: &Polynomial, z: &[RingElement]) -> Result<Descent> {
    let r = q.ring();
    let d = odd_degree(r, p)?;
    let s = Ring::quotient(r, p.clone())?;
    check_witness(q, &s, z)?;
    if !q.is_nonsingular()? {
        return Err(Error::Singular("springer descent needs a nonsingular form".into()));
    }
    if d == 1 {
        let w: Vector = z.iter().map(|x| collapse(&s, r, x)).collect();
        verify(q, &w)?;
        return Ok(Descent { witness: w, trace: None });
    }
    if let Some(fs) = r.factors() {
        let parts = q.rank_decompose()?;
        let comps = fs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let pi = p.map_coeffs(f, |c| r.project(c, i));
                let zi: Vector = z.iter().map(|x| s.project(x, i)).collect();
                springer(&parts[i], &pi, &zi)
            })
            .collect::<Result<Vec<_>>>()?;
        return combine_descents(r, &comps);
    }
    let out = match q.rank() {
        0 | 1 => return Err(Error::Inconsistent("nonsingular forms of rank below 2 have no isotropic vectors".into())),
        2 => {
            let w = clifford::rank2_springer(q, &s, Some(z))?
                .witness()
                .cloned()
                .ok_or_else(|| Error::Inconsistent("binary form did not split".into()))?;
            Descent { witness: w, trace: None }
        }
        _ if r.is_field() => Descent { witness: descend_field(q, p, z)?, trace: None },
        _ => {
            let trace = descend_semilocal(q, p, z)?;
            Descent { witness: trace.witness.clone(), trace: Some(trace) }
        }
    };
    verify(q, &out.witness)?;
    Ok(out)
}

fn combine_descents(r: &Ring, comps: &[Descent]) -> Result<Descent> {
    let witness = tuple_vector(&comps.iter().map(|c| &c.witness).collect::<Vec<_>>());
    let trace = comps
        .iter()
        .map(|c| c.trace.clone())
        .collect::<Option<Vec<_>>>()
        .map(|t| combine_traces(r, &t))
        .transpose()?;
    Ok(Descent { witness, trace })
}

/// Degree of a component over `r`: 1 when equal, the modulus degree when
/// presented over `r`.
fn component_degree(c: &Ring, r: &Ring) -> Option<usize> {
    if c == r {
        return Some(1);
    }
    (c.base().as_ref() == Some(r)).then(|| c.modulus().and_then(Polynomial::degree)).flatten()
}

/// [`springer`] for `S` given as a ring: one-generated over `R`, the
/// componentwise quotient of a product, or a product of one-generated
/// extensions (étale case).
pub fn springer_in(q: &QuadraticForm, s: &Ring, z: &[RingElement]) -> Result<Descent> {
    let r = q.ring();
    if s == r {
        check_witness(q, s, z)?;
        return Ok(Descent { witness: z.to_vec(), trace: None });
    }
    if s.base().as_ref() == Some(r) {
        return springer(q, s.modulus().unwrap(), z);
    }
    let sf = s
        .factors()
        .ok_or_else(|| Error::UnsupportedEtalePresentation(format!("{s} is not presented over {r}")))?;
    if let Some(rf) = r.factors() {
        if rf.len() != sf.len() {
            return Err(Error::UnsupportedEtalePresentation(format!("{s} does not match the factors of {r}")));
        }
        let degrees = rf
            .iter()
            .zip(sf)
            .map(|(a, b)| component_degree(b, a))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::UnsupportedEtalePresentation(format!("{s} is not presented over {r}")))?;
        if degrees.iter().any(|&e| e != degrees[0]) {
            return Err(Error::NonConstantDegree);
        }
        let parts = q.rank_decompose()?;
        let comps = (0..rf.len())
            .map(|i| springer_in(&parts[i], &sf[i], &z.iter().map(|x| s.project(x, i)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        return combine_descents(r, &comps);
    }
    let degrees = sf
        .iter()
        .map(|c| component_degree(c, r))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::UnsupportedEtalePresentation(format!("{s} is not a product of extensions of {r}")))?;
    let total: usize = degrees.iter().sum();
    if total % 2 == 0 {
        return Err(Error::EvenDegree(total));
    }
    let i = (0..sf.len())
        .filter(|&i| degrees[i] % 2 == 1)
        .min_by_key(|&i| (degrees[i], i))
        .expect("odd total has an odd summand");
    let zi: Vector = z.iter().map(|x| s.project(x, i)).collect();
    springer_in(q, &sf[i], &zi)
}

/// `m` over `R` with `q(m) = a` from `x` over `R[X]/(P)` with `q(x) = a`.
pub fn represents_descend(q: &QuadraticForm, a: &RingElement, p: &Polynomial, x: &[RingElement]) -> Result<Vector> {
    let r = q.ring();
    let d = odd_degree(r, p)?;
    if !r.is_unit(a) {
        return Err(Error::Inconsistent("represented value must be a unit".into()));
    }
    let s = Ring::quotient(r, p.clone())?;
    if x.len() != q.rank() {
        return Err(Error::DimensionMismatch { expected: q.rank(), found: x.len() });
    }
    let qs = q.base_change(&RingHom::Include(s.clone()))?;
    if qs.evaluate(x)? != include(r, &s, a)? {
        return Err(Error::Inconsistent("extension vector does not represent a".into()));
    }
    if q.rank() == 1 {
        return represents_rank_one(q, a, d, &s, &x[0]);
    }
    let aug = q.direct_sum(&QuadraticForm::one_dim(r, r.neg(a)))?;
    if !aug.is_nonsingular()? {
        return Err(Error::SingularAugmented);
    }
    if let Some(fs) = r.factors() {
        let parts = q.rank_decompose()?;
        let comps = fs
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let pi = p.map_coeffs(f, |c| r.project(c, i));
                let xi: Vector = x.iter().map(|e| s.project(e, i)).collect();
                represents_descend(&parts[i], &r.project(a, i), &pi, &xi)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(tuple_vector(&comps.iter().collect::<Vec<_>>()));
    }
    let data = r.residues()?;
    let mut witnesses = Vec::with_capacity(data.len());
    for res in &data.residues {
        let k = &res.field;
        let pk = res.reduce_poly(p);
        let sk = Ring::quotient(k, pk.clone())?;
        let xk = x.iter().map(|e| reduce_to_residue(res, &s, &sk, e)).collect::<Result<Vector>>()?;
        let mut m = represents_field(&q.reduce(res), &res.reduce(r, a), &pk, &xk)?;
        m.push(k.one());
        witnesses.push(m);
    }
    let lifted = lift_isotropic(&LiftProblem { form: aug, witnesses })?;
    let (head, last) = lifted.vector.split_at(q.rank());
    let inv = r.inverse(&last[0]).ok_or_else(|| Error::Inconsistent("lifted last coordinate is not a unit".into()))?;
    let m = vec_scale(r, &inv, head);
    if &q.evaluate(&m)? != a {
        return Err(Error::Inconsistent("descended vector does not represent a".into()));
    }
    Ok(m)
}

fn represents_field(q: &QuadraticForm, a: &RingElement, p: &Polynomial, x: &[RingElement]) -> Result<Vector> {
    let k = q.ring();
    let s = Ring::quotient(k, p.clone())?;
    let aug = q.direct_sum(&QuadraticForm::one_dim(k, k.neg(a)))?;
    let mut z = x.to_vec();
    z.push(s.one());
    let y = descend_field(&aug, p, &z)?;
    let (head, last) = y.split_at(q.rank());
    if let Some(inv) = k.inverse(&last[0]) {
        return Ok(vec_scale(k, &inv, head));
    }
    if let Ok(hc) = witt::hyperbolic_complete(q, &[head.to_vec()]) {
        return Ok(crate::forms::vec_add(k, head, &vec_scale(k, a, &hc.v[0])));
    }
    match witt::represents(q, a)? {
        Representation::Represented(m) => Ok(m),
        _ => Err(Error::Inconsistent("isotropic residue form does not represent a".into())),
    }
}

/// `<u>` represents `a` over `R` when it does over an odd-degree `S`:
/// `m = N(s) (u/a)^((d-1)/2)` satisfies `u m^2 = a`.
fn represents_rank_one(q: &QuadraticForm, a: &RingElement, d: usize, s: &Ring, x: &RingElement) -> Result<Vector> {
    let r = q.ring();
    let u = q.coeff(0, 0);
    let ratio = r.div(u, a).ok_or_else(|| Error::Inconsistent("represented value must be a unit".into()))?;
    let norm = crate::rings::algebra_norm(s, x)?;
    let m = r.mul(&norm, &r.pow(&ratio, ((d - 1) / 2) as u128));
    if &r.mul(u, &r.mul(&m, &m)) != a {
        return Err(Error::Inconsistent("norm does not give a square root".into()));
    }
    Ok(vec![m])
}
