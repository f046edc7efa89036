//! Quadratic étale algebras `R[z]/(z^2 - βz + γ)` and the even Clifford
//! algebra of a binary form.

use crate::error::{Error, Result};
use crate::forms::{include, vec_add, vec_scale, QuadraticForm, Vector};
use crate::lifting::newton_bound;
use crate::rings::{crt_combine, factor, FactorConfig, Polynomial, Ring, RingElement};
use crate::witt::{self, AnisotropyCertificate, IsotropyResult};

/// `A = R[ω]` with `ω^2 = βω - γ`; elements are pairs `(x, y) = x + yω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticEtale {
    ring: Ring,
    beta: RingElement,
    gamma: RingElement,
}

impl QuadraticEtale {
    pub fn new(ring: &Ring, beta: RingElement, gamma: RingElement) -> Result<QuadraticEtale> {
        let a = QuadraticEtale { ring: ring.clone(), beta, gamma };
        if !ring.is_unit(&a.discriminant()) {
            return Err(Error::Singular("discriminant is not a unit".into()));
        }
        Ok(a)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn beta(&self) -> &RingElement {
        &self.beta
    }

    pub fn gamma(&self) -> &RingElement {
        &self.gamma
    }

    /// `β^2 - 4γ`
    pub fn discriminant(&self) -> RingElement {
        let r = &self.ring;
        r.sub(&r.mul(&self.beta, &self.beta), &r.mul(&r.from_int(4), &self.gamma))
    }

    /// `z^2 - βz + γ`
    pub fn minimal_polynomial(&self) -> Polynomial {
        let r = &self.ring;
        Polynomial::new(r, vec![self.gamma.clone(), r.neg(&self.beta), r.one()])
    }

    pub fn mul(&self, s: &(RingElement, RingElement), t: &(RingElement, RingElement)) -> (RingElement, RingElement) {
        let r = &self.ring;
        let yy = r.mul(&s.1, &t.1);
        let x = r.sub(&r.mul(&s.0, &t.0), &r.mul(&self.gamma, &yy));
        let y = r.sum(&[r.mul(&s.0, &t.1), r.mul(&s.1, &t.0), r.mul(&self.beta, &yy)]);
        (x, y)
    }

    /// `n(x + yω) = x^2 + βxy + γy^2`
    pub fn norm(&self, s: &(RingElement, RingElement)) -> RingElement {
        self.norm_form().eval_unchecked(&[s.0.clone(), s.1.clone()])
    }

    pub fn norm_form(&self) -> QuadraticForm {
        let r = &self.ring;
        QuadraticForm::new(r, vec![vec![r.one(), self.beta.clone()], vec![r.zero(), self.gamma.clone()]])
            .expect("upper triangular")
    }

    /// Coefficients carried along `R -> S`.
    pub fn base_change(&self, s: &Ring) -> Result<QuadraticEtale> {
        QuadraticEtale::new(s, include(&self.ring, s, &self.beta)?, include(&self.ring, s, &self.gamma)?)
    }

    /// The idempotent `(ω - r')/(r - r')` for a root `r`, `r' = β - r`.
    pub fn idempotent(&self, root: &RingElement) -> Result<(RingElement, RingElement)> {
        let r = &self.ring;
        let other = r.sub(&self.beta, root);
        let inv = r.inverse(&r.sub(root, &other)).ok_or_else(|| Error::Singular("roots not separated".into()))?;
        Ok((r.neg(&r.mul(&other, &inv)), inv))
    }
}

/// `(β, γ) = (b, ac)` for `q = ax^2 + bxy + cy^2`.
pub fn even_clifford(q: &QuadraticForm) -> Result<QuadraticEtale> {
    if q.rank() != 2 {
        return Err(Error::RankMismatch(format!("even Clifford algebra of a rank {} form", q.rank())));
    }
    let r = q.ring();
    QuadraticEtale::new(r, q.coeff(0, 1).clone(), r.mul(q.coeff(0, 0), q.coeff(1, 1)))
}

fn field_root(f: &Polynomial) -> Result<Option<RingElement>> {
    let k = f.ring();
    let fac = factor(f, &FactorConfig::default())?;
    let mut roots: Vec<RingElement> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| k.neg(&k.div(&g.coeff(0), &g.coeff(1)).expect("field")))
        .collect();
    roots.sort_by(|a, b| k.cmp_elements(a, b));
    Ok(roots.into_iter().next())
}

/// A root of `z^2 - βz + γ`: in each residue field, then CRT and Newton.
pub fn is_split(a: &QuadraticEtale) -> Result<Option<RingElement>> {
    let r = &a.ring;
    let f = a.minimal_polynomial();
    if r.is_field() {
        return field_root(&f);
    }
    let data = r.residues()?;
    let mut roots = Vec::new();
    for res in &data.residues {
        match field_root(&res.reduce_poly(&f))? {
            Some(x) => roots.push(x),
            None => return Ok(None),
        }
    }
    let mut z = crt_combine(r, &roots)?;
    let df = f.derivative();
    for _ in 0..=newton_bound(data.nilpotency) {
        let val = f.eval(&z);
        if r.is_zero(&val) {
            return Ok(Some(z));
        }
        let d = r.inverse(&df.eval(&z)).ok_or_else(|| Error::Singular("double root".into()))?;
        z = r.sub(&z, &r.mul(&val, &d));
    }
    Err(Error::Inconsistent("root lifting did not converge".into()))
}

/// Right action of `x + yω` on `R^2`: `e1 ω = a e2`, `e2 ω = -c e1 + b e2`.
pub fn act(q: &QuadraticForm, m: &[RingElement], s: &(RingElement, RingElement)) -> Vector {
    let r = q.ring();
    let (a, b, c) = (q.coeff(0, 0), q.coeff(0, 1), q.coeff(1, 1));
    let omega = vec![r.neg(&r.mul(c, &m[1])), r.add(&r.mul(a, &m[0]), &r.mul(b, &m[1]))];
    vec_add(r, &vec_scale(r, &s.0, m), &vec_scale(r, &s.1, &omega))
}

/// A unimodular isotropic vector generating `M e` for the idempotent of a
/// root of the even Clifford algebra.
pub fn split_witness(q: &QuadraticForm, root: &RingElement) -> Result<Vector> {
    let r = q.ring();
    let a = even_clifford(q)?;
    let e = a.idempotent(root)?;
    let images = [act(q, &[r.one(), r.zero()], &e), act(q, &[r.zero(), r.one()], &e)];
    let data = r.residues()?;
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    for res in &data.residues {
        let first = images[0].iter().any(|x| !res.field.is_zero(&res.reduce(r, x)));
        c0.push(if first { res.field.one() } else { res.field.zero() });
        c1.push(if first { res.field.zero() } else { res.field.one() });
    }
    let m = vec_add(r, &vec_scale(r, &crt_combine(r, &c0)?, &images[0]), &vec_scale(r, &crt_combine(r, &c1)?, &images[1]));
    if !r.is_zero(&q.eval_unchecked(&m)) || !witt::is_unimodular(r, &m) {
        return Err(Error::Inconsistent("idempotent image is not an isotropic line".into()));
    }
    Ok(m)
}

/// Isotropy of a nonsingular binary form over `R`, given an odd degree
/// extension `S = R[X]/(P)` and optionally an `S`-witness.
pub fn rank2_springer(q: &QuadraticForm, s: &Ring, witness: Option<&[RingElement]>) -> Result<IsotropyResult> {
    let r = q.ring();
    if s.base().as_ref() != Some(r) {
        return Err(Error::DegreeMismatch(format!("{s} is not presented over {r}")));
    }
    let d = s.modulus().and_then(|m| m.degree()).unwrap_or(0);
    if d % 2 == 0 {
        return Err(Error::EvenDegree(d));
    }
    let a = even_clifford(q)?;
    if let Some(w) = witness {
        let qs = q.base_change(&crate::forms::RingHom::Include(s.clone()))?;
        if !s.is_zero(&qs.evaluate(w)?) || !witt::is_unimodular(s, w) {
            return Err(Error::Inconsistent("S-witness is not isotropic".into()));
        }
    }
    match is_split(&a)? {
        Some(root) => {
            let m = split_witness(q, &root)?;
            let certificate = witt::unimodularity_certificate(r, &m).expect("unimodular");
            Ok(IsotropyResult::Isotropic { witness: m, certificate })
        }
        None if witness.is_some() => Err(Error::Inconsistent("S-isotropic form with nonsplit algebra".into())),
        None if r.is_finite() => Ok(IsotropyResult::Anisotropic(AnisotropyCertificate::Exhausted)),
        None => witt::find_isotropic(q),
    }
}

/// Whether `A` and `A ⊗ S` are split alike.
pub fn splitting_invariance_check(a: &QuadraticEtale, s: &Ring) -> Result<bool> {
    Ok(is_split(a)?.is_some() == is_split(&a.base_change(s)?)?.is_some())
}
