//! Acceptance suite for formwitt: ten criteria checked against brute-force
//! oracles at desk scale. Every criterion has zero tolerance.

pub mod criteria;
pub mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

use formwitt::forms::{QuadraticForm, Vector};
use formwitt::rings::{linalg, Polynomial, Ring, RingElement};

use oracle::{Elem, Form, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0x5eed_f0e5 }
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2} {verdict}  {} ({} checks, {} failures, {:.1}s)",
            self.id,
            self.name,
            self.checked,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "; first failure: {first}")?;
        }
        Ok(())
    }
}

/// Collects checks for one criterion.
pub(crate) struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn new() -> Tally {
        Tally { checked: 0, failures: Vec::new() }
    }

    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    pub(crate) fn finish(self, id: usize, name: &'static str, start: Instant) -> Report {
        Report { id, name, checked: self.checked, failures: self.failures, elapsed: start.elapsed() }
    }
}

/// Runs every criterion in order, calling `sink` as each one finishes.
pub fn run_all(cfg: &Config, mut sink: impl FnMut(&Report)) -> Vec<Report> {
    let mut out = Vec::new();
    let mut push = |r: Report| {
        sink(&r);
        out.push(r);
    };
    let (c1, c2) = criteria::springer_equivalence(cfg);
    push(c1);
    push(c2);
    push(criteria::lemma_contract(cfg));
    push(criteria::hensel_lifting(cfg));
    push(criteria::hyperbolic_doubles(cfg));
    push(criteria::tensor_identity(cfg));
    push(criteria::binary_forms(cfg));
    push(criteria::value_descent(cfg));
    push(criteria::witt_monomorphism(cfg));
    push(criteria::witt_cancellation(cfg));
    out
}

/// Runs a single criterion by number.
pub fn run_one(cfg: &Config, id: usize) -> Option<Report> {
    Some(match id {
        1 => criteria::springer_equivalence(cfg).0,
        2 => criteria::springer_equivalence(cfg).1,
        3 => criteria::lemma_contract(cfg),
        4 => criteria::hensel_lifting(cfg),
        5 => criteria::hyperbolic_doubles(cfg),
        6 => criteria::tensor_identity(cfg),
        7 => criteria::binary_forms(cfg),
        8 => criteria::value_descent(cfg),
        9 => criteria::witt_monomorphism(cfg),
        10 => criteria::witt_cancellation(cfg),
        _ => return None,
    })
}

// ---- conversions between the oracle and the library -----------------------

pub(crate) fn lib_form(k: &Ring, f: &Form) -> QuadraticForm {
    let n = f.rank();
    let mut m = linalg::zeros(k, n, n);
    for i in 0..n {
        for j in i..n {
            m[i][j] = k.from_int(f.c[i][j] as i64);
        }
    }
    QuadraticForm::new(k, m).expect("upper triangular")
}

pub(crate) fn lib_poly(k: &Ring, f: &[u32]) -> Polynomial {
    Polynomial::from_ints(k, &f.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

/// Element of `GF(p)[X]/(P)` presented over `GF(p)`.
pub(crate) fn lib_elem(k: &Ring, s: &Ring, e: &Elem, dim: usize) -> RingElement {
    s.from_base_poly(&lib_poly(k, &e[..dim])).expect("element of the quotient")
}

pub(crate) fn lib_vector(k: &Ring, s: &Ring, v: &[Elem], dim: usize) -> Vector {
    v.iter().map(|e| lib_elem(k, s, e, dim)).collect()
}

pub(crate) fn residue_value(e: &RingElement) -> u32 {
    match e {
        RingElement::Residue(x) => *x as u32,
        other => panic!("not a prime field element: {other:?}"),
    }
}

pub(crate) fn oracle_poly(f: &Polynomial) -> Poly {
    oracle::trim(f.degree().map_or_else(Vec::new, |d| (0..=d).map(|i| residue_value(&f.coeff(i))).collect()))
}

/// A prime-field vector as oracle elements.
pub(crate) fn oracle_vector(v: &[RingElement]) -> Vec<Elem> {
    v.iter()
        .map(|x| {
            let mut e = [0; oracle::MAXD];
            e[0] = residue_value(x);
            e
        })
        .collect()
}
