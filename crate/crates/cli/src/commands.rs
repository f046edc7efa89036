use formwitt::clifford::{even_clifford, is_split, rank2_springer};
use formwitt::descent::{represents_descend, springer, Descent};
use formwitt::forms::{QuadraticForm, RingHom, Vector};
use formwitt::lifting::{lift_isotropic, LiftProblem};
use formwitt::rings::{parse_element, parse_poly, parse_ring, Matrix, Polynomial, Ring, RingElement, RingKind};
use formwitt::search::SearchConfig;
use formwitt::witt::{self, AnisotropyCertificate, IsometryVerdict, IsotropyResult, Representation};
use formwitt::{Error, Result};
use formwitt_acceptance::{run_all, run_one, Config};
use serde_json::{json, Value};

use crate::spec::{format_form, format_vector, parse_form, parse_vector};
use crate::{Common, Outcome};

pub fn is_bound_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UndecidableAnisotropy | Error::SearchBoundExceeded | Error::DegreeBoundExceeded { .. } | Error::FactorizationBound
    )
}

/// `@path` reads the text from a UTF-8 file.
fn text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::InvalidElement(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

struct Input {
    ring: Ring,
    form: QuadraticForm,
    search: SearchConfig,
}

fn load(c: &Common) -> Result<Input> {
    if let Some(seed) = c.seed {
        std::env::set_var("FORMWITT_SEED", seed.to_string());
    }
    let ring = parse_ring(&text(&c.ring)?)?;
    let form = parse_form(&ring, &text(&c.form)?)?;
    let search = SearchConfig { budget: c.search_bound, height_bound: c.height_bound, ..SearchConfig::default() };
    Ok(Input { ring, form, search })
}

fn vector_json(ring: &Ring, v: &[RingElement]) -> Value {
    json!(format_vector(ring, v))
}

fn matrix_json(ring: &Ring, m: &Matrix) -> Value {
    json!(m.iter().map(|row| format_vector(ring, row)).collect::<Vec<_>>())
}

/// Re-evaluates an isotropic witness before it is emitted.
fn check_isotropic(q: &QuadraticForm, w: &[RingElement]) -> Result<()> {
    let r = q.ring();
    if !r.is_zero(&q.evaluate(w)?) || !witt::is_unimodular(r, w) {
        return Err(Error::Inconsistent("emitted witness failed re-verification".into()));
    }
    Ok(())
}

fn certificate_json(c: &AnisotropyCertificate) -> Value {
    match c {
        AnisotropyCertificate::Exhausted => json!({ "kind": "exhausted" }),
        AnisotropyCertificate::Definite => json!({ "kind": "definite" }),
        AnisotropyCertificate::LocalObstruction { prime, exponent } => {
            json!({ "kind": "local-obstruction", "prime": prime, "exponent": exponent })
        }
    }
}

fn isotropy_json(q: &QuadraticForm, res: &IsotropyResult, branch: &str) -> Result<Outcome> {
    let r = q.ring();
    Ok(match res {
        IsotropyResult::Isotropic { witness, certificate } => {
            check_isotropic(q, witness)?;
            Outcome::Done(json!({
                "status": "isotropic",
                "witness": vector_json(r, witness),
                "unimodular_coordinates": certificate,
                "branch": branch,
                "verified": true,
            }))
        }
        IsotropyResult::Anisotropic(c) => {
            Outcome::Done(json!({ "status": "anisotropic", "certificate": certificate_json(c), "branch": branch }))
        }
        IsotropyResult::Unknown { bound } => Outcome::Unknown(json!({ "status": "unknown", "bound": bound, "branch": branch })),
    })
}

pub fn form_check(c: &Common) -> Result<Outcome> {
    let Input { ring, form, .. } = load(c)?;
    let radical = if ring.is_field() {
        json!(form.radical()?.iter().map(|v| format_vector(&ring, v)).collect::<Vec<_>>())
    } else {
        let data = ring.residues()?;
        let mut per = serde_json::Map::new();
        for res in &data.residues {
            let rad = form.reduce(res).radical()?;
            per.insert(res.label.clone(), json!(rad.iter().map(|v| format_vector(&res.field, v)).collect::<Vec<_>>()));
        }
        Value::Object(per)
    };
    Ok(Outcome::Done(json!({
        "status": "ok",
        "ring": ring.to_string(),
        "form": format_form(&form),
        "rank": form.rank(),
        "regular": form.is_regular(),
        "nonsingular": form.is_nonsingular()?,
        "radical": radical,
    })))
}

pub fn isotropy(c: &Common) -> Result<Outcome> {
    let Input { ring, form, search } = load(c)?;
    let branch = match ring.kind() {
        RingKind::Rational => "height-search",
        RingKind::Product(_) => "componentwise",
        _ => "exhaustive",
    };
    isotropy_json(&form, &witt::find_isotropic_with(&form, &search)?, branch)
}

pub fn witt(c: &Common) -> Result<Outcome> {
    let Input { ring, form, search } = load(c)?;
    let d = witt::witt_decompose_with(&form, &search)?;
    let check = form.transport(&d.transform)? == QuadraticForm::hyperbolic_space(&ring, d.index).direct_sum(&d.kernel)?;
    if !check {
        return Err(Error::Inconsistent("decomposition failed re-verification".into()));
    }
    Ok(Outcome::Done(json!({
        "status": "ok",
        "index": d.index,
        "kernel": format_form(&d.kernel),
        "transform": matrix_json(&ring, &d.transform),
        "kernel_certificate": d.certificate.as_ref().map(certificate_json),
        "verified": true,
    })))
}

pub fn hyperbolic(c: &Common) -> Result<Outcome> {
    let Input { ring, form, .. } = load(c)?;
    Ok(Outcome::Done(match witt::is_hyperbolic(&form)? {
        Some(u) => {
            for (i, x) in u.iter().enumerate() {
                check_isotropic(&form, x)?;
                for y in &u[i + 1..] {
                    if !ring.is_zero(&form.polar_eval(x, y)?) {
                        return Err(Error::Inconsistent("Lagrangian is not totally isotropic".into()));
                    }
                }
            }
            json!({
                "status": "hyperbolic",
                "lagrangian": u.iter().map(|v| format_vector(&ring, v)).collect::<Vec<_>>(),
                "verified": true,
            })
        }
        None => json!({ "status": "not-hyperbolic" }),
    }))
}

pub fn isometric(c: &Common, other: &str) -> Result<Outcome> {
    let Input { ring, form, .. } = load(c)?;
    let form2 = parse_form(&ring, &text(other)?)?;
    Ok(Outcome::Done(match witt::is_isometric(&form, &form2)? {
        IsometryVerdict::NotIsometric => json!({ "status": "not-isometric" }),
        IsometryVerdict::Isometric(None) => json!({ "status": "isometric", "matrix": null }),
        IsometryVerdict::Isometric(Some(f)) => {
            if form2.transport(&f)? != form {
                return Err(Error::Inconsistent("isometry failed re-verification".into()));
            }
            json!({ "status": "isometric", "matrix": matrix_json(&ring, &f), "verified": true })
        }
    }))
}

fn represented(q: &QuadraticForm, a: &RingElement, m: &[RingElement], extra: Value) -> Result<Outcome> {
    let r = q.ring();
    if &q.evaluate(m)? != a {
        return Err(Error::Inconsistent("representing vector failed re-verification".into()));
    }
    let mut out = json!({ "status": "represented", "vector": vector_json(r, m), "verified": true });
    if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
        o.extend(e);
    }
    Ok(Outcome::Done(out))
}

pub fn represents(c: &Common, value: &str) -> Result<Outcome> {
    let Input { ring, form, search } = load(c)?;
    let a = parse_element(&ring, &text(value)?)?;
    match witt::represents_with(&form, &a, &search)? {
        Representation::Represented(m) => represented(&form, &a, &m, json!({})),
        Representation::NotRepresented => Ok(Outcome::Done(json!({ "status": "not-represented" }))),
        Representation::Unknown { bound } => Ok(Outcome::Unknown(json!({ "status": "unknown", "bound": bound }))),
    }
}

fn extension(ring: &Ring, ext: &str) -> Result<(Polynomial, Ring)> {
    let p = parse_poly(ring, &text(ext)?)?;
    let s = Ring::quotient(ring, p.clone())?;
    Ok((p, s))
}

pub fn clifford(c: &Common, ext: Option<&str>) -> Result<Outcome> {
    let Input { ring, form, .. } = load(c)?;
    let a = even_clifford(&form)?;
    let root = is_split(&a)?;
    let mut out = json!({
        "status": "ok",
        "beta": ring.format_element(a.beta()),
        "gamma": ring.format_element(a.gamma()),
        "discriminant": ring.format_element(&a.discriminant()),
        "split": root.is_some(),
        "root": root.as_ref().map(|x| ring.format_element(x)),
    });
    if let Some(ext) = ext {
        let (_, s) = extension(&ring, ext)?;
        let verdict = rank2_springer(&form, &s, None)?;
        if let Some(w) = verdict.witness() {
            check_isotropic(&form, w)?;
        }
        out["extension"] = json!({
            "ring": s.to_string(),
            "split": is_split(&a.base_change(&s)?)?.is_some(),
            "isotropic": verdict.is_isotropic(),
            "witness": verdict.witness().map(|w| format_vector(&ring, w)),
        });
    }
    Ok(Outcome::Done(out))
}

fn branch(q: &QuadraticForm, p: &Polynomial, out: &Descent) -> &'static str {
    let r = q.ring();
    if p.degree() == Some(1) {
        "degree-one"
    } else if r.is_product() {
        "componentwise"
    } else if q.rank() == 2 {
        "binary-clifford"
    } else if out.trace.is_some() {
        "semilocal-recursion"
    } else {
        "field-descent"
    }
}

fn trace_json(r: &Ring, out: &Descent) -> Result<Value> {
    let Some(t) = &out.trace else { return Ok(Value::Null) };
    let steps = t
        .steps
        .iter()
        .map(|s| {
            let ring = Ring::quotient(r, s.modulus.clone())?;
            Ok(json!({
                "degree": s.degree,
                "modulus": r.format_poly(&s.modulus, "X"),
                "witness": vector_json(&ring, &s.witness),
                "cofactor": s.cofactor.as_ref().map(|c| r.format_poly(c, "X")),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "degrees": t.degrees(), "steps": steps }))
}

pub fn descend(c: &Common, ext: &str, witness: Option<&str>, value: Option<&str>) -> Result<Outcome> {
    let Input { ring, form, search } = load(c)?;
    let (p, s) = extension(&ring, ext)?;
    let qs = form.base_change(&RingHom::Include(s.clone()))?;
    let given = witness.map(|w| text(w).and_then(|w| parse_vector(&s, &w))).transpose()?;
    if let Some(value) = value {
        let a = parse_element(&ring, &text(value)?)?;
        let x = match given {
            Some(x) => x,
            None => {
                let a_s = formwitt::forms::include(&ring, &s, &a)?;
                match witt::represents_with(&qs, &a_s, &search)? {
                    Representation::Represented(x) => x,
                    Representation::NotRepresented => return Ok(Outcome::Done(json!({ "status": "not-represented" }))),
                    Representation::Unknown { bound } => {
                        return Ok(Outcome::Unknown(json!({ "status": "unknown", "bound": bound })))
                    }
                }
            }
        };
        let m = represents_descend(&form, &a, &p, &x)?;
        return represented(&form, &a, &m, json!({ "extension_vector": vector_json(&s, &x), "extension": s.to_string() }));
    }
    let z = match given {
        Some(z) => z,
        None => match witt::find_isotropic_with(&qs, &search)? {
            IsotropyResult::Isotropic { witness, .. } => witness,
            IsotropyResult::Anisotropic(c) => {
                return Ok(Outcome::Done(json!({ "status": "anisotropic", "extension": s.to_string(), "certificate": certificate_json(&c) })))
            }
            IsotropyResult::Unknown { bound } => return Ok(Outcome::Unknown(json!({ "status": "unknown", "bound": bound }))),
        },
    };
    let out = springer(&form, &p, &z)?;
    check_isotropic(&form, &out.witness)?;
    Ok(Outcome::Done(json!({
        "status": "isotropic",
        "extension": s.to_string(),
        "extension_witness": vector_json(&s, &z),
        "witness": vector_json(&ring, &out.witness),
        "branch": branch(&form, &p, &out),
        "trace": trace_json(&ring, &out)?,
        "verified": true,
    })))
}

pub fn lift(c: &Common, given: &[String]) -> Result<Outcome> {
    let Input { ring, form, search } = load(c)?;
    let data = ring.residues()?;
    if !given.is_empty() && given.len() != data.len() {
        return Err(Error::CountMismatch { expected: data.len(), found: given.len() });
    }
    let mut witnesses: Vec<Vector> = Vec::new();
    for (i, res) in data.residues.iter().enumerate() {
        let w = match given.get(i) {
            Some(g) => parse_vector(&res.field, &text(g)?)?,
            None => match witt::find_isotropic_with(&form.reduce(res), &search)? {
                IsotropyResult::Isotropic { witness, .. } => witness,
                IsotropyResult::Anisotropic(_) => {
                    return Ok(Outcome::Done(json!({ "status": "anisotropic-residue", "residue": res.label })))
                }
                IsotropyResult::Unknown { bound } => {
                    return Ok(Outcome::Unknown(json!({ "status": "unknown", "bound": bound, "residue": res.label })))
                }
            },
        };
        witnesses.push(w);
    }
    let out = lift_isotropic(&LiftProblem { form: form.clone(), witnesses: witnesses.clone() })?;
    check_isotropic(&form, &out.vector)?;
    let residues: Vec<Value> = data
        .residues
        .iter()
        .zip(&witnesses)
        .map(|(res, w)| {
            let back = res.reduce_vec(&ring, &out.vector);
            json!({
                "label": res.label,
                "field": res.field.to_string(),
                "witness": vector_json(&res.field, w),
                "reduces_exactly": &back == w,
            })
        })
        .collect();
    Ok(Outcome::Done(json!({
        "status": "isotropic",
        "witness": vector_json(&ring, &out.vector),
        "residues": residues,
        "iterations": out.iterations,
        "nilpotency": out.nilpotency,
        "verified": true,
    })))
}

pub fn selftest(criterion: Option<usize>, seed: u64) -> Result<Outcome> {
    let cfg = Config { seed };
    let reports = match criterion {
        Some(id) => vec![run_one(&cfg, id).ok_or_else(|| Error::InvalidElement(format!("no criterion {id}")))?],
        None => run_all(&cfg, |r| eprintln!("{r}")),
    };
    let all_pass = reports.iter().all(|r| r.passed());
    let body = json!({
        "status": if all_pass { "pass" } else { "fail" },
        "criteria": reports
            .iter()
            .map(|r| json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed(),
                "checks": r.checked,
                "failures": r.failures.len(),
                "first_failure": r.failures.first(),
            }))
            .collect::<Vec<_>>(),
    });
    Ok(if all_pass { Outcome::Done(body) } else { Outcome::Failed(body) })
}
