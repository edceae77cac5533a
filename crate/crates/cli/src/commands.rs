use archiclass::archimedean::{
    bibounded_obstruction, equiv, gg, sim, succeq, verify_certificate, w_valuation,
    BiboundedObstruction, Certificate, RelationVerdict,
};
use archiclass::batch::Execution;
use archiclass::echelon::{archimedean_canonical_form, class_descriptor, elementary_factorization};
use archiclass::elementary::{product, ElementaryOp};
use archiclass::field::{Backend, FromElement, OrderedField, Rational, RationalFunction};
use archiclass::lattice::{join, meet};
use archiclass::linalg::{congruence_diagonalize, is_psd, moore_penrose_general, moore_penrose_symmetric};
use archiclass::matrix::Matrix;
use archiclass::sweep::{run_all, SweepConfig};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::doc::{descriptor, entries, matrix_document, valuation, Document};
use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    Succeq,
    Sim,
    Gg,
    Equiv,
}

impl Relation {
    fn name(self) -> &'static str {
        match self {
            Relation::Succeq => "succeq",
            Relation::Sim => "sim",
            Relation::Gg => "gg",
            Relation::Equiv => "equiv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeOp {
    Meet,
    Join,
}

/// Runs `body` with the document matrix converted to its backend type.
macro_rules! with_backend {
    ($doc:expr, |$m:ident: $f:ident| $body:expr) => {
        match $doc.backend {
            Backend::Q => {
                type $f = Rational;
                let $m = concrete::<$f>($doc)?;
                $body
            }
            Backend::Qt => {
                type $f = RationalFunction;
                let $m = concrete::<$f>($doc)?;
                $body
            }
        }
    };
}

fn concrete<F: OrderedField + FromElement>(doc: &Document) -> Result<Matrix<F>, Failure> {
    doc.matrix
        .to_backend::<F>()
        .ok_or_else(|| Failure::new(format!("{}: entries do not belong to {}", doc.name, doc.backend)))
}

fn same_backend(a: &Document, b: &Document) -> Result<(), Failure> {
    if a.backend != b.backend {
        return Err(Failure::new(format!(
            "{} is over {} but {} is over {}",
            a.name, a.backend, b.name, b.backend
        )));
    }
    if a.matrix.cols() != b.matrix.cols() {
        return Err(Failure::new(format!(
            "{} has {} columns but {} has {}",
            a.name,
            a.matrix.cols(),
            b.name,
            b.matrix.cols()
        )));
    }
    Ok(())
}

fn certificate<F: OrderedField>(cert: &Certificate<F>) -> Value {
    match cert {
        Certificate::BoundedMultiplier { c, r } => json!({
            "kind": "bounded_multiplier",
            "c": entries(c),
            "r": r.to_string(),
        }),
        Certificate::ScalarMultiplier(alpha) => json!({
            "kind": "scalar",
            "alpha": alpha.to_string(),
        }),
        Certificate::ElementaryFactors(ops) => json!({
            "kind": "elementary_factors",
            "factors": ops.iter().map(factor).collect::<Vec<_>>(),
        }),
        Certificate::Pair(forward, backward) => json!({
            "kind": "pair",
            "forward": certificate(forward),
            "backward": certificate(backward),
        }),
    }
}

fn factor<F: OrderedField>(op: &ElementaryOp<F>) -> Value {
    match op {
        ElementaryOp::AddMultiple { target, source, alpha } => json!({
            "kind": "add_multiple",
            "target": target + 1,
            "source": source + 1,
            "alpha": alpha.to_string(),
            "text": op.to_string(),
        }),
        ElementaryOp::Scale { row, alpha } => json!({
            "kind": "scale",
            "row": row + 1,
            "alpha": alpha.to_string(),
            "text": op.to_string(),
        }),
        ElementaryOp::Swap(i, j) => json!({
            "kind": "swap",
            "rows": [i + 1, j + 1],
            "text": op.to_string(),
        }),
    }
}

fn verdict_code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

pub fn compare(a: &Document, b: &Document, relation: Relation) -> Result<Outcome, Failure> {
    same_backend(a, b)?;
    let mb = &b.matrix;
    with_backend!(a, |ma: F| {
        let mb = mb.to_backend::<F>().expect("backends checked");
        compare_in(&ma, &mb, relation)
    })
    .map(|mut doc| {
        doc["left"] = json!(a.name);
        doc["right"] = json!(b.name);
        doc["field"] = json!(a.backend.name());
        let holds = doc["holds"].as_bool().unwrap_or(false);
        Outcome::new(doc, verdict_code(holds))
    })
}

fn compare_in<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>, relation: Relation) -> Result<Value, Failure> {
    let verdict: RelationVerdict<F> = match relation {
        Relation::Succeq => succeq(a, b),
        Relation::Sim => sim(a, b),
        Relation::Gg => gg(a, b),
        Relation::Equiv => equiv_verdict(a, b),
    }
    .map_err(Failure::from_matrix)?;
    let cert = verdict.certificate.as_ref();
    let verified = cert.is_some_and(|c| match (relation, c) {
        (Relation::Equiv, Certificate::Pair(f, g)) => {
            verify_certificate(a, b, f) && verify_certificate(b, a, g)
        }
        _ => verify_certificate(a, b, c),
    });
    if verdict.holds && !verified {
        return Err(Failure::new("internal error: certificate failed to re-verify".into()));
    }
    Ok(json!({
        "relation": relation.name(),
        "holds": verdict.holds,
        "certificate": cert.map_or(Value::Null, certificate),
        "verified": verified,
    }))
}

/// `A ≡ B` with one scalar certificate in each direction.
fn equiv_verdict<F: OrderedField>(
    a: &Matrix<F>,
    b: &Matrix<F>,
) -> archiclass::error::Result<RelationVerdict<F>> {
    if !equiv(a, b)? {
        return Ok(RelationVerdict {
            holds: false,
            certificate: None,
        });
    }
    let forward = gg(a, b)?.certificate.expect("equiv implies gg");
    let backward = gg(b, a)?.certificate.expect("equiv implies gg");
    Ok(RelationVerdict {
        holds: true,
        certificate: Some(Certificate::Pair(Box::new(forward), Box::new(backward))),
    })
}

pub fn canon(doc: &Document) -> Result<Outcome, Failure> {
    if doc.backend != Backend::Qt {
        return Err(Failure::new(
            "canonical forms are only computed over Q(t)".into(),
        ));
    }
    let a = concrete::<RationalFunction>(doc)?;
    if a.is_zero() {
        return Err(Failure::new(
            "the zero matrix has no canonical form; its class is the zero class".into(),
        ));
    }
    let c = archimedean_canonical_form(&a).map_err(Failure::from_matrix)?;
    Ok(Outcome::success(json!({
        "canonical": matrix_document(&format!("canon({})", doc.name), &c),
        "descriptor": descriptor(&class_descriptor(&a)),
    })))
}

pub fn lattice(a: &Document, b: &Document, op: LatticeOp) -> Result<Outcome, Failure> {
    same_backend(a, b)?;
    let mb = &b.matrix;
    let label = match op {
        LatticeOp::Meet => format!("meet({}, {})", a.name, b.name),
        LatticeOp::Join => format!("join({}, {})", a.name, b.name),
    };
    let out = match a.backend {
        Backend::Q => {
            let ma = concrete::<Rational>(a)?;
            let mb = mb.to_backend::<Rational>().expect("backends checked");
            let rep = lattice_op(&ma, &mb, op)?;
            json!({
                "representative": matrix_document(&label, &rep),
                "descriptor": descriptor(&class_descriptor(&rep)),
            })
        }
        Backend::Qt => {
            let ma = concrete::<RationalFunction>(a)?;
            let mb = mb.to_backend::<RationalFunction>().expect("backends checked");
            let rep = lattice_op(&ma, &mb, op)?;
            let canonical = if rep.is_zero() {
                Value::Null
            } else {
                let c = archimedean_canonical_form(&rep).map_err(Failure::from_matrix)?;
                matrix_document(&format!("canon({label})"), &c)
            };
            json!({
                "representative": matrix_document(&label, &rep),
                "descriptor": descriptor(&class_descriptor(&rep)),
                "canonical": canonical,
            })
        }
    };
    Ok(Outcome::success(out))
}

fn lattice_op<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>, op: LatticeOp) -> Result<Matrix<F>, Failure> {
    match op {
        LatticeOp::Meet => meet(a, b),
        LatticeOp::Join => join(a, b),
    }
    .map_err(Failure::from_matrix)
}

pub fn factor_cmd(doc: &Document) -> Result<Outcome, Failure> {
    if !doc.matrix.is_square() {
        return Err(Failure::new(format!(
            "{} is {}×{}; factorization needs a square matrix",
            doc.name,
            doc.matrix.rows(),
            doc.matrix.cols()
        )));
    }
    with_backend!(doc, |a: F| factor_in(&a))
}

fn factor_in<F: OrderedField>(a: &Matrix<F>) -> Result<Outcome, Failure> {
    if let Some(obstruction) = bibounded_obstruction(a) {
        let witness = match obstruction {
            BiboundedObstruction::UnboundedEntry { row, col, valuation: v } => json!({
                "kind": "unbounded_entry",
                "position": [row + 1, col + 1],
                "valuation": valuation(v),
            }),
            BiboundedObstruction::TooFewRows { rows, cols } => json!({
                "kind": "too_few_rows",
                "rows": rows,
                "cols": cols,
            }),
            BiboundedObstruction::NoBiboundedMinor { min_valuation } => json!({
                "kind": "no_bibounded_minor",
                "min_valuation": valuation(min_valuation),
            }),
        };
        return Ok(Outcome::new(json!({ "bibounded": false, "witness": witness }), 1));
    }
    let ops = elementary_factorization(a).map_err(Failure::from_matrix)?;
    let check = product(&ops, a.rows()) == *a;
    if !check {
        return Err(Failure::new("internal error: factors do not multiply back".into()));
    }
    Ok(Outcome::success(json!({
        "bibounded": true,
        "factors": ops.iter().map(factor).collect::<Vec<_>>(),
        "product_check": check,
    })))
}

pub fn shape(doc: &Document) -> Result<Outcome, Failure> {
    with_backend!(doc, |a: F| Ok(Outcome::success(descriptor(&class_descriptor(&a)))))
}

pub fn psd(doc: &Document) -> Result<Outcome, Failure> {
    with_backend!(doc, |a: F| psd_in(&a))
}

fn psd_in<F: OrderedField>(a: &Matrix<F>) -> Result<Outcome, Failure> {
    let holds = is_psd(a).map_err(Failure::from_matrix)?;
    let cd = congruence_diagonalize(a).map_err(Failure::from_matrix)?;
    let diagonal: Vec<String> = (0..cd.d.rows()).map(|i| cd.d.get(i, i).to_string()).collect();
    Ok(Outcome::new(json!({ "psd": holds, "congruence_diagonal": diagonal }), verdict_code(holds)))
}

pub fn pinv(doc: &Document) -> Result<Outcome, Failure> {
    let label = format!("pinv({})", doc.name);
    with_backend!(doc, |a: F| {
        let (p, method) = if a.is_symmetric() {
            let p = moore_penrose_symmetric(&a).map_err(Failure::from_matrix)?;
            (p, "symmetric")
        } else {
            (moore_penrose_general(&a), "general")
        };
        Ok(Outcome::success(json!({
            "method": method,
            "pseudo_inverse": matrix_document(&label, &p),
        })))
    })
}

pub fn wval(doc: &Document) -> Result<Outcome, Failure> {
    with_backend!(doc, |a: F| Ok(Outcome::success(json!({ "w": valuation(w_valuation(&a)) }))))
}

pub fn selftest(seed: u64, quick: bool, exec: Execution) -> Outcome {
    let mut cfg = SweepConfig::full(seed);
    if quick {
        cfg = cfg.scaled_down(20);
    }
    cfg.exec = exec;
    let reports = run_all(&cfg);
    let passed = reports.iter().all(|r| r.passed());
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "cases": r.cases,
                "checks": r.checks,
                "failures": r.failures,
                "seconds": r.elapsed.as_secs_f64(),
            })
        })
        .collect();
    Outcome::new(json!({ "seed": seed, "passed": passed, "suites": suites }), verdict_code(passed))
}
