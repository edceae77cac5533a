//! Randomized law suites over seeded matrices.
//!
//! Each suite evaluates independent cases through [`par_map`] and collects
//! every violated law as a failure message. The `selftest` command and the
//! acceptance tests run these suites.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::archimedean::{
    equiv, gg, is_bibounded_matrix, is_bounded_matrix, psd_approx, psd_succeq, sim, succeq,
    succeq_by_gram, verify_certificate, w_valuation, Certificate,
};
use crate::batch::{par_map, Execution};
use crate::echelon::{
    archimedean_canonical_form, bibounded_gauss, class_descriptor, elementary_factorization,
    gauss_replay_matches, is_canonical_form, qr_decompose, shape_of, succeq_via_gauss,
};
use crate::elementary::ElementaryOp;
use crate::error::MatrixError;
use crate::field::{LaurentField, OrderedField, Rational, RationalFunction, Valuation};
use crate::lattice::{box_mult, class_kernel, join, meet, psd_join, psd_meet};
use crate::linalg::{
    congruence_diagonalize, determinant, inverse, is_psd, kernel, max_norm, minors,
    moore_penrose_general, moore_penrose_symmetric, parallel_sum, psd_leq, rank,
};
use crate::matrix::{dot, Matrix};
use crate::random::{
    case_rng, random_bibounded_matrix, random_bounded_matrix, random_echelon, random_matrix,
    random_nonzero_matrix, random_psd, Sample,
};

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} checks, {} failures, {:.2?}",
            self.name,
            self.cases,
            self.checks,
            self.failures.len(),
            self.elapsed
        )
    }
}

#[derive(Default)]
struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

type CaseResult = Result<Outcome, MatrixError>;

fn run_suite<G>(name: String, seed: u64, cases: usize, exec: Execution, case: G) -> SuiteReport
where
    G: Fn(&mut ChaCha8Rng) -> CaseResult + Sync + Send,
{
    let start = Instant::now();
    let ids: Vec<u64> = (0..cases as u64).collect();
    let outcomes = par_map(exec, &ids, |&i| case(&mut case_rng(seed, i)));
    let mut report = SuiteReport {
        name,
        cases,
        checks: 0,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(o) => {
                report.checks += o.checks;
                report
                    .failures
                    .extend(o.failures.into_iter().map(|f| format!("case {i}: {f}")));
            }
            Err(e) => report.failures.push(format!("case {i}: error {e}")),
        }
    }
    report.elapsed = start.elapsed();
    report
}

fn ge<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool, MatrixError> {
    Ok(succeq(a, b)?.holds)
}

fn same<F: OrderedField>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool, MatrixError> {
    Ok(sim(a, b)?.holds)
}

fn suite_name<F: OrderedField>(name: &str) -> String {
    format!("{name} [{}]", F::BACKEND.name())
}

fn dim<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.random_range(1..=max)
}

/// The fixed counterexamples, all of which must keep their verdicts.
pub fn fixed_counterexamples() -> SuiteReport {
    let start = Instant::now();
    let mut o = Outcome::default();
    let run = |o: &mut Outcome| -> Result<(), MatrixError> {
        fixed_over::<Rational>(o)?;
        fixed_over::<RationalFunction>(o)?;

        // Equal kernels without domination needs an unbounded element;
        // the infinitesimal t gives 1/t.
        type Qt = RationalFunction;
        let big = Matrix::from_rows(1, vec![vec![Qt::monomial(-1)]])?;
        let one = Matrix::<Qt>::identity(1);
        o.check(kernel(&big) == kernel(&one), || "ker [1/t] ≠ ker [1]".into());
        o.check(!ge(&big, &one)?, || "[1/t] ≽ [1] should fail".into());
        o.check(ge(&one, &big)?, || "[1] ≽ [1/t] should hold".into());
        // over the archimedean field equal kernels suffice
        let five = Matrix::from_rows(1, vec![vec![Rational::from(5)]])?;
        o.check(ge(&five, &Matrix::identity(1))?, || "[5] ≽ [1] over Q".into());
        Ok(())
    };
    if let Err(e) = run(&mut o) {
        o.failures.push(format!("error {e}"));
    }
    SuiteReport {
        name: "fixed counterexamples".into(),
        cases: 1,
        checks: o.checks,
        failures: o.failures,
        elapsed: start.elapsed(),
    }
}

fn fixed_over<F: OrderedField>(o: &mut Outcome) -> Result<(), MatrixError> {
    let tag = F::BACKEND.name();
    let i2 = Matrix::<F>::identity(2);
    let p = Matrix::<F>::from_i64(&[&[0, 1], &[1, 0]]);
    let e = Matrix::<F>::from_i64(&[&[1, 0], &[0, 0]]);
    o.check(same(&p, &i2)?, || format!("{tag}: P ∼ I should hold"));
    o.check(!same(&e.mul(&p), &e.mul(&i2))?, || {
        format!("{tag}: left multiplication by diag(1,0) should break ∼")
    });

    let n = Matrix::<F>::from_i64(&[&[0, 1], &[0, 0]]);
    let nt = n.transpose();
    o.check(!ge(&n, &nt)?, || format!("{tag}: N ≽ Nᵀ should fail"));
    o.check(!ge(&nt, &n)?, || format!("{tag}: Nᵀ ≽ N should fail"));
    o.check(succeq_by_gram(&n, &nt)?.is_none() && succeq_by_gram(&nt, &n)?.is_none(), || {
        format!("{tag}: Gram decider disagrees on N, Nᵀ")
    });

    let e11 = Matrix::<F>::unit(2, 0, 0);
    let e12 = Matrix::<F>::unit(2, 0, 1);
    let m = meet(&e11, &e12)?;
    let (s11, s12) = (class_descriptor(&e11).shape, class_descriptor(&e12).shape);
    let sm = class_descriptor(&m).shape;
    let union = s11.union(&s12);
    o.check(union.is_subset(&sm.positions) && union != sm.positions, || {
        format!("{tag}: shape union of E11, E12 should be strictly inside the meet's shape")
    });
    o.check(same(&m, &i2)?, || format!("{tag}: E11 ∧ E12 ∼ I"));

    let a = Matrix::<F>::from_i64(&[&[1, 0], &[0, 0]]);
    let b = Matrix::<F>::from_i64(&[&[0, 0], &[0, 1]]);
    let c = Matrix::<F>::from_i64(&[&[1, -1], &[0, 1]]);
    let lhs = box_mult(&join(&a, &b)?, &c)?;
    let rhs = join(&box_mult(&a, &c)?, &box_mult(&b, &c)?)?;
    o.check(!same(&lhs, &rhs)?, || format!("{tag}: ∨ should not distribute over □"));
    o.check(lhs.is_zero() && same(&rhs, &i2)?, || {
        format!("{tag}: (A∨B)□C = 0 and (A□C)∨(B□C) ∼ I")
    });
    Ok(())
}

/// Order laws of `≽ₙ` and `∼ₙ` and agreement of the two deciders.
pub fn relation_laws<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("relation laws"), seed ^ 0x11, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 4);
        let (ra, rb, rc) = (dim(rng, 4), dim(rng, 4), dim(rng, 4));
        let a: Matrix<F> = random_matrix(rng, ra, n);
        let b: Matrix<F> = random_matrix(rng, rb, n);
        let c: Matrix<F> = random_matrix(rng, rc, n);

        o.check(ge(&a, &a)?, || format!("reflexivity fails for {a}"));
        for (x, y) in [(&a, &b), (&b, &a), (&b, &c), (&a, &c)] {
            let holds = ge(x, y)?;
            let by_gram = succeq_by_gram(x, y)?.is_some();
            o.check(holds == by_gram, || format!("deciders disagree on {x} ≽ {y}"));
            let kernel_inclusion = kernel(y).is_subspace_of(&kernel(x));
            if holds {
                o.check(kernel_inclusion, || format!("{x} ≽ {y} without ker inclusion"));
            }
            if F::BACKEND == crate::field::Backend::Q {
                o.check(holds == kernel_inclusion, || {
                    format!("archimedean converse fails for {x}, {y}")
                });
            }
        }
        if ge(&a, &b)? && ge(&b, &c)? {
            o.check(ge(&a, &c)?, || format!("transitivity fails for {a}, {b}, {c}"));
        }
        let x: Matrix<F> = random_bounded_matrix(rng, rb, rc);
        let b2 = x.mul(&c);
        let y: Matrix<F> = random_bounded_matrix(rng, ra, rb);
        let a2 = y.mul(&b2);
        o.check(ge(&b2, &c)? && ge(&a2, &b2)? && ge(&a2, &c)?, || {
            format!("bounded chain {a2} ≽ {b2} ≽ {c} fails")
        });
        o.check(same(&a, &b)? == same(&b, &a)?, || format!("∼ not symmetric on {a}, {b}"));

        let q: Matrix<F> = random_bibounded_matrix(rng, ra);
        let qa = q.mul(&a);
        o.check(same(&qa, &a)?, || format!("QA ≁ A for bibounded Q = {q}, A = {a}"));
        let k = dim(rng, 4);
        let d: Matrix<F> = random_matrix(rng, n, k);
        o.check(same(&qa.mul(&d), &a.mul(&d))?, || {
            format!("right compatibility fails for {qa}, {a}, {d}")
        });
        if same(&a, &b)? {
            o.check(same(&a.mul(&d), &b.mul(&d))?, || {
                format!("right compatibility fails for {a}, {b}, {d}")
            });
        }
        Ok(o)
    })
}

/// Boundedness, the valuation `w`, and the scalar relations `≫`, `≡`.
pub fn valuation_laws<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("valuation laws"), seed ^ 0x99, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 4);
        let s: Matrix<F> = random_matrix(rng, n, n);
        let s2: Matrix<F> = random_matrix(rng, n, n);
        let id = Matrix::<F>::identity(n);
        o.check(is_bounded_matrix(&s) == ge(&s, &id)?, || {
            format!("bounded characterizations disagree on {s}")
        });
        let by_inverse = match inverse(&s) {
            Ok(inv) => is_bounded_matrix(&s) && is_bounded_matrix(&inv),
            Err(_) => false,
        };
        o.check(is_bibounded_matrix(&s) == by_inverse, || {
            format!("bibounded characterizations disagree on {s}")
        });
        o.check(is_bibounded_matrix(&s) == same(&s, &id)?, || {
            format!("bibounded ⇔ ∼ I fails on {s}")
        });
        let norm = max_norm(&s);
        o.check(ge(&s, &id.scale(&norm))?, || format!("A ≽ ‖A‖·I fails for {s}"));
        let tr = s.gram().trace();
        o.check(tr.valuation() == norm.mul(&norm).valuation(), || {
            format!("tr AᵀA and ‖A‖² differ in valuation for {s}")
        });
        let (w1, w2) = (w_valuation(&s), w_valuation(&s2));
        o.check(w_valuation(&s.mul(&s2)) >= w1 + w2, || {
            format!("w(AB) ≥ w(A)+w(B) fails for {s}, {s2}")
        });
        o.check(w_valuation(&s.gram()) == w1 + w1, || format!("w(AᵀA) = 2w(A) fails for {s}"));
        let min_entry = s.entries().map(F::valuation).min().unwrap_or(Valuation::Infinity);
        o.check(w1 == min_entry, || format!("w is not the minimal entry valuation for {s}"));

        let alpha = F::sample_bounded(rng);
        let scaled = s.scale(&alpha);
        let verdict = gg(&scaled, &s)?;
        o.check(verdict.holds, || format!("αA ≫ A fails for α = {alpha}, A = {s}"));
        if let Some(cert) = &verdict.certificate {
            o.check(verify_certificate(&scaled, &s, cert), || "scalar certificate".into());
        }
        let cm: Matrix<F> = random_matrix(rng, n, n);
        for (x, y) in [(&scaled, &s), (&s, &s2)] {
            if gg(x, y)?.holds {
                o.check(ge(&cm.mul(x), &cm.mul(y))?, || format!("≫ without CA ≽ CB on {x}, {y}"));
            }
        }
        let unit = F::sample_bibounded(rng);
        for (x, y) in [(&s, &s2), (&s.scale(&unit), &s), (&scaled, &s)] {
            let both = gg(x, y)?.holds && gg(y, x)?.holds;
            o.check(equiv(x, y)? == both, || format!("≡ disagrees with ≫ both ways on {x}, {y}"));
        }
        Ok(o)
    })
}

/// Agreement of `succeq` with the elimination decider on echelon targets,
/// and the shape monotonicity of echelon pairs.
pub fn gauss_agreement<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("echelon agreement"), seed ^ 0x22, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 4);
        let rank_b = dim(rng, n);
        let b: Matrix<F> = random_echelon(rng, rank_b, n);
        let ra = dim(rng, 4);
        let a: Matrix<F> = match rng.random_range(0..3) {
            0 => random_matrix(rng, ra, n),
            1 => random_bounded_matrix::<F, _>(rng, ra, rank_b).mul(&b),
            _ => random_matrix::<F, _>(rng, ra, rank_b).mul(&b),
        };
        let holds = ge(&a, &b)?;
        o.check(holds == succeq_via_gauss(&a, &b)?, || {
            format!("succeq and elimination disagree on {a} ≽ {b}")
        });
        o.check(gauss_replay_matches(&a), || format!("elimination replay fails on {a}"));

        let (_, e) = bibounded_gauss(&a);
        let ea = e.without_zero_rows();
        if holds && ea.rows() > 0 {
            let (sa, sb) = (shape_of(&ea)?, shape_of(&b)?);
            o.check(sa.is_subset(&sb), || format!("shape({ea}) ⊄ shape({b})"));
            for &(i, k) in &sb.pivots {
                let va = if i < ea.rows() {
                    ea.get(i, k).valuation()
                } else {
                    Valuation::Infinity
                };
                o.check(va >= b.get(i, k).valuation(), || {
                    format!("pivot valuation at ({i}, {k}) decreases from {b} to {ea}")
                });
            }
        }
        Ok(o)
    })
}

/// Positive verdicts re-verify; tampered certificates are rejected.
pub fn certificate_soundness<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("certificates"), seed ^ 0x33, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 4);
        let (ra, rb) = (dim(rng, 4), dim(rng, 4));
        let b: Matrix<F> = random_matrix(rng, rb, n);
        let a: Matrix<F> = if rng.random_bool(0.5) {
            random_bounded_matrix::<F, _>(rng, ra, rb).mul(&b)
        } else {
            random_matrix(rng, ra, n)
        };
        for (x, y) in [(&a, &b), (&b, &a)] {
            let verdict = succeq(x, y)?;
            let Some(cert) = verdict.certificate else { continue };
            o.check(verify_certificate(x, y, &cert), || format!("certificate for {x} ≽ {y} rejected"));
            let Certificate::BoundedMultiplier { c, r } = &cert else { continue };
            let mut low = r.clone();
            let target = |r: &num_bigint::BigInt| {
                let m = y.gram().scale(&F::from_rational(&Rational::from_integer(r.clone())));
                is_psd(&m.sub(&x.gram())).unwrap()
            };
            while low >= num_bigint::BigInt::from(0) && target(&low) {
                low -= 1;
            }
            let lowered = Certificate::BoundedMultiplier { c: c.clone(), r: low };
            o.check(!verify_certificate(x, y, &lowered), || {
                format!("lowered r accepted for {x} ≽ {y}")
            });
            if let Some(j) = (0..y.rows()).find(|&j| y.row(j).iter().any(|v| !v.is_zero())) {
                let i = rng.random_range(0..c.rows());
                let mut bad = c.clone();
                bad.set(i, j, c.get(i, j).add(&F::one()));
                let tampered = Certificate::BoundedMultiplier { c: bad, r: r.clone() };
                o.check(!verify_certificate(x, y, &tampered), || {
                    format!("perturbed multiplier accepted for {x} ≽ {y}")
                });
            }
        }
        let verdict = sim(&a, &b)?;
        if let Some(cert) = &verdict.certificate {
            o.check(verify_certificate(&a, &b, cert), || format!("pair certificate for {a} ∼ {b}"));
        }

        let s: Matrix<F> = random_nonzero_matrix(rng, n, n);
        let alpha = F::sample_bounded(rng);
        let g = gg(&s.scale(&alpha), &s)?;
        if let Some(Certificate::ScalarMultiplier(found)) = &g.certificate {
            let sa = s.scale(&alpha);
            o.check(verify_certificate(&sa, &s, &Certificate::ScalarMultiplier(found.clone())), || {
                format!("scalar certificate for {sa} ≫ {s}")
            });
            let wrong = Certificate::ScalarMultiplier(found.add(&F::one()));
            o.check(!verify_certificate(&sa, &s, &wrong), || "shifted scalar accepted".into());
        }

        let q: Matrix<F> = random_bibounded_matrix(rng, n);
        let ops = elementary_factorization(&q)?;
        let id = Matrix::<F>::identity(n);
        let factors = Certificate::ElementaryFactors(ops.clone());
        o.check(verify_certificate(&q, &id, &factors), || format!("factor certificate for {q}"));
        if !ops.is_empty() {
            let mut bad = ops.clone();
            match bad.iter().position(|op| !matches!(op, ElementaryOp::Swap(..))) {
                Some(p) => {
                    bad[p] = match &bad[p] {
                        ElementaryOp::AddMultiple { target, source, alpha } => ElementaryOp::AddMultiple {
                            target: *target,
                            source: *source,
                            alpha: alpha.add(&F::one()),
                        },
                        ElementaryOp::Scale { row, alpha } => ElementaryOp::Scale {
                            row: *row,
                            alpha: alpha.add(alpha),
                        },
                        swap => swap.clone(),
                    }
                }
                None => {
                    bad.remove(0);
                }
            }
            o.check(!verify_certificate(&q, &id, &Certificate::ElementaryFactors(bad)), || {
                format!("tampered factor list accepted for {q}")
            });
        }
        Ok(o)
    })
}

/// QR invariants and the canonical form over `Q(t)`.
pub fn qr_canonical(seed: u64, cases: usize, transforms: usize, exec: Execution) -> SuiteReport {
    type Qt = RationalFunction;
    run_suite("QR and canonical form [Q(t)]".into(), seed ^ 0x44, cases, exec, move |rng| {
        let mut o = Outcome::default();
        let (m, n) = (dim(rng, 4), dim(rng, 4));
        let a: Matrix<Qt> = random_nonzero_matrix(rng, m, n);
        let qr = qr_decompose(&a)?;
        let (q, r) = (&qr.q, &qr.r);
        let rk = q.cols();
        o.check(q.mul(r) == a, || format!("A ≠ QR for {a}"));
        o.check(rk == rank(&a) && r.rows() == rk, || format!("QR rank mismatch for {a}"));
        let cols: Vec<Vec<Qt>> = (0..rk).map(|j| q.column(j)).collect();
        for i in 0..rk {
            o.check(max_norm(&Matrix::from_rows(m, vec![cols[i].clone()])?).is_one(), || {
                format!("column {i} of Q is not ℓ∞-normalized for {a}")
            });
            for j in 0..i {
                o.check(dot(&cols[i], &cols[j]).is_zero(), || {
                    format!("columns {j}, {i} of Q are not orthogonal for {a}")
                });
            }
        }
        let shape = shape_of(r);
        o.check(shape.is_ok(), || format!("R is not echelon for {a}"));
        if let Ok(shape) = &shape {
            o.check(shape.pivots.len() == r.rows(), || format!("R has zero rows for {a}"));
            o.check(shape.pivots.iter().all(|&(i, k)| r.get(i, k).is_positive()), || {
                format!("R has a nonpositive pivot for {a}")
            });
        }
        let qtq = q.gram();
        let idr = Matrix::<Qt>::identity(rk);
        o.check(psd_leq(&idr, &qtq)? && psd_leq(&qtq, &idr.scale(&Qt::from_i64(m as i64)))?, || {
            format!("I ≤ QᵀQ ≤ mI fails for {a}")
        });
        o.check(same(q, &idr)?, || format!("Q ≁ I for {a}"));
        o.check(same(r, &a)?, || format!("R ≁ A for {a}"));
        o.check(qr_decompose(&a)? == qr, || format!("QR is not deterministic for {a}"));

        let canon = archimedean_canonical_form(&a)?;
        o.check(is_canonical_form(&canon), || format!("canon({a}) = {canon} violates (i)/(ii)"));
        o.check(same(&canon, &a)?, || format!("canon({a}) = {canon} is not equivalent"));
        o.check(archimedean_canonical_form(&canon)? == canon, || {
            format!("canon is not idempotent on {canon}")
        });
        let descriptor = class_descriptor(&a);
        for _ in 0..transforms {
            let p: Matrix<Qt> = random_bibounded_matrix(rng, m);
            let pa = p.mul(&a);
            let other = archimedean_canonical_form(&pa)?;
            o.check(other == canon, || {
                format!("canon(QA) = {other} differs from canon(A) = {canon} for Q = {p}, A = {a}")
            });
            o.check(class_descriptor(&pa) == descriptor, || {
                format!("descriptor changes under Q = {p} for {a}")
            });
        }
        Ok(o)
    })
}

/// Lattice laws modulo `∼ₙ` and the kernel homomorphism.
pub fn lattice_laws<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("lattice laws"), seed ^ 0x55, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 3);
        let (ra, rb, rc) = (dim(rng, 3), dim(rng, 3), dim(rng, 3));
        let a: Matrix<F> = random_matrix(rng, ra, n);
        let b: Matrix<F> = if rng.random_bool(0.3) {
            random_bounded_matrix::<F, _>(rng, rb, ra).mul(&a)
        } else {
            random_matrix(rng, rb, n)
        };
        let c: Matrix<F> = random_matrix(rng, rc, n);

        let ab_meet = meet(&a, &b)?;
        let ab_join = join(&a, &b)?;
        o.check(same(&meet(&a, &a)?, &a)? && same(&join(&a, &a)?, &a)?, || {
            format!("idempotence fails for {a}")
        });
        o.check(same(&ab_meet, &meet(&b, &a)?)? && same(&ab_join, &join(&b, &a)?)?, || {
            format!("commutativity fails for {a}, {b}")
        });
        o.check(same(&meet(&ab_meet, &c)?, &meet(&a, &meet(&b, &c)?)?)?, || {
            format!("meet associativity fails for {a}, {b}, {c}")
        });
        // Nested joins over Q(t) grow too large for a quick sweep.
        if F::BACKEND == crate::field::Backend::Q {
            o.check(same(&join(&ab_join, &c)?, &join(&a, &join(&b, &c)?)?)?, || {
                format!("join associativity fails for {a}, {b}, {c}")
            });
        }
        o.check(same(&meet(&a, &ab_join)?, &a)?, || format!("a ∧ (a ∨ b) ≁ a for {a}, {b}"));
        o.check(same(&join(&a, &ab_meet)?, &a)?, || format!("a ∨ (a ∧ b) ≁ a for {a}, {b}"));

        let holds = ge(&a, &b)?;
        o.check(holds == same(&ab_meet, &b)?, || format!("A ≽ B ⇔ A∧B ∼ B fails for {a}, {b}"));
        o.check(holds == same(&ab_join, &a)?, || format!("A ≽ B ⇔ A∨B ∼ A fails for {a}, {b}"));
        for x in [&a, &b] {
            o.check(ge(x, &ab_meet)? && ge(&ab_join, x)?, || {
                format!("bounds fail for {x} within {a}, {b}")
            });
        }

        let (ka, kb) = (class_kernel(&a), class_kernel(&b));
        o.check(class_kernel(&ab_meet) == ka.intersection(&kb), || {
            format!("ker(A∧B) ≠ ker A ∩ ker B for {a}, {b}")
        });
        o.check(class_kernel(&ab_join) == ka.sum(&kb), || {
            format!("ker(A∨B) ≠ ker A + ker B for {a}, {b}")
        });
        let q: Matrix<F> = random_bibounded_matrix(rng, ra);
        o.check(class_kernel(&q.mul(&a)) == ka, || format!("kernel not a class invariant for {a}"));

        let union = class_descriptor(&a).shape.union(&class_descriptor(&b).shape);
        o.check(union.is_subset(&class_descriptor(&ab_meet).shape.positions), || {
            format!("shape union not inside shape of meet for {a}, {b}")
        });
        let b_sq: Matrix<F> = random_matrix(rng, ra, n);
        o.check(ge(&a.add(&b_sq), &meet(&a, &b_sq)?)?, || {
            format!("A+B ≽ A∧B fails for {a}, {b_sq}")
        });

        let (ga, gb) = (a.gram(), b.gram());
        o.check(psd_meet(&ga, &gb)? == ab_meet.gram(), || "i(A∧B) ≠ AᵀA + BᵀB".into());
        let pj = psd_join(&ga, &gb)?;
        o.check(psd_approx(&pj, &ab_join.gram())?, || format!("AᵀA:BᵀB ≉ i(A∨B) for {a}, {b}"));
        o.check(kernel(&pj) == kernel(&ga).sum(&kernel(&gb)), || "ker(A:B) ≠ ker A + ker B".into());
        o.check(kernel(&ga.add(&gb)) == kernel(&ga).intersection(&kernel(&gb)), || {
            "ker(A+B) ≠ ker A ∩ ker B".into()
        });
        if psd_succeq(&ga, &gb)? {
            o.check(kernel(&gb).is_subspace_of(&kernel(&ga)), || "⊒ without kernel inclusion".into());
        }
        Ok(o)
    })
}

/// Minors, the trace inequality, inverse monotonicity and monotonicity of
/// the parallel sum.
pub fn numeric_identities<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("numeric identities"), seed ^ 0x66, cases, exec, |rng| {
        let mut o = Outcome::default();
        let rows = dim(rng, 4);
        let cols = dim(rng, rows);
        let a: Matrix<F> = random_matrix(rng, rows, cols);
        let squares = minors(&a, cols)?
            .iter()
            .fold(F::zero(), |acc, m| acc.add(&m.mul(m)));
        o.check(determinant(&a.gram())? == squares, || format!("Binet–Cauchy fails for {a}"));

        let n = dim(rng, 4);
        let p: Matrix<F> = random_psd(rng, n);
        let id = Matrix::<F>::identity(n);
        o.check(psd_leq(&p, &id.scale(&p.trace()))?, || format!("A ≤ (tr A)I fails for {p}"));
        let diagonal_bounded = (0..n).all(|i| p.get(i, i).is_bounded());
        let above = psd_succeq(&p, &id)?;
        o.check(above == diagonal_bounded, || format!("A ⊒ I ⇔ bounded diagonal fails for {p}"));
        let det_bibounded = determinant(&p)?.is_bibounded();
        o.check(psd_approx(&p, &id)? == (above && det_bibounded), || {
            format!("A ≈ I ⇔ A ⊒ I ∧ det bibounded fails for {p}")
        });

        let x: Matrix<F> = random_bibounded_matrix(rng, n);
        let lower = x.gram().add(&random_psd::<F, _>(rng, n));
        let upper = lower.add(&random_psd::<F, _>(rng, n));
        match (inverse(&lower), inverse(&upper)) {
            (Ok(li), Ok(ui)) => o.check(psd_leq(&ui, &li)?, || {
                format!("B⁻¹ ≤ A⁻¹ fails for A = {lower}, B = {upper}")
            }),
            _ => o.check(false, || format!("invertibility lost for {lower} ≤ {upper}")),
        }

        let a0: Matrix<F> = random_psd(rng, n);
        let b0 = a0.add(&random_psd::<F, _>(rng, n));
        let c0: Matrix<F> = random_psd(rng, n);
        o.check(psd_leq(&parallel_sum(&a0, &c0)?, &parallel_sum(&b0, &c0)?)?, || {
            format!("A:C ≤ B:C fails for A = {a0}, B = {b0}, C = {c0}")
        });
        Ok(o)
    })
}

/// Properties of the □ product.
pub fn box_laws<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("box product"), seed ^ 0x77, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 3);
        let a: Matrix<F> = random_matrix(rng, n, n);
        let b: Matrix<F> = random_matrix(rng, n, n);
        let c: Matrix<F> = random_matrix(rng, n, n);
        let ab = box_mult(&a, &b)?;
        o.check(ab == box_mult(&b, &a)?, || format!("□ not commutative on {a}, {b}"));
        o.check(box_mult(&ab, &c)? == box_mult(&a, &box_mult(&b, &c)?)?, || {
            format!("□ not associative on {a}, {b}, {c}")
        });
        o.check(ge(&a.mul(&b), &ab)?, || format!("AB ≽ A□B fails for {a}, {b}"));
        o.check(w_valuation(&ab) == w_valuation(&a) + w_valuation(&b), || {
            format!("w(A□B) ≠ w(A)+w(B) for {a}, {b}")
        });
        let x: Matrix<F> = random_bounded_matrix(rng, n, n);
        let xb = x.mul(&b);
        for (p, q) in [(&xb, &b), (&a, &b)] {
            if ge(p, q)? {
                o.check(ge(&box_mult(p, &c)?, &box_mult(q, &c)?)?, || {
                    format!("□ not ≽-compatible on {p}, {q}, {c}")
                });
            }
        }
        let lhs = box_mult(&meet(&a, &b)?, &c)?;
        let rhs = meet(&box_mult(&a, &c)?, &box_mult(&b, &c)?)?;
        o.check(same(&lhs, &rhs)?, || format!("□ does not distribute over ∧ for {a}, {b}, {c}"));
        Ok(o)
    })
}

/// Exact identities of the linear algebra layer.
pub fn linalg_identities<F: Sample>(seed: u64, cases: usize, exec: Execution) -> SuiteReport {
    run_suite(suite_name::<F>("linear algebra"), seed ^ 0x88, cases, exec, |rng| {
        let mut o = Outcome::default();
        let n = dim(rng, 4);
        let a: Matrix<F> = random_matrix(rng, n, n);
        let sym = a.add(&a.transpose());
        let cd = congruence_diagonalize(&sym)?;
        o.check(cd.p.transpose().mul(&cd.d).mul(&cd.p) == sym, || format!("PᵀDP ≠ A for {sym}"));
        let diag_nonneg = (0..n).all(|i| !cd.d.get(i, i).is_negative());
        o.check(is_psd(&sym)? == diag_nonneg, || format!("PSD test disagrees with D for {sym}"));

        let c = random_psd::<F, _>(rng, n).add(&sym.scale(&F::from_i64(rng.random_range(0..=1))));
        let cp = moore_penrose_symmetric(&c)?;
        o.check(c.mul(&cp).mul(&c) == c && cp.mul(&c).mul(&cp) == cp, || {
            format!("Penrose identities fail for {c}")
        });
        o.check(cp.is_symmetric() && moore_penrose_symmetric(&cp)? == c, || {
            format!("C⁺ not symmetric or not involutive for {c}")
        });
        let (r, k) = (dim(rng, 4), dim(rng, 4));
        let b: Matrix<F> = random_matrix(rng, r, k);
        let bp = moore_penrose_general(&b);
        let proj = bp.mul(&b);
        o.check(b.mul(&bp).mul(&b) == b && proj.mul(&proj) == proj && proj.is_symmetric(), || {
            format!("general pseudo-inverse fails for {b}")
        });

        let (pa, pb) = (random_psd::<F, _>(rng, n), random_psd::<F, _>(rng, n));
        let ps = parallel_sum(&pa, &pb)?;
        o.check(is_psd(&ps)? && psd_leq(&ps, &pa)? && psd_leq(&ps, &pb)?, || {
            format!("A:B is not a lower bound for {pa}, {pb}")
        });
        Ok(o)
    })
}

/// Sizes of a full law-suite run.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    pub relation_cases: usize,
    pub valuation_cases: usize,
    pub echelon_cases: usize,
    pub certificate_cases: usize,
    pub canonical_cases: usize,
    pub canonical_transforms: usize,
    pub lattice_cases: usize,
    pub identity_cases: usize,
    pub box_cases: usize,
    pub linalg_cases: usize,
    pub exec: Execution,
}

impl SweepConfig {
    pub fn full(seed: u64) -> Self {
        SweepConfig {
            seed,
            relation_cases: 500,
            valuation_cases: 200,
            echelon_cases: 200,
            certificate_cases: 200,
            canonical_cases: 300,
            canonical_transforms: 5,
            lattice_cases: 200,
            identity_cases: 200,
            box_cases: 200,
            linalg_cases: 200,
            exec: Execution::default(),
        }
    }

    /// Every count divided by `factor`, at least one case each.
    pub fn scaled_down(self, factor: usize) -> Self {
        let f = |n: usize| (n / factor.max(1)).max(1);
        SweepConfig {
            relation_cases: f(self.relation_cases),
            valuation_cases: f(self.valuation_cases),
            echelon_cases: f(self.echelon_cases),
            certificate_cases: f(self.certificate_cases),
            canonical_cases: f(self.canonical_cases),
            lattice_cases: f(self.lattice_cases),
            identity_cases: f(self.identity_cases),
            box_cases: f(self.box_cases),
            linalg_cases: f(self.linalg_cases),
            ..self
        }
    }
}

fn both<G, H>(reports: &mut Vec<SuiteReport>, q: G, qt: H)
where
    G: FnOnce() -> SuiteReport,
    H: FnOnce() -> SuiteReport,
{
    reports.push(q());
    reports.push(qt());
}

/// Runs every suite on both backends.
pub fn run_all(cfg: &SweepConfig) -> Vec<SuiteReport> {
    type Q = Rational;
    type Qt = RationalFunction;
    let (s, x) = (cfg.seed, cfg.exec);
    let mut out = vec![fixed_counterexamples()];
    both(&mut out, || relation_laws::<Q>(s, cfg.relation_cases, x), || {
        relation_laws::<Qt>(s, cfg.relation_cases, x)
    });
    both(&mut out, || valuation_laws::<Q>(s, cfg.valuation_cases, x), || {
        valuation_laws::<Qt>(s, cfg.valuation_cases, x)
    });
    both(&mut out, || gauss_agreement::<Q>(s, cfg.echelon_cases, x), || {
        gauss_agreement::<Qt>(s, cfg.echelon_cases, x)
    });
    both(&mut out, || certificate_soundness::<Q>(s, cfg.certificate_cases, x), || {
        certificate_soundness::<Qt>(s, cfg.certificate_cases, x)
    });
    out.push(qr_canonical(s, cfg.canonical_cases, cfg.canonical_transforms, x));
    both(&mut out, || lattice_laws::<Q>(s, cfg.lattice_cases, x), || {
        lattice_laws::<Qt>(s, cfg.lattice_cases, x)
    });
    both(&mut out, || numeric_identities::<Q>(s, cfg.identity_cases, x), || {
        numeric_identities::<Qt>(s, cfg.identity_cases, x)
    });
    both(&mut out, || box_laws::<Q>(s, cfg.box_cases, x), || box_laws::<Qt>(s, cfg.box_cases, x));
    both(&mut out, || linalg_identities::<Q>(s, cfg.linalg_cases, x), || {
        linalg_identities::<Qt>(s, cfg.linalg_cases, x)
    });
    out
}
