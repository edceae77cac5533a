//! Acceptance criteria 1–7. Runs every criterion in order, prints one
//! PASS/FAIL line for each, then fails if any criterion failed.

use std::time::Duration;

use archiclass::batch::Execution;
use archiclass::field::{Rational, RationalFunction};
use archiclass::sweep::{
    box_laws, certificate_soundness, fixed_counterexamples, gauss_agreement, lattice_laws,
    numeric_identities, qr_canonical, relation_laws, SuiteReport,
};

const SEED: u64 = 0x5eed_2024;

struct Criterion {
    number: u8,
    title: &'static str,
    reports: Vec<SuiteReport>,
    limit: Option<Duration>,
    minimums: Vec<(usize, usize)>,
}

impl Criterion {
    fn elapsed(&self) -> Duration {
        self.reports.iter().map(|r| r.elapsed).sum()
    }

    fn failures(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }

    fn counts_met(&self) -> bool {
        self.minimums
            .iter()
            .all(|&(i, min)| self.reports[i].cases >= min)
    }

    fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed() < l)
    }

    fn passed(&self) -> bool {
        self.failures() == 0 && self.counts_met() && self.within_limit()
    }

    fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let cases: Vec<String> = self
            .reports
            .iter()
            .map(|r| format!("{} × {}", r.cases, r.name))
            .collect();
        let limit = match self.limit {
            Some(l) => format!(" (limit {:.0?})", l),
            None => String::new(),
        };
        format!(
            "criterion {} {verdict}: {}; {}; {} failures; {:.2?}{limit}",
            self.number,
            self.title,
            cases.join(", "),
            self.failures(),
            self.elapsed()
        )
    }
}

#[test]
fn acceptance_criteria() {
    type Q = Rational;
    type Qt = RationalFunction;
    let exec = Execution::default();
    let secs = Duration::from_secs;

    let criteria = vec![
        Criterion {
            number: 1,
            title: "fixed counterexamples",
            reports: vec![fixed_counterexamples()],
            limit: Some(secs(1)),
            minimums: vec![],
        },
        Criterion {
            number: 2,
            title: "randomized relation laws and echelon agreement",
            reports: vec![
                relation_laws::<Q>(SEED, 500, exec),
                relation_laws::<Qt>(SEED, 500, exec),
                gauss_agreement::<Q>(SEED, 200, exec),
                gauss_agreement::<Qt>(SEED, 200, exec),
            ],
            limit: Some(secs(60)),
            minimums: vec![(0, 500), (1, 500), (2, 200), (3, 200)],
        },
        Criterion {
            number: 3,
            title: "certificate soundness and mutation rejection",
            reports: vec![
                certificate_soundness::<Q>(SEED, 200, exec),
                certificate_soundness::<Qt>(SEED, 200, exec),
            ],
            limit: None,
            minimums: vec![],
        },
        Criterion {
            number: 4,
            title: "QR and canonical form, 5 bibounded transforms each",
            reports: vec![qr_canonical(SEED, 300, 5, exec)],
            limit: Some(secs(120)),
            minimums: vec![(0, 300)],
        },
        Criterion {
            number: 5,
            title: "lattice laws modulo ∼",
            reports: vec![
                lattice_laws::<Q>(SEED, 200, exec),
                lattice_laws::<Qt>(SEED, 200, exec),
            ],
            limit: None,
            minimums: vec![(0, 200), (1, 200)],
        },
        Criterion {
            number: 6,
            title: "numeric identities",
            reports: vec![
                numeric_identities::<Q>(SEED, 200, exec),
                numeric_identities::<Qt>(SEED, 200, exec),
            ],
            limit: None,
            minimums: vec![(0, 200), (1, 200)],
        },
        Criterion {
            number: 7,
            title: "box product properties",
            reports: vec![box_laws::<Q>(SEED, 200, exec), box_laws::<Qt>(SEED, 200, exec)],
            limit: None,
            minimums: vec![(0, 200), (1, 200)],
        },
    ];

    let mut failed = Vec::new();
    for c in &criteria {
        println!("{}", c.line());
        if !c.passed() {
            for r in &c.reports {
                for f in r.failures.iter().take(5) {
                    println!("    {}: {f}", r.name);
                }
            }
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
