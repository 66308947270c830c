//! The bundled rewrite systems and their certificates, embedded at compile
//! time from `data/`.
//!
//! Each certificate carries the verdict the checker must reach; rejected ones
//! also carry the first failing condition, as reported by the checker.

use std::collections::BTreeSet;
use std::fmt;

use crate::interp::{parse_certificate, Certificate, Overall};
use crate::numeric::DomainKind;
use crate::trs::{parse_trs, Trs};

/// Every bundled file, by name.
pub const FILES: &[(&str, &str)] = &[
    ("r1.trs", include_str!("../data/r1.trs")),
    ("r2.trs", include_str!("../data/r2.trs")),
    ("r3.trs", include_str!("../data/r3.trs")),
    ("r4.trs", include_str!("../data/r4.trs")),
    ("r5.trs", include_str!("../data/r5.trs")),
    ("r6.trs", include_str!("../data/r6.trs")),
    ("s.trs", include_str!("../data/s.trs")),
    ("r1_nat.cert", include_str!("../data/r1_nat.cert")),
    ("r1_nat_broken.cert", include_str!("../data/r1_nat_broken.cert")),
    ("r1_nat_as_q.cert", include_str!("../data/r1_nat_as_q.cert")),
    ("r1_q_incremental.cert", include_str!("../data/r1_q_incremental.cert")),
    ("r1_q_incremental_broken.cert", include_str!("../data/r1_q_incremental_broken.cert")),
    ("r1_residual_nat.cert", include_str!("../data/r1_residual_nat.cert")),
    ("r2_nat.cert", include_str!("../data/r2_nat.cert")),
    ("r2_nat_broken.cert", include_str!("../data/r2_nat_broken.cert")),
    ("r2_real.cert", include_str!("../data/r2_real.cert")),
    ("r2_real_broken.cert", include_str!("../data/r2_real_broken.cert")),
    ("r3_q.cert", include_str!("../data/r3_q.cert")),
    ("r3_q_broken.cert", include_str!("../data/r3_q_broken.cert")),
    ("r4_real.cert", include_str!("../data/r4_real.cert")),
    ("r4_real_broken.cert", include_str!("../data/r4_real_broken.cert")),
    ("r5_nat_incremental.cert", include_str!("../data/r5_nat_incremental.cert")),
    ("r5_nat_incremental_broken.cert", include_str!("../data/r5_nat_incremental_broken.cert")),
    ("r5_real_incremental.cert", include_str!("../data/r5_real_incremental.cert")),
    ("r5_real_incremental_broken.cert", include_str!("../data/r5_real_incremental_broken.cert")),
    ("r6_nat_incremental.cert", include_str!("../data/r6_nat_incremental.cert")),
    ("r6_nat_incremental_broken.cert", include_str!("../data/r6_nat_incremental_broken.cert")),
];

/// Contents of a bundled file.
pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Accepted,
    /// Rejected, with the first failing condition as printed by the checker.
    RejectedAt(&'static str),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Accepted => f.write_str("accepted"),
            Expected::RejectedAt(site) => write!(f, "rejected at {site}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusCert {
    /// File name in `data/`.
    pub file: &'static str,
    pub certificate: Certificate,
    /// 1-based rules of the entry's system this certificate addresses; all when `None`.
    pub rules: Option<&'static [usize]>,
    pub expected: Expected,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub file: &'static str,
    pub trs: Trs,
    pub certificates: Vec<CorpusCert>,
    /// Copies of certificates with one coefficient changed.
    pub negatives: Vec<CorpusCert>,
    pub docs: &'static str,
}

impl CorpusEntry {
    /// The system a certificate is checked against.
    pub fn target(&self, cert: &CorpusCert) -> Trs {
        match cert.rules {
            None => self.trs.clone(),
            Some(keep) => {
                let keep: BTreeSet<usize> = keep.iter().map(|i| i - 1).collect();
                let drop = (0..self.trs.len()).filter(|i| !keep.contains(i)).collect();
                self.trs.without(&drop)
            }
        }
    }
}

fn cert(file: &'static str, expected: Expected) -> CorpusCert {
    cert_on(file, None, expected)
}

fn cert_on(file: &'static str, rules: Option<&'static [usize]>, expected: Expected) -> CorpusCert {
    let text = self::file(file).unwrap_or_else(|| panic!("{file} is not bundled"));
    let certificate = parse_certificate(text).unwrap_or_else(|e| panic!("{file}: {e}"));
    CorpusCert { file, certificate, rules, expected }
}

fn entry(
    id: &'static str,
    file: &'static str,
    certificates: Vec<CorpusCert>,
    negatives: Vec<CorpusCert>,
    docs: &'static str,
) -> CorpusEntry {
    let text = self::file(file).unwrap_or_else(|| panic!("{file} is not bundled"));
    let trs = parse_trs(text).unwrap_or_else(|e| panic!("{file}: {e}"));
    CorpusEntry { id, file, trs, certificates, negatives, docs }
}

use Expected::{Accepted, RejectedAt};

/// All entries in fixed order: R1 to R6, then S.
pub fn load_corpus() -> Vec<CorpusEntry> {
    vec![
        entry(
            "R1",
            "r1.trs",
            vec![
                cert("r1_nat.cert", Accepted),
                cert("r1_q_incremental.cert", Accepted),
                cert_on("r1_residual_nat.cert", Some(&[2, 8, 12]), Accepted),
            ],
            vec![
                cert("r1_nat_broken.cert", RejectedAt("strict compatibility of rule 7")),
                cert("r1_nat_as_q.cert", RejectedAt("well-definedness of f")),
                cert("r1_q_incremental_broken.cert", RejectedAt("step 2: strict compatibility of rule 3")),
            ],
            "Terminating over N with a quadratic f that is negative on (0, 1/2); \
             over Q only by rule removal.",
        ),
        entry(
            "R2",
            "r2.trs",
            vec![cert("r2_nat.cert", Accepted), cert("r2_real.cert", Accepted)],
            vec![cert("r2_nat_broken.cert", RejectedAt("strict compatibility of rule 22")), cert("r2_real_broken.cert", RejectedAt("strict compatibility of rule 22"))],
            "Terminating over N and over R (with a = sqrt(2)) but not over Q.",
        ),
        entry(
            "R3",
            "r3.trs",
            vec![cert("r3_q.cert", Accepted)],
            vec![cert("r3_q_broken.cert", RejectedAt("strict compatibility of rule 1"))],
            "A single rule, terminating over Q (and R) but not over N.",
        ),
        entry(
            "R4",
            "r4.trs",
            vec![cert("r4_real.cert", Accepted)],
            vec![cert("r4_real_broken.cert", RejectedAt("strict compatibility of rule 6"))],
            "Needs k(x) = sqrt(2)*x + 1 over R. Exact composition gives \
             k(k(k(x))) = 2*sqrt(2)*x + 3 + sqrt(2); hand-simplified tables that drop the \
             sqrt(2) summands show smaller constants, but the exact differences still clear \
             the margin delta = 1.",
        ),
        entry(
            "R5",
            "r5.trs",
            vec![cert("r5_nat_incremental.cert", Accepted), cert("r5_real_incremental.cert", Accepted)],
            vec![
                cert("r5_nat_incremental_broken.cert", RejectedAt("step 1: strict compatibility of rule 8")),
                cert("r5_real_incremental_broken.cert", RejectedAt("step 2: strict compatibility of rule 8")),
            ],
            "The rules of S plus nine more; two-step rule removal over N and over R.",
        ),
        entry(
            "R6",
            "r6.trs",
            vec![cert("r6_nat_incremental.cert", Accepted)],
            vec![cert("r6_nat_incremental_broken.cert", RejectedAt("step 2: strict compatibility of rule 3"))],
            "S plus f(x) -> x; two-step rule removal over N.",
        ),
        entry("S", "s.trs", vec![], vec![], "Auxiliary system shared by R5 and R6."),
    ]
}

/// Result of checking one corpus certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub entry: &'static str,
    /// File name, with ` (lifted to R)` appended for lifted certificates.
    pub name: String,
    pub expected: Expected,
    pub overall: Overall,
    pub site: Option<String>,
    pub unknowns: bool,
    /// Set when the certificate could not be checked at all.
    pub error: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        if self.error.is_some() {
            return false;
        }
        match self.expected {
            Expected::Accepted => self.overall == Overall::Accepted && !self.unknowns,
            Expected::RejectedAt(site) => self.overall == Overall::Rejected && self.site.as_deref() == Some(site),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}: expected {}, got {}", self.entry, self.name, self.expected, self.overall.label())?;
        if let Some(e) = &self.error {
            write!(f, " (error: {e})")?;
        } else if let (false, Some(site)) = (self.overall == Overall::Accepted, &self.site) {
            write!(f, " at {site}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(Outcome::passed)
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed()).count()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        write!(f, "{} checked, {} failed", self.outcomes.len(), self.failures())
    }
}

fn outcome(entry: &'static str, name: String, expected: Expected, cert: &Certificate, trs: &Trs) -> Outcome {
    match cert.check(trs) {
        Ok(c) => Outcome {
            entry,
            name,
            expected,
            overall: c.overall(),
            site: c.failure_site(),
            unknowns: c.has_unknown(),
            error: None,
        },
        Err(e) => Outcome {
            entry,
            name,
            expected,
            overall: Overall::Rejected,
            site: None,
            unknowns: false,
            error: Some(e.to_string()),
        },
    }
}

fn lifted(cert: &Certificate) -> Option<Certificate> {
    if cert.domain().kind() != DomainKind::Q {
        return None;
    }
    match cert {
        Certificate::Direct(i) => i.lift_q_to_r().ok().map(Certificate::Direct),
        Certificate::Incremental(p) => p.lift_q_to_r().ok().map(Certificate::Incremental),
    }
}

/// Checks every certificate of one entry: positives, their `Q` to `R` lifts,
/// then the broken variants.
pub fn verify_entry(e: &CorpusEntry) -> Vec<Outcome> {
    let mut out = Vec::new();
    for c in &e.certificates {
        let trs = e.target(c);
        out.push(outcome(e.id, c.file.to_string(), c.expected, &c.certificate, &trs));
        if let Some(l) = lifted(&c.certificate) {
            out.push(outcome(e.id, format!("{} (lifted to R)", c.file), c.expected, &l, &trs));
        }
    }
    for c in &e.negatives {
        out.push(outcome(e.id, c.file.to_string(), c.expected, &c.certificate, &e.target(c)));
    }
    out
}

/// Checks the whole corpus, one thread per entry, reported in corpus order.
pub fn verify_all() -> Summary {
    let entries = load_corpus();
    let outcomes = std::thread::scope(|scope| {
        let handles: Vec<_> = entries.iter().map(|e| scope.spawn(move || verify_entry(e))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("corpus check panicked"))
            .collect()
    });
    Summary { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_counts() {
        let counts: Vec<(&str, usize)> = load_corpus().iter().map(|e| (e.id, e.trs.len())).collect();
        assert_eq!(
            counts,
            [("R1", 12), ("R2", 26), ("R3", 1), ("R4", 7), ("R5", 20), ("R6", 12), ("S", 11)]
        );
    }

    #[test]
    fn corpus_verifies() {
        let s = verify_all();
        assert!(s.all_passed(), "{s}");
    }
}
