//! Polynomial interpretations and their verification.

pub mod cert;
pub mod criteria;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

pub use cert::{format_certificate, parse_certificate, Certificate, Checked};
pub use criteria::Strictness;

use crate::numeric::{DomainKind, DomainTag, Rat, Scalar};
use crate::poly::{Poly, PolyError, Var};
use crate::positivity::{excess_at_least, nonneg_on, Verdict};
use crate::trs::{Rule, Term, Trs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("symbol `{0}` has no interpretation")]
    Uninterpreted(String),
    #[error("symbol `{symbol}` has arity {expected} in the rewrite system but {found} in the interpretation")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("interpretation of `{symbol}` mentions `{var}`, which is not one of its parameters")]
    UnknownParameter { symbol: String, var: String },
    #[error("interpretation of `{symbol}` has coefficient {coeff}, not allowed in {domain}")]
    CoefficientNotAdmitted {
        symbol: String,
        coeff: String,
        domain: String,
    },
    #[error("symbol `{0}` is interpreted twice")]
    Duplicate(String),
    #[error("expected an interpretation over {expected}, got {found}")]
    WrongDomain { expected: DomainKind, found: DomainKind },
    #[error("interpretation of `{0}` is not linear")]
    NonLinear(String),
    #[error("step {step}: rule index {index} out of range (residual has {residual} rules)")]
    IndexOutOfRange {
        step: usize,
        index: usize,
        residual: usize,
    },
    #[error("step {0}: no rules removed")]
    EmptyRemoval(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Name of the `i`-th (1-based) parameter of every interpretation polynomial.
pub fn param(i: usize) -> Var {
    Arc::from(format!("x{i}").as_str())
}

pub fn params(arity: usize) -> Vec<Var> {
    (1..=arity).map(param).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolInterp {
    pub arity: usize,
    pub poly: Poly,
}

/// A domain with its margin and one polynomial per function symbol, over
/// the parameters `x1, ..., xn`.
///
/// Coefficients always suit the domain: integers over `N`, rationals over
/// `Q`, and rationals or elements of the declared `Q(sqrt(d))` over `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interp {
    domain: DomainTag,
    symbols: IndexMap<Arc<str>, SymbolInterp>,
}

impl Interp {
    pub fn new(domain: DomainTag) -> Interp {
        Interp { domain, symbols: IndexMap::new() }
    }

    pub fn domain(&self) -> &DomainTag {
        &self.domain
    }

    pub fn get(&self, symbol: &str) -> Option<&SymbolInterp> {
        self.symbols.get(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Arc<str>, &SymbolInterp)> {
        self.symbols.iter()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Adds or replaces the interpretation of `symbol`.
    pub fn insert(&mut self, symbol: &str, arity: usize, poly: Poly) -> Result<(), InterpError> {
        let allowed: BTreeSet<Var> = params(arity).into_iter().collect();
        if let Some(v) = poly.variables().into_iter().find(|v| !allowed.contains(v)) {
            return Err(InterpError::UnknownParameter { symbol: symbol.to_string(), var: v.to_string() });
        }
        if let Some((_, c)) = poly.terms().find(|(_, c)| !self.domain.admits(c)) {
            return Err(InterpError::CoefficientNotAdmitted {
                symbol: symbol.to_string(),
                coeff: c.to_string(),
                domain: self.domain.to_string(),
            });
        }
        self.symbols.insert(Arc::from(symbol), SymbolInterp { arity, poly });
        Ok(())
    }

    /// Parses `body` over the given parameter names and adds it.
    pub fn insert_text(&mut self, symbol: &str, param_names: &[&str], body: &str) -> Result<(), InterpError> {
        let poly: Poly = body.parse()?;
        let renaming: BTreeMap<Var, Var> = param_names
            .iter()
            .enumerate()
            .map(|(i, n)| (Arc::from(*n), param(i + 1)))
            .collect();
        if let Some(v) = poly.variables().into_iter().find(|v| !renaming.contains_key(v)) {
            return Err(InterpError::UnknownParameter { symbol: symbol.to_string(), var: v.to_string() });
        }
        self.insert(symbol, param_names.len(), poly.rename(&renaming))
    }

    /// The same polynomials under another domain tag, re-validating coefficients.
    pub fn retagged(&self, domain: DomainTag) -> Result<Interp, InterpError> {
        let mut out = Interp::new(domain);
        for (name, s) in &self.symbols {
            out.insert(name, s.arity, s.poly.clone())?;
        }
        Ok(out)
    }

    /// Checks that every symbol of `trs` is interpreted with the right arity.
    pub fn covers(&self, trs: &Trs) -> Result<(), InterpError> {
        for f in trs.signature() {
            match self.symbols.get(&f.name) {
                None => return Err(InterpError::Uninterpreted(f.name.to_string())),
                Some(s) if s.arity != f.arity => {
                    return Err(InterpError::ArityMismatch {
                        symbol: f.name.to_string(),
                        expected: f.arity,
                        found: s.arity,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// The polynomial denoted by `t`, over the variables of `t`.
    pub fn eval_term(&self, t: &Term) -> Result<Poly, InterpError> {
        match t {
            Term::Var(v) => Ok(Poly::var(v)),
            Term::App(f, args) => {
                let s = self.symbols.get(f).ok_or_else(|| InterpError::Uninterpreted(f.to_string()))?;
                if s.arity != args.len() {
                    return Err(InterpError::ArityMismatch {
                        symbol: f.to_string(),
                        expected: args.len(),
                        found: s.arity,
                    });
                }
                let mut subst = BTreeMap::new();
                for (i, a) in args.iter().enumerate() {
                    subst.insert(param(i + 1), self.eval_term(a)?);
                }
                Ok(s.poly.compose(&subst)?)
            }
        }
    }

    pub fn check_well_defined(&self) -> Vec<(Arc<str>, Verdict)> {
        self.symbols
            .iter()
            .map(|(name, s)| (name.clone(), nonneg_on(&s.poly, self.domain.carrier())))
            .collect()
    }

    /// Per symbol, one verdict per argument.
    pub fn check_monotone(&self, kind: Strictness) -> Vec<(Arc<str>, Vec<Verdict>)> {
        self.symbols
            .iter()
            .map(|(name, s)| (name.clone(), self.symbol_monotone(s, kind)))
            .collect()
    }

    fn symbol_monotone(&self, s: &SymbolInterp, kind: Strictness) -> Vec<Verdict> {
        let ps = params(s.arity);
        (0..s.arity)
            .map(|i| {
                let others: Vec<Var> = ps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
                criteria::monotone_in(&s.poly, &ps[i], &others, &self.domain, kind)
            })
            .collect()
    }

    pub fn check_rule(&self, rule: &Rule, kind: Strictness) -> Result<RuleCheck, InterpError> {
        let lhs = self.eval_term(&rule.lhs)?;
        let rhs = self.eval_term(&rule.rhs)?;
        let margin = match kind {
            Strictness::Strict => self.domain.margin(),
            Strictness::Weak => Scalar::zero(),
        };
        let verdict = excess_at_least(&lhs, &rhs, &margin, self.domain.carrier());
        Ok(RuleCheck { kind, lhs, rhs, margin, verdict })
    }

    /// Verifies a direct certificate: every interpreted symbol well-defined and
    /// strictly monotone, every rule strictly compatible.
    pub fn check_certificate(&self, trs: &Trs) -> Result<CheckReport, InterpError> {
        self.covers(trs)?;
        let mut report = self.symbol_report(false);
        for (i, r) in trs.rules().iter().enumerate() {
            report.rules.push(RuleReport {
                index: i + 1,
                rule: r.clone(),
                strict: Some(self.check_rule(r, Strictness::Strict)?),
                weak: None,
            });
        }
        Ok(report)
    }

    /// Symbol-level checks; weak monotonicity only when `with_weak`.
    fn symbol_report(&self, with_weak: bool) -> CheckReport {
        let symbols = self
            .symbols
            .iter()
            .map(|(name, s)| SymbolReport {
                name: name.clone(),
                well_defined: nonneg_on(&s.poly, self.domain.carrier()),
                strict: self.symbol_monotone(s, Strictness::Strict),
                weak: with_weak.then(|| self.symbol_monotone(s, Strictness::Weak)),
            })
            .collect();
        CheckReport { domain: self.domain.clone(), symbols, rules: Vec::new() }
    }

    /// Same assignment and margin, tagged as an interpretation over `R`.
    pub fn lift_q_to_r(&self) -> Result<Interp, InterpError> {
        match &self.domain {
            DomainTag::Q { delta } => self.retagged(DomainTag::R { delta: Scalar::Rat(delta.clone()), sqrt: None }),
            other => Err(InterpError::WrongDomain { expected: DomainKind::Q, found: other.kind() }),
        }
    }

    /// A linear interpretation over `N` read as one over `Q` with margin 1.
    pub fn lift_linear_n_to_q(&self) -> Result<Interp, InterpError> {
        if self.domain != DomainTag::N {
            return Err(InterpError::WrongDomain { expected: DomainKind::N, found: self.domain.kind() });
        }
        if let Some((name, _)) = self.symbols.iter().find(|(_, s)| !s.poly.is_linear()) {
            return Err(InterpError::NonLinear(name.to_string()));
        }
        self.retagged(DomainTag::Q { delta: Rat::one() })
    }
}

impl fmt::Display for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", cert::format_interp(self))
    }
}

/// Outcome of comparing the two sides of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub kind: Strictness,
    pub lhs: Poly,
    pub rhs: Poly,
    pub margin: Scalar,
    /// Verdict on `lhs - rhs - margin >= 0`.
    pub verdict: Verdict,
}

impl RuleCheck {
    /// The inequality checked, e.g. `4*x + 8 >= 4*x + 6 + 1`.
    pub fn inequality(&self) -> String {
        if self.margin.is_zero() {
            format!("{} >= {}", self.lhs, self.rhs)
        } else {
            format!("{} >= {} + {}", self.lhs, self.rhs, self.margin)
        }
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Poly {
        &self.lhs - &self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    /// 1-based position in the checked rule list.
    pub index: usize,
    pub rule: Rule,
    pub strict: Option<RuleCheck>,
    pub weak: Option<RuleCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolReport {
    pub name: Arc<str>,
    pub well_defined: Verdict,
    pub strict: Vec<Verdict>,
    pub weak: Option<Vec<Verdict>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Accepted,
    Rejected,
    Unknown,
}

impl Overall {
    pub fn label(self) -> &'static str {
        match self {
            Overall::Accepted => "accepted",
            Overall::Rejected => "rejected",
            Overall::Unknown => "unknown",
        }
    }

    /// Rejected dominates unknown, which dominates accepted.
    fn combine(self, other: Overall) -> Overall {
        match (self, other) {
            (Overall::Rejected, _) | (_, Overall::Rejected) => Overall::Rejected,
            (Overall::Unknown, _) | (_, Overall::Unknown) => Overall::Unknown,
            _ => Overall::Accepted,
        }
    }

    fn of(v: &Verdict) -> Overall {
        match v {
            Verdict::Proved(_) => Overall::Accepted,
            Verdict::Disproved { .. } => Overall::Rejected,
            Verdict::Unknown => Overall::Unknown,
        }
    }
}

/// A condition of a certificate that did not hold (or could not be decided).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    WellDefined { symbol: Arc<str> },
    Monotone { symbol: Arc<str>, arg: usize, kind: Strictness },
    Rule { index: usize, kind: Strictness },
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::WellDefined { symbol } => write!(f, "well-definedness of {symbol}"),
            Site::Monotone { symbol, arg, kind } => {
                write!(f, "{} monotonicity of {symbol} in argument {arg}", kind.label())
            }
            Site::Rule { index, kind } => write!(f, "{} compatibility of rule {index}", kind.label()),
        }
    }
}

/// Verdicts for every condition of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub domain: DomainTag,
    pub symbols: Vec<SymbolReport>,
    pub rules: Vec<RuleReport>,
}

impl CheckReport {
    /// Every required condition with its verdict, in report order.
    pub fn conditions(&self) -> Vec<(Site, &Verdict)> {
        let mut out = Vec::new();
        for s in &self.symbols {
            out.push((Site::WellDefined { symbol: s.name.clone() }, &s.well_defined));
            for (i, v) in s.strict.iter().enumerate() {
                out.push((Site::Monotone { symbol: s.name.clone(), arg: i + 1, kind: Strictness::Strict }, v));
            }
            for (i, v) in s.weak.iter().flatten().enumerate() {
                out.push((Site::Monotone { symbol: s.name.clone(), arg: i + 1, kind: Strictness::Weak }, v));
            }
        }
        for r in &self.rules {
            for c in r.strict.iter().chain(&r.weak) {
                out.push((Site::Rule { index: r.index, kind: c.kind }, &c.verdict));
            }
        }
        out
    }

    pub fn overall(&self) -> Overall {
        self.conditions()
            .iter()
            .fold(Overall::Accepted, |acc, (_, v)| acc.combine(Overall::of(v)))
    }

    pub fn is_accepted(&self) -> bool {
        self.overall() == Overall::Accepted
    }

    /// The first condition that was disproved, else the first unknown one.
    pub fn first_failure(&self) -> Option<(Site, &Verdict)> {
        let conds = self.conditions();
        let pick = conds
            .iter()
            .position(|(_, v)| v.is_disproved())
            .or_else(|| conds.iter().position(|(_, v)| v.is_unknown()))?;
        conds.into_iter().nth(pick)
    }

    pub fn rule(&self, index: usize) -> Option<&RuleReport> {
        self.rules.iter().find(|r| r.index == index)
    }

    pub fn symbol(&self, name: &str) -> Option<&SymbolReport> {
        self.symbols.iter().find(|s| &*s.name == name)
    }

    pub fn has_unknown(&self) -> bool {
        self.conditions().iter().any(|(_, v)| v.is_unknown())
    }
}

/// One step of a rule-removal proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub interp: Interp,
    /// 1-based indices into the residual system at this step, ascending.
    pub removed: Vec<usize>,
}

/// A termination proof by successive rule removal.
///
/// At each step the interpretation must be well-defined, weakly and strictly
/// monotone, weakly compatible with every residual rule and strictly
/// compatible with the removed ones. A step removing every remaining rule
/// may instead be a plain direct certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementalProof {
    pub domain: DomainTag,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    /// 1-based step number.
    pub step: usize,
    /// Residual system before this step.
    pub residual: Trs,
    pub removed: Vec<usize>,
    /// True when the step removes everything and is checked as a direct certificate.
    pub direct: bool,
    pub report: CheckReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementalReport {
    pub steps: Vec<StepReport>,
    /// Rules still present after the last step.
    pub remaining: Trs,
}

impl IncrementalReport {
    pub fn overall(&self) -> Overall {
        let steps = self
            .steps
            .iter()
            .fold(Overall::Accepted, |acc, s| acc.combine(s.report.overall()));
        if self.remaining.is_empty() {
            steps
        } else {
            Overall::Rejected
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.overall() == Overall::Accepted
    }

    /// Step number and site of the first failing condition.
    pub fn first_failure(&self) -> Option<(usize, Site, &Verdict)> {
        self.steps
            .iter()
            .find_map(|s| s.report.first_failure().map(|(site, v)| (s.step, site, v)))
    }
}

/// Checks one removal step against the residual system.
pub fn check_step(interp: &Interp, residual: &Trs, removed: &BTreeSet<usize>) -> Result<(bool, CheckReport), InterpError> {
    interp.covers(residual)?;
    let direct = removed.len() == residual.len();
    let mut report = interp.symbol_report(!direct);
    for (i, r) in residual.rules().iter().enumerate() {
        let strict = removed.contains(&i).then(|| interp.check_rule(r, Strictness::Strict)).transpose()?;
        let weak = (!removed.contains(&i)).then(|| interp.check_rule(r, Strictness::Weak)).transpose()?;
        report.rules.push(RuleReport { index: i + 1, rule: r.clone(), strict, weak });
    }
    Ok((direct, report))
}

/// Verifies a rule-removal proof; accepted iff every step holds and no rule remains.
pub fn check_incremental(proof: &IncrementalProof, trs: &Trs) -> Result<IncrementalReport, InterpError> {
    let mut residual = trs.clone();
    let mut steps = Vec::new();
    for (k, step) in proof.steps.iter().enumerate() {
        if step.interp.domain().kind() != proof.domain.kind() {
            return Err(InterpError::WrongDomain { expected: proof.domain.kind(), found: step.interp.domain().kind() });
        }
        if step.removed.is_empty() {
            return Err(InterpError::EmptyRemoval(k + 1));
        }
        let mut removed = BTreeSet::new();
        for &i in &step.removed {
            if i == 0 || i > residual.len() {
                return Err(InterpError::IndexOutOfRange { step: k + 1, index: i, residual: residual.len() });
            }
            removed.insert(i - 1);
        }
        let (direct, report) = check_step(&step.interp, &residual, &removed)?;
        let next = residual.without(&removed);
        steps.push(StepReport {
            step: k + 1,
            residual,
            removed: step.removed.clone(),
            direct,
            report,
        });
        residual = next;
    }
    Ok(IncrementalReport { steps, remaining: residual })
}

impl IncrementalProof {
    /// Lifts every step from `Q` to `R`.
    pub fn lift_q_to_r(&self) -> Result<IncrementalProof, InterpError> {
        let steps = self
            .steps
            .iter()
            .map(|s| Ok(Step { interp: s.interp.lift_q_to_r()?, removed: s.removed.clone() }))
            .collect::<Result<Vec<_>, InterpError>>()?;
        let domain = match &self.domain {
            DomainTag::Q { delta } => DomainTag::R { delta: Scalar::Rat(delta.clone()), sqrt: None },
            other => return Err(InterpError::WrongDomain { expected: DomainKind::Q, found: other.kind() }),
        };
        Ok(IncrementalProof { domain, steps })
    }
}
