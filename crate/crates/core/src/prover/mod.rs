//! Search for certificates over bounded coefficient grids.
//!
//! Symbols are assigned one at a time in signature order, each ranging over
//! its candidate polynomials in canonical order (see [`grid::candidates`]),
//! so the first certificate found is the least one in that order. A rule is
//! tested as soon as all of its symbols are assigned: a quick
//! floating-point evaluation at sample points discards candidates that
//! clearly violate it, and exact checks run only at the leaves.

pub mod grid;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use crate::interp::check_incremental;
use crate::interp::{param, IncrementalProof, Interp, InterpError, Step, Strictness};
use crate::numeric::{DomainKind, DomainTag, Rat, Scalar, Sign};
use crate::poly::Poly;
use crate::positivity::{excess_at_least, Verdict};
use crate::trs::{Term, Trs};
use grid::Candidate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("the checker rejected a certificate produced by the search: {0}")]
    Unverified(String),
}

/// Bounds of the template space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest polynomial degree, at most 2.
    pub max_degree: u32,
    /// Per-symbol degree limits overriding `max_degree`.
    pub degrees: BTreeMap<String, u32>,
    /// Largest absolute numerator of a coefficient.
    pub max_coeff: i64,
    /// Coefficient denominators over `Q` and `R`; ignored over `N`.
    pub denominators: Vec<i64>,
    /// Margins to try over `Q` and `R`, in order.
    pub deltas: Vec<Rat>,
    /// Radicand of the extension used over `R`; rationals only when `None`.
    pub sqrt: Option<u64>,
    /// Cap on the number of partial assignments visited.
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    /// Cap on the number of steps of a rule-removal proof.
    pub max_steps: usize,
    /// Early rule checks and bounding; turning this off gives the same
    /// results, slowly.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_degree: 2,
            degrees: BTreeMap::new(),
            max_coeff: 2,
            denominators: vec![1],
            deltas: vec![Rat::one()],
            sqrt: None,
            max_nodes: 200_000_000,
            time_limit: None,
            max_steps: 4,
            prune: true,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ProverError> {
        let bad = |m: &str| Err(ProverError::Config(m.to_string()));
        if self.max_degree > 2 || self.degrees.values().any(|&d| d > 2) {
            return bad("degrees above 2 are not supported");
        }
        if self.max_coeff < 1 {
            return bad("the coefficient bound must be positive");
        }
        if self.denominators.is_empty() || self.denominators.iter().any(|&q| q < 1) {
            return bad("denominators must be positive");
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|d| d.sign() != Sign::Positive) {
            return bad("margins must be positive");
        }
        if let Some(d) = self.sqrt {
            if !crate::numeric::is_square_free(d) || d < 2 {
                return bad("the radicand must be a square-free integer of at least 2");
            }
        }
        if self.max_nodes == 0 || self.max_steps == 0 {
            return bad("budgets must be positive");
        }
        Ok(())
    }

    fn degree_of(&self, symbol: &str) -> u32 {
        self.degrees.get(symbol).copied().unwrap_or(self.max_degree)
    }

    fn domains(&self, kind: DomainKind) -> Vec<DomainTag> {
        match kind {
            DomainKind::N => vec![DomainTag::N],
            DomainKind::Q => self.deltas.iter().map(|d| DomainTag::Q { delta: d.clone() }).collect(),
            DomainKind::R => self
                .deltas
                .iter()
                .map(|d| DomainTag::R { delta: Scalar::Rat(d.clone()), sqrt: self.sqrt })
                .collect(),
        }
    }

    fn grid(&self, kind: DomainKind) -> Vec<Scalar> {
        let dens: &[i64] = if kind == DomainKind::N { &[1] } else { &self.denominators };
        let rats = grid::rational_grid(self.max_coeff, dens);
        let sqrt = if kind == DomainKind::R { self.sqrt } else { None };
        grid::scalar_grid(&rats, sqrt)
    }

    /// One-line description of the bounds, used in reports.
    pub fn describe(&self, kind: DomainKind) -> String {
        let mut s = format!("DOMAIN {kind}");
        if kind != DomainKind::N {
            let ds: Vec<String> = self.deltas.iter().map(Rat::to_string).collect();
            let qs: Vec<String> = self.denominators.iter().map(i64::to_string).collect();
            s += &format!(" DELTAS {} DENOMS {}", ds.join(","), qs.join(","));
        }
        if let (DomainKind::R, Some(d)) = (kind, self.sqrt) {
            s += &format!(" SQRT {d}");
        }
        s += &format!(" DEGREE {}", self.max_degree);
        for (f, d) in &self.degrees {
            s += &format!(" DEGREE[{f}] {d}");
        }
        s += &format!(" COEFF {}", self.max_coeff);
        s
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The whole bounded space was searched without success.
    SpaceExhausted,
    /// The node or time budget ran out first.
    BudgetExhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Budget {
    visited: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    exceeded: bool,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Budget {
        Budget {
            visited: 0,
            max_nodes: cfg.max_nodes,
            deadline: cfg.time_limit.map(|t| Instant::now() + t),
            exceeded: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.visited += 1;
        if self.visited > self.max_nodes {
            self.exceeded = true;
        } else if self.visited.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                self.exceeded = Instant::now() >= d;
            }
        }
        !self.exceeded
    }
}

/// A term with symbols and variables replaced by indices.
enum CTerm {
    Var(usize),
    App(usize, Vec<CTerm>),
}

struct CRule {
    lhs: CTerm,
    rhs: CTerm,
    /// Positions of the symbols occurring in the rule.
    symbols: Vec<usize>,
    /// Number of assigned symbols after which the rule is fully determined.
    ready: usize,
    samples: Vec<Vec<f64>>,
}

fn compile(t: &Term, symbols: &HashMap<Arc<str>, usize>, vars: &mut Vec<Arc<str>>) -> CTerm {
    match t {
        Term::Var(v) => {
            let i = vars.iter().position(|w| w == v).unwrap_or_else(|| {
                vars.push(v.clone());
                vars.len() - 1
            });
            CTerm::Var(i)
        }
        Term::App(f, args) => CTerm::App(symbols[f], args.iter().map(|a| compile(a, symbols, vars)).collect()),
    }
}

fn sample_points(nvars: usize, kind: DomainKind) -> Vec<Vec<f64>> {
    if nvars == 0 {
        return vec![Vec::new()];
    }
    let values: &[f64] = match kind {
        DomainKind::N => &[0.0, 1.0, 2.0, 3.0, 5.0, 8.0],
        _ => &[0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 5.0],
    };
    let mut out: Vec<Vec<f64>> = values.iter().map(|&v| vec![v; nvars]).collect();
    if nvars > 1 {
        for i in 0..nvars {
            for &v in &values[1..] {
                let mut p = vec![0.0; nvars];
                p[i] = v;
                out.push(p);
            }
        }
    }
    out
}

/// The search space for one domain tag.
struct Space {
    domain: DomainTag,
    symbols: Vec<(Arc<str>, usize)>,
    cands: Vec<Vec<Candidate>>,
    rules: Vec<CRule>,
    /// Rules determined exactly when `depth` symbols are assigned.
    ready_at: Vec<Vec<usize>>,
    /// Rules not yet determined with `depth` symbols assigned.
    pending_at: Vec<usize>,
    trs: Trs,
    margin: f64,
}

impl Space {
    fn new(trs: &Trs, domain: DomainTag, cfg: &SearchConfig, weak: bool, undecided: &mut u64) -> Space {
        let grid = cfg.grid(domain.kind());
        let symbols: Vec<(Arc<str>, usize)> = trs.signature().iter().map(|f| (f.name.clone(), f.arity)).collect();
        let index: HashMap<Arc<str>, usize> = symbols.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
        let cands = symbols
            .iter()
            .map(|(name, arity)| grid::candidates(*arity, cfg.degree_of(name), &grid, &domain, weak, undecided))
            .collect();
        let rules: Vec<CRule> = trs
            .rules()
            .iter()
            .map(|r| {
                let mut vars = Vec::new();
                let lhs = compile(&r.lhs, &index, &mut vars);
                let rhs = compile(&r.rhs, &index, &mut vars);
                let mut syms = Vec::new();
                r.lhs.symbols(&mut syms);
                r.rhs.symbols(&mut syms);
                let set: BTreeSet<usize> = syms.iter().map(|f| index[&f.name]).collect();
                let symbols: Vec<usize> = set.into_iter().collect();
                let ready = symbols.last().map_or(0, |m| m + 1);
                CRule { lhs, rhs, symbols, ready, samples: sample_points(vars.len(), domain.kind()) }
            })
            .collect();
        let margin = domain.margin().to_f64();
        let n = symbols.len();
        let ready_at = (0..=n)
            .map(|d| (0..rules.len()).filter(|&i| rules[i].ready == d).collect())
            .collect();
        let pending_at = (0..=n).map(|d| rules.iter().filter(|r| r.ready > d).count()).collect();
        Space { domain, symbols, cands, rules, ready_at, pending_at, trs: trs.clone(), margin }
    }

    fn cand(&self, choice: &[usize], sym: usize) -> &Candidate {
        &self.cands[sym][choice[sym]]
    }

    fn eval_f64(&self, t: &CTerm, choice: &[usize], point: &[f64]) -> f64 {
        match t {
            CTerm::Var(i) => point[*i],
            CTerm::App(f, args) if args.len() <= 8 => {
                let mut vals = [0.0; 8];
                for (v, a) in vals.iter_mut().zip(args) {
                    *v = self.eval_f64(a, choice, point);
                }
                self.cand(choice, *f).eval_f64(&vals[..args.len()])
            }
            CTerm::App(f, args) => {
                let vals: Vec<f64> = args.iter().map(|a| self.eval_f64(a, choice, point)).collect();
                self.cand(choice, *f).eval_f64(&vals)
            }
        }
    }

    /// Whether sampling shows that the rule fails weakly, and strictly.
    fn refute(&self, r: &CRule, choice: &[usize]) -> (bool, bool) {
        let mut strict_fails = false;
        for p in &r.samples {
            let l = self.eval_f64(&r.lhs, choice, p);
            let rr = self.eval_f64(&r.rhs, choice, p);
            let tol = 1e-9 * (l.abs() + rr.abs() + 1.0);
            let diff = l - rr;
            if diff < -tol {
                return (true, true);
            }
            if diff < self.margin - tol {
                strict_fails = true;
            }
        }
        (false, strict_fails)
    }

    fn interp(&self, choice: &[usize]) -> Interp {
        let mut out = Interp::new(self.domain.clone());
        for (i, (name, arity)) in self.symbols.iter().enumerate() {
            out.insert(name, *arity, self.cand(choice, i).poly.clone())
                .expect("grid coefficients are admitted by the domain");
        }
        out
    }

    fn eval_exact(&self, t: &Term, choice: &[usize]) -> Poly {
        match t {
            Term::Var(v) => Poly::var(v),
            Term::App(f, args) => {
                let i = self.symbols.iter().position(|(n, _)| n == f).expect("symbol in signature");
                let subst = args
                    .iter()
                    .enumerate()
                    .map(|(k, a)| (param(k + 1), self.eval_exact(a, choice)))
                    .collect();
                self.cand(choice, i).poly.compose(&subst).expect("total substitution")
            }
        }
    }
}

/// Exact verdict classes, cached per rule and relevant assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Proved,
    Disproved,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Stop at the first certificate.
    First,
    /// Count every certificate.
    Count,
    /// Weak compatibility with every rule, as many strict ones as possible.
    Maximal,
    /// Count assignments that would make a removal step.
    CountSteps,
}

impl Goal {
    fn direct(self) -> bool {
        matches!(self, Goal::First | Goal::Count)
    }
}

struct Run<'a> {
    space: &'a Space,
    goal: Goal,
    prune: bool,
    budget: &'a mut Budget,
    choice: Vec<usize>,
    cache: HashMap<(usize, Strictness, Vec<usize>), Class>,
    first: Option<Vec<usize>>,
    count: u64,
    undecided: u64,
    /// Best strict count so far and its assignment (maximal search).
    best: usize,
    best_choice: Option<Vec<usize>>,
    stop: bool,
}

impl<'a> Run<'a> {
    fn new(space: &'a Space, goal: Goal, prune: bool, budget: &'a mut Budget, best: usize) -> Run<'a> {
        Run {
            space,
            goal,
            prune,
            budget,
            choice: vec![0; space.symbols.len()],
            cache: HashMap::new(),
            first: None,
            count: 0,
            undecided: 0,
            best,
            best_choice: None,
            stop: false,
        }
    }

    fn exact(&mut self, rule: usize, kind: Strictness) -> Class {
        let key: Vec<usize> = self.space.rules[rule].symbols.iter().map(|&s| self.choice[s]).collect();
        if let Some(c) = self.cache.get(&(rule, kind, key.clone())) {
            return *c;
        }
        let r = &self.space.trs.rules()[rule];
        let lhs = self.space.eval_exact(&r.lhs, &self.choice);
        let rhs = self.space.eval_exact(&r.rhs, &self.choice);
        let margin = match kind {
            Strictness::Strict => self.space.domain.margin(),
            Strictness::Weak => Scalar::zero(),
        };
        let class = match excess_at_least(&lhs, &rhs, &margin, self.space.domain.carrier()) {
            Verdict::Proved(_) => Class::Proved,
            Verdict::Disproved { .. } => Class::Disproved,
            Verdict::Unknown => Class::Unknown,
        };
        self.cache.insert((rule, kind, key), class);
        class
    }

    fn dfs(&mut self, depth: usize, optimistic: usize) {
        if depth == self.space.symbols.len() {
            self.leaf();
            return;
        }
        for ci in 0..self.space.cands[depth].len() {
            if self.stop || !self.budget.tick() {
                self.stop = true;
                return;
            }
            self.choice[depth] = ci;
            let mut opt = optimistic;
            if self.prune {
                let mut dead = false;
                for &i in &self.space.ready_at[depth + 1] {
                    let (weak_fails, strict_fails) = self.space.refute(&self.space.rules[i], &self.choice);
                    if self.goal.direct() {
                        dead = strict_fails;
                    } else {
                        dead = weak_fails;
                        opt += usize::from(!strict_fails);
                    }
                    if dead {
                        break;
                    }
                }
                if dead {
                    continue;
                }
                if !self.goal.direct() {
                    let pending = self.space.pending_at[depth + 1];
                    let needed = if self.goal == Goal::Maximal { self.best } else { 0 };
                    if opt + pending <= needed {
                        continue;
                    }
                }
            }
            self.dfs(depth + 1, opt);
        }
    }

    fn leaf(&mut self) {
        let n = self.space.rules.len();
        if self.goal.direct() {
            let mut unknown = false;
            for i in 0..n {
                match self.exact(i, Strictness::Strict) {
                    Class::Proved => {}
                    Class::Disproved => return,
                    Class::Unknown => unknown = true,
                }
            }
            if unknown {
                self.undecided += 1;
                return;
            }
            self.count += 1;
            if self.first.is_none() {
                self.first = Some(self.choice.clone());
            }
            if self.goal == Goal::First {
                self.stop = true;
            }
            return;
        }
        let mut strict = 0;
        let mut unknown = false;
        for i in 0..n {
            if self.exact(i, Strictness::Strict) == Class::Proved {
                strict += 1;
                continue;
            }
            match self.exact(i, Strictness::Weak) {
                Class::Proved => {}
                Class::Disproved => return,
                Class::Unknown => unknown = true,
            }
        }
        if unknown {
            self.undecided += 1;
            return;
        }
        match self.goal {
            Goal::Maximal if strict > self.best => {
                self.best = strict;
                self.best_choice = Some(self.choice.clone());
            }
            Goal::CountSteps if strict > 0 => {
                self.count += 1;
                if self.first.is_none() {
                    self.first = Some(self.choice.clone());
                }
            }
            _ => {}
        }
    }
}

fn verify_direct(interp: &Interp, trs: &Trs) -> Result<(), ProverError> {
    let report = interp.check_certificate(trs)?;
    match report.first_failure() {
        None => Ok(()),
        Some((site, _)) => Err(ProverError::Unverified(site.to_string())),
    }
}

/// The first certificate in canonical order, trying the margins of `cfg` in turn.
pub fn search_direct(trs: &Trs, kind: DomainKind, cfg: &SearchConfig) -> Result<Outcome<Interp>, ProverError> {
    cfg.validate()?;
    let mut budget = Budget::new(cfg);
    search_direct_with(trs, kind, cfg, &mut budget)
}

fn search_direct_with(
    trs: &Trs,
    kind: DomainKind,
    cfg: &SearchConfig,
    budget: &mut Budget,
) -> Result<Outcome<Interp>, ProverError> {
    for domain in cfg.domains(kind) {
        let mut undecided = 0;
        let space = Space::new(trs, domain, cfg, false, &mut undecided);
        let mut run = Run::new(&space, Goal::First, cfg.prune, budget, 0);
        run.dfs(0, 0);
        if let Some(choice) = run.first.take() {
            let interp = space.interp(&choice);
            verify_direct(&interp, trs)?;
            return Ok(Outcome::Found(interp));
        }
        if budget.exceeded {
            return Ok(Outcome::BudgetExhausted);
        }
    }
    Ok(Outcome::SpaceExhausted)
}

/// A weakly and strictly monotone interpretation, weakly compatible with
/// every rule, with the most strictly compatible rules (at least one); ties
/// go to the earliest margin, then to the canonically least assignment.
fn search_step(trs: &Trs, kind: DomainKind, cfg: &SearchConfig, budget: &mut Budget) -> Outcome<(Interp, Vec<usize>)> {
    let mut best: Option<(usize, Interp)> = None;
    for domain in cfg.domains(kind) {
        let mut undecided = 0;
        let space = Space::new(trs, domain, cfg, true, &mut undecided);
        let floor = best.as_ref().map_or(0, |(n, _)| *n);
        let mut run = Run::new(&space, Goal::Maximal, cfg.prune, budget, floor);
        run.dfs(0, 0);
        if let Some(choice) = run.best_choice.take() {
            best = Some((run.best, space.interp(&choice)));
        }
        if budget.exceeded {
            return Outcome::BudgetExhausted;
        }
        if best.as_ref().is_some_and(|(n, _)| *n == trs.len()) {
            break;
        }
    }
    match best {
        None => Outcome::SpaceExhausted,
        Some((_, interp)) => {
            let removed = (0..trs.len())
                .filter(|&i| {
                    interp
                        .check_rule(&trs.rules()[i], Strictness::Strict)
                        .is_ok_and(|c| c.verdict.is_proved())
                })
                .map(|i| i + 1)
                .collect();
            Outcome::Found((interp, removed))
        }
    }
}

/// How a rule-removal search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncrementalOutcome {
    Found(IncrementalProof),
    /// No interpretation within bounds removes a rule from `residual`.
    Stuck { steps: Vec<Step>, residual: Trs },
    /// Rules remain after `max_steps` steps.
    StepLimit { steps: Vec<Step>, residual: Trs },
    BudgetExhausted { steps: Vec<Step> },
}

impl IncrementalOutcome {
    pub fn proof(&self) -> Option<&IncrementalProof> {
        match self {
            IncrementalOutcome::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Greedy rule removal: at each step the interpretation removing the most
/// rules, until none remain. When no removal step exists, a direct
/// certificate for the residual system is tried as the last step.
pub fn search_incremental(trs: &Trs, kind: DomainKind, cfg: &SearchConfig) -> Result<IncrementalOutcome, ProverError> {
    cfg.validate()?;
    let mut budget = Budget::new(cfg);
    let mut residual = trs.clone();
    let mut steps: Vec<Step> = Vec::new();
    while !residual.is_empty() {
        if steps.len() == cfg.max_steps {
            return Ok(IncrementalOutcome::StepLimit { steps, residual });
        }
        let (interp, removed) = match search_step(&residual, kind, cfg, &mut budget) {
            Outcome::Found(found) => found,
            Outcome::BudgetExhausted => return Ok(IncrementalOutcome::BudgetExhausted { steps }),
            Outcome::SpaceExhausted => match search_direct_with(&residual, kind, cfg, &mut budget)? {
                Outcome::Found(i) => (i, (1..=residual.len()).collect()),
                Outcome::BudgetExhausted => return Ok(IncrementalOutcome::BudgetExhausted { steps }),
                Outcome::SpaceExhausted => return Ok(IncrementalOutcome::Stuck { steps, residual }),
            },
        };
        let drop: BTreeSet<usize> = removed.iter().map(|i| i - 1).collect();
        residual = residual.without(&drop);
        steps.push(Step { interp, removed });
    }
    let domain = steps.first().map_or_else(|| cfg.domains(kind)[0].clone(), |s| s.interp.domain().clone());
    let proof = IncrementalProof { domain, steps };
    let report = check_incremental(&proof, trs)?;
    if !report.is_accepted() {
        let site = report.first_failure().map_or("rules remain".to_string(), |(k, s, _)| format!("step {k}: {s}"));
        return Err(ProverError::Unverified(site));
    }
    Ok(IncrementalOutcome::Found(proof))
}

/// Result of enumerating a whole bounded template space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustionReport {
    pub bounds: String,
    /// Whether removal steps were counted instead of direct certificates.
    pub incremental: bool,
    /// False when the budget ran out first.
    pub complete: bool,
    pub visited: u64,
    pub certificates: u64,
    /// Candidates that could be neither confirmed nor refuted.
    pub undecided: u64,
    /// The first certificate (or removal step) found, if any.
    pub example: Option<Interp>,
}

impl ExhaustionReport {
    /// True when every candidate was decided and the budget sufficed.
    pub fn is_exhaustive(&self) -> bool {
        self.complete && self.undecided == 0
    }
}

impl fmt::Display for ExhaustionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.is_exhaustive() { "EXHAUSTED" } else { "INCONCLUSIVE" };
        let what = if self.incremental { "STEPS" } else { "CERTS" };
        write!(f, "{head} {} VISITED {} {what} {}", self.bounds, self.visited, self.certificates)?;
        if self.undecided > 0 {
            write!(f, " UNDECIDED {}", self.undecided)?;
        }
        writeln!(f)?;
        if !self.complete {
            write!(f, "NOTE budget ran out before the space was covered")
        } else {
            write!(f, "NOTE covers only the bounds above; not a proof that no certificate exists")
        }
    }
}

/// Enumerates every candidate within the bounds and counts direct
/// certificates, or with `incremental` the interpretations that would make a
/// valid first removal step.
pub fn exhaustion_report(
    trs: &Trs,
    kind: DomainKind,
    cfg: &SearchConfig,
    incremental: bool,
) -> Result<ExhaustionReport, ProverError> {
    cfg.validate()?;
    let mut budget = Budget::new(cfg);
    let goal = if incremental { Goal::CountSteps } else { Goal::Count };
    let mut certificates = 0;
    let mut undecided = 0;
    let mut example = None;
    for domain in cfg.domains(kind) {
        let space = Space::new(trs, domain, cfg, incremental, &mut undecided);
        let mut run = Run::new(&space, goal, cfg.prune, &mut budget, 0);
        run.dfs(0, 0);
        certificates += run.count;
        undecided += run.undecided;
        if example.is_none() {
            example = run.first.as_ref().map(|c| space.interp(c));
        }
        if budget.exceeded {
            break;
        }
    }
    if let (Some(i), false) = (&example, incremental) {
        verify_direct(i, trs)?;
    }
    Ok(ExhaustionReport {
        bounds: cfg.describe(kind),
        incremental,
        complete: !budget.exceeded,
        visited: budget.visited,
        certificates,
        undecided,
        example,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trs::parse_trs;

    fn trs(s: &str) -> Trs {
        parse_trs(s).unwrap()
    }

    fn small(max_degree: u32, max_coeff: i64) -> SearchConfig {
        SearchConfig { max_degree, max_coeff, ..SearchConfig::default() }
    }

    #[test]
    fn projection_rule() {
        let t = trs("(VAR x) (RULES f(x) -> x)");
        let i = search_direct(&t, DomainKind::N, &small(1, 2)).unwrap().found().unwrap();
        assert_eq!(i.get("f").unwrap().poly.to_string(), "x1 + 1");
    }

    #[test]
    fn empty_system() {
        let t = trs("(RULES )");
        let i = search_direct(&t, DomainKind::N, &small(1, 1)).unwrap().found().unwrap();
        assert!(i.is_empty());
    }

    #[test]
    fn slow_mode_agrees() {
        let t = trs("(VAR x) (RULES f(g(x)) -> g(f(x)) f(x) -> x)");
        for kind in [DomainKind::N, DomainKind::Q] {
            let mut cfg = small(1, 2);
            cfg.denominators = vec![1, 2];
            let fast = search_direct(&t, kind, &cfg).unwrap();
            cfg.prune = false;
            assert_eq!(fast, search_direct(&t, kind, &cfg).unwrap());
        }
    }

    #[test]
    fn budget_is_reported() {
        let t = trs("(VAR x) (RULES f(a) -> f(g(a)))");
        let cfg = SearchConfig { max_nodes: 10, ..small(2, 2) };
        assert_eq!(search_direct(&t, DomainKind::N, &cfg).unwrap(), Outcome::BudgetExhausted);
    }

    #[test]
    fn invalid_config() {
        let cfg = SearchConfig { max_degree: 3, ..SearchConfig::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn incremental_single_rule() {
        let t = trs("(VAR x) (RULES f(x) -> x)");
        let out = search_incremental(&t, DomainKind::N, &small(1, 2)).unwrap();
        let p = out.proof().unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.steps[0].removed, vec![1]);
    }

    #[test]
    fn exhaustion_counts() {
        let t = trs("(VAR x) (RULES f(x) -> x)");
        let r = exhaustion_report(&t, DomainKind::N, &small(1, 2), false).unwrap();
        // x + 1, 2x + 1, x + 2, 2x + 2
        assert_eq!(r.certificates, 4);
        assert!(r.is_exhaustive());
        let r = exhaustion_report(&trs("(RULES f(a) -> f(g(a)))"), DomainKind::N, &small(2, 2), false).unwrap();
        assert_eq!(r.certificates, 0);
        assert!(r.to_string().starts_with("EXHAUSTED DOMAIN N DEGREE 2 COEFF 2 VISITED"));
    }
}
