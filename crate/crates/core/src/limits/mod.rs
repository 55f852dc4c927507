//! Convergence of surreal sequences.
//!
//! A sequence converges to `X` when `X` is born no later than the sequence's
//! limit birthday `b` and, for every depth `α < b`, the terms eventually agree
//! with `X` up to depth `α`. The universally quantified depth is discharged by
//! a finite list of sampled depths plus, for built-in families, per-family
//! certificates giving the stabilization index in closed form.
//!
//! Two readings of "agree up to depth α" are available ([`Policy`]). Under
//! [`Policy::Strict`] the α-restrictions of term and candidate must be equal
//! as functions, so a term shorter than α only agrees with a candidate that is
//! equally short. Under [`Policy::Literal`] both sides are first cut to
//! `min(α, dom term, dom X)`, which lets every prefix of a limit pass as well.

mod families;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordinal::{limsup_declared, DomPattern, Ordinal};
use crate::surreal::{Sign, SignExpansion};

pub use families::{builtin_families, harmonic_stabilization, series, Registry};

pub type TermFn = Arc<dyn Fn(u64) -> SignExpansion + Send + Sync>;

/// Certified stabilization index: for depth α, an `n₀` such that every term
/// with index above `n₀` agrees with the certified limit at depth α (strict
/// policy). `None` when the certificate does not cover α.
pub type StabilizationFn = Arc<dyn Fn(&Ordinal) -> Option<u64> + Send + Sync>;

/// A position whose sign keeps changing along the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscillationWitness {
    pub position: Ordinal,
    pub description: String,
}

#[derive(Clone, Default)]
pub struct Certificates {
    pub dom_pattern: Option<DomPattern>,
    pub candidate_limit: Option<SignExpansion>,
    pub stabilization_index: Option<StabilizationFn>,
    pub oscillation_witness: Option<OscillationWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoteKind {
    /// A published value disagrees with what the definitions compute.
    Erratum,
    /// An informal claim disagrees with the formal definition's verdict.
    Discrepancy,
}

/// Machine-readable annotation attached to a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub kind: NoteKind,
    pub subject: String,
    pub claimed: String,
    pub computed: String,
    pub detail: String,
}

/// An indexed family `n ↦ X_n` of sign expansions.
#[derive(Clone)]
pub struct Sequence {
    name: String,
    first_index: u64,
    term: TermFn,
    certificates: Certificates,
    notes: Vec<Note>,
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sequence")
            .field("name", &self.name)
            .field("first_index", &self.first_index)
            .finish_non_exhaustive()
    }
}

impl Sequence {
    /// A sequence indexed from 1 with no certificates.
    pub fn new<F>(name: impl Into<String>, term: F) -> Self
    where
        F: Fn(u64) -> SignExpansion + Send + Sync + 'static,
    {
        Sequence {
            name: name.into(),
            first_index: 1,
            term: Arc::new(term),
            certificates: Certificates::default(),
            notes: Vec::new(),
        }
    }

    pub fn starting_at(mut self, first_index: u64) -> Self {
        self.first_index = first_index;
        self
    }

    pub fn with_dom_pattern(mut self, p: DomPattern) -> Self {
        self.certificates.dom_pattern = Some(p);
        self
    }

    pub fn with_candidate(mut self, x: SignExpansion) -> Self {
        self.certificates.candidate_limit = Some(x);
        self
    }

    pub fn with_stabilization<F>(mut self, f: F) -> Self
    where
        F: Fn(&Ordinal) -> Option<u64> + Send + Sync + 'static,
    {
        self.certificates.stabilization_index = Some(Arc::new(f));
        self
    }

    pub fn with_oscillation(mut self, position: Ordinal, description: impl Into<String>) -> Self {
        self.certificates.oscillation_witness = Some(OscillationWitness {
            position,
            description: description.into(),
        });
        self
    }

    pub fn with_note(mut self, note: Note) -> Self {
        self.notes.push(note);
        self
    }

    /// Drops every certificate, leaving only the term function.
    pub fn blackbox(&self) -> Self {
        Sequence {
            certificates: Certificates::default(),
            ..self.clone()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn first_index(&self) -> u64 {
        self.first_index
    }

    pub fn term(&self, n: u64) -> SignExpansion {
        (self.term)(n)
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    /// Indices probed for a horizon: `horizon` consecutive indices from the first.
    pub fn probe_indices(&self, horizon: u64) -> std::ops::Range<u64> {
        self.first_index..self.first_index + horizon
    }

    /// The first `horizon` terms with their indices, evaluated in parallel.
    pub fn probe(&self, horizon: u64) -> Vec<(u64, SignExpansion)> {
        self.probe_indices(horizon)
            .into_par_iter()
            .map(|n| (n, self.term(n)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    Strict,
    Literal,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Strict => "strict",
            Policy::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone)]
pub struct LimitConfig {
    pub policy: Policy,
    /// Number of terms probed.
    pub horizon: u64,
    /// Sampled depths α, all below the limit birthday.
    pub depth_samples: Vec<Ordinal>,
    /// Upper bound on term evaluations.
    pub probe_budget: u64,
    /// Candidates tested under the literal policy; defaults to the strict
    /// candidate and its restrictions to each sampled depth.
    pub candidate_pool: Option<Vec<SignExpansion>>,
}

impl LimitConfig {
    pub const DEFAULT_PROBE_BUDGET: u64 = 4096;

    pub fn new(policy: Policy, horizon: u64, depth_samples: Vec<Ordinal>) -> Self {
        LimitConfig {
            policy,
            horizon,
            depth_samples,
            probe_budget: Self::DEFAULT_PROBE_BUDGET,
            candidate_pool: None,
        }
    }

    /// Horizon 64 with finite depths `1..=16`.
    pub fn standard(policy: Policy) -> Self {
        Self::new(policy, 64, (1..=16).map(Ordinal::finite).collect())
    }

    pub fn with_pool(mut self, pool: Vec<SignExpansion>) -> Self {
        self.candidate_pool = Some(pool);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth_samples.is_empty() {
            return Err(Error::InvalidConfig("depth_samples must be nonempty".into()));
        }
        if self.horizon < 2 {
            return Err(Error::InvalidConfig("horizon must be at least 2".into()));
        }
        if self.horizon > self.probe_budget {
            return Err(Error::InvalidConfig(format!(
                "horizon {} exceeds the probe budget {}",
                self.horizon, self.probe_budget
            )));
        }
        Ok(())
    }
}

/// Depth samples used when none are given: `1..=16` below ω, otherwise a
/// spread of finite depths and depths of the form `ω·k + j` below `b`.
pub fn default_depths(b: &Ordinal) -> Vec<Ordinal> {
    if *b == Ordinal::omega() {
        return (1..=16).map(Ordinal::finite).collect();
    }
    let w = Ordinal::omega();
    let mut out: Vec<Ordinal> = (1..=8).map(Ordinal::finite).collect();
    for k in 1..=3 {
        for j in [0, 1, 5] {
            out.push(Ordinal::monomial(Ordinal::one(), k).add(&Ordinal::finite(j)));
        }
    }
    let w2 = Ordinal::omega_pow(Ordinal::finite(2));
    out.extend([w2.clone(), w2.add(&Ordinal::one()), w2.add(&w), Ordinal::omega_pow(w)]);
    out.retain(|a| a < b);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Certified,
    Heuristic,
}

/// Birthdays of the first `horizon` terms.
pub fn birthday_probe(s: &Sequence, horizon: u64) -> Vec<Ordinal> {
    s.probe_indices(horizon)
        .into_par_iter()
        .map(|n| s.term(n).dom())
        .collect()
}

/// Least limit ordinal at or above the limsup of the birthdays.
///
/// Certified when the family declares its birthday pattern; otherwise the
/// maximum over the second half of the probe stands in for the limsup.
pub fn limit_birthday(s: &Sequence, horizon: u64) -> (Ordinal, Exactness) {
    if let Some(p) = &s.certificates.dom_pattern {
        if let Ok(limsup) = limsup_declared(p) {
            return (limsup.least_limit_geq(), Exactness::Certified);
        }
    }
    let doms = birthday_probe(s, horizon.max(1));
    let tail_max = doms[doms.len() / 2..]
        .iter()
        .max()
        .cloned()
        .unwrap_or_default();
    (tail_max.least_limit_geq(), Exactness::Heuristic)
}

fn agrees(term: &SignExpansion, x: &SignExpansion, depth: &Ordinal, policy: Policy) -> bool {
    match policy {
        Policy::Strict => term.restrict(depth) == x.restrict(depth),
        Policy::Literal => {
            let beta = depth.clone().min(term.dom()).min(x.dom());
            term.restrict(&beta) == x.restrict(&beta)
        }
    }
}

/// Outcome of testing one candidate at one depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum CandidateCheck {
    /// Every probed term with index above `n0` agrees.
    Pass { n0: u64 },
    /// The last probed term disagrees; `counterexample` is its index.
    Fail { counterexample: u64 },
}

/// Index of the latest probed term that disagrees, if any.
fn latest_violation(
    terms: &[(u64, SignExpansion)],
    x: &SignExpansion,
    depth: &Ordinal,
    policy: Policy,
) -> Option<u64> {
    terms
        .iter()
        .rev()
        .find(|(_, t)| !agrees(t, x, depth, policy))
        .map(|(n, _)| *n)
}

/// [`verify_candidate`] on terms that were already probed.
pub fn check_terms(
    terms: &[(u64, SignExpansion)],
    x: &SignExpansion,
    depth: &Ordinal,
    policy: Policy,
) -> CandidateCheck {
    let last = terms.last().map(|(n, _)| *n).unwrap_or(0);
    let first = terms.first().map(|(n, _)| *n).unwrap_or(0);
    match latest_violation(terms, x, depth, policy) {
        Some(v) if v == last => CandidateCheck::Fail { counterexample: v },
        Some(v) => CandidateCheck::Pass { n0: v },
        None => CandidateCheck::Pass {
            n0: first.saturating_sub(1),
        },
    }
}

/// Least `n₀` within the probe such that all probed terms past it agree with
/// `x` at `depth`, or the index of the last probed term if even that disagrees.
pub fn verify_candidate(
    s: &Sequence,
    x: &SignExpansion,
    depth: &Ordinal,
    horizon: u64,
    policy: Policy,
) -> CandidateCheck {
    let terms = s.probe(horizon);
    check_terms(&terms, x, depth, policy)
}

/// Stabilization index found at one sampled depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthCheck {
    pub depth: Ordinal,
    /// The index reported for this depth: the certified one when present.
    pub n0: u64,
    /// What the probe alone shows, if the last probed term agrees.
    pub empirical_n0: Option<u64>,
    pub certified_n0: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitVerdict {
    Converged {
        limit: SignExpansion,
        checks: Vec<DepthCheck>,
        /// True only when the candidate, every depth's `n₀`, and the limit
        /// birthday all come from validated certificates.
        certified: bool,
    },
    NoLimit {
        position: Ordinal,
        witnesses: (u64, u64),
    },
    NotUnique {
        candidates: Vec<SignExpansion>,
    },
    Inconclusive {
        reason: String,
    },
}

impl LimitVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            LimitVerdict::Converged { .. } => "converged",
            LimitVerdict::NoLimit { .. } => "no_limit",
            LimitVerdict::NotUnique { .. } => "not_unique",
            LimitVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn limit(&self) -> Option<&SignExpansion> {
        match self {
            LimitVerdict::Converged { limit, .. } => Some(limit),
            _ => None,
        }
    }
}

fn inconclusive(reason: impl Into<String>) -> LimitVerdict {
    LimitVerdict::Inconclusive {
        reason: reason.into(),
    }
}

/// The oscillation witness holds on the probe if the sign at its position
/// takes more than one value over the second half. Returns two such indices.
fn observe_oscillation(terms: &[(u64, SignExpansion)], position: &Ordinal) -> Option<(u64, u64)> {
    let half = &terms[terms.len() / 2..];
    let (last_n, last) = half.last()?;
    let last_sign = last.sign_at(position);
    half.iter()
        .rev()
        .find(|(_, t)| t.sign_at(position) != last_sign)
        .map(|(n, _)| (*n, *last_n))
}

/// Proposes a limit from the probe alone: prefixes that are constant over
/// the second half at every sampled depth, extended either by stretching the
/// final run up to the limit birthday or by repeating a detected period.
fn candidate_from_probe(
    terms: &[(u64, SignExpansion)],
    b: &Ordinal,
    depths: &[Ordinal],
) -> Vec<SignExpansion> {
    let half = &terms[terms.len() / 2..];
    let mut sorted = depths.to_vec();
    sorted.sort();
    let mut stable: Option<(Ordinal, SignExpansion)> = None;
    for d in &sorted {
        let first = half[0].1.restrict(d);
        if half.iter().any(|(_, t)| t.restrict(d) != first) {
            break;
        }
        stable = Some((d.clone(), first));
    }
    let Some((depth, prefix)) = stable else {
        return Vec::new();
    };
    if depth != *sorted.last().expect("nonempty") {
        return Vec::new();
    }
    let mut out = Vec::new();
    if prefix.dom() < depth {
        // Terms stopped growing: the sequence is eventually this value.
        out.push(prefix);
        return out;
    }
    if *b == Ordinal::omega() {
        if let Ok(signs) = prefix.to_signs() {
            if let Some(x) = periodic_extension(&signs) {
                out.push(x);
            }
        }
    }
    let runs = prefix.runs();
    if let Some((last, head)) = runs.split_last() {
        let start = head.iter().fold(Ordinal::zero(), |acc, r| acc.add(&r.len));
        if let Ok(len) = start.left_sub(b) {
            let mut stretched = head.to_vec();
            stretched.push(crate::surreal::Run { sign: last.sign, len });
            out.push(SignExpansion::from_runs(stretched));
        }
    }
    out.retain(|x| x.dom() <= *b);
    out
}

/// Shortest period covering at least the second half of `signs`, turned into
/// a periodic tail.
fn periodic_extension(signs: &[Sign]) -> Option<SignExpansion> {
    let n = signs.len();
    for p in 2..=n / 3 {
        let start = n / 2;
        if (start..n - p).all(|i| signs[i] == signs[i + p]) {
            let word = &signs[n - p..];
            let Some(tail) = crate::surreal::PeriodicTail::from_word(word) else {
                // constant word: no periodic tail
                return None;
            };
            let head = SignExpansion::from_signs(&signs[..n - p]);
            return SignExpansion::new(head.runs().to_vec(), Some(tail)).ok();
        }
    }
    None
}

/// Runs the convergence check described in the module docs.
pub fn check_limit(s: &Sequence, cfg: &LimitConfig) -> Result<LimitVerdict> {
    cfg.validate()?;
    let (b, b_exactness) = limit_birthday(s, cfg.horizon);
    if let Some(d) = cfg.depth_samples.iter().find(|d| **d >= b) {
        return Err(Error::DepthOutOfRange {
            depth: d.clone(),
            birthday: b,
        });
    }
    let terms = s.probe(cfg.horizon);

    if let Some(w) = &s.certificates.oscillation_witness {
        if let Some(witnesses) = observe_oscillation(&terms, &w.position) {
            return Ok(LimitVerdict::NoLimit {
                position: w.position.clone(),
                witnesses,
            });
        }
    }

    let (candidate, from_certificate) = match &s.certificates.candidate_limit {
        Some(x) => (x.clone(), true),
        None => {
            let proposals = candidate_from_probe(&terms, &b, &cfg.depth_samples);
            let found = proposals.into_iter().find(|x| {
                cfg.depth_samples.iter().all(|d| {
                    matches!(
                        check_terms(&terms, x, d, Policy::Strict),
                        CandidateCheck::Pass { .. }
                    )
                })
            });
            match found {
                Some(x) => (x, false),
                None => return Ok(inconclusive("no candidate limit is stable over the probe")),
            }
        }
    };
    if candidate.dom() > b {
        return Ok(inconclusive(format!(
            "candidate {candidate} is born after the limit birthday {b}"
        )));
    }

    match cfg.policy {
        Policy::Strict => strict_verdict(s, &terms, candidate, from_certificate, b_exactness, cfg),
        Policy::Literal => Ok(literal_verdict(&terms, candidate, &b, cfg)),
    }
}

fn strict_verdict(
    s: &Sequence,
    terms: &[(u64, SignExpansion)],
    candidate: SignExpansion,
    from_certificate: bool,
    b_exactness: Exactness,
    cfg: &LimitConfig,
) -> Result<LimitVerdict> {
    let stab = s.certificates.stabilization_index.as_ref();
    let mut checks = Vec::with_capacity(cfg.depth_samples.len());
    let mut all_certified = from_certificate && b_exactness == Exactness::Certified;
    for d in &cfg.depth_samples {
        let empirical = match check_terms(terms, &candidate, d, Policy::Strict) {
            CandidateCheck::Pass { n0 } => Some(n0),
            CandidateCheck::Fail { .. } => None,
        };
        let certified = if from_certificate {
            stab.and_then(|f| f(d))
        } else {
            None
        };
        let n0 = match (certified, empirical) {
            (Some(c), _) => {
                // The certificate must hold on every probed term past it.
                if let Some(v) = latest_violation(terms, &candidate, d, Policy::Strict) {
                    if v > c {
                        return Ok(inconclusive(format!(
                            "stabilization certificate claims n0 = {c} at depth {d}, \
                             but term {v} disagrees with {candidate}"
                        )));
                    }
                }
                c
            }
            (None, Some(e)) => {
                all_certified = false;
                e
            }
            (None, None) => {
                let v = terms.last().map(|(n, _)| *n).unwrap_or(0);
                return Ok(inconclusive(format!(
                    "term {v} disagrees with candidate {candidate} at depth {d}"
                )));
            }
        };
        checks.push(DepthCheck {
            depth: d.clone(),
            n0,
            empirical_n0: empirical,
            certified_n0: certified,
        });
    }
    Ok(LimitVerdict::Converged {
        limit: candidate,
        checks,
        certified: all_certified,
    })
}

fn literal_verdict(
    terms: &[(u64, SignExpansion)],
    candidate: SignExpansion,
    b: &Ordinal,
    cfg: &LimitConfig,
) -> LimitVerdict {
    let pool = match &cfg.candidate_pool {
        Some(p) => p.clone(),
        None => {
            let mut p: Vec<SignExpansion> = cfg
                .depth_samples
                .iter()
                .map(|d| candidate.restrict(d))
                .collect();
            p.push(candidate.clone());
            p
        }
    };
    let mut survivors: Vec<(SignExpansion, Vec<DepthCheck>)> = Vec::new();
    for x in pool {
        if x.dom() > *b || survivors.iter().any(|(y, _)| *y == x) {
            continue;
        }
        let mut checks = Vec::new();
        for d in &cfg.depth_samples {
            match check_terms(terms, &x, d, Policy::Literal) {
                CandidateCheck::Pass { n0 } => checks.push(DepthCheck {
                    depth: d.clone(),
                    n0,
                    empirical_n0: Some(n0),
                    certified_n0: None,
                }),
                CandidateCheck::Fail { .. } => break,
            }
        }
        if checks.len() == cfg.depth_samples.len() {
            survivors.push((x, checks));
        }
    }
    match survivors.len() {
        0 => inconclusive("no candidate in the pool passes the literal condition"),
        1 => {
            let (limit, checks) = survivors.pop().expect("one survivor");
            LimitVerdict::Converged {
                limit,
                checks,
                certified: false,
            }
        }
        _ => LimitVerdict::NotUnique {
            candidates: survivors.into_iter().map(|(x, _)| x).collect(),
        },
    }
}
