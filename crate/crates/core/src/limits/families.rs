//! Built-in sequence families with closed-form certificates.

use std::collections::BTreeMap;

use num::BigInt;

use super::{Note, NoteKind, Sequence};
use crate::error::{Error, Result};
use crate::notation::parse_surreal;
use crate::ordinal::{DomPattern, Ordinal};
use crate::surreal::{add, from_dyadic, from_rational, Dyadic, Rational, SignExpansion};

/// Partial sums `Σ_{k ≤ n} terms(k)` as a sequence, accumulated exactly.
pub fn series<F>(name: impl Into<String>, terms: F) -> Sequence
where
    F: Fn(u64) -> Rational + Send + Sync + 'static,
{
    Sequence::new(name, move |n| {
        let sum = (1..=n).fold(Rational::zero(), |acc, k| acc + terms(k));
        from_rational(&sum)
    })
}

fn finite_depth(a: &Ordinal) -> Option<u64> {
    a.as_finite()
}

fn omega_sup() -> DomPattern {
    DomPattern::Increasing {
        sup: Ordinal::omega(),
    }
}

pub fn constant(c: SignExpansion) -> Sequence {
    let name = format!("constant:{c}");
    let dom = c.dom();
    let value = c.clone();
    Sequence::new(name, move |_| value.clone())
        .with_dom_pattern(DomPattern::Constant(dom))
        .with_candidate(c)
        .with_stabilization(|_| Some(0))
}

/// `X_n = n`, i.e. `+^n`.
pub fn naturals() -> Sequence {
    Sequence::new("naturals", |n| SignExpansion::from_ordinal(Ordinal::finite(n)))
        .with_dom_pattern(omega_sup())
        .with_candidate(SignExpansion::omega())
        // +^n reaches depth k once n ≥ k
        .with_stabilization(|a| finite_depth(a).map(|k| k.saturating_sub(1)))
}

/// `X_n = 2n`, computed as `n + n` with surreal addition.
pub fn double_naturals() -> Sequence {
    Sequence::new("double_naturals", |n| {
        let x = SignExpansion::from_ordinal(Ordinal::finite(n));
        add(&x, &x).expect("finite operands")
    })
    .with_dom_pattern(omega_sup())
    .with_candidate(SignExpansion::omega())
    .with_stabilization(|a| finite_depth(a).map(|k| k.div_ceil(2).saturating_sub(1)))
}

/// `X_n = 1 - 1/2^n = + - +^(n-1)`.
pub fn geometric() -> Sequence {
    Sequence::new("geometric", |n| {
        let one = Dyadic::integer(1);
        from_dyadic(&(&one - &Dyadic::new(BigInt::from(1), n as u32)))
    })
    .with_dom_pattern(omega_sup())
    .with_candidate(SignExpansion::one_minus_epsilon())
    // birthday n + 1 must reach the depth
    .with_stabilization(|a| finite_depth(a).map(|k| k.saturating_sub(2)))
}

/// `X_n = (-1)^n / 2^n`, indexed from 0: `+, -+, +--, -+++, ...`.
pub fn alternating() -> Sequence {
    Sequence::new("alternating", |n| {
        let mag = Dyadic::new(BigInt::from(1), n as u32);
        from_dyadic(&if n % 2 == 0 { mag } else { -mag })
    })
    .starting_at(0)
    .with_dom_pattern(omega_sup())
    .with_oscillation(
        Ordinal::zero(),
        "the first sign is + for even n and - for odd n",
    )
}

/// `X_n = n / (n + 1)`.
pub fn conway_fractions() -> Sequence {
    Sequence::new("conway_fractions", |n| {
        from_rational(&Rational::new(n, n + 1).expect("nonzero denominator"))
    })
    // finite birthdays at n + 1 = 2^j, birthday ω everywhere else
    .with_dom_pattern(DomPattern::RecurringMax {
        max: Ordinal::omega(),
    })
    .with_candidate(SignExpansion::one_minus_epsilon())
    // Squeeze 1 - 2^-(k-2) < n/(n+1): past n + 1 = 2^(k-2) the first k signs
    // are + - +^(k-2).
    .with_stabilization(|a| {
        let k = finite_depth(a)?;
        if k < 2 {
            return Some(0);
        }
        1u64.checked_shl((k - 2) as u32)
            .filter(|p| p.leading_zeros() > 0)
            .map(|p| p - 1)
    })
}

/// `X_n = n·ω = +^(ω·n)`.
pub fn omega_multiples() -> Sequence {
    let w2 = Ordinal::omega_pow(Ordinal::finite(2));
    Sequence::new("omega_multiples", |n| {
        SignExpansion::from_ordinal(Ordinal::monomial(Ordinal::one(), n))
    })
    .with_dom_pattern(DomPattern::Increasing { sup: w2.clone() })
    .with_candidate(SignExpansion::from_ordinal(w2))
    .with_stabilization(|a| {
        // α = ω·k + j needs ω·n ≥ α
        let terms = a.terms();
        if terms.iter().any(|t| t.exp > Ordinal::one()) {
            return None;
        }
        let k = terms
            .iter()
            .find(|t| t.exp == Ordinal::one())
            .map_or(0, |t| t.coeff);
        let j = a.finite_part();
        Some(if j > 0 { k } else { k.saturating_sub(1) })
    })
    .with_note(Note {
        kind: NoteKind::Erratum,
        subject: "limit birthday".into(),
        claimed: "w^w".into(),
        computed: "w^2".into(),
        detail: "birthdays w*n have limsup w^2, which is already a limit ordinal; \
                 the least limit ordinal at or above it is w^2, not w^w"
            .into(),
    })
}

/// `1, ω^ω, 2, 3, 4, ...`: one transfinite outlier that the limsup ignores.
pub fn spike() -> Sequence {
    let spike = Ordinal::omega_pow(Ordinal::omega());
    let at_two = SignExpansion::from_ordinal(spike.clone());
    Sequence::new("spike", move |n| match n {
        1 => SignExpansion::from_ordinal(Ordinal::one()),
        2 => at_two.clone(),
        _ => SignExpansion::from_ordinal(Ordinal::finite(n - 1)),
    })
    .with_dom_pattern(DomPattern::SpikesThenIncreasing {
        spikes: vec![Ordinal::one(), spike],
        sup: Ordinal::omega(),
    })
    .with_candidate(SignExpansion::omega())
    .with_stabilization(|a| {
        let k = finite_depth(a)?;
        // term 2 is +^(ω^ω) and agrees at every finite depth
        Some(match k {
            0 | 1 => 0,
            2 => 1,
            _ => k,
        })
    })
}

/// `Σ 1`: the partial sums are the naturals.
pub fn ones_series() -> Sequence {
    series("ones_series", |_| Rational::integer(1))
        .with_dom_pattern(omega_sup())
        .with_candidate(SignExpansion::omega())
        .with_stabilization(|a| finite_depth(a).map(|k| k.saturating_sub(1)))
}

/// Largest `n` whose harmonic partial sum is still below `k - 1`, i.e. a
/// stabilization index for depth `k` against `+^ω`.
///
/// Partial sums `H_n` for `n ≥ 2` are not integers, so `H_n` starts with
/// `floor(H_n) + 1` plus signs; depth `k` is all-plus once `H_n > k - 1`.
/// Small depths are found by summation (rounded towards a later index);
/// larger ones use `H_n > ln(n + 1)`.
pub fn harmonic_stabilization(k: u64) -> u64 {
    match k {
        0 | 1 => 0,
        2 => 1,
        _ if k <= 17 => {
            let target = (k - 1) as f64 + 1e-9;
            let mut h = 0.0f64;
            let mut n = 0u64;
            while h < target {
                n += 1;
                h += 1.0 / n as f64;
            }
            n - 1
        }
        _ => ((k - 1) as f64).exp().ceil() as u64,
    }
}

/// `Σ 1/k`.
pub fn harmonic_series() -> Sequence {
    series("harmonic_series", |k| {
        Rational::new(1, k).expect("k ≥ 1")
    })
    // birthdays 1, 3, then ω from H_3 on (H_n is not dyadic for n ≥ 3)
    .with_dom_pattern(DomPattern::RecurringMax {
        max: Ordinal::omega(),
    })
    .with_candidate(SignExpansion::omega())
    .with_stabilization(|a| finite_depth(a).map(harmonic_stabilization))
    .with_note(Note {
        kind: NoteKind::Discrepancy,
        subject: "limit".into(),
        claimed: "divergent (the fractional part of the partial sums never stabilizes)".into(),
        computed: "+^w".into(),
        detail: "the convergence definition only inspects prefixes below the limit \
                 birthday w; the integer part of H_n grows without bound, so every \
                 finite prefix is eventually all-plus and +^w satisfies it"
            .into(),
    })
}

/// Named families, looked up by [`Registry::get`].
pub struct Registry {
    families: BTreeMap<&'static str, fn() -> Sequence>,
}

impl Registry {
    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    /// `constant` is the constant sequence 1; `constant:<expansion>` takes any
    /// value in surreal notation.
    pub fn get(&self, name: &str) -> Result<Sequence> {
        if let Some(text) = name.strip_prefix("constant:") {
            let c = parse_surreal(text).map_err(|_| Error::UnknownFamily(name.into()))?;
            return Ok(constant(c));
        }
        self.families
            .get(name)
            .map(|f| f())
            .ok_or_else(|| Error::UnknownFamily(name.into()))
    }
}

pub fn builtin_families() -> Registry {
    let mut families: BTreeMap<&'static str, fn() -> Sequence> = BTreeMap::new();
    families.insert("constant", || {
        constant(SignExpansion::from_ordinal(Ordinal::one()))
    });
    families.insert("naturals", naturals);
    families.insert("double_naturals", double_naturals);
    families.insert("geometric", geometric);
    families.insert("alternating", alternating);
    families.insert("conway_fractions", conway_fractions);
    families.insert("omega_multiples", omega_multiples);
    families.insert("spike", spike);
    families.insert("ones_series", ones_series);
    families.insert("harmonic_series", harmonic_series);
    Registry { families }
}
