//! Shared oracles and generators. Everything here is computed independently
//! of the library's own algorithms.
#![allow(dead_code)]

use num::{BigInt, BigRational, One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use surreal::ordinal::Ordinal;
use surreal::surreal::{Run, Sign, SignExpansion};

pub const P: Sign = Sign::Plus;
pub const M: Sign = Sign::Minus;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn signs(text: &str) -> Vec<Sign> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => P,
            '-' => M,
            _ => panic!("bad sign {c}"),
        })
        .collect()
}

pub fn sx(text: &str) -> SignExpansion {
    SignExpansion::from_signs(&signs(text))
}

/// Every sign string of length at most `max_len`, shortest first.
pub fn all_finite(max_len: usize) -> Vec<Vec<Sign>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for w in &layer {
            for s in [M, P] {
                let mut v: Vec<Sign> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Value of a finite sign string: unit steps until the first sign change,
/// then halving steps.
pub fn berlekamp(s: &[Sign]) -> BigRational {
    let mut v = BigRational::zero();
    let Some(&first) = s.first() else {
        return v;
    };
    let unit = |sg: Sign| {
        if sg == P {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    let mut i = 0;
    while i < s.len() && s[i] == first {
        v += unit(first);
        i += 1;
    }
    let mut step = BigRational::new(BigInt::from(1), BigInt::from(2));
    for &sg in &s[i..] {
        v += unit(sg) * &step;
        step /= BigInt::from(2);
    }
    v
}

/// First `n` signs of the interval walk towards `q` (stops early if `q` is
/// reached).
pub fn walk_oracle(q: &BigRational, n: usize) -> Vec<Sign> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let mut out = Vec::new();
    while out.len() < n {
        let c = match (&lo, &hi) {
            (None, None) => BigRational::zero(),
            (Some(l), None) => l + BigRational::one(),
            (None, Some(h)) => h - BigRational::one(),
            (Some(l), Some(h)) => (l + h) / BigInt::from(2),
        };
        if *q == c {
            break;
        }
        if *q > c {
            out.push(P);
            lo = Some(c);
        } else {
            out.push(M);
            hi = Some(c);
        }
    }
    out
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dyadic_to_rational(d: &surreal::surreal::Dyadic) -> BigRational {
    BigRational::new(d.numerator().clone(), BigInt::from(2).pow(d.exponent()))
}

pub fn abs_le(q: &BigRational, bound: i64) -> bool {
    q.abs() <= BigRational::from_integer(BigInt::from(bound))
}

/// Ordinals with at most `max_terms` CNF terms, exponents from `exps`,
/// coefficients in `1..=max_coeff`.
pub fn enumerate_ordinals(exps: &[Ordinal], max_terms: usize, max_coeff: u64) -> Vec<Ordinal> {
    let mut sorted = exps.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.reverse();
    let mut out = vec![Ordinal::zero()];
    // strictly decreasing exponent choices
    fn go(
        exps: &[Ordinal],
        start: usize,
        left: usize,
        max_coeff: u64,
        acc: &mut Vec<(Ordinal, u64)>,
        out: &mut Vec<Ordinal>,
    ) {
        if left == 0 {
            return;
        }
        for i in start..exps.len() {
            for c in 1..=max_coeff {
                acc.push((exps[i].clone(), c));
                out.push(Ordinal::from_terms(acc.iter().cloned()));
                go(exps, i + 1, left - 1, max_coeff, acc, out);
                acc.pop();
            }
        }
    }
    go(&sorted, 0, max_terms, max_coeff, &mut Vec::new(), &mut out);
    out
}

pub fn omega_times(k: u64) -> Ordinal {
    Ordinal::monomial(Ordinal::one(), k)
}

/// A sign expansion as generated, before canonicalization: runs with
/// arbitrary (possibly zero, possibly same-sign-adjacent) lengths and an
/// optional tail word.
#[derive(Debug, Clone)]
pub struct Raw {
    pub runs: Vec<(Sign, Ordinal)>,
    pub tail: Option<Vec<Sign>>,
}

impl Raw {
    pub fn build(&self) -> SignExpansion {
        let runs = self
            .runs
            .iter()
            .map(|(s, l)| Run::new(*s, l.clone()))
            .collect();
        let tail = self
            .tail
            .as_ref()
            .map(|w| surreal::surreal::PeriodicTail::from_word(w).expect("mixed word"));
        SignExpansion::new(runs, tail).expect("tail only after finite runs")
    }

    pub fn dom(&self) -> Ordinal {
        let base = self
            .runs
            .iter()
            .fold(Ordinal::zero(), |a, (_, l)| a.add(l));
        if self.tail.is_some() {
            base.add(&Ordinal::omega())
        } else {
            base
        }
    }

    /// Sign at `pos` read straight off the generated runs and tail.
    pub fn sign_at(&self, pos: &Ordinal) -> Option<Sign> {
        let mut start = Ordinal::zero();
        for (s, l) in &self.runs {
            let end = start.add(l);
            if *pos < end {
                return Some(*s);
            }
            start = end;
        }
        let word = self.tail.as_ref()?;
        let (s, p) = (start.as_finite()?, pos.as_finite()?);
        Some(word[((p - s) % word.len() as u64) as usize])
    }

    /// Positions worth probing: run boundaries and a few steps past them,
    /// limit positions, and the first 64 finite positions.
    pub fn probe_positions(&self) -> Vec<Ordinal> {
        let mut out: Vec<Ordinal> = (0..64).map(Ordinal::finite).collect();
        let mut start = Ordinal::zero();
        for (_, l) in &self.runs {
            start = start.add(l);
            for j in 0..3 {
                out.push(start.add(&Ordinal::finite(j)));
            }
        }
        let w = Ordinal::omega();
        for k in 1..4 {
            out.push(omega_times(k));
            out.push(omega_times(k).add(&Ordinal::one()));
        }
        out.push(Ordinal::omega_pow(Ordinal::finite(2)));
        out.push(Ordinal::omega_pow(w.clone()));
        out.push(Ordinal::omega_pow(Ordinal::finite(2)).add(&w));
        out
    }
}

pub fn arb_sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(P), Just(M)]
}

/// Small ordinals, transfinite ones included.
pub fn arb_len() -> impl Strategy<Value = Ordinal> {
    let w = Ordinal::omega();
    prop_oneof![
        6 => (0u64..5).prop_map(Ordinal::finite),
        1 => Just(w.clone()),
        1 => (1u64..3, 0u64..3).prop_map(|(k, j)| omega_times(k).add(&Ordinal::finite(j))),
        1 => Just(Ordinal::omega_pow(Ordinal::finite(2))),
        1 => Just(Ordinal::omega_pow(w)),
    ]
}

pub fn arb_finite_len() -> impl Strategy<Value = Ordinal> {
    (0u64..5).prop_map(Ordinal::finite)
}

/// A word that contains both signs.
pub fn arb_word() -> impl Strategy<Value = Vec<Sign>> {
    prop::collection::vec(arb_sign(), 2..7).prop_filter("mixed", |w| {
        w.contains(&P) && w.contains(&M)
    })
}

pub fn arb_raw() -> impl Strategy<Value = Raw> {
    let transfinite = prop::collection::vec((arb_sign(), arb_len()), 0..5)
        .prop_map(|runs| Raw { runs, tail: None });
    let periodic = (
        prop::collection::vec((arb_sign(), arb_finite_len()), 0..5),
        arb_word(),
    )
        .prop_map(|(runs, w)| Raw {
            runs,
            tail: Some(w),
        });
    prop_oneof![transfinite, periodic]
}

pub fn arb_expansion() -> impl Strategy<Value = SignExpansion> {
    arb_raw().prop_map(|r| r.build())
}

pub fn arb_finite_signs(max: usize) -> impl Strategy<Value = Vec<Sign>> {
    prop::collection::vec(arb_sign(), 0..=max)
}

/// Order rank of an optional sign: `-` < missing < `+`.
pub fn rank(s: Option<Sign>) -> i8 {
    match s {
        Some(Sign::Minus) => -1,
        None => 0,
        Some(Sign::Plus) => 1,
    }
}
