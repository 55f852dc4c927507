//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite, strictly decreasing list of terms `ω^e · c`
//! where every exponent `e` is itself an `Ordinal` and every coefficient is a
//! positive integer. Because the normal form is unique, structural equality
//! coincides with ordinal equality and the derived lexicographic order on the
//! term list is the ordinal order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// One Cantor normal form term `ω^exp · coeff`.
///
/// Field order matters: the derived `Ord` compares exponents first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coeff: u64,
}

/// An ordinal below ε₀. The empty term list is 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exp: Self::zero(),
                coeff: n,
            }],
        }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Self::monomial(exp, 1)
    }

    /// `ω^exp · coeff`; `coeff == 0` gives zero.
    pub fn monomial(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term { exp, coeff }],
        }
    }

    /// Ordinal sum of the given monomials, in the given order. The input does
    /// not have to be in normal form; absorption is applied as in [`Ordinal::add`].
    pub fn from_terms<I: IntoIterator<Item = (Ordinal, u64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| acc.add(&Self::monomial(e, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    /// The finite tail `j` of `λ + j`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(t) if t.exp.is_zero() => t.coeff,
            _ => 0,
        }
    }

    /// The infinite part `λ` of `λ + j` (zero or a limit ordinal).
    pub fn infinite_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if terms.last().is_some_and(|t| t.exp.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    /// Ordinal sum `self + rhs` (left absorption: `1 + ω = ω`).
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exp >= head.exp)
            .cloned()
            .collect();
        match terms.last_mut() {
            Some(last) if last.exp == head.exp => {
                last.coeff = last
                    .coeff
                    .checked_add(head.coeff)
                    .expect("ordinal coefficient overflow");
                terms.extend(rhs.terms[1..].iter().cloned());
            }
            _ => terms.extend(rhs.terms.iter().cloned()),
        }
        Ordinal { terms }
    }

    /// The unique `b` with `self + b == target`.
    pub fn left_sub(&self, target: &Ordinal) -> Result<Ordinal> {
        if self > target {
            return Err(Error::OrdinalUnderflow {
                lhs: self.clone(),
                rhs: target.clone(),
            });
        }
        let shared = self
            .terms
            .iter()
            .zip(&target.terms)
            .take_while(|(a, c)| a == c)
            .count();
        if shared == self.terms.len() {
            return Ok(Ordinal {
                terms: target.terms[shared..].to_vec(),
            });
        }
        let (a, c) = (&self.terms[shared], &target.terms[shared]);
        let mut terms = Vec::with_capacity(target.terms.len() - shared);
        if a.exp == c.exp {
            // self < target forces a.coeff < c.coeff here
            terms.push(Term {
                exp: c.exp.clone(),
                coeff: c.coeff - a.coeff,
            });
            terms.extend(target.terms[shared + 1..].iter().cloned());
        } else {
            terms.extend(target.terms[shared..].iter().cloned());
        }
        Ok(Ordinal { terms })
    }

    /// `m · self` for a finite left factor `m`: for `m ≥ 1` the infinite part
    /// is unchanged and the finite tail is multiplied.
    pub fn mul_finite(&self, m: u64) -> Ordinal {
        if m == 0 {
            return Ordinal::zero();
        }
        let tail = self
            .finite_part()
            .checked_mul(m)
            .expect("ordinal coefficient overflow");
        Ordinal::add(&self.infinite_part(), &Ordinal::finite(tail))
    }

    /// `(q, r)` with `self = m·q + r` and `r < m`.
    pub fn divmod_finite(&self, m: u64) -> (Ordinal, u64) {
        assert!(m >= 1, "finite divisor must be positive");
        let j = self.finite_part();
        let q = Ordinal::add(&self.infinite_part(), &Ordinal::finite(j / m));
        (q, j % m)
    }

    /// Nonzero with no immediate predecessor. Zero is not a limit here.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exp.is_zero())
    }

    /// Least limit ordinal `≥ self`.
    pub fn least_limit_geq(&self) -> Ordinal {
        if self.is_limit() {
            return self.clone();
        }
        Ordinal::add(&self.infinite_part(), &Ordinal::omega())
    }

    pub fn successor(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        Ordinal::add(&self, &rhs)
    }
}

impl Add<&Ordinal> for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(&self, rhs)
    }
}

impl<'a> Add<&'a Ordinal> for &'a Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &'a Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl PartialEq<u64> for Ordinal {
    fn eq(&self, other: &u64) -> bool {
        self.as_finite() == Some(*other)
    }
}

impl PartialOrd<u64> for Ordinal {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Ordinal::finite(*other)))
    }
}

/// True when the ordinal prints without parentheses after a `^`.
pub(crate) fn is_atomic(a: &Ordinal) -> bool {
    a.as_finite().is_some() || *a == Ordinal::omega()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            if t.exp != Ordinal::one() {
                if is_atomic(&t.exp) {
                    write!(f, "^{}", t.exp)?;
                } else {
                    write!(f, "^({})", t.exp)?;
                }
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

/// A declared shape for a sequence of birthdays, used to compute its limit
/// superior without probing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomPattern {
    /// Every term has the same birthday.
    Constant(Ordinal),
    /// Strictly increasing with the given supremum (a limit ordinal).
    Increasing { sup: Ordinal },
    /// Finitely many leading outliers, then strictly increasing towards `sup`.
    SpikesThenIncreasing { spikes: Vec<Ordinal>, sup: Ordinal },
    /// Apart from finitely many terms no birthday exceeds `max`, and `max`
    /// itself recurs infinitely often.
    RecurringMax { max: Ordinal },
    /// No usable description; callers must fall back to probing.
    Opaque,
}

/// Limit superior of a birthday sequence described by `pattern`.
///
/// This is the limsup of the sequence, not the supremum of the set of values:
/// finitely many spikes never contribute.
pub fn limsup_declared(pattern: &DomPattern) -> Result<Ordinal> {
    match pattern {
        DomPattern::Constant(c) | DomPattern::RecurringMax { max: c } => Ok(c.clone()),
        DomPattern::Increasing { sup } | DomPattern::SpikesThenIncreasing { sup, .. } => {
            if sup.is_limit() {
                Ok(sup.clone())
            } else {
                Err(Error::UnsupportedPattern(format!(
                    "supremum {sup} of a strictly increasing sequence must be a limit ordinal"
                )))
            }
        }
        DomPattern::Opaque => Err(Error::UnsupportedPattern(
            "no declared birthday pattern".into(),
        )),
    }
}
