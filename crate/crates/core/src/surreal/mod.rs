//! Surreal numbers as sign expansions.
//!
//! A [`SignExpansion`] is a function from an ordinal (its birthday) to
//! `{+, -}`, stored as maximal runs of equal signs with ordinal lengths,
//! optionally followed by an ω-repeated periodic word. Every value has a
//! unique canonical form, so derived equality is pointwise equality.

mod arith;
mod numeric;
mod tail;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

pub use arith::{
    add, add_with, left_options, left_set, right_options, right_set, simplest_between, Memo,
};
pub use numeric::{from_dyadic, from_rational, to_dyadic, Dyadic, Rational};
pub use tail::{PeriodicTail, MAX_SPELLED_PERIOD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// A maximal block of equal signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Run {
    pub sign: Sign,
    pub len: Ordinal,
}

impl Run {
    pub fn new(sign: Sign, len: impl Into<Ordinal>) -> Self {
        Run {
            sign,
            len: len.into(),
        }
    }
}

/// A surreal number given by its sign expansion, in canonical form.
///
/// Canonical form: adjacent runs have opposite signs and positive length; a
/// periodic tail only follows finite runs, and it starts at the earliest
/// position where the periodic part begins on a sign change.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SignExpansion {
    runs: Vec<Run>,
    tail: Option<PeriodicTail>,
}

/// Where two expansions first disagree, and what each holds there
/// (`None` = past the end of that expansion).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Difference {
    pub position: Ordinal,
    pub left: Option<Sign>,
    pub right: Option<Sign>,
}

impl SignExpansion {
    /// Zero, the empty expansion.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds the canonical form of `runs` followed by `tail`.
    ///
    /// Fails only when a tail follows an infinite run, which would put the
    /// periodic part beyond position ω.
    pub fn new(runs: Vec<Run>, tail: Option<PeriodicTail>) -> Result<Self> {
        let mut merged: Vec<Run> = Vec::with_capacity(runs.len());
        for run in runs {
            push_run(&mut merged, run.sign, run.len);
        }
        let Some(mut tail) = tail else {
            return Ok(SignExpansion {
                runs: merged,
                tail: None,
            });
        };
        if let Some(r) = merged.iter().find(|r| !r.len.is_finite()) {
            return Err(Error::NotRepresentable(format!(
                "periodic tail after a run of length {}",
                r.len
            )));
        }
        // Pull signs from the runs back into the tail while that keeps it periodic.
        while let Some(last) = merged.last_mut() {
            let Some(t) = tail.rotate_back(last.sign) else {
                break;
            };
            tail = t;
            let len = last.len.as_finite().expect("finite run");
            if len == 1 {
                merged.pop();
            } else {
                last.len = Ordinal::finite(len - 1);
            }
        }
        // Then push signs out until the tail starts on a sign change.
        loop {
            let first = tail.first();
            let seam_ok = first != tail.last() && merged.last().is_none_or(|r| r.sign != first);
            if seam_ok {
                break;
            }
            push_run(&mut merged, first, Ordinal::one());
            tail = tail.advance(1);
        }
        Ok(SignExpansion {
            runs: merged,
            tail: Some(tail),
        })
    }

    pub fn from_runs(runs: Vec<Run>) -> Self {
        Self::new(runs, None).expect("runs without a tail are always representable")
    }

    /// `+^a`.
    pub fn from_ordinal(a: Ordinal) -> Self {
        Self::from_runs(vec![Run { sign: Sign::Plus, len: a }])
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut runs = Vec::new();
        for &s in signs {
            push_run(&mut runs, s, Ordinal::one());
        }
        SignExpansion { runs, tail: None }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn tail(&self) -> Option<&PeriodicTail> {
        self.tail.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.runs.is_empty() && self.tail.is_none()
    }

    /// Birthday: the length of the expansion.
    pub fn dom(&self) -> Ordinal {
        let body = self
            .runs
            .iter()
            .fold(Ordinal::zero(), |acc, r| acc.add(&r.len));
        if self.tail.is_some() {
            body.add(&Ordinal::omega())
        } else {
            body
        }
    }

    pub fn is_finite(&self) -> bool {
        self.dom().is_finite()
    }

    /// Signs of a finite expansion.
    pub fn to_signs(&self) -> Result<Vec<Sign>> {
        let dom = self.dom();
        let n = dom.as_finite().ok_or(Error::InfiniteExpansion {
            op: "flattening",
            dom: dom.clone(),
        })?;
        let mut out = Vec::with_capacity(n as usize);
        for r in &self.runs {
            let len = r.len.as_finite().expect("finite birthday has finite runs");
            out.extend(std::iter::repeat_n(r.sign, len as usize));
        }
        Ok(out)
    }

    /// `self(a)`, or `None` when `a` is outside the domain.
    pub fn sign_at(&self, a: &Ordinal) -> Option<Sign> {
        let mut pos = Ordinal::zero();
        for r in &self.runs {
            let end = pos.add(&r.len);
            if *a < end {
                return Some(r.sign);
            }
            pos = end;
        }
        let tail = self.tail.as_ref()?;
        let offset = pos.left_sub(a).ok()?.as_finite()?;
        Some(tail.digit(offset))
    }

    /// Prefix on positions below `min(a, dom)`.
    pub fn restrict(&self, a: &Ordinal) -> SignExpansion {
        if *a >= self.dom() {
            return self.clone();
        }
        let mut runs = Vec::new();
        let mut pos = Ordinal::zero();
        for r in &self.runs {
            let end = pos.add(&r.len);
            if *a <= end {
                let len = pos.left_sub(a).expect("pos <= a");
                push_run(&mut runs, r.sign, len);
                return SignExpansion { runs, tail: None };
            }
            runs.push(r.clone());
            pos = end;
        }
        let tail = self.tail.as_ref().expect("a < dom implies a tail remains");
        let count = pos
            .left_sub(a)
            .expect("pos <= a")
            .as_finite()
            .expect("tail positions are finite");
        for s in tail.prefix(count) {
            push_run(&mut runs, s, Ordinal::one());
        }
        SignExpansion { runs, tail: None }
    }

    /// `self` is a proper initial segment of `other`.
    pub fn is_simpler(&self, other: &SignExpansion) -> bool {
        let d = self.dom();
        d < other.dom() && other.restrict(&d) == *self
    }

    /// Least position where the two differ as partial functions.
    pub fn first_difference(&self, other: &SignExpansion) -> Option<Ordinal> {
        self.difference(other).map(|d| d.position)
    }

    /// Like [`first_difference`](Self::first_difference) but also reports the
    /// sign (or absence) on each side.
    pub fn difference(&self, other: &SignExpansion) -> Option<Difference> {
        let mut a = Cursor::new(self);
        let mut b = Cursor::new(other);
        let mut pos = Ordinal::zero();
        loop {
            match (&a.seg, &b.seg) {
                (Seg::End, Seg::End) => return None,
                (Seg::End, _) | (_, Seg::End) => {
                    return Some(Difference {
                        position: pos,
                        left: a.seg.first(),
                        right: b.seg.first(),
                    });
                }
                (Seg::Run(s1, r1), Seg::Run(s2, r2)) => {
                    if s1 != s2 {
                        return Some(Difference {
                            position: pos,
                            left: Some(*s1),
                            right: Some(*s2),
                        });
                    }
                    let step = r1.min(r2).clone();
                    pos = pos.add(&step);
                    a.consume(&step);
                    b.consume(&step);
                }
                (Seg::Run(s, r), Seg::Tail(t)) => {
                    match run_vs_tail(*s, r, t) {
                        Ok(step) => {
                            pos = pos.add(&Ordinal::finite(step));
                            a.consume(&Ordinal::finite(step));
                            b.consume(&Ordinal::finite(step));
                        }
                        Err(offset) => {
                            return Some(Difference {
                                position: pos.add(&Ordinal::finite(offset)),
                                left: Some(*s),
                                right: Some(s.flip()),
                            });
                        }
                    }
                }
                (Seg::Tail(t), Seg::Run(s, r)) => match run_vs_tail(*s, r, t) {
                    Ok(step) => {
                        pos = pos.add(&Ordinal::finite(step));
                        a.consume(&Ordinal::finite(step));
                        b.consume(&Ordinal::finite(step));
                    }
                    Err(offset) => {
                        return Some(Difference {
                            position: pos.add(&Ordinal::finite(offset)),
                            left: Some(s.flip()),
                            right: Some(*s),
                        });
                    }
                },
                (Seg::Tail(t1), Seg::Tail(t2)) => {
                    if t1 == t2 {
                        return None;
                    }
                    // Distinct fractions: their distance doubles with every shared digit.
                    let (mut x, mut y) = (t1.clone(), t2.clone());
                    let mut j = 0u64;
                    while x.first() == y.first() {
                        x = x.advance(1);
                        y = y.advance(1);
                        j += 1;
                    }
                    return Some(Difference {
                        position: pos.add(&Ordinal::finite(j)),
                        left: Some(x.first()),
                        right: Some(y.first()),
                    });
                }
            }
        }
    }

    /// Flip every sign.
    pub fn negate(&self) -> SignExpansion {
        SignExpansion {
            runs: self
                .runs
                .iter()
                .map(|r| Run {
                    sign: r.sign.flip(),
                    len: r.len.clone(),
                })
                .collect(),
            tail: self.tail.as_ref().map(PeriodicTail::negate),
        }
    }

    pub fn omega() -> Self {
        Self::from_ordinal(Ordinal::omega())
    }

    /// ε = `+ -^ω`.
    pub fn epsilon() -> Self {
        Self::from_runs(vec![
            Run::new(Sign::Plus, 1),
            Run::new(Sign::Minus, Ordinal::omega()),
        ])
    }

    /// ω − 1 = `+^ω -`.
    pub fn omega_minus_one() -> Self {
        Self::from_runs(vec![
            Run::new(Sign::Plus, Ordinal::omega()),
            Run::new(Sign::Minus, 1),
        ])
    }

    /// ω + 1 = `+^ω +` = `+^(ω+1)`.
    pub fn omega_plus_one() -> Self {
        Self::from_ordinal(Ordinal::omega().successor())
    }

    /// 2ω = `+^(ω·2)`.
    pub fn two_omega() -> Self {
        Self::from_ordinal(Ordinal::monomial(Ordinal::one(), 2))
    }

    /// ω/2 = `+^ω -^ω`.
    pub fn half_omega() -> Self {
        Self::from_runs(vec![
            Run::new(Sign::Plus, Ordinal::omega()),
            Run::new(Sign::Minus, Ordinal::omega()),
        ])
    }

    /// √ω = `+^ω -^(ω²)`: ω blocks of `-^ω` read as one run of length ω².
    pub fn sqrt_omega() -> Self {
        Self::from_runs(vec![
            Run::new(Sign::Plus, Ordinal::omega()),
            Run::new(Sign::Minus, Ordinal::omega_pow(Ordinal::finite(2))),
        ])
    }

    /// 1 − ε = `+ - +^ω`. Its birthday is ω since 2 + ω = ω.
    pub fn one_minus_epsilon() -> Self {
        Self::from_runs(vec![
            Run::new(Sign::Plus, 1),
            Run::new(Sign::Minus, 1),
            Run::new(Sign::Plus, Ordinal::omega()),
        ])
    }
}

/// Appends a run, merging with the previous one when the signs agree.
pub(crate) fn push_run(runs: &mut Vec<Run>, sign: Sign, len: Ordinal) {
    if len.is_zero() {
        return;
    }
    match runs.last_mut() {
        Some(last) if last.sign == sign => last.len = last.len.add(&len),
        _ => runs.push(Run { sign, len }),
    }
}

/// A run of `sign` with `remaining` length against a tail. `Ok(step)` means
/// they agree on the first `step` positions, after which the run is used up;
/// `Err(offset)` is where they first disagree.
fn run_vs_tail(sign: Sign, remaining: &Ordinal, tail: &PeriodicTail) -> Result<u64, u64> {
    let (ts, k) = tail.leading_run();
    if ts != sign {
        return Err(0);
    }
    match remaining.as_finite() {
        Some(r) if r <= k => Ok(r),
        _ => Err(k),
    }
}

enum Seg {
    Run(Sign, Ordinal),
    Tail(PeriodicTail),
    End,
}

impl Seg {
    fn first(&self) -> Option<Sign> {
        match self {
            Seg::Run(s, _) => Some(*s),
            Seg::Tail(t) => Some(t.first()),
            Seg::End => None,
        }
    }
}

struct Cursor<'a> {
    x: &'a SignExpansion,
    next_run: usize,
    seg: Seg,
}

impl<'a> Cursor<'a> {
    fn new(x: &'a SignExpansion) -> Self {
        let mut c = Cursor {
            x,
            next_run: 0,
            seg: Seg::End,
        };
        c.load();
        c
    }

    fn load(&mut self) {
        self.seg = if let Some(r) = self.x.runs.get(self.next_run) {
            self.next_run += 1;
            Seg::Run(r.sign, r.len.clone())
        } else if self.next_run == self.x.runs.len() {
            self.next_run += 1;
            match &self.x.tail {
                Some(t) => Seg::Tail(t.clone()),
                None => Seg::End,
            }
        } else {
            Seg::End
        };
    }

    fn consume(&mut self, step: &Ordinal) {
        match &mut self.seg {
            Seg::Run(_, rem) => {
                *rem = step.left_sub(rem).expect("step fits in the run");
                if rem.is_zero() {
                    self.load();
                }
            }
            Seg::Tail(t) => {
                *t = t.advance(step.as_finite().expect("tail steps are finite"));
            }
            Seg::End => {}
        }
    }
}

/// Compares with `- < (undefined) < +` at the first difference.
fn rank(s: Option<Sign>) -> i8 {
    match s {
        Some(Sign::Minus) => -1,
        None => 0,
        Some(Sign::Plus) => 1,
    }
}

impl Ord for SignExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.difference(other) {
            None => Ordering::Equal,
            Some(d) => rank(d.left).cmp(&rank(d.right)),
        }
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order of two finite sign strings under the same rule as [`SignExpansion::cmp`].
pub(crate) fn cmp_signs(x: &[Sign], y: &[Sign]) -> Ordering {
    let i = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    rank(x.get(i).copied()).cmp(&rank(y.get(i).copied()))
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_surreal(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus as M, Plus as P};

    fn s(text: &str) -> SignExpansion {
        SignExpansion::from_signs(
            &text
                .chars()
                .map(|c| if c == '+' { P } else { M })
                .collect::<Vec<_>>(),
        )
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn dom_examples() {
        assert_eq!(SignExpansion::omega_minus_one().dom(), w().successor());
        assert_eq!(SignExpansion::zero().dom(), Ordinal::zero());
        assert_eq!(
            SignExpansion::sqrt_omega().dom(),
            Ordinal::omega_pow(Ordinal::finite(2))
        );
        assert_eq!(SignExpansion::one_minus_epsilon().dom(), w());
    }

    #[test]
    fn sign_at_examples() {
        let eps = SignExpansion::epsilon();
        assert_eq!(eps.sign_at(&Ordinal::zero()), Some(P));
        assert_eq!(eps.sign_at(&Ordinal::finite(5)), Some(M));
        assert_eq!(eps.sign_at(&w()), None);
        assert_eq!(SignExpansion::omega_minus_one().sign_at(&w()), Some(M));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(SignExpansion::omega().restrict(&Ordinal::finite(3)), s("+++"));
        assert_eq!(
            SignExpansion::omega_minus_one().restrict(&w()),
            SignExpansion::omega()
        );
        let x = SignExpansion::sqrt_omega();
        assert_eq!(x.restrict(&x.dom()), x);
        assert_eq!(s("+-").restrict(&w()), s("+-"));
    }

    #[test]
    fn simplicity_examples() {
        assert!(s("++--+-").is_simpler(&s("++--+-++")));
        assert!(!s("++").is_simpler(&s("++")));
        assert!(!s("+").is_simpler(&s("-+")));
        assert!(SignExpansion::omega().is_simpler(&SignExpansion::omega_minus_one()));
    }

    #[test]
    fn compare_examples() {
        assert!(s("-++") < s("-+++"));
        assert!(s("-++") < s("-+++--+"));
        assert!(s("--+-") < s("--+"));
        assert!(s("--+-++-") < s("--+"));
        assert!(s("++-+--") < s("++++--"));
        assert_eq!(
            s("++-+--").first_difference(&s("++++--")),
            Some(Ordinal::finite(2))
        );
        assert_eq!(s("+-+").first_difference(&s("+-+")), None);
    }

    #[test]
    fn negate_examples() {
        assert_eq!(s("+").negate(), s("-"));
        let eps = SignExpansion::epsilon();
        assert_eq!(eps.negate().negate(), eps);
        assert_eq!(
            eps.negate(),
            SignExpansion::from_runs(vec![Run::new(M, 1), Run::new(P, w())])
        );
    }

    #[test]
    fn tail_canonical_form() {
        let pm = PeriodicTail::from_word(&[P, M]).unwrap();
        // +--(+-)^w stays as written: the tail already starts on a sign change.
        let a = SignExpansion::new(vec![Run::new(P, 1), Run::new(M, 2)], Some(pm.clone())).unwrap();
        // +--+ followed by (-+)^w is the same function.
        let mp = PeriodicTail::from_word(&[M, P]).unwrap();
        let b = SignExpansion::new(
            vec![Run::new(P, 1), Run::new(M, 2), Run::new(P, 1)],
            Some(mp),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.runs(), &[Run::new(P, 1), Run::new(M, 2)]);
        // +-(+-)^w collapses to (+-)^w
        let c = SignExpansion::new(vec![Run::new(P, 1), Run::new(M, 1)], Some(pm.clone())).unwrap();
        assert!(c.runs().is_empty());
        assert_eq!(c.tail(), Some(&pm));
        // a tail after an infinite run has no place to go
        assert!(SignExpansion::new(vec![Run::new(P, w())], Some(pm)).is_err());
    }

    #[test]
    fn named_numbers_sit_between_naturals_and_omega() {
        let between = [
            SignExpansion::omega_minus_one(),
            SignExpansion::half_omega(),
            SignExpansion::sqrt_omega(),
        ];
        for x in &between {
            for k in 0..50 {
                assert!(SignExpansion::from_ordinal(Ordinal::finite(k)) < *x);
            }
            assert!(*x < SignExpansion::omega());
        }
        assert!(SignExpansion::sqrt_omega() < SignExpansion::half_omega());
        assert!(SignExpansion::half_omega() < SignExpansion::omega_minus_one());
        assert!(SignExpansion::omega() < SignExpansion::omega_plus_one());
        assert!(SignExpansion::omega_plus_one() < SignExpansion::two_omega());
    }

    #[test]
    fn run_against_tail() {
        let third = SignExpansion::new(
            vec![Run::new(P, 1), Run::new(M, 2)],
            PeriodicTail::from_word(&[P, M]),
        )
        .unwrap();
        let eps = SignExpansion::epsilon();
        // + - - + ... vs + - - - ...
        assert_eq!(third.first_difference(&eps), Some(Ordinal::finite(3)));
        assert!(eps < third);
        assert!(third < s("+-"));
        assert!(s("+--") < third);
    }
}
