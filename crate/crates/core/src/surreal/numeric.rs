//! Exact dyadic and rational values and their sign expansions.
//!
//! The correspondence is the interval walk: keep bounds `lo`, `hi` (initially
//! unbounded) and a cursor `c = 0`; while `c != q` emit `+` if `q > c` (and set
//! `lo = c`) or `-` (and set `hi = c`), then move `c` to `lo + 1`, `hi - 1` or
//! the midpoint. Once both bounds are finite the remaining signs are the binary
//! digits of `(q - lo) / (hi - lo)`, which is how non-dyadic rationals get
//! their periodic tails.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive, Zero};

use super::{push_run, PeriodicTail, Run, Sign, SignExpansion};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// `numerator / 2^exponent`, reduced (odd numerator or zero exponent).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigInt, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.reduce();
        d
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Dyadic {
            numerator: n.into(),
            exponent: 0,
        }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let k = tz.min(u64::from(self.exponent)) as u32;
        self.numerator >>= k;
        self.exponent -= k;
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rational {
        Rational(BigRational::new(
            self.numerator.clone(),
            BigInt::one() << self.exponent,
        ))
    }

    fn align(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.align(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::integer(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rational().fmt(f)
    }
}

/// An exact rational number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let d = denominator.into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator.into(), d)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// The same value as a [`Dyadic`], if the denominator is a power of two.
    pub fn to_dyadic(&self) -> Option<Dyadic> {
        let d = self.0.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(self.0.numer().clone(), tz as u32))
    }

    pub fn is_dyadic(&self) -> bool {
        self.to_dyadic().is_some()
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// `p` or `p/q` with optional leading `-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NotRepresentable(format!("`{s}` is not a rational literal"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rational::new(n, d)
    }
}

/// Sign expansion of a dyadic rational (always finite).
pub fn from_dyadic(q: &Dyadic) -> SignExpansion {
    expansion_of(&q.to_rational().0)
}

/// Sign expansion of a rational: finite when dyadic, otherwise finite runs
/// followed by a periodic tail (birthday ω).
pub fn from_rational(q: &Rational) -> SignExpansion {
    expansion_of(&q.0)
}

fn expansion_of(q: &BigRational) -> SignExpansion {
    if q.is_zero() {
        return SignExpansion::zero();
    }
    if q.is_negative() {
        return expansion_of(&-q).negate();
    }
    let whole = q.floor().to_integer();
    let frac = q - BigRational::from_integer(whole.clone());
    let whole = whole.to_u64().expect("integer part fits in u64");
    if frac.is_zero() {
        return SignExpansion::from_ordinal(Ordinal::finite(whole));
    }
    // The walk passes 0, 1, ..., whole (all below q), overshoots to whole + 1,
    // then bisects [whole, whole + 1] along the binary digits of frac.
    let mut runs = vec![Run::new(Sign::Plus, whole + 1), Run::new(Sign::Minus, 1)];
    let num = frac.numer().to_biguint().expect("positive");
    let den = frac.denom().to_biguint().expect("positive");
    let twos = den.trailing_zeros().unwrap_or(0);
    let odd = &den >> twos;
    let mut rem = num;
    let digit = |rem: &mut BigUint| {
        *rem <<= 1u8;
        if *rem >= den {
            *rem -= &den;
            Sign::Plus
        } else {
            Sign::Minus
        }
    };
    if odd.is_one() {
        // frac = 0.b1...bk with bk = 1; the walk stops on reaching it, so the
        // final digit is never emitted.
        for _ in 1..twos {
            let s = digit(&mut rem);
            push_run(&mut runs, s, Ordinal::one());
        }
        return SignExpansion::from_runs(runs);
    }
    for _ in 0..twos {
        let s = digit(&mut rem);
        push_run(&mut runs, s, Ordinal::one());
    }
    // rem/den now has odd reduced denominator: purely periodic from here on.
    let tail = PeriodicTail::from_fraction(rem, den).expect("non-dyadic remainder is periodic");
    SignExpansion::new(runs, Some(tail)).expect("all runs are finite")
}

/// Value of a finite expansion, by replaying the interval walk.
pub fn to_dyadic(x: &SignExpansion) -> Result<Dyadic> {
    let dom = x.dom();
    if !dom.is_finite() {
        return Err(Error::InfiniteExpansion {
            op: "to_dyadic",
            dom,
        });
    }
    let mut lo: Option<Dyadic> = None;
    let mut hi: Option<Dyadic> = None;
    let mut c = Dyadic::integer(0);
    let one = Dyadic::integer(1);
    for run in x.runs() {
        let len = run.len.as_finite().expect("finite birthday");
        match (run.sign, &lo, &hi) {
            // Unbounded on the far side: the cursor moves in unit steps.
            (Sign::Plus, _, None) => {
                let end = &c + &Dyadic::integer(len);
                lo = Some(&end - &one);
                c = end;
            }
            (Sign::Minus, None, _) => {
                let end = &c - &Dyadic::integer(len);
                hi = Some(&end + &one);
                c = end;
            }
            _ => {
                for _ in 0..len {
                    match run.sign {
                        Sign::Plus => lo = Some(c.clone()),
                        Sign::Minus => hi = Some(c.clone()),
                    }
                    c = match (&lo, &hi) {
                        (Some(l), None) => l + &one,
                        (None, Some(h)) => h - &one,
                        (Some(l), Some(h)) => {
                            let s = l + h;
                            Dyadic::new(s.numerator, s.exponent + 1)
                        }
                        (None, None) => unreachable!("a bound was just set"),
                    };
                }
            }
        }
    }
    Ok(c)
}
