//! The ω-repeated periodic word that ends the sign expansion of a
//! non-dyadic rational.
//!
//! A periodic word is stored as the purely periodic binary fraction
//! `num/den` it spells out (`+` is the digit 1, `-` is 0). This keeps equality
//! structural and lets long periods (harmonic partial sums have periods in the
//! billions) be indexed with modular exponentiation instead of being
//! materialized.

use num::{BigUint, Integer, One, Zero};

use super::Sign;

/// Words longer than this are not spelled out by [`PeriodicTail::word`].
pub const MAX_SPELLED_PERIOD: u64 = 64;

/// Purely periodic binary fraction `num/den`: `den` odd and greater than one,
/// `0 < num < den`, reduced. Its period is the multiplicative order of 2
/// modulo `den`, and it always contains both digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicTail {
    num: BigUint,
    den: BigUint,
}

impl PeriodicTail {
    /// Accepts any fraction `0 < num/den < 1`; returns `None` unless the
    /// reduced denominator is odd, i.e. unless the expansion is purely periodic.
    pub fn from_fraction(num: BigUint, den: BigUint) -> Option<Self> {
        if num.is_zero() || num >= den {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        if den.is_even() {
            return None;
        }
        Some(PeriodicTail { num, den })
    }

    /// The tail spelled by repeating `word`; `None` if the word is empty or
    /// uses a single sign (that is a run of length ω, not a tail).
    pub fn from_word(word: &[Sign]) -> Option<Self> {
        let has_plus = word.contains(&Sign::Plus);
        let has_minus = word.contains(&Sign::Minus);
        if !(has_plus && has_minus) {
            return None;
        }
        let mut num = BigUint::zero();
        for s in word {
            num <<= 1u8;
            if *s == Sign::Plus {
                num += 1u8;
            }
        }
        let den = (BigUint::one() << word.len()) - 1u8;
        Self::from_fraction(num, den)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    fn digit_of(num: &BigUint, den: &BigUint) -> Sign {
        if num << 1u8 >= *den {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn first(&self) -> Sign {
        Self::digit_of(&self.num, &self.den)
    }

    /// Last sign of one period: the digit just before position 0 when the
    /// sequence is read cyclically.
    pub fn last(&self) -> Sign {
        let prev = if self.num.is_even() {
            &self.num >> 1u8
        } else {
            (&self.num + &self.den) >> 1u8
        };
        // prev/den is the fraction one position earlier; its first digit is ours.
        Self::digit_of(&prev, &self.den)
    }

    /// Sign at finite offset `j` into the tail.
    pub fn digit(&self, j: u64) -> Sign {
        self.advance(j).first()
    }

    /// The tail with its first `j` signs removed.
    pub fn advance(&self, j: u64) -> Self {
        let shift = BigUint::from(2u8).modpow(&BigUint::from(j), &self.den);
        PeriodicTail {
            num: (&self.num * shift) % &self.den,
            den: self.den.clone(),
        }
    }

    /// Prepend `s`, provided the result is still purely periodic (which holds
    /// exactly when `s == self.last()`).
    pub fn rotate_back(&self, s: Sign) -> Option<Self> {
        let lifted = if s == Sign::Plus {
            &self.num + &self.den
        } else {
            self.num.clone()
        };
        lifted.is_even().then(|| PeriodicTail {
            num: lifted >> 1u8,
            den: self.den.clone(),
        })
    }

    pub fn negate(&self) -> Self {
        PeriodicTail {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    /// Sign and length of the maximal run of equal signs at the start.
    pub fn leading_run(&self) -> (Sign, u64) {
        let s = self.first();
        let mut cur = self.clone();
        let mut k = 0;
        // A run of k equal digits needs den > 2^k, so this stops quickly.
        while cur.first() == s {
            k += 1;
            cur = cur.advance(1);
        }
        (s, k)
    }

    /// Period length, if it does not exceed `cap`.
    pub fn period(&self, cap: u64) -> Option<u64> {
        let mut x = (&self.num << 1u8) % &self.den;
        for p in 1..=cap {
            if x == self.num {
                return Some(p);
            }
            x = (x << 1u8) % &self.den;
        }
        None
    }

    /// The repeated word, when its period is at most [`MAX_SPELLED_PERIOD`].
    pub fn word(&self) -> Option<Vec<Sign>> {
        let p = self.period(MAX_SPELLED_PERIOD)?;
        Some((0..p).map(|j| self.digit(j)).collect())
    }

    /// First `count` signs of the tail.
    pub fn prefix(&self, count: u64) -> Vec<Sign> {
        let mut out = Vec::with_capacity(count as usize);
        let mut num = self.num.clone();
        for _ in 0..count {
            num <<= 1u8;
            if num >= self.den {
                num -= &self.den;
                out.push(Sign::Plus);
            } else {
                out.push(Sign::Minus);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus as M, Plus as P};

    #[test]
    fn word_round_trip() {
        let t = PeriodicTail::from_word(&[P, M]).unwrap();
        assert_eq!(t.numerator(), &BigUint::from(2u8));
        assert_eq!(t.denominator(), &BigUint::from(3u8));
        assert_eq!(t.word().unwrap(), vec![P, M]);
        // (+-)(+-) reduces to the primitive word
        assert_eq!(PeriodicTail::from_word(&[P, M, P, M]).unwrap(), t);
        assert!(PeriodicTail::from_word(&[P, P]).is_none());
        assert!(PeriodicTail::from_word(&[]).is_none());
    }

    #[test]
    fn digits_and_seams() {
        let t = PeriodicTail::from_word(&[P, P, M]).unwrap();
        assert_eq!(t.prefix(7), vec![P, P, M, P, P, M, P]);
        assert_eq!(t.digit(5), M);
        assert_eq!(t.first(), P);
        assert_eq!(t.last(), M);
        assert_eq!(t.leading_run(), (P, 2));
        assert_eq!(t.advance(2).word().unwrap(), vec![M, P, P]);
        assert_eq!(t.rotate_back(M).unwrap().word().unwrap(), vec![M, P, P]);
        assert!(t.rotate_back(P).is_none());
        assert_eq!(t.negate().word().unwrap(), vec![M, M, P]);
    }

    #[test]
    fn long_period_is_not_spelled() {
        // 1/67: 2 has order 66 mod 67
        let t = PeriodicTail::from_fraction(BigUint::from(1u8), BigUint::from(67u8)).unwrap();
        assert_eq!(t.period(100), Some(66));
        assert!(t.word().is_none());
        assert_eq!(t.digit(66), t.first());
    }
}
