//! Option sets, the simplest number between two sets, and inductive addition
//! on finite sign expansions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::rc::Rc;

use super::{cmp_signs, Sign, SignExpansion};
use crate::error::{Error, Result};

/// Prefixes cut just before each `+` (left) or each `-` (right), starting
/// at `from`.
fn options(
    x: &SignExpansion,
    want: Sign,
    from: usize,
    op: &'static str,
) -> Result<Vec<SignExpansion>> {
    let signs = x.to_signs().map_err(|_| Error::InfiniteExpansion { op, dom: x.dom() })?;
    Ok(signs
        .iter()
        .enumerate()
        .skip(from)
        .filter(|(_, s)| **s == want)
        .map(|(i, _)| SignExpansion::from_signs(&signs[..i]))
        .collect())
}

/// The defining left set: every prefix `x|α` with `x(α) = +`, including
/// the empty prefix when `x` starts with `+`. Together with [`right_set`]
/// it determines `x` through [`simplest_between`].
pub fn left_set(x: &SignExpansion) -> Result<Vec<SignExpansion>> {
    options(x, Sign::Plus, 0, "left set")
}

/// The defining right set, see [`left_set`].
pub fn right_set(x: &SignExpansion) -> Result<Vec<SignExpansion>> {
    options(x, Sign::Minus, 0, "right set")
}

/// `L(x)` as usually listed: the nonempty prefixes `x|α` with `x(α) = +`.
/// Zero is left out, so `+-` has no left options; use [`left_set`] to
/// reconstruct `x`.
pub fn left_options(x: &SignExpansion) -> Result<Vec<SignExpansion>> {
    options(x, Sign::Plus, 1, "left options")
}

/// `R(x)` as usually listed, see [`left_options`].
pub fn right_options(x: &SignExpansion) -> Result<Vec<SignExpansion>> {
    options(x, Sign::Minus, 1, "right options")
}

/// Order of a growing sign string against a fixed target: while the string
/// is a prefix of the target the comparison depends only on the next target
/// sign; after the first mismatch it never changes.
struct Against<'a> {
    target: &'a [Sign],
    settled: Option<Ordering>,
}

impl<'a> Against<'a> {
    fn new(target: &'a [Sign]) -> Self {
        Against {
            target,
            settled: None,
        }
    }

    /// `x` compared with the target, where `len` is the length of `x`.
    fn cmp(&self, len: usize) -> Ordering {
        self.settled
            .unwrap_or_else(|| super::rank(None).cmp(&super::rank(self.target.get(len).copied())))
    }

    fn push(&mut self, len: usize, s: Sign) {
        if self.settled.is_none() && self.target.get(len) != Some(&s) {
            let t = self.target.get(len).copied();
            self.settled = Some(super::rank(Some(s)).cmp(&super::rank(t)));
        }
    }
}

/// Greedy descent: go right while at or below the largest low, left while at
/// or above the smallest high.
fn simplest_flat(lo: Option<&[Sign]>, hi: Option<&[Sign]>) -> Vec<Sign> {
    let mut lo = lo.map(Against::new);
    let mut hi = hi.map(Against::new);
    let mut x = Vec::new();
    loop {
        let s = if lo.as_ref().is_some_and(|l| l.cmp(x.len()) != Ordering::Greater) {
            Sign::Plus
        } else if hi.as_ref().is_some_and(|h| h.cmp(x.len()) != Ordering::Less) {
            Sign::Minus
        } else {
            return x;
        };
        for t in lo.iter_mut().chain(hi.iter_mut()) {
            t.push(x.len(), s);
        }
        x.push(s);
    }
}

fn extreme<'a, I>(items: I, want: Ordering) -> Option<&'a [Sign]>
where
    I: IntoIterator<Item = &'a [Sign]>,
{
    items.into_iter().fold(None, |best, s| match best {
        Some(b) if cmp_signs(s, b) != want => Some(b),
        _ => Some(s),
    })
}

/// The unique earliest-born expansion strictly above every low and strictly
/// below every high.
pub fn simplest_between(lows: &[SignExpansion], highs: &[SignExpansion]) -> Result<SignExpansion> {
    let flat = |xs: &[SignExpansion]| -> Result<Vec<Vec<Sign>>> {
        xs.iter()
            .map(|x| {
                x.to_signs().map_err(|_| Error::InfiniteExpansion {
                    op: "simplest_between",
                    dom: x.dom(),
                })
            })
            .collect()
    };
    let lows = flat(lows)?;
    let highs = flat(highs)?;
    let lo = extreme(lows.iter().map(Vec::as_slice), Ordering::Greater);
    let hi = extreme(highs.iter().map(Vec::as_slice), Ordering::Less);
    if let (Some(l), Some(h)) = (lo, hi) {
        if cmp_signs(l, h) != Ordering::Less {
            return Err(Error::InconsistentBounds);
        }
    }
    Ok(SignExpansion::from_signs(&simplest_flat(lo, hi)))
}

/// Whether [`add_with`] caches sums of prefix pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Memo {
    On,
    Off,
}

impl Memo {
    /// `SURREAL_MEMO=off` disables the cache; anything else enables it.
    pub fn from_env() -> Memo {
        match std::env::var("SURREAL_MEMO") {
            Ok(v) if v.eq_ignore_ascii_case("off") => Memo::Off,
            _ => Memo::On,
        }
    }
}

/// `x + y` by the inductive rule on option sets.
pub fn add(x: &SignExpansion, y: &SignExpansion) -> Result<SignExpansion> {
    add_with(x, y, Memo::from_env())
}

pub fn add_with(x: &SignExpansion, y: &SignExpansion, memo: Memo) -> Result<SignExpansion> {
    let flat = |v: &SignExpansion| {
        v.to_signs().map_err(|_| Error::InfiniteExpansion {
            op: "addition",
            dom: v.dom(),
        })
    };
    let xs = flat(x)?;
    let ys = flat(y)?;
    let mut adder = PrefixAdder {
        xs: &xs,
        ys: &ys,
        cache: (memo == Memo::On).then(HashMap::new),
    };
    Ok(SignExpansion::from_signs(&adder.sum(xs.len(), ys.len())))
}

/// Every operand reached by the recursion is a pair of prefixes
/// `(x|i, y|j)`, so the cache is keyed by the prefix lengths.
struct PrefixAdder<'a> {
    xs: &'a [Sign],
    ys: &'a [Sign],
    cache: Option<HashMap<(usize, usize), Rc<[Sign]>>>,
}

impl PrefixAdder<'_> {
    fn sum(&mut self, i: usize, j: usize) -> Rc<[Sign]> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&(i, j))) {
            return hit.clone();
        }
        let mut lo: Option<Rc<[Sign]>> = None;
        let mut hi: Option<Rc<[Sign]>> = None;
        let mut offer = |v: Rc<[Sign]>, sign: Sign| {
            let (slot, keep_if) = match sign {
                Sign::Plus => (&mut lo, Ordering::Greater),
                Sign::Minus => (&mut hi, Ordering::Less),
            };
            if slot.as_ref().is_none_or(|b| cmp_signs(&v, b) == keep_if) {
                *slot = Some(v);
            }
        };
        // {x' + y : x' in L(x)} and {x + y' : y' in L(y)}, likewise for R.
        // Left options of a finite expansion grow with their length and
        // right options shrink, and addition is monotone, so only the longest
        // option of each kind can be the extreme one.
        for sign in [Sign::Plus, Sign::Minus] {
            if let Some(k) = self.xs[..i].iter().rposition(|t| *t == sign) {
                let v = self.sum(k, j);
                offer(v, sign);
            }
            if let Some(k) = self.ys[..j].iter().rposition(|t| *t == sign) {
                let v = self.sum(i, k);
                offer(v, sign);
            }
        }
        let r: Rc<[Sign]> = simplest_flat(lo.as_deref(), hi.as_deref()).into();
        if let Some(c) = self.cache.as_mut() {
            c.insert((i, j), r.clone());
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surreal::{from_dyadic, to_dyadic, Dyadic};
    use Sign::{Minus as M, Plus as P};

    fn s(text: &str) -> SignExpansion {
        SignExpansion::from_signs(
            &text
                .chars()
                .map(|c| if c == '+' { P } else { M })
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn option_sets_of_worked_example() {
        let x = s("++-++--");
        assert_eq!(left_options(&x).unwrap(), vec![s("+"), s("++-"), s("++-+")]);
        assert_eq!(
            right_options(&x).unwrap(),
            vec![s("++"), s("++-++"), s("++-++-")]
        );
        assert_eq!(left_set(&x).unwrap()[0], SignExpansion::zero());
        assert!(left_options(&SignExpansion::zero()).unwrap().is_empty());
        // the empty prefix matters for reconstruction
        let half = s("+-");
        assert!(left_options(&half).unwrap().is_empty());
        assert_eq!(
            simplest_between(&left_set(&half).unwrap(), &right_set(&half).unwrap()).unwrap(),
            half
        );
        assert!(left_options(&SignExpansion::omega()).is_err());
    }

    #[test]
    fn simplest_between_examples() {
        assert_eq!(simplest_between(&[], &[]).unwrap(), SignExpansion::zero());
        assert_eq!(simplest_between(&[s("+")], &[s("++")]).unwrap(), s("++-"));
        let x = s("++-++--");
        let l = left_options(&x).unwrap();
        let r = right_options(&x).unwrap();
        assert_eq!(simplest_between(&l, &r).unwrap(), x);
        assert_eq!(
            simplest_between(&[s("++")], &[s("+")]),
            Err(Error::InconsistentBounds)
        );
        assert_eq!(
            simplest_between(&[s("+")], &[s("+")]),
            Err(Error::InconsistentBounds)
        );
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&s("+"), &s("+")).unwrap(), s("++"));
        assert_eq!(add(&s("+-"), &s("+-")).unwrap(), s("+"));
        let x = s("+-+--");
        assert_eq!(add(&x, &SignExpansion::zero()).unwrap(), x);
        assert_eq!(add(&x, &x.negate()).unwrap(), SignExpansion::zero());
        assert!(add(&SignExpansion::omega(), &s("+")).is_err());
    }

    #[test]
    fn add_matches_dyadic_values() {
        let q = |n: i64, e: u32| from_dyadic(&Dyadic::new(n.into(), e));
        let x = q(-7, 3);
        let y = q(5, 2);
        let sum = add(&x, &y).unwrap();
        assert_eq!(to_dyadic(&sum).unwrap(), Dyadic::new(3.into(), 3));
    }

    #[test]
    fn memo_is_transparent() {
        for a in ["", "+", "-+", "+-+", "--+-"] {
            for b in ["", "-", "++-", "-+-+"] {
                assert_eq!(
                    add_with(&s(a), &s(b), Memo::On).unwrap(),
                    add_with(&s(a), &s(b), Memo::Off).unwrap()
                );
            }
        }
    }
}
