mod common;

use std::cmp::Ordering;

use common::*;
use num::{BigInt, BigRational};
use proptest::prelude::*;
use surreal::ordinal::Ordinal;
use surreal::surreal::{
    add, add_with, from_dyadic, left_set, right_set, simplest_between, to_dyadic, Dyadic, Memo,
    SignExpansion,
};
use surreal::parse_surreal;

fn value(x: &SignExpansion) -> BigRational {
    dyadic_to_rational(&to_dyadic(x).unwrap())
}

fn dyadic(q: &BigRational) -> Dyadic {
    let d = q.denom();
    let e = d.bits() - 1;
    assert_eq!(*d, BigInt::from(1) << e, "not dyadic");
    Dyadic::new(q.numer().clone(), e as u32)
}

#[test]
fn order_matches_values_exhaustively() {
    let all = all_finite(7);
    let xs: Vec<(SignExpansion, BigRational)> = all
        .iter()
        .map(|s| (SignExpansion::from_signs(s), berlekamp(s)))
        .collect();
    for (x, vx) in &xs {
        assert_eq!(value(x), *vx);
    }
    // every pair among lengths ≤ 5, and a stride through the rest
    let small: Vec<_> = xs.iter().filter(|(x, _)| x.dom() <= Ordinal::finite(5)).collect();
    for (x, vx) in &small {
        for (y, vy) in &small {
            assert_eq!(x.cmp(y), vx.cmp(vy), "{x} vs {y}");
        }
    }
    for (x, vx) in xs.iter().step_by(3) {
        for (y, vy) in xs.iter().step_by(17) {
            assert_eq!(x.cmp(y), vx.cmp(vy), "{x} vs {y}");
        }
    }
}

#[test]
fn prefix_is_simplicity_on_finite() {
    let all = all_finite(5);
    for a in &all {
        for b in &all {
            let (x, y) = (SignExpansion::from_signs(a), SignExpansion::from_signs(b));
            let prefix = a.len() < b.len() && b.starts_with(a);
            assert_eq!(x.is_simpler(&y), prefix);
        }
    }
}

#[test]
fn dyadic_bijection_exhaustive() {
    let all = all_finite(7);
    let mut seen = std::collections::HashSet::new();
    for s in &all {
        let x = SignExpansion::from_signs(s);
        let d = to_dyadic(&x).unwrap();
        assert_eq!(from_dyadic(&d), x);
        assert!(seen.insert(d), "two expansions share a value");
    }
}

#[test]
fn add_exhaustive_short() {
    let all = all_finite(4);
    for a in &all {
        for b in &all {
            let (x, y) = (SignExpansion::from_signs(a), SignExpansion::from_signs(b));
            let z = add(&x, &y).unwrap();
            assert_eq!(value(&z), berlekamp(a) + berlekamp(b), "{x} + {y}");
        }
    }
}

#[test]
fn named_constants_sit_between_naturals_and_omega() {
    let w = SignExpansion::omega();
    let between = ["omega_minus_one", "half_omega", "sqrt_omega", "+^w -", "+^w -^w", "+^w -^(w^2)"];
    for text in between {
        let x = parse_surreal(text).unwrap();
        assert!(x < w, "{text}");
        for n in 0..50 {
            assert!(SignExpansion::from_ordinal(Ordinal::finite(n)) < x, "{n} < {text}");
        }
    }
    assert_eq!(parse_surreal("+ -^w").unwrap(), SignExpansion::epsilon());
    assert_eq!(parse_surreal("+^(w*2)").unwrap(), SignExpansion::two_omega());
    assert!(SignExpansion::omega() < SignExpansion::two_omega());
    let eps = SignExpansion::epsilon();
    assert!(SignExpansion::zero() < eps && eps < sx("+-"));
    assert!(eps < sx("+----------"));
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn canonical_form_is_pointwise_equal(raw in arb_raw()) {
        let x = raw.build();
        prop_assert_eq!(x.dom(), raw.dom());
        for pos in raw.probe_positions() {
            prop_assert_eq!(x.sign_at(&pos), raw.sign_at(&pos), "at {}", pos);
        }
        // idempotent
        let again = SignExpansion::new(x.runs().to_vec(), x.tail().cloned()).unwrap();
        prop_assert_eq!(&again, &x);
        // adjacent runs alternate and are nonempty
        for pair in x.runs().windows(2) {
            prop_assert_ne!(pair[0].sign, pair[1].sign);
        }
        prop_assert!(x.runs().iter().all(|r| !r.len.is_zero()));
        if let Some(t) = x.tail() {
            prop_assert_ne!(t.first(), t.last());
            if let Some(r) = x.runs().last() {
                prop_assert_ne!(r.sign, t.first());
            }
        }
    }

    #[test]
    fn equality_is_structural(a in arb_raw(), b in arb_raw()) {
        let (x, y) = (a.build(), b.build());
        let pointwise = a.dom() == b.dom()
            && a.probe_positions().iter().chain(b.probe_positions().iter())
                .all(|p| a.sign_at(p) == b.sign_at(p));
        if x == y {
            prop_assert!(pointwise);
            prop_assert_eq!(x.first_difference(&y), None);
        } else {
            prop_assert!(x.first_difference(&y).is_some());
        }
    }

    #[test]
    fn order_is_consistent(a in arb_raw(), b in arb_raw(), c in arb_raw()) {
        let (x, y, z) = (a.build(), b.build(), c.build());
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        prop_assert_eq!(x.cmp(&y) == Ordering::Equal, x == y);
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        // the order is decided at the first difference, read off the raw signs
        if let Some(p) = x.first_difference(&y) {
            let (sx, sy) = (a.sign_at(&p), b.sign_at(&p));
            prop_assert_ne!(sx, sy);
            prop_assert_eq!(x.cmp(&y), rank(sx).cmp(&rank(sy)));
            for q in a.probe_positions() {
                if q < p {
                    prop_assert_eq!(a.sign_at(&q), b.sign_at(&q));
                }
            }
        }
    }

    #[test]
    fn negate_reverses_order(a in arb_expansion(), b in arb_expansion()) {
        prop_assert_eq!(a.negate().negate(), a.clone());
        prop_assert_eq!(a.negate().cmp(&b.negate()), b.cmp(&a));
        prop_assert_eq!(a.negate().dom(), a.dom());
    }

    #[test]
    fn simpler_means_shorter(a in arb_expansion(), b in arb_expansion()) {
        if a.is_simpler(&b) {
            prop_assert!(a.dom() < b.dom());
            prop_assert_eq!(b.restrict(&a.dom()), a.clone());
        }
        let r = b.restrict(&a.dom());
        prop_assert!(r == b || r.is_simpler(&b));
    }

    #[test]
    fn negate_negates_value(s in arb_finite_signs(20)) {
        let x = SignExpansion::from_signs(&s);
        prop_assert_eq!(value(&x.negate()), -berlekamp(&s));
    }

    #[test]
    fn dyadic_round_trip_random(s in arb_finite_signs(20)) {
        let x = SignExpansion::from_signs(&s);
        let d = to_dyadic(&x).unwrap();
        prop_assert_eq!(dyadic_to_rational(&d), berlekamp(&s));
        prop_assert_eq!(from_dyadic(&d), x);
    }

    #[test]
    fn add_matches_values(a in arb_finite_signs(12), b in arb_finite_signs(12)) {
        let (x, y) = (SignExpansion::from_signs(&a), SignExpansion::from_signs(&b));
        let z = add(&x, &y).unwrap();
        prop_assert_eq!(value(&z), berlekamp(&a) + berlekamp(&b));
        prop_assert_eq!(add(&y, &x).unwrap(), z.clone());
        // the uncached recursion is exponential, so only short operands
        if a.len() + b.len() <= 9 {
            prop_assert_eq!(add_with(&x, &y, Memo::Off).unwrap(), z);
        }
        prop_assert_eq!(add(&x, &SignExpansion::zero()).unwrap(), x);
    }

    #[test]
    fn add_is_associative(a in arb_finite_signs(5), b in arb_finite_signs(5), c in arb_finite_signs(5)) {
        let (x, y, z) = (sx_of(&a), sx_of(&b), sx_of(&c));
        let left = add(&add(&x, &y).unwrap(), &z).unwrap();
        let right = add(&x, &add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn add_is_strictly_monotone(a in arb_finite_signs(6), b in arb_finite_signs(6), c in arb_finite_signs(6)) {
        let (x, y, z) = (sx_of(&a), sx_of(&b), sx_of(&c));
        let (xz, yz) = (add(&x, &z).unwrap(), add(&y, &z).unwrap());
        prop_assert_eq!(x.cmp(&y), xz.cmp(&yz));
    }

    #[test]
    fn defining_sets_reconstruct(s in arb_finite_signs(12)) {
        let x = SignExpansion::from_signs(&s);
        let l = left_set(&x).unwrap();
        let r = right_set(&x).unwrap();
        prop_assert!(l.iter().all(|o| *o < x));
        prop_assert!(r.iter().all(|o| *o > x));
        prop_assert_eq!(simplest_between(&l, &r).unwrap(), x);
    }

    #[test]
    fn simplest_between_is_between(
        lo in prop::collection::vec(arb_finite_signs(8), 0..4),
        hi in prop::collection::vec(arb_finite_signs(8), 0..4),
    ) {
        let lows: Vec<SignExpansion> = lo.iter().map(|s| sx_of(s)).collect();
        let highs: Vec<SignExpansion> = hi.iter().map(|s| sx_of(s)).collect();
        let consistent = lows.iter().all(|l| highs.iter().all(|h| l < h));
        match simplest_between(&lows, &highs) {
            Ok(r) => {
                prop_assert!(consistent);
                prop_assert!(lows.iter().all(|l| *l < r));
                prop_assert!(highs.iter().all(|h| r < *h));
                // every proper prefix fails some bound
                for k in 0..r.to_signs().unwrap().len() {
                    let p = r.restrict(&Ordinal::finite(k as u64));
                    let ok = lows.iter().all(|l| *l < p) && highs.iter().all(|h| p < *h);
                    prop_assert!(!ok, "prefix {} also fits", p);
                }
            }
            Err(_) => prop_assert!(!consistent),
        }
    }
}

fn sx_of(s: &[Sign]) -> SignExpansion {
    SignExpansion::from_signs(s)
}

use surreal::Sign;

#[test]
fn memo_setting_is_transparent() {
    let all = all_finite(4);
    for a in all.iter().step_by(3) {
        for b in &all {
            let (x, y) = (sx_of(a), sx_of(b));
            assert_eq!(add_with(&x, &y, Memo::On).unwrap(), add_with(&x, &y, Memo::Off).unwrap());
        }
    }
}

#[test]
fn dyadic_helper_sanity() {
    let q = rational(3, 4);
    assert_eq!(from_dyadic(&dyadic(&q)), sx("+-+"));
}
