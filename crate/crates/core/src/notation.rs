//! ASCII notation for ordinals and sign expansions.
//!
//! Ordinals: `w` is ω, e.g. `w^2*3+w+4`, `w^(w+1)`. Non-normal sums such as
//! `3+w` are accepted and normalized.
//!
//! Sign expansions: `+` and `-` atoms, repetition `atom^e` where `e` is an
//! integer, `w`, or a parenthesized ordinal, and grouping `( ... )`. A mixed
//! group raised to `w` is a periodic tail and must come last. Long periodic
//! tails are written `[a/d]^w`, the purely periodic binary fraction `a/d` with
//! `+` as digit 1. Whitespace between tokens is ignored. Whole-input shortcuts:
//! rational literals (`3`, `-5/8`, `11/6`) and named constants (`omega`,
//! `eps`, ...).

use std::fmt;

use num::BigUint;
use thiserror::Error;

use crate::ordinal::{is_atomic, Ordinal};
use crate::surreal::{from_rational, push_run, PeriodicTail, Rational, Run, Sign, SignExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Named constants accepted by [`parse_surreal`].
pub const NAMED_CONSTANTS: &[&str] = &[
    "zero",
    "one",
    "omega",
    "eps",
    "omega_minus_one",
    "omega_plus_one",
    "two_omega",
    "half_omega",
    "sqrt_omega",
    "one_minus_eps",
];

fn named(name: &str) -> Option<SignExpansion> {
    Some(match name {
        "zero" => SignExpansion::zero(),
        "one" => SignExpansion::from_ordinal(Ordinal::one()),
        "omega" => SignExpansion::omega(),
        "eps" | "epsilon" => SignExpansion::epsilon(),
        "omega_minus_one" => SignExpansion::omega_minus_one(),
        "omega_plus_one" => SignExpansion::omega_plus_one(),
        "two_omega" => SignExpansion::two_omega(),
        "half_omega" => SignExpansion::half_omega(),
        "sqrt_omega" => SignExpansion::sqrt_omega(),
        "one_minus_eps" => SignExpansion::one_minus_epsilon(),
        _ => return None,
    })
}

fn is_rational_literal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(n) && d.is_none_or(digits)
}

pub fn parse_surreal(text: &str) -> Result<SignExpansion, ParseError> {
    let trimmed = text.trim();
    if let Some(x) = named(trimmed) {
        return Ok(x);
    }
    if is_rational_literal(trimmed) {
        let q: Rational = trimmed.parse().map_err(|e| ParseError {
            pos: 0,
            msg: format!("{e}"),
        })?;
        return Ok(from_rational(&q));
    }
    let mut p = Parser::new(text);
    let chunk = p.seq()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    SignExpansion::new(chunk.runs, chunk.tail).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser::new(text);
    let a = p.ordinal()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(a)
}

/// Runs, then an optional tail which must stay last.
#[derive(Default)]
struct Chunk {
    runs: Vec<Run>,
    tail: Option<PeriodicTail>,
}

impl Chunk {
    fn single_run(&self) -> Option<&Run> {
        match (self.runs.as_slice(), &self.tail) {
            ([r], None) => Some(r),
            _ => None,
        }
    }

    fn finite_signs(&self) -> Option<Vec<Sign>> {
        if self.tail.is_some() {
            return None;
        }
        let mut out = Vec::new();
        for r in &self.runs {
            let n = r.len.as_finite()?;
            out.extend(std::iter::repeat_n(r.sign, n as usize));
        }
        Some(out)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        Ok(self
            .big_integer()?
            .try_into()
            .map_err(|_| self.error("integer too large"))?)
    }

    fn big_integer(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    // ---- ordinals ----

    fn ordinal(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.ordinal_term()?;
        while self.eat('+') {
            acc = acc.add(&self.ordinal_term()?);
        }
        Ok(acc)
    }

    fn ordinal_term(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                let exp = if self.eat('^') {
                    self.ordinal_atom()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat('*') { self.integer()? } else { 1 };
                Ok(Ordinal::monomial(exp, coeff))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.ordinal()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.integer()?)),
            _ => Err(self.error("expected an ordinal")),
        }
    }

    /// Exponent position: integer, `w`, or parenthesized ordinal.
    fn ordinal_atom(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some('(') => {
                self.pos += 1;
                let a = self.ordinal()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.integer()?)),
            _ => Err(self.error("expected an integer, `w` or a parenthesized ordinal")),
        }
    }

    // ---- sign expansions ----

    fn seq(&mut self) -> Result<Chunk, ParseError> {
        let mut out = Chunk::default();
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(item) = self.item()? else {
                return Ok(out);
            };
            if out.tail.is_some() {
                return Err(ParseError {
                    pos: start,
                    msg: "a periodic tail must be in final position".into(),
                });
            }
            for r in item.runs {
                push_run(&mut out.runs, r.sign, r.len);
            }
            out.tail = item.tail;
        }
    }

    fn item(&mut self) -> Result<Option<Chunk>, ParseError> {
        let start = self.pos;
        let (chunk, needs_omega) = match self.peek() {
            Some('+') => {
                self.pos += 1;
                (run_chunk(Sign::Plus), false)
            }
            Some('-') => {
                self.pos += 1;
                (run_chunk(Sign::Minus), false)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.seq()?;
                self.expect(')')?;
                (inner, false)
            }
            Some('[') => {
                self.pos += 1;
                let num = self.big_integer()?;
                self.expect('/')?;
                let den = self.big_integer()?;
                self.expect(']')?;
                let tail = PeriodicTail::from_fraction(num, den).ok_or_else(|| ParseError {
                    pos: start,
                    msg: "periodic fraction needs 0 < a/d < 1 with odd reduced denominator".into(),
                })?;
                (
                    Chunk {
                        runs: Vec::new(),
                        tail: Some(tail),
                    },
                    true,
                )
            }
            _ => return Ok(None),
        };
        if !self.eat('^') {
            if needs_omega {
                return Err(self.error("expected `^w` after a periodic fraction"));
            }
            return Ok(Some(chunk));
        }
        let exp_pos = self.pos;
        let exp = self.ordinal_atom()?;
        if needs_omega {
            if exp != Ordinal::omega() {
                return Err(self.error("a periodic fraction can only be repeated `^w`"));
            }
            return Ok(Some(chunk));
        }
        repeat(chunk, &exp).map(Some).map_err(|msg| ParseError { pos: exp_pos, msg })
    }
}

fn run_chunk(sign: Sign) -> Chunk {
    Chunk {
        runs: vec![Run::new(sign, 1)],
        tail: None,
    }
}

/// `chunk` repeated `exp` times.
fn repeat(chunk: Chunk, exp: &Ordinal) -> Result<Chunk, String> {
    if exp.is_zero() {
        return Ok(Chunk::default());
    }
    if *exp == Ordinal::one() {
        return Ok(chunk);
    }
    if chunk.tail.is_some() {
        return Err("cannot repeat a periodic tail".into());
    }
    if chunk.runs.is_empty() {
        return Ok(chunk);
    }
    if let Some(r) = chunk.single_run() {
        let len = match (r.len.as_finite(), exp.as_finite()) {
            (_, Some(k)) => (0..k).fold(Ordinal::zero(), |acc, _| acc.add(&r.len)),
            (Some(m), None) => exp.mul_finite(m),
            (None, None) => return Err("transfinite product of transfinite lengths".into()),
        };
        return Ok(Chunk {
            runs: vec![Run { sign: r.sign, len }],
            tail: None,
        });
    }
    if let Some(k) = exp.as_finite() {
        let mut runs = Vec::new();
        for _ in 0..k {
            for r in &chunk.runs {
                push_run(&mut runs, r.sign, r.len.clone());
            }
        }
        return Ok(Chunk { runs, tail: None });
    }
    if *exp == Ordinal::omega() {
        let word = chunk
            .finite_signs()
            .ok_or("only a finite word can be repeated `^w`")?;
        return Ok(match PeriodicTail::from_word(&word) {
            Some(tail) => Chunk {
                runs: Vec::new(),
                tail: Some(tail),
            },
            None => unreachable!("a mixed group has both signs"),
        });
    }
    Err(format!("a mixed group cannot be repeated {exp} times"))
}

/// Run length as it appears after `^`.
fn exponent_text(a: &Ordinal) -> String {
    if is_atomic(a) {
        a.to_string()
    } else {
        format!("({a})")
    }
}

const SPELLED_RUN: u64 = 3;

/// Inverse of [`parse_surreal`] on canonical expansions.
pub fn format_surreal(x: &SignExpansion) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut prev_exponent = false;
    for (i, r) in x.runs().iter().enumerate() {
        let spelled = r.len.as_finite().filter(|n| *n <= SPELLED_RUN);
        if i > 0 && (prev_exponent || spelled.is_none()) {
            out.push(' ');
        }
        match spelled {
            Some(n) => {
                out.extend(std::iter::repeat_n(r.sign.as_char(), n as usize));
                prev_exponent = false;
            }
            None => {
                out.push(r.sign.as_char());
                out.push('^');
                out.push_str(&exponent_text(&r.len));
                prev_exponent = true;
            }
        }
    }
    if let Some(t) = x.tail() {
        if !x.runs().is_empty() {
            out.push(' ');
        }
        out.push_str(&tail_text(t));
        out.push_str("^w");
    }
    out
}

/// `(word)` when the period is short enough, else `[a/d]`.
pub fn tail_text(t: &PeriodicTail) -> String {
    match t.word() {
        Some(w) => format!("({})", w.iter().map(|s| s.as_char()).collect::<String>()),
        None => format!("[{}/{}]", t.numerator(), t.denominator()),
    }
}

/// Displays a list of expansions as `{a, b, c}`.
pub struct SetDisplay<'a>(pub &'a [SignExpansion]);

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}
