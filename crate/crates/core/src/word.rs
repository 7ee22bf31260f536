//! Functor words: a central shift `[k]` times a freely reduced word in
//! cotwist and decoration symbols.
//!
//! Letters are stored in written order and act right to left, so
//! `a.compose(&b)` is "`a` after `b`" and its letters are those of `a`
//! followed by those of `b`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A generator name such as `T(v1)` or `S(e2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    /// # Panics
    /// If `name` is not a valid symbol, see [`Symbol::parse`].
    pub fn new(name: &str) -> Self {
        Self::parse(name).expect("invalid symbol name")
    }

    /// Symbol names are nonempty and contain no whitespace, `*`, `^`, `[` or `]`.
    pub fn parse(name: &str) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::WordSyntax("empty symbol".to_string()));
        }
        if let Some(c) = name.chars().find(|&c| c.is_whitespace() || "*^[]".contains(c)) {
            return Err(Error::WordSyntax(format!("character {c:?} in symbol {name:?}")));
        }
        Ok(Self(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    /// `+1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(symbol: Symbol, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Self { symbol, exp }
    }

    pub fn inverse(&self) -> Self {
        Self { symbol: self.symbol.clone(), exp: -self.exp }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.exp == -other.exp
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|last| last.cancels(&l)) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

/// An element of `Z x F(symbols)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FunctorWord {
    shift: i64,
    letters: Vec<Letter>,
}

impl FunctorWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn shift_by(k: i64) -> Self {
        Self { shift: k, letters: Vec::new() }
    }

    pub fn generator(symbol: Symbol) -> Self {
        Self { shift: 0, letters: alloc::vec![Letter::new(symbol, 1)] }
    }

    pub fn from_letters(shift: i64, letters: impl IntoIterator<Item = Letter>) -> Self {
        Self { shift, letters: reduce(letters) }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.letters.is_empty()
    }

    pub fn is_pure_shift(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for l in &other.letters {
            push_reduced(&mut letters, l.clone());
        }
        Self { shift: self.shift + other.shift, letters }
    }

    pub fn then_shift(&self, k: i64) -> Self {
        Self { shift: self.shift + k, letters: self.letters.clone() }
    }

    pub fn inverse(&self) -> Self {
        Self { shift: -self.shift, letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Self) -> Self {
        self.compose(x).compose(&self.inverse())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.letters.iter().map(|l| &l.symbol)
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.symbols().any(|s| s == symbol)
    }

    /// Splits the letters as `a * core * a^-1` with `core` cyclically reduced.
    /// The shift stays with `core`.
    pub fn cyclic_reduction(&self) -> (Self, Self) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k].cancels(&l[l.len() - 1 - k]) {
            k += 1;
        }
        let outer = Self { shift: 0, letters: l[..k].to_vec() };
        let core = Self { shift: self.shift, letters: l[k..l.len() - k].to_vec() };
        (outer, core)
    }

    /// The shortest word `r` with `self = r^n`, ignoring the shift, together
    /// with `n`. Only meaningful for cyclically reduced words.
    pub fn primitive_root(&self) -> (Self, usize) {
        let n = self.letters.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.letters[i] == self.letters[i - d]) {
                return (Self { shift: 0, letters: self.letters[..d].to_vec() }, n / d);
            }
        }
        (Self::identity(), 0)
    }

    /// Parses the literal syntax, e.g. `[3]*T(v1)^-1*S(e2)`. Factors are
    /// composed left to right in written order.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut word = Self::identity();
        if text.is_empty() || text == "id" {
            return Ok(word);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            if let Some(inner) = factor.strip_prefix('[') {
                let inner =
                    inner.strip_suffix(']').ok_or_else(|| Error::WordSyntax(format!("unclosed shift {factor:?}")))?;
                let k: i64 = inner.trim().parse().map_err(|_| Error::WordSyntax(format!("bad shift {factor:?}")))?;
                word.shift += k;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::WordSyntax(format!("bad exponent {factor:?}")))?;
                    (name.trim(), e)
                }
                None => (factor, 1),
            };
            let g = Self::generator(Symbol::parse(name)?);
            word = word.compose(&g.pow(exp));
        }
        Ok(word)
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.shift != 0 || self.letters.is_empty() {
            write!(f, "[{}]", self.shift)?;
            first = false;
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = &self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == *l {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let power = run as i64 * i64::from(l.exp);
            if power == 1 {
                write!(f, "{}", l.symbol)?;
            } else {
                write!(f, "{}^{}", l.symbol, power)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl core::str::FromStr for FunctorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Declared relations: symbols equal to pure shifts, and an optional period
/// `[p] = id` (`p = 0` means no period).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    resolved: BTreeMap<Symbol, i64>,
    period: u64,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_period(period: u64) -> Self {
        Self { resolved: BTreeMap::new(), period }
    }

    pub fn resolve(&mut self, symbol: Symbol, shift: i64) {
        self.resolved.insert(symbol, shift);
    }

    pub fn resolved(&self) -> &BTreeMap<Symbol, i64> {
        &self.resolved
    }

    pub fn resolution(&self, symbol: &Symbol) -> Option<i64> {
        self.resolved.get(symbol).copied()
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn set_period(&mut self, period: u64) {
        self.period = period;
    }

    pub fn reduce_shift(&self, k: i64) -> i64 {
        if self.period == 0 {
            k
        } else {
            k.rem_euclid(self.period as i64)
        }
    }

    pub fn normal_form(&self, w: &FunctorWord) -> FunctorWord {
        let mut shift = w.shift;
        let mut letters = Vec::with_capacity(w.letters.len());
        for l in &w.letters {
            match self.resolved.get(&l.symbol) {
                Some(&k) => shift += k * i64::from(l.exp),
                None => push_reduced(&mut letters, l.clone()),
            }
        }
        FunctorWord { shift: self.reduce_shift(shift), letters }
    }

    pub fn equal(&self, a: &FunctorWord, b: &FunctorWord) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    /// Whether `a` and `b` are conjugate. Shifts are central, so this asks
    /// for equal shifts and cyclically reduced cores that are rotations of
    /// each other.
    pub fn conjugate_equal(&self, a: &FunctorWord, b: &FunctorWord) -> bool {
        let (_, ca) = self.normal_form(a).cyclic_reduction();
        let (_, cb) = self.normal_form(b).cyclic_reduction();
        if ca.shift != cb.shift || ca.letters.len() != cb.letters.len() {
            return false;
        }
        let n = ca.letters.len();
        n == 0 || (0..n).any(|r| (0..n).all(|i| ca.letters[(i + r) % n] == cb.letters[i]))
    }
}
