//! The binary words W(i).
//!
//! `W(i)_1 = a` and `W(i)_{n+1}` is `i` copies of `W(i)_n` followed by the
//! letter-swapped image of those copies. Each `W(i)_n` is a prefix of the
//! next, so the infinite word W(i) is the common extension of all of them.
//! Letters are identified with `a = +1`, `b = -1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    /// `a`, valued +1.
    A,
    /// `b`, valued -1.
    B,
}

impl Letter {
    pub fn value(self) -> i8 {
        match self {
            Letter::A => 1,
            Letter::B => -1,
        }
    }

    pub fn star(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// Family parameter `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FamilyIndex(u32);

impl FamilyIndex {
    pub fn new(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidFamilyIndex { min: 1, got: 0 });
        }
        Ok(FamilyIndex(i))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The base `2i` of the block recursion.
    pub fn base(self) -> u64 {
        2 * u64::from(self.0)
    }
}

impl TryFrom<u32> for FamilyIndex {
    type Error = Error;
    fn try_from(i: u32) -> Result<Self> {
        FamilyIndex::new(i)
    }
}

impl From<FamilyIndex> for u32 {
    fn from(i: FamilyIndex) -> u32 {
        i.0
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord {
    letters: Vec<Letter>,
}

impl BinaryWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BinaryWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn values(&self) -> Vec<i8> {
        self.letters.iter().map(|l| l.value()).collect()
    }

    pub fn star(&self) -> BinaryWord {
        BinaryWord::new(self.letters.iter().map(|l| l.star()).collect())
    }

    pub fn truncate(&mut self, len: usize) {
        self.letters.truncate(len);
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// Rendering over `{a, b}`.
    pub fn to_ab_string(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }

    /// Comma-separated rendering over `{+1, -1}`.
    pub fn to_signed_string(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::A => "+1",
                Letter::B => "-1",
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a word over `{a, b}`.
    pub fn parse_ab(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::Parse(format!("letter {other:?} is not a or b"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord::new)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ab_string())
    }
}

/// One block step: `w^[i]` followed by `(w^[i])*`. The length is multiplied
/// by `2i`.
pub fn word_step(w: &BinaryWord, i: FamilyIndex) -> BinaryWord {
    let copies = i.get() as usize;
    let mut letters = Vec::with_capacity(2 * copies * w.len());
    for _ in 0..copies {
        letters.extend_from_slice(&w.letters);
    }
    letters.extend(letters.clone().into_iter().map(Letter::star));
    BinaryWord::new(letters)
}

/// `W(i)_n` for `n >= 1`.
pub fn finite_word(i: FamilyIndex, n: u32) -> Result<BinaryWord> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut w = BinaryWord::new(vec![Letter::A]);
    for _ in 1..n {
        w = word_step(&w, i);
    }
    Ok(w)
}

/// The first `length` letters of W(i).
pub fn word_prefix(i: FamilyIndex, length: usize) -> BinaryWord {
    let mut w = BinaryWord::new(vec![Letter::A]);
    while w.len() < length {
        w = word_step(&w, i);
    }
    w.truncate(length);
    w
}

/// The `n`-th letter of W(i) (1-based), read off the base-`2i` digits of
/// `n - 1`: the letter is `b` exactly when an odd number of digits are
/// at least `i`.
pub fn letter_at(i: FamilyIndex, n: u64) -> Result<Letter> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let (base, half) = (i.base(), u64::from(i.get()));
    let mut m = n - 1;
    let mut flips = 0u32;
    while m > 0 {
        if m % base >= half {
            flips += 1;
        }
        m /= base;
    }
    Ok(if flips.is_multiple_of(2) { Letter::A } else { Letter::B })
}
