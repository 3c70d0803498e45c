use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// A subset of the ground set `{0, .., len-1}`, stored as packed 64-bit words.
///
/// Bits past `len` in the last word are always zero, so equality and hashing
/// are bitwise.
///
/// Masks are totally ordered as binary integers in which element `i`
/// carries weight `2^i` (the highest element decides first). All "least"
/// witnesses in the crate use this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    len: usize,
    words: Words,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl SubsetMask {
    pub fn empty(len: usize) -> Self {
        SubsetMask {
            len,
            words: smallvec::smallvec![0; word_count(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = SubsetMask {
            len,
            words: smallvec::smallvec![u64::MAX; word_count(len)],
        };
        m.trim();
        m
    }

    pub fn singleton(len: usize, i: usize) -> Result<Self> {
        let mut m = Self::empty(len);
        m.insert(i)?;
        Ok(m)
    }

    pub fn from_indices<I>(len: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut m = Self::empty(len);
        for i in indices {
            m.insert(i)?;
        }
        Ok(m)
    }

    /// Builds a mask from the low `len` bits of `bits`; `len <= 64`.
    pub fn from_word(len: usize, bits: u64) -> Self {
        assert!(len <= WORD, "from_word needs len <= 64");
        let mut m = Self::empty(len);
        if len > 0 {
            m.words[0] = bits;
            m.trim();
        }
        m
    }

    /// The mask as a single word, when it fits.
    pub fn as_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Parses a `0x…` hex string; bit `i` of the number is element `i`.
    pub fn from_hex(len: usize, s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .ok_or_else(|| Error::input(format!("hex mask must start with 0x: {s:?}")))?;
        if digits.is_empty() {
            return Err(Error::input("empty hex mask"));
        }
        let mut m = Self::empty(len);
        for (pos, c) in digits.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::input(format!("bad hex digit {c:?} in {s:?}")))?;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    m.insert(pos * 4 + b)?;
                }
            }
        }
        Ok(m)
    }

    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        let mut started = false;
        for w in self.words.iter().rev() {
            if started {
                out.push_str(&format!("{w:016x}"));
            } else if *w != 0 {
                out.push_str(&format!("{w:x}"));
                started = true;
            }
        }
        if !started {
            out.push('0');
        }
        format!("0x{out}")
    }

    /// Parses a bit string such as `"0101"`, character `i` giving element `i`.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let len = s.chars().count();
        let mut m = Self::empty(len);
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => m.insert(i)?,
                _ => return Err(Error::input(format!("bad bit {c:?} in {s:?}"))),
            }
        }
        Ok(m)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) -> Result<()> {
        if i >= self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.len,
            });
        }
        self.words[i / WORD] |= 1 << (i % WORD);
        Ok(())
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn set(&mut self, i: usize, value: bool) -> Result<()> {
        if value {
            self.insert(i)
        } else if i >= self.len {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.len,
            })
        } else {
            self.remove(i);
            Ok(())
        }
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.ones().collect()
    }

    pub fn lowest(&self) -> Option<usize> {
        self.ones().next()
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "mask operation on different ground sizes"
        );
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.check(other);
        let mut out = SubsetMask {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = SubsetMask {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// `a^1 = a`, `a^0 = a^c`.
    pub fn signed(&self, sign: bool) -> Self {
        if sign {
            self.clone()
        } else {
            self.complement()
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    /// True when `self` meets both `part` and its complement within `part`,
    /// i.e. `self` cuts `part` into two nonempty pieces.
    pub fn splits(&self, part: &Self) -> bool {
        self.intersects(part) && !part.is_subset(self)
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.ones())
    }
}
