//! Blue-set color states as multi-word bit vectors.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// The set of blue vertices of a graph of order `n`, one bit per vertex.
///
/// Widths well beyond 64 are supported (multi-word storage); bits at
/// positions `>= n` are always zero. Ordering compares the underlying bit
/// pattern as one unsigned integer (vertex 0 is the least significant bit),
/// which is the tie-break order used by throttling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorState {
    n: usize,
    words: Vec<u64>,
}

impl ColorState {
    /// All-white state on `n` vertices.
    pub fn new(n: usize) -> Self {
        ColorState {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// All-blue state on `n` vertices.
    pub fn full(n: usize) -> Self {
        let mut s = ColorState::new(n);
        for w in &mut s.words {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    /// State with exactly the given vertices blue.
    pub fn from_indices(n: usize, blues: &[usize]) -> Result<Self> {
        let mut s = ColorState::new(n);
        for &v in blues {
            if v >= n {
                return Err(Error::BadVertex { id: v, n });
            }
            s.set(v);
        }
        Ok(s)
    }

    /// State with a single blue vertex.
    pub fn singleton(n: usize, v: usize) -> Result<Self> {
        Self::from_indices(n, &[v])
    }

    /// Build from the low `n <= 64` bits of a mask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask requires n <= 64");
        let mut s = ColorState::new(n);
        if !s.words.is_empty() {
            s.words[0] = mask;
            s.mask_tail();
        }
        s
    }

    /// The bit pattern as a `u64`; only valid for `n <= 64`.
    pub fn low_mask(&self) -> u64 {
        assert!(self.n <= 64, "low_mask requires n <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    /// Number of vertices (bit width).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mark `v` blue.
    pub fn set(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for n={}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    /// Mark `v` white.
    pub fn clear(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for n={}", self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    /// Is `v` blue?
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Number of blue vertices.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when no vertex is blue.
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when every vertex is blue.
    pub fn is_full(&self) -> bool {
        self.count_ones() == self.n
    }

    /// Is every blue vertex of `self` also blue in `other`?
    pub fn is_subset(&self, other: &ColorState) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Union in place.
    pub fn union_with(&mut self, other: &ColorState) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Number of vertices blue in `self` but not in `other`.
    pub fn difference_count(&self, other: &ColorState) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    /// Number of vertices blue in both.
    pub fn intersection_count(&self, other: &ColorState) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Ascending iterator over blue vertex indices.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Hex literal of the bit pattern, e.g. `{0, 2}` on 3 vertices -> `"0x5"`.
    pub fn to_hex(&self) -> String {
        let mut top = self.words.len();
        while top > 0 && self.words[top - 1] == 0 {
            top -= 1;
        }
        if top == 0 {
            return "0x0".to_string();
        }
        let mut s = format!("0x{:x}", self.words[top - 1]);
        for i in (0..top - 1).rev() {
            s.push_str(&format!("{:016x}", self.words[i]));
        }
        s
    }

    /// Parse a hex literal produced by [`ColorState::to_hex`] for width `n`.
    pub fn from_hex(n: usize, text: &str) -> Result<Self> {
        let digits = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::InvalidBitset(text.to_string()));
        }
        let mut s = ColorState::new(n);
        let too_wide = || Error::InvalidBitset(format!("{text} too wide for n={n}"));
        for (nibble_pos, &c) in digits.as_bytes().iter().rev().enumerate() {
            let val = (c as char).to_digit(16).unwrap() as u64;
            if val == 0 {
                continue;
            }
            // Highest set bit of this nibble must land below n.
            let top_bit = nibble_pos * 4 + (63 - val.leading_zeros() as usize);
            if top_bit >= n {
                return Err(too_wide());
            }
            let bit = nibble_pos * 4;
            s.words[bit / 64] |= val << (bit % 64);
            if bit % 64 > 60 && val >> (64 - bit % 64) != 0 {
                s.words[bit / 64 + 1] |= val >> (64 - bit % 64);
            }
        }
        Ok(s)
    }
}

impl Ord for ColorState {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ColorState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter_ones().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for ColorState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_contains_count() {
        let mut s = ColorState::new(130);
        assert!(s.is_empty());
        s.set(0);
        s.set(64);
        s.set(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.count_ones(), 3);
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        s.clear(64);
        assert_eq!(s.count_ones(), 2);
    }

    #[test]
    fn full_masks_tail_bits() {
        let s = ColorState::full(70);
        assert!(s.is_full());
        assert_eq!(s.count_ones(), 70);
        let t = ColorState::full(3);
        assert_eq!(t.low_mask(), 0b111);
    }

    #[test]
    fn subset_and_union() {
        let a = ColorState::from_indices(10, &[1, 4]).unwrap();
        let b = ColorState::from_indices(10, &[1, 4, 7]).unwrap();
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        let mut c = a.clone();
        c.union_with(&b);
        assert_eq!(c, b);
        assert_eq!(b.difference_count(&a), 1);
        assert_eq!(b.intersection_count(&a), 2);
    }

    #[test]
    fn integer_ordering_for_tie_breaks() {
        let v0 = ColorState::from_mask(3, 0b001);
        let v1 = ColorState::from_mask(3, 0b010);
        let v01 = ColorState::from_mask(3, 0b011);
        assert!(v0 < v1);
        assert!(v1 < v01);
        let mut hi = ColorState::new(100);
        hi.set(99);
        let mut lo = ColorState::full(100);
        lo.clear(99);
        assert!(lo < hi);
    }

    #[test]
    fn display_matches_set_notation() {
        let s = ColorState::from_indices(6, &[0, 3]).unwrap();
        assert_eq!(s.to_string(), "{0, 3}");
        assert_eq!(ColorState::new(4).to_string(), "{}");
        assert_eq!(ColorState::singleton(3, 0).unwrap().to_string(), "{0}");
    }

    #[test]
    fn hex_round_trip_across_word_boundary() {
        let mut s = ColorState::new(130);
        s.set(0);
        s.set(63);
        s.set(64);
        s.set(129);
        let h = s.to_hex();
        assert_eq!(ColorState::from_hex(130, &h).unwrap(), s);
        assert_eq!(ColorState::from_mask(3, 0b101).to_hex(), "0x5");
        assert_eq!(ColorState::new(5).to_hex(), "0x0");
    }

    #[test]
    fn from_hex_rejects_garbage_and_overflow() {
        assert!(ColorState::from_hex(4, "0xzz").is_err());
        assert!(ColorState::from_hex(4, "").is_err());
        assert!(ColorState::from_hex(3, "0x8").is_err(), "bit 3 exceeds n=3");
    }

    #[test]
    fn from_indices_rejects_out_of_range() {
        assert!(matches!(
            ColorState::from_indices(3, &[3]),
            Err(crate::Error::BadVertex { id: 3, n: 3 })
        ));
    }

    #[test]
    fn serializes_as_hex_string() {
        let s = ColorState::from_mask(4, 0b1010);
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"0xa\"");
    }

    proptest! {
        #[test]
        fn hex_round_trips(n in 1usize..200, bits in proptest::collection::vec(0usize..200, 0..40)) {
            let blues: Vec<usize> = bits.into_iter().filter(|&b| b < n).collect();
            let s = ColorState::from_indices(n, &blues).unwrap();
            prop_assert_eq!(ColorState::from_hex(n, &s.to_hex()).unwrap(), s);
        }

        #[test]
        fn ordering_matches_integer_value(a in 0u64..1024, b in 0u64..1024) {
            let sa = ColorState::from_mask(10, a);
            let sb = ColorState::from_mask(10, b);
            prop_assert_eq!(sa.cmp(&sb), a.cmp(&b));
        }
    }
}
