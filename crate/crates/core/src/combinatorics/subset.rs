use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest ambient size a [`SubsetMask`] can address.
pub const MAX_EDGES: usize = 31;

/// A subset of `{1..m}` packed into a machine word; element `i` is bit `i - 1`.
///
/// The `Ord` impl is the canonical *listing* order used for genes: larger
/// cardinality first, then the descending digit sequence compared
/// lexicographically from the top, larger first. So `621 < 64` and `65 < 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct SubsetMask {
    bits: u32,
    m: u8,
}

impl From<SubsetMask> for Vec<usize> {
    fn from(s: SubsetMask) -> Self {
        s.elements_desc().collect()
    }
}

impl SubsetMask {
    pub fn from_bits(m: usize, bits: u32) -> Result<Self> {
        if m == 0 || m > MAX_EDGES {
            return Err(Error::InvalidSubset(format!("ambient size {m} out of range")));
        }
        if bits >> m != 0 {
            return Err(Error::InvalidSubset(format!("bits {bits:#b} exceed m = {m}")));
        }
        Ok(Self { bits, m: m as u8 })
    }

    pub(crate) fn from_bits_unchecked(m: usize, bits: u32) -> Self {
        debug_assert!(m <= MAX_EDGES && bits >> m == 0);
        Self { bits, m: m as u8 }
    }

    pub fn new(m: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::InvalidSubset(format!("element {e} outside 1..={m}")));
            }
            bits |= 1 << (e - 1);
        }
        Self::from_bits(m, bits)
    }

    pub fn empty(m: usize) -> Self {
        Self::from_bits_unchecked(m, 0)
    }

    pub fn full(m: usize) -> Self {
        Self::from_bits_unchecked(m, full_bits(m))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn ambient(self) -> usize {
        self.m as usize
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e >= 1 && e <= self.ambient() && self.bits & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        assert!(e >= 1 && e <= self.ambient());
        Self { bits: self.bits | (1 << (e - 1)), ..self }
    }

    pub fn without(self, e: usize) -> Self {
        assert!(e >= 1 && e <= self.ambient());
        Self { bits: self.bits & !(1 << (e - 1)), ..self }
    }

    pub fn complement(self) -> Self {
        Self { bits: !self.bits & full_bits(self.ambient()), ..self }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Elements from largest to smallest.
    pub fn elements_desc(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let top = 31 - bits.leading_zeros();
                bits &= !(1 << top);
                Some(top as usize + 1)
            }
        })
    }

    /// Hook order: `self ↪ other` iff `|self| <= |other|` and the i-th
    /// largest element of `self` is at most the i-th largest of `other`.
    pub fn hook_leq(self, other: Self) -> bool {
        if self.len() > other.len() {
            return false;
        }
        self.elements_desc().zip(other.elements_desc()).all(|(a, b)| a <= b)
    }

    /// Shift every element up by one and adjoin `1`; lives in `{1..m+1}`.
    pub fn tiny_lift(self) -> Self {
        Self::from_bits_unchecked(self.ambient() + 1, (self.bits << 1) | 1)
    }

    /// Inverse of [`tiny_lift`](Self::tiny_lift); `None` unless `1` is present.
    pub fn tiny_reduce(self) -> Option<Self> {
        if self.bits & 1 == 0 || self.ambient() < 2 {
            return None;
        }
        Some(Self::from_bits_unchecked(self.ambient() - 1, self.bits >> 1))
    }

    /// All subsets of `{1..m}` that contain `m`, in increasing bit order.
    pub fn containing_top(m: usize) -> impl Iterator<Item = SubsetMask> {
        let top = 1u32 << (m - 1);
        (0..top).map(move |low| Self::from_bits_unchecked(m, low | top))
    }

    /// Parse either a digit string (`"621"`) or a bracketed list (`"[10,3,1]"`).
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let elements = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::InvalidSubset(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return Self::new(m, &elements);
        }
        if m > 9 {
            return Err(Error::InvalidSubset(format!("digit notation {s:?} is ambiguous for m = {m}; use [a,b,...]")));
        }
        let elements = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidSubset(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, &elements)
    }
}

pub(crate) fn full_bits(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| other.len().cmp(&self.len())).then_with(|| {
            for (a, b) in self.elements_desc().zip(other.elements_desc()) {
                match b.cmp(&a) {
                    Ordering::Equal => continue,
                    ord => return ord,
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

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.ambient() <= 9 {
            for e in self.elements_desc() {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.elements_desc().map(|e| e.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}/{}", self, self.m)
    }
}
